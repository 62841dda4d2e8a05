"""Exact-arithmetic foundations.

:class:`FormalSum` is a finite integer combination of basis symbols; every
fusion-ring element in the package is one.  :class:`LinearForm` is an affine
function ``constant + t_coefficient * t`` of the level parameter ``t = k + 2``
with rational coefficients.
"""

from __future__ import annotations

from collections.abc import Callable, Hashable, Iterable, Iterator
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Generic, Optional, TypeVar

B = TypeVar("B", bound=Hashable)


class FormalSum(Generic[B]):
    """Immutable finite Z-linear combination of ordered basis symbols.

    Terms are kept with nonzero coefficients only and sorted by basis symbol,
    so structural equality is semantic equality and the empty sum is zero.
    """

    __slots__ = ("_terms", "_coeffs", "_hash")

    def __init__(self, terms: Any = ()) -> None:
        if isinstance(terms, FormalSum):
            self._terms = terms._terms
            self._coeffs = terms._coeffs
        else:
            if isinstance(terms, dict):
                terms = terms.items()
            acc: dict = {}
            for key, c in terms:
                acc[key] = acc.get(key, 0) + c
            self._coeffs = {k: int(c) for k, c in acc.items() if c != 0}
            self._terms = tuple(sorted(self._coeffs.items()))
        self._hash = None

    @classmethod
    def basis(cls, key: B, coeff: int = 1) -> FormalSum[B]:
        return cls([(key, coeff)])

    @classmethod
    def zero(cls) -> FormalSum:
        return cls()

    # mapping-style access

    def __getitem__(self, key: B) -> int:
        return self._coeffs.get(key, 0)

    def coefficient(self, key: B) -> int:
        return self._coeffs.get(key, 0)

    def items(self) -> tuple[tuple[B, int], ...]:
        return self._terms

    def support(self) -> list[B]:
        return [k for k, _ in self._terms]

    def as_dict(self) -> dict[B, int]:
        return dict(self._coeffs)

    def __iter__(self) -> Iterator[tuple[B, int]]:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __contains__(self, key: object) -> bool:
        return key in self._coeffs

    # ring-module operations

    def __add__(self, other: FormalSum[B]) -> FormalSum[B]:
        if not isinstance(other, FormalSum):
            return NotImplemented
        return add(self, other)

    def __sub__(self, other: FormalSum[B]) -> FormalSum[B]:
        if not isinstance(other, FormalSum):
            return NotImplemented
        return add(self, -other)

    def __neg__(self) -> FormalSum[B]:
        return self.scale(-1)

    def __rmul__(self, k: int) -> FormalSum[B]:
        if not isinstance(k, int):
            return NotImplemented
        return self.scale(k)

    def scale(self, k: int) -> FormalSum[B]:
        return FormalSum([(b, k * c) for b, c in self._terms])

    def map_basis(self, f: Callable[[B], Any]) -> FormalSum:
        """Linear extension of ``f``; ``f`` returns a FormalSum, a symbol, or None (zero)."""
        acc: dict = {}
        for b, c in self._terms:
            image = f(b)
            if image is None:
                continue
            if not isinstance(image, FormalSum):
                acc[image] = acc.get(image, 0) + c
                continue
            for key, d in image._terms:
                acc[key] = acc.get(key, 0) + c * d
        return FormalSum(acc)

    def total(self, weight: Callable[[B], int]) -> int:
        return sum(c * weight(b) for b, c in self._terms)

    def is_nonnegative(self) -> bool:
        return all(c > 0 for _, c in self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FormalSum):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._terms)
        return self._hash

    def __repr__(self) -> str:
        if not self._terms:
            return "FormalSum(0)"
        return "FormalSum({" + ", ".join(f"{b!r}: {c}" for b, c in self._terms) + "})"


def normalize(raw: Iterable[tuple[B, int]]) -> FormalSum[B]:
    """Merge equal symbols, drop zero coefficients, sort by symbol."""
    return FormalSum(list(raw))


def add(x: FormalSum[B], y: FormalSum[B]) -> FormalSum[B]:
    acc = dict(x._coeffs)
    for k, c in y._terms:
        acc[k] = acc.get(k, 0) + c
    return FormalSum(acc)


def bilinear_product(
    x: FormalSum[B],
    y: FormalSum[B],
    rule: Callable[[B, B], FormalSum[B]],
) -> FormalSum[B]:
    """Extend a product rule on basis symbols bilinearly to formal sums."""
    acc: dict = {}
    for a, c in x._terms:
        for b, d in y._terms:
            cd = c * d
            for key, e in rule(a, b)._terms:
                acc[key] = acc.get(key, 0) + cd * e
    return FormalSum(acc)


@dataclass(frozen=True, order=True)
class LinearForm:
    """The affine function ``constant + t_coefficient * t`` with exact rationals."""

    constant: Fraction = Fraction(0)
    t_coefficient: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "constant", Fraction(self.constant))
        object.__setattr__(self, "t_coefficient", Fraction(self.t_coefficient))

    def __add__(self, other: LinearForm | int | Fraction) -> LinearForm:
        if isinstance(other, LinearForm):
            return LinearForm(self.constant + other.constant, self.t_coefficient + other.t_coefficient)
        return LinearForm(self.constant + other, self.t_coefficient)

    __radd__ = __add__

    def __neg__(self) -> LinearForm:
        return LinearForm(-self.constant, -self.t_coefficient)

    def __sub__(self, other: LinearForm | int | Fraction) -> LinearForm:
        return self + (-other)

    def __rsub__(self, other: int | Fraction) -> LinearForm:
        return (-self) + other

    def __mul__(self, k: int | Fraction) -> LinearForm:
        return LinearForm(self.constant * k, self.t_coefficient * k)

    __rmul__ = __mul__

    def __truediv__(self, k: int | Fraction) -> LinearForm:
        return LinearForm(self.constant / k, self.t_coefficient / k)

    def is_zero(self) -> bool:
        return self.constant == 0 and self.t_coefficient == 0

    def at(self, t: Fraction | int) -> Fraction:
        return self.constant + self.t_coefficient * t

    def __str__(self) -> str:
        c, a = self.constant, self.t_coefficient
        if a == 0:
            return str(c)
        head = "t" if a == 1 else "-t" if a == -1 else f"{a}*t"
        if c == 0:
            return head
        return f"{head} + {c}" if c > 0 else f"{head} - {-c}"


def lf_solve(factor: tuple[Fraction, Fraction, Fraction]) -> Optional[LinearForm]:
    """Solve ``c0 + ct*t + clam*lam = 0`` for ``lam`` as a linear form in ``t``.

    Returns None when ``clam`` is zero: the factor then constrains ``t`` alone.
    """
    c0, ct, clam = (Fraction(v) for v in factor)
    if clam == 0:
        return None
    return LinearForm(-c0 / clam, -ct / clam)
