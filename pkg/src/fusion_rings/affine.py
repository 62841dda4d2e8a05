"""Fusion rings of affine sl(2).

At generic level the ring has basis the symbols ``(V_r^eps, V_s)`` labelling
generalized Weyl modules, and factors as (osp(1|2) Grothendieck ring) x
(sl(2) Grothendieck ring).  At a rational level ``k + 2 = p/q`` the basis is
the set of admissible equivalence classes; the osp part is truncated at the
q-th root of unity and the sl(2) part at ``p - 2``.

Genus-g dimensions are computed by the usual pinching count: the coefficient
of the unit class in ``(x_1 o ... o x_n) o h^g`` with ``h = sum_a a o a*``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, NamedTuple, Optional, Union

from fusion_rings.ring import FormalSum, bilinear_product
from fusion_rings.tensor_cats import (
    OspIrrep,
    osp_tensor,
    osp_truncated_tensor,
    sl2_tensor,
    sl2_truncated_tensor,
)


class AffineSymbol(NamedTuple):
    """The pair ``(V_r^parity, V_s)``; ordered lexicographically on ``(r, parity, s)``."""

    r: int
    parity: int
    s: int

    def __str__(self) -> str:
        return f"({self.r},{self.parity};{self.s})"


def symbol(r: int, parity: int, s: int) -> AffineSymbol:
    if r < 0 or s < 0:
        raise ValueError(f"symbol indices must be nonnegative, got r={r}, s={s}")
    if parity not in (0, 1):
        raise ValueError(f"parity must be 0 or 1, got {parity}")
    return AffineSymbol(r, parity, s)


def unit_symbol() -> AffineSymbol:
    """The vacuum symbol ``(V_0^0, V_0)``."""
    return AffineSymbol(0, 0, 0)


def quantum_dimension(x: AffineSymbol) -> int:
    return (2 * x.r + 1) * (x.s + 1)


@lru_cache(maxsize=None)
def _fuse_generic_cached(a: AffineSymbol, b: AffineSymbol) -> FormalSum[AffineSymbol]:
    s_parts = sl2_tensor(a.s, b.s)
    terms = [
        (AffineSymbol(o.n, o.parity, s), 1)
        for o in osp_tensor(OspIrrep(a.r, a.parity), OspIrrep(b.r, b.parity))
        for s in s_parts
    ]
    return FormalSum(terms)


def fuse_generic(a: AffineSymbol, b: AffineSymbol) -> FormalSum[AffineSymbol]:
    """Generic-level fusion product of two symbols.

    The osp(1|2) decomposition of the ``(r, parity)`` parts times the
    Clebsch-Gordan series of the ``s`` parts, every term with coefficient 1.
    """
    return _fuse_generic_cached(AffineSymbol(*a), AffineSymbol(*b))


def multiply_generic(x: FormalSum[AffineSymbol], y: FormalSum[AffineSymbol]) -> FormalSum[AffineSymbol]:
    return bilinear_product(x, y, fuse_generic)


@dataclass(frozen=True, order=True)
class RationalLevel:
    """``k + 2 = p/q`` with coprime ``p >= 2``, ``q >= 1``."""

    p: int
    q: int

    def __post_init__(self) -> None:
        if self.p < 2:
            raise ValueError(f"p must be at least 2, got {self.p}")
        if self.q < 1:
            raise ValueError(f"q must be at least 1, got {self.q}")
        if math.gcd(self.p, self.q) != 1:
            raise ValueError(f"p={self.p} and q={self.q} are not coprime")

    @property
    def k(self) -> Fraction:
        return Fraction(self.p, self.q) - 2

    @property
    def r_max(self) -> int:
        return self.q - 1

    @property
    def s_max(self) -> int:
        return self.p - 2

    def classes(self) -> list[AdmissibleClass]:
        return [AdmissibleClass(r, s, self) for r in range(self.q) for s in range(self.p - 1)]

    def symbols(self) -> list[AffineSymbol]:
        """All in-range symbols of both parities."""
        return [AffineSymbol(r, e, s) for r in range(self.q) for e in (0, 1) for s in range(self.p - 1)]

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"


class AdmissibleClass(NamedTuple):
    """An admissible class, stored by its parity-0 representative ``(r, 0; s)``."""

    r: int
    s: int
    level: RationalLevel

    @property
    def rep(self) -> AffineSymbol:
        return AffineSymbol(self.r, 0, self.s)

    def partner(self) -> AffineSymbol:
        return AffineSymbol(self.level.q - 1 - self.r, 1, self.level.p - 2 - self.s)

    def __str__(self) -> str:
        return str(self.rep)


def check_range(level: RationalLevel, x: AffineSymbol) -> None:
    if not 0 <= x.r <= level.r_max:
        raise ValueError(f"r out of range 0..{level.r_max}: got {x.r}")
    if not 0 <= x.s <= level.s_max:
        raise ValueError(f"s out of range 0..{level.s_max}: got {x.s}")
    if x.parity not in (0, 1):
        raise ValueError(f"parity out of range 0..1: got {x.parity}")


def canonicalize(level: RationalLevel, x: AffineSymbol) -> AdmissibleClass:
    """Map an in-range symbol to its admissible class.

    ``(V_m^eps, V_n)`` is identified with ``(V_{q-1-m}^{eps+1}, V_{p-2-n})``;
    the class is stored by its parity-0 member.
    """
    x = AffineSymbol(*x)
    check_range(level, x)
    if x.parity == 0:
        return AdmissibleClass(x.r, x.s, level)
    return AdmissibleClass(level.q - 1 - x.r, level.p - 2 - x.s, level)


def truncated_product(level: RationalLevel, a: AffineSymbol, b: AffineSymbol) -> FormalSum[AffineSymbol]:
    """Product of in-range symbols in Rep(osp(1|2))^(q) (x) Rep(sl2)^(p-1), before identification."""
    a, b = AffineSymbol(*a), AffineSymbol(*b)
    check_range(level, a)
    check_range(level, b)
    s_parts = sl2_truncated_tensor(a.s, b.s, level.s_max)
    osp_parts = osp_truncated_tensor(OspIrrep(a.r, a.parity), OspIrrep(b.r, b.parity), level.q)
    return FormalSum([(AffineSymbol(o.n, o.parity, s), 1) for o in osp_parts for s in s_parts])


@lru_cache(maxsize=None)
def _fuse_rational_cached(a: AdmissibleClass, b: AdmissibleClass) -> FormalSum[AdmissibleClass]:
    level = a.level
    return truncated_product(level, a.rep, b.rep).map_basis(lambda z: canonicalize(level, z))


def fuse_rational(level: RationalLevel, a: AdmissibleClass, b: AdmissibleClass) -> FormalSum[AdmissibleClass]:
    """Fusion product of admissible classes at level ``p/q``.

    The osp part runs from ``|r1 - r2|`` up to ``min(2q - 2 - r1 - r2, r1 + r2)``
    with alternating parity, the sl(2) part is the level ``p - 2`` truncated
    product, and every output symbol is canonicalized before coefficients are
    collected.
    """
    if a.level != level or b.level != level:
        raise ValueError(f"level mismatch: {a.level}, {b.level} vs {level}")
    return _fuse_rational_cached(a, b)


def multiply_rational(
    level: RationalLevel, x: FormalSum[AdmissibleClass], y: FormalSum[AdmissibleClass]
) -> FormalSum[AdmissibleClass]:
    return bilinear_product(x, y, lambda a, b: fuse_rational(level, a, b))


@dataclass
class FusionTable:
    """Structure constants ``N[i][j][k]`` over the classes of one level.

    Rows are computed on first access and memoized; after that the table is
    only read.
    """

    level: RationalLevel
    classes: tuple[AdmissibleClass, ...]
    _index: dict = field(default_factory=dict, repr=False)
    _rows: dict = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        self._index = {c: i for i, c in enumerate(self.classes)}

    def __len__(self) -> int:
        return len(self.classes)

    @property
    def unit(self) -> int:
        return self._index[AdmissibleClass(0, 0, self.level)]

    def index(self, c: Union[AdmissibleClass, AffineSymbol]) -> int:
        if isinstance(c, AffineSymbol):
            c = canonicalize(self.level, c)
        return self._index[c]

    def product(self, i: int, j: int) -> FormalSum[int]:
        """``classes[i] o classes[j]`` expressed over class indices."""
        key = (i, j) if i <= j else (j, i)
        row = self._rows.get(key)
        if row is None:
            prod = fuse_rational(self.level, self.classes[key[0]], self.classes[key[1]])
            row = FormalSum([(self._index[c], n) for c, n in prod])
            self._rows[key] = row
        return row

    def N(self, i: int, j: int, k: int) -> int:
        return self.product(i, j)[k]

    def multiply(self, x: FormalSum[int], y: FormalSum[int]) -> FormalSum[int]:
        return bilinear_product(x, y, self.product)

    def tensor(self) -> list[list[list[int]]]:
        n = len(self.classes)
        return [[[self.N(i, j, k) for k in range(n)] for j in range(n)] for i in range(n)]

    def entries(self):
        n = len(self.classes)
        for i in range(n):
            for j in range(n):
                prod = self.product(i, j)
                for k in range(n):
                    yield i, j, k, prod[k]


def structure_table(level: RationalLevel) -> FusionTable:
    """Fusion table over the ``q (p - 1)`` classes, ordered by ``(r, s)``."""
    return FusionTable(level, tuple(level.classes()))


def conjugate_class(table: FusionTable, i: int) -> int:
    """The unique ``j`` with ``N[i][j][unit] = 1``."""
    u = table.unit
    hits = [j for j in range(len(table)) if table.N(i, j, u) != 0]
    if len(hits) != 1 or table.N(i, hits[0], u) != 1:
        raise AssertionError(f"class {table.classes[i]} has no unique conjugate: {hits}")
    return hits[0]


def genus_dimension(table: FusionTable, g: int, insertions: list[int]) -> int:
    """Dimension of conformal blocks on a genus-g surface with the given insertions.

    Pinching reduces the count to the unit coefficient of
    ``(x_1 o ... o x_n) o h^g`` where ``h = sum_a a o a*``.
    """
    if g < 0:
        raise ValueError(f"genus must be nonnegative, got {g}")
    if g == 0 and not insertions:
        raise ValueError("empty surface datum: genus 0 needs at least one insertion")
    n = len(table)
    for i in insertions:
        if not 0 <= i < n:
            raise ValueError(f"insertion index {i} out of range 0..{n - 1}")
    acc: FormalSum[int] = FormalSum.basis(table.unit)
    for i in insertions:
        acc = table.multiply(acc, FormalSum.basis(i))
    if g:
        handle = FormalSum.zero()
        for a in range(n):
            handle = handle + table.product(a, conjugate_class(table, a))
        for _ in range(g):
            acc = table.multiply(acc, handle)
    return acc[table.unit]


@dataclass
class VerificationReport:
    """Outcome of one exhaustive check; ``counterexample`` is the first failure."""

    name: str
    passed: bool
    checked: int
    counterexample: Optional[dict[str, Any]] = None
    details: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {
            "suite": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "counterexample": self.counterexample,
            "details": self.details,
        }


def generic_symbols(bound: int) -> list[AffineSymbol]:
    return [AffineSymbol(r, e, s) for r in range(bound + 1) for e in (0, 1) for s in range(bound + 1)]


def _sum_str(x: FormalSum) -> str:
    if not x:
        return "0"
    return " + ".join(str(b) if c == 1 else f"{c}*{b}" for b, c in x)


def verify_factorization(bound: int) -> VerificationReport:
    """Check generic structure constants equal osp(1|2) x sl(2) multiplicities."""
    checked = 0
    for a in generic_symbols(bound):
        for b in generic_symbols(bound):
            osp = {}
            for o in osp_tensor(OspIrrep(a.r, a.parity), OspIrrep(b.r, b.parity)):
                osp[o] = osp.get(o, 0) + 1
            cg = {}
            for s in sl2_tensor(a.s, b.s):
                cg[s] = cg.get(s, 0) + 1
            expected = FormalSum(
                [(AffineSymbol(o.n, o.parity, s), m * n) for o, m in osp.items() for s, n in cg.items()]
            )
            got = fuse_generic(a, b)
            checked += 1
            if got != expected:
                return VerificationReport(
                    "factorization",
                    False,
                    checked,
                    {"a": str(a), "b": str(b), "got": _sum_str(got), "expected": _sum_str(expected)},
                )
    return VerificationReport("factorization", True, checked, details={"bound": bound})


def verify_quotient(level: RationalLevel) -> VerificationReport:
    """Check that canonicalization intertwines the truncated product with ``fuse_rational``."""
    checked = 0
    unit_ok = canonicalize(level, unit_symbol()) == AdmissibleClass(0, 0, level)
    if not unit_ok:
        return VerificationReport("quotient", False, 0, {"reason": "unit does not map to unit"})
    for x in level.symbols():
        for y in level.symbols():
            lhs = truncated_product(level, x, y).map_basis(lambda z: canonicalize(level, z))
            rhs = fuse_rational(level, canonicalize(level, x), canonicalize(level, y))
            checked += 1
            if lhs != rhs:
                return VerificationReport(
                    "quotient",
                    False,
                    checked,
                    {"x": str(x), "y": str(y), "lhs": _sum_str(lhs), "rhs": _sum_str(rhs)},
                )
    return VerificationReport("quotient", True, checked, details={"level": str(level)})


def verify_commutativity_generic(bound: int) -> VerificationReport:
    syms = generic_symbols(bound)
    checked = 0
    for a in syms:
        for b in syms:
            checked += 1
            if fuse_generic(a, b) != fuse_generic(b, a):
                return VerificationReport("comm", False, checked, {"a": str(a), "b": str(b)})
    return VerificationReport("comm", True, checked, details={"level": "generic", "bound": bound})


def _fold_products(pairs, rule) -> dict:
    # sum of coefficient * rule(u, v) over (u, v, coefficient), as a plain dict
    acc: dict = {}
    for u, v, c in pairs:
        for key, e in rule(u, v)._terms:
            acc[key] = acc.get(key, 0) + c * e
    return {k: v for k, v in acc.items() if v}


def verify_associativity_generic(bound: int) -> VerificationReport:
    syms = generic_symbols(bound)
    rule = _fuse_generic_cached
    checked = 0
    for a in syms:
        for b in syms:
            ab = rule(a, b)._terms
            for c in syms:
                bc = rule(b, c)._terms
                left = _fold_products(((u, c, k) for u, k in ab), rule)
                right = _fold_products(((a, v, k) for v, k in bc), rule)
                checked += 1
                if left != right:
                    return VerificationReport(
                        "assoc",
                        False,
                        checked,
                        {
                            "a": str(a),
                            "b": str(b),
                            "c": str(c),
                            "left": _sum_str(FormalSum(left)),
                            "right": _sum_str(FormalSum(right)),
                        },
                    )
    return VerificationReport("assoc", True, checked, details={"level": "generic", "bound": bound})


def verify_commutativity_rational(level: RationalLevel) -> VerificationReport:
    cls = level.classes()
    checked = 0
    for a in cls:
        for b in cls:
            checked += 1
            if fuse_rational(level, a, b) != fuse_rational(level, b, a):
                return VerificationReport("comm", False, checked, {"a": str(a), "b": str(b)})
    return VerificationReport("comm", True, checked, details={"level": str(level)})


def verify_associativity_rational(level: RationalLevel) -> VerificationReport:
    cls = level.classes()
    checked = 0
    for a in cls:
        for b in cls:
            ab = fuse_rational(level, a, b)
            for c in cls:
                left = multiply_rational(level, ab, FormalSum.basis(c))
                right = multiply_rational(level, FormalSum.basis(a), fuse_rational(level, b, c))
                checked += 1
                if left != right:
                    return VerificationReport(
                        "assoc",
                        False,
                        checked,
                        {"a": str(a), "b": str(b), "c": str(c), "left": _sum_str(left), "right": _sum_str(right)},
                    )
    return VerificationReport("assoc", True, checked, details={"level": str(level)})


def verify_dimension_homomorphism(bound: int) -> VerificationReport:
    """Check ``qdim(r, eps; s) = (2r + 1)(s + 1)`` is multiplicative on generic products."""
    checked = 0
    for a in generic_symbols(bound):
        for b in generic_symbols(bound):
            prod = fuse_generic(a, b)
            checked += 1
            lhs = prod.total(quantum_dimension)
            rhs = quantum_dimension(a) * quantum_dimension(b)
            if lhs != rhs:
                return VerificationReport(
                    "dimension-hom", False, checked, {"a": str(a), "b": str(b), "lhs": lhs, "rhs": rhs}
                )
    return VerificationReport("dimension-hom", True, checked, details={"bound": bound})


def verify_representative_independence(level: RationalLevel) -> VerificationReport:
    """Both members of each equivalence pair give the same class and the same products."""
    checked = 0
    for c in level.classes():
        if canonicalize(level, c.rep) != canonicalize(level, c.partner()):
            return VerificationReport("representatives", False, checked, {"class": str(c)})
        for d in level.classes():
            for x in (c.rep, c.partner()):
                for y in (d.rep, d.partner()):
                    checked += 1
                    got = fuse_rational(level, canonicalize(level, x), canonicalize(level, y))
                    if got != fuse_rational(level, c, d):
                        return VerificationReport("representatives", False, checked, {"x": str(x), "y": str(y)})
    return VerificationReport("representatives", True, checked, details={"level": str(level)})
