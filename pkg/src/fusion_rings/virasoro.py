"""Virasoro fusion and the Drinfeld-Sokolov map from affine sl(2) symbols.

Virasoro symbols ``(V_a, V_b)`` fuse by Clebsch-Gordan in both slots at
generic central charge.  Minimal models at ``c_pq`` identify
``(V_a, V_b)`` with ``(V_{q-2-a}, V_{p-2-b})`` and fuse by truncating the two
slots at ``q - 2`` and ``p - 2``.  The reductions ``phi_e`` and ``phi_f`` send
``(V_r^eps, V_s)`` to a single Virasoro symbol (or zero), and their sum is a
ring epimorphism at generic and at rational level.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Optional

from fusion_rings.affine import (
    AdmissibleClass,
    AffineSymbol,
    RationalLevel,
    VerificationReport,
    _sum_str,
    fuse_generic,
    fuse_rational,
    generic_symbols,
)
from fusion_rings.ring import FormalSum, bilinear_product
from fusion_rings.tensor_cats import sl2_tensor, sl2_truncated_tensor


class VirSymbol(NamedTuple):
    a: int
    b: int

    def __str__(self) -> str:
        return f"({self.a},{self.b})"


class MinimalClass(NamedTuple):
    """A minimal-model class, stored by the lexicographically smaller member."""

    a: int
    b: int
    level: RationalLevel

    @property
    def rep(self) -> VirSymbol:
        return VirSymbol(self.a, self.b)

    def __str__(self) -> str:
        return str(self.rep)


def _check_minimal_level(level: RationalLevel) -> None:
    if level.p < 2 or level.q < 2:
        raise ValueError(f"minimal models need p, q >= 2, got {level}")


def central_charge(p: int, q: int) -> Fraction:
    """``c_pq = 1 - 6 (p - q)^2 / (p q)``."""
    if p < 2 or q < 2:
        raise ValueError(f"central charge needs p, q >= 2, got p={p}, q={q}")
    if math.gcd(p, q) != 1:
        raise ValueError(f"p={p} and q={q} are not coprime")
    return 1 - Fraction(6 * (p - q) ** 2, p * q)


@lru_cache(maxsize=None)
def _vir_fuse_generic_cached(x: VirSymbol, y: VirSymbol) -> FormalSum[VirSymbol]:
    bs = sl2_tensor(x.b, y.b)
    return FormalSum([(VirSymbol(a, b), 1) for a in sl2_tensor(x.a, y.a) for b in bs])


def vir_fuse_generic(x: VirSymbol, y: VirSymbol) -> FormalSum[VirSymbol]:
    """``(V_a1, V_b1) o (V_a2, V_b2) = (V_a1 (x) V_a2, V_b1 (x) V_b2)``."""
    return _vir_fuse_generic_cached(VirSymbol(*x), VirSymbol(*y))


def vir_multiply_generic(x: FormalSum[VirSymbol], y: FormalSum[VirSymbol]) -> FormalSum[VirSymbol]:
    return bilinear_product(x, y, vir_fuse_generic)


def vir_canonicalize(level: RationalLevel, x: VirSymbol) -> Optional[MinimalClass]:
    """Class of ``x`` at ``c_pq``, or None when the partner index is -1.

    Accepts ``0 <= a <= q - 1`` and ``0 <= b <= p - 1``; a symbol with
    ``a = q - 1`` or ``b = p - 1`` is equivalent to one carrying ``V_{-1}``
    and therefore vanishes.
    """
    _check_minimal_level(level)
    a, b = x
    if not 0 <= a <= level.q - 1:
        raise ValueError(f"a out of range 0..{level.q - 1}: got {a}")
    if not 0 <= b <= level.p - 1:
        raise ValueError(f"b out of range 0..{level.p - 1}: got {b}")
    if a == level.q - 1 or b == level.p - 1:
        return None
    rep = min((a, b), (level.q - 2 - a, level.p - 2 - b))
    return MinimalClass(rep[0], rep[1], level)


def minimal_classes(level: RationalLevel) -> list[MinimalClass]:
    _check_minimal_level(level)
    found = {
        vir_canonicalize(level, VirSymbol(a, b)) for a in range(level.q - 1) for b in range(level.p - 1)
    }
    return sorted(found)


@lru_cache(maxsize=None)
def _vir_fuse_minimal_cached(x: MinimalClass, y: MinimalClass) -> FormalSum[MinimalClass]:
    level = x.level
    bs = sl2_truncated_tensor(x.b, y.b, level.p - 2)
    out: dict = {}
    for a in sl2_truncated_tensor(x.a, y.a, level.q - 2):
        for b in bs:
            c = vir_canonicalize(level, VirSymbol(a, b))
            if c is not None:
                out[c] = out.get(c, 0) + 1
    return FormalSum(out)


def vir_fuse_minimal(level: RationalLevel, x: MinimalClass, y: MinimalClass) -> FormalSum[MinimalClass]:
    """Minimal-model fusion by double truncation, then identification."""
    if x.level != level or y.level != level:
        raise ValueError(f"level mismatch: {x.level}, {y.level} vs {level}")
    return _vir_fuse_minimal_cached(x, y)


def vir_multiply_minimal(
    level: RationalLevel, x: FormalSum[MinimalClass], y: FormalSum[MinimalClass]
) -> FormalSum[MinimalClass]:
    return bilinear_product(x, y, lambda u, v: vir_fuse_minimal(level, u, v))


def ds_phi_e(x: AffineSymbol) -> FormalSum[VirSymbol]:
    """``(V_m^0, V_n) -> (V_m, V_n)``, ``(V_m^1, V_n) -> (V_{m-1}, V_n)``; V_{-1} is zero."""
    r, e, s = x
    a = r if e == 0 else r - 1
    return FormalSum.basis(VirSymbol(a, s)) if a >= 0 else FormalSum.zero()


def ds_phi_f(x: AffineSymbol) -> FormalSum[VirSymbol]:
    """``(V_m^0, V_n) -> (V_{m-1}, V_n)``, ``(V_m^1, V_n) -> (V_m, V_n)``; V_{-1} is zero."""
    r, e, s = x
    a = r - 1 if e == 0 else r
    return FormalSum.basis(VirSymbol(a, s)) if a >= 0 else FormalSum.zero()


def _ds_symbol(x: AffineSymbol) -> FormalSum[VirSymbol]:
    return ds_phi_e(x) + ds_phi_f(x)


def ds_map(x: FormalSum[AffineSymbol]) -> FormalSum[VirSymbol]:
    """Linear extension of ``phi_e + phi_f`` to generic-level elements."""
    return x.map_basis(_ds_symbol)


def ds_class(level: RationalLevel, c: AdmissibleClass) -> FormalSum[MinimalClass]:
    """DS image of an admissible class, computed on its parity-0 representative."""
    return ds_symbol_rational(level, c.rep)


def ds_symbol_rational(level: RationalLevel, x: AffineSymbol) -> FormalSum[MinimalClass]:
    return _ds_symbol(x).map_basis(lambda v: vir_canonicalize(level, v))


def ds_map_rational(level: RationalLevel, x: FormalSum[AdmissibleClass]) -> FormalSum[MinimalClass]:
    return x.map_basis(lambda c: ds_class(level, c))


def _telescoping_preimage(a: int, b: int, make):
    # (a,b) = sum_k (-1)^k ds(a-k, 0; b), since ds(r,0;s) = (r,s) + (r-1,s)
    return FormalSum([(make(a - k, b), (-1) ** k) for k in range(a + 1)])


def verify_ds_epimorphism(
    bound: Optional[int] = None, level: Optional[RationalLevel] = None
) -> VerificationReport:
    """Check ``phi_e + phi_f`` is a surjective ring homomorphism.

    Generic mode (``bound``) runs over all symbols with indices up to the
    bound; rational mode (``level``) over all admissible classes, and also
    checks that both members of every equivalence pair have the same image.
    """
    if (bound is None) == (level is None):
        raise ValueError("give exactly one of bound or level")
    if level is None:
        return _verify_ds_generic(bound)
    return _verify_ds_rational(level)


def _verify_ds_generic(bound: int) -> VerificationReport:
    syms = generic_symbols(bound)
    checked = 0
    for x in syms:
        for y in syms:
            lhs = ds_map(fuse_generic(x, y))
            rhs = vir_multiply_generic(ds_map(FormalSum.basis(x)), ds_map(FormalSum.basis(y)))
            checked += 1
            if lhs != rhs:
                return VerificationReport(
                    "ds-hom", False, checked, {"x": str(x), "y": str(y), "lhs": _sum_str(lhs), "rhs": _sum_str(rhs)}
                )
    for a in range(bound + 1):
        for b in range(bound + 1):
            pre = _telescoping_preimage(a, b, lambda r, s: AffineSymbol(r, 0, s))
            if ds_map(pre) != FormalSum.basis(VirSymbol(a, b)):
                return VerificationReport("ds-hom", False, checked, {"not_in_image": str(VirSymbol(a, b))})
    return VerificationReport("ds-hom", True, checked, details={"level": "generic", "bound": bound, "surjective": True})


def _verify_ds_rational(level: RationalLevel) -> VerificationReport:
    _check_minimal_level(level)
    classes = level.classes()
    checked = 0
    for c in classes:
        checked += 1
        if ds_symbol_rational(level, c.rep) != ds_symbol_rational(level, c.partner()):
            return VerificationReport(
                "ds-hom",
                False,
                checked,
                {
                    "class": str(c),
                    "rep_image": _sum_str(ds_symbol_rational(level, c.rep)),
                    "partner_image": _sum_str(ds_symbol_rational(level, c.partner())),
                },
            )
    for x in classes:
        for y in classes:
            lhs = ds_map_rational(level, fuse_rational(level, x, y))
            rhs = vir_multiply_minimal(level, ds_class(level, x), ds_class(level, y))
            checked += 1
            if lhs != rhs:
                return VerificationReport(
                    "ds-hom", False, checked, {"x": str(x), "y": str(y), "lhs": _sum_str(lhs), "rhs": _sum_str(rhs)}
                )
    for target in minimal_classes(level):
        pre = _telescoping_preimage(target.a, target.b, lambda r, s: AdmissibleClass(r, s, level))
        if ds_map_rational(level, pre) != FormalSum.basis(target):
            return VerificationReport("ds-hom", False, checked, {"not_in_image": str(target)})
    return VerificationReport(
        "ds-hom",
        True,
        checked,
        details={
            "level": str(level),
            "central_charge": str(central_charge(level.p, level.q)),
            "surjective": True,
        },
    )
