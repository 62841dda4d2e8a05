from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fusion_rings.affine import (
    AdmissibleClass,
    AffineSymbol,
    FusionTable,
    RationalLevel,
    canonicalize,
    conjugate_class,
    fuse_generic,
    fuse_rational,
    genus_dimension,
    multiply_generic,
    quantum_dimension,
    structure_table,
    unit_symbol,
    verify_associativity_generic,
    verify_associativity_rational,
    verify_commutativity_generic,
    verify_dimension_homomorphism,
    verify_factorization,
    verify_quotient,
    verify_representative_independence,
)
from fusion_rings.ring import FormalSum
from fusion_rings.tensor_cats import sl2_tensor

S = AffineSymbol
symbols = st.builds(AffineSymbol, st.integers(0, 4), st.integers(0, 1), st.integers(0, 4))
LEVELS = [RationalLevel(p, q) for p, q in [(3, 2), (5, 2), (4, 3), (5, 3), (7, 2)]]


def cls(level, r, s):
    return AdmissibleClass(r, s, level)


def test_weyl_modules_follow_clebsch_gordan():
    for a in range(4):
        for b in range(4):
            assert fuse_generic(S(0, 0, a), S(0, 0, b)) == FormalSum([(S(0, 0, u), 1) for u in sl2_tensor(a, b)])


def test_generic_examples():
    assert fuse_generic(S(1, 0, 0), S(1, 0, 0)).as_dict() == {S(0, 0, 0): 1, S(1, 1, 0): 1, S(2, 0, 0): 1}
    prod = fuse_generic(S(1, 0, 1), S(1, 1, 1))
    assert prod.as_dict() == {S(r, e, s): 1 for r, e in [(2, 1), (1, 0), (0, 1)] for s in (2, 0)}


def test_unit():
    u = unit_symbol()
    assert fuse_generic(u, S(3, 1, 2)) == FormalSum.basis(S(3, 1, 2))
    assert fuse_generic(u, u) == FormalSum.basis(u)
    assert fuse_generic(S(1, 0, 0), S(1, 0, 0))[u] == 1


def test_canonicalize_examples():
    l32, l53 = RationalLevel(3, 2), RationalLevel(5, 3)
    assert canonicalize(l32, S(1, 1, 0)) == cls(l32, 0, 1)
    assert canonicalize(l32, S(0, 0, 0)) == cls(l32, 0, 0)
    assert canonicalize(l53, S(1, 1, 0)) == cls(l53, 1, 3)


@pytest.mark.parametrize("x, field", [(S(2, 0, 0), "r out of range 0..1"), (S(0, 0, 2), "s out of range 0..1")])
def test_canonicalize_range_errors(x, field):
    with pytest.raises(ValueError, match=field):
        canonicalize(RationalLevel(3, 2), x)


def test_level_validation():
    with pytest.raises(ValueError):
        RationalLevel(4, 2)
    with pytest.raises(ValueError):
        RationalLevel(1, 2)


def test_rational_examples():
    l32, l53 = RationalLevel(3, 2), RationalLevel(5, 3)
    assert fuse_rational(l32, cls(l32, 1, 0), cls(l32, 1, 0)) == FormalSum.basis(cls(l32, 0, 0))
    got = fuse_rational(l53, cls(l53, 1, 0), cls(l53, 1, 0))
    assert got.as_dict() == {cls(l53, 0, 0): 1, cls(l53, 1, 3): 1, cls(l53, 2, 0): 1}


def test_fuse_rational_level_mismatch():
    with pytest.raises(ValueError, match="level mismatch"):
        fuse_rational(RationalLevel(3, 2), cls(RationalLevel(5, 2), 0, 0), cls(RationalLevel(3, 2), 0, 0))


@pytest.mark.parametrize("level", LEVELS, ids=str)
def test_class_count_and_unit_row(level):
    t = structure_table(level)
    assert len(t) == level.q * (level.p - 1)
    for j in range(len(t)):
        assert t.product(t.unit, j) == FormalSum.basis(j)


def test_table_3_2_is_klein_like():
    t = structure_table(RationalLevel(3, 2))
    assert len(t) == 4
    assert all(t.product(i, i) == FormalSum.basis(t.unit) for i in range(4))
    assert all(conjugate_class(t, i) == i for i in range(4))


def test_table_4_3_is_symmetric_01():
    t = structure_table(RationalLevel(4, 3))
    n = len(t)
    assert all(t.N(i, j, k) in (0, 1) and t.N(i, j, k) == t.N(j, i, k) for i in range(n) for j in range(n) for k in range(n))


def test_frozen_4_3_row():
    # (1,0;1) o (1,0;1) at 4/3
    t = structure_table(RationalLevel(4, 3))
    i = t.index(S(1, 0, 1))
    got = {t.classes[k].rep: n for k, n in t.product(i, i)}
    assert got == {S(0, 0, 0): 1, S(0, 0, 2): 1, S(1, 0, 0): 1, S(1, 0, 2): 1, S(2, 0, 0): 1, S(2, 0, 2): 1}


def test_conjugation_is_involution_5_2():
    t = structure_table(RationalLevel(5, 2))
    conj = [conjugate_class(t, i) for i in range(len(t))]
    assert sorted(conj) == list(range(len(t)))
    assert all(conj[conj[i]] == i for i in range(len(t)))


def test_genus_examples():
    level = RationalLevel(3, 2)
    t = structure_table(level)
    assert genus_dimension(t, 1, []) == 4
    for a in range(len(t)):
        assert genus_dimension(t, 0, [a, conjugate_class(t, a)]) == 1
    t5 = structure_table(RationalLevel(5, 3))
    for i, j, k in [(3, 3, 3), (1, 4, 5), (2, 7, 11)]:
        assert genus_dimension(t5, 0, [i, j, k]) == t5.N(i, j, conjugate_class(t5, k))


def test_genus_errors():
    t = structure_table(RationalLevel(3, 2))
    with pytest.raises(ValueError):
        genus_dimension(t, -1, [0])
    with pytest.raises(ValueError):
        genus_dimension(t, 0, [])
    with pytest.raises(ValueError):
        genus_dimension(t, 0, [9])


def test_genus_two_frozen():
    # trace of the handle operator sum_a N_a N_a*, computed separately and frozen
    assert genus_dimension(structure_table(RationalLevel(5, 2)), 2, []) == 80
    assert genus_dimension(structure_table(RationalLevel(3, 2)), 2, []) == 16


def test_verifiers_small():
    assert verify_factorization(3).passed
    assert verify_commutativity_generic(3).passed
    assert verify_associativity_generic(2).passed
    assert verify_dimension_homomorphism(4).passed
    for level in LEVELS[:3]:
        assert verify_quotient(level).passed
        assert verify_associativity_rational(level).passed
        assert verify_representative_independence(level).passed


def test_reduction_to_osp_ring():
    # s = 0 symbols multiply inside the s = 0 part
    for a in range(3):
        for b in range(3):
            assert all(x.s == 0 for x, _ in fuse_generic(S(a, 0, 0), S(b, 1, 0)))


def test_table_lookup_by_symbol():
    level = RationalLevel(3, 2)
    t = FusionTable(level, tuple(level.classes()))
    assert t.index(S(1, 1, 0)) == t.index(cls(level, 0, 1))


@given(symbols, symbols)
def test_commutative(a, b):
    assert fuse_generic(a, b) == fuse_generic(b, a)


@given(symbols, symbols)
def test_qdim_multiplicative(a, b):
    assert fuse_generic(a, b).total(quantum_dimension) == quantum_dimension(a) * quantum_dimension(b)


@given(symbols, symbols, symbols)
def test_associative(a, b, c):
    x, y, z = (FormalSum.basis(v) for v in (a, b, c))
    assert multiply_generic(multiply_generic(x, y), z) == multiply_generic(x, multiply_generic(y, z))


@given(st.sampled_from(LEVELS).flatmap(lambda l: st.tuples(st.just(l), st.sampled_from(l.symbols()), st.sampled_from(l.symbols()))))
def test_rational_products_are_nonnegative(case):
    level, a, b = case
    prod = fuse_rational(level, canonicalize(level, a), canonicalize(level, b))
    assert prod.is_nonnegative()
