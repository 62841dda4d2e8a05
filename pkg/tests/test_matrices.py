from __future__ import annotations

from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from fusion_rings.matrices import ExactMatrix


def test_rank_and_nullspace():
    m = ExactMatrix.from_rows([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    assert m.rank() == 2
    (v,) = m.nullspace()
    assert m.apply(v) == (0, 0, 0)


def test_identity_power_and_product():
    a = ExactMatrix.from_rows([[0, 1], [0, 0]])
    assert a.power(2).is_zero()
    assert (ExactMatrix.identity(2) @ a) == a
    assert a.shape == (2, 2)
    assert (a + a).scale(Fraction(1, 2)) == a


def test_diagonal_entries():
    d = ExactMatrix.diagonal([3, -1])
    assert d[0, 0] == 3 and d[1, 1] == -1 and d[0, 1] == 0


matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-3, 3), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


@given(matrices)
def test_rank_nullity(rows):
    m = ExactMatrix.from_rows(rows)
    kernel = m.nullspace()
    assert m.rank() + len(kernel) == m.ncols
    for v in kernel:
        assert all(x == 0 for x in m.apply(v))
