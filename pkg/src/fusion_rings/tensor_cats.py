"""Finite-dimensional representation combinatorics of sl(2) and osp(1|2).

sl(2) irreducibles are plain integers ``n`` (dimension ``n + 1``).  osp(1|2)
irreducibles are :class:`OspIrrep` pairs ``(n, parity)`` of dimension
``2n + 1``.  Root-of-unity truncations keep only the semisimple part of the
quantum tensor product, which is fixed by an index cap, so they are computed
combinatorially.  :func:`osp_tensor_oracle` recomputes the osp(1|2)
decomposition from explicit matrices as an independent check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from fusion_rings.matrices import ExactMatrix


class OspIrrep(NamedTuple):
    n: int
    parity: int = 0

    @property
    def dim(self) -> int:
        return 2 * self.n + 1


def _check_index(name: str, value: int) -> None:
    if value < 0:
        raise ValueError(f"{name} must be nonnegative, got {value}")


def sl2_tensor(n1: int, n2: int) -> list[int]:
    """Clebsch-Gordan: V_n1 (x) V_n2 = V_{n1+n2} + V_{n1+n2-2} + ... + V_{|n1-n2|}."""
    _check_index("n1", n1)
    _check_index("n2", n2)
    return list(range(n1 + n2, abs(n1 - n2) - 1, -2))


def sl2_truncated_tensor(n1: int, n2: int, kmax: int) -> list[int]:
    """Kazhdan-Lusztig truncation at level ``kmax``.

    Keeps ``|n1-n2|, |n1-n2|+2, ..., min(2*kmax - n1 - n2, n1 + n2)``.
    """
    _check_index("n1", n1)
    _check_index("n2", n2)
    if n1 > kmax or n2 > kmax:
        raise ValueError(f"indices ({n1}, {n2}) exceed truncation bound {kmax}")
    top = min(2 * kmax - n1 - n2, n1 + n2)
    bottom = abs(n1 - n2)
    if top < bottom:
        raise AssertionError(f"truncation bound {top} fell below {bottom}")
    return list(range(bottom, top + 1, 2))


def osp_tensor(a: OspIrrep, b: OspIrrep) -> list[OspIrrep]:
    """Decompose V_{r1}^alpha (x) V_{r2}^beta.

    One summand for each index from ``r1 + r2`` down to ``|r1 - r2|``; the
    parity alternates, starting and ending at ``alpha + beta``.
    """
    a, b = OspIrrep(*a), OspIrrep(*b)
    _check_index("a.n", a.n)
    _check_index("b.n", b.n)
    top = a.n + b.n
    return [OspIrrep(top - d, (a.parity + b.parity + d) % 2) for d in range(2 * min(a.n, b.n) + 1)]


def osp_truncated_tensor(a: OspIrrep, b: OspIrrep, l: int) -> list[OspIrrep]:
    """Semisimple part of the tensor product at a primitive l-th root of unity.

    Indices run from ``|r1 - r2|`` to ``min(2(l-1) - r1 - r2, r1 + r2)`` with
    parity alternating from ``alpha + beta`` at the bottom.
    """
    a, b = OspIrrep(*a), OspIrrep(*b)
    if l < 1:
        raise ValueError(f"l must be positive, got {l}")
    if not (0 <= a.n < l and 0 <= b.n < l):
        raise ValueError(f"indices ({a.n}, {b.n}) must lie in 0..{l - 1}")
    bottom = abs(a.n - b.n)
    top = min(2 * (l - 1) - a.n - b.n, a.n + b.n)
    if top < bottom:
        raise AssertionError(f"truncation bound {top} fell below {bottom}")
    par = a.parity + b.parity
    return [OspIrrep(r, (par + r - bottom) % 2) for r in range(bottom, top + 1)]


def osp_forget_to_sl2(a: OspIrrep) -> list[int]:
    """Restrict V_m^alpha to sl(2): V_m + V_{m-1}, dropping V_{-1}."""
    a = OspIrrep(*a)
    return [a.n, a.n - 1] if a.n > 0 else [0]


@dataclass(frozen=True)
class OspMatrixRep:
    n: int
    parity: int
    x_plus: ExactMatrix
    x_minus: ExactMatrix
    h: ExactMatrix
    parity_vector: tuple[int, ...]


def osp_raising_coefficients(n: int) -> list[int]:
    """c_i with x_plus u_i = c_i u_{i-1}: c_0 = 0 and c_{i+1} = (n - i) - c_i."""
    c = [0]
    for i in range(2 * n):
        c.append((n - i) - c[-1])
    return c


def osp_matrix_rep(n: int, parity: int = 0) -> OspMatrixRep:
    """Explicit matrices for V_n^parity on the basis u_0, ..., u_{2n}.

    ``h u_i = (n - i) u_i``, ``x_minus u_i = u_{i+1}``, ``x_plus u_i = c_i u_{i-1}``;
    basis vector ``u_i`` has parity ``i + parity``.
    """
    _check_index("n", n)
    dim = 2 * n + 1
    c = osp_raising_coefficients(n)
    xp = [[0] * dim for _ in range(dim)]
    xm = [[0] * dim for _ in range(dim)]
    for i in range(1, dim):
        xp[i - 1][i] = c[i]
        xm[i][i - 1] = 1
    return OspMatrixRep(
        n=n,
        parity=parity % 2,
        x_plus=ExactMatrix.from_rows(xp, dim),
        x_minus=ExactMatrix.from_rows(xm, dim),
        h=ExactMatrix.diagonal([n - i for i in range(dim)]),
        parity_vector=tuple((i + parity) % 2 for i in range(dim)),
    )


def _super_tensor_odd(x1: ExactMatrix, par1: tuple[int, ...], x2: ExactMatrix) -> ExactMatrix:
    # x (x) 1 + (-1)^{|u|} 1 (x) x on u (x) v; basis index i1 * d2 + i2
    d1, d2 = x1.nrows, x2.nrows
    out = [[Fraction(0)] * (d1 * d2) for _ in range(d1 * d2)]
    for i1 in range(d1):
        for j1 in range(d1):
            a = x1[i1, j1]
            if a:
                for k in range(d2):
                    out[i1 * d2 + k][j1 * d2 + k] += a
    for j1 in range(d1):
        sign = -1 if par1[j1] else 1
        for i2 in range(d2):
            for j2 in range(d2):
                b = x2[i2, j2]
                if b:
                    out[j1 * d2 + i2][j1 * d2 + j2] += sign * b
    return ExactMatrix.from_rows(out, d1 * d2)


def osp_tensor_oracle(a: OspIrrep, b: OspIrrep) -> list[OspIrrep]:
    """Decompose ``a (x) b`` by counting x_plus-singular vectors per weight.

    Builds the super tensor product action explicitly and, for each h-weight
    ``w >= 0``, computes the kernel of x_plus on that weight space by exact
    elimination.  Each kernel vector generates one irreducible V_w whose
    parity is that of the weight space.
    """
    a, b = OspIrrep(*a), OspIrrep(*b)
    ra, rb = osp_matrix_rep(a.n, a.parity), osp_matrix_rep(b.n, b.parity)
    xp = _super_tensor_odd(ra.x_plus, ra.parity_vector, rb.x_plus)
    d2 = rb.h.nrows
    weights = [ra.h[i, i] + rb.h[j, j] for i in range(ra.h.nrows) for j in range(d2)]
    parities = [(ra.parity_vector[i] + rb.parity_vector[j]) % 2 for i in range(ra.h.nrows) for j in range(d2)]
    out = []
    for w in sorted({int(w) for w in weights if w >= 0}, reverse=True):
        cols = [k for k, wk in enumerate(weights) if wk == w]
        target = [k for k, wk in enumerate(weights) if wk == w + 1]
        if target:
            kernel_dim = len(cols) - xp.submatrix(target, cols).rank()
        else:
            kernel_dim = len(cols)
        space_parity = {parities[k] for k in cols}
        if len(space_parity) != 1:
            raise AssertionError(f"weight space {w} is not parity-homogeneous")
        out.extend([OspIrrep(w, space_parity.pop())] * kernel_dim)
    return out


def sl2_matrices(d: int) -> tuple[ExactMatrix, ExactMatrix, ExactMatrix]:
    """(e, f, h) on V_d with basis v_0..v_d: h v_k = (d-2k) v_k, f v_k = v_{k+1}, e v_k = k(d-k+1) v_{k-1}."""
    _check_index("d", d)
    dim = d + 1
    e = [[0] * dim for _ in range(dim)]
    f = [[0] * dim for _ in range(dim)]
    for k in range(1, dim):
        e[k - 1][k] = k * (d - k + 1)
        f[k][k - 1] = 1
    return (
        ExactMatrix.from_rows(e, dim),
        ExactMatrix.from_rows(f, dim),
        ExactMatrix.diagonal([d - 2 * k for k in range(dim)]),
    )
