"""The orthosymplectic supergroup Osp(m|2n) on T-points and its Siegel superspace.

Matrices are written in blocks ``[[a, alpha1, alpha2], [beta1, b11, b12],
[beta2, b21, b22]]`` with ``a`` of size m and the ``b_ij`` of size n; the
form is ``J = [[I_m, 0, 0], [0, 0, -I_n], [0, I_n, 0]]``.

Conventions fixed here (see the README for the reasoning):

* the Cayley matrix ``L`` uses ``s = 1 + i`` (``s**2 = 2i``), which is the
  value that makes ``L`` orthosymplectic;
* the conjugation defining ``Osp_D = L^-1 Osp(m|2n, R) L`` is
  ``h -> F conj(h) F^-1`` with ``F = L^-1 conj(L)``.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Sequence

import numpy as np

from . import linalg
from .rootdata import bracket
from .scalars import (I, ONE, ZERO, CycloScalar, GrassmannElement, GrassmannMatrix,
                      SuperMatrix, supertranspose)

S_CAYLEY = ONE + I  # the square root of 2i used in L


# --------------------------------------------------------------------------
# block helpers


def _zeros(r: int, c: int) -> list[list[CycloScalar]]:
    return [[ZERO] * c for _ in range(r)]


def _eye(k: int, scale: Any = ONE) -> list[list[CycloScalar]]:
    s = CycloScalar.coerce(scale)
    return [[s if i == j else ZERO for j in range(k)] for i in range(k)]


def assemble(m: int, n: int, blocks: dict[str, Any], gens: int = 0) -> SuperMatrix:
    """Build an (m|2n) supermatrix from named blocks; missing blocks are zero.

    Block names: a, alpha1, alpha2, beta1, b11, b12, beta2, b21, b22.
    Values may be GrassmannMatrix or nested lists.
    """
    sizes = {"a": (m, m), "alpha1": (m, n), "alpha2": (m, n), "beta1": (n, m), "b11": (n, n),
             "b12": (n, n), "beta2": (n, m), "b21": (n, n), "b22": (n, n)}
    offs = {"a": (0, 0), "alpha1": (0, m), "alpha2": (0, m + n), "beta1": (m, 0), "b11": (m, m),
            "b12": (m, m + n), "beta2": (m + n, 0), "b21": (m + n, m), "b22": (m + n, m + n)}
    d = m + 2 * n
    rows = [[GrassmannElement(gens) for _ in range(d)] for _ in range(d)]
    for name, val in blocks.items():
        if val is None:
            continue
        r, c = sizes[name]
        mat = val if isinstance(val, GrassmannMatrix) else GrassmannMatrix(val, gens)
        if (mat.rows, mat.cols) != (r, c) and r and c:
            raise ValueError(f"block {name} must be {r}x{c}, got {mat.rows}x{mat.cols}")
        r0, c0 = offs[name]
        for i in range(r):
            for j in range(c):
                e = mat.entries[i][j]
                rows[r0 + i][c0 + j] = GrassmannElement(gens, e.terms)
    return SuperMatrix((m, 2 * n), rows, gens)


def split_blocks(A: SuperMatrix) -> dict[str, GrassmannMatrix]:
    m, q = A.shape
    if q % 2:
        raise ValueError("odd block size must be even (2n)")
    n = q // 2
    s = A.submatrix
    e, f, g = m, m + n, m + 2 * n
    return {"a": s(0, e, 0, e), "alpha1": s(0, e, e, f), "alpha2": s(0, e, f, g),
            "beta1": s(e, f, 0, e), "b11": s(e, f, e, f), "b12": s(e, f, f, g),
            "beta2": s(f, g, 0, e), "b21": s(f, g, e, f), "b22": s(f, g, f, g)}


def _lift(M: SuperMatrix | GrassmannMatrix, gens: int):
    return M if M.gens == gens else M.with_gens(gens)


def numeric(m: int, n: int, rows: Sequence[Sequence[Any]]) -> SuperMatrix:
    return SuperMatrix((m, 2 * n), [[CycloScalar.coerce(x) for x in r] for r in rows], 0)


# --------------------------------------------------------------------------
# context


@dataclass(frozen=True)
class OspContext:
    m: int
    n: int
    J: SuperMatrix
    L: SuperMatrix
    L_inv: SuperMatrix
    F: SuperMatrix
    F_inv: SuperMatrix
    c: SuperMatrix

    @property
    def shape(self) -> tuple[int, int]:
        return (self.m, 2 * self.n)

    @property
    def dim(self) -> int:
        return self.m + 2 * self.n


@lru_cache(maxsize=None)
def make_context(m: int, n: int) -> OspContext:
    if m < 0 or n < 0 or m + n == 0:
        raise ValueError("need m, n >= 0 and not both zero")
    J = assemble(m, n, {"a": _eye(m), "b12": _eye(n, -1), "b21": _eye(n)})
    inv_s = ONE / S_CAYLEY
    L = assemble(m, n, {"a": _eye(m), "b11": _eye(n, I * inv_s), "b12": _eye(n, I * inv_s),
                        "b21": _eye(n, -inv_s), "b22": _eye(n, inv_s)})
    L_inv = L.inverse()
    F = L_inv @ L.conjugate()
    F_inv = F.inverse()
    c = assemble(m, n, {"b11": _eye(n, I / 2), "b22": _eye(n, -I / 2)})
    return OspContext(m, n, J, L, L_inv, F, F_inv, c)


def context_for(A: SuperMatrix) -> OspContext:
    m, q = A.shape
    return make_context(m, q // 2)


# --------------------------------------------------------------------------
# group membership


@dataclass
class MembershipReport:
    member: bool
    residual: SuperMatrix
    block_residuals: dict[str, GrassmannMatrix]
    agree: bool

    def __bool__(self) -> bool:
        return self.member

    def to_json(self) -> dict:
        def nz(M):
            return [[i, j, e.to_json()] for i, j, e in M.nonzero_entries()]

        return {"member": self.member, "agree": self.agree, "residual": nz(self.residual),
                "blocks": {k: nz(v) for k, v in sorted(self.block_residuals.items())}}


def sp_eq_residuals(A: SuperMatrix) -> dict[str, GrassmannMatrix]:
    """The six block relations of A^t J A = J written in terms of the blocks of A."""
    b = split_blocks(A)
    g = A.gens
    m, n = b["a"].rows, b["b11"].rows
    a, al1, al2 = b["a"], b["alpha1"], b["alpha2"]
    be1, be2 = b["beta1"], b["beta2"]
    b11, b12, b21, b22 = b["b11"], b["b12"], b["b21"], b["b22"]
    Im, In = GrassmannMatrix.identity(m, g), GrassmannMatrix.identity(n, g)
    return {
        "a_a": a.T @ a + be2.T @ be1 - be1.T @ be2 - Im,
        "alpha2_alpha2": al2.T @ al2 + b12.T @ b22 - b22.T @ b12,
        "a_alpha1": a.T @ al1 + be2.T @ b11 - be1.T @ b21,
        "a_alpha2": a.T @ al2 + be2.T @ b12 - be1.T @ b22,
        "alpha1_alpha1": al1.T @ al1 + b11.T @ b21 - b21.T @ b11,
        "alpha1_alpha2": al1.T @ al2 + b11.T @ b22 - b21.T @ b12 - In,
    }


def osp_membership(A: SuperMatrix, ctx: OspContext | None = None) -> MembershipReport:
    ctx = ctx or context_for(A)
    if A.shape != ctx.shape:
        raise ValueError(f"shape {A.shape} does not match {ctx.shape}")
    if A.parity_tag != "even":
        raise ValueError("Osp membership needs an even supermatrix")
    J = _lift(ctx.J, A.gens)
    res = supertranspose(A) @ J @ A - J
    blocks = sp_eq_residuals(A)
    full = res.is_zero()
    rel = all(v.is_zero() for v in blocks.values())
    return MembershipReport(full and rel, res, blocks, full == rel)


def is_member(A: SuperMatrix, ctx: OspContext | None = None) -> bool:
    return osp_membership(A, ctx).member


def real_form_membership(A: SuperMatrix, which: str = "real", ctx: OspContext | None = None) -> bool:
    """Fixed points of entrywise conjugation (``real``) or of h -> F conj(h) F^-1 (``D``)."""
    ctx = ctx or context_for(A)
    if not is_member(A, ctx):
        raise ValueError("matrix is not in Osp")
    if which == "real":
        return A.conjugate() == A
    if which == "D":
        F, Fi = _lift(ctx.F, A.gens), _lift(ctx.F_inv, A.gens)
        return F @ A.conjugate() @ Fi == A
    raise ValueError(f"unknown real form {which!r}")


def to_D_form(h: SuperMatrix, ctx: OspContext | None = None) -> SuperMatrix:
    """L^-1 h L."""
    ctx = ctx or context_for(h)
    return _lift(ctx.L_inv, h.gens) @ h @ _lift(ctx.L, h.gens)


# --------------------------------------------------------------------------
# Lie superalgebra


def supertranspose_any(X: SuperMatrix) -> SuperMatrix:
    """Supertranspose of a numeric matrix, applied to its even and odd parts alike."""
    a, al, be, b = X.blocks()
    return SuperMatrix.from_blocks(a.T, be.T, -al.T, b.T, X.gens)


def parity_parts(X: SuperMatrix) -> tuple[SuperMatrix, SuperMatrix]:
    """(block-diagonal part, off-diagonal part) of a numeric matrix."""
    a, al, be, b = X.blocks()
    p, q = X.shape
    g = X.gens
    z = GrassmannMatrix.zeros
    even = SuperMatrix.from_blocks(a, z(p, q, g), z(q, p, g), b, g)
    odd = SuperMatrix.from_blocks(z(p, p, g), al, be, z(q, q, g), g)
    return even, odd


def lie_membership(X: SuperMatrix, ctx: OspContext | None = None) -> bool:
    """X^t J + J X = 0, tested on the even and odd parts separately."""
    ctx = ctx or context_for(X)
    J = _lift(ctx.J, X.gens)
    for part in parity_parts(X):
        if not (supertranspose_any(part) @ J + J @ part).is_zero():
            return False
    return True


@dataclass(frozen=True)
class LieBasisElement:
    name: str
    parity: int
    matrix: SuperMatrix


def _unit(m: int, n: int, entries: dict[tuple[int, int], int]) -> SuperMatrix:
    d = m + 2 * n
    rows = _zeros(d, d)
    for (i, j), v in entries.items():
        rows[i][j] = CycloScalar.coerce(v)
    return SuperMatrix((m, 2 * n), rows, 0)


@lru_cache(maxsize=None)
def _shape_basis(m: int, n: int) -> tuple[LieBasisElement, ...]:
    out = []
    e, f = m, m + n
    for i in range(m):
        for j in range(i + 1, m):
            out.append(LieBasisElement(f"a[{i},{j}]", 0, _unit(m, n, {(i, j): 1, (j, i): -1})))
    for i in range(n):
        for j in range(n):
            out.append(LieBasisElement(f"b11[{i},{j}]", 0, _unit(m, n, {(e + i, e + j): 1, (f + j, f + i): -1})))
    for i in range(n):
        for j in range(i, n):
            ent = {(e + i, f + j): 1, (e + j, f + i): 1} if i != j else {(e + i, f + i): 1}
            out.append(LieBasisElement(f"b12[{i},{j}]", 0, _unit(m, n, ent)))
    for i in range(n):
        for j in range(i, n):
            ent = {(f + i, e + j): 1, (f + j, e + i): 1} if i != j else {(f + i, e + i): 1}
            out.append(LieBasisElement(f"b21[{i},{j}]", 0, _unit(m, n, ent)))
    for i in range(m):
        for j in range(n):
            # alpha1 with beta2 = -alpha1^t
            out.append(LieBasisElement(f"alpha1[{i},{j}]", 1, _unit(m, n, {(i, e + j): 1, (f + j, i): -1})))
    for i in range(m):
        for j in range(n):
            # alpha2 with beta1 = alpha2^t
            out.append(LieBasisElement(f"alpha2[{i},{j}]", 1, _unit(m, n, {(i, f + j): 1, (e + j, i): 1})))
    return tuple(out)


def osp_lie_basis(ctx: OspContext) -> tuple[list[SuperMatrix], tuple[int, int]]:
    """Basis of the displayed shape a^t = -a, b12, b21 symmetric, b22 = -b11^t."""
    basis = _shape_basis(ctx.m, ctx.n)
    dims = (sum(1 for b in basis if b.parity == 0), sum(1 for b in basis if b.parity == 1))
    return [b.matrix for b in basis], dims


def osp_dimension(m: int, n: int) -> tuple[int, int]:
    return (m * (m - 1) // 2 + 2 * n * n + n, 2 * m * n)


def lie_coordinates(X: SuperMatrix, ctx: OspContext) -> list[CycloScalar]:
    """Coordinates of an osp element in :func:`osp_lie_basis` (read off the shape entries)."""
    m, n = ctx.m, ctx.n
    e, f = m, m + n
    E = X.entries
    coords = []
    for b in _shape_basis(m, n):
        name, idx = b.name.split("[")
        i, j = (int(t) for t in idx.rstrip("]").split(","))
        pos = {"a": (i, j), "b11": (e + i, e + j), "b12": (e + i, f + j), "b21": (f + i, e + j),
               "alpha1": (i, e + j), "alpha2": (i, f + j)}[name]
        coords.append(E[pos[0]][pos[1]].body)
    return coords


@lru_cache(maxsize=None)
def integer_structure_constants(m: int, n: int) -> tuple[np.ndarray, np.ndarray]:
    """(C, parities) with [e_a, e_b] = sum_c C[a, b, c] e_c over the shape basis."""
    basis = _shape_basis(m, n)
    d = m + 2 * n
    dim = len(basis)
    mats = np.zeros((dim, d, d), dtype=np.int64)
    for k, b in enumerate(basis):
        for i, j, v in b.matrix.nonzero_entries():
            mats[k, i, j] = int(v.body.to_fraction())
    par = np.array([b.parity for b in basis], dtype=np.int64)
    # coordinate readout positions
    e, f = m, m + n
    pos = []
    for b in basis:
        name, idx = b.name.split("[")
        i, j = (int(t) for t in idx.rstrip("]").split(","))
        pos.append({"a": (i, j), "b11": (e + i, e + j), "b12": (e + i, f + j), "b21": (f + i, e + j),
                    "alpha1": (i, e + j), "alpha2": (i, f + j)}[name])
    rows = np.array([p[0] for p in pos])
    cols = np.array([p[1] for p in pos])
    C = np.zeros((dim, dim, dim), dtype=np.int64)
    for a in range(dim):
        for b in range(dim):
            sign = -1 if par[a] and par[b] else 1
            br = mats[a] @ mats[b] - sign * (mats[b] @ mats[a])
            coords = br[rows, cols]
            recon = np.tensordot(coords, mats, axes=1)
            if not np.array_equal(recon, br):
                raise AssertionError(f"bracket of {basis[a].name}, {basis[b].name} left the algebra")
            C[a, b] = coords
    return C, par


def jacobi_residual(m: int, n: int) -> np.ndarray:
    """Cyclic super Jacobi sum on all basis triples; exactly zero for a Lie superalgebra.

    R[x, y, z] = (-1)^{|x||z|}[x,[y,z]] + (-1)^{|y||x|}[y,[z,x]] + (-1)^{|z||y|}[z,[x,y]].
    """
    return jacobi_residual_from(*integer_structure_constants(m, n))


def jacobi_residual_from(C: np.ndarray, p: np.ndarray) -> np.ndarray:
    """Cyclic super Jacobi sum for an arbitrary structure-constant table C[a, b, c]."""
    # T[x, y, z, :] = [x, [y, z]]
    T = np.einsum("yzc,xcd->xyzd", C, C, optimize=True)
    sxz = (-1) ** np.outer(p, p)
    t1 = T * sxz[:, None, :, None]                           # (-1)^{|x||z|}[x,[y,z]]
    t2 = np.transpose(T, (2, 0, 1, 3)) * sxz[:, :, None, None]  # [y,[z,x]] at (x,y,z), sign |y||x|
    t3 = np.transpose(T, (1, 2, 0, 3)) * sxz[None, :, :, None]  # [z,[x,y]] at (x,y,z), sign |z||y|
    return t1 + t2 + t3


# --------------------------------------------------------------------------
# Cartan decomposition of osp_D


def _conj(X: SuperMatrix) -> SuperMatrix:
    return X.conjugate()


def theta(X: SuperMatrix) -> SuperMatrix:
    """-conj(X)^t on even elements, -i conj(X)^t on odd elements."""
    tag = X.parity_tag
    if tag == "mixed":
        raise ValueError("theta needs a homogeneous element")
    t = supertranspose_any(_conj(X))
    return t.scale(-1) if tag == "even" else t.scale(-I)


def in_osp_D(X: SuperMatrix, ctx: OspContext) -> bool:
    """X in osp and F conj(X) F^-1 = X."""
    return lie_membership(X, ctx) and ctx.F @ _conj(X) @ ctx.F_inv == X


def osp_D_basis(ctx: OspContext) -> list[SuperMatrix]:
    """Real basis {L^-1 X L} over the rational shape basis."""
    basis, _ = osp_lie_basis(ctx)
    return [ctx.L_inv @ X @ ctx.L for X in basis]


def k_D_element(ctx: OspContext, x: Any, y11: Any) -> SuperMatrix:
    """diag(x, y11, conj(y11)) with x real antisymmetric, y11 anti-Hermitian."""
    y = GrassmannMatrix(y11, 0)
    return assemble(ctx.m, ctx.n, {"a": x, "b11": y, "b22": y.conjugate()})


def p_D_even_element(ctx: OspContext, y12: Any) -> SuperMatrix:
    y = GrassmannMatrix(y12, 0)
    return assemble(ctx.m, ctx.n, {"b12": y, "b21": y.conjugate()})


def p_D_odd_element(ctx: OspContext, xi: Any) -> SuperMatrix:
    """[[0, xi, i conj(xi)], [i conj(xi)^t, 0, 0], [-xi^t, 0, 0]]: the odd part of osp_D for F = L^-1 conj(L)."""
    x = GrassmannMatrix(xi, 0)
    xb = x.conjugate()
    return assemble(ctx.m, ctx.n, {"alpha1": x, "alpha2": xb.scale(I), "beta1": xb.T.scale(I),
                                   "beta2": x.T.scale(-1)})


def _units(r: int, c: int) -> list[list[list[CycloScalar]]]:
    out = []
    for i in range(r):
        for j in range(c):
            u = _zeros(r, c)
            u[i][j] = ONE
            out.append(u)
    return out


def _sym_units(n: int) -> list[list[list[CycloScalar]]]:
    out = []
    for i in range(n):
        for j in range(i, n):
            u = _zeros(n, n)
            u[i][j] = ONE
            u[j][i] = ONE
            out.append(u)
    return out


def _scaled(u, c):
    return [[x * c for x in row] for row in u]


def k_D_basis(ctx: OspContext) -> list[SuperMatrix]:
    m, n = ctx.m, ctx.n
    out = []
    for i in range(m):
        for j in range(i + 1, m):
            x = _zeros(m, m)
            x[i][j], x[j][i] = ONE, -ONE
            out.append(k_D_element(ctx, x, _zeros(n, n)))
    for i in range(n):
        for j in range(i, n):
            y = _zeros(n, n)
            y[i][j] = I
            y[j][i] = I
            out.append(k_D_element(ctx, _zeros(m, m), y))
            if i != j:
                y = _zeros(n, n)
                y[i][j], y[j][i] = ONE, -ONE
                out.append(k_D_element(ctx, _zeros(m, m), y))
    return out


def p_D_basis(ctx: OspContext) -> list[SuperMatrix]:
    out = []
    for s in _sym_units(ctx.n):
        out.append(p_D_even_element(ctx, s))
        out.append(p_D_even_element(ctx, _scaled(s, I)))
    for u in _units(ctx.m, ctx.n):
        out.append(p_D_odd_element(ctx, u))
        out.append(p_D_odd_element(ctx, _scaled(u, I)))
    return out


def cartan_split(X: SuperMatrix, ctx: OspContext | None = None) -> tuple[SuperMatrix, SuperMatrix]:
    """(k_D part, p_D part): even part split by theta = +-1, odd part all in p_D."""
    ctx = ctx or context_for(X)
    if not in_osp_D(X, ctx):
        raise ValueError("element is not in osp_D")
    even, odd = parity_parts(X)
    th = theta(even)
    k = (even + th).scale(Fraction(1, 2))
    p = (even - th).scale(Fraction(1, 2)) + odd
    return k, p


def complex_structure_J(X: SuperMatrix, ctx: OspContext | None = None) -> SuperMatrix:
    """[c, X] on even X, [2c, X] on odd X."""
    ctx = ctx or context_for(X)
    tag = X.parity_tag
    if tag == "mixed":
        raise ValueError("complex structure is applied to homogeneous elements")
    c = ctx.c if tag == "even" else ctx.c.scale(2)
    return bracket(c, X, 0, 0 if tag == "even" else 1)


# --------------------------------------------------------------------------
# Harish-Chandra decomposition


def hc_split(X: SuperMatrix, ctx: OspContext | None = None) -> tuple[SuperMatrix, SuperMatrix, SuperMatrix]:
    """Block projections onto k = diag(a, b11, b22), p+ = (alpha2, beta1, b12), p- = (alpha1, beta2, b21)."""
    ctx = ctx or context_for(X)
    b = split_blocks(X)
    m, n, g = ctx.m, ctx.n, X.gens
    k = assemble(m, n, {"a": b["a"], "b11": b["b11"], "b22": b["b22"]}, g)
    pp = assemble(m, n, {"alpha2": b["alpha2"], "beta1": b["beta1"], "b12": b["b12"]}, g)
    pm = assemble(m, n, {"alpha1": b["alpha1"], "beta2": b["beta2"], "b21": b["b21"]}, g)
    return k, pp, pm


def p_plus_element(ctx: OspContext, xi: GrassmannMatrix, u: GrassmannMatrix, gens: int) -> SuperMatrix:
    """[[1, 0, xi], [xi^t, 1, u], [0, 0, 1]]; requires xi^t xi + u^t - u = 0."""
    if not (xi.T @ xi + u.T - u).is_zero():
        raise ValueError("P+ constraint xi^t xi + u^t - u = 0 violated")
    m, n = ctx.m, ctx.n
    return assemble(m, n, {"a": GrassmannMatrix.identity(m, gens), "alpha2": xi, "beta1": xi.T,
                           "b11": GrassmannMatrix.identity(n, gens), "b12": u,
                           "b22": GrassmannMatrix.identity(n, gens)}, gens)


def p_minus_element(ctx: OspContext, eta: GrassmannMatrix, v: GrassmannMatrix, gens: int) -> SuperMatrix:
    """[[1, -eta, 0], [0, 1, 0], [eta^t, v, 1]]; requires eta^t eta + v - v^t = 0."""
    check_p_minus(eta, v)
    m, n = ctx.m, ctx.n
    return assemble(m, n, {"a": GrassmannMatrix.identity(m, gens), "alpha1": eta.scale(-1), "beta2": eta.T,
                           "b11": GrassmannMatrix.identity(n, gens), "b21": v,
                           "b22": GrassmannMatrix.identity(n, gens)}, gens)


def check_p_minus(eta: GrassmannMatrix, v: GrassmannMatrix) -> None:
    if not (eta.T @ eta + v - v.T).is_zero():
        raise ValueError("P- constraint eta^t eta + v - v^t = 0 violated")


def p_minus_mul(a: tuple[GrassmannMatrix, GrassmannMatrix],
                b: tuple[GrassmannMatrix, GrassmannMatrix]) -> tuple[GrassmannMatrix, GrassmannMatrix]:
    """(eta, v)(eta', v') = (eta + eta', v + v' - eta^t eta')."""
    (eta, v), (eta2, v2) = a, b
    check_p_minus(eta, v)
    check_p_minus(eta2, v2)
    return eta + eta2, v + v2 - eta.T @ eta2


# --------------------------------------------------------------------------
# charts


@dataclass
class ChartPoint:
    """A point (z, zeta) of the Lagrangian chart with z n x n even and zeta m x n odd."""

    z: GrassmannMatrix
    zeta: GrassmannMatrix
    chart: str = "siegel"

    def __post_init__(self):
        if self.chart not in ("siegel", "disc", "lagrangian"):
            raise ValueError(f"unknown chart tag {self.chart!r}")
        if self.z.gens != self.zeta.gens:
            raise ValueError("z and zeta must share the generator count")

    @property
    def gens(self) -> int:
        return self.z.gens

    @property
    def n(self) -> int:
        return self.z.rows

    @property
    def m(self) -> int:
        return self.zeta.rows

    def constraint_residual(self) -> GrassmannMatrix:
        return self.zeta.T @ self.zeta + self.z.T - self.z

    def satisfies_constraint(self) -> bool:
        return self.constraint_residual().is_zero()

    def matrix(self) -> SuperMatrix:
        """[[1, zeta, 0], [zeta^t, z, -1], [0, 1, 0]]."""
        m, n, g = self.m, self.n, self.gens
        return assemble(m, n, {"a": GrassmannMatrix.identity(m, g), "alpha1": self.zeta, "beta1": self.zeta.T,
                               "b11": self.z, "b12": GrassmannMatrix.identity(n, g).scale(-1),
                               "b21": GrassmannMatrix.identity(n, g)}, g)

    def matrix_inverse(self) -> SuperMatrix:
        """[[1, 0, -zeta], [0, 0, 1], [zeta^t, -1, z - zeta^t zeta]]."""
        m, n, g = self.m, self.n, self.gens
        return assemble(m, n, {"a": GrassmannMatrix.identity(m, g), "alpha2": self.zeta.scale(-1),
                               "b12": GrassmannMatrix.identity(n, g), "beta2": self.zeta.T,
                               "b21": GrassmannMatrix.identity(n, g).scale(-1),
                               "b22": self.z - self.zeta.T @ self.zeta}, g)

    def is_siegel(self) -> bool:
        return siegel_positive(self.z)

    def is_disc(self) -> bool:
        return disc_positive(self.z)

    def validate(self) -> None:
        if not self.satisfies_constraint():
            raise ValueError("constraint zeta^t zeta + z^t - z = 0 fails")
        if self.chart == "siegel" and not self.is_siegel():
            raise ValueError("Im(body z) is not positive definite")
        if self.chart == "disc" and not self.is_disc():
            raise ValueError("1 - z conj(z) is not positive definite on the body")

    def __eq__(self, other) -> bool:
        return isinstance(other, ChartPoint) and self.z == other.z and self.zeta == other.zeta

    def to_json(self) -> dict:
        return {"chart": self.chart, "z": self.z.to_json(), "zeta": self.zeta.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> ChartPoint:
        return cls(GrassmannMatrix.from_json(data["z"]), GrassmannMatrix.from_json(data["zeta"]),
                   data.get("chart", "siegel"))


def _leading_minors_positive(rows: list[list[CycloScalar]]) -> bool:
    k = len(rows)
    for r in range(1, k + 1):
        sub = [row[:r] for row in rows[:r]]
        d = linalg.det(sub) if r else ONE
        d = CycloScalar.coerce(d)
        if not d.is_rational() or d.to_fraction() <= 0:
            return False
    return True


def siegel_positive(z: GrassmannMatrix) -> bool:
    """body(Im z) positive definite, by leading principal minors."""
    body = z.body_scalars()
    im = [[(x - x.conjugate()) / (2 * I) for x in row] for row in body]
    if any(not x.is_rational() for row in im for x in row):
        return False
    return _leading_minors_positive(im)


def disc_positive(z: GrassmannMatrix) -> bool:
    """1 - body(z) conj(body(z)) positive definite (Hermitian minors)."""
    body = z.body_scalars()
    n = len(body)
    zb = [[x.conjugate() for x in row] for row in body]
    h = [[(ONE if i == j else ZERO) - sum((body[i][k] * zb[k][j] for k in range(n)), ZERO)
          for j in range(n)] for i in range(n)]
    return _leading_minors_positive(h)


def lagrangian_point(g: SuperMatrix, chart: str = "lagrangian") -> ChartPoint:
    """(z, zeta) = (b11 b21^-1, alpha1 b21^-1): the class gP read from the middle block column."""
    b = split_blocks(g)
    if not b["b21"].rows:
        raise ValueError("n = 0 has no Lagrangian chart")
    body = b["b21"].body_scalars()
    if linalg.rank(body) < len(body):
        raise ValueError("b21 is singular on the body: outside the chart")
    r = b["b21"].inverse()
    return ChartPoint(b["b11"] @ r, b["alpha1"] @ r, chart)


@dataclass
class LagrangianSolution:
    point: ChartPoint
    u: GrassmannMatrix
    xi: GrassmannMatrix
    v: GrassmannMatrix
    w: GrassmannMatrix
    normalized: SuperMatrix
    stabilizer_part: SuperMatrix

    def p_form(self) -> SuperMatrix:
        """[[u, 0, xi], [v xi^t u, v, w], [0, 0, (v^t)^-1]]."""
        m, n = self.point.m, self.point.n
        g = self.point.gens
        return assemble(m, n, {"a": self.u, "alpha2": self.xi, "beta1": self.v @ self.xi.T @ self.u,
                               "b11": self.v, "b12": self.w, "b22": self.v.T.inverse()}, g)


def lagrangian_normalize(g: SuperMatrix, ctx: OspContext | None = None, chart: str = "lagrangian") -> LagrangianSolution:
    """Chart representative of gP: right-normalize b21 to 1, then read off z, zeta, u, xi, v, w."""
    ctx = ctx or context_for(g)
    if not is_member(g, ctx):
        raise ValueError("g is not in Osp")
    b = split_blocks(g)
    gens = g.gens
    m, n = ctx.m, ctx.n
    body = b["b21"].body_scalars()
    if linalg.rank(body) < len(body):
        raise ValueError("b21 is singular on the body: outside the chart")
    r = b["b21"].inverse()
    # right multiplication by diag(1, r, (r^t)^-1) in P makes b21 = 1
    p0 = assemble(m, n, {"a": GrassmannMatrix.identity(m, gens), "b11": r, "b22": b["b21"].T}, gens)
    gn = g @ p0
    bn = split_blocks(gn)
    point = ChartPoint(bn["b11"], bn["alpha1"], chart)
    u = bn["a"] - bn["alpha1"] @ bn["beta2"]
    xi = bn["alpha2"] - bn["alpha1"] @ bn["b22"]
    v = GrassmannMatrix.identity(n, gens)
    w = bn["b22"]
    stab = point.matrix_inverse() @ gn
    return LagrangianSolution(point, u, xi, v, w, gn, stab)


def fractional_action(g: SuperMatrix, p: ChartPoint, chart: str | None = None) -> ChartPoint:
    """z' = (beta1 zeta + b11 z + b12) D^-1, zeta' = (a zeta + alpha1 z + alpha2) D^-1,
    D = beta2 zeta + b21 z + b22."""
    gens = max(g.gens, p.gens)
    g = _lift(g, gens)
    z, zeta = _lift(p.z, gens), _lift(p.zeta, gens)
    b = split_blocks(g)
    den = b["beta2"] @ zeta + b["b21"] @ z + b["b22"]
    body = den.body_scalars()
    if linalg.rank(body) < len(body):
        raise ZeroDivisionError("denominator is singular on the body")
    di = den.inverse()
    z2 = (b["beta1"] @ zeta + b["b11"] @ z + b["b12"]) @ di
    zeta2 = (b["a"] @ zeta + b["alpha1"] @ z + b["alpha2"]) @ di
    return ChartPoint(z2, zeta2, chart or p.chart)


def cayley_transform(p: ChartPoint, ctx: OspContext | None = None) -> ChartPoint:
    """Disc -> Siegel: z' = i(z + 1)(1 - z)^-1, zeta' = s zeta (1 - z)^-1 with s = 1 + i."""
    ctx = ctx or make_context(p.m, p.n)
    one = GrassmannMatrix.identity(p.n, p.gens)
    if linalg.rank((one - p.z).body_scalars()) < p.n:
        raise ZeroDivisionError("1 - z is singular on the body")
    return fractional_action(ctx.L, p, "siegel")


def cayley_formula(p: ChartPoint) -> ChartPoint:
    """The closed-form expression of the Cayley transform, for cross-checks."""
    one = GrassmannMatrix.identity(p.n, p.gens)
    inv = (one - p.z).inverse()
    return ChartPoint((p.z + one).scale(I) @ inv, p.zeta.scale(S_CAYLEY) @ inv, "siegel")


def cayley_inverse(p: ChartPoint, ctx: OspContext | None = None) -> ChartPoint:
    """Siegel -> disc, the fractional action of L^-1."""
    ctx = ctx or make_context(p.m, p.n)
    return fractional_action(ctx.L_inv, p, "disc")


# --------------------------------------------------------------------------
# sampling


def _rat(rng: random.Random, lo: int = -3, hi: int = 3, den: int = 4) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, den))


def random_odd_matrix(rng: random.Random, rows: int, cols: int, gens: int, density: float = 0.7) -> GrassmannMatrix:
    ent = []
    for _ in range(rows):
        row = []
        for _ in range(cols):
            terms = {}
            for i in range(gens):
                if rng.random() < density:
                    c = _rat(rng)
                    if c:
                        terms[1 << i] = CycloScalar.coerce(c)
            if gens >= 3 and rng.random() < 0.3:
                c = _rat(rng)
                if c:
                    terms[0b111] = CycloScalar.coerce(c)
            row.append(GrassmannElement(gens, terms))
        ent.append(row)
    return GrassmannMatrix(ent, gens)


def random_even_nilpotent_symmetric(rng: random.Random, n: int, gens: int, complex_: bool = False) -> GrassmannMatrix:
    rows = [[GrassmannElement(gens) for _ in range(n)] for _ in range(n)]
    if gens < 2:
        return GrassmannMatrix(rows, gens)
    for i in range(n):
        for j in range(i, n):
            c = CycloScalar.coerce(_rat(rng))
            if complex_:
                c = c + I * _rat(rng)
            e = GrassmannElement(gens, {0b11: c} if c else {})
            rows[i][j] = e
            rows[j][i] = e
    return GrassmannMatrix(rows, gens)


def _half_gram(x: GrassmannMatrix) -> GrassmannMatrix:
    return (x.T @ x).scale(Fraction(1, 2))


def random_disc_point(rng: random.Random, m: int, n: int, gens: int = 2) -> ChartPoint:
    """z = S + N + eta^t eta / 2 with S complex symmetric, small, and N nilpotent symmetric."""
    while True:
        S = _zeros(n, n)
        for i in range(n):
            for j in range(i, n):
                v = CycloScalar.coerce(Fraction(rng.randint(-3, 3), 4 * n + rng.randint(0, 4))) + \
                    I * Fraction(rng.randint(-3, 3), 4 * n + rng.randint(0, 4))
                S[i][j] = v
                S[j][i] = v
        z0 = GrassmannMatrix(S, gens)
        if disc_positive(z0):
            break
    eta = random_odd_matrix(rng, m, n, gens)
    z = z0 + random_even_nilpotent_symmetric(rng, n, gens, True) + _half_gram(eta)
    p = ChartPoint(z, eta, "disc")
    return p


def random_rational_orthogonal(rng: random.Random, m: int) -> list[list[Fraction]]:
    """Cayley parametrization (I - A)(I + A)^-1 of a random antisymmetric A, with random signs."""
    A = [[Fraction(0)] * m for _ in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            v = _rat(rng)
            A[i][j], A[j][i] = v, -v
    Id = [[Fraction(int(i == j)) for j in range(m)] for i in range(m)]
    minus = [[Id[i][j] - A[i][j] for j in range(m)] for i in range(m)]
    plus = [[Id[i][j] + A[i][j] for j in range(m)] for i in range(m)]
    inv = linalg.inverse(plus) if m else []
    Q = [[sum((minus[i][k] * inv[k][j] for k in range(m)), Fraction(0)) for j in range(m)] for i in range(m)]
    if m and rng.random() < 0.5:
        Q[0] = [-x for x in Q[0]]
    return Q


def random_unitary(rng: random.Random, n: int) -> list[list[CycloScalar]]:
    """(I - iH)(I + iH)^-1 for a random Hermitian H with Gaussian-rational entries."""
    H = _zeros(n, n)
    for i in range(n):
        H[i][i] = CycloScalar.coerce(_rat(rng))
        for j in range(i + 1, n):
            v = CycloScalar.coerce(_rat(rng)) + I * _rat(rng)
            H[i][j] = v
            H[j][i] = v.conjugate()
    minus = [[(ONE if i == j else ZERO) - I * H[i][j] for j in range(n)] for i in range(n)]
    plus = [[(ONE if i == j else ZERO) + I * H[i][j] for j in range(n)] for i in range(n)]
    inv = linalg.inverse(plus, ONE, ZERO)
    return [[sum((minus[i][k] * inv[k][j] for k in range(n)), ZERO) for j in range(n)] for i in range(n)]


def _re(x: CycloScalar) -> CycloScalar:
    return (x + x.conjugate()) / 2


def _im(x: CycloScalar) -> CycloScalar:
    return (x - x.conjugate()) / (2 * I)


def random_K_r(rng: random.Random, m: int, n: int) -> SuperMatrix:
    """[[a, 0, 0], [0, b11, b12], [0, -b12, b11]] with a in O(m), b11 + i b12 in U(n)."""
    a = random_rational_orthogonal(rng, m)
    U = random_unitary(rng, n)
    b11 = [[_re(x) for x in row] for row in U]
    b12 = [[_im(x) for x in row] for row in U]
    mb12 = [[-x for x in row] for row in b12]
    return assemble(m, n, {"a": a, "b11": b11, "b12": b12, "b21": mb12, "b22": b11})


def random_K_D(rng: random.Random, m: int, n: int) -> SuperMatrix:
    """diag(a0, b11, conj(b11)) with a0 in O(m), b11 unitary."""
    a = random_rational_orthogonal(rng, m)
    U = random_unitary(rng, n)
    Ub = [[x.conjugate() for x in row] for row in U]
    return assemble(m, n, {"a": a, "b11": U, "b22": Ub})


def random_symplectic_body(rng: random.Random, n: int, steps: int = 2) -> list[list[Fraction]]:
    """Product of shears [[I, S], [0, I]] and [[I, 0], [S, I]] with S rational symmetric."""
    d = 2 * n
    M = [[Fraction(int(i == j)) for j in range(d)] for i in range(d)]
    for step in range(steps):
        S = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                S[i][j] = S[j][i] = _rat(rng)
        sh = [[Fraction(int(i == j)) for j in range(d)] for i in range(d)]
        for i in range(n):
            for j in range(n):
                if step % 2 == 0:
                    sh[i][n + j] = S[i][j]
                else:
                    sh[n + i][j] = S[i][j]
        M = [[sum((M[i][k] * sh[k][j] for k in range(d)), Fraction(0)) for j in range(d)] for i in range(d)]
    return M


def random_body_member(rng: random.Random, m: int, n: int) -> SuperMatrix:
    a = random_rational_orthogonal(rng, m)
    sp = random_symplectic_body(rng, n)
    sub = lambda r0, c0: [row[c0:c0 + n] for row in sp[r0:r0 + n]]
    return assemble(m, n, {"a": a, "b11": sub(0, 0), "b12": sub(0, n), "b21": sub(n, 0), "b22": sub(n, n)})


def random_member(rng: random.Random, m: int, n: int, gens: int = 4, real: bool = True) -> SuperMatrix:
    """A random element of Osp(m|2n)(T): body member times P+ and P- factors.

    With ``real=True`` all coefficients are rational, so the result lies in
    Osp(m|2n, R).
    """
    ctx = make_context(m, n)
    g = random_body_member(rng, m, n).with_gens(gens)
    xi = random_odd_matrix(rng, m, n, gens)
    u = GrassmannMatrix([[GrassmannElement(gens, {0: CycloScalar.coerce(x)} if x else {}) for x in row]
                         for row in _sym_rows(rng, n)], gens) + random_even_nilpotent_symmetric(rng, n, gens) + \
        _half_gram(xi)
    eta = random_odd_matrix(rng, m, n, gens)
    v = GrassmannMatrix([[GrassmannElement(gens, {0: CycloScalar.coerce(x)} if x else {}) for x in row]
                         for row in _sym_rows(rng, n)], gens) + random_even_nilpotent_symmetric(rng, n, gens) - \
        _half_gram(eta)
    out = g @ p_plus_element(ctx, xi, u, gens) @ p_minus_element(ctx, eta, v, gens)
    if not real:
        out = out @ random_K_D(rng, m, n).with_gens(gens)
    return out


def _sym_rows(rng: random.Random, n: int) -> list[list[Fraction]]:
    S = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            S[i][j] = S[j][i] = _rat(rng)
    return S


def random_siegel_point(rng: random.Random, m: int, n: int, gens: int = 2) -> ChartPoint:
    return cayley_transform(random_disc_point(rng, m, n, gens))


def dumps(obj: Any) -> str:
    return json.dumps(obj.to_json(), sort_keys=True)
