"""One test per acceptance criterion, each with its tolerance and time budget.

Every test prints a ``[criterion N] PASS|FAIL`` line (shown by ``-rA``).
"""

from __future__ import annotations

import itertools
import random
import time
from fractions import Fraction
from math import factorial

import numpy as np
import pytest

from superhc import ospgeo
from superhc.enveloping import basis_index, contravariant_matrix, pbw_monomials
from superhc.rootdata import (Weight, build_root_system, coroot_pairing, enumerate_admissible,
                              is_admissible, rho_vector)
from superhc.sampling import random_even_supermatrix
from superhc.scalars import GrassmannMatrix, berezinian, supertranspose
from superhc.weights import (cone_weights, in_cone, irreducibility_criterion, partition_table,
                             spectrum_table, super_kostant_partition, torus_spectrum_mult)

MN_SET = [(1, 1), (2, 1), (3, 1), (4, 1), (3, 2), (5, 2)]


class Clock:
    def __init__(self, limit: float):
        self.limit = limit

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0
        return False


def verdict(n: int, ok: bool, clock: Clock, detail: str = "") -> None:
    in_time = clock.elapsed < clock.limit
    status = "PASS" if ok and in_time else "FAIL"
    print(f"[criterion {n}] {status} ({clock.elapsed:.2f}s / {clock.limit:.0f}s) {detail}")
    assert ok, detail
    assert in_time, f"took {clock.elapsed:.2f}s, budget {clock.limit}s"


def test_criterion_01_osp_dimension():
    with Clock(1) as c:
        got = {mn: ospgeo.osp_lie_basis(ospgeo.make_context(*mn))[1] for mn in MN_SET}
    want = {(m, n): (m * (m - 1) // 2 + 2 * n * n + n, 2 * m * n) for m, n in MN_SET}
    verdict(1, got == want, c, f"dims {got}")


def test_criterion_02_super_jacobi():
    with Clock(30) as c:
        worst = {mn: int(np.abs(ospgeo.jacobi_residual(*mn)).max()) for mn in MN_SET}
    verdict(2, all(v == 0 for v in worst.values()), c, f"max |residual| {worst}")


def test_criterion_03_berezinian_and_supertranspose():
    rng = random.Random(20260301)
    bad = []
    with Clock(30) as c:
        for t in range(100):
            A = random_even_supermatrix(rng, 2, 2, 4)
            B = random_even_supermatrix(rng, 2, 2, 4)
            if berezinian(A @ B) != berezinian(A) * berezinian(B):
                bad.append((t, "ber"))
            if supertranspose(A @ B) != supertranspose(B) @ supertranspose(A):
                bad.append((t, "st"))
    verdict(3, not bad, c, f"100 pairs, failures {bad}")


def test_criterion_04_admissible_counts():
    cases = {("B", 0, 1): 2, ("A", 2, 1): 2, ("B", 1, 1): 4}
    with Clock(10) as c:
        got = {key: len(enumerate_admissible(build_root_system(*key))) for key in cases}
    verdict(4, got == cases, c, f"counts {got} (osp(1|2), sl(2|1), osp(3|2))")


def test_criterion_05_lemma_system_admissible():
    results = {}
    with Clock(1) as c:
        for key in [("B", 1, 1), ("B", 2, 1), ("B", 2, 2), ("D", 2, 1)]:
            rep = is_admissible(build_root_system(*key))
            results[key] = (rep.admissible, rep.literal_bullet_holds)
    ok = all(adm for adm, _ in results.values())
    bullet = {build_root_system(*k).name: lit for k, (_, lit) in results.items()}
    verdict(5, ok, c, f"definition checks pass; literal bullet 'a+b in P_k' holds: {bullet}")


def test_criterion_06_pbw_counts_equal_partitions():
    mismatches = []
    checked = 0
    with Clock(60) as c:
        for key in [("B", 0, 1), ("B", 1, 1)]:
            rs = build_root_system(*key)
            basis = basis_index(rs)
            roots = tuple(sorted(rs.positive, key=lambda r: (rs.height(r), r)))
            for dd in range(7):
                for d in cone_weights(rs, dd):
                    pbw = len(pbw_monomials(basis, -d, "minus"))
                    part = super_kostant_partition(d, roots, rs)
                    checked += 1
                    if pbw != part:
                        mismatches.append((rs.name, str(d), pbw, part))
    verdict(6, not mismatches, c, f"{checked} weights, mismatches {mismatches}")


def test_criterion_07_sl2_shapovalov():
    rs = build_root_system("A", 2, 0)
    alpha = rs.simple[0]
    cs = [Fraction(x) for x in (-3, Fraction(-1, 2), 0, Fraction(1, 3), 1, Fraction(3, 2), 2, 3, 4, Fraction(7, 2))]
    problems = []
    first_drops = {}
    with Clock(10) as c:
        for cval in cs:
            # lambda with lambda(H) = c: (c/2, -c/2) in gl(2) coordinates
            lam = Weight((cval / 2, -cval / 2), ())
            assert coroot_pairing(lam, alpha) == cval
            drop = None
            for k in range(1, 6):
                pm = contravariant_matrix(lam, alpha.weight * k, rs)
                closed = factorial(k)
                for j in range(k):
                    closed *= cval - j
                if abs(pm.det()) != abs(closed):
                    problems.append((cval, k, pm.det(), closed))
                if drop is None and pm.rank() < pm.size:
                    drop = k
            first_drops[str(cval)] = drop
            expected = int(cval) + 1 if cval.denominator == 1 and 0 <= cval < 5 else None
            if drop != expected:
                problems.append((cval, "first drop", drop, expected))
    verdict(7, not problems, c, f"first rank drop depth per c: {first_drops}; problems {problems}")


def _criterion8_system(key):
    """Default system if it admits strict weights, else the first Hermitian admissible system."""
    rs = build_root_system(*key)
    for pos in [rs.positive] + enumerate_admissible(rs):
        r2 = rs.with_positive(pos)
        k, n = r2.zero_weight().ranks
        grid = [Weight.from_coords(k, cc) for cc in itertools.product(range(-8, 9), repeat=k + n)]
        strict = [w for w in grid if irreducibility_criterion(w, r2)]
        if strict:
            return r2, grid, strict
    raise AssertionError("no admissible system admits strict weights")


def _drops(lam, rs, depth=4):
    out = []
    for dd in range(1, depth + 1):
        for d in cone_weights(rs, dd):
            pm = contravariant_matrix(lam, d, rs)
            if pm.size and pm.rank() < pm.size:
                out.append(dd)
                break
    return out


def test_criterion_08_theorem_consistency():
    rng = random.Random(8)
    log = []
    ok = True
    with Clock(300) as c:
        for key in [("B", 0, 1), ("B", 1, 1)]:
            rs, grid, strict = _criterion8_system(key)
            rho = rho_vector(rs)
            log.append(f"{rs.name} positive system with simple roots {[str(r) for r in rs.simple]}")
            for lam in rng.sample(strict, 5):
                d = _drops(lam, rs)
                ok &= not d
                log.append(f"{rs.name} strict {lam}: drops {d}")
            iso = [g for g in rs.P_n if g.is_isotropic]
            zero = [w for w in grid if any(coroot_pairing(w + rho, g) == 0 for g in iso)]
            if not iso:
                log.append(f"{rs.name}: no isotropic roots, zero-case vacuous")
            for lam in rng.sample(zero, min(5, len(zero))):
                d = _drops(lam, rs)
                ok &= bool(d)
                log.append(f"{rs.name} isotropic-zero {lam}: drops at depths {d}")
    for line in log:
        print("   ", line)
    verdict(8, ok, c, "strict weights full rank, isotropic zeros drop rank")


def test_criterion_09_cayley_round_trip():
    rng = random.Random(9)
    bad = []
    with Clock(60) as c:
        for t in range(50):
            m, n = rng.choice([(1, 1), (2, 1), (3, 1), (1, 2), (2, 2)])
            p = ospgeo.random_disc_point(rng, m, n, 2)
            img = ospgeo.cayley_transform(p)
            if not (img.satisfies_constraint() and img.is_siegel()):
                bad.append((t, "image"))
            if ospgeo.cayley_inverse(img) != p:
                bad.append((t, "round trip"))
    verdict(9, not bad, c, f"50 disc points, failures {bad}")


def test_criterion_10_stabilizer():
    rng = random.Random(10)
    bad = []
    with Clock(10) as c:
        for t in range(20):
            m, n = rng.choice([(1, 1), (2, 1), (3, 1), (2, 2), (3, 2)])
            k = ospgeo.random_K_r(rng, m, n)
            assert ospgeo.is_member(k)
            o = ospgeo.ChartPoint(GrassmannMatrix.identity(n, 0).scale(ospgeo.I), GrassmannMatrix.zeros(m, n, 0))
            if ospgeo.fractional_action(k, o) != o:
                bad.append(t)
    verdict(10, not bad, c, f"20 K_r elements, failures {bad}")


def test_criterion_11_complex_structure():
    bad = []
    with Clock(30) as c:
        for m, n in [(3, 1), (2, 1)]:
            ctx = ospgeo.make_context(m, n)
            P = ospgeo.p_D_basis(ctx)
            J = ospgeo.complex_structure_J
            for Y in P:
                if J(J(Y, ctx), ctx) != Y.scale(-1):
                    bad.append((m, n, "J^2"))
            for X in ospgeo.k_D_basis(ctx):
                for Y in P:
                    py = 0 if Y.parity_tag == "even" else 1
                    lhs = J(ospgeo.bracket(X, Y, 0, py), ctx)
                    rhs = ospgeo.bracket(X, J(Y, ctx), 0, py)
                    if lhs != rhs:
                        bad.append((m, n, "commute"))
    verdict(11, not bad, c, f"failures {bad}")


def test_criterion_12_hc_closure():
    bad = []
    with Clock(30) as c:
        for m, n in [(3, 1), (3, 2)]:
            ctx = ospgeo.make_context(m, n)
            basis, dims = ospgeo.osp_lie_basis(ctx)
            par = [0 if X.parity_tag == "even" else 1 for X in basis]
            parts = {"k": [], "p+": [], "p-": []}
            for X, p in zip(basis, par):
                comp = dict(zip(("k", "p+", "p-"), ospgeo.hc_split(X, ctx)))
                nonzero = [name for name, Y in comp.items() if not Y.is_zero()]
                assert len(nonzero) == 1
                parts[nonzero[0]].append((X, p))
            if sum(len(v) for v in parts.values()) != sum(dims):
                bad.append((m, n, "dimension"))

            def inside(Z, name):
                k, pp, pm = ospgeo.hc_split(Z, ctx)
                keep = {"k": k, "p+": pp, "p-": pm}
                return all(Y.is_zero() for nm, Y in keep.items() if nm != name)

            for name in ("p+", "p-"):
                for (X, px), (Y, py) in itertools.product(parts[name], repeat=2):
                    if not inside(ospgeo.bracket(X, Y, px, py), name):
                        bad.append((m, n, f"[{name},{name}]"))
                for (X, px), (Y, py) in itertools.product(parts["k"], parts[name]):
                    if not inside(ospgeo.bracket(X, Y, px, py), name):
                        bad.append((m, n, f"[k,{name}]"))
    verdict(12, not bad, c, f"failures {bad[:5]}")


def test_criterion_13_torus_spectrum():
    rs = build_root_system("B", 1, 1)
    lam = Weight((Fraction(1),), (Fraction(-2),))
    with Clock(10) as c:
        spec = spectrum_table(lam, rs, 5)
        part = partition_table(rs, 5)
        same = {d + lam: m for d, m in spec.entries.items()} == part.entries
        # off the cone: shifts by negative simple roots and non-lattice points
        off = [-s.weight for s in rs.simple] + [Weight((Fraction(1, 2),), (Fraction(0),))]
        off += [d - rs.simple[0].weight * 6 for d in cone_weights(rs, 2)]
        zeros = all(torus_spectrum_mult(lam, d, rs) == 0 for d in off if not in_cone(rs, d))
    verdict(13, same and zeros, c, f"{len(part.entries)} cone weights to depth 5")
