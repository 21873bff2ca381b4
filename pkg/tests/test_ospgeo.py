from __future__ import annotations

import json
import random
from fractions import Fraction

import numpy as np
import pytest

from superhc import ospgeo as og
from superhc.rootdata import bracket
from superhc.scalars import I, ONE, GrassmannElement, GrassmannMatrix, SuperMatrix, berezinian

SHAPES = [(1, 1), (2, 1), (3, 1), (2, 2)]


def odd_gm(rng, r, c, gens=2):
    return og.random_odd_matrix(rng, r, c, gens)


class TestContext:
    def test_J_display(self):
        ctx = og.make_context(1, 1)
        assert ctx.J == SuperMatrix((1, 2), [[1, 0, 0], [0, 0, -1], [0, 1, 0]], 0)

    @pytest.mark.parametrize("m,n", SHAPES)
    def test_L_is_member(self, m, n):
        ctx = og.make_context(m, n)
        assert og.is_member(ctx.L, ctx)
        assert og.is_member(SuperMatrix.identity(ctx.shape), ctx)

    def test_F_value(self):
        # L^-1 conj(L) = diag(1, [[0, -i], [-i, 0]]) with s = 1 + i
        ctx = og.make_context(1, 1)
        assert ctx.F == SuperMatrix((1, 2), [[1, 0, 0], [0, 0, -I], [0, -I, 0]], 0)

    def test_L_with_paper_root_is_not_member(self):
        # with sqrt(2i) replaced by exp(i pi/4) the symplectic determinant is 2
        from superhc.scalars import ZETA
        inv = ONE / ZETA
        bad = og.assemble(1, 1, {"a": [[1]], "b11": [[I * inv]], "b12": [[I * inv]],
                                 "b21": [[-inv]], "b22": [[inv]]})
        assert not og.is_member(bad)


class TestMembership:
    @pytest.mark.parametrize("m,n", SHAPES)
    def test_random_agreement(self, m, n):
        rng = random.Random(100 + m * 10 + n)
        ctx = og.make_context(m, n)
        for t in range(25):
            g = og.random_member(rng, m, n, 3)
            if t % 2:
                e = [list(r) for r in g.entries]
                i, j = rng.randrange(m + 2 * n), rng.randrange(m + 2 * n)
                par = int((i >= m) != (j >= m))
                bump = GrassmannElement.scalar(Fraction(1, 3), 3) if not par else GrassmannElement.generator(1, 3)
                e[i][j] = e[i][j] + bump
                g = SuperMatrix(g.shape, e, 3)
            rep = og.osp_membership(g, ctx)
            assert rep.agree
            assert rep.member == (t % 2 == 0)

    def test_closure_and_berezinian(self):
        rng = random.Random(7)
        for m, n in SHAPES:
            g, h = og.random_member(rng, m, n, 4), og.random_member(rng, m, n, 4)
            assert og.is_member(g @ h) and og.is_member(g.inverse())
            b = berezinian(g)
            assert b * b == GrassmannElement.one(4)

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            og.osp_membership(SuperMatrix.identity((2, 2)), og.make_context(1, 1))

    def test_real_forms(self):
        rng = random.Random(8)
        ctx = og.make_context(2, 1)
        h = og.random_member(rng, 2, 1, 2)
        assert og.real_form_membership(h, "real", ctx)
        assert og.real_form_membership(og.to_D_form(h, ctx), "D", ctx)
        assert og.real_form_membership(og.random_K_D(rng, 2, 1), "D", ctx)
        assert not og.real_form_membership(ctx.L, "real", ctx)
        with pytest.raises(ValueError):
            og.real_form_membership(SuperMatrix.identity((2, 2)).scale(2), "real", ctx)


class TestLie:
    def test_basis_members_and_symmetric_a_rejected(self):
        ctx = og.make_context(3, 1)
        basis, dims = og.osp_lie_basis(ctx)
        assert dims == (6, 6)
        assert all(og.lie_membership(X, ctx) for X in basis)
        bad = og.assemble(3, 1, {"a": [[0, 1, 0], [1, 0, 0], [0, 0, 0]]})
        assert not og.lie_membership(bad, ctx)
        assert og.lie_membership(SuperMatrix.zeros(ctx.shape), ctx)

    def test_coordinates_reconstruct(self):
        ctx = og.make_context(2, 2)
        basis, _ = og.osp_lie_basis(ctx)
        rng = random.Random(2)
        coeffs = [Fraction(rng.randint(-3, 3)) for _ in basis]
        X = SuperMatrix.zeros(ctx.shape)
        for c, B in zip(coeffs, basis):
            X = X + B.scale(c)
        assert [c.to_fraction() for c in og.lie_coordinates(X, ctx)] == coeffs

    def test_jacobi_detects_corruption(self):
        C, p = og.integer_structure_constants(2, 1)
        assert not np.any(og.jacobi_residual(2, 1))
        # zeroing one bracket (and its mirror) breaks the identity
        C2 = C.copy()
        a, b = np.argwhere(np.abs(C).sum(axis=2))[0]
        C2[a, b] = 0
        C2[b, a] = 0
        assert np.any(og.jacobi_residual_from(C2, p))


class TestCartan:
    @pytest.mark.parametrize("m,n", [(2, 1), (3, 1), (1, 2)])
    def test_split_displays(self, m, n):
        ctx = og.make_context(m, n)
        for X in og.k_D_basis(ctx):
            k, p = og.cartan_split(X, ctx)
            assert k == X and p.is_zero()
        for X in og.p_D_basis(ctx):
            k, p = og.cartan_split(X, ctx)
            assert k.is_zero() and p == X

    def test_real_basis_dimension(self):
        ctx = og.make_context(3, 1)
        assert len(og.k_D_basis(ctx)) + len(og.p_D_basis(ctx)) == sum(og.osp_dimension(3, 1))
        assert all(og.in_osp_D(X, ctx) for X in og.osp_D_basis(ctx))

    def test_theta_squares(self):
        ctx = og.make_context(2, 1)
        for X in og.osp_D_basis(ctx):
            for part, sign in zip(og.parity_parts(X), (1, -1)):
                if not part.is_zero():
                    assert og.theta(og.theta(part)) == part.scale(sign)

    def test_bracket_relations(self):
        ctx = og.make_context(2, 1)
        K, P = og.k_D_basis(ctx), og.p_D_basis(ctx)
        par = lambda X: 0 if X.parity_tag == "even" else 1

        def parts(Z):
            k, p = og.cartan_split(Z, ctx)
            return (not k.is_zero(), not p.is_zero())

        assert all(not parts(bracket(a, b, 0, 0))[1] for a in K for b in K)
        assert all(not parts(bracket(a, b, 0, par(b)))[0] for a in K for b in P)
        P0 = [X for X in P if par(X) == 0]
        P1 = [X for X in P if par(X) == 1]
        assert all(not parts(bracket(a, b, 0, 0))[1] for a in P0 for b in P0)
        # odd-odd brackets reach p_0 as well: [p, p] c k only on the even part
        assert any(parts(bracket(a, b, 1, 1))[1] for a in P1 for b in P1)

    def test_not_in_osp_D(self):
        ctx = og.make_context(1, 1)
        with pytest.raises(ValueError):
            og.cartan_split(ctx.c.scale(I), ctx)

    def test_J_zero_and_mixed(self):
        ctx = og.make_context(1, 1)
        Z = SuperMatrix.zeros(ctx.shape)
        assert og.complex_structure_J(Z, ctx).is_zero()
        mixed = og.k_D_basis(ctx)[0] + og.p_D_basis(ctx)[-1]
        with pytest.raises(ValueError):
            og.complex_structure_J(mixed, ctx)


class TestHC:
    def test_display_shapes(self):
        ctx = og.make_context(2, 1)
        rng = random.Random(3)
        xi = [[Fraction(rng.randint(1, 4))] for _ in range(2)]
        Xp = og.assemble(2, 1, {"alpha2": xi, "beta1": GrassmannMatrix(xi).T, "b12": [[2]]})
        k, pp, pm = og.hc_split(Xp, ctx)
        assert k.is_zero() and pp == Xp and pm.is_zero()
        eta = GrassmannMatrix(xi)
        Xm = og.assemble(2, 1, {"alpha1": eta.scale(-1), "beta2": eta.T, "b21": [[3]]})
        k, pp, pm = og.hc_split(Xm, ctx)
        assert pm == Xm and k.is_zero() and pp.is_zero()

    def test_p_minus_mul(self):
        rng = random.Random(4)
        ctx = og.make_context(2, 1)
        g = 3
        elems = []
        for _ in range(3):
            eta = odd_gm(rng, 2, 1, g)
            v = og.random_even_nilpotent_symmetric(rng, 1, g) - og._half_gram(eta)
            elems.append((eta, v))
        a, b, c = elems
        zero = (GrassmannMatrix.zeros(2, 1, g), GrassmannMatrix.zeros(1, 1, g))
        assert og.p_minus_mul(a, zero) == a
        ab = og.p_minus_mul(a, b)
        emb = lambda e: og.p_minus_element(ctx, e[0], e[1], g)
        assert emb(ab) == emb(a) @ emb(b)
        assert og.p_minus_mul(ab, c) == og.p_minus_mul(a, og.p_minus_mul(b, c))
        assert og.is_member(emb(ab))

    def test_p_minus_constraint(self):
        # n = 2: eta = [t1, t2] has eta^t eta != 0, so v = 0 violates v - v^t = -eta^t eta
        t = [GrassmannElement.generator(i, 2) for i in (1, 2)]
        eta = GrassmannMatrix([t], 2)
        with pytest.raises(ValueError):
            og.p_minus_mul((eta, GrassmannMatrix.zeros(2, 2, 2)), (eta, GrassmannMatrix.zeros(2, 2, 2)))


class TestCharts:
    def test_normalized_input_returns_itself(self):
        rng = random.Random(5)
        p = og.random_disc_point(rng, 2, 1, 2)
        sol = og.lagrangian_normalize(p.matrix())
        assert sol.point == p
        assert sol.u == GrassmannMatrix.identity(2, 2) - p.zeta @ GrassmannMatrix.zeros(1, 2, 2)

    @pytest.mark.parametrize("m,n", SHAPES)
    def test_lemma_values(self, m, n):
        rng = random.Random(50 + m + n)
        g = og.random_member(rng, m, n, 2)
        sol = og.lagrangian_normalize(g)
        assert sol.point.satisfies_constraint()
        assert sol.stabilizer_part == sol.p_form()
        assert og.is_member(sol.point.matrix())
        assert sol.point.matrix() @ sol.point.matrix_inverse() == SuperMatrix.identity(g.shape, 2)

    def test_outside_chart(self):
        with pytest.raises(ValueError):
            og.lagrangian_normalize(SuperMatrix.identity((1, 2), 0))

    def test_translation(self):
        rng = random.Random(6)
        p = og.random_siegel_point(rng, 1, 1, 2)
        g = og.assemble(1, 1, {"a": [[1]], "b11": [[1]], "b12": [[3]], "b22": [[1]]})
        q = og.fractional_action(g, p)
        assert q.z == p.z + GrassmannMatrix([[3]], 2) and q.zeta == p.zeta
        assert og.fractional_action(SuperMatrix.identity((1, 2)), p) == p

    def test_composition_and_real_action(self):
        rng = random.Random(11)
        for m, n in SHAPES:
            p = og.random_siegel_point(rng, m, n, 2)
            g, h = og.random_member(rng, m, n, 2), og.random_member(rng, m, n, 2)
            lhs = og.fractional_action(g @ h, p)
            assert lhs == og.fractional_action(g, og.fractional_action(h, p))
            assert lhs.satisfies_constraint() and lhs.is_siegel()

    def test_cayley_formula_and_scalar_case(self):
        rng = random.Random(12)
        p = og.random_disc_point(rng, 2, 1, 2)
        assert og.cayley_transform(p) == og.cayley_formula(p)
        r = Fraction(1, 3)
        q = og.ChartPoint(GrassmannMatrix([[r]]), GrassmannMatrix.zeros(1, 1, 0), "disc")
        img = og.cayley_transform(q)
        assert img.z == GrassmannMatrix([[I * ((1 + r) / (1 - r))]])
        origin = og.ChartPoint(GrassmannMatrix([[0]]), GrassmannMatrix.zeros(1, 1, 0), "disc")
        assert og.cayley_transform(origin).z == GrassmannMatrix([[I]])

    def test_cayley_singular(self):
        q = og.ChartPoint(GrassmannMatrix([[1]]), GrassmannMatrix.zeros(1, 1, 0), "disc")
        with pytest.raises(ZeroDivisionError):
            og.cayley_transform(q)

    def test_K_D_fixes_disc_origin(self):
        rng = random.Random(13)
        for m, n in SHAPES:
            k = og.random_K_D(rng, m, n)
            o = og.ChartPoint(GrassmannMatrix.zeros(n, n, 0), GrassmannMatrix.zeros(m, n, 0), "disc")
            assert og.fractional_action(k, o) == o

    def test_validation(self):
        bad = og.ChartPoint(GrassmannMatrix([[-I]]), GrassmannMatrix.zeros(1, 1, 0), "siegel")
        with pytest.raises(ValueError):
            bad.validate()
        with pytest.raises(ValueError):
            og.ChartPoint(GrassmannMatrix([[0]]), GrassmannMatrix.zeros(1, 1, 0), "upper")

    def test_json_round_trip(self):
        rng = random.Random(14)
        p = og.random_siegel_point(rng, 2, 1, 2)
        back = og.ChartPoint.from_json(json.loads(og.dumps(p)))
        assert back == p and back.chart == "siegel"
