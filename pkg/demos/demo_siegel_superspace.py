"""
The orthosymplectic Siegel superspace
=====================================

Osp(m|2n) T-points, the Lagrangian chart, the super Cayley transform and
the complex structure on p_D, all in exact arithmetic over Q(zeta_8).
"""

import random

from superhc import ospgeo
from superhc.scalars import GrassmannMatrix, I

rng = random.Random(1)
m, n = 2, 1
ctx = ospgeo.make_context(m, n)

###############################################################################
# The Cayley matrix L is orthosymplectic once sqrt(2i) is taken to be 1 + i.

print("L in Osp:", ospgeo.is_member(ctx.L, ctx))
print("osp dimension:", ospgeo.osp_lie_basis(ctx)[1])

###############################################################################
# A random real T-point g with three odd generators, and its chart
# representative.  The chart coordinates satisfy zeta^t zeta + z^t - z = 0.

g = ospgeo.random_member(rng, m, n, 3)
sol = ospgeo.lagrangian_normalize(g)
print("constraint holds:", sol.point.satisfies_constraint())
print("stabilizer part has the P shape:", sol.stabilizer_part == sol.p_form())

###############################################################################
# Cayley transform of a random disc point, and back.

p = ospgeo.random_disc_point(rng, m, n, 2)
s = ospgeo.cayley_transform(p)
print("image is Siegel:", s.is_siegel(), "  round trip exact:", ospgeo.cayley_inverse(s) == p)

###############################################################################
# A body element of K_r fixes the base point (iI, 0).

k = ospgeo.random_K_r(rng, m, n)
base = ospgeo.ChartPoint(GrassmannMatrix.identity(n, 0).scale(I), GrassmannMatrix.zeros(m, n, 0))
print("K_r fixes (iI, 0):", ospgeo.fractional_action(k, base) == base)

###############################################################################
# J = ad(c) on even and ad(2c) on odd elements squares to -1 on p_D.

ok = all(ospgeo.complex_structure_J(ospgeo.complex_structure_J(Y, ctx), ctx) == Y.scale(-1)
         for Y in ospgeo.p_D_basis(ctx))
print("J^2 = -1 on p_D:", ok)
