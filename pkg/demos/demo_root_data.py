"""
Root data and admissible systems
================================

Root systems of osp(m|2n) and sl(m|n) in the epsilon/delta basis, their
compact and noncompact roots, and the positive systems that split p into
two k-stable halves.
"""

from superhc.rootdata import build_root_system, enumerate_admissible, is_admissible, rho_vector

###############################################################################
# osp(3|2) with its default positive system.  Every even root is noncompact
# under this split, so k reduces to the Cartan subalgebra.

rs = build_root_system("B", 1, 1)
print(rs.name, "dimension", rs.dimension)
print("simple roots:", [str(r) for r in rs.simple])
print("rho:", rho_vector(rs))
for r in rs.positive_sorted:
    tag = "compact" if r in rs.compact else "noncompact"
    print(f"  {str(r):10s} {'odd' if r.is_odd else 'even'} {tag}")

###############################################################################
# The definition-level admissibility checks pass.  The stronger bullet
# "alpha + beta in P_k" for two noncompact roots does not: e1 + (d1 - e1) = d1
# is itself noncompact.

rep = is_admissible(rs)
print("admissible:", rep.admissible, "  literal bullet holds:", rep.literal_bullet_holds)
print("first failure:", [str(r) for r in rep.literal_bullet_failures[0]])

###############################################################################
# Counting admissible systems.  The Hermitian enumeration uses the central
# elements of the noncompact simple factors of g_0; the exhaustive scan walks
# all positive systems.

for key in [("B", 0, 1), ("A", 2, 1), ("B", 1, 1), ("C", 1, 1)]:
    r = build_root_system(*key)
    h = enumerate_admissible(r)
    e = enumerate_admissible(r, mode="exhaustive")
    print(f"{r.name:10s} hermitian {len(h)}  exhaustive {len(e)}")
