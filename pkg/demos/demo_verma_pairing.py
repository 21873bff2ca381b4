"""
Verma modules and the contravariant pairing
===========================================

PBW monomials of U(n^-) are counted by the super Kostant partition function.
The rank of the contravariant pairing on each weight space is the
multiplicity in the irreducible quotient.
"""

from fractions import Fraction
from math import factorial, prod

from superhc.enveloping import contravariant_matrix, rank_table
from superhc.rootdata import Weight, build_root_system, enumerate_admissible
from superhc.weights import partition_table

###############################################################################
# sl(2): the determinant at depth k is k! prod_{j<k} (c - j) up to sign, with
# c = lambda(H).  It vanishes first at depth c + 1 for integral c >= 0.

sl2 = build_root_system("A", 2, 0)
alpha = sl2.simple[0].weight
for c in (Fraction(2), Fraction(5, 2)):
    lam = Weight((c / 2, -c / 2), ())
    dets = [abs(contravariant_matrix(lam, alpha * k, sl2).det()) for k in range(1, 5)]
    closed = [abs(factorial(k) * prod(c - j for j in range(k))) for k in range(1, 5)]
    print(f"c = {c}: |det| {[str(d) for d in dets]}  agrees with closed form: {dets == closed}")

###############################################################################
# Partition counts for osp(3|2) up to depth 4.

rs = build_root_system("B", 1, 1)
print(partition_table(rs, 4).to_tsv())

###############################################################################
# On an admissible system where the strict inequality can hold, a strict
# weight keeps every pairing matrix invertible, while a weight meeting an
# isotropic zero loses rank.

r2 = rs.with_positive(enumerate_admissible(rs)[0])
print("simple roots:", [str(r) for r in r2.simple])
for lam in (Weight((-6,), (-6,)), Weight((5,), (-5,))):
    rows = rank_table(lam, r2, 3)
    drops = sorted({row["depth"] for row in rows if row["rank"] < row["size"]})
    print(f"lambda = {lam}: rank drops at depths {drops or 'none'}")
