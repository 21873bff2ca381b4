"""
Grassmann numbers and the Berezinian
====================================

A short tour of exact super linear algebra: odd generators, even
supermatrices, and the superdeterminant.
"""

import random

from superhc.sampling import random_even_supermatrix
from superhc.scalars import GrassmannElement, SuperMatrix, berezinian, supertranspose

###############################################################################
# Two odd generators anticommute, so each one squares to zero.

t1 = GrassmannElement.generator(1, 2)
t2 = GrassmannElement.generator(2, 2)
print("t1*t2 =", t1 * t2, "   t2*t1 =", t2 * t1)
print("t1*t1 =", t1 * t1)

###############################################################################
# An even 1|1 supermatrix with odd off-diagonal entries.  Its Berezinian is
# (a - alpha b^-1 beta) / b, here 2 - t1 t2.

M = SuperMatrix((1, 1), [[2, t1], [t2, 1]], 2)
print("Ber(M) =", berezinian(M))

###############################################################################
# Multiplicativity on random 2|2 matrices with four generators, and the
# supertranspose reversing products.

rng = random.Random(0)
A = random_even_supermatrix(rng, 2, 2, 4)
B = random_even_supermatrix(rng, 2, 2, 4)
print("Ber(AB) == Ber(A)Ber(B):", berezinian(A @ B) == berezinian(A) * berezinian(B))
print("(AB)^st == B^st A^st:   ", supertranspose(A @ B) == supertranspose(B) @ supertranspose(A))

###############################################################################
# The supertranspose has order four: applying it twice flips the sign of the
# odd blocks.

a, al, be, b = A.blocks()
twice = supertranspose(supertranspose(A))
print("st^2 negates odd blocks:", twice == SuperMatrix.from_blocks(a, -al, -be, b, 4))
