"""Seeded random Grassmann elements and supermatrices with small exact coefficients."""

from __future__ import annotations

import random
from fractions import Fraction

from .scalars import CycloScalar, GrassmannElement, GrassmannMatrix, SuperMatrix


def random_scalar(rng: random.Random, cyclotomic: bool = True, bound: int = 3) -> CycloScalar:
    if not cyclotomic:
        return CycloScalar.coerce(Fraction(rng.randint(-bound, bound), rng.randint(1, bound)))
    return CycloScalar([Fraction(rng.randint(-bound, bound), rng.randint(1, bound)) for _ in range(4)])


def random_element(rng: random.Random, gens: int, parity: int | None = None, density: float = 0.5,
                   cyclotomic: bool = True) -> GrassmannElement:
    """Random element; ``parity`` restricts to even (0) or odd (1) monomials."""
    terms = {}
    for mask in range(1 << gens):
        deg = bin(mask).count("1")
        if parity is not None and deg % 2 != parity:
            continue
        if mask == 0 or rng.random() < density:
            terms[mask] = random_scalar(rng, cyclotomic)
    return GrassmannElement(gens, terms)


def random_even_supermatrix(rng: random.Random, p: int, q: int, gens: int, invertible: bool = True,
                            cyclotomic: bool = True) -> SuperMatrix:
    """Even (p|q) supermatrix: even entries on the diagonal blocks, odd entries off them.

    With ``invertible=True`` resamples until both diagonal block bodies are invertible.
    """
    while True:
        rows = []
        for i in range(p + q):
            row = []
            for j in range(p + q):
                par = int((i >= p) != (j >= p))
                e = random_element(rng, gens, par, cyclotomic=cyclotomic)
                if par == 1 and 0 in e.terms:
                    e = GrassmannElement(gens, {k: v for k, v in e.terms.items() if k})
                row.append(e)
            rows.append(row)
        M = SuperMatrix((p, q), rows, gens)
        if not invertible or _blocks_invertible(M):
            return M


def _blocks_invertible(M: SuperMatrix) -> bool:
    from .linalg import rank

    a, _, _, b = M.body().blocks()
    return all(blk.rows == 0 or rank(blk.body_scalars()) == blk.rows for blk in (a, b))


def random_odd_matrix(rng: random.Random, rows: int, cols: int, gens: int) -> GrassmannMatrix:
    return GrassmannMatrix([[random_element(rng, gens, 1, cyclotomic=False) for _ in range(cols)]
                            for _ in range(rows)], gens)
