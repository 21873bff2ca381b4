from __future__ import annotations

import cmath
import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from superhc.sampling import random_element, random_even_supermatrix
from superhc.scalars import (I, ONE, SQRT2, SQRT_2I, ZERO, ZETA, CycloScalar, GrassmannElement,
                             GrassmannMatrix, SuperMatrix, berezinian, dumps, supermatrix_inverse,
                             supertranspose)


def as_complex(x: CycloScalar) -> complex:
    """Embedding z -> exp(i pi / 4), used as an independent floating-point oracle."""
    z = cmath.exp(1j * cmath.pi / 4)
    return sum(float(c) * z ** k for k, c in enumerate(x.coeffs))


fracs = st.fractions(min_value=-5, max_value=5, max_denominator=6)
cyclo = st.lists(fracs, min_size=4, max_size=4).map(CycloScalar)


class TestCyclo:
    def test_constants(self):
        assert ZETA ** 8 == ONE
        assert I * I == -ONE
        assert SQRT2 * SQRT2 == 2
        assert SQRT_2I * SQRT_2I == 2 * I

    def test_embedding_matches_complex(self):
        assert abs(as_complex(SQRT2) - 2 ** 0.5) < 1e-12
        assert abs(as_complex(I) - 1j) < 1e-12

    @given(cyclo, cyclo)
    def test_field_ops_match_complex(self, a, b):
        assert abs(as_complex(a * b) - as_complex(a) * as_complex(b)) < 1e-9
        assert abs(as_complex(a + b) - (as_complex(a) + as_complex(b))) < 1e-9
        assert abs(as_complex(a.conjugate()) - as_complex(a).conjugate()) < 1e-9

    @given(cyclo)
    def test_inverse(self, a):
        if a:
            assert a * a.inverse() == ONE

    def test_zero_inverse_raises(self):
        with pytest.raises(ZeroDivisionError):
            ZERO.inverse()

    @given(cyclo)
    def test_json_round_trip(self, a):
        assert CycloScalar.from_json(json.loads(json.dumps(a.to_json()))) == a

    def test_bad_length(self):
        with pytest.raises(ValueError):
            CycloScalar([1, 2, 3])


def theta(i, n=4):
    return GrassmannElement.generator(i, n)


class TestGrassmann:
    def test_anticommute_and_square(self):
        t1, t2 = theta(1), theta(2)
        assert t1 * t2 == -(t2 * t1)
        assert (t1 * t1).is_zero()

    def test_parity(self):
        assert theta(1).parity == 1
        assert (theta(1) * theta(2)).parity == 0
        assert (theta(1) + GrassmannElement.one(4)).parity is None

    def test_inverse_of_unit(self):
        x = GrassmannElement.scalar(3, 4) + theta(1) * theta(2) + theta(3) * theta(4)
        assert x * x.inverse() == GrassmannElement.one(4)

    def test_nilpotent_not_invertible(self):
        with pytest.raises(ZeroDivisionError):
            (theta(1) * theta(2)).inverse()

    def test_conjugation_fixes_generators(self):
        x = theta(1) * I
        assert x.conjugate() == theta(1) * (-I)

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 10 ** 6))
    def test_associative_and_supercommutative(self, seed):
        rng = random.Random(seed)
        a, b, c = (random_element(rng, 4, p) for p in (0, 1, 1))
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a
        assert b * c == -(c * b)


class TestSuperMatrix:
    def test_berezinian_hand_value(self):
        # [[2, t1], [t2, 1]]: Ber = 2 - t1 t2
        M = SuperMatrix((1, 1), [[2, theta(1, 2)], [theta(2, 2), 1]], 2)
        assert berezinian(M) == GrassmannElement.scalar(2, 2) - theta(1, 2) * theta(2, 2)

    def test_berezinian_of_body_diagonal(self):
        M = SuperMatrix((2, 1), [[2, 1, 0], [0, 3, 0], [0, 0, 5]], 0)
        assert berezinian(M).body == CycloScalar.coerce(Fraction(6, 5))

    def test_parity_tags(self):
        assert SuperMatrix((1, 1), [[1, 0], [0, 1]], 0).parity_tag == "even"
        assert SuperMatrix((1, 1), [[0, 1], [1, 0]], 0).parity_tag == "odd"
        assert SuperMatrix((1, 1), [[1, 1], [1, 0]], 0).parity_tag == "mixed"

    def test_supertranspose_rejects_mixed(self):
        with pytest.raises(ValueError):
            supertranspose(SuperMatrix((1, 1), [[1, 1], [0, 1]], 0))

    def test_supertranspose_order_four(self):
        rng = random.Random(4)
        A = random_even_supermatrix(rng, 2, 1, 3)
        st2 = supertranspose(supertranspose(A))
        a, al, be, b = A.blocks()
        assert st2 == SuperMatrix.from_blocks(a, -al, -be, b, A.gens)
        assert supertranspose(supertranspose(st2)) == A

    @settings(max_examples=15, deadline=None)
    @given(st.integers(0, 10 ** 6))
    def test_berezinian_multiplicative_1_1(self, seed):
        rng = random.Random(seed)
        A = random_even_supermatrix(rng, 1, 1, 4)
        B = random_even_supermatrix(rng, 1, 1, 4)
        assert berezinian(A @ B) == berezinian(A) * berezinian(B)

    def test_inverse(self):
        rng = random.Random(5)
        A = random_even_supermatrix(rng, 2, 2, 4)
        assert A @ supermatrix_inverse(A) == SuperMatrix.identity((2, 2), 4)

    def test_singular_block(self):
        M = SuperMatrix((1, 1), [[0, 0], [0, 1]], 0)
        with pytest.raises(ZeroDivisionError):
            berezinian(M)

    def test_json_round_trip(self):
        rng = random.Random(6)
        A = random_even_supermatrix(rng, 2, 1, 3)
        assert SuperMatrix.from_json(json.loads(dumps(A))) == A
        assert dumps(A) == dumps(SuperMatrix.from_json(A.to_json()))

    def test_ragged_rejected(self):
        with pytest.raises(ValueError):
            GrassmannMatrix([[1, 2], [3]], 0)
