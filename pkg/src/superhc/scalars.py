"""Exact scalars, Grassmann algebras and supermatrices.

Three layers:

* :class:`CycloScalar` -- elements of Q(zeta), zeta a primitive 8th root of
  unity.  This field holds ``i = zeta**2`` and ``sqrt(2) = zeta - zeta**3``.
* :class:`GrassmannElement` -- the exterior algebra on ``N`` odd generators
  with CycloScalar coefficients.  A monomial is stored as a bitmask.
* :class:`GrassmannMatrix` / :class:`SuperMatrix` -- matrices over it.  An even
  SuperMatrix of shape ``(p, q)`` is a T-point of GL(p|q).
"""

from __future__ import annotations

import json
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Any, Iterable, Iterator, Sequence, Union

from . import linalg

Rational = Union[int, Fraction]


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


class CycloScalar:
    """``c0 + c1*z + c2*z**2 + c3*z**3`` with ``z**4 = -1``, coefficients rational.

    Stored as four integer numerators over one positive denominator, always
    reduced, so equal values have equal representations.
    """

    __slots__ = ("_n", "_d")

    def __init__(self, coeffs: Iterable[Rational | str] = (0, 0, 0, 0)):
        fr = [Fraction(c) for c in coeffs]
        if len(fr) != 4:
            raise ValueError("CycloScalar needs exactly 4 coefficients")
        d = reduce(_lcm, (f.denominator for f in fr), 1)
        self._set(tuple(int(f * d) for f in fr), d)

    def _set(self, n: tuple[int, ...], d: int) -> None:
        g = reduce(gcd, n, d)
        if g > 1:
            n = tuple(x // g for x in n)
            d //= g
        self._n = n
        self._d = d

    @classmethod
    def _raw(cls, n: tuple[int, ...], d: int) -> CycloScalar:
        obj = cls.__new__(cls)
        obj._set(n, d)
        return obj

    @classmethod
    def coerce(cls, x: Any) -> CycloScalar:
        if isinstance(x, CycloScalar):
            return x
        if isinstance(x, int):
            return cls._raw((x, 0, 0, 0), 1)
        if isinstance(x, Fraction):
            return cls._raw((x.numerator, 0, 0, 0), x.denominator)
        if isinstance(x, str):
            return cls._raw((0, 0, 0, 0), 1) + Fraction(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to CycloScalar")

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self._d) for c in self._n)

    def is_rational(self) -> bool:
        return self._n[1] == self._n[2] == self._n[3] == 0

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self._n[0], self._d)

    def __bool__(self) -> bool:
        return any(self._n)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CycloScalar):
            try:
                other = CycloScalar.coerce(other)
            except TypeError:
                return NotImplemented
        return self._n == other._n and self._d == other._d

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(Fraction(self._n[0], self._d))
        return hash((self._n, self._d))

    def __add__(self, other: Any) -> CycloScalar:
        try:
            o = CycloScalar.coerce(other)
        except TypeError:
            return NotImplemented
        d = _lcm(self._d, o._d)
        a, b = d // self._d, d // o._d
        return CycloScalar._raw(tuple(x * a + y * b for x, y in zip(self._n, o._n)), d)

    __radd__ = __add__

    def __neg__(self) -> CycloScalar:
        return CycloScalar._raw(tuple(-x for x in self._n), self._d)

    def __sub__(self, other: Any) -> CycloScalar:
        try:
            o = CycloScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: Any) -> CycloScalar:
        return CycloScalar.coerce(other) - self

    def __mul__(self, other: Any) -> CycloScalar:
        try:
            o = CycloScalar.coerce(other)
        except TypeError:
            return NotImplemented
        a, b = self._n, o._n
        if a[1] == a[2] == a[3] == 0:
            return CycloScalar._raw(tuple(a[0] * y for y in b), self._d * o._d)
        if b[1] == b[2] == b[3] == 0:
            return CycloScalar._raw(tuple(x * b[0] for x in a), self._d * o._d)
        c = [0, 0, 0, 0]
        for i in range(4):
            if a[i]:
                for j in range(4):
                    if b[j]:
                        k = i + j
                        if k < 4:
                            c[k] += a[i] * b[j]
                        else:
                            c[k - 4] -= a[i] * b[j]
        return CycloScalar._raw(tuple(c), self._d * o._d)

    __rmul__ = __mul__

    def galois(self, k: int) -> CycloScalar:
        """Apply the automorphism ``z -> z**k`` (k odd)."""
        c = [0, 0, 0, 0]
        for j, x in enumerate(self._n):
            e = (j * k) % 8
            if e < 4:
                c[e] += x
            else:
                c[e - 4] -= x
        return CycloScalar._raw(tuple(c), self._d)

    def conjugate(self) -> CycloScalar:
        # z -> z^-1 = -z^3
        n = self._n
        return CycloScalar._raw((n[0], -n[3], -n[2], -n[1]), self._d)

    def norm(self) -> Fraction:
        p = self * self.galois(3) * self.galois(5) * self.galois(7)
        return p.to_fraction()

    def inverse(self) -> CycloScalar:
        if not self:
            raise ZeroDivisionError("inverse of zero CycloScalar")
        if self.is_rational():
            return CycloScalar._raw((self._d, 0, 0, 0), self._n[0]) if self._n[0] > 0 else \
                CycloScalar._raw((-self._d, 0, 0, 0), -self._n[0])
        rest = self.galois(3) * self.galois(5) * self.galois(7)
        return rest * Fraction(1) / self.norm()

    def __truediv__(self, other: Any) -> CycloScalar:
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            if f == 0:
                raise ZeroDivisionError("division by zero")
            return self * Fraction(f.denominator, f.numerator)
        try:
            o = CycloScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: Any) -> CycloScalar:
        return CycloScalar.coerce(other) * self.inverse()

    def __pow__(self, k: int) -> CycloScalar:
        if k < 0:
            return self.inverse() ** (-k)
        out = ONE
        for _ in range(k):
            out = out * self
        return out

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[str]) -> CycloScalar:
        return cls(Fraction(s) for s in data)

    def __repr__(self) -> str:
        return f"CycloScalar({[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        names = ("", "z", "z^2", "z^3")
        parts = []
        for c, nm in zip(self.coeffs, names):
            if c:
                parts.append(f"{c}{'*' + nm if nm else ''}")
        return " + ".join(parts) if parts else "0"


ZERO = CycloScalar._raw((0, 0, 0, 0), 1)
ONE = CycloScalar._raw((1, 0, 0, 0), 1)
ZETA = CycloScalar._raw((0, 1, 0, 0), 1)
I = CycloScalar._raw((0, 0, 1, 0), 1)
SQRT2 = CycloScalar._raw((0, 1, 0, -1), 1)
# principal square root of 2i; (1 + i)**2 = 2i
SQRT_2I = ONE + I


# --------------------------------------------------------------------------
# Grassmann algebra


def _merge_sign(a: int, b: int) -> int:
    """Sign of reordering the generators of ``a`` followed by ``b`` into increasing order."""
    s = 0
    while b:
        low = b & -b
        j = low.bit_length() - 1
        s += (a >> (j + 1)).bit_count()
        b ^= low
    return -1 if s & 1 else 1


def _mask_key(mask: int) -> tuple[int, ...]:
    return tuple(i + 1 for i in range(mask.bit_length()) if mask >> i & 1)


class GrassmannElement:
    """Element of the exterior algebra on ``num_generators`` odd generators.

    ``terms`` maps bitmasks (bit ``i-1`` set for generator ``theta_i``) to
    nonzero :class:`CycloScalar` coefficients.
    """

    __slots__ = ("num_generators", "terms")

    def __init__(self, num_generators: int, terms: dict[int, CycloScalar] | None = None):
        if num_generators < 0:
            raise ValueError("number of generators must be nonnegative")
        self.num_generators = num_generators
        clean: dict[int, CycloScalar] = {}
        if terms:
            limit = 1 << num_generators
            for m, c in terms.items():
                if m >= limit or m < 0:
                    raise ValueError(f"monomial {m} uses a generator beyond {num_generators}")
                c = CycloScalar.coerce(c)
                if c:
                    clean[m] = c
        self.terms = clean

    @classmethod
    def _raw(cls, n: int, terms: dict[int, CycloScalar]) -> GrassmannElement:
        obj = cls.__new__(cls)
        obj.num_generators = n
        obj.terms = terms
        return obj

    @classmethod
    def scalar(cls, c: Any, n: int) -> GrassmannElement:
        c = CycloScalar.coerce(c)
        return cls._raw(n, {0: c} if c else {})

    @classmethod
    def generator(cls, i: int, n: int) -> GrassmannElement:
        if not 1 <= i <= n:
            raise ValueError(f"generator index {i} outside 1..{n}")
        return cls._raw(n, {1 << (i - 1): ONE})

    @classmethod
    def monomial(cls, indices: Sequence[int], n: int, coeff: Any = 1) -> GrassmannElement:
        out = cls.scalar(coeff, n)
        for i in indices:
            out = out * cls.generator(i, n)
        return out

    @classmethod
    def zero(cls, n: int) -> GrassmannElement:
        return cls._raw(n, {})

    @classmethod
    def one(cls, n: int) -> GrassmannElement:
        return cls._raw(n, {0: ONE})

    # -- structure ---------------------------------------------------------
    @property
    def body(self) -> CycloScalar:
        return self.terms.get(0, ZERO)

    def soul(self) -> GrassmannElement:
        return GrassmannElement._raw(self.num_generators, {m: c for m, c in self.terms.items() if m})

    @property
    def parity(self) -> int | None:
        """0 or 1 for homogeneous elements (zero counts as even), None if mixed."""
        ps = {m.bit_count() & 1 for m in self.terms}
        if not ps:
            return 0
        return ps.pop() if len(ps) == 1 else None

    def is_even(self) -> bool:
        return all(m.bit_count() % 2 == 0 for m in self.terms)

    def is_odd(self) -> bool:
        return all(m.bit_count() % 2 == 1 for m in self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_invertible(self) -> bool:
        return bool(self.body)

    def is_scalar(self) -> bool:
        return all(m == 0 for m in self.terms)

    def sorted_terms(self) -> list[tuple[tuple[int, ...], CycloScalar]]:
        return sorted(((_mask_key(m), c) for m, c in self.terms.items()), key=lambda t: t[0])

    # -- arithmetic --------------------------------------------------------
    def _check(self, other: GrassmannElement) -> None:
        if other.num_generators != self.num_generators:
            raise ValueError(
                f"generator count mismatch: {self.num_generators} vs {other.num_generators}")

    def _lift(self, other: Any) -> GrassmannElement | None:
        if isinstance(other, GrassmannElement):
            self._check(other)
            return other
        try:
            return GrassmannElement.scalar(other, self.num_generators)
        except TypeError:
            return None

    def __add__(self, other: Any) -> GrassmannElement:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        t = dict(self.terms)
        for m, c in o.terms.items():
            s = t.get(m)
            s = c if s is None else s + c
            if s:
                t[m] = s
            else:
                t.pop(m, None)
        return GrassmannElement._raw(self.num_generators, t)

    __radd__ = __add__

    def __neg__(self) -> GrassmannElement:
        return GrassmannElement._raw(self.num_generators, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: Any) -> GrassmannElement:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: Any) -> GrassmannElement:
        return (-self) + other

    def __mul__(self, other: Any) -> GrassmannElement:
        if not isinstance(other, GrassmannElement):
            try:
                c = CycloScalar.coerce(other)
            except TypeError:
                return NotImplemented
            if not c:
                return GrassmannElement.zero(self.num_generators)
            return GrassmannElement._raw(self.num_generators,
                                         {m: v * c for m, v in self.terms.items()})
        self._check(other)
        out: dict[int, CycloScalar] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                if ma & mb:
                    continue
                v = ca * cb
                if _merge_sign(ma, mb) < 0:
                    v = -v
                m = ma | mb
                s = out.get(m)
                s = v if s is None else s + v
                if s:
                    out[m] = s
                else:
                    del out[m]
        return GrassmannElement._raw(self.num_generators, out)

    def __rmul__(self, other: Any) -> GrassmannElement:
        # scalars are central
        return self.__mul__(other)

    def __truediv__(self, other: Any) -> GrassmannElement:
        if isinstance(other, GrassmannElement):
            return self * other.inverse()
        return self * (ONE / CycloScalar.coerce(other))

    def inverse(self) -> GrassmannElement:
        """Two-sided inverse ``b^-1 * sum((-s/b)^k)``; the soul series terminates."""
        b = self.body
        if not b:
            raise ZeroDivisionError("Grassmann element with zero body is not invertible")
        binv = b.inverse()
        u = self.soul() * binv
        term = GrassmannElement.one(self.num_generators)
        total = term
        for _ in range(self.num_generators):
            term = term * (-u)
            if term.is_zero():
                break
            total = total + term
        return total * binv

    def conjugate(self) -> GrassmannElement:
        """Conjugate the coefficients; generators are fixed."""
        return GrassmannElement._raw(self.num_generators,
                                     {m: c.conjugate() for m, c in self.terms.items()})

    def __eq__(self, other: object) -> bool:
        if isinstance(other, GrassmannElement):
            return self.num_generators == other.num_generators and self.terms == other.terms
        try:
            c = CycloScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self.terms == ({0: c} if c else {})

    def __hash__(self) -> int:
        return hash((self.num_generators, frozenset(self.terms.items())))

    def to_json(self) -> list:
        return [[list(k), c.to_json()] for k, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, data: Sequence, n: int) -> GrassmannElement:
        out = cls.zero(n)
        for idx, c in data:
            out = out + cls.monomial(idx, n, CycloScalar.from_json(c))
        return out

    def __repr__(self) -> str:
        return f"GrassmannElement({self.num_generators}, {self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for key, c in self.sorted_terms():
            mon = "".join(f"t{i}" for i in key)
            cs = str(c)
            if not mon:
                parts.append(cs)
            elif c == ONE:
                parts.append(mon)
            else:
                parts.append(f"({cs})*{mon}")
        return " + ".join(parts)


def grassmann_mul(a: GrassmannElement, b: GrassmannElement) -> GrassmannElement:
    return a * b


# --------------------------------------------------------------------------
# matrices


class GrassmannMatrix:
    """Rectangular matrix with :class:`GrassmannElement` entries, immutable."""

    __slots__ = ("rows", "cols", "gens", "entries")

    def __init__(self, entries: Sequence[Sequence[Any]], gens: int | None = None):
        rows = len(entries)
        cols = len(entries[0]) if rows else 0
        if gens is None:
            found = [e.num_generators for r in entries for e in r if isinstance(e, GrassmannElement)]
            gens = found[0] if found else 0
        out = []
        for r in entries:
            if len(r) != cols:
                raise ValueError("ragged matrix")
            row = []
            for e in r:
                if isinstance(e, GrassmannElement):
                    if e.num_generators != gens:
                        raise ValueError("all entries must share one generator count")
                    row.append(e)
                else:
                    row.append(GrassmannElement.scalar(e, gens))
            out.append(tuple(row))
        self.rows, self.cols, self.gens = rows, cols, gens
        self.entries = tuple(out)

    @classmethod
    def zeros(cls, rows: int, cols: int, gens: int) -> GrassmannMatrix:
        z = GrassmannElement.zero(gens)
        return cls([[z] * cols for _ in range(rows)], gens)

    @classmethod
    def identity(cls, n: int, gens: int) -> GrassmannMatrix:
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], gens)

    def _new(self, entries: Sequence[Sequence[Any]]) -> GrassmannMatrix:
        return GrassmannMatrix(entries, self.gens)

    def __getitem__(self, ij: tuple[int, int]) -> GrassmannElement:
        i, j = ij
        return self.entries[i][j]

    def submatrix(self, r0: int, r1: int, c0: int, c1: int) -> GrassmannMatrix:
        return GrassmannMatrix([row[c0:c1] for row in self.entries[r0:r1]], self.gens)

    def map(self, f) -> GrassmannMatrix:
        return self._new([[f(e) for e in row] for row in self.entries])

    def __add__(self, other: GrassmannMatrix) -> GrassmannMatrix:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in addition")
        return self._new([[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)])

    def __sub__(self, other: GrassmannMatrix) -> GrassmannMatrix:
        return self + (-other)

    def __neg__(self) -> GrassmannMatrix:
        return self.map(lambda e: -e)

    def scale(self, c: Any) -> GrassmannMatrix:
        """Left multiplication by a scalar or Grassmann element."""
        if isinstance(c, GrassmannElement):
            return self.map(lambda e: c * e)
        c = CycloScalar.coerce(c)
        return self.map(lambda e: e * c)

    def __matmul__(self, other: GrassmannMatrix) -> GrassmannMatrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        if self.gens != other.gens:
            raise ValueError("generator count mismatch")
        zero = GrassmannElement.zero(self.gens)
        ocols = list(zip(*other.entries)) if other.rows else [()] * other.cols
        out = []
        for row in self.entries:
            nrow = []
            for col in ocols:
                acc = zero
                for a, b in zip(row, col):
                    if a.terms and b.terms:
                        acc = acc + a * b
                nrow.append(acc)
            out.append(nrow)
        return GrassmannMatrix(out, self.gens)

    def transpose(self) -> GrassmannMatrix:
        """Plain transpose; no signs."""
        return GrassmannMatrix([list(c) for c in zip(*self.entries)] if self.rows else [], self.gens)

    @property
    def T(self) -> GrassmannMatrix:
        return self.transpose()

    def body(self) -> GrassmannMatrix:
        return self.map(lambda e: GrassmannElement.scalar(e.body, self.gens))

    def body_scalars(self) -> list[list[CycloScalar]]:
        return [[e.body for e in row] for row in self.entries]

    def conjugate(self) -> GrassmannMatrix:
        return self.map(lambda e: e.conjugate())

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.entries for e in row)

    def with_gens(self, gens: int) -> GrassmannMatrix:
        """Re-embed into a Grassmann algebra with more generators."""
        if gens < self.gens:
            raise ValueError("cannot drop generators")
        return GrassmannMatrix([[GrassmannElement(gens, e.terms) for e in row] for row in self.entries], gens)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def inverse(self) -> GrassmannMatrix:
        """Two-sided inverse: invert the body exactly, then a terminating Neumann series."""
        if not self.is_square():
            raise ValueError("inverse of a non-square matrix")
        n, g = self.rows, self.gens
        try:
            binv_s = linalg.inverse(self.body_scalars(), ONE, ZERO)
        except ZeroDivisionError:
            raise ZeroDivisionError("matrix body is not invertible") from None
        binv = GrassmannMatrix(binv_s, g)
        soul = self - self.body()
        u = binv @ soul
        term = GrassmannMatrix.identity(n, g)
        total = term
        for _ in range(g):
            term = term @ (-u)
            if term.is_zero():
                break
            total = total + term
        return total @ binv

    def det(self) -> GrassmannElement:
        """Determinant for matrices with pairwise commuting (even) entries."""
        if not self.is_square():
            raise ValueError("determinant of a non-square matrix")
        if not all(e.is_even() for row in self.entries for e in row):
            raise ValueError("determinant needs even entries")
        a = [list(r) for r in self.entries]
        n = self.rows
        result = GrassmannElement.one(self.gens)
        for c in range(n):
            p = next((i for i in range(c, n) if a[i][c].body), None)
            if p is None:
                # body singular: fall back to Leibniz expansion
                return _leibniz(self.entries, self.gens)
            if p != c:
                a[c], a[p] = a[p], a[c]
                result = -result
            piv = a[c][c]
            result = result * piv
            pinv = piv.inverse()
            for i in range(c + 1, n):
                if a[i][c].terms:
                    f = a[i][c] * pinv
                    a[i] = [x - f * y for x, y in zip(a[i], a[c])]
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GrassmannMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.gens) == (other.rows, other.cols, other.gens) and \
            self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def nonzero_entries(self) -> list[tuple[int, int, GrassmannElement]]:
        return [(i, j, e) for i, row in enumerate(self.entries) for j, e in enumerate(row) if e.terms]

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols, "gens": self.gens,
                "entries": [[e.to_json() for e in row] for row in self.entries]}

    @classmethod
    def from_json(cls, data: dict) -> GrassmannMatrix:
        g = data["gens"]
        return cls([[GrassmannElement.from_json(e, g) for e in row] for row in data["entries"]], g)

    def __repr__(self) -> str:
        body = "\n".join("  [" + ", ".join(str(e) for e in row) + "]" for row in self.entries)
        return f"{type(self).__name__}({self.rows}x{self.cols}, gens={self.gens})\n{body}"


def _leibniz(entries, gens: int) -> GrassmannElement:
    from itertools import permutations

    n = len(entries)
    total = GrassmannElement.zero(gens)
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = GrassmannElement.one(gens)
        for i in range(n):
            term = term * entries[i][perm[i]]
        total = total + (term if inv % 2 == 0 else -term)
    return total


class SuperMatrix(GrassmannMatrix):
    """Square matrix with block structure ``(p, q)``: rows/cols ``0..p-1`` are even.

    ``parity_tag`` is ``"even"`` when diagonal blocks hold even and
    off-diagonal blocks odd Grassmann elements (a T-point of GL(p|q)),
    ``"odd"`` for the opposite pattern, ``"mixed"`` otherwise.  The zero
    matrix is tagged even.
    """

    __slots__ = ("shape",)

    def __init__(self, shape: tuple[int, int], entries: Sequence[Sequence[Any]], gens: int | None = None):
        super().__init__(entries, gens)
        p, q = shape
        if self.rows != p + q or self.cols != p + q:
            raise ValueError(f"entries are {self.rows}x{self.cols}, shape {p}|{q} needs {p + q}x{p + q}")
        self.shape = (p, q)

    @classmethod
    def from_matrix(cls, shape: tuple[int, int], m: GrassmannMatrix) -> SuperMatrix:
        return cls(shape, m.entries, m.gens)

    @classmethod
    def identity(cls, shape: tuple[int, int], gens: int = 0) -> SuperMatrix:
        return cls.from_matrix(shape, GrassmannMatrix.identity(sum(shape), gens))

    @classmethod
    def zeros(cls, shape: tuple[int, int], gens: int = 0) -> SuperMatrix:
        n = sum(shape)
        return cls.from_matrix(shape, GrassmannMatrix.zeros(n, n, gens))

    @classmethod
    def from_blocks(cls, a: Any, alpha: Any, beta: Any, b: Any, gens: int | None = None) -> SuperMatrix:
        """Assemble ``[[a, alpha], [beta, b]]`` from GrassmannMatrix or nested-list blocks."""
        blocks = [x if isinstance(x, GrassmannMatrix) else GrassmannMatrix(x, gens) for x in (a, alpha, beta, b)]
        a_, al, be, b_ = blocks
        g = gens if gens is not None else max(x.gens for x in blocks)
        p, q = a_.rows, b_.rows
        rows = []
        for i in range(p):
            rows.append(list(a_.entries[i]) + (list(al.entries[i]) if q else []))
        for i in range(q):
            rows.append((list(be.entries[i]) if p else []) + list(b_.entries[i]))
        rows = [[GrassmannElement(g, e.terms) for e in r] for r in rows]
        return cls((p, q), rows, g)

    def _wrap(self, m: GrassmannMatrix) -> SuperMatrix:
        return SuperMatrix(self.shape, m.entries, m.gens)

    def blocks(self) -> tuple[GrassmannMatrix, GrassmannMatrix, GrassmannMatrix, GrassmannMatrix]:
        p = self.shape[0]
        n = self.rows
        return (self.submatrix(0, p, 0, p), self.submatrix(0, p, p, n),
                self.submatrix(p, n, 0, p), self.submatrix(p, n, p, n))

    @property
    def parity_tag(self) -> str:
        p = self.shape[0]
        even = odd = True
        for i, row in enumerate(self.entries):
            for j, e in enumerate(row):
                if not e.terms:
                    continue
                block = (i >= p) ^ (j >= p)
                ep = e.parity
                if ep is None:
                    return "mixed"
                if ep != block:
                    even = False
                if ep == block:
                    odd = False
        if even:
            return "even"
        if odd:
            return "odd"
        return "mixed"

    def __add__(self, other):
        return self._wrap(GrassmannMatrix.__add__(self, other))

    def __neg__(self):
        return self._wrap(GrassmannMatrix.__neg__(self))

    def __sub__(self, other):
        return self._wrap(GrassmannMatrix.__add__(self, -other))

    def __matmul__(self, other):
        out = GrassmannMatrix.__matmul__(self, other)
        if isinstance(other, SuperMatrix):
            if other.shape != self.shape:
                raise ValueError(f"block shape mismatch {self.shape} vs {other.shape}")
            return self._wrap(out)
        return out

    def scale(self, c):
        return self._wrap(GrassmannMatrix.scale(self, c))

    def map(self, f):
        return self._wrap(GrassmannMatrix.map(self, f))

    def body(self):
        return self._wrap(GrassmannMatrix.body(self))

    def conjugate(self):
        return self._wrap(GrassmannMatrix.conjugate(self))

    def with_gens(self, gens: int) -> SuperMatrix:
        return self._wrap(GrassmannMatrix.with_gens(self, gens))

    def inverse(self) -> SuperMatrix:
        return supermatrix_inverse(self)

    def to_json(self) -> dict:
        return {"shape": list(self.shape), "gens": self.gens,
                "entries": [[e.to_json() for e in row] for row in self.entries]}

    @classmethod
    def from_json(cls, data: dict) -> SuperMatrix:
        g = data["gens"]
        return cls(tuple(data["shape"]),
                   [[GrassmannElement.from_json(e, g) for e in row] for row in data["entries"]], g)


def supermatrix_mul(a: SuperMatrix, b: SuperMatrix) -> SuperMatrix:
    if a.shape != b.shape:
        raise ValueError(f"block shape mismatch {a.shape} vs {b.shape}")
    return a @ b


def supertranspose(m: SuperMatrix) -> SuperMatrix:
    """``[[a, alpha], [beta, b]] -> [[a^t, beta^t], [-alpha^t, b^t]]``.

    Odd-tagged scalar matrices are treated as the coefficient of one odd
    parameter, which puts them under the same rule.
    """
    if m.parity_tag == "mixed":
        raise ValueError("supertranspose needs a homogeneous supermatrix")
    a, al, be, b = m.blocks()
    return SuperMatrix.from_blocks(a.T, be.T, -al.T, b.T, m.gens)


def body_of(m: SuperMatrix) -> SuperMatrix:
    return m.body()


def _require_even(m: SuperMatrix) -> None:
    if m.parity_tag != "even":
        raise ValueError(f"expected an even supermatrix, got {m.parity_tag}")


def supermatrix_inverse(m: SuperMatrix) -> SuperMatrix:
    _require_even(m)
    p = m.shape[0]
    a, _, _, b = m.body().blocks()
    for blk, name in ((a, "upper-left"), (b, "lower-right")):
        if blk.rows and linalg.rank(blk.body_scalars()) < blk.rows:
            raise ZeroDivisionError(f"{name} block body is singular")
    return m._wrap(GrassmannMatrix.inverse(m))


def berezinian(m: SuperMatrix) -> GrassmannElement:
    """``det(a - alpha b^-1 beta) / det(b)`` for an even supermatrix ``[[a, alpha], [beta, b]]``."""
    _require_even(m)
    a, al, be, b = m.blocks()
    g = m.gens
    if b.rows:
        try:
            binv = b.inverse()
        except ZeroDivisionError:
            raise ZeroDivisionError("odd-odd block body is singular") from None
        det_b = b.det()
    else:
        binv = b
        det_b = GrassmannElement.one(g)
    if a.rows:
        schur = a - (al @ binv @ be) if b.rows else a
        det_s = schur.det()
        if not det_s.body:
            raise ZeroDivisionError("even-even block body is singular")
    else:
        det_s = GrassmannElement.one(g)
    return det_s * det_b.inverse()


def dumps(obj: Any) -> str:
    """Serialize scalars, Grassmann elements and matrices with deterministic key order."""
    if isinstance(obj, (CycloScalar, SuperMatrix, GrassmannMatrix)):
        return json.dumps(obj.to_json(), sort_keys=True)
    if isinstance(obj, GrassmannElement):
        return json.dumps({"gens": obj.num_generators, "terms": obj.to_json()}, sort_keys=True)
    raise TypeError(type(obj).__name__)


def iter_entries(m: GrassmannMatrix) -> Iterator[GrassmannElement]:
    for row in m.entries:
        yield from row
