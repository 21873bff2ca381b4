"""Root data for sl(k|n) (k != n) and osp(m|2n).

Weights are written in the epsilon/delta basis with the form
``(eps_i, eps_j) = delta_ij``, ``(delta_i, delta_j) = -delta_ij``.  The family
parameter ``k`` is the number of epsilon coordinates: ``m = 2k+1`` for B,
``m = 2k`` for D, ``k = 1`` for C, and ``sl(k|n)`` for A.

Matrix realizations live in a weight basis where the Cartan subalgebra is
diagonal and every root vector has integer entries; :func:`root_vector`
conjugates them back to the basis in which the osp form is
``J = [[I_m, 0, 0], [0, 0, -I_n], [0, I_n, 0]]``.
"""

from __future__ import annotations

import itertools
import json
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, NamedTuple, Sequence

from . import linalg
from .scalars import I as IMAG
from .scalars import ONE, ZERO, CycloScalar, SuperMatrix

FAMILIES = ("A", "B", "C", "D")


@dataclass(frozen=True, order=True)
class Weight:
    eps: tuple[Fraction, ...]
    delta: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "eps", tuple(Fraction(x) for x in self.eps))
        object.__setattr__(self, "delta", tuple(Fraction(x) for x in self.delta))

    @classmethod
    def zero(cls, k: int, n: int) -> Weight:
        return cls((0,) * k, (0,) * n)

    @classmethod
    def from_coords(cls, k: int, coords: Sequence) -> Weight:
        return cls(tuple(coords[:k]), tuple(coords[k:]))

    @property
    def coords(self) -> tuple[Fraction, ...]:
        return self.eps + self.delta

    @property
    def ranks(self) -> tuple[int, int]:
        return len(self.eps), len(self.delta)

    def _same(self, other: Weight) -> None:
        if self.ranks != other.ranks:
            raise ValueError(f"weights of different ranks {self.ranks} vs {other.ranks}")

    def __add__(self, other: Weight) -> Weight:
        self._same(other)
        return Weight(tuple(a + b for a, b in zip(self.eps, other.eps)),
                      tuple(a + b for a, b in zip(self.delta, other.delta)))

    def __sub__(self, other: Weight) -> Weight:
        return self + (-other)

    def __neg__(self) -> Weight:
        return Weight(tuple(-a for a in self.eps), tuple(-a for a in self.delta))

    def __mul__(self, c) -> Weight:
        c = Fraction(c)
        return Weight(tuple(a * c for a in self.eps), tuple(a * c for a in self.delta))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coords)

    def form(self, other: Weight) -> Fraction:
        self._same(other)
        return sum((a * b for a, b in zip(self.eps, other.eps)), Fraction(0)) - \
            sum((a * b for a, b in zip(self.delta, other.delta)), Fraction(0))

    def dot(self, other: Weight) -> Fraction:
        """Euclidean product of coordinates (positive definite on even roots)."""
        return sum((a * b for a, b in zip(self.coords, other.coords)), Fraction(0))

    def pair(self, h: Sequence[Fraction]) -> Fraction:
        """Value on the Cartan element with coordinates ``h`` (eps_i(h) = h_i)."""
        return sum((a * b for a, b in zip(self.coords, h)), Fraction(0))

    def to_json(self) -> dict:
        return {"eps": [str(x) for x in self.eps], "delta": [str(x) for x in self.delta]}

    @classmethod
    def from_json(cls, data: dict) -> Weight:
        return cls(tuple(Fraction(x) for x in data["eps"]), tuple(Fraction(x) for x in data["delta"]))

    def __str__(self) -> str:
        terms = []
        for name, vals in (("e", self.eps), ("d", self.delta)):
            for i, v in enumerate(vals, 1):
                if v == 1:
                    terms.append(f"+{name}{i}")
                elif v == -1:
                    terms.append(f"-{name}{i}")
                elif v:
                    terms.append(f"{'+' if v > 0 else '-'}{abs(v)}{name}{i}")
        s = "".join(terms)
        return (s[1:] if s.startswith("+") else s) or "0"


@dataclass(frozen=True, order=True)
class Root:
    weight: Weight
    parity: int  # 0 even, 1 odd

    def __neg__(self) -> Root:
        return Root(-self.weight, self.parity)

    @property
    def is_odd(self) -> bool:
        return self.parity == 1

    @property
    def norm(self) -> Fraction:
        return self.weight.form(self.weight)

    @property
    def is_isotropic(self) -> bool:
        return self.norm == 0

    def to_json(self) -> dict:
        d = self.weight.to_json()
        d["parity"] = "odd" if self.parity else "even"
        return d

    @classmethod
    def from_json(cls, data: dict) -> Root:
        return cls(Weight.from_json(data), 1 if data["parity"] == "odd" else 0)

    def __str__(self) -> str:
        return str(self.weight)


def _w(k: int, n: int, eps: dict | None = None, delta: dict | None = None) -> Weight:
    e = [0] * k
    d = [0] * n
    for i, v in (eps or {}).items():
        e[i] += v
    for i, v in (delta or {}).items():
        d[i] += v
    return Weight(tuple(e), tuple(d))


def _all_roots(family: str, k: int, n: int) -> list[Root]:
    roots: list[Root] = []
    add = roots.append
    if family == "A":
        for i, j in itertools.permutations(range(k), 2):
            add(Root(_w(k, n, {i: 1, j: -1}), 0))
        for i, j in itertools.permutations(range(n), 2):
            add(Root(_w(k, n, delta={i: 1, j: -1}), 0))
        for i in range(k):
            for j in range(n):
                add(Root(_w(k, n, {i: 1}, {j: -1}), 1))
                add(Root(_w(k, n, {i: -1}, {j: 1}), 1))
        return roots
    for i, j in itertools.combinations(range(k), 2):
        for s, t in itertools.product((1, -1), repeat=2):
            add(Root(_w(k, n, {i: s, j: t}), 0))
    for i, j in itertools.combinations(range(n), 2):
        for s, t in itertools.product((1, -1), repeat=2):
            add(Root(_w(k, n, delta={i: s, j: t}), 0))
    for i in range(n):
        for s in (1, -1):
            add(Root(_w(k, n, delta={i: 2 * s}), 0))
    for i in range(n):
        for j in range(k):
            for s, t in itertools.product((1, -1), repeat=2):
                add(Root(_w(k, n, {j: t}, {i: s}), 1))
    if family == "B":
        for i in range(k):
            for s in (1, -1):
                add(Root(_w(k, n, {i: s}), 0))
        for i in range(n):
            for s in (1, -1):
                add(Root(_w(k, n, delta={i: s}), 1))
    return roots


def _validate(family: str, k: int, n: int) -> None:
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")
    if k < 0 or n < 0:
        raise ValueError("ranks must be nonnegative")
    if family == "A":
        if k == n:
            raise ValueError("family A needs distinct ranks (sl(n|n) is excluded)")
        if k + n < 2:
            raise ValueError("sl(k|n) needs k + n >= 2")
    elif family == "B":
        if n < 1 or (k == 0 and n == 0):
            raise ValueError("B family needs n >= 1")
    elif family == "C":
        if k != 1 or n < 1:
            raise ValueError("C family is osp(2|2n): use k = 1, n >= 1")
    elif family == "D":
        if k < 1 or n < 1:
            raise ValueError("D family needs k >= 1 and n >= 1")


def _default_simple(family: str, k: int, n: int) -> list[Root]:
    out: list[Root] = []
    if family == "A":
        for i in range(k - 1):
            out.append(Root(_w(k, n, {i: 1, i + 1: -1}), 0))
        if k and n:
            out.append(Root(_w(k, n, {k - 1: 1}, {0: -1}), 1))
        for j in range(n - 1):
            out.append(Root(_w(k, n, delta={j: 1, j + 1: -1}), 0))
        return out
    for i in range(k - 1):
        out.append(Root(_w(k, n, {i: 1, i + 1: -1}), 0))
    if family == "B" and k:
        out.append(Root(_w(k, n, {k - 1: 1}), 0))
    if family == "D" and k >= 2:
        out.append(Root(_w(k, n, {k - 2: 1, k - 1: 1}), 0))
    for j in range(n - 1):
        out.append(Root(_w(k, n, delta={j: 1, j + 1: -1}), 0))
    if k:
        out.append(Root(_w(k, n, {0: -1}, {n - 1: 1}), 1))
        if family in ("C", "D") and k == 1:
            out.append(Root(_w(k, n, {0: 1}, {n - 1: 1}), 1))
    elif family == "B":
        out.append(Root(_w(k, n, delta={n - 1: 1}), 1))
    return out


def _compact_roots(family: str, k: int, n: int, split, roots: Sequence[Root]) -> frozenset[Root]:
    if not isinstance(split, str):
        given = frozenset(split)
        closed = given | {-r for r in given}
        if not closed <= set(roots):
            raise ValueError("compact roots must be roots")
        if any(r.is_odd for r in closed):
            raise ValueError("compact roots are even")
        return frozenset(closed)
    even = [r for r in roots if not r.is_odd]
    if split == "even":
        return frozenset(even)
    if split == "cartan":
        return frozenset()
    if family == "A":
        raise ValueError(f"split {split!r} is for osp families; use 'even', 'cartan' or a root list")
    if split == "kd":
        # all of so(m) plus gl(n) inside sp(2n)
        return frozenset(r for r in even if not any(r.weight.delta) or
                         (not any(r.weight.eps) and sum(r.weight.delta) == 0))
    if split == "lemma":
        # epsilon_1 roots and delta_i + delta_j are noncompact
        return frozenset(r for r in even if
                         (not any(r.weight.delta) and r.weight.eps[0] == 0) or
                         (not any(r.weight.eps) and sum(r.weight.delta) == 0))
    raise ValueError(f"unknown split {split!r}")


def positive_from_simple(roots: Iterable[Root], simple: Sequence[Root]) -> frozenset[Root]:
    """Roots that are nonnegative combinations of ``simple``."""
    mat = [list(s.weight.coords) for s in simple]
    out = set()
    for r in roots:
        x = _coords_in(mat, r.weight.coords)
        if x is None:
            raise ValueError(f"{r} is not in the span of the simple roots")
        if all(c >= 0 for c in x):
            out.add(r)
    return frozenset(out)


def _coords_in(simple_rows: list[list[Fraction]], target: Sequence[Fraction]) -> list[Fraction] | None:
    # solve sum_i x_i * simple_i = target
    cols = [list(col) for col in zip(*simple_rows)] if simple_rows else [[] for _ in target]
    x = linalg.solve(cols, list(target))
    if x is None:
        return None
    return x


def simple_of(positive: Iterable[Root]) -> list[Root]:
    """Indecomposable elements of a positive system, sorted."""
    pos = set(positive)
    weights = {r.weight for r in pos}
    simple = []
    for r in pos:
        if any((r.weight - s.weight) in weights for s in pos if s != r):
            continue
        if any(r.weight == s.weight * 2 for s in pos):
            continue
        simple.append(r)
    return sorted(simple)


def is_positive_system(roots: Iterable[Root], positive: Iterable[Root]) -> bool:
    roots = set(roots)
    pos = set(positive)
    if not pos <= roots:
        return False
    for r in roots:
        if (r in pos) == (-r in pos):
            return False
    simple = simple_of(pos)
    mat = [list(s.weight.coords) for s in simple]
    if linalg.rank(mat) < len(simple):
        return False
    for r in pos:
        x = _coords_in(mat, r.weight.coords)
        if x is None or any(c < 0 or c.denominator != 1 for c in x):
            return False
    return True


class RootClass(NamedTuple):
    parity: str
    isotropic: bool
    compact: bool


@dataclass(frozen=True)
class RootSystem:
    """A root system with a chosen positive system and compact/noncompact split.

    ``compact`` is the set of roots (both signs) whose root spaces lie in k.
    """

    family: str
    k: int
    n: int
    roots: tuple[Root, ...]
    positive: frozenset[Root]
    compact: frozenset[Root]
    split: str = "custom"

    @property
    def m(self) -> int:
        """Size of the even block of the defining representation."""
        return {"B": 2 * self.k + 1, "C": 2, "D": 2 * self.k, "A": self.k}[self.family]

    @property
    def name(self) -> str:
        if self.family == "A":
            return f"sl({self.k}|{self.n})"
        return f"osp({self.m}|{2 * self.n})"

    @cached_property
    def simple(self) -> tuple[Root, ...]:
        simple = simple_of(self.positive)
        return tuple(sorted(simple, key=lambda r: self._simple_order_key(r)))

    def _simple_order_key(self, r: Root):
        default = _default_simple(self.family, self.k, self.n)
        if r in default:
            return (0, default.index(r))
        return (1, r)

    @cached_property
    def P_k(self) -> frozenset[Root]:
        return self.positive & self.compact

    @cached_property
    def P_n(self) -> frozenset[Root]:
        return self.positive - self.compact

    @cached_property
    def P_n0(self) -> frozenset[Root]:
        return frozenset(r for r in self.P_n if not r.is_odd)

    @cached_property
    def P_n1(self) -> frozenset[Root]:
        return frozenset(r for r in self.P_n if r.is_odd)

    @property
    def rank(self) -> int:
        """Dimension of the Cartan subalgebra."""
        return self.k + self.n - (1 if self.family == "A" else 0)

    @cached_property
    def even_roots(self) -> tuple[Root, ...]:
        return tuple(r for r in self.roots if not r.is_odd)

    @cached_property
    def odd_roots(self) -> tuple[Root, ...]:
        return tuple(r for r in self.roots if r.is_odd)

    @property
    def dimension(self) -> tuple[int, int]:
        return len(self.even_roots) + self.rank, len(self.odd_roots)

    @cached_property
    def root_set(self) -> frozenset[Root]:
        return frozenset(self.roots)

    @cached_property
    def weight_set(self) -> frozenset[Weight]:
        return frozenset(r.weight for r in self.roots)

    @cached_property
    def _by_weight(self) -> dict[Weight, Root]:
        return {r.weight: r for r in self.roots}

    def root_of(self, w: Weight) -> Root | None:
        return self._by_weight.get(w)

    def simple_coords(self, w: Weight) -> tuple[Fraction, ...] | None:
        """Coordinates of ``w`` in the simple roots, or None if not in their span."""
        x = _simple_solver(self.simple)(w.coords)
        return None if x is None else tuple(x)

    def height(self, r: Root | Weight) -> Fraction:
        w = r.weight if isinstance(r, Root) else r
        c = self.simple_coords(w)
        if c is None:
            raise ValueError(f"{w} is not in the root lattice span")
        return sum(c, Fraction(0))

    @cached_property
    def positive_sorted(self) -> tuple[Root, ...]:
        """Positive roots ordered by height, then lexicographically."""
        return tuple(sorted(self.positive, key=lambda r: (self.height(r), r)))

    def with_positive(self, positive: Iterable[Root]) -> RootSystem:
        pos = frozenset(positive)
        if not is_positive_system(self.roots, pos):
            raise ValueError("not a positive system")
        return RootSystem(self.family, self.k, self.n, self.roots, pos, self.compact, self.split)

    def with_compact(self, split) -> RootSystem:
        comp = _compact_roots(self.family, self.k, self.n, split, self.roots)
        return RootSystem(self.family, self.k, self.n, self.roots, self.positive, comp,
                          split if isinstance(split, str) else "custom")

    def zero_weight(self) -> Weight:
        return Weight.zero(self.k, self.n)

    def to_json(self) -> dict:
        def enc(rs):
            return [r.to_json() for r in sorted(rs)]

        return {"family": self.family, "k": self.k, "n": self.n, "split": self.split,
                "roots": enc(self.roots), "simple": [r.to_json() for r in self.simple],
                "P_k": enc(self.P_k), "P_n0": enc(self.P_n0), "P_n1": enc(self.P_n1)}

    @classmethod
    def from_json(cls, data: dict) -> RootSystem:
        roots = tuple(sorted(Root.from_json(r) for r in data["roots"]))
        pk = {Root.from_json(r) for r in data["P_k"]}
        pos = pk | {Root.from_json(r) for r in data["P_n0"]} | {Root.from_json(r) for r in data["P_n1"]}
        comp = frozenset(pk | {-r for r in pk})
        return cls(data["family"], data["k"], data["n"], roots, frozenset(pos), comp, data.get("split", "custom"))


@lru_cache(maxsize=None)
def _simple_solver(simple: tuple[Root, ...]):
    rows = [list(s.weight.coords) for s in simple]
    cols = [list(c) for c in zip(*rows)]
    # precompute a left inverse by row reduction of [cols | I]
    nr = len(cols)
    aug = [cols[i] + [Fraction(int(i == j)) for j in range(nr)] for i in range(nr)]
    red, piv = linalg.row_echelon(aug)
    ns = len(simple)
    if piv[:ns] != list(range(ns)):
        raise ValueError("simple roots are linearly dependent")
    # rows beyond ns give consistency conditions
    def solve(target):
        t = list(target)
        vals = [sum((r[ns + j] * t[j] for j in range(nr)), Fraction(0)) for r in red]
        if any(v != 0 for v in vals[ns:]):
            return None
        return vals[:ns]

    return solve


@lru_cache(maxsize=None)
def build_root_system(family: str, k: int, n: int, split: str | None = None) -> RootSystem:
    """Root system of the basic classical superalgebra (family, k, n).

    The default positive system is the one with simple roots
    ``eps_1 - eps_2, ..., eps_k (B) / eps_{k-1}+eps_k (D), delta_1 - delta_2, ...,
    delta_n - eps_1``.  The default split is ``"lemma"`` for osp (only the
    epsilon_1 roots and delta_i + delta_j are noncompact among even roots) and
    ``"even"`` for sl (every even root compact).
    """
    family = family.upper()
    _validate(family, k, n)
    roots = tuple(sorted(_all_roots(family, k, n)))
    simple = _default_simple(family, k, n)
    positive = positive_from_simple(roots, simple)
    if split is None:
        split = "even" if family == "A" else "lemma"
    compact = _compact_roots(family, k, n, split, roots)
    return RootSystem(family, k, n, roots, positive, compact, split)


def classify_root(rs: RootSystem, alpha: Root) -> RootClass:
    if alpha not in rs.root_set:
        raise ValueError(f"{alpha} is not a root of {rs.name}")
    return RootClass("odd" if alpha.is_odd else "even", alpha.is_isotropic, alpha in rs.compact)


def coroot_pairing(lam: Weight, gamma: Root | Weight) -> Fraction:
    """``2(lam, gamma)/(gamma, gamma)``, or ``(lam, gamma)`` for isotropic gamma."""
    g = gamma.weight if isinstance(gamma, Root) else gamma
    nrm = g.form(g)
    if nrm == 0:
        return lam.form(g)
    return 2 * lam.form(g) / nrm


def rho_vector(rs: RootSystem, positive: Iterable[Root] | None = None) -> Weight:
    pos = rs.positive if positive is None else frozenset(positive)
    out = rs.zero_weight()
    for r in pos:
        out = out + (r.weight * Fraction(-1 if r.is_odd else 1, 2))
    return out


# --------------------------------------------------------------------------
# admissibility


@dataclass
class AdmissibilityReport:
    admissible: bool
    violations: list[tuple[str, Root, Root, Root]] = field(default_factory=list)
    literal_bullet_holds: bool = True
    literal_bullet_failures: list[tuple[Root, Root, Root]] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.admissible


def is_admissible(rs: RootSystem, positive: Iterable[Root] | None = None) -> AdmissibilityReport:
    """Check ``[k, p+] c p+``, ``[p+, p+] c p+`` and closure of the compact part.

    Also evaluates the stricter reading "alpha, beta noncompact, alpha+beta a
    root implies alpha+beta compact" and reports it separately.
    """
    pos = rs.positive if positive is None else frozenset(positive)
    if not is_positive_system(rs.roots, pos):
        raise ValueError("not a positive system")
    by_weight = {r.weight: r for r in rs.roots}
    pk = sorted(pos & rs.compact)
    pn = sorted(pos - rs.compact)
    pn_set = set(pn)
    pk_set = set(pk)
    rep = AdmissibilityReport(True)

    def root_sum(a, b):
        return by_weight.get(a.weight + b.weight)

    for a, b in itertools.combinations_with_replacement(pk, 2):
        s = root_sum(a, b)
        if s is not None and s not in pk_set:
            rep.violations.append(("k-closure", a, b, s))
    for a, b in itertools.combinations_with_replacement(pn, 2):
        s = root_sum(a, b)
        if s is None:
            continue
        if s not in pn_set:
            rep.violations.append(("p+-closure", a, b, s))
        if s not in pk_set:
            rep.literal_bullet_failures.append((a, b, s))
    for a in pk + [-r for r in pk]:
        for b in pn:
            s = root_sum(a, b)
            if s is not None and s not in pn_set:
                rep.violations.append(("k-stability", a, b, s))
    rep.admissible = not rep.violations
    rep.literal_bullet_holds = not rep.literal_bullet_failures
    return rep


def all_positive_systems(rs: RootSystem) -> list[frozenset[Root]]:
    """Every positive system for the fixed Cartan, reached by simple flips."""
    by_weight = {r.weight: r for r in rs.roots}
    start = rs.positive
    seen = {start}
    queue = deque([start])
    while queue:
        pos = queue.popleft()
        for a in simple_of(pos):
            flip = {a}
            dbl = by_weight.get(a.weight * 2)
            if dbl is not None:
                flip.add(dbl)
            new = (pos - flip) | {-r for r in flip}
            new = frozenset(new)
            if new not in seen:
                seen.add(new)
                queue.append(new)
    out = [p for p in seen if is_positive_system(rs.roots, p)]
    return sorted(out, key=lambda p: sorted(p))


def _even_components(rs: RootSystem) -> list[list[Root]]:
    even = list(rs.even_roots)
    comps: list[list[Root]] = []
    left = set(even)
    while left:
        seed = min(left)
        comp = {seed}
        frontier = [seed]
        left.discard(seed)
        while frontier:
            r = frontier.pop()
            for s in list(left):
                if r.weight.form(s.weight) != 0:
                    comp.add(s)
                    left.discard(s)
                    frontier.append(s)
        comps.append(sorted(comp))
    return sorted(comps)


def _form_matrix_vec(rs: RootSystem, w: Weight) -> list[Fraction]:
    # Cartan coordinates of the element dual to w under the form
    return list(w.eps) + [-x for x in w.delta]


def hermitian_central_elements(rs: RootSystem) -> list[list[Fraction]]:
    """Cartan coordinates of the normalized central elements that split p.

    One element per simple even component with noncompact roots (values
    +-1 on its noncompact roots), plus one for the part of the center of
    g_0 that acts on g_1, scaled by 1/3 so that no odd root is annihilated
    by a signed sum.
    """
    out: list[list[Fraction]] = []
    dim = rs.k + rs.n
    for comp in _even_components(rs):
        noncompact = [r for r in comp if r not in rs.compact]
        if not noncompact:
            continue
        compact = [r for r in comp if r in rs.compact]
        span = [_form_matrix_vec(rs, r.weight) for r in comp]
        basis = []
        for v in span:
            if linalg.rank(basis + [v]) > len(basis):
                basis.append(v)
        # h = sum_j x_j basis_j with alpha(h) = 0 for compact alpha
        cond = [[r.weight.pair(b) for b in basis] for r in compact]
        null = linalg.nullspace(cond) if cond else [[Fraction(int(i == j)) for j in range(len(basis))]
                                                    for i in range(len(basis))]
        if len(null) != 1:
            raise ValueError(f"component {[str(r) for r in comp[:3]]}... is not of Hermitian type")
        h = [sum((x * b[i] for x, b in zip(null[0], basis)), Fraction(0)) for i in range(dim)]
        vals = {abs(r.weight.pair(h)) for r in noncompact}
        top = max(vals)
        h = [x / top for x in h]
        if {abs(r.weight.pair(h)) for r in noncompact} != {1}:
            raise ValueError("noncompact roots of a component take unequal values on its center")
        first = min(r for r in noncompact if r in rs.positive) if any(r in rs.positive for r in noncompact) \
            else min(noncompact)
        if first.weight.pair(h) < 0:
            h = [-x for x in h]
        out.append(h)
    even_rows = [list(r.weight.coords) for r in rs.even_roots]
    center = linalg.nullspace(even_rows) if even_rows else \
        [[Fraction(int(i == j)) for j in range(dim)] for i in range(dim)]
    if center:
        odd_vals = [[r.weight.pair(c) for c in center] for r in rs.odd_roots]
        if linalg.rank(odd_vals) > 1:
            raise ValueError("center of g_0 acting on g_1 has dimension > 1")
        for c in center:
            vals = [r.weight.pair(c) for r in rs.odd_roots]
            if any(vals):
                top = max(abs(v) for v in vals)
                h = [x / top / 3 for x in c]
                ref = min(r for r in rs.odd_roots if r in rs.positive)
                if ref.weight.pair(h) < 0:
                    h = [-x for x in h]
                out.append(h)
                break
    return out


def enumerate_admissible(rs: RootSystem, fixed: Iterable[Root] | None = None,
                         mode: str = "hermitian") -> list[frozenset[Root]]:
    """Admissible positive systems containing the compact positive system ``fixed``.

    ``mode="hermitian"`` runs over sign assignments of the normalized central
    elements (one sign per noncompact simple component of g_0, one for the
    center of g_0 when it acts on g_1); the candidate puts a noncompact root
    in p+ when the signed element is positive on it.  ``mode="exhaustive"``
    scans every positive system for the Cartan subalgebra.
    Both filter by :func:`is_admissible`.
    """
    pk = frozenset(rs.P_k if fixed is None else fixed)
    if not pk <= rs.compact:
        raise ValueError("fixed system must consist of compact roots")
    results: list[frozenset[Root]] = []
    if mode == "exhaustive":
        for pos in all_positive_systems(rs):
            if pos & rs.compact == pk and is_admissible(rs, pos):
                results.append(pos)
        return sorted(results, key=lambda p: sorted(p))
    if mode != "hermitian":
        raise ValueError(f"unknown mode {mode!r}")
    elems = hermitian_central_elements(rs)
    noncompact = [r for r in rs.roots if r not in rs.compact]
    for signs in itertools.product((1, -1), repeat=len(elems)):
        h = [sum((s * e[i] for s, e in zip(signs, elems)), Fraction(0)) for i in range(rs.k + rs.n)]
        vals = {r: r.weight.pair(h) for r in noncompact}
        if any(v == 0 for v in vals.values()):
            continue
        cand = frozenset(pk | {r for r, v in vals.items() if v > 0})
        if not is_positive_system(rs.roots, cand):
            continue
        if is_admissible(rs, cand):
            results.append(cand)
    return results


# --------------------------------------------------------------------------
# matrix realization

SparseMat = dict  # (row, col) -> Fraction


def _sp_mul(a: SparseMat, b: SparseMat) -> SparseMat:
    out: dict = {}
    brow: dict = {}
    for (i, j), v in b.items():
        brow.setdefault(i, []).append((j, v))
    for (i, j), v in a.items():
        for (l, w) in brow.get(j, ()):
            key = (i, l)
            s = out.get(key, 0) + v * w
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return out


def _sp_add(a: SparseMat, b: SparseMat, cb=1) -> SparseMat:
    out = dict(a)
    for key, v in b.items():
        s = out.get(key, 0) + cb * v
        if s:
            out[key] = s
        else:
            out.pop(key, None)
    return out


def _sp_scale(a: SparseMat, c) -> SparseMat:
    return {k: v * c for k, v in a.items()} if c else {}


def sparse_bracket(x: SparseMat, px: int, y: SparseMat, py: int) -> SparseMat:
    return _sp_add(_sp_mul(x, y), _sp_mul(y, x), -1 if (px * py) % 2 == 0 else 1)


class Realization:
    """Weight-basis matrices for a root system: root vectors and coroots."""

    def __init__(self, family: str, k: int, n: int):
        self.family, self.k, self.n = family, k, n
        self.weights, self.parities = self._basis()
        self.dim = len(self.weights)
        self.p = self.parities.count(0)
        self._root_vectors: dict[Root, SparseMat] = {}

    def _basis(self) -> tuple[list[Weight], list[int]]:
        k, n = self.k, self.n
        if self.family == "A":
            ws = [_w(k, n, {i: 1}) for i in range(k)] + [_w(k, n, delta={j: 1}) for j in range(n)]
            return ws, [0] * k + [1] * n
        ws = []
        for i in range(k):
            ws += [_w(k, n, {i: 1}), _w(k, n, {i: -1})]
        if self.family == "B":
            ws.append(Weight.zero(k, n))
        ws += [_w(k, n, delta={j: 1}) for j in range(n)] + [_w(k, n, delta={j: -1}) for j in range(n)]
        m = len(ws) - 2 * n
        return ws, [0] * m + [1] * (2 * n)

    # weight-basis form and the involution whose fixed points are osp
    @cached_property
    def form(self) -> SparseMat:
        k, n = self.k, self.n
        f: SparseMat = {}
        for i in range(k):
            f[(2 * i, 2 * i + 1)] = Fraction(2)
            f[(2 * i + 1, 2 * i)] = Fraction(2)
        m = self.p
        if self.family == "B":
            f[(m - 1, m - 1)] = Fraction(1)
        for j in range(n):
            f[(m + j, m + n + j)] = Fraction(-1)
            f[(m + n + j, m + j)] = Fraction(1)
        return f

    @cached_property
    def form_inverse(self) -> SparseMat:
        dense = [[self.form.get((i, j), Fraction(0)) for j in range(self.dim)] for i in range(self.dim)]
        inv = linalg.inverse(dense)
        return {(i, j): v for i, row in enumerate(inv) for j, v in enumerate(row) if v}

    def st(self, x: SparseMat) -> SparseMat:
        p = self.p
        out = {}
        for (i, j), v in x.items():
            sign = -1 if (i < p and j >= p) else 1
            out[(j, i)] = sign * v
        return out

    def project(self, y: SparseMat) -> SparseMat:
        """Projection onto osp: (Y - J^-1 Y^st J) / 2."""
        if self.family == "A":
            return y
        sig = _sp_mul(_sp_mul(self.form_inverse, self.st(y)), self.form)
        return _sp_scale(_sp_add(y, sig, -1), Fraction(1, 2))

    def _primitive(self, x: SparseMat) -> SparseMat:
        from math import gcd as _g
        den = 1
        for v in x.values():
            den = den * v.denominator // _g(den, v.denominator)
        ints = {k: int(v * den) for k, v in x.items()}
        g = 0
        for v in ints.values():
            g = _g(g, v)
        first = ints[min(ints)]
        if first < 0:
            g = -g
        return {k: Fraction(v, g) for k, v in ints.items()}

    def _raw_vector(self, w: Weight, flip: bool = False) -> SparseMat:
        cands = [(r, s) for r in range(self.dim) for s in range(self.dim)
                 if r != s and self.weights[r] - self.weights[s] == w]
        for r, s in cands:
            x = self.project({(r, s): Fraction(1)})
            if x:
                return self._primitive(x)
        raise ValueError(f"no root vector of weight {w}")

    def coroot_matrix(self, gamma: Weight) -> SparseMat:
        return {(i, i): coroot_pairing(w, gamma) for i, w in enumerate(self.weights)
                if coroot_pairing(w, gamma)}

    def cartan_matrix(self, h: Sequence[Fraction]) -> SparseMat:
        return {(i, i): w.pair(h) for i, w in enumerate(self.weights) if w.pair(h)}

    def cartan_coords(self, x: SparseMat) -> list[Fraction]:
        """Read eps_i(H), delta_j(H) off a diagonal weight-basis matrix."""
        out = []
        for i in range(self.k):
            idx = self.weights.index(_w(self.k, self.n, {i: 1}))
            out.append(x.get((idx, idx), Fraction(0)))
        for j in range(self.n):
            idx = self.weights.index(_w(self.k, self.n, delta={j: 1}))
            out.append(x.get((idx, idx), Fraction(0)))
        return out

    def root_vector(self, root: Root, positive: frozenset[Root]) -> SparseMat:
        """Chevalley-normalized root vector: [X_a, X_-a] is the coroot matrix of a in P."""
        key = (root, positive)
        if key in self._root_vectors:
            return self._root_vectors[key]
        base = root if root in positive else -root
        x = self._raw_vector(base.weight)
        if root == base:
            out = x
        else:
            y = self._raw_vector(root.weight)
            br = sparse_bracket(x, base.parity, y, root.parity)
            target = self.coroot_matrix(base.weight)
            (i, j), v = next(iter(br.items()))
            c = target.get((i, j), Fraction(0)) / v
            out = _sp_scale(y, c)
            if sparse_bracket(x, base.parity, out, root.parity) != target:
                raise AssertionError(f"normalization failed for {root}")
        self._root_vectors[key] = out
        return out

    # conversion to the J basis of the defining representation
    @cached_property
    def change_of_basis(self) -> tuple[list[list[CycloScalar]], list[list[CycloScalar]]]:
        """(P, P^-1) with columns of P the weight vectors in J coordinates."""
        d = self.dim
        P = [[ZERO] * d for _ in range(d)]
        if self.family == "A":
            for i in range(d):
                P[i][i] = ONE
        else:
            for i in range(self.k):
                P[2 * i][2 * i] = ONE
                P[2 * i + 1][2 * i] = -IMAG
                P[2 * i][2 * i + 1] = ONE
                P[2 * i + 1][2 * i + 1] = IMAG
            for i in range(2 * self.k, d):
                P[i][i] = ONE
        Pinv = linalg.inverse(P, ONE, ZERO)
        return P, Pinv

    def to_supermatrix(self, x: SparseMat) -> SuperMatrix:
        P, Pinv = self.change_of_basis
        d = self.dim
        X = [[ZERO] * d for _ in range(d)]
        for (i, j), v in x.items():
            X[i][j] = CycloScalar.coerce(v)
        XP = [[sum((X[i][l] * Pinv[l][j] for l in range(d) if X[i][l]), ZERO) for j in range(d)] for i in range(d)]
        out = [[sum((P[i][l] * XP[l][j] for l in range(d) if P[i][l]), ZERO) for j in range(d)] for i in range(d)]
        return SuperMatrix((self.p, d - self.p), out, 0)


@lru_cache(maxsize=None)
def realization(family: str, k: int, n: int) -> Realization:
    return Realization(family, k, n)


def root_vector(rs: RootSystem, alpha: Root) -> SuperMatrix:
    """Root vector of ``alpha`` in the defining basis (J basis for osp)."""
    if alpha not in rs.root_set:
        raise ValueError(f"{alpha} is not a root of {rs.name}")
    real = realization(rs.family, rs.k, rs.n)
    return real.to_supermatrix(real.root_vector(alpha, rs.positive))


def cartan_element(rs: RootSystem, h: Sequence) -> SuperMatrix:
    """Cartan element with eps_i(H) = h_i, delta_j(H) = h_{k+j}, in the defining basis."""
    real = realization(rs.family, rs.k, rs.n)
    return real.to_supermatrix(real.cartan_matrix([Fraction(x) for x in h]))


def coroot_element(rs: RootSystem, gamma: Root) -> SuperMatrix:
    real = realization(rs.family, rs.k, rs.n)
    return real.to_supermatrix(real.coroot_matrix(gamma.weight))


def bracket(x: SuperMatrix, y: SuperMatrix, px: int | None = None, py: int | None = None) -> SuperMatrix:
    """Supercommutator ``XY - (-1)^{|X||Y|} YX`` of homogeneous numeric matrices."""
    def par(m, given):
        if given is not None:
            return given
        tag = m.parity_tag
        if tag == "mixed":
            raise ValueError("parity tag missing: matrix is not homogeneous")
        return 0 if tag == "even" else 1

    a, b = par(x, px), par(y, py)
    xy = x @ y
    yx = y @ x
    return xy - yx if (a * b) % 2 == 0 else xy + yx


# --------------------------------------------------------------------------
# basis and structure constants


@dataclass(frozen=True)
class BasisLabel:
    kind: str  # "X" root vector, "H" Cartan
    root: Root | None
    index: int
    parity: int
    weight: Weight

    def __str__(self) -> str:
        if self.kind == "H":
            return f"H{self.index}"
        return f"X[{self.root}]"


class LieBasis:
    """Ordered basis (negative roots, Cartan, positive roots) with structure constants.

    Roots are ordered by height, then lexicographically; negative roots are
    listed so that deeper roots come first.  The Cartan basis consists of the
    coroots of the simple roots.
    """

    def __init__(self, rs: RootSystem):
        self.rs = rs
        self.real = realization(rs.family, rs.k, rs.n)
        pos = list(rs.positive_sorted)
        neg = [-r for r in reversed(pos)]
        labels: list[BasisLabel] = []
        for r in neg:
            labels.append(BasisLabel("X", r, len(labels), r.parity, r.weight))
        self.num_negative = len(neg)
        for i, s in enumerate(rs.simple):
            labels.append(BasisLabel("H", None, len(labels), 0, rs.zero_weight()))
        self.num_cartan = len(rs.simple)
        for r in pos:
            labels.append(BasisLabel("X", r, len(labels), r.parity, r.weight))
        self.labels = labels
        self.index = {lab.root: lab.index for lab in labels if lab.kind == "X"}
        self.cartan_start = self.num_negative
        self.positive_start = self.num_negative + self.num_cartan
        self._mats = [self._matrix(l) for l in labels]
        self._cartan_solver = self._make_cartan_solver()

    def _matrix(self, lab: BasisLabel) -> SparseMat:
        if lab.kind == "X":
            return self.real.root_vector(lab.root, self.rs.positive)
        s = self.rs.simple[lab.index - self.num_negative]
        return self.real.coroot_matrix(s.weight)

    def _make_cartan_solver(self):
        d = self.real.dim
        mats = [self._mats[self.cartan_start + i] for i in range(self.num_cartan)]
        rows = [[m.get((j, j), Fraction(0)) for m in mats] for j in range(d)]
        nc = len(mats)
        aug = [rows[j] + [Fraction(int(j == i)) for i in range(d)] for j in range(d)]
        red, _ = linalg.row_echelon(aug)
        # x = L @ rhs on pivot rows; remaining rows are consistency conditions
        left = [r[nc:] for r in red]

        def solve(diag: SparseMat) -> list[Fraction]:
            rhs = {j: v for (j, _), v in diag.items()}
            vals = [sum((row[j] * v for j, v in rhs.items()), Fraction(0)) for row in left]
            if any(vals[nc:]):
                raise AssertionError("bracket does not lie in the Cartan subalgebra")
            return vals[:nc]

        return solve

    def matrix(self, i: int) -> SparseMat:
        return self._mats[i]

    def cartan_value(self, lam: Weight, i: int) -> Fraction:
        """lam(H_i) for the Cartan label i."""
        s = self.rs.simple[i - self.cartan_start]
        return coroot_pairing(lam, s)

    def decompose(self, x: SparseMat, weight: Weight) -> dict[int, Fraction]:
        if not x:
            return {}
        if weight.is_zero():
            if any(i != j for (i, j) in x):
                raise AssertionError("zero-weight element is not diagonal")
            coeffs = self._cartan_solver(x)
            return {self.cartan_start + i: c for i, c in enumerate(coeffs) if c}
        r = self.rs.root_of(weight)
        if r is None:
            raise AssertionError(f"nonzero bracket with non-root weight {weight}")
        idx = self.index[r]
        basis = self._mats[idx]
        key = next(iter(basis))
        c = x.get(key, Fraction(0)) / basis[key]
        if _sp_add(x, basis, -c):
            raise AssertionError(f"bracket is not proportional to the root vector of {r}")
        return {idx: c}

    @cached_property
    def structure_constants(self) -> dict[tuple[int, int], dict[int, Fraction]]:
        out = {}
        labs = self.labels
        for a in labs:
            for b in labs:
                br = sparse_bracket(self._mats[a.index], a.parity, self._mats[b.index], b.parity)
                dec = self.decompose(br, a.weight + b.weight)
                if dec:
                    out[(a.index, b.index)] = dec
        return out

    def bracket(self, i: int, j: int) -> dict[int, Fraction]:
        return self.structure_constants.get((i, j), {})


def structure_constants(rs: RootSystem) -> dict[tuple[str, str], dict[str, Fraction]]:
    """Brackets of basis vectors, keyed by printable labels."""
    lb = LieBasis(rs)
    names = [str(l) for l in lb.labels]
    return {(names[a], names[b]): {names[c]: v for c, v in d.items()}
            for (a, b), d in lb.structure_constants.items()}


def matrix_compactness(rs: RootSystem, alpha: Root) -> bool:
    """True when the root vector is block diagonal in the k = so(m) + gl(n) pattern."""
    if rs.family == "A":
        raise ValueError("matrix compactness pattern is defined for osp only")
    x = root_vector(rs, alpha)
    m, n = rs.m, rs.n
    for i, j, _ in x.nonzero_entries():
        bi = 0 if i < m else (1 if i < m + n else 2)
        bj = 0 if j < m else (1 if j < m + n else 2)
        if bi != bj:
            return False
    return True


def dumps(rs: RootSystem) -> str:
    return json.dumps(rs.to_json(), sort_keys=True)
