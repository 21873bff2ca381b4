"""Partition functions and weight multiplicities.

The super Kostant partition function counts ways of writing a weight as a
sum of roots from a list, using even roots any number of times and odd roots
at most once.  Verma modules and the torus spectrum on polynomial sections
are both counted by it; the universal Harish-Chandra module convolves it with
the character of a finite-dimensional k-module (Freudenthal recursion).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from . import linalg
from .rootdata import (Root, RootSystem, Weight, coroot_pairing, realization,
                       rho_vector, simple_of, sparse_bracket)


@dataclass(frozen=True)
class PartitionQuery:
    target: Weight
    roots: tuple[Root, ...]
    rs: RootSystem | None = None


def _grading(roots: Sequence[Root], rs: RootSystem | None):
    """A linear functional positive on every root of the list."""
    if rs is not None and set(roots) <= rs.positive:
        return rs.height
    if not roots:
        return lambda w: Fraction(0)
    h = [sum((r.weight.coords[i] for r in roots), Fraction(0)) for i in range(len(roots[0].weight.coords))]
    if all(r.weight.pair(h) > 0 for r in roots):
        return lambda w: w.pair(h)
    raise ValueError("cannot find a grading positive on the root list; pass the root system")


def super_kostant_partition(q: PartitionQuery | Weight, roots: Iterable[Root] | None = None,
                            rs: RootSystem | None = None) -> int:
    """Number of exponent vectors r with sum r_a a = target; odd r_a in {0, 1}."""
    if not isinstance(q, PartitionQuery):
        q = PartitionQuery(q, tuple(roots or ()), rs)
    roots = tuple(q.roots)
    return _partition(q.target, roots, q.rs)


@lru_cache(maxsize=4096)
def _partition(target: Weight, roots: tuple[Root, ...], rs: RootSystem | None) -> int:
    if target.is_zero():
        return 1
    if not roots:
        return 0
    grade = _grading(roots, rs)
    if grade(target) <= 0:
        return 0
    memo: dict = {}

    def count(i: int, rem: Weight) -> int:
        if rem.is_zero():
            return 1
        if i == len(roots):
            return 0
        key = (i, rem)
        if key in memo:
            return memo[key]
        a = roots[i]
        total = 0
        cur = rem
        j = 0
        while grade(cur) >= 0:
            total += count(i + 1, cur)
            j += 1
            if a.is_odd and j > 1:
                break
            cur = cur - a.weight
        memo[key] = total
        return total

    return count(0, target)


def cone_weights(rs: RootSystem, depth: int, exact: bool = True) -> list[Weight]:
    """Nonnegative integer combinations of simple roots with coefficient sum = depth (or <= depth)."""
    out = []
    simple = rs.simple
    depths = [depth] if exact else range(depth + 1)
    for d in depths:
        for comp in _compositions(d, len(simple)):
            w = rs.zero_weight()
            for c, s in zip(comp, simple):
                if c:
                    w = w + s.weight * c
            out.append(w)
    return out


def _compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def in_cone(rs: RootSystem, d: Weight) -> bool:
    c = rs.simple_coords(d)
    return c is not None and all(x >= 0 and x.denominator == 1 for x in c)


def depth_of(rs: RootSystem, d: Weight) -> Fraction:
    return rs.height(d)


def _positive_tuple(rs: RootSystem, positive: Iterable[Root] | None) -> tuple[Root, ...]:
    pos = rs.positive if positive is None else frozenset(positive)
    return tuple(sorted(pos, key=lambda r: (rs.height(r), r)))


def torus_spectrum_mult(lam: Weight, d: Weight, rs: RootSystem, positive: Iterable[Root] | None = None) -> int:
    """dim of the torus eigenspace with character labelled d - lam; independent of lam."""
    if not in_cone(rs, d):
        return 0
    return super_kostant_partition(d, _positive_tuple(rs, positive), rs)


def verma_weight_mult(lam: Weight, d: Weight, rs: RootSystem, positive: Iterable[Root] | None = None) -> int:
    """Multiplicity of the weight lam - d in the Verma module of highest weight lam."""
    if not in_cone(rs, d):
        return 0
    return super_kostant_partition(d, _positive_tuple(rs, positive), rs)


# --------------------------------------------------------------------------
# multiplicity tables


@dataclass
class MultTable:
    entries: dict[Weight, int] = field(default_factory=dict)
    depth_cutoff: int = 0
    depths: dict[Weight, int] = field(default_factory=dict)

    def __getitem__(self, w: Weight) -> int:
        return self.entries.get(w, 0)

    def rows(self) -> list[tuple[Weight, int]]:
        keys = sorted(self.entries, key=lambda w: (self.depths.get(w, 0), tuple(-x for x in w.coords)))
        return [(w, self.entries[w]) for w in keys]

    def to_tsv(self) -> str:
        if not self.entries:
            return ""
        k, n = next(iter(self.entries)).ranks
        head = [f"eps{i + 1}" for i in range(k)] + [f"delta{j + 1}" for j in range(n)] + ["mult"]
        lines = ["\t".join(head)]
        for w, m in self.rows():
            lines.append("\t".join([str(x) for x in w.coords] + [str(m)]))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_tsv(cls, text: str, k: int) -> MultTable:
        lines = [l for l in text.splitlines() if l.strip()]
        entries = {}
        for line in lines[1:]:
            parts = line.split("\t")
            w = Weight.from_coords(k, [Fraction(x) for x in parts[:-1]])
            entries[w] = int(parts[-1])
        return cls(entries)


def partition_table(rs: RootSystem, depth: int, roots: Iterable[Root] | None = None) -> MultTable:
    """Partition counts for every cone weight of depth <= depth."""
    roots = _positive_tuple(rs, roots)
    table = MultTable(depth_cutoff=depth)
    for dd in range(depth + 1):
        for w in cone_weights(rs, dd):
            c = super_kostant_partition(w, roots, rs)
            if c:
                table.entries[w] = c
                table.depths[w] = dd
    return table


def spectrum_table(lam: Weight, rs: RootSystem, depth: int, positive: Iterable[Root] | None = None) -> MultTable:
    """Torus spectrum labelled by d - lam for cone weights d of depth <= depth."""
    table = MultTable(depth_cutoff=depth)
    for dd in range(depth + 1):
        for d in cone_weights(rs, dd):
            m = torus_spectrum_mult(lam, d, rs, positive)
            if m:
                table.entries[d - lam] = m
                table.depths[d - lam] = dd
    return table


# --------------------------------------------------------------------------
# finite-dimensional k-modules


class NotDominantError(ValueError):
    pass


def freudenthal(lam: Weight, compact_positive: Iterable[Root], max_depth: int = 200) -> dict[Weight, int]:
    """Weight multiplicities of the irreducible module of highest weight lam.

    The algebra is the reductive one with positive roots ``compact_positive``;
    the Euclidean form on coordinates is used (invariant on every simple
    ideal).  Raises :class:`NotDominantError` unless lam is dominant integral.
    """
    pos = sorted(compact_positive)
    for a in pos:
        v = 2 * lam.dot(a.weight) / a.weight.dot(a.weight)
        if v.denominator != 1 or v < 0:
            raise NotDominantError(f"highest weight {lam} is not dominant integral for {a}")
    if not pos:
        return {lam: 1}
    simple = simple_of(pos)
    rho = Weight.zero(*lam.ranks)
    for a in pos:
        rho = rho + a.weight * Fraction(1, 2)
    top = (lam + rho).dot(lam + rho)
    cols = [list(c) for c in zip(*[s.weight.coords for s in simple])]
    heights = {a: int(sum(linalg.solve(cols, list(a.weight.coords)))) for a in pos}
    mult: dict[Weight, int] = {lam: 1}
    for depth in range(1, max_depth + 1):
        level = {}
        for comp in _compositions(depth, len(simple)):
            mu = lam
            for c, s in zip(comp, simple):
                if c:
                    mu = mu - s.weight * c
            num = Fraction(0)
            for a in pos:
                for j in range(1, depth // heights[a] + 1):
                    nu = mu + a.weight * j
                    if nu in mult:
                        num += mult[nu] * nu.dot(a.weight)
            if num == 0:
                continue
            den = top - (mu + rho).dot(mu + rho)
            if den == 0:
                raise NotDominantError("Freudenthal denominator vanished")
            m = 2 * num / den
            if m.denominator != 1 or m < 0:
                raise ArithmeticError(f"non-integral multiplicity {m} at {mu}")
            if m:
                level[mu] = int(m)
        if not level:
            return mult
        mult.update(level)
    raise NotDominantError("Freudenthal recursion did not terminate")


def k_module_weights(lam: Weight, rs: RootSystem, positive: Iterable[Root] | None = None) -> dict[Weight, int]:
    pos = rs.positive if positive is None else frozenset(positive)
    return freudenthal(lam, pos & rs.compact)


def hc_universal_mult(lam: Weight, d: Weight, rs: RootSystem, positive: Iterable[Root] | None = None) -> int:
    """Multiplicity of lam - d in U(g) (x)_{U(k + p+)} F(lam).

    As a k-module this is the exterior-symmetric algebra on p- tensored
    with F, so the count convolves F's weights with partitions over P_n.
    """
    pos = rs.positive if positive is None else frozenset(positive)
    fw = k_module_weights(lam, rs, pos)
    pn = tuple(sorted(pos - rs.compact, key=lambda r: (rs.height(r), r)))
    total = 0
    for mu, m in fw.items():
        rest = d - (lam - mu)
        if not in_cone(rs, rest):
            continue
        total += m * super_kostant_partition(rest, pn, rs)
    return total


# --------------------------------------------------------------------------
# criteria


@dataclass
class DominanceReport:
    integral: bool
    k_dominant: bool
    center_nonzero: bool
    center_dim: int
    k_type_lifting: str = "not checked"

    def to_json(self) -> dict:
        return {"integral": self.integral, "k_dominant": self.k_dominant,
                "center_nonzero": self.center_nonzero, "center_dim": self.center_dim,
                "k_type_lifting": self.k_type_lifting}


def k_center_dimension(rs: RootSystem) -> int:
    """dim of the center of k, from brackets of Cartan matrices with compact root vectors."""
    real = realization(rs.family, rs.k, rs.n)
    cartan = [real.coroot_matrix(s.weight) for s in rs.simple]
    rows = []
    for a in sorted(rs.compact):
        x = real.root_vector(a, rs.positive)
        key = next(iter(x))
        # [H_i, X_a] = c_i X_a; read c_i off one nonzero entry
        rows.append([sparse_bracket(h, 0, x, a.parity).get(key, Fraction(0)) / x[key] for h in cartan])
    if not rows:
        return len(cartan)
    return len(cartan) - linalg.rank(rows)


def dominance_check(lam: Weight, rs: RootSystem, positive: Iterable[Root] | None = None) -> DominanceReport:
    pos = rs.positive if positive is None else frozenset(positive)
    integral = all(coroot_pairing(lam, g).denominator == 1 for g in rs.even_roots)
    kdom = all(coroot_pairing(lam, a) >= 0 for a in pos & rs.compact)
    cdim = k_center_dimension(rs)
    return DominanceReport(integral, kdom, cdim >= 1, cdim)


def irreducibility_criterion(lam: Weight, rs: RootSystem, positive: Iterable[Root] | None = None) -> bool:
    """(lam + rho)(H_g) <= 0 for all noncompact positive g, strictly < 0 for isotropic g."""
    pos = rs.positive if positive is None else frozenset(positive)
    shifted = lam + rho_vector(rs, pos)
    for g in pos - rs.compact:
        v = coroot_pairing(shifted, g)
        if v > 0 or (g.is_isotropic and v == 0):
            return False
    return True
