"""PBW normal ordering in U(g), Verma modules and contravariant pairing matrices.

Basis labels are the integer positions of :class:`superhc.rootdata.LieBasis`
(negative root vectors, Cartan coroots, positive root vectors).  A word is a
tuple of labels; a normal-ordered monomial is a nondecreasing word in which no
odd label repeats.

Verma convention: the module M(lam) = U(g)/M_lam has highest weight lam, i.e.
M_lam is the left ideal generated by n+ and the elements H - lam(H).  The
pairing matrices are ``eps_0(project(tau(N+) N-))`` with ``tau(X) = -X``
extended as a super anti-automorphism.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import linalg
from .rootdata import LieBasis, Root, RootSystem, Weight
from .weights import cone_weights, in_cone

Word = tuple[int, ...]

# sl(2) and friends rebuild bases often in tests; share them per root system
_BASES: dict = {}


def basis_index(rs: RootSystem) -> LieBasis:
    key = (rs.family, rs.k, rs.n, rs.positive, rs.compact)
    if key not in _BASES:
        _BASES[key] = LieBasis(rs)
    return _BASES[key]


BasisIndex = LieBasis


@dataclass(frozen=True)
class PBWMonomial:
    labels: Word

    def weight(self, basis: LieBasis) -> Weight:
        w = basis.rs.zero_weight()
        for l in self.labels:
            w = w + basis.labels[l].weight
        return w

    def parity(self, basis: LieBasis) -> int:
        return sum(basis.labels[l].parity for l in self.labels) % 2

    def label(self, basis: LieBasis) -> str:
        if not self.labels:
            return "1"
        return "*".join(str(basis.labels[l]) for l in self.labels)


@dataclass
class UEElement:
    """Finite linear combination of words with rational coefficients."""

    terms: dict[Word, Fraction] = field(default_factory=dict)
    normal: bool = False

    @classmethod
    def word(cls, *labels: int, coeff=1) -> UEElement:
        return cls({tuple(labels): Fraction(coeff)})

    @classmethod
    def one(cls) -> UEElement:
        return cls({(): Fraction(1)}, True)

    def __add__(self, other: UEElement) -> UEElement:
        out = dict(self.terms)
        _accumulate(out, other.terms)
        return UEElement(out)

    def __sub__(self, other: UEElement) -> UEElement:
        return self + other.scale(-1)

    def scale(self, c) -> UEElement:
        c = Fraction(c)
        return UEElement({w: v * c for w, v in self.terms.items()} if c else {}, self.normal)

    def __mul__(self, other: UEElement) -> UEElement:
        out: dict[Word, Fraction] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                _accumulate(out, {w1 + w2: c1 * c2})
        return UEElement(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, UEElement) and self.terms == other.terms

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, word: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(word), Fraction(0))

    def weights(self, basis: LieBasis) -> set[Weight]:
        return {PBWMonomial(w).weight(basis) for w in self.terms}

    def pretty(self, basis: LieBasis) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms):
            parts.append(f"{self.terms[w]}*{PBWMonomial(w).label(basis)}")
        return " + ".join(parts)


def _accumulate(out: dict, terms: Mapping, scale=1) -> None:
    for w, v in terms.items():
        s = out.get(w, 0) + v * scale
        if s:
            out[w] = s
        else:
            out.pop(w, None)


def _first_disorder(word: Word, parities: list[int]) -> int:
    for i in range(len(word) - 1):
        a, b = word[i], word[i + 1]
        if a > b or (a == b and parities[a]):
            return i
    return -1


def _disorders(word: Word, parities: list[int]) -> list[int]:
    return [i for i in range(len(word) - 1)
            if word[i] > word[i + 1] or (word[i] == word[i + 1] and parities[word[i]])]


def _rewrite(basis: LieBasis, word: Word, i: int) -> dict[Word, Fraction]:
    par = [l.parity for l in basis.labels]
    a, b = word[i], word[i + 1]
    head, tail = word[:i], word[i + 2:]
    out: dict[Word, Fraction] = {}
    if a == b:
        # odd x: x x = 1/2 [x, x]
        for c, v in basis.bracket(a, a).items():
            _accumulate(out, {head + (c,) + tail: v / 2})
        return out
    sign = -1 if par[a] and par[b] else 1
    out[head + (b, a) + tail] = Fraction(sign)
    for c, v in basis.bracket(a, b).items():
        _accumulate(out, {head + (c,) + tail: v})
    return out


class NormalOrderer:
    """Memoized leftmost rewriting; the random strategy bypasses the cache."""

    def __init__(self, basis: LieBasis):
        self.basis = basis
        self.parities = [l.parity for l in basis.labels]
        self.cache: dict[Word, dict[Word, Fraction]] = {}

    def word(self, word: Word) -> dict[Word, Fraction]:
        if word in self.cache:
            return self.cache[word]
        i = _first_disorder(word, self.parities)
        if i < 0:
            res = {word: Fraction(1)}
        else:
            res = {}
            for w, v in _rewrite(self.basis, word, i).items():
                _accumulate(res, self.word(w), v)
        self.cache[word] = res
        return res

    def word_random(self, word: Word, rng: random.Random) -> dict[Word, Fraction]:
        spots = _disorders(word, self.parities)
        if not spots:
            return {word: Fraction(1)}
        res: dict[Word, Fraction] = {}
        for w, v in _rewrite(self.basis, word, rng.choice(spots)).items():
            _accumulate(res, self.word_random(w, rng), v)
        return res


_ORDERERS: dict[int, NormalOrderer] = {}


def _orderer(basis: LieBasis) -> NormalOrderer:
    key = id(basis)
    if key not in _ORDERERS or _ORDERERS[key].basis is not basis:
        _ORDERERS[key] = NormalOrderer(basis)
    return _ORDERERS[key]


def normal_order(u: UEElement, basis: LieBasis, strategy: str = "leftmost",
                 rng: random.Random | None = None) -> UEElement:
    """Rewrite ``u`` into the PBW basis (n-, h, n+) using the superbracket."""
    n = len(basis.labels)
    for w in u.terms:
        if any(not 0 <= l < n for l in w):
            raise KeyError(f"unknown label in word {w}")
    no = _orderer(basis)
    out: dict[Word, Fraction] = {}
    for w, c in u.terms.items():
        if strategy == "leftmost":
            _accumulate(out, no.word(w), c)
        elif strategy == "random":
            _accumulate(out, no.word_random(w, rng or random.Random(0)), c)
        else:
            raise ValueError(f"unknown strategy {strategy!r}")
    return UEElement(out, True)


def verma_project(u: UEElement, lam: Weight, basis: LieBasis) -> UEElement:
    """The U(n-) component of ``u`` modulo M_lam: n+ factors vanish, H -> lam(H)."""
    if not u.normal:
        u = normal_order(u, basis)
    cs, ps = basis.cartan_start, basis.positive_start
    out: dict[Word, Fraction] = {}
    for w, c in u.terms.items():
        if w and w[-1] >= ps:
            continue
        coeff = c
        j = len(w)
        while j and w[j - 1] >= cs:
            coeff *= basis.cartan_value(lam, w[j - 1])
            j -= 1
        if coeff:
            _accumulate(out, {w[:j]: coeff})
    return UEElement(out, True)


def verma_apply(u: UEElement, m: PBWMonomial | UEElement, lam: Weight, basis: LieBasis) -> UEElement:
    """u acting on the Verma vector m v_lam."""
    if isinstance(m, PBWMonomial):
        m = UEElement({m.labels: Fraction(1)}, True)
    return verma_project(normal_order(u * m, basis), lam, basis)


class VermaModule:
    """Fast action of basis vectors on M(lam) by commuting through n- monomials."""

    def __init__(self, basis: LieBasis, lam: Weight):
        self.basis = basis
        self.lam = lam
        self.no = _orderer(basis)
        self.cache: dict[tuple[int, Word], dict[Word, Fraction]] = {}
        self.par = [l.parity for l in basis.labels]

    def act(self, x: int, m: Word) -> dict[Word, Fraction]:
        key = (x, m)
        if key in self.cache:
            return self.cache[key]
        b = self.basis
        if x < b.cartan_start:
            res = dict(self.no.word((x,) + m))
        elif x < b.positive_start:
            wt = self.lam + PBWMonomial(m).weight(b)
            v = b.cartan_value(wt, x)
            res = {m: v} if v else {}
        elif not m:
            res = {}
        else:
            y, rest = m[0], m[1:]
            res = {}
            for c, v in b.bracket(x, y).items():
                _accumulate(res, self.act_vec(c, {rest: Fraction(1)}), v)
            sign = -1 if self.par[x] and self.par[y] else 1
            for w, v in self.act(x, rest).items():
                _accumulate(res, self.act(y, w), sign * v)
        self.cache[key] = res
        return res

    def act_vec(self, x: int, vec: Mapping[Word, Fraction]) -> dict[Word, Fraction]:
        out: dict[Word, Fraction] = {}
        for m, c in vec.items():
            _accumulate(out, self.act(x, m), c)
        return out


def pbw_monomials(basis: LieBasis, weight: Weight, part: str = "minus") -> list[PBWMonomial]:
    """Ordered PBW monomials in n- (or n+) root vectors of the given weight."""
    if part == "minus":
        labels = list(range(basis.cartan_start))
    elif part == "plus":
        labels = list(range(basis.positive_start, len(basis.labels)))
    else:
        raise ValueError(part)
    rs = basis.rs
    sign = -1 if part == "minus" else 1
    target = weight * sign
    if not in_cone(rs, target):
        return []
    out: list[PBWMonomial] = []

    def rec(idx: int, rem: Weight, acc: list[int]):
        if rem.is_zero():
            out.append(PBWMonomial(tuple(acc)))
            return
        if idx == len(labels):
            return
        if rs.height(rem) * sign < 0:
            return
        l = labels[idx]
        lab = basis.labels[l]
        cap = 1 if lab.parity else None
        j = 0
        cur = rem
        while True:
            rec(idx + 1, cur, acc + [l] * j)
            j += 1
            if cap is not None and j > cap:
                break
            cur = cur - lab.weight
            if rs.height(cur) * sign < 0:
                break

    rec(0, weight, [])
    return sorted(out, key=lambda m: m.labels)


def tau_word(basis: LieBasis, word: Word) -> tuple[int, Word]:
    """tau(x_1...x_r) = sign * x_r...x_1 for tau(X) = -X as a super anti-automorphism."""
    odd = sum(basis.labels[l].parity for l in word)
    sign = (-1) ** len(word) * (-1) ** (odd * (odd - 1) // 2)
    return sign, tuple(reversed(word))


@dataclass
class PairingMatrix:
    depth: Weight
    rows: list[PBWMonomial]
    cols: list[PBWMonomial]
    entries: list[list[Fraction]]
    basis: LieBasis | None = None

    @property
    def size(self) -> int:
        return len(self.rows)

    def rank(self) -> int:
        return linalg.rank(self.entries) if self.entries else 0

    def det(self) -> Fraction:
        if not self.entries:
            return Fraction(1)
        return linalg.det(self.entries)

    def to_tsv(self) -> str:
        b = self.basis
        names = (lambda m: m.label(b)) if b else (lambda m: ",".join(map(str, m.labels)) or "1")
        lines = ["\t".join([""] + [names(c) for c in self.cols])]
        for r, row in zip(self.rows, self.entries):
            lines.append("\t".join([names(r)] + [str(v) for v in row]))
        return "\n".join(lines) + "\n"

    def summary(self) -> dict:
        return {"d": self.depth.to_json(), "size": self.size, "rank": self.rank()}


def contravariant_matrix(lam: Weight, d: Weight, rs: RootSystem, method: str = "action") -> PairingMatrix:
    """Entries eps_0(project(tau(N+_r) N-_s)) over PBW monomials of weight d and -d.

    ``method="action"`` applies the factors of tau(N+_r) one at a time to
    N-_s v_lam; ``method="normal_order"`` normal-orders the whole word.
    """
    basis = basis_index(rs)
    rows = pbw_monomials(basis, d, "plus")
    cols = pbw_monomials(basis, -d, "minus")
    entries: list[list[Fraction]] = []
    if method == "action":
        vm = VermaModule(basis, lam)
        for r in rows:
            sign, tw = tau_word(basis, r.labels)
            row = []
            for c in cols:
                vec: dict[Word, Fraction] = {c.labels: Fraction(1)}
                for x in reversed(tw):
                    vec = vm.act_vec(x, vec)
                    if not vec:
                        break
                row.append(sign * vec.get((), Fraction(0)))
            entries.append(row)
    elif method == "normal_order":
        for r in rows:
            sign, tw = tau_word(basis, r.labels)
            row = []
            for c in cols:
                u = UEElement({tw + c.labels: Fraction(sign)})
                row.append(verma_project(normal_order(u, basis), lam, basis).coefficient(()))
            entries.append(row)
    else:
        raise ValueError(method)
    return PairingMatrix(d, rows, cols, entries, basis)


def irreducible_quotient_mult(lam: Weight, d: Weight, rs: RootSystem) -> int:
    return contravariant_matrix(lam, d, rs).rank()


def rank_table(lam: Weight, rs: RootSystem, depth: int) -> list[dict]:
    """Rank summaries for every cone weight of depth <= depth."""
    out = []
    for dd in range(depth + 1):
        for d in cone_weights(rs, dd):
            pm = contravariant_matrix(lam, d, rs)
            if pm.size:
                s = pm.summary()
                s["depth"] = dd
                out.append(s)
    return out
