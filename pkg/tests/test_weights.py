from __future__ import annotations

from fractions import Fraction

import pytest

from superhc.rootdata import Weight, build_root_system
from superhc.weights import (MultTable, NotDominantError, dominance_check, freudenthal, hc_universal_mult,
                             in_cone, irreducibility_criterion, k_center_dimension, partition_table,
                             spectrum_table, super_kostant_partition, torus_spectrum_mult,
                             verma_weight_mult)

# Brute-force enumeration over exponent vectors of the five positive roots
# e1, d1-e1, d1, e1+d1, 2d1 (odd exponents 0/1), frozen here as the oracle.
OSP32_DEPTH5 = {
    (-1, 1): 1, (-1, 2): 1, (-1, 3): 1, (0, 0): 1, (0, 1): 2, (0, 2): 3, (1, 0): 1, (1, 1): 3,
    (1, 2): 4, (2, 0): 1, (2, 1): 3, (3, 0): 1, (3, 1): 3, (4, 0): 1, (5, 0): 1,
}


def W(eps, delta):
    return Weight(tuple(Fraction(x) for x in eps), tuple(Fraction(x) for x in delta))


def test_partition_table_matches_brute_force():
    rs = build_root_system("B", 1, 1)
    table = partition_table(rs, 5)
    got = {tuple(int(x) for x in w.coords): m for w, m in table.entries.items()}
    assert got == OSP32_DEPTH5


def test_osp12_partitions_all_one():
    rs = build_root_system("B", 0, 1)
    assert all(m == 1 for m in partition_table(rs, 8).entries.values())
    assert len(partition_table(rs, 8).entries) == 9


def test_odd_roots_used_once():
    rs = build_root_system("B", 0, 1)
    d1 = next(r for r in rs.positive if r.is_odd)
    # 2 d1 from the odd root alone is forbidden; only the even root 2d1 counts
    assert super_kostant_partition(W([], [2]), [d1], rs) == 0
    assert super_kostant_partition(W([], [1]), [d1], rs) == 1


def test_off_cone_zero():
    rs = build_root_system("B", 1, 1)
    lam = W([1], [1])
    assert torus_spectrum_mult(lam, W([-1], [0]), rs) == 0
    assert verma_weight_mult(lam, W([Fraction(1, 2)], [0]), rs) == 0
    assert not in_cone(rs, W([-1], [0]))


def test_spectrum_labels_are_d_minus_lambda():
    rs = build_root_system("B", 1, 1)
    lam = W([2], [-1])
    spec = spectrum_table(lam, rs, 3)
    assert spec[-lam] == 1
    assert spec[W([1], [0]) - lam] == 1


def test_tsv_round_trip():
    rs = build_root_system("B", 1, 1)
    t = partition_table(rs, 4)
    back = MultTable.from_tsv(t.to_tsv(), 1)
    assert back.entries == t.entries


def test_freudenthal_sl3_adjoint_and_so5_vector():
    sl3 = build_root_system("A", 3, 1)  # even part contains gl(3)
    comp = [r for r in sl3.positive if not r.is_odd and r.weight.delta == (0,)]
    adj = freudenthal(W([1, 0, -1], [0]), comp)
    assert sum(adj.values()) == 8 and adj[W([0, 0, 0], [0])] == 2
    so5 = build_root_system("B", 2, 1, "kd")
    comp = [r for r in so5.P_k if r.weight.delta == (0,)]
    vec = freudenthal(W([1, 0], [0]), comp)
    assert sum(vec.values()) == 5


def test_freudenthal_rejects_non_dominant():
    rs = build_root_system("B", 2, 1, "kd")
    comp = [r for r in rs.P_k if r.weight.delta == (0,)]
    with pytest.raises(NotDominantError):
        freudenthal(W([-1, 0], [0]), comp)


def test_hc_universal_reduces_to_partition_for_torus_k():
    # lemma split of osp(3|2): k is the Cartan, so the HC module is the Verma module
    rs = build_root_system("B", 1, 1)
    lam = W([1], [2])
    for w, m in partition_table(rs, 3).entries.items():
        assert hc_universal_mult(lam, w, rs) == m


def test_dominance_and_center():
    rs = build_root_system("B", 1, 1)
    assert k_center_dimension(rs) == 2
    rep = dominance_check(W([1], [-2]), rs)
    assert rep.integral and rep.k_dominant and rep.center_nonzero
    assert rep.k_type_lifting == "not checked"


def test_irreducibility_criterion_on_default_osp12():
    rs = build_root_system("B", 0, 1)
    assert irreducibility_criterion(W([], [-5]), rs)
    assert not irreducibility_criterion(W([], [3]), rs)
