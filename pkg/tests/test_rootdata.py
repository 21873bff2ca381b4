from __future__ import annotations

import json
from fractions import Fraction

import pytest

from superhc.rootdata import (Root, RootSystem, Weight, build_root_system, classify_root, coroot_pairing,
                              enumerate_admissible, is_admissible, is_positive_system, matrix_compactness,
                              rho_vector, root_vector, structure_constants)


def W(eps, delta):
    return Weight(tuple(Fraction(x) for x in eps), tuple(Fraction(x) for x in delta))


@pytest.mark.parametrize("key,dims", [
    (("B", 0, 1), (3, 2)),     # osp(1|2)
    (("B", 1, 1), (6, 6)),     # osp(3|2)
    (("B", 2, 2), (20, 20)),   # osp(5|4)
    (("D", 2, 1), (9, 8)),     # osp(4|2)
    (("C", 1, 1), (4, 4)),     # osp(2|2)
    (("A", 2, 1), (4, 4)),     # sl(2|1)
    (("A", 3, 2), (12, 12)),   # sl(3|2)
    (("A", 2, 0), (3, 0)),     # sl(2)
])
def test_dimensions(key, dims):
    assert build_root_system(*key).dimension == dims


def test_osp32_roots_and_classes():
    rs = build_root_system("B", 1, 1)
    assert rs.name == "osp(3|2)"
    assert [str(r) for r in rs.simple] == ["e1", "-e1+d1"]
    iso = {str(r) for r in rs.positive if r.is_isotropic}
    assert iso == {"-e1+d1", "e1+d1"}
    d1 = rs.root_of(W([0], [1]))
    c = classify_root(rs, d1)
    assert c.parity == "odd" and not c.isotropic and not c.compact


def test_form_and_coroot():
    e1, d1 = W([1], [0]), W([0], [1])
    assert e1.form(e1) == 1 and d1.form(d1) == -1
    assert coroot_pairing(W([3], [0]), e1) == 6
    assert coroot_pairing(W([1], [2]), W([1], [1])) == 1 - 2  # isotropic: plain form


def test_rho_osp32():
    rs = build_root_system("B", 1, 1)
    # rho_0 = (e1 + 2d1)/2, rho_1 = (d1 + (d1 - e1) + (d1 + e1))/2
    assert rho_vector(rs) == W([Fraction(1, 2)], [Fraction(-1, 2)])


def test_positive_system_check():
    rs = build_root_system("B", 1, 1)
    assert is_positive_system(rs.roots, rs.positive)
    assert not is_positive_system(rs.roots, set(rs.positive) | {-next(iter(rs.positive))})


def test_lemma_system_admissible_with_literal_bullet_false():
    rep = is_admissible(build_root_system("B", 1, 1))
    assert rep.admissible
    # e1 + (d1 - e1) = d1 lies in P_n, so the literal "alpha + beta in P_k" fails
    assert not rep.literal_bullet_holds


@pytest.mark.parametrize("key,herm,exh", [
    (("B", 0, 1), 2, 2), (("B", 1, 1), 4, 8), (("A", 2, 1), 2, 2), (("C", 1, 1), 4, 6),
])
def test_enumeration_modes(key, herm, exh):
    rs = build_root_system(*key)
    h = enumerate_admissible(rs)
    e = enumerate_admissible(rs, mode="exhaustive")
    assert len(h) == herm and len(e) == exh
    assert set(h) <= set(e)


def test_enumeration_rejects_noncompact_fixed():
    rs = build_root_system("B", 1, 1)
    with pytest.raises(ValueError):
        enumerate_admissible(rs, fixed=[next(iter(rs.P_n))])


def test_invalid_family():
    with pytest.raises(ValueError):
        build_root_system("E", 6, 0)
    with pytest.raises(ValueError):
        build_root_system("A", 2, 2)


def test_json_round_trip():
    rs = build_root_system("B", 2, 1)
    back = RootSystem.from_json(json.loads(json.dumps(rs.to_json())))
    assert back.positive == rs.positive and back.compact == rs.compact
    assert json.dumps(back.to_json(), sort_keys=True) == json.dumps(rs.to_json(), sort_keys=True)


def test_kd_split_matches_matrix_blocks():
    rs = build_root_system("B", 1, 1, "kd")
    for r in rs.roots:
        assert matrix_compactness(rs, r) == (r in rs.compact)


def test_root_vector_weights():
    rs = build_root_system("B", 1, 1)
    for a in rs.positive:
        X = root_vector(rs, a)
        assert not X.is_zero()


def test_structure_constants_antisymmetry():
    sc = structure_constants(build_root_system("B", 0, 1))
    for (a, b), out in sc.items():
        if (b, a) in sc and a != b:
            back = sc[(b, a)]
            # [x, y] = -(-1)^{|x||y|}[y, x]; odd-odd pairs are symmetric
            assert set(out) == set(back)
