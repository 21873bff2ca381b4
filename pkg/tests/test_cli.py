from __future__ import annotations

import io
import json
import random
from contextlib import redirect_stdout
from fractions import Fraction

import pytest

from superhc import ospgeo
from superhc.cli import ParseError, format_weight, main, parse_weight_spec
from superhc.rootdata import Root, RootSystem, Weight, build_root_system, enumerate_admissible


def run(argv, capsys=None):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(argv)
    return code, buf.getvalue()


class TestWeightGrammar:
    def test_examples(self):
        assert parse_weight_spec("0;3/2", 1, 1) == Weight((0,), (Fraction(3, 2),))
        assert parse_weight_spec("1,0;2", 2, 1) == Weight((1, 0), (2,))
        assert parse_weight_spec(";−5", 0, 1) == Weight((), (-5,))

    @pytest.mark.parametrize("bad", ["1;;2", "1/0;1", "1.5;0", "a;1", "1", "1;2;3", "1,;2"])
    def test_rejects(self, bad):
        with pytest.raises(ParseError):
            parse_weight_spec(bad)

    def test_rank_mismatch(self):
        with pytest.raises(ParseError):
            parse_weight_spec("1,2;3", 1, 1)

    @pytest.mark.parametrize("text", ["0;3/2", "-1/3,2;0,7", ";-5", "4;"])
    def test_round_trip(self, text):
        assert format_weight(parse_weight_spec(text)) == text


def test_roots_json_equals_library():
    code, out = run(["roots", "--family", "B", "--k", "1", "--n", "1", "--json"])
    assert code == 0
    data = json.loads(out)
    assert data == build_root_system("B", 1, 1).to_json()
    assert RootSystem.from_json(data).positive == build_root_system("B", 1, 1).positive


def test_admissible_enumerate():
    code, out = run(["admissible", "--family", "B", "--k", "0", "--n", "1", "--enumerate"])
    assert code == 0 and "2 admissible" in out
    code, out = run(["admissible", "--family", "B", "--k", "1", "--n", "1", "--enumerate", "--json"])
    systems = [frozenset(Root.from_json(r) for r in s) for s in json.loads(out)["systems"]]
    assert systems == enumerate_admissible(build_root_system("B", 1, 1))


def test_shapovalov_full_rank_table():
    code, out = run(["shapovalov", "--family", "B", "--k", "0", "--n", "1", "--lambda", ";−5", "--depth", "3",
                     "--json"])
    assert code == 0
    ranks = json.loads(out)["ranks"]
    assert len(ranks) == 4 and all(r["full"] for r in ranks)


def test_mult_and_verma_deterministic():
    args = ["mult", "--family", "B", "--k", "1", "--n", "1", "--depth", "3"]
    assert run(args) == run(args)
    code, out = run(["verma", "--family", "B", "--k", "1", "--n", "1", "--lambda", "1;2", "--depth", "2",
                     "--json"])
    entries = json.loads(out)["entries"]
    assert {Weight.from_json(e["weight"]): e["mult"] for e in entries}[Weight((1,), (1,))] == 2


def test_parse_error_exit_code():
    code, _ = run(["verma", "--family", "B", "--k", "1", "--n", "1", "--lambda", "1;;2"])
    assert code == 2


def test_validation_exit_code():
    code, _ = run(["roots", "--family", "A", "--k", "2", "--n", "2"])
    assert code == 1


def test_osp_check(tmp_path):
    rng = random.Random(1)
    g = ospgeo.random_member(rng, 2, 1, 2)
    f = tmp_path / "g.json"
    f.write_text(json.dumps(g.to_json()))
    code, out = run(["osp", "check", "--m", "2", "--n", "1", "--matrix", str(f), "--json"])
    assert code == 0 and json.loads(out)["member"] and json.loads(out)["real_forms"]["real"]
    f.write_text(json.dumps(g.scale(2).to_json()))
    code, _ = run(["osp", "check", "--m", "2", "--n", "1", "--matrix", str(f)])
    assert code == 1


def test_osp_basis():
    code, out = run(["osp", "basis", "--m", "3", "--n", "1", "--json"])
    assert json.loads(out)["dim"] == [6, 6]


def test_siegel_and_cayley(tmp_path):
    code, out = run(["cayley", "--m", "2", "--n", "1", "--seed", "3", "--gens", "2", "--json"])
    assert code == 0
    data = json.loads(out)
    img = ospgeo.ChartPoint.from_json(data["image"])
    assert img.chart == "siegel" and img.is_siegel()
    pf = tmp_path / "p.json"
    pf.write_text(json.dumps(data["image"]))
    code, out = run(["cayley", "--point", str(pf), "--inverse", "--json"])
    assert ospgeo.ChartPoint.from_json(json.loads(out)["image"]) == ospgeo.ChartPoint.from_json(data["input"])

    g = ospgeo.random_member(random.Random(4), 2, 1, 2)
    gf = tmp_path / "g.json"
    gf.write_text(json.dumps(g.to_json()))
    code, out = run(["siegel", "act", "--matrix", str(gf), "--point", str(pf), "--json"])
    assert code == 0
    assert ospgeo.ChartPoint.from_json(json.loads(out)) == ospgeo.fractional_action(g, img)
    code, out = run(["siegel", "normalize", "--matrix", str(gf), "--json"])
    assert code == 0 and "u" in json.loads(out)


def test_generator_env(monkeypatch):
    monkeypatch.setenv("SUPERHC_GENERATORS", "3")
    code, out = run(["cayley", "--json"])
    assert json.loads(out)["input"]["zeta"]["gens"] == 3
    monkeypatch.setenv("SUPERHC_GENERATORS", "x")
    code, _ = run(["cayley"])
    assert code == 2
