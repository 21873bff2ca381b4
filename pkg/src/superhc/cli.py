"""Command-line front end.

Every subcommand prints deterministic text, or JSON with ``--json``.
Exit codes: 0 success, 1 validation failure, 2 parse error.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from . import ospgeo, weights
from .enveloping import contravariant_matrix, rank_table
from .rootdata import (RootSystem, Weight, build_root_system, classify_root, enumerate_admissible,
                       is_admissible, rho_vector)
from .scalars import GrassmannMatrix, SuperMatrix

GENERATORS_ENV = "SUPERHC_GENERATORS"
EXIT_OK, EXIT_INVALID, EXIT_PARSE = 0, 1, 2

_RATIONAL = re.compile(r"^[+-]?\d+(/[1-9]\d*)?$")


class ParseError(Exception):
    pass


class ValidationError(ValueError):
    pass


def default_generators() -> int:
    raw = os.environ.get(GENERATORS_ENV, "4")
    try:
        g = int(raw)
    except ValueError:
        raise ParseError(f"{GENERATORS_ENV} must be an integer, got {raw!r}") from None
    if g < 0:
        raise ParseError(f"{GENERATORS_ENV} must be nonnegative")
    return g


def _parse_part(text: str) -> list[Fraction]:
    text = text.strip()
    if not text:
        return []
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if not _RATIONAL.match(tok):
            raise ParseError(f"malformed rational {tok!r}")
        out.append(Fraction(tok))
    return out


def parse_weight_spec(text: str, k: int | None = None, n: int | None = None) -> Weight:
    """Parse ``"eps coords;delta coords"``, e.g. ``"1,0;3/2"``. Unicode minus is accepted."""
    text = text.replace("−", "-")
    parts = text.split(";")
    if len(parts) != 2:
        raise ParseError(f"weight {text!r} needs exactly one ';' between eps and delta parts")
    eps, delta = _parse_part(parts[0]), _parse_part(parts[1])
    if k is not None and len(eps) != k:
        raise ParseError(f"expected {k} eps coordinates, got {len(eps)}")
    if n is not None and len(delta) != n:
        raise ParseError(f"expected {n} delta coordinates, got {len(delta)}")
    return Weight(tuple(eps), tuple(delta))


def format_weight(w: Weight) -> str:
    return ",".join(str(x) for x in w.eps) + ";" + ",".join(str(x) for x in w.delta)


@dataclass
class CommandSpec:
    command: str
    family: str | None = None
    k: int | None = None
    n: int | None = None
    weights: dict[str, str] = field(default_factory=dict)
    depth: int | None = None
    inputs: dict[str, str] = field(default_factory=dict)
    json: bool = False
    options: dict[str, Any] = field(default_factory=dict)


# --------------------------------------------------------------------------
# output helpers


def _emit(obj: Any, out) -> None:
    out.write(json.dumps(obj, sort_keys=True, indent=2) + "\n")


def _root_system(spec: CommandSpec) -> RootSystem:
    try:
        return build_root_system(spec.family, spec.k, spec.n, spec.options.get("split"))
    except ValueError as e:
        raise ValidationError(str(e)) from None


def _weight(spec: CommandSpec, name: str, rs: RootSystem) -> Weight:
    if name not in spec.weights or spec.weights[name] is None:
        raise ParseError(f"--{name} is required")
    k, n = rs.zero_weight().ranks
    return parse_weight_spec(spec.weights[name], k, n)


def _fmt_matrix(M: GrassmannMatrix) -> str:
    return "[" + "; ".join(", ".join(str(e) for e in row) for row in M.entries) + "]"


def _load_json(path: str) -> Any:
    try:
        return json.loads(Path(path).read_text() if path != "-" else sys.stdin.read())
    except (OSError, json.JSONDecodeError) as e:
        raise ParseError(f"cannot read JSON from {path}: {e}") from None


def _load_matrix(path: str) -> SuperMatrix:
    try:
        return SuperMatrix.from_json(_load_json(path))
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"{path} is not a SuperMatrix JSON: {e}") from None


def _load_point(path: str) -> ospgeo.ChartPoint:
    try:
        return ospgeo.ChartPoint.from_json(_load_json(path))
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"{path} is not a ChartPoint JSON: {e}") from None


# --------------------------------------------------------------------------
# subcommands


def cmd_roots(spec: CommandSpec, out) -> int:
    rs = _root_system(spec)
    if spec.json:
        _emit(rs.to_json(), out)
        return EXIT_OK
    even, odd = rs.dimension
    out.write(f"{rs.name}  dim {even}|{odd}  split {rs.split}\n")
    out.write("simple: " + "  ".join(str(r) for r in rs.simple) + "\n")
    out.write(f"rho: {format_weight(rho_vector(rs))}\n")
    for r in rs.positive_sorted:
        c = classify_root(rs, r)
        tags = [c.parity] + (["isotropic"] if c.isotropic else []) + (["compact" if c.compact else "noncompact"])
        out.write(f"  {rs.height(r)!s:>3}  {r!s:<14} {' '.join(tags)}\n")
    return EXIT_OK


def cmd_admissible(spec: CommandSpec, out) -> int:
    rs = _root_system(spec)
    if spec.options.get("enumerate"):
        systems = enumerate_admissible(rs, mode=spec.options.get("mode", "hermitian"))
        if spec.json:
            _emit({"algebra": rs.name, "count": len(systems),
                   "systems": [[r.to_json() for r in sorted(s)] for s in systems]}, out)
            return EXIT_OK
        out.write(f"{rs.name}: {len(systems)} admissible positive systems\n")
        for i, s in enumerate(systems, 1):
            simple = rs.with_positive(s).simple
            out.write(f"  [{i}] simple: " + "  ".join(str(r) for r in simple) + "\n")
        return EXIT_OK
    rep = is_admissible(rs)
    if spec.json:
        _emit({"algebra": rs.name, "admissible": rep.admissible,
               "violations": [[v[0]] + [r.to_json() for r in v[1:]] for v in rep.violations],
               "literal_bullet_holds": rep.literal_bullet_holds,
               "literal_bullet_failures": [[r.to_json() for r in f] for f in rep.literal_bullet_failures]}, out)
    else:
        out.write(f"{rs.name}: admissible={rep.admissible} literal_bullet={rep.literal_bullet_holds}\n")
        for v in rep.violations:
            out.write(f"  {v[0]}: {' '.join(str(r) for r in v[1:])}\n")
    return EXIT_OK if rep.admissible else EXIT_INVALID


def cmd_mult(spec: CommandSpec, out) -> int:
    rs = _root_system(spec)
    depth = spec.depth if spec.depth is not None else 4
    kind = spec.options.get("kind", "partition")
    if kind == "partition":
        table = weights.partition_table(rs, depth)
    elif kind == "spectrum":
        table = weights.spectrum_table(_weight(spec, "lambda", rs), rs, depth)
    else:
        raise ParseError(f"unknown table kind {kind!r}")
    if spec.json:
        _emit({"algebra": rs.name, "kind": kind, "depth": depth,
               "entries": [{"weight": w.to_json(), "mult": m, "depth": table.depths.get(w, 0)}
                           for w, m in table.rows()]}, out)
    else:
        out.write(table.to_tsv())
    return EXIT_OK


def cmd_verma(spec: CommandSpec, out) -> int:
    rs = _root_system(spec)
    lam = _weight(spec, "lambda", rs)
    depth = spec.depth if spec.depth is not None else 3
    rows = []
    for dd in range(depth + 1):
        for d in weights.cone_weights(rs, dd):
            m = weights.verma_weight_mult(lam, d, rs)
            if m:
                rows.append((dd, lam - d, m))
    if spec.json:
        _emit({"algebra": rs.name, "lambda": lam.to_json(), "depth": depth,
               "entries": [{"depth": dd, "weight": w.to_json(), "mult": m} for dd, w, m in rows]}, out)
    else:
        out.write(f"Verma module of highest weight {format_weight(lam)} on {rs.name}\n")
        for dd, w, m in rows:
            out.write(f"  {dd}\t{format_weight(w)}\t{m}\n")
    return EXIT_OK


def cmd_shapovalov(spec: CommandSpec, out) -> int:
    rs = _root_system(spec)
    lam = _weight(spec, "lambda", rs)
    depth = spec.depth if spec.depth is not None else 3
    if spec.weights.get("d"):
        pm = contravariant_matrix(lam, _weight(spec, "d", rs), rs)
        if spec.json:
            _emit({"summary": pm.summary(), "entries": [[str(x) for x in r] for r in pm.entries]}, out)
        else:
            out.write(pm.to_tsv())
        return EXIT_OK
    table = rank_table(lam, rs, depth)
    for row in table:
        row["full"] = row["rank"] == row["size"]
    if spec.json:
        _emit({"algebra": rs.name, "lambda": lam.to_json(), "depth": depth, "ranks": table}, out)
    else:
        out.write("depth\td\tsize\trank\tfull\n")
        for row in table:
            d = Weight.from_json(row["d"])
            out.write(f"{row['depth']}\t{format_weight(d)}\t{row['size']}\t{row['rank']}\t{row['full']}\n")
    return EXIT_OK


def cmd_osp(spec: CommandSpec, out) -> int:
    m, n = spec.options["m"], spec.options["n"]
    try:
        ctx = ospgeo.make_context(m, n)
    except ValueError as e:
        raise ValidationError(str(e)) from None
    action = spec.options.get("action", "basis")
    if action == "basis":
        basis, dims = ospgeo.osp_lie_basis(ctx)
        if spec.json:
            _emit({"m": m, "n": n, "dim": list(dims), "basis": [X.to_json() for X in basis]}, out)
        else:
            out.write(f"osp({m}|{2 * n}): dim {dims[0]}|{dims[1]}\n")
            for b in ospgeo._shape_basis(m, n):
                out.write(f"  {'odd ' if b.parity else 'even'} {b.name}\n")
        return EXIT_OK
    A = _load_matrix(spec.inputs["matrix"])
    try:
        rep = ospgeo.osp_membership(A, ctx)
        real = {w: ospgeo.real_form_membership(A, w, ctx) for w in ("real", "D")} if rep.member else {}
    except ValueError as e:
        raise ValidationError(str(e)) from None
    if spec.json:
        data = rep.to_json()
        data["real_forms"] = real
        _emit(data, out)
    else:
        out.write(f"member={rep.member} agree={rep.agree}")
        out.write("".join(f" {k}={v}" for k, v in real.items()) + "\n")
        for name, M in sorted(rep.block_residuals.items()):
            out.write(f"  {name}: {'0' if M.is_zero() else 'nonzero'}\n")
    return EXIT_OK if rep.member else EXIT_INVALID


def _random_point(spec: CommandSpec) -> ospgeo.ChartPoint:
    m, n = spec.options["m"], spec.options["n"]
    rng = random.Random(spec.options.get("seed", 0))
    return ospgeo.random_disc_point(rng, m, n, spec.options.get("gens") or default_generators())


def cmd_siegel(spec: CommandSpec, out) -> int:
    action = spec.options.get("action")
    g = _load_matrix(spec.inputs["matrix"])
    try:
        if action == "normalize":
            sol = ospgeo.lagrangian_normalize(g)
            p = sol.point
            extra = {"u": sol.u.to_json(), "xi": sol.xi.to_json(), "v": sol.v.to_json(), "w": sol.w.to_json()}
        else:
            p = _load_point(spec.inputs["point"])
            p.validate()
            if not ospgeo.is_member(g):
                raise ValidationError("g is not in Osp")
            p = ospgeo.fractional_action(g, p)
            extra = {}
    except (ValueError, ZeroDivisionError) as e:
        raise ValidationError(str(e)) from None
    if spec.json:
        _emit(dict(p.to_json(), **extra) if not spec.options.get("point_only") else p.to_json(), out)
    else:
        out.write(f"chart={p.chart} constraint={p.satisfies_constraint()} siegel={p.is_siegel()}\n")
        out.write(f"z = {_fmt_matrix(p.z)}\nzeta = {_fmt_matrix(p.zeta)}\n")
    return EXIT_OK


def cmd_cayley(spec: CommandSpec, out) -> int:
    try:
        if spec.inputs.get("point"):
            p = _load_point(spec.inputs["point"])
        else:
            p = _random_point(spec)
        p.validate()
        if spec.options.get("inverse"):
            img = ospgeo.cayley_inverse(p)
        else:
            img = ospgeo.cayley_transform(p)
        img.validate()
    except (ValueError, ZeroDivisionError) as e:
        raise ValidationError(str(e)) from None
    if spec.json:
        _emit({"input": p.to_json(), "image": img.to_json()}, out)
    else:
        out.write(f"{p.chart} -> {img.chart}: constraint={img.satisfies_constraint()} "
                  f"siegel={img.is_siegel()} disc={img.is_disc()}\n")
        out.write(f"z' = {_fmt_matrix(img.z)}\nzeta' = {_fmt_matrix(img.zeta)}\n")
    return EXIT_OK


COMMANDS = {"roots": cmd_roots, "admissible": cmd_admissible, "mult": cmd_mult, "verma": cmd_verma,
            "shapovalov": cmd_shapovalov, "osp": cmd_osp, "siegel": cmd_siegel, "cayley": cmd_cayley}


def run_command(spec: CommandSpec, out=None) -> int:
    out = out or sys.stdout
    try:
        return COMMANDS[spec.command](spec, out)
    except ParseError as e:
        sys.stderr.write(f"parse error: {e}\n")
        return EXIT_PARSE
    except ValidationError as e:
        sys.stderr.write(f"invalid: {e}\n")
        return EXIT_INVALID


# --------------------------------------------------------------------------
# argument parsing


def _algebra_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", required=True, choices=["A", "B", "C", "D", "a", "b", "c", "d"])
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--split", default=None, help="compact/noncompact split (lemma, kd, even, cartan)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="superhc", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("roots", help="root system with positive system and compactness")
    _algebra_args(p)

    p = sub.add_parser("admissible", help="admissibility of the default system, or enumeration")
    _algebra_args(p)
    p.add_argument("--enumerate", action="store_true")
    p.add_argument("--mode", default="hermitian", choices=["hermitian", "exhaustive"])

    p = sub.add_parser("mult", help="partition or torus-spectrum table")
    _algebra_args(p)
    p.add_argument("--kind", default="partition", choices=["partition", "spectrum"])
    p.add_argument("--lambda", dest="lam")
    p.add_argument("--depth", type=int)

    p = sub.add_parser("verma", help="Verma weight multiplicities")
    _algebra_args(p)
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--depth", type=int)

    p = sub.add_parser("shapovalov", help="contravariant pairing ranks")
    _algebra_args(p)
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--d", help="a single weight d; prints the matrix")
    p.add_argument("--depth", type=int)

    p = sub.add_parser("osp", help="Osp(m|2n) membership check or Lie basis")
    p.add_argument("action", choices=["check", "basis"])
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--matrix", help="SuperMatrix JSON file (check)")

    p = sub.add_parser("siegel", help="fractional action or chart normalization")
    p.add_argument("action", choices=["act", "normalize"])
    p.add_argument("--matrix", required=True, help="SuperMatrix JSON file")
    p.add_argument("--point", help="ChartPoint JSON file (act)")

    p = sub.add_parser("cayley", help="Cayley transform of a disc point (or the inverse)")
    p.add_argument("--point", help="ChartPoint JSON file; default is a random disc point")
    p.add_argument("--inverse", action="store_true")
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--gens", type=int, help=f"odd generators for random points (default ${GENERATORS_ENV} or 4)")

    for p in sub.choices.values():
        p.add_argument("--json", action="store_true")
    return ap


def spec_from_args(ns: argparse.Namespace) -> CommandSpec:
    spec = CommandSpec(ns.command, json=ns.json)
    if hasattr(ns, "family"):
        spec.family, spec.k, spec.n = ns.family.upper(), ns.k, ns.n
        spec.options["split"] = ns.split
    for name in ("lam", "d"):
        if getattr(ns, name, None) is not None:
            spec.weights["lambda" if name == "lam" else name] = getattr(ns, name)
    spec.depth = getattr(ns, "depth", None)
    for name in ("matrix", "point"):
        if getattr(ns, name, None):
            spec.inputs[name] = getattr(ns, name)
    for name in ("enumerate", "mode", "kind", "action", "inverse", "seed", "gens"):
        if hasattr(ns, name):
            spec.options[name] = getattr(ns, name)
    if ns.command in ("osp", "cayley"):
        spec.options["m"], spec.options["n"] = ns.m, ns.n
    if ns.command == "osp" and ns.action == "check" and not ns.matrix:
        spec.inputs["matrix"] = "-"
    return spec


def main(argv: Sequence[str] | None = None) -> int:
    args = list(sys.argv[1:] if argv is None else argv)
    # let "-1;..." style weights through argparse
    args = [a.replace("−", "-") for a in args]
    ns = build_parser().parse_args(args)
    try:
        spec = spec_from_args(ns)
        if spec.depth is not None and spec.depth < 0:
            raise ParseError("--depth must be nonnegative")
        return run_command(spec)
    except ParseError as e:
        sys.stderr.write(f"parse error: {e}\n")
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
