"""Command-line front end: ``bipramsey gen|random|verify|route|check-cert|analyze``."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .bigraph import RED, BLUE, min_degree, parse, serialize
from .errors import BelowRegimeError, BipramseyError, InternalError, PreconditionError, SearchCapExceeded
from .families import FAMILIES, FamilySpec
from .harness import (LAWS, InstanceSource, check_certificate, family_grid, random_instance,
                      random_sources, verify)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class CliError(Exception):
    def __init__(self, msg: str, code: int = EXIT_USAGE):
        super().__init__(msg)
        self.code = code


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _write(path: Optional[str], text: str):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from None


def parse_source(text: str) -> InstanceSource:
    """``family:NAME:N[:K]``, ``random:N:PR:PB[:FLOOR[:SEED]]`` or a graph file path."""
    parts = text.split(":")
    try:
        if parts[0] == "family" and len(parts) in (3, 4):
            k = int(parts[3]) if len(parts) == 4 else 0
            return InstanceSource("family", family=FamilySpec(parts[1], int(parts[2]), k))
        if parts[0] == "random" and 4 <= len(parts) <= 6:
            floor = int(parts[4]) if len(parts) > 4 else 0
            seed = int(parts[5]) if len(parts) > 5 else 0
            return InstanceSource("random", n=int(parts[1]), red_prob=Fraction(parts[2]),
                                  blue_prob=Fraction(parts[3]), min_degree_floor=floor, seed=seed)
    except ValueError as exc:
        raise CliError(f"bad source {text!r}: {exc}") from None
    return InstanceSource("file", path=text)


def _load(text: str):
    src = parse_source(text)
    if src.kind == "file":
        try:
            return parse(_read(src.path))
        except ValueError as exc:
            raise CliError(f"{src.path}: {exc}") from None
    return src.load()


# -- commands -------------------------------------------------------------

def cmd_gen(args) -> int:
    g, claims = FamilySpec(args.family, args.n, args.k).generate()
    text = serialize(g)
    sidecar = json.dumps(claims.to_dict(), sort_keys=True)
    if args.out in (None, "-"):
        sys.stdout.write(text + f"# claims {sidecar}\n")
    else:
        _write(args.out, text)
        _write(args.out + ".claims.json", sidecar + "\n")
    return EXIT_OK


def cmd_random(args) -> int:
    g = random_instance(args.n, args.red_prob, args.blue_prob, args.seed, args.min_degree)
    _write(args.out, serialize(g))
    return EXIT_OK


def cmd_verify(args) -> int:
    sources = [parse_source(s) for s in args.sources]
    if args.grid:
        fams = tuple(args.families.split(",")) if args.families else FAMILIES
        bad = [f for f in fams if f not in FAMILIES]
        if bad:
            raise CliError(f"unknown families {bad}")
        sources += family_grid(args.grid, fams)
    if args.random_count:
        sources += random_sources(args.random_count, args.seed, args.random_max_n)
    if not sources and not args.exhaustive:
        raise CliError("nothing to verify: give sources, --grid, --random-count or --exhaustive")
    laws = tuple(args.laws.split(",")) if args.laws else LAWS
    report = verify(sources, laws, cap=args.cap, eps=args.eps, exhaustive_n=args.exhaustive, jobs=args.jobs)
    if args.out:
        _write(args.out + ".csv", report.to_csv())
        _write(args.out + ".json", report.to_json())
    else:
        sys.stdout.write(report.to_csv())
        sys.stdout.write(report.to_json())
    counts = report.counts()
    for law in laws:
        c = counts[law]
        print(f"{law}: pass={c['pass']} fail={c['fail']} n/a={c['n/a']} report={c['report']}",
              file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_FAIL


def _load_witness(path: str, n: int):
    from .structure import ExtremalWitness
    try:
        data = json.loads(_read(path))
    except json.JSONDecodeError as exc:
        raise CliError(f"witness invalid: {exc}") from None
    if not isinstance(data, dict):
        raise CliError("witness invalid: expected a JSON object")
    return ExtremalWitness.from_dict(data, n)


def cmd_route(args) -> int:
    from .extremal import RouteParams, degree_problem, extremal_route, find_witness

    g = _load(args.graph)
    params = RouteParams(args.gamma, args.eta)
    if not args.relaxed:
        problems = params.pipeline_problems(g.n)
        deficit = degree_problem(g, params.gamma)
        if deficit:
            problems.append(deficit)
        if problems:
            raise PreconditionError("; ".join(problems))
    if args.witness:
        w = _load_witness(args.witness, g.n).with_eta(args.eta)
    else:
        w = find_witness(g, args.eta)
        if w is None:
            raise CliError(f"no witness found at eta={args.eta}")
    cert = extremal_route(g, w, params, check_hypotheses=not args.relaxed)
    text = json.dumps(cert.to_dict(), indent=2) + "\n"
    _write(args.out, text)
    if args.out not in (None, "-"):
        print(f"cycle {cert.cycle.length} ({cert.cycle.color}), path {cert.path.order} "
              f"({cert.path.color}); trace: {' '.join(cert.branch_trace)}", file=sys.stderr)
    return EXIT_OK


def cmd_check_cert(args) -> int:
    g = _load(args.graph)
    try:
        cert = json.loads(_read(args.cert))
    except json.JSONDecodeError as exc:
        raise CliError(f"certificate is not valid JSON: {exc}", EXIT_FAIL) from None
    err = check_certificate(g, cert)
    if err:
        print(f"invalid: {err}", file=sys.stderr)
        return EXIT_FAIL
    print("ok")
    return EXIT_OK


def cmd_analyze(args) -> int:
    from .extremal import find_witness
    from .structure import best_balanced_component, best_connected_matching, mono_components

    g = _load(args.graph)
    out = {"n": g.n, "min_degree": min_degree(g), "components": {}}
    for c in (RED, BLUE):
        out["components"][str(c)] = [
            {"xs": [i for i in range(g.n) if k.xs >> i & 1], "ys": [i for i in range(g.n) if k.ys >> i & 1]}
            for k in mono_components(g, c)]
    m = best_connected_matching(g)
    out["matching"] = {"color": str(m.color), "edges": [list(e) for e in m.edges]}
    if g.num_edges():
        b = best_balanced_component(g)
        out["best_component"] = {"color": str(b.color), "id": b.id, "min_side": b.min_side}
    w = find_witness(g, args.eta)
    out["witness"] = w.to_dict() if w else None
    _write(args.out, json.dumps(out, indent=2, sort_keys=True) + "\n")
    return EXIT_OK


# -- parser ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bipramsey", description="Two-colored balanced bipartite graph toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("gen", help="generate a family instance")
    s.add_argument("family", choices=FAMILIES)
    s.add_argument("n", type=int)
    s.add_argument("k", type=int, nargs="?", default=0)
    s.add_argument("--out", help="graph file; claims go to OUT.claims.json")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("random", help="sample a random two-coloring")
    s.add_argument("n", type=int)
    s.add_argument("--red-prob", type=_fraction, default=Fraction(1, 2))
    s.add_argument("--blue-prob", type=_fraction, default=Fraction(1, 2))
    s.add_argument("--min-degree", type=int, default=0, help="rejection-sample until reached")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out")
    s.set_defaults(func=cmd_random)

    s = sub.add_parser("verify", help="check laws on a batch of instances")
    s.add_argument("sources", nargs="*", help="graph files, family:NAME:N[:K] or random:N:PR:PB[:FLOOR[:SEED]]")
    s.add_argument("--grid", type=int, default=0, help="add every family instance with n <= GRID")
    s.add_argument("--families", help="comma-separated subset of families for --grid")
    s.add_argument("--random-count", type=int, default=0)
    s.add_argument("--random-max-n", type=int, default=10)
    s.add_argument("--exhaustive", type=int, action="append", default=[], metavar="N",
                   help="all single-color assignments of K_{N,N} (path-GL, cycle-cor1)")
    s.add_argument("--laws", help=f"comma-separated subset of {','.join(LAWS)}")
    s.add_argument("--cap", type=int, default=12)
    s.add_argument("--eps", type=_fraction, default=Fraction(0))
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--out", help="write OUT.csv and OUT.json")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("route", help="run the extremal routing and emit a certificate")
    s.add_argument("graph")
    s.add_argument("--witness", help="witness JSON; searched for when omitted")
    s.add_argument("--gamma", type=_fraction, default=Fraction(1, 4))
    s.add_argument("--eta", type=_fraction, default=Fraction(0))
    s.add_argument("--relaxed", action="store_true", help="skip the hypothesis checks")
    s.add_argument("--out")
    s.set_defaults(func=cmd_route)

    s = sub.add_parser("check-cert", help="independently validate a certificate")
    s.add_argument("graph")
    s.add_argument("cert")
    s.set_defaults(func=cmd_check_cert)

    s = sub.add_parser("analyze", help="components, best matching and witness as JSON")
    s.add_argument("graph")
    s.add_argument("--eta", type=_fraction, default=Fraction(0))
    s.add_argument("--out")
    s.set_defaults(func=cmd_analyze)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (PreconditionError, SearchCapExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BelowRegimeError as exc:
        print(f"below regime: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except InternalError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except BipramseyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
