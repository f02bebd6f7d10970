"""Command-line interface.

Graph specs (``--h``, ``--f``, ``--g``)::

    K<d>            clique on d vertices (single digit), e.g. K3, K4
    K<dd..>         complete multipartite with single-digit parts, e.g. K13 = K_{1,3}, K222
    Kab:a,b,..      complete multipartite with the given part sizes
    clique:r  path:n  cycle:n  star:t  empty:n
    P<n> C<n> S<t> E<n>
                    path / cycle on n vertices, star with t leaves, edgeless graph
    F2              two triangles sharing a vertex
    turan:n,k       Turán graph T(n, k)
    union:a,b,..    disjoint union of cliques
    graph6:<code>   graph6 string
    json:<object>   {"n": .., "edges": [[u, v], ..]} or {"kind": .., "parameters": [..]}
    @<file>         a JSON file holding such an object

Exit codes: 0 success, 2 invalid input, 3 budget exceeded, 4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
import time
from typing import Callable

from . import __version__
from .coloring import criticality, critical_r_witness, embedding_safety_check
from .constructions import (
    FamilySpec,
    assemble_h3,
    book_f2,
    build,
    build_h2,
    parse_graph_json,
    parse_h2,
    parse_h3,
)
from .count import copy_degree, count_copies
from .errors import BudgetExceeded, InvalidInstance, InvariantViolation
from .graph import Graph
from .graph6 import Graph6Error, emit_graph6, parse_graph6
from .multipartite import PartSizes, optimize_parts, realize, turan_parts
from .search import SearchConfig, enumerate_free, ex_brute, min_copy_degree_audit, random_clique_free, symmetrize_search
from .stability import classify, instance_k, multipartite_distance, near_extremal_profile

SCHEMA_VERSION = 1

EXIT_OK, EXIT_INPUT, EXIT_BUDGET, EXIT_INVARIANT = 0, 2, 3, 4


class SpecError(ValueError):
    pass


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise SpecError(f"expected comma-separated integers, got {text!r}") from exc


_NAMED: dict[str, Callable[[tuple[int, ...]], Graph]] = {
    "clique": lambda p: build(FamilySpec("clique", p)),
    "path": lambda p: build(FamilySpec("path", p)),
    "cycle": lambda p: build(FamilySpec("cycle", p)),
    "star": lambda p: build(FamilySpec("star", p)),
    "empty": lambda p: Graph.empty(p[0]),
    "turan": lambda p: build(FamilySpec("turan", p)),
    "union": lambda p: build(FamilySpec("unionOfCliques", p)),
    "Kab": lambda p: build(FamilySpec("completeMultipartite", p)),
}


def parse_graph_spec(text: str) -> Graph:
    text = text.strip()
    try:
        if text.startswith("graph6:"):
            return parse_graph6(text[len("graph6:"):])
        if text.startswith("json:"):
            return parse_graph_json(json.loads(text[len("json:"):]))
        if text.startswith("@"):
            with open(text[1:]) as fh:
                return parse_graph_json(json.load(fh))
        if ":" in text:
            name, _, args = text.partition(":")
            if name not in _NAMED:
                raise SpecError(f"unknown graph family {name!r}")
            return _NAMED[name](_ints(args))
        if text == "F2":
            return book_f2()
        m = re.fullmatch(r"K(\d+)", text)
        if m:
            digits = m.group(1)
            if len(digits) == 1:
                return Graph.complete(int(digits))
            return realize(PartSizes.of(int(d) for d in digits))
        m = re.fullmatch(r"([PCSE])(\d+)", text)
        if m:
            kind = {"P": "path", "C": "cycle", "S": "star", "E": "empty"}[m.group(1)]
            return _NAMED[kind]((int(m.group(2)),))
    except (Graph6Error, SpecError):
        raise
    except (ValueError, KeyError, TypeError, OSError, IndexError) as exc:
        raise SpecError(f"cannot build graph from {text!r}: {exc}") from exc
    raise SpecError(f"unrecognised graph spec {text!r}")


def _graph_json(g: Graph) -> dict:
    return {"graph6": emit_graph6(g), "n": g.n, "edges": [list(e) for e in g.edges()]}


class Reporter:
    def __init__(self, args: argparse.Namespace, command: str, parameters: dict, seeds: dict | None = None, budgets: dict | None = None):
        self.args = args
        self.start = time.perf_counter()
        self.manifest = {
            "command": command,
            "parameters": parameters,
            "seeds": seeds or {},
            "budgets": budgets or {},
            "toolVersion": __version__,
        }

    def emit(self, body: dict, out=None) -> None:
        manifest = dict(self.manifest)
        manifest["wallTime"] = None if self.args.omit_timing else round(time.perf_counter() - self.start, 6)
        report = {"schemaVersion": SCHEMA_VERSION, "manifest": manifest, **body}
        (out or sys.stdout).write(json.dumps(report, indent=2) + "\n")


def _config(args: argparse.Namespace) -> SearchConfig:
    return SearchConfig(max_nodes=args.max_nodes, maximal_only=args.maximal_only, jobs=args.jobs)


def cmd_count(args: argparse.Namespace) -> int:
    h, g = parse_graph_spec(args.h), parse_graph_spec(args.g)
    rep = Reporter(args, "count", {"h": args.h, "g": args.g, "degrees": args.degrees})
    body: dict = {"h": _graph_json(h), "g": _graph_json(g), "count": str(count_copies(h, g))}
    if args.degrees:
        body["degrees"] = [str(copy_degree(h, g, v)) for v in range(g.n)]
    rep.emit(body)
    return EXIT_OK


def _search_params(args: argparse.Namespace) -> dict:
    return {"n": args.n, "h": getattr(args, "h", None), "f": args.f, "maximalOnly": args.maximal_only}


def cmd_ex(args: argparse.Namespace) -> int:
    h, f = parse_graph_spec(args.h), parse_graph_spec(args.f)
    rep = Reporter(args, "ex", _search_params(args), budgets={"maxNodes": args.max_nodes})
    try:
        report = ex_brute(args.n, h, f, _config(args))
    except BudgetExceeded as exc:
        partial = exc.progress.get("partial")
        body = {"partial": True, "error": str(exc)}
        if partial is not None:
            body["report"] = partial.to_json()
        rep.emit(body)
        return EXIT_BUDGET
    if args.witnesses:
        for w in report.witnesses:
            sys.stdout.write(w + "\n")
        return EXIT_OK
    body = {"partial": False, "report": report.to_json()}
    if args.audit:
        try:
            k = instance_k(h, f)
        except InvalidInstance:
            k = None
        if k is not None and report.witnesses:
            body["audit"] = [row.to_json() for row in min_copy_degree_audit(report, h, k)]
    rep.emit(body)
    return EXIT_OK


def cmd_enumerate(args: argparse.Namespace) -> int:
    f = parse_graph_spec(args.f)
    for g in enumerate_free(args.n, f, _config(args)):
        sys.stdout.write(emit_graph6(g) + "\n")
    return EXIT_OK


def cmd_classify(args: argparse.Namespace) -> int:
    h, f = parse_graph_spec(args.h), parse_graph_spec(args.f)
    rep = Reporter(args, "classify", _search_params(args), budgets={"maxNodes": args.max_nodes})
    verdict = classify(args.n, h, f, _config(args))
    rep.emit({"verdict": verdict.to_json()})
    return EXIT_OK


def cmd_profile(args: argparse.Namespace) -> int:
    h, f = parse_graph_spec(args.h), parse_graph_spec(args.f)
    params = dict(_search_params(args), slack=args.slack)
    rep = Reporter(args, "profile", params, budgets={"maxNodes": args.max_nodes})
    try:
        rows = near_extremal_profile(args.n, h, f, args.slack, _config(args))
    except BudgetExceeded as exc:
        partial = exc.progress.get("partial") or []
        rep.emit({
            "partial": True,
            "error": str(exc),
            "rows": [{"graph6": g6, "count": str(c)} for c, g6 in partial],
        })
        return EXIT_BUDGET
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["graph6", "count", "distance", "partition"])
        for r in rows:
            writer.writerow([r.graph6, r.count, r.distance.cost, json.dumps([list(c) for c in r.distance.partition])])
        sys.stdout.write(buf.getvalue())
        return EXIT_OK
    rep.emit({
        "partial": False,
        "rows": [r.to_json() for r in rows],
        "maxDistance": max((r.distance.cost for r in rows), default=None),
    })
    return EXIT_OK


def cmd_criticality(args: argparse.Namespace) -> int:
    f = parse_graph_spec(args.f)
    rep = Reporter(args, "criticality", {"f": args.f, "safetyH": args.safety_h, "parts": args.parts},
                   budgets={"safetyBudget": args.budget})
    body = criticality(f).to_json()
    w = critical_r_witness(f)
    body["r"] = None if w is None else w.r
    body["rWitness"] = None if w is None else w.to_json()
    body["safety"] = None
    if args.safety_h:
        if w is None:
            raise SpecError("F has no color-critical vertex, so r is undefined")
        if not args.parts:
            raise SpecError("--parts is required with --safety-h")
        h = parse_graph_spec(args.safety_h)
        body["safety"] = embedding_safety_check(h, w.r, _ints(args.parts), args.budget).to_json()
    rep.emit(body)
    return EXIT_OK


def cmd_optimize(args: argparse.Namespace) -> int:
    h = parse_graph_spec(args.h)
    rep = Reporter(args, "optimize", {"h": args.h, "n": args.n, "k": args.k, "mode": args.mode, "restarts": args.restarts},
                   seeds={"seed": args.seed}, budgets={"budget": args.budget})
    try:
        result = optimize_parts(h, args.n, args.k, args.mode, budget=args.budget, restarts=args.restarts, seed=args.seed)
    except BudgetExceeded as exc:
        rep.emit({"partial": True, "error": str(exc)})
        return EXIT_BUDGET
    rep.emit({"result": result.to_json(), "turanParts": list(turan_parts(args.n, args.k).sizes)})
    return EXIT_OK


def cmd_distance(args: argparse.Namespace) -> int:
    g = parse_graph_spec(args.g)
    rep = Reporter(args, "distance", {"g": args.g, "k": args.k, "mode": args.mode, "restarts": args.restarts},
                   seeds={"seed": args.seed}, budgets={"budget": args.budget})
    try:
        d = multipartite_distance(g, args.k, args.mode, budget=args.budget, restarts=args.restarts, seed=args.seed)
    except BudgetExceeded as exc:
        rep.emit({"partial": True, "error": str(exc), "heuristicCost": exc.progress.get("heuristic")})
        return EXIT_BUDGET
    rep.emit({"distance": d.to_json()})
    return EXIT_OK


def cmd_symmetrize(args: argparse.Namespace) -> int:
    import random

    h = parse_graph_spec(args.h)
    if args.start:
        g0 = parse_graph_spec(args.start)
    elif args.n:
        g0 = random_clique_free(args.n, args.k, random.Random(args.seed))
    else:
        raise SpecError("give --start or --n")
    rep = Reporter(args, "symmetrize", {"h": args.h, "k": args.k, "start": emit_graph6(g0), "restarts": args.restarts},
                   seeds={"seed": args.seed})
    result = symmetrize_search(g0, h, args.k, args.restarts, args.seed)
    rep.emit({"result": result.to_json()})
    return EXIT_OK


def cmd_construct(args: argparse.Namespace) -> int:
    text = args.spec
    try:
        if text.startswith("@"):
            with open(text[1:]) as fh:
                data = json.load(fh)
        else:
            data = json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise SpecError(f"cannot read construction spec: {exc}") from exc
    rep = Reporter(args, "construct", {"spec": data})
    from .coloring import chromatic_number

    try:
        if "h3" in data:
            res = assemble_h3(parse_h3(data["h3"]))
            body = {
                "graph": _graph_json(res.graph),
                "chi": res.chi,
                "valid": res.valid,
                "reason": res.reason,
                "anchorCliques": [None if c is None else list(c) for c in res.certificates],
            }
        else:
            if "h2" in data:
                g = build_h2(parse_h2(data["h2"]))
            elif "family" in data:
                g = parse_graph_json(data["family"])
            else:
                g = parse_graph_json(data)
            body = {"graph": _graph_json(g), "chi": chromatic_number(g)}
    except (KeyError, TypeError) as exc:
        raise SpecError(f"malformed construction spec: {exc}") from exc
    rep.emit(body)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="turanlab", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--omit-timing", action="store_true", help="write wallTime as null (byte-stable output)")

    def search(p: argparse.ArgumentParser) -> None:
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--f", required=True)
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--max-nodes", type=int, default=SearchConfig.max_nodes)
        p.add_argument("--maximal-only", action="store_true")

    p = sub.add_parser("count", help="N(H, G)")
    p.add_argument("--h", required=True)
    p.add_argument("--g", required=True)
    p.add_argument("--degrees", action="store_true")
    common(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("ex", help="ex(n, H, F) by exhaustive search")
    p.add_argument("--h", required=True)
    search(p)
    p.add_argument("--witnesses", action="store_true", help="stream witness graph6 lines instead of JSON")
    p.add_argument("--audit", action="store_true", help="add per-vertex copy degrees against T(n, k)")
    common(p)
    p.set_defaults(func=cmd_ex)

    p = sub.add_parser("enumerate", help="stream F-free graphs as graph6")
    search(p)
    common(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("classify", help="Turán-good verdict at one n")
    p.add_argument("--h", required=True)
    search(p)
    common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("profile", help="near-extremal graphs and their multipartite distances")
    p.add_argument("--h", required=True)
    search(p)
    p.add_argument("--slack", type=int, default=0, help="absolute slack: keep graphs with count >= ex - slack")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    common(p)
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("criticality", help="color-critical vertices/edges and r")
    p.add_argument("--f", required=True)
    p.add_argument("--safety-h", help="also run the embedding-safety check for this H")
    p.add_argument("--parts", help="part sizes for the safety check, e.g. 3,3")
    p.add_argument("--budget", type=int, default=100_000)
    common(p)
    p.set_defaults(func=cmd_criticality)

    p = sub.add_parser("optimize", help="best complete k-partite host")
    p.add_argument("--h", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--mode", choices=("exact", "hillclimb"), default="exact")
    p.add_argument("--restarts", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=1_000_000)
    common(p)
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("distance", help="edit distance to complete multipartite")
    p.add_argument("--g", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--mode", choices=("exact", "heuristic"), default="exact")
    p.add_argument("--restarts", type=int, default=32)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=3**14)
    common(p)
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("symmetrize", help="Zykov symmetrization hill-climb")
    p.add_argument("--h", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--start", help="seed graph spec (must be K_{k+1}-free)")
    p.add_argument("--n", type=int, help="random K_{k+1}-free seed on n vertices")
    p.add_argument("--restarts", type=int, default=32)
    p.add_argument("--seed", type=int, default=0)
    common(p)
    p.set_defaults(func=cmd_symmetrize)

    p = sub.add_parser("construct", help="build a family / H2 / H3 graph from JSON")
    p.add_argument("--spec", required=True, help="JSON text or @file")
    common(p)
    p.set_defaults(func=cmd_construct)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (InvariantViolation, ArithmeticError) as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (Graph6Error, SpecError, InvalidInstance, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
