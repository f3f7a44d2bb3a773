"""
Command-line interface.

Exit codes: 0 success, 1 counterexample or mismatch, 2 usage or parse error,
3 result truncated by a length or depth cap.
"""
from __future__ import annotations

import argparse
import json
import sys

from .checks import (CheckReport, check_closure_theorem, check_dyer, find_counterexample, reproduce,
                     scan_idempotence, REPRODUCTIONS)
from .closure import PreclosureResult, bruhat_preclosure, infinite_closure, iterate_preclosure
from .errors import CoxeterError, NoJoin, RootDepthExceeded, TruncationUnsound, UnknownGenerator
from .matrix import INF, PRESET_NAMES, load_matrix, preset
from .orders import bruhat_graph, graph_to_dot, join_R, meet_R, restrict_labels
from .system import CoxeterSystem, build_system
from .twisted import (TwistDescriptor, check_acyclic, is_initial_section_finite, twisted_graph,
                      twisted_inversion, twisted_length_table, twisted_leq)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_TRUNCATED = 0, 1, 2, 3

# subsets of T are searched exhaustively by default only up to this many reflections
EXHAUSTIVE_DEFAULT_LIMIT = 20


class UsageError(Exception):
    pass


def _common(suppress: bool = False) -> argparse.ArgumentParser:
    """Global flags.  Subcommand copies suppress defaults so values given
    before the subcommand are not overwritten."""
    def default(value):
        return argparse.SUPPRESS if suppress else value

    p = argparse.ArgumentParser(add_help=False)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--group", default=default(None),
                   help=f"preset name: {', '.join(PRESET_NAMES)} (also A<n>, B<n>, D<n>, E6-E8)")
    g.add_argument("--matrix", default=default(None), help="JSON Coxeter matrix file (0 encodes an infinite bond)")
    p.add_argument("--cap", type=int, default=default(None),
                   help="length cap for searches (default: longest element length)")
    p.add_argument("--depth-cap", type=int, default=default(None),
                   help="root registry depth (default 64, or cap+2 for infinite groups)")
    p.add_argument("--seed", type=int, default=default(0), help="seed for sampling strategies that omit one")
    p.add_argument("--jobs", type=int, default=default(1), help="worker processes for sweeps")
    p.add_argument("--format", choices=["json", "dot"], default=default("json"))
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="coxclosure", description=__doc__.strip().splitlines()[0],
                                     parents=[_common()])
    common = _common(suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("build", parents=[common], help="summarise a Coxeter system")

    for name in ("preclosure", "closure"):
        p = sub.add_parser(name, parents=[common],
                           help="Bruhat preclosure" if name == "preclosure" else "infinite Bruhat closure")
        p.add_argument("--set", required=True, help='comma-separated reflections, e.g. "r, rstsr, t"')
        if name == "preclosure":
            g = p.add_mutually_exclusive_group()
            g.add_argument("--iterations", type=int, default=1)
            g.add_argument("--infinite", action="store_true")
        p.add_argument("--witness", action="store_true", help="include one A-path per reflection")
        p.add_argument("--dot", help="write the reached subgraph to this file")

    for name in ("join", "meet"):
        p = sub.add_parser(name, parents=[common], help=f"weak-order {name}")
        p.add_argument("--u", required=True)
        p.add_argument("--v", required=True)
        if name == "join":
            p.add_argument("--bound", help="an upper bound of u and v (needed for infinite groups)")

    p = sub.add_parser("twisted", parents=[common], help="twisted Bruhat graph queries")
    p.add_argument("--section", required=True, help="witness:WORD, sgen:NAME or explicit:SET")
    p.add_argument("--window", type=int, help="length window for graph queries")
    q = p.add_mutually_exclusive_group(required=True)
    q.add_argument("--lengths", action="store_true")
    q.add_argument("--acyclic", action="store_true")
    q.add_argument("--dot", metavar="FILE")
    q.add_argument("--inversion", metavar="WORD")
    q.add_argument("--leq", nargs=2, metavar=("U", "V"))
    q.add_argument("--recognize", action="store_true", help="is an explicit set an inversion set?")

    p = sub.add_parser("check-dyer", parents=[common], help="join inversion sets against closures")
    p.add_argument("--mode", choices=["preclosure", "infinite"], default="infinite")
    p.add_argument("--pairs", default="all", help="all or sample:K[:SEED]")

    sub.add_parser("check-closure-theorem", parents=[common], help="[N(w)] = N(w) for every w")

    p = sub.add_parser("scan-idempotence", parents=[common], help="count sets with [[A]] != [A]")
    p.add_argument("--strategy", help="exhaustive or random:K[:SEED]")
    p.add_argument("--max-size", type=int)

    p = sub.add_parser("find-counterexample", parents=[common], help="search for a set with [[A]] != [A]")
    p.add_argument("--strategy", help="exhaustive or random:K[:SEED]")
    p.add_argument("--max-size", type=int)
    p.add_argument("--count", action="store_true", help="keep going and count all failures")
    p.add_argument("--budget", type=int, help="maximum number of subsets to examine in this run")
    p.add_argument("--checkpoint", help="progress file for resumable searches")
    p.add_argument("--set", "--seed-set", dest="set", help="test this set only")

    p = sub.add_parser("reproduce", parents=[common], help="run a built-in golden scenario")
    p.add_argument("example", choices=sorted(REPRODUCTIONS) + ["all"])

    p = sub.add_parser("export-dot", parents=[common], help="DOT of the Bruhat graph on a ball")
    p.add_argument("--set", help="restrict to edges labelled by these reflections")
    return parser


# -- helpers ---------------------------------------------------------------------


def _system(args) -> CoxeterSystem:
    if args.matrix:
        matrix = load_matrix(args.matrix)
    elif args.group:
        matrix = preset(args.group)
    else:
        raise UsageError("one of --group or --matrix is required")
    finite = INF not in (m for row in matrix.bonds for m in row)
    cap = args.cap if args.cap is not None else getattr(args, "window", None)
    depth = args.depth_cap
    if depth is None:
        depth = 64 if finite or cap is None else max(cap + 2, 8)
    W = build_system(matrix, depth)
    if W.table is None and cap is None and args.command not in ("build", "reproduce"):
        raise UsageError(f"{W.name} is infinite (or too large for an element table); pass --cap")
    return W


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2))


def _report(rep: CheckReport) -> int:
    print(rep.dumps())
    return EXIT_OK if rep.passed else EXIT_FAIL


def _sampling(spec: str | None, seed: int, default: str) -> str:
    spec = spec or default
    parts = spec.split(":")
    if parts[0] in ("random", "sample") and len(parts) == 2:
        spec = f"{spec}:{seed}"
    return spec


def _preclosure_json(W: CoxeterSystem, A, res: PreclosureResult, witness: bool) -> dict:
    out = {
        "group": W.name,
        "input": W.format_reflection_set(A),
        "closure": W.format_reflection_set(res.closure),
        "added": W.format_reflection_set(res.closure - frozenset(A)),
        "reachable": [W.format(x) for x in sorted(res.reachable, key=lambda x: x.sort_key)],
        "truncated": res.truncated,
        "iterations": res.iterations,
        "length_cap": res.length_cap_used,
        "iterates": [W.format_reflection_set(h) for h in res.history],
    }
    if witness:
        out["witness_paths"] = {
            W.format_reflection(r): [W.format_reflection(x) for x in res.witness_paths[r]]
            for r in W.sorted_reflections(res.witness_paths)
        }
    return out


def _reached_dot(W: CoxeterSystem, A, res: PreclosureResult) -> str:
    graph = restrict_labels(bruhat_graph(W, res.reachable), A)
    return graph_to_dot(W, graph, "omega_A")


def _twist(W: CoxeterSystem, spec: str, window: int | None) -> TwistDescriptor:
    kind, _, value = spec.partition(":")
    value = value.strip().strip('"')
    if kind == "witness":
        return TwistDescriptor.finite(W.element(value))
    if kind == "explicit":
        return TwistDescriptor.explicit(W.parse_reflection_set(value))
    if kind == "sgen":
        gens = W.parse_word(value)
        if len(gens) != 1:
            raise UsageError("sgen needs exactly one generator name")
        if window is None:
            raise UsageError("sgen sections need --window")
        try:
            return TwistDescriptor.infinite_dihedral(W, gens[0], window)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    raise UsageError(f"bad section {spec!r}; use witness:WORD, sgen:NAME or explicit:SET")


# -- commands ----------------------------------------------------------------------


def cmd_build(args) -> int:
    W = _system(args)
    refl = W.enumerate_reflections(10**9 if W.complete else 2 * W.depth_cap - 1).items
    out = {
        "name": W.name,
        "rank": W.rank,
        "generators": list(W.names),
        "m": [list(r) for r in W.matrix.bonds],
        "minimal_polynomial": list(W.field.minpoly),
        "positive_roots": W.num_roots,
        "complete": W.complete,
        "order": W.order if W.table is not None else None,
        "longest_element": W.format(W.long_element()) if W.table is not None else None,
        "reflections": [W.format(t.element) for t in refl] if len(refl) <= 200 else None,
    }
    _emit(out)
    return EXIT_OK


def cmd_preclosure(args) -> int:
    W = _system(args)
    A = W.parse_reflection_set(args.set)
    infinite = args.command == "closure" or getattr(args, "infinite", False)
    if infinite:
        try:
            res = infinite_closure(W, A, args.cap)
        except TruncationUnsound as exc:
            print(json.dumps({"group": W.name, "error": str(exc), "truncated": True}))
            return EXIT_TRUNCATED
    else:
        if args.iterations < 0:
            raise UsageError("--iterations must be non-negative")
        res = iterate_preclosure(W, A, args.iterations, args.cap)
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(_reached_dot(W, res.history[-2] if len(res.history) > 1 else A, res))
    if args.format == "dot":
        sys.stdout.write(_reached_dot(W, res.history[-2] if len(res.history) > 1 else A, res))
    else:
        _emit(_preclosure_json(W, A, res, args.witness))
    return EXIT_TRUNCATED if res.truncated else EXIT_OK


def cmd_join(args) -> int:
    W = _system(args)
    u, v = W.element(args.u), W.element(args.v)
    bound = W.element(args.bound) if args.bound else None
    try:
        j = join_R(W, u, v, bound)
    except NoJoin as exc:
        _emit({"u": W.format(u), "v": W.format(v), "join": None, "reason": str(exc)})
        return EXIT_OK
    _emit({"u": W.format(u), "v": W.format(v), "join": W.format(j),
           "inversion_set": W.format_reflection_set(W.inversion_set(j))})
    return EXIT_OK


def cmd_meet(args) -> int:
    W = _system(args)
    u, v = W.element(args.u), W.element(args.v)
    m = meet_R(W, u, v)
    _emit({"u": W.format(u), "v": W.format(v), "meet": W.format(m),
           "inversion_set": W.format_reflection_set(W.inversion_set(m))})
    return EXIT_OK


def cmd_twisted(args) -> int:
    W = _system(args)
    window = args.window if args.window is not None else args.cap
    A = _twist(W, args.section, window)
    if args.recognize:
        if not A.is_finite:
            raise UsageError("recognition needs a finite set")
        w = is_initial_section_finite(W, A.finite_ids(W))
        _emit({"set": W.format_reflection_set(A.finite_ids(W)), "initial_section": w is not None,
               "witness": W.format(w) if w is not None else None})
        return EXIT_OK
    if args.inversion is not None:
        w = W.element(args.inversion)
        _emit({"w": W.format(w), "twisted_inversion_set": W.format_reflection_set(twisted_inversion(W, A, w)),
               "truncated": not A.is_finite})
        return EXIT_OK
    if args.leq:
        u, v = (W.element(x) for x in args.leq)
        verdict = twisted_leq(W, A, u, v, window)
        _emit({"u": W.format(u), "v": W.format(v), "leq": verdict.value})
        return EXIT_TRUNCATED if verdict.value == "unknown" else EXIT_OK
    ball = W.enumerate_ball(window if window is not None else W.table.length[-1])
    if args.lengths:
        _emit({"group": W.name, "section": args.section,
               "lengths": twisted_length_table(W, A, ball.items), "complete": ball.complete})
        return EXIT_OK
    if args.acyclic:
        res = check_acyclic(W, A, window)
        _emit({"group": W.name, "section": args.section, "verdict": res.verdict,
               "cycle": [W.format(x) for x in res.cycle]})
        return EXIT_TRUNCATED if res.verdict == "unknown" else EXIT_OK
    graph = twisted_graph(W, A, ball.items)
    text = graph_to_dot(W, graph, "twisted", reversed_labels=graph.reversed_labels)
    with open(args.dot, "w") as fh:
        fh.write(text)
    return EXIT_OK


def cmd_check_dyer(args) -> int:
    W = _system(args)
    rep = check_dyer(W, args.mode, _sampling(args.pairs, args.seed, "all"), args.jobs)
    print(rep.dumps())
    if args.mode == "preclosure":
        # the preclosure form is an open question; failures are reported but not fatal
        return EXIT_OK
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_check_closure_theorem(args) -> int:
    return _report(check_closure_theorem(_system(args), args.jobs))


def _default_strategy(W: CoxeterSystem, args) -> str:
    if W.num_roots <= EXHAUSTIVE_DEFAULT_LIMIT:
        return "exhaustive"
    return f"random:1000:{args.seed}"


def cmd_scan_idempotence(args) -> int:
    W = _system(args)
    strategy = _sampling(args.strategy, args.seed, _default_strategy(W, args))
    # every failure is a counterexample to idempotence, hence exit 1
    return _report(scan_idempotence(W, strategy, args.max_size, args.jobs))


def cmd_find_counterexample(args) -> int:
    W = _system(args)
    strategy = _sampling(args.strategy, args.seed, _default_strategy(W, args))
    candidates = [W.parse_reflection_set(args.set)] if args.set else None
    if (candidates is None and strategy == "exhaustive" and W.num_roots > EXHAUSTIVE_DEFAULT_LIMIT
            and args.budget is None and (args.max_size is None or args.max_size > 4)):
        raise UsageError(f"exhaustive search over 2^{W.num_roots} subsets needs --budget (and ideally --checkpoint)")
    rep = find_counterexample(W, strategy, args.max_size, args.count, args.budget, args.checkpoint, candidates)
    print(rep.dumps())
    return EXIT_FAIL if rep.failures else EXIT_OK


def cmd_reproduce(args) -> int:
    names = sorted(REPRODUCTIONS) if args.example == "all" else [args.example]
    reports = [reproduce(n) for n in names]
    if len(reports) == 1:
        print(reports[0].dumps())
    else:
        print(json.dumps([r.to_json() for r in reports], indent=2, sort_keys=True))
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def cmd_export_dot(args) -> int:
    W = _system(args)
    cap = args.cap if args.cap is not None else W.table.length[-1]
    ball = W.enumerate_ball(cap)
    graph = bruhat_graph(W, ball.items)
    if args.set:
        graph = restrict_labels(graph, W.parse_reflection_set(args.set))
    sys.stdout.write(graph_to_dot(W, graph))
    return EXIT_OK if ball.complete else EXIT_TRUNCATED


COMMANDS = {
    "build": cmd_build,
    "preclosure": cmd_preclosure,
    "closure": cmd_preclosure,
    "join": cmd_join,
    "meet": cmd_meet,
    "twisted": cmd_twisted,
    "check-dyer": cmd_check_dyer,
    "check-closure-theorem": cmd_check_closure_theorem,
    "scan-idempotence": cmd_scan_idempotence,
    "find-counterexample": cmd_find_counterexample,
    "reproduce": cmd_reproduce,
    "export-dot": cmd_export_dot,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except RootDepthExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TRUNCATED
    except (UsageError, UnknownGenerator, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CoxeterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
