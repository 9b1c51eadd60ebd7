"""Command-line entry point wiring all modules together.

Exit codes: 0 ok, 2 usage, 3 non-optimal termination / skipped cells,
4 I/O failure, 5 format error.
"""

import argparse
import hashlib
import json
import os
import sys

from . import bench as bench_mod
from . import oracle as oracle_mod
from . import report as report_mod
from .exact import solve_exact
from .heuristic import TabuParams, Tour, tabu_search, nearest_neighbor
from .instance import (GenSpec, InstanceError, TsplibFormatError, generate,
                       parse_csv, parse_tsplib, write_csv, write_tsplib)
from .model_export import (CutLoopError, CutLoopState, SolutionParseError,
                           count_model, cut_loop_step, emit_lp, parse_solution)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NONOPTIMAL = 3
EXIT_IO = 4
EXIT_FORMAT = 5


def _parse_range(text):
    try:
        lo, hi = text.split(":")
        return int(lo), int(hi)
    except ValueError:
        raise InstanceError(f"range must be lo:hi, got {text!r}") from None


def _add_instance_flags(p, require=False):
    p.add_argument("--in", dest="infile", help="instance file (.atsp/.tsplib or .csv)")
    p.add_argument("--n", type=int)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--range", dest="cost_range", default="1:10",
                   help="inclusive cost range lo:hi (default 1:10)")
    p.add_argument("--mode", choices=["uniform-matrix", "euclidean-asymmetric"],
                   default="uniform-matrix")


def _load_instance(args):
    """Returns (matrix, layout_or_None)."""
    if args.infile:
        with open(args.infile, "rb") as fh:
            data = fh.read()
        if args.infile.endswith(".csv"):
            return parse_csv(data), None
        return parse_tsplib(data), None
    if args.n is None:
        raise InstanceError("either --in or --n is required")
    spec = GenSpec(n=args.n, seed=args.seed,
                   cost_range=_parse_range(args.cost_range), mode=args.mode)
    return generate(spec)


def _default_time_limit():
    return int(os.environ.get("ATSPKIT_TIME_LIMIT_MS", "0"))


def cmd_generate(args):
    spec = GenSpec(n=args.n if args.n is not None else _usage("--n is required"),
                   seed=args.seed, cost_range=_parse_range(args.cost_range),
                   mode=args.mode)
    m, _ = generate(spec)
    data = write_csv(m) if args.format == "csv" else write_tsplib(m)
    with open(args.out, "wb") as fh:
        fh.write(data)
    digest = hashlib.sha256(data).hexdigest()
    print(f"{args.out} sha256={digest}")
    return EXIT_OK


def _usage(msg):
    raise InstanceError(msg)


def _tabu_params(args):
    return TabuParams(
        tenure=getattr(args, "tenure", None),
        max_stall=getattr(args, "max_stall", None),
        time_limit_ms=getattr(args, "tabu_time_limit", 0) or 0,
        enable_reversal=not getattr(args, "no_reversal", False),
    )


def cmd_solve(args):
    m, _ = _load_instance(args)
    warm = None
    if args.warmstart == "on":
        warm = tabu_search(m, nearest_neighbor(m, 0), _tabu_params(args))[0]

    def progress(ev):
        if ev["event"] == "incumbent" or ev["nodes"] % 100 == 0:
            print(f"[bnb] nodes={ev['nodes']} bound={ev['bound']}"
                  f" incumbent={ev['incumbent']}", file=sys.stderr)

    rep = solve_exact(m, warm, time_limit_ms=args.time_limit,
                      node_limit=args.node_limit, progress=progress)
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(rep.to_json() + "\n")
    print(f"cost={rep.optimal_cost} gap={rep.gap_percent}"
          f" nodes={rep.bnb_nodes_explored} ap_resolves={rep.ap_resolves}"
          f" wall_ms={rep.wall_time_ms}")
    print(f"tour: {rep.tour.to_line()}")
    return EXIT_OK if rep.optimal else EXIT_NONOPTIMAL


def cmd_warmstart(args):
    m, _ = _load_instance(args)
    tour, iterations = tabu_search(m, nearest_neighbor(m, 0), _tabu_params(args))
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(tour.to_json() + "\n")
    print(f"cost={tour.cost} iterations={iterations}")
    print(f"tour: {tour.to_line()}")
    return EXIT_OK


def cmd_export_model(args):
    formulation = args.formulation.upper()
    if args.count_only:
        if args.n is None:
            _usage("--count-only needs --n")
        counts = count_model(args.n, formulation)
        print(f"binaries={counts['binaries']} continuous={counts['continuous']}"
              f" constraints={counts['constraints']}")
        return EXIT_OK
    m, _ = _load_instance(args)
    data = emit_lp(m, formulation)
    with open(args.out, "wb") as fh:
        fh.write(data)
    print(f"{args.out} bytes={len(data)}")
    return EXIT_OK


def cmd_cutloop(args):
    m, _ = _load_instance(args)
    if not os.path.exists(args.state):
        state = CutLoopState(n=m.n)
        _write_state(args.state, state)
        _emit_round(m, state, args.model)
        print(f"round 0: solve {args.model} with your MIP solver, write the"
              f" solution to {args.solution}, then rerun this command")
        return EXIT_OK
    state = _read_state(args.state)
    if not os.path.exists(args.solution):
        print(f"waiting for {args.solution}", file=sys.stderr)
        return EXIT_IO
    with open(args.solution, "rb") as fh:
        arcs = parse_solution(fh.read(), m.n)
    state = cut_loop_step(state, arcs)
    _write_state(args.state, state)
    if state.status == "tour_found":
        succ = dict(state.last_solution)
        order = [0]
        j = succ[0]
        while j != 0:
            order.append(j)
            j = succ[j]
        cost = sum(int(m.costs[i, j]) for i, j in state.last_solution)
        tour = Tour(tuple(order), cost)
        print(f"tour found: cost={cost}")
        print(f"tour: {tour.to_line()}")
        return EXIT_OK
    os.remove(args.solution)
    _emit_round(m, state, args.model)
    print(f"round {state.round}: {len(state.cuts)} cuts so far; re-solve"
          f" {args.model} and write the solution to {args.solution}")
    return EXIT_OK


def _emit_round(m, state, path):
    with open(path, "wb") as fh:
        fh.write(emit_lp(m, "DFJ", state.cuts))


def _write_state(path, state):
    with open(path, "w") as fh:
        json.dump({"n": state.n, "round": state.round, "cuts": state.cuts,
                   "status": state.status,
                   "last_solution": sorted(state.last_solution)
                   if state.last_solution else None}, fh)
        fh.write("\n")


def _read_state(path):
    with open(path) as fh:
        obj = json.load(fh)
    return CutLoopState(
        n=obj["n"], round=obj["round"], cuts=[list(c) for c in obj["cuts"]],
        last_solution=frozenset(tuple(a) for a in obj["last_solution"])
        if obj["last_solution"] else None,
        status=obj["status"])


def cmd_bench(args):
    with open(args.suite) as fh:
        spec = json.load(fh)
    records, skipped = bench_mod.run_suite(spec)
    with open(args.out, "wb") as fh:
        fh.write(bench_mod.write_csv(records))
    print(f"{args.out} records={len(records)} skipped={len(skipped)}")
    for alg, n, reason in skipped:
        print(f"skipped {alg} n={n}: {reason}", file=sys.stderr)
    return EXIT_NONOPTIMAL if skipped else EXIT_OK


def cmd_plot(args):
    if args.kind == "route":
        m, layout = _load_instance(args)
        if layout is None:
            layout = report_mod.circular_layout(m.n)
        warm = tabu_search(m, nearest_neighbor(m, 0), _tabu_params(args))[0]
        rep = solve_exact(m, warm, time_limit_ms=args.time_limit)
        data = report_mod.render_route(layout, rep.tour)
    else:
        with open(args.csv, "rb") as fh:
            records = bench_mod.parse_csv(fh.read())
        data = report_mod.render_scaling(records, args.axes)
    with open(args.out, "wb") as fh:
        fh.write(data)
    print(f"{args.out} bytes={len(data)}")
    return EXIT_OK


def cmd_oracle(args):
    m, _ = _load_instance(args)
    if args.method == "brute":
        t = oracle_mod.brute_force(m)
        print(f"brute_force cost={t.cost}")
        print(f"tour: {t.to_line()}")
    elif args.method == "held-karp":
        cost, t = oracle_mod.held_karp(m)
        print(f"held_karp cost={cost}")
        print(f"tour: {t.to_line()}")
    else:
        bf = oracle_mod.brute_force(m)
        hk_cost, _ = oracle_mod.held_karp(m)
        agree = bf.cost == hk_cost
        print(f"brute_force={bf.cost} held_karp={hk_cost}"
              f" agree={'yes' if agree else 'NO'}")
        if not agree:
            return EXIT_FORMAT
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="atspkit",
                                     description="Asymmetric TSP toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a seeded instance file")
    _add_instance_flags(p)
    p.add_argument("--format", choices=["tsplib", "csv"], default="tsplib")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("solve", help="warm start + exact branch-and-bound")
    _add_instance_flags(p)
    p.add_argument("--warmstart", choices=["on", "off"], default="on")
    p.add_argument("--time-limit", type=int, default=_default_time_limit())
    p.add_argument("--node-limit", type=int, default=0)
    p.add_argument("--tabu-time-limit", type=int, default=0)
    p.add_argument("--no-reversal", action="store_true")
    p.add_argument("--report", help="write the solve report JSON here")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("warmstart", help="nearest neighbor + tabu search only")
    _add_instance_flags(p)
    p.add_argument("--tenure", type=int)
    p.add_argument("--max-stall", dest="max_stall", type=int)
    p.add_argument("--tabu-time-limit", type=int, default=0)
    p.add_argument("--no-reversal", action="store_true")
    p.add_argument("--out", help="write the tour JSON here")
    p.set_defaults(func=cmd_warmstart)

    p = sub.add_parser("export-model", help="emit an LP-format MIP model")
    _add_instance_flags(p)
    p.add_argument("--formulation", choices=["mtz", "dfj"], required=True)
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_export_model)

    p = sub.add_parser("cutloop", help="drive DFJ cut rounds with an external solver")
    _add_instance_flags(p)
    p.add_argument("--state", required=True, help="loop state JSON path")
    p.add_argument("--model", required=True, help="LP model output path")
    p.add_argument("--solution", required=True, help="solver solution input path")
    p.set_defaults(func=cmd_cutloop)

    p = sub.add_parser("bench", help="run a benchmark suite to CSV")
    p.add_argument("--suite", required=True, help="suite spec JSON")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("plot", help="render SVG route maps or scaling plots")
    p.add_argument("kind", choices=["route", "scaling"])
    _add_instance_flags(p)
    p.add_argument("--csv", help="benchmark CSV (scaling)")
    p.add_argument("--axes", choices=["loglog", "loglin", "linlin"],
                   default="loglog")
    p.add_argument("--time-limit", type=int, default=_default_time_limit())
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_plot)

    p = sub.add_parser("oracle", help="ground-truth solvers for small instances")
    _add_instance_flags(p)
    p.add_argument("--method", choices=["brute", "held-karp", "compare"],
                   default="compare")
    p.set_defaults(func=cmd_oracle)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (TsplibFormatError, SolutionParseError, CutLoopError) as exc:
        print(f"format error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except (InstanceError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
