"""Command-line front end: check, solve, reduce, lift, gen, bench.

Exit codes: 0 success, 1 infeasible or precondition violation, 2 parse
error, 3 budget or cap exceeded.
"""

import argparse
import csv
import io
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import charsys, core, hitting, reductions, solvers

EXIT_OK = 0
EXIT_INFEASIBLE = 1
EXIT_PARSE = 2
EXIT_CAP = 3

ALGOS = ("auto", "exact-enum", "exact-hs", "approx-hs", "greedy", "trivial", "star")


def _run_algo(name: str, inst: core.Instance, budget=None, cap=None):
    """Dispatch one algorithm; None means no solution within the budget."""
    if name == "auto":
        return solvers.solve_auto(inst)
    if name == "exact-enum":
        return solvers.solve_exact_enum(inst, cap=cap or solvers.ENUM_STATE_CAP)
    if name == "exact-hs":
        return solvers.solve_exact_hs(
            inst, budget=budget, max_nodes=cap or hitting.BRANCH_NODE_CAP
        )
    if name == "approx-hs":
        return solvers.solve_approx_hs(inst)
    if name == "greedy":
        return solvers.greedy_component_merge(inst)
    if name == "trivial":
        return solvers.solve_trivial_pairs(inst)
    if name == "star":
        return solvers.solve_star_disjoint(inst)
    raise ValueError(f"unknown algorithm {name!r}")


def cmd_check(args) -> int:
    inst = core.parse_instance(Path(args.instance).read_text())
    overlay = core.parse_solution(Path(args.solution).read_text())
    try:
        report = core.validate_solution(inst, overlay)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    split = dict(report.disconnected)
    for t, ok in enumerate(report.per_topic):
        if ok:
            print(f"topic {t}: connected")
        else:
            parts = " | ".join("{" + ",".join(map(str, c)) + "}" for c in split[t])
            print(f"topic {t}: DISCONNECTED {parts}")
    print("feasible" if report.feasible else "infeasible")
    return EXIT_OK if report.feasible else EXIT_INFEASIBLE


def cmd_solve(args) -> int:
    inst = core.parse_instance(Path(args.instance).read_text())
    try:
        report = _run_algo(args.algo, inst, budget=args.budget, cap=args.cap)
    except core.PreconditionError as exc:
        print(f"precondition: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except core.CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    if report is None:
        print(f"no solution within budget {args.budget}", file=sys.stderr)
        return EXIT_CAP
    if args.out:
        Path(args.out).write_text(core.emit_solution(report.overlay))
    print(
        f"{report.algo} {report.cost} {'true' if report.optimal else 'false'} "
        f"{report.elapsed_ms:.3f}"
    )
    return EXIT_OK


def cmd_reduce(args) -> int:
    inst = core.parse_instance(Path(args.instance).read_text())
    try:
        hs, codec = charsys.reduce_tco_to_hs(inst)
    except core.CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    Path(args.out + ".hs").write_text(hitting.emit_hs_instance(hs))
    Path(args.out + ".codec").write_text(charsys.emit_codec(codec))
    print(f"hs {hs.n_elements} {hs.n_sets}")
    return EXIT_OK


def cmd_lift(args) -> int:
    chosen = hitting.parse_hs_solution(Path(args.hs_solution).read_text())
    codec = charsys.parse_codec(Path(args.codec).read_text())
    try:
        overlay = charsys.lift_hs_solution(codec, chosen)
    except IndexError:
        print("element id outside codec domain", file=sys.stderr)
        return EXIT_PARSE
    text = core.emit_solution(overlay)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_gen(args) -> int:
    meta_text = None
    if args.kind == "random":
        seed = args.seed if args.seed is not None else random.SystemRandom().getrandbits(64)
        print(f"c seed {seed}")
        inst = reductions.gen_random(args.users, args.topics, args.amin, args.amax, seed)
    elif args.kind == "from-hs":
        source = hitting.parse_hs_instance(Path(args.source).read_text())
        inst, meta = reductions.gen_from_hs(source, k_override=args.k, eps=args.eps)
        meta_text = reductions.emit_hs_meta(meta)
    else:  # from-vc
        graph = reductions.parse_graph(Path(args.source).read_text())
        inst, meta = reductions.gen_from_vc(graph)
        meta_text = reductions.emit_vc_meta(meta)
    text = core.emit_instance(inst)
    if args.out:
        Path(args.out).write_text(text)
        if meta_text is not None:
            Path(args.out + ".meta").write_text(meta_text)
    else:
        sys.stdout.write(text)
    print(f"instance {inst.n_users} users {inst.n_topics} topics")
    return EXIT_OK


def _bench_cell(path: Path, algo: str, seed):
    """One (instance, algo) measurement; never raises."""
    row = {
        "instance": path.name,
        "n_users": "",
        "n_topics": "",
        "max_audience": "",
        "algo": algo,
        "cost": -1,
        "optimal": "false",
        "millis": "0.000",
        "seed": "" if seed is None else seed,
        "status": "error",
    }
    try:
        inst = core.parse_instance(path.read_text())
    except (OSError, core.FormatError):
        row["status"] = "parse"
        return row
    row.update(
        n_users=inst.n_users, n_topics=inst.n_topics, max_audience=inst.max_audience
    )
    try:
        report = _run_algo(algo, inst)
    except core.PreconditionError:
        row["status"] = "precondition"
        return row
    except core.CapExceeded:
        row["status"] = "cap"
        return row
    except Exception:
        return row
    if report is None:
        row["status"] = "budget"
        return row
    row.update(
        cost=report.cost,
        optimal="true" if report.optimal else "false",
        millis=f"{report.elapsed_ms:.3f}",
        status="ok",
    )
    return row


def cmd_bench(args) -> int:
    paths = sorted(Path(args.dir).glob("*.tco"))
    algos = [a.strip() for a in args.algos.split(",") if a.strip()]
    for a in algos:
        if a not in ALGOS:
            print(f"unknown algorithm {a!r}", file=sys.stderr)
            return EXIT_PARSE
    cells = [(p, a) for p in paths for a in algos]
    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(lambda c: _bench_cell(c[0], c[1], args.seed), cells))
    else:
        rows = [_bench_cell(p, a, args.seed) for p, a in cells]
    rows.sort(key=lambda r: (r["instance"], r["algo"]))
    buf = io.StringIO()
    fields = [
        "instance", "n_users", "n_topics", "max_audience",
        "algo", "cost", "optimal", "millis", "seed", "status",
    ]
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    if args.out:
        Path(args.out).write_text(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mintco", description="Minimum topic-connected overlay toolkit"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="verify a solution file against an instance")
    p.add_argument("instance")
    p.add_argument("solution")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("solve", help="solve an instance and write a solution")
    p.add_argument("instance")
    p.add_argument("--algo", choices=ALGOS, default="auto")
    p.add_argument("--budget", type=int, default=None, help="max edges (exact-hs)")
    p.add_argument("--cap", type=int, default=None, help="search-state / node cap")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("reduce", help="write the hitting-set reduction + codec")
    p.add_argument("instance")
    p.add_argument("--to", choices=("hs",), default="hs")
    p.add_argument("--out", required=True, help="output prefix (.hs/.codec)")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("lift", help="lift a hitting-set solution to an overlay")
    p.add_argument("hs_solution")
    p.add_argument("codec")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("gen", help="generate an instance")
    gensub = p.add_subparsers(dest="kind", required=True)

    g = gensub.add_parser("random")
    g.add_argument("--users", type=int, required=True)
    g.add_argument("--topics", type=int, required=True)
    g.add_argument("--amin", type=int, default=2)
    g.add_argument("--amax", type=int, default=4)
    g.add_argument("--seed", type=int, default=None)
    g.add_argument("--out", default=None)
    g.set_defaults(func=cmd_gen)

    g = gensub.add_parser("from-hs")
    g.add_argument("source", help="hitting-set instance file")
    g.add_argument("--k", type=int, default=None, help="special-user count")
    g.add_argument("--eps", type=float, default=None)
    g.add_argument("--out", default=None)
    g.set_defaults(func=cmd_gen)

    g = gensub.add_parser("from-vc")
    g.add_argument("source", help="graph file (p edge format)")
    g.add_argument("--out", default=None)
    g.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="run algorithms over a directory of instances")
    p.add_argument("--dir", required=True)
    p.add_argument("--algos", default="auto")
    p.add_argument("--out", default=None)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except core.FormatError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE


if __name__ == "__main__":
    sys.exit(main())
