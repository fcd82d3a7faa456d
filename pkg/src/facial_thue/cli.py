"""Command line entry point: ``facial-thue <command> ...``.

Exit codes: 0 success (and verified, where a colouring is produced),
1 usage or input error, 2 run exhausted its step budget, 3 internal
invariant breach or failed cross-check.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import re
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path

from facial_thue import analysis
from facial_thue.coloring import (
    RNG_NAME,
    ListAssignment,
    format_trace,
    log_from_json,
    log_to_json,
    run_randomized,
)
from facial_thue.errors import FacialThueError, InvariantBreach, KTooSmall
from facial_thue.facial import verify_coloring
from facial_thue.plane_graph import (
    PlaneGraph,
    build_graph,
    parse_document,
    parse_family,
    serialize,
)
from facial_thue.replay import invert_log

log = logging.getLogger("facial_thue")

EXIT_OK, EXIT_USAGE, EXIT_EXHAUSTED, EXIT_BREACH = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# sources

def load_graph(source: str) -> tuple[PlaneGraph, list[list[int]] | None]:
    path = Path(source)
    if path.is_file():
        rotation, lists = parse_document(path.read_text())
    else:
        rotation, lists = parse_family(source), None
    g = build_graph(rotation)
    log.debug("loaded %s: n=%d m=%d faces=%d", source, g.n, g.m, g.face_count)
    return g, lists


def load_lists(source: str | None, g: PlaneGraph, doc_lists, k: int) -> ListAssignment:
    if source is None:
        return ListAssignment(doc_lists) if doc_lists else ListAssignment.uniform(g.m, k)
    kind, _, rest = source.partition(":")
    if kind == "uniform":
        return ListAssignment.uniform(g.m, int(rest or k))
    if kind == "random":
        parts = [int(x) for x in rest.split(":") if x]
        size = parts[0] if parts else k
        seed = parts[1] if len(parts) > 1 else 0
        return ListAssignment.random_distinct(g.m, size, seed)
    if kind == "doc":
        if not doc_lists:
            raise FacialThueError("graph document carries no lists")
        return ListAssignment(doc_lists)
    data = json.loads(Path(source).read_text())
    if isinstance(data, dict):
        data = data.get("lists")
    return ListAssignment(data)


_STEP_TOKEN = re.compile(r"^(\d*)m([+-]\d+)?$")


def parse_step_grid(text: str, m: int) -> list[int]:
    """Tokens like ``500``, ``m``, ``4m`` or ``m-1``."""
    out = []
    for tok in text.split(","):
        tok = tok.strip().replace(" ", "")
        match = _STEP_TOKEN.match(tok)
        if match:
            coeff = int(match.group(1) or 1)
            out.append(coeff * m + int(match.group(2) or 0))
        else:
            out.append(int(tok))
    if any(t < 1 for t in out):
        raise FacialThueError(f"step grid {text!r} yields a non-positive budget for m={m}")
    return out


# commands

@dataclass
class RunReport:
    vertices: int
    edges: int
    faces: int
    k: int
    seed: int
    rng: str
    status: str
    steps_used: int
    repetition_events: int
    verification: str
    wall_time_s: float


def cmd_generate(args) -> int:
    g, _ = load_graph(args.family)
    lists = None
    if args.lists:
        lists = load_lists(args.lists, g, None, 12).lists
    text = serialize(g, lists)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_color(args) -> int:
    g, doc_lists = load_graph(args.graph)
    lists = load_lists(args.lists, g, doc_lists, args.k)
    start = time.perf_counter()
    outcome = run_randomized(
        g, lists, args.seed, args.max_steps, trace=args.trace,
        check_invariants=args.check_invariants,
    )
    elapsed = time.perf_counter() - start
    verdict = verify_coloring(g, lists, outcome.coloring)
    report = RunReport(
        *g.summary(), lists.k, args.seed, RNG_NAME, outcome.status.value,
        outcome.steps_used, outcome.repetitions, verdict.describe(), round(elapsed, 6),
    )
    for key, value in asdict(report).items():
        print(f"{key:18} {value}")
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "log.json").write_text(
            log_to_json(outcome, seed=args.seed, k=lists.k, rng=RNG_NAME, inputs=list(outcome.inputs))
        )
        (out / "report.json").write_text(json.dumps(asdict(report), indent=1) + "\n")
        if args.trace:
            (out / "trace.tsv").write_text(format_trace(outcome.trace))
    elif args.trace:
        sys.stdout.write(format_trace(outcome.trace))
    if not outcome.completed:
        return EXIT_EXHAUSTED
    return EXIT_OK if verdict.ok else EXIT_BREACH


def _read_coloring(path: str) -> tuple[int, ...]:
    data = json.loads(Path(path).read_text())
    if isinstance(data, dict):
        data = data["coloring"]
    return tuple(int(c) for c in data)


def cmd_verify(args) -> int:
    g, doc_lists = load_graph(args.graph)
    lists = load_lists(args.lists, g, doc_lists, args.k)
    coloring = _read_coloring(args.coloring)
    if len(coloring) != g.m:
        raise FacialThueError(f"colouring has {len(coloring)} entries for {g.m} edges")
    verdict = verify_coloring(g, lists, coloring)
    print(verdict.describe())
    for path in verdict.repetitive_paths:
        print("repetitive\t" + ",".join(map(str, path.edges)))
    for e in verdict.list_violations:
        print(f"list-violation\t{e}")
    return EXIT_OK if verdict.ok else EXIT_BREACH


def cmd_replay(args) -> int:
    g, doc_lists = load_graph(args.graph)
    lists = load_lists(args.lists, g, doc_lists, args.k)
    log_doc = log_from_json(Path(args.log).read_text())
    inputs = invert_log(g, lists, log_doc)
    print(",".join(map(str, inputs)))
    return EXIT_OK


def cmd_replay_check(args) -> int:
    g, doc_lists = load_graph(args.graph)
    lists = load_lists(args.lists, g, doc_lists, args.k)
    budget = args.max_steps or 1000 * g.m
    passed = 0
    for i in range(args.trials):
        seed = args.seed + i
        outcome = run_randomized(g, lists, seed, budget)
        recovered = invert_log(g, lists, outcome.log)
        if recovered != outcome.inputs:
            print(f"trials passed {passed}/{args.trials}")
            print(f"mismatch at seed {seed}", file=sys.stderr)
            return EXIT_BREACH
        passed += 1
    print(f"seed {args.seed}, rng {RNG_NAME}")
    print(f"trials passed {passed}/{args.trials}")
    return EXIT_OK


def _writer(stream, delimiter):
    return csv.writer(stream, delimiter=delimiter, lineterminator="\n")


def cmd_analyze(args) -> int:
    sections = [s for s in ("table", "roots", "growth", "threshold", "catalan") if getattr(args, s)]
    if not sections:
        sections = ["table", "roots", "growth", "threshold", "catalan"]
    out = sys.stdout
    w = _writer(out, args.delimiter)
    status = EXIT_OK
    growth = analysis.growth_constant(max(20, args.n_max))
    roots = analysis.cardano_roots()

    if "table" in sections:
        a = analysis.a_sequence(args.n_max)
        w.writerow(["n", "a_n", "a_n_convolution", "a_n_bruteforce", "ratio", "envelope"])
        for n in range(1, args.n_max + 1):
            brute = analysis.a_bruteforce(n) if n <= args.brute_max else ""
            ratio = f"{a[n - 1] / a[n - 2]:.9f}" if n > 1 else ""
            envelope = int(growth.value * 1.001 * roots.lambda0**n) + 1
            w.writerow([n, a[n - 1], analysis.a_recurrence(n, "convolution"), brute, ratio, envelope])
        out.write("\n")
    if "roots" in sections:
        w.writerow(["root", "real", "imag", "abs", "residual"])
        for name, z, r in zip(("lambda0", "lambda1", "lambda2"),
                              (roots.lambda0, roots.lambda1, roots.lambda2), roots.residuals):
            z = complex(z)
            w.writerow([name, f"{z.real:.9f}", f"{z.imag:.9f}", f"{abs(z):.9f}", f"{r:.3e}"])
        out.write("\n")
    if "growth" in sections:
        d = growth.deltas
        w.writerow(["growth_constant", "n_max", "last_relative_delta"])
        w.writerow([f"{growth.value:.12f}", len(growth.history), f"{d[-1]:.3e}"])
        out.write("\n")
    if "threshold" in sections:
        try:
            t = analysis.threshold_steps(args.m, args.k)
            w.writerow(["m", "k", "threshold_t"])
            w.writerow([args.m, args.k, t])
        except KTooSmall as exc:
            print(f"KTooSmall: {exc}", file=sys.stderr)
            status = EXIT_USAGE
        out.write("\n")
    if "catalan" in sections:
        w.writerow(["t", "catalan", "bound", "ratio"])
        for t in range(1, args.catalan_max + 1):
            c = analysis.catalan_check(t)
            w.writerow([t, c.catalan, f"{c.bound:.6f}", f"{c.ratio:.6f}"])
    return status


def _bench_trial(payload):
    spec, lists, seed, budget = payload
    g = build_graph(spec)
    outcome = run_randomized(g, ListAssignment(lists), seed, budget)
    return outcome.steps_used if outcome.completed else None


def bench_table(graphs: list[str], ks: list[int], trials: int, steps: str,
                seed: int = 0, jobs: int = 1) -> list[dict]:
    """Fraction of seeds not finished within each step budget.

    Every seed is run once with the largest budget; since draws are lazy,
    a run finishes within ``t`` steps exactly when it needs at most ``t``.
    """
    rows = []
    pool = ProcessPoolExecutor(jobs) if jobs > 1 else None
    try:
        for source in graphs:
            g, _ = load_graph(source)
            grid = parse_step_grid(steps, g.m)
            for k in ks:
                lists = ListAssignment.uniform(g.m, k).lists
                payloads = [(g.rotation, lists, seed + i, max(grid)) for i in range(trials)]
                mapper = pool.map if pool else map
                used = list(mapper(_bench_trial, payloads))
                for t in grid:
                    fails = sum(1 for u in used if u is None or u > t)
                    rows.append({
                        "graph": source, "m": g.m, "k": k, "t": t,
                        "t_over_m": round(t / g.m, 4), "trials": trials,
                        "failures": fails, "failure_fraction": fails / trials,
                    })
    finally:
        if pool:
            pool.shutdown()
    return rows


def cmd_bench(args) -> int:
    if args.trials < 30:
        raise FacialThueError("bench needs at least 30 trials per cell")
    ks = [int(x) for x in args.k.split(",")]
    rows = bench_table(args.graphs.split(","), ks, args.trials, args.steps, args.seed, args.jobs)
    print(f"# seed {args.seed}, rng {RNG_NAME}")
    w = csv.DictWriter(sys.stdout, fieldnames=list(rows[0]), delimiter=args.delimiter,
                       lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "bench.json").write_text(json.dumps(rows, indent=1) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="facial-thue", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def graph_args(p):
        p.add_argument("--graph", required=True, help="family like wheel:10, grid:4x4, or a document path")
        p.add_argument("--lists", help="uniform:K, random:K:SEED, doc, or a JSON file")
        p.add_argument("--k", type=int, default=12, help="list size when --lists is not given")

    p = sub.add_parser("generate", help="write the document of a graph family")
    p.add_argument("family")
    p.add_argument("--lists")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("color", help="colour a graph with the randomized algorithm")
    graph_args(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-steps", type=int)
    p.add_argument("--trace", action="store_true")
    p.add_argument("--check-invariants", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_color)

    p = sub.add_parser("verify", help="check a colouring against every facial path")
    graph_args(p)
    p.add_argument("--coloring", required=True, help="log.json or a JSON array")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("replay", help="recover the input vector from a log file")
    graph_args(p)
    p.add_argument("--log", required=True)
    p.set_defaults(func=cmd_replay)

    p = sub.add_parser("replay-check", help="round-trip randomized runs through log inversion")
    graph_args(p)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-steps", type=int)
    p.set_defaults(func=cmd_replay_check)

    p = sub.add_parser("analyze", help="counting tables, roots, threshold, Catalan check")
    p.add_argument("--n-max", type=int, default=30)
    p.add_argument("--brute-max", type=int, default=18)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--k", type=int, default=12)
    p.add_argument("--catalan-max", type=int, default=40)
    p.add_argument("--delimiter", default=",")
    for name in ("table", "roots", "growth", "threshold", "catalan"):
        p.add_argument(f"--{name}", action="store_true")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("bench", help="failure fraction against step budget")
    p.add_argument("--graphs", required=True, help="comma-separated graph sources")
    p.add_argument("--k", default="12", help="comma-separated list sizes")
    p.add_argument("--trials", type=int, default=30)
    p.add_argument("--steps", default="m,2m,4m,8m")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--delimiter", default=",")
    p.add_argument("--out")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    if getattr(args, "n_max", 0) > 50 and args.command == "analyze":
        print("analyze: --n-max above 50 is not tabulated", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except InvariantBreach as exc:
        print(f"invariant breach: {exc}", file=sys.stderr)
        return EXIT_BREACH
    except (FacialThueError, ValueError, OSError, KeyError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
