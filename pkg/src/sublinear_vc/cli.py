"""Command-line front end: ``estimate``, ``bench`` and ``verify``.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import statistics
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .estimator import MODES, ConfigError, EstimateConfig, estimate_vc, reports_to_csv, run_trials, worker_count
from .generators import GeneratorInputError, generate
from .multigraph import GraphInputError, GraphParseError, load_graph
from .verify import LEVELS, run_suites

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _eps(text: str) -> float:
    try:
        eps = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not 0 < eps < 1:
        raise argparse.ArgumentTypeError("eps must lie in (0, 1)")
    return eps


def _int_list(text: str) -> list[int]:
    try:
        values = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("sweep list is empty")
    return values


@dataclass
class RunManifest:
    subcommand: str
    input_path: str | None
    gen: str | None
    config: EstimateConfig
    out: str | None
    fmt: str

    def load(self):
        if (self.input_path is None) == (self.gen is None):
            raise UsageError("give exactly one of --input or --gen")
        dense = self.config.mode == "dense"
        if self.input_path is not None:
            return load_graph(self.input_path, pair_index=dense)
        return generate(self.gen, pair_index=dense)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sublinear-vc", description="Sublinear-time minimum vertex cover estimation.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--eps", type=_eps, required=True, help="additive error parameter in (0, 1)")
        sp.add_argument("--mode", choices=MODES, default="max-deg")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--trials", type=int, default=1)
        sp.add_argument("--samples", type=int, default=None, help="override the Hoeffding sample count")
        sp.add_argument("--no-fallback", action="store_true", help="always sample, even on small graphs")
        sp.add_argument("--out", help="write output here instead of stdout")
        sp.add_argument("--format", choices=("json", "csv"), default="json", dest="fmt")

    est = sub.add_parser("estimate", help="estimate the minimum vertex cover size")
    src = est.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", help="graph file (header 'n m', then one edge per line)")
    src.add_argument("--gen", help="generator spec, e.g. regular:n=1000,d=10,seed=7")
    common(est)

    bench = sub.add_parser("bench", help="sweep a generator family over n and d; one CSV row per cell")
    bench.add_argument("--family", default="regular", choices=("regular", "gnp"))
    bench.add_argument("--n", type=_int_list, required=True, help="comma-separated vertex counts")
    bench.add_argument("--d", type=_int_list, required=True, help="comma-separated degrees (expected degree for gnp)")
    common(bench)

    ver = sub.add_parser("verify", help="run the self-check suites")
    ver.add_argument("level", choices=LEVELS)
    return p


def _config(args) -> EstimateConfig:
    return EstimateConfig(eps=args.eps, mode=args.mode, seed=args.seed, trials=args.trials,
                          samples=args.samples, small_graph_fallback=not args.no_fallback)


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def summarize(reports) -> dict:
    return {
        "trials": len(reports),
        "median_estimate": statistics.median(r.estimate for r in reports),
        "mean_queries": statistics.fmean(r.total_queries for r in reports),
        "mean_calls": statistics.fmean(r.mean_calls for r in reports),
    }


def cmd_estimate(args) -> int:
    manifest = RunManifest("estimate", args.input, args.gen, _config(args), args.out, args.fmt)
    graph = manifest.load()
    reports = run_trials(graph, manifest.config)
    if manifest.fmt == "csv":
        _emit(reports_to_csv(reports), manifest.out)
    else:
        doc = {"reports": [r.to_dict() for r in reports], "summary": summarize(reports)}
        _emit(json.dumps(doc, indent=2, sort_keys=True), manifest.out)
    return EXIT_OK


def _bench_cell(cell):
    family, n, d, cfg = cell
    spec = f"regular:n={n},d={d},seed={cfg.seed},simple=1" if family == "regular" else \
        f"gnp:n={n},p={min(d / max(n - 1, 1), 1.0)},seed={cfg.seed}"
    report = estimate_vc(generate(spec, pair_index=cfg.mode == "dense"), cfg)
    row = {"family": family, "d": d, **report.csv_row()}
    return row


def cmd_bench(args) -> int:
    base = _config(args)
    cells = []
    for n in args.n:
        for d in args.d:
            for t in range(args.trials):
                cfg = EstimateConfig(eps=base.eps, mode=base.mode, seed=base.seed + t, samples=base.samples,
                                     small_graph_fallback=base.small_graph_fallback)
                cells.append((args.family, n, d, cfg))
    workers = min(worker_count(), len(cells))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_bench_cell, cells))
    else:
        rows = [_bench_cell(c) for c in cells]
    rows.sort(key=lambda r: (r["n"], r["d"], r["seed"]))
    if args.fmt == "json":
        _emit(json.dumps(rows, indent=2), args.out)
    else:
        import csv
        import io
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(rows[0]))
        w.writeheader()
        w.writerows(rows)
        _emit(buf.getvalue(), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    results = run_suites(args.level)
    for r in results:
        print(r.line())
    failed = [r for r in results if not r.passed]
    if failed:
        print("first counterexample:", file=sys.stderr)
        print(failed[0].detail, file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    handlers = {"estimate": cmd_estimate, "bench": cmd_bench, "verify": cmd_verify}
    try:
        return handlers[args.command](args)
    except (UsageError, ConfigError, GeneratorInputError, GraphInputError, GraphParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
