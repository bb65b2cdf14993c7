"""Command-line entry points.

Three subcommands:

  evacuate    drain benchmark instances under one or more policies and
              print a per-instance results table (plus optional CSV).
  throughput  sweep arrival rates on a topology, one run per
              (policy, lambda, seed), with per-run and per-(policy,
              lambda) summary CSV rows.
  validate    run the randomized property suites; nonzero exit on any
              violation.

A JSON config file may supply any long-option value; explicit flags win.
Relative --csv paths resolve against $LINKSCHED_OUTDIR when set.
Exit codes: 0 success, 1 validation failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from .engine import run_evacuation, run_throughput
from .formats import ParseError, parse_dimacs, parse_instance
from .graph import EvacInstance
from .policies import Policy
from .topologies import (
    assign_random_multiplicities,
    gen_grid,
    gen_random_connected,
    gen_regular_multigraph,
    gen_spider,
    gen_triangular_mesh,
)
from .traffic import TrafficModel
from .validate import DEFAULT_COUNTS, SUITE_NAMES, run_suite

CSV_HEADER = "mode,instance,policy,lambda,seed,slots,warmup,avg_total_queue,evac_time,delta0,min_dep_ratio"


def _csv_path(raw: str | None) -> Path | None:
    if raw is None:
        return None
    p = Path(raw)
    outdir = os.environ.get("LINKSCHED_OUTDIR")
    if outdir and not p.is_absolute():
        p = Path(outdir) / p
    p.parent.mkdir(parents=True, exist_ok=True)
    return p


def _row(
    mode: str = "",
    instance: str = "",
    policy: str = "",
    lam: str = "",
    seed: str = "",
    slots: str = "",
    warmup: str = "",
    avg_total_queue: str = "",
    evac_time: str = "",
    delta0: str = "",
    min_dep_ratio: str = "",
) -> str:
    return ",".join(
        [mode, instance, policy, lam, seed, slots, warmup, avg_total_queue,
         evac_time, delta0, min_dep_ratio]
    )


def _parse_policies(text: str) -> list[Policy]:
    names = [t for t in text.split(",") if t.strip()]
    if not names:
        raise ValueError("policy list is empty")
    return [Policy.parse(t) for t in names]


def _merge_config(args: argparse.Namespace, parser: argparse.ArgumentParser) -> argparse.Namespace:
    """Fill unset options from the JSON config file, if one was given."""
    if getattr(args, "config", None) is None:
        return args
    try:
        cfg = json.loads(Path(args.config).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        parser.error(f"cannot read config {args.config}: {exc}")
    if not isinstance(cfg, dict):
        parser.error("config must be a JSON object")
    for key, value in cfg.items():
        attr = key.replace("-", "_")
        if not hasattr(args, attr):
            parser.error(f"config key {key!r} is not a known option")
        if getattr(args, attr) is None:
            setattr(args, attr, value)
    return args


def _load_evac_instances(args, parser) -> list[tuple[str, EvacInstance]]:
    seed = args.seed if args.seed is not None else 0
    out: list[tuple[str, EvacInstance]] = []

    def topo_source():
        if args.grid:
            try:
                rows, cols = (int(x) for x in args.grid.lower().split("x"))
            except ValueError:
                parser.error(f"--grid expects RxC, got {args.grid!r}")
            return f"grid{rows}x{cols}", gen_grid(rows, cols)
        if args.mesh is not None:
            return f"mesh{args.mesh}", gen_triangular_mesh(args.mesh, seed)
        if args.rand:
            try:
                n, m = (int(x) for x in args.rand.split(","))
            except ValueError:
                parser.error(f"--rand expects N,M got {args.rand!r}")
            return f"rand{n}.{m}", gen_random_connected(n, m, seed)
        return None

    if args.spider is not None:
        out.append((f"spider{args.spider}", gen_spider(args.spider)))
    if args.regm:
        try:
            n, d = (int(x) for x in args.regm.split(","))
        except ValueError:
            parser.error(f"--regm expects N,D got {args.regm!r}")
        out.append((f"regm{n}.{d}", gen_regular_multigraph(n, d, seed)))
    if args.dimacs:
        for path in args.dimacs:
            try:
                text = Path(path).read_text()
            except OSError as exc:
                parser.error(f"cannot read {path}: {exc}")
            try:
                out.append((Path(path).stem, parse_dimacs(text)))
            except ParseError as exc:
                parser.error(f"{path}: {exc}")
    if args.instance:
        for path in args.instance:
            try:
                text = Path(path).read_text()
            except OSError as exc:
                parser.error(f"cannot read {path}: {exc}")
            try:
                out.append((Path(path).stem, parse_instance(text)))
            except ParseError as exc:
                parser.error(f"{path}: {exc}")
    src = topo_source()
    if src is not None:
        label, topo = src
        if args.max_mult is None:
            parser.error("topology sources need --max-mult to draw packet loads")
        out.append(
            (f"{label}.{args.max_mult}", assign_random_multiplicities(topo, args.max_mult, seed))
        )
    if not out:
        parser.error("no instance source given "
                     "(--spider/--dimacs/--instance/--grid/--mesh/--rand/--regm)")
    return out


def cmd_evacuate(args, parser) -> int:
    try:
        policies = _parse_policies(args.policies)
    except ValueError as exc:
        parser.error(str(exc))
    instances = _load_evac_instances(args, parser)
    rows: list[str] = []
    colw = max(8, *(len(lbl) for lbl, _ in instances)) + 2
    header = "instance".ljust(colw) + "".join(p.value.rjust(8) for p in policies) + "delta".rjust(8)
    print(header)
    for label, instance in instances:
        results = {}
        for pol in policies:
            t0 = time.perf_counter()
            rec = run_evacuation(instance, pol, keep_trace=False)
            elapsed = time.perf_counter() - t0
            results[pol] = rec
            rows.append(
                _row(
                    mode="evacuation",
                    instance=label,
                    policy=pol.value,
                    seed=str(args.seed) if args.seed is not None else "",
                    evac_time=str(rec.evac_time),
                    delta0=str(rec.delta0),
                )
            )
            if args.verbose:
                print(f"  {label}/{pol.value}: {rec.evac_time} slots in {elapsed:.2f}s",
                      file=sys.stderr)
        delta0 = next(iter(results.values())).delta0
        print(
            label.ljust(colw)
            + "".join(str(results[p].evac_time).rjust(8) for p in policies)
            + str(delta0).rjust(8)
        )
    path = _csv_path(args.csv)
    if path is not None:
        path.write_text(CSV_HEADER + "\n" + "\n".join(rows) + "\n")
        print(f"wrote {path}")
    return 0


def _fmt(x: float) -> str:
    return f"{x:.6f}"


def _throughput_job(job) -> tuple[float, float]:
    """One (policy, lambda, seed) run; top level so process pools can
    pickle it. Returns (avg_total_queue, min departure ratio)."""
    topo, policy, model, slots, warmup = job
    rec = run_throughput(topo, policy, model, slots, warmup)
    return rec.avg_total_queue, float((rec.departure_rate / model.lam).min())


def cmd_throughput(args, parser) -> int:
    try:
        policies = _parse_policies(args.policies)
    except ValueError as exc:
        parser.error(str(exc))
    try:
        lambdas = sorted(float(x) for x in args.lambdas.split(",") if x.strip())
    except ValueError:
        parser.error(f"--lambdas expects comma-separated numbers, got {args.lambdas!r}")
    if not lambdas:
        parser.error("lambda list is empty")
    if lambdas[0] <= 0:
        parser.error("arrival rates must be positive")
    try:
        seeds = [int(x) for x in args.seeds.split(",") if x.strip()]
    except ValueError:
        parser.error(f"--seeds expects comma-separated integers, got {args.seeds!r}")
    if not seeds:
        parser.error("seed list is empty")

    if args.grid:
        try:
            rows_, cols_ = (int(x) for x in args.grid.lower().split("x"))
        except ValueError:
            parser.error(f"--grid expects RxC, got {args.grid!r}")
        label, topo = f"grid{rows_}x{cols_}", gen_grid(rows_, cols_)
    elif args.mesh is not None:
        label, topo = f"mesh{args.mesh}", gen_triangular_mesh(args.mesh, args.topo_seed)
    elif args.rand:
        try:
            n, m = (int(x) for x in args.rand.split(","))
        except ValueError:
            parser.error(f"--rand expects N,M got {args.rand!r}")
        label, topo = f"rand{n}.{m}", gen_random_connected(n, m, args.topo_seed)
    else:
        parser.error("no topology given (--grid/--mesh/--rand)")

    slots = args.slots
    warmup = args.warmup
    if args.scale == "ci":
        slots, warmup = 20_000, 10_000
    if warmup >= slots:
        parser.error("--warmup must be below --slots")

    # Jobs in deterministic (policy, lambda, seed) order; results come
    # back in the same order whether run inline or on a process pool.
    jobs = [
        (
            topo,
            pol,
            TrafficModel(
                kind=args.traffic,
                lam=lam,
                file_prob=args.file_prob,
                support=args.support,
                seed=seed,
            ),
            slots,
            warmup,
        )
        for pol in policies
        for lam in lambdas
        for seed in seeds
    ]
    if args.jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=args.jobs) as ex:
            results = list(ex.map(_throughput_job, jobs))
    else:
        results = [_throughput_job(job) for job in jobs]

    rows: list[str] = []
    it = iter(results)
    for pol in policies:
        for lam in lambdas:
            per_seed = [next(it) for _ in seeds]
            for seed, (avg_q, ratio) in zip(seeds, per_seed):
                rows.append(
                    _row(
                        mode="throughput",
                        instance=label,
                        policy=pol.value,
                        lam=_fmt(lam),
                        seed=str(seed),
                        slots=str(slots),
                        warmup=str(warmup),
                        avg_total_queue=_fmt(avg_q),
                        min_dep_ratio=_fmt(ratio),
                    )
                )
                if args.verbose:
                    print(
                        f"  {pol.value} lam={lam} seed={seed}: "
                        f"avg_queue={avg_q:.2f} min_ratio={ratio:.4f}",
                        file=sys.stderr,
                    )
            mean_q = sum(x[0] for x in per_seed) / len(per_seed)
            mean_r = sum(x[1] for x in per_seed) / len(per_seed)
            rows.append(
                _row(
                    mode="throughput-summary",
                    instance=label,
                    policy=pol.value,
                    lam=_fmt(lam),
                    slots=str(slots),
                    warmup=str(warmup),
                    avg_total_queue=_fmt(mean_q),
                    min_dep_ratio=_fmt(mean_r),
                )
            )
            print(
                f"{label} {pol.value} lam={lam}: avg_total_queue="
                f"{mean_q:.2f} over {len(seeds)} seeds"
            )
    path = _csv_path(args.csv)
    if path is not None:
        path.write_text(CSV_HEADER + "\n" + "\n".join(rows) + "\n")
        print(f"wrote {path}")
    return 0


def cmd_validate(args, parser) -> int:
    names = SUITE_NAMES if args.suite == "all" else (args.suite,)
    failed = False
    for name in names:
        count = args.count if args.count is not None else DEFAULT_COUNTS[name]
        result = run_suite(name, count=count, seed=args.seed)
        print(result.summary())
        for v in result.violations[:10]:
            print(f"  violation: {v}")
        if not result.ok:
            failed = True
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="linksched",
        description="Time-slotted link-scheduling simulator under one-hop interference",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    pe = sub.add_parser("evacuate", help="drain instances and report slot counts")
    pe.add_argument("--policies", default=None, help="comma list: nsb,lcnsb,mvm,mwm,gmm,mm")
    pe.add_argument("--spider", type=int, default=None, metavar="N",
                    help="hub-and-legs benchmark with N legs")
    pe.add_argument("--dimacs", action="append", default=None, metavar="PATH",
                    help="DIMACS .col file (repeatable)")
    pe.add_argument("--instance", action="append", default=None, metavar="PATH",
                    help="native instance file (repeatable)")
    pe.add_argument("--grid", default=None, metavar="RxC")
    pe.add_argument("--mesh", type=int, default=None, metavar="NODES")
    pe.add_argument("--rand", default=None, metavar="N,M")
    pe.add_argument("--regm", default=None, metavar="N,D",
                    help="regular multigraph with workload D at every node")
    pe.add_argument("--max-mult", type=int, default=None, metavar="Y",
                    help="uniform random per-link load in {0..Y} for topology sources")
    pe.add_argument("--seed", type=int, default=None)
    pe.add_argument("--csv", default=None, metavar="PATH")
    pe.add_argument("--config", default=None, metavar="JSON")
    pe.add_argument("--verbose", action="store_true")
    pe.set_defaults(func=cmd_evacuate)

    pt = sub.add_parser("throughput", help="arrival-rate sweeps with queue metrics")
    pt.add_argument("--policies", default=None)
    pt.add_argument("--grid", default=None, metavar="RxC")
    pt.add_argument("--mesh", type=int, default=None, metavar="NODES")
    pt.add_argument("--rand", default=None, metavar="N,M")
    pt.add_argument("--traffic", default=None, choices=["poisson", "file", "zipf"])
    pt.add_argument("--lambdas", default=None, help="comma list of mean rates")
    pt.add_argument("--file-prob", type=float, default=0.1)
    pt.add_argument("--support", type=int, default=1000)
    pt.add_argument("--slots", type=int, default=100_000)
    pt.add_argument("--warmup", type=int, default=50_000)
    pt.add_argument("--scale", choices=["full", "ci"], default="full",
                    help="ci = 20k slots / 10k warmup")
    pt.add_argument("--seeds", default=None, help="comma list of run seeds")
    pt.add_argument("--topo-seed", type=int, default=0,
                    help="seed for seeded topology generators (mesh/rand)")
    pt.add_argument("--jobs", type=int, default=1,
                    help="parallel worker processes for independent runs")
    pt.add_argument("--csv", default=None, metavar="PATH")
    pt.add_argument("--config", default=None, metavar="JSON")
    pt.add_argument("--verbose", action="store_true")
    pt.set_defaults(func=cmd_throughput)

    pv = sub.add_parser("validate", help="run the property suites")
    pv.add_argument("--suite", default="all", choices=("all",) + SUITE_NAMES)
    pv.add_argument("--count", type=int, default=None)
    pv.add_argument("--seed", type=int, default=None)
    pv.set_defaults(func=cmd_validate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command in ("evacuate", "throughput"):
        args = _merge_config(args, parser)
        if args.policies is None:
            parser.error("--policies is required (by flag or config)")
        if args.command == "throughput":
            if args.traffic is None:
                parser.error("--traffic is required (by flag or config)")
            if args.lambdas is None:
                parser.error("--lambdas is required (by flag or config)")
            if args.seeds is None:
                parser.error("--seeds is required (by flag or config)")
    try:
        return args.func(args, parser)
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
