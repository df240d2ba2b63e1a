"""Command-line front end.

Exit codes: 0 clean, 1 usage/IO error, 2 unrecoverable fault reported.
All randomness funnels through --seed; identical invocations produce
byte-identical outputs.
"""

import argparse
import json
import statistics
import sys
import time
from pathlib import Path

import numpy as np

from . import planner
from .abft import DetectionConfig, Scheme, default_delta, make_encoding, run_protected
from .fault_lab import (
    DEFAULT_DELTA_GRID,
    BitFlipInjector,
    CampaignConfig,
    FaultSpec,
    propagation_footprint,
    records_csv,
    roc_csv,
    run_campaign,
)
from .fft_core import build_twiddles, fit_group_size, make_plan
from .kernels import available_backends
from .signal_io import read_signals, write_signals

SCHEMES = tuple(s.value for s in Scheme)


class CliError(Exception):
    pass


def _power_of_two(text: str) -> int:
    value = int(text)
    if value < 2 or value & (value - 1):
        raise argparse.ArgumentTypeError("size must be a power of two")
    return value


def cmd_plan(args) -> int:
    params = planner.select_parameters(args.n, args.batch)
    desc = planner.emit_descriptor(params, args.ft_mode)
    print(planner.render_descriptor(desc))
    return 0


def cmd_transform(args) -> int:
    batch = read_signals(args.input, args.n, args.precision)
    plan = fit_group_size(
        make_plan(args.n, args.precision, batch=batch.shape[0]), batch.shape[0]
    )
    twiddles = build_twiddles(plan)
    delta = args.delta if args.delta is not None else default_delta(args.precision)
    cfg = DetectionConfig(delta=delta)
    outputs, report, _ = run_protected(
        plan, twiddles, batch, args.scheme, cfg, inverse=args.inverse
    )
    write_signals(args.output, outputs, args.precision)
    print(report.to_json())
    return 2 if report.unrecoverable else 0


def cmd_inject(args) -> int:
    grid = tuple(args.delta_grid) if args.delta_grid else DEFAULT_DELTA_GRID
    bits = tuple(args.bits) if args.bits else None
    cfg = CampaignConfig(
        runs=args.runs,
        inject_fraction=args.inject_fraction,
        n=args.n,
        batch=args.batch,
        precision=args.precision,
        scheme=Scheme(args.scheme),
        delta_grid=grid,
        seed=args.seed,
        bits=bits,
        default_delta=args.delta,
    )
    result = run_campaign(cfg)
    Path(args.roc_out).write_text(roc_csv(result))
    Path(args.records_out).write_text(records_csv(result))
    summary = {
        "runs": cfg.runs,
        "injected": result.injected_count,
        "detected_at_default_delta": result.detected_count,
        "corrected": result.corrected_count,
        "default_delta": result.default_delta,
        "recompute_count": result.recompute_count,
    }
    print(json.dumps(summary, sort_keys=True, separators=(",", ":")))
    return 0


def cmd_bench(args) -> int:
    backends = args.backends or list(available_backends())
    rows = []
    for n in args.n_list:
        for batch in args.batch_list:
            plan = fit_group_size(make_plan(n, args.precision, batch=batch), batch)
            twiddles = build_twiddles(plan)
            rng = np.random.default_rng(args.seed)
            x = (
                rng.standard_normal((batch, n)) + 1j * rng.standard_normal((batch, n))
            ).astype(plan.dtype)
            cfg = DetectionConfig(delta=default_delta(args.precision))
            for scheme in args.schemes:
                for backend in backends:
                    times = []
                    pass_count = recompute = 0
                    for trial in range(args.trials):
                        injector = None
                        if args.inject:
                            spec = FaultSpec(
                                run_id=trial, signal_idx=0, element_idx=0,
                                component="re", bit=30, stage="output",
                            )
                            injector = BitFlipInjector(spec)
                        start = time.perf_counter()
                        _, report, counter = run_protected(
                            plan, twiddles, x, scheme, cfg,
                            injector=injector, backend=backend,
                        )
                        times.append(time.perf_counter() - start)
                        pass_count = counter.total
                        recompute += report.recompute_count
                    rows.append(
                        {
                            "n": n,
                            "batch": batch,
                            "scheme": scheme,
                            "backend": backend,
                            "trials": args.trials,
                            "mean_s": statistics.fmean(times),
                            "stdev_s": statistics.stdev(times) if len(times) > 1 else 0.0,
                            "pass_count": pass_count,
                            "recompute_count": recompute,
                        }
                    )
    header = list(rows[0].keys())
    lines = [",".join(header)]
    lines += [",".join(str(r[k]) for k in header) for r in rows]
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_propagate(args) -> int:
    count = propagation_footprint(args.n, args.stage, args.element, seed=args.seed)
    print(json.dumps({"n": args.n, "inject_stage": args.stage,
                      "element": args.element, "corrupted_outputs": count},
                     sort_keys=True, separators=(",", ":")))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fftshield",
        description="Fault-tolerant FFT: plans, protected transforms, "
        "injection campaigns and benchmarks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("plan", help="print the kernel descriptor JSON")
    p.add_argument("--n", type=_power_of_two, required=True)
    p.add_argument("--batch", type=int, default=1)
    p.add_argument("--ft-mode", choices=planner.FT_MODES, default="none")
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("transform", help="transform a raw signal file")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--n", type=_power_of_two, required=True)
    p.add_argument("--precision", choices=("fp32", "fp64"), default="fp32")
    p.add_argument("--inverse", action="store_true")
    p.add_argument("--scheme", choices=SCHEMES, default="none")
    p.add_argument("--delta", type=float, default=None)
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("inject", help="run a bit-flip injection campaign")
    p.add_argument("--runs", type=int, default=2000)
    p.add_argument("--inject-fraction", type=float, default=0.5)
    p.add_argument("--n", type=_power_of_two, default=2**10)
    p.add_argument("--batch", type=int, default=16)
    p.add_argument("--precision", choices=("fp32", "fp64"), default="fp32")
    p.add_argument("--scheme", choices=SCHEMES, default="two_sided_group")
    p.add_argument("--delta-grid", type=float, nargs="+", default=None)
    p.add_argument("--delta", type=float, default=None,
                   help="operating threshold (default: calibrated from clean runs)")
    p.add_argument("--bits", type=int, nargs="+", default=None)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--roc-out", default="roc.csv")
    p.add_argument("--records-out", default="records.csv")
    p.set_defaults(func=cmd_inject)

    p = sub.add_parser("bench", help="time schemes and backends, emit CSV")
    p.add_argument("--n-list", type=_power_of_two, nargs="+", default=[2**10, 2**14])
    p.add_argument("--batch-list", type=int, nargs="+", default=[16])
    p.add_argument("--schemes", nargs="+", choices=SCHEMES,
                   default=["none", "one_sided", "two_sided_group"])
    p.add_argument("--backends", nargs="+", default=None)
    p.add_argument("--precision", choices=("fp32", "fp64"), default="fp32")
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--inject", action="store_true",
                   help="force one output fault per trial")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("propagate", help="measure the corruption footprint")
    p.add_argument("--n", type=_power_of_two, required=True)
    p.add_argument("--stage", type=int, required=True,
                   help="butterfly steps completed before injection")
    p.add_argument("--element", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_propagate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code else 0
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
