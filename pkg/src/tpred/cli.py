"""Command-line surface: gen, plan, eval, and sweep subcommands.

Exit codes: 0 success, 2 invalid flags or split index beyond the horizon,
3 stalled layout generation, 4 unknown layout id.  Diagnostics go to stderr;
data goes to files and stdout.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .errors import DegenerateVariance, GenerationStalled, HorizonExceeded, TpredError
from .evaluation import evaluate, pearson_correlation
from .generation import (
    GeneratorConfig,
    filter_distinguishable,
    filter_no_confounds,
    generate_layouts,
    rank_by_info_gain,
)
from .geometry import path_cost
from .io import read_layout_file, write_layout_file, write_results_table, write_sweep_table
from .lbest import t_predictability_approx
from .observer import DEFAULT_BETA, Rationality, t_predictability_exact
from .planner import PlannerSpec, plan_t_predictable

PIPELINE_TS = (0, 1, 2)


def _rationality(beta: float) -> Rationality:
    # A literal 0 on the command line is an explicit request for the
    # indifferent-observer limit.
    return Rationality.uniform() if beta == 0 else Rationality(beta)


def _uint(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text!r}")
    return value


def _int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _float_list(text: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",") if part != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated reals, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tpred", description=__doc__)
    parser.add_argument("--version", action="version", version=f"tpred {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a layout pool, optionally filtered")
    gen.add_argument("--count", type=_uint, required=True)
    gen.add_argument("--targets-min", type=int, default=5)
    gen.add_argument("--targets-max", type=int, default=6)
    gen.add_argument("--seed", type=_uint, default=0)
    gen.add_argument(
        "--filter",
        action=argparse.BooleanOptionalAction,
        default=False,
        help="apply the distinguishability/confound/info-gain pipeline",
    )
    gen.add_argument("--capture-radius", type=float, default=0.05)
    gen.add_argument("--beta", type=float, default=DEFAULT_BETA)
    gen.add_argument("--out", required=True)
    gen.set_defaults(func=cmd_gen)

    plan = sub.add_parser("plan", help="plan one layout and report predictability")
    plan.add_argument("--layouts", required=True)
    plan.add_argument("--layout-id", required=True)
    plan.add_argument("--t", type=_uint, required=True)
    plan.add_argument("--beta", type=float, default=DEFAULT_BETA)
    plan.add_argument("--mode", choices=["exact", "approx"], default="exact")
    plan.add_argument("--l", type=int, default=2)
    plan.add_argument("--out-format", choices=["text", "json"], default="text")
    plan.set_defaults(func=cmd_plan)

    ev = sub.add_parser("eval", help="simulated-observer evaluation over a pool")
    ev.add_argument("--layouts", required=True)
    ev.add_argument("--ts", type=_int_list, default=[0, 1, 2])
    ev.add_argument("--ks", type=_int_list, default=[0, 1, 2])
    ev.add_argument("--beta", type=float, default=DEFAULT_BETA)
    ev.add_argument("--samples", type=int, default=500)
    ev.add_argument("--seed", type=_uint, default=0)
    ev.add_argument("--out", required=True)
    ev.set_defaults(func=cmd_eval)

    sweep = sub.add_parser("sweep", help="exact-vs-truncated scores over a parameter grid")
    sweep.add_argument("--layouts", required=True)
    sweep.add_argument("--t", type=_uint, required=True)
    sweep.add_argument("--beta-grid", type=_float_list)
    sweep.add_argument("--l-grid", type=_int_list)
    sweep.add_argument("--beta", type=float, default=DEFAULT_BETA, help="fixed beta for --l-grid")
    sweep.add_argument("--l", type=int, default=2, help="fixed l for --beta-grid")
    sweep.add_argument("--out", required=True)
    sweep.set_defaults(func=cmd_sweep)
    return parser


def cmd_gen(args: argparse.Namespace) -> int:
    config = GeneratorConfig(
        count=args.count,
        targets_min=args.targets_min,
        targets_max=args.targets_max,
        seed=args.seed,
    )
    layouts = generate_layouts(config)
    print(f"generated: {len(layouts)}")
    if args.filter:
        rationality = _rationality(args.beta)
        layouts = filter_distinguishable(layouts, PIPELINE_TS, rationality)
        print(f"distinguishable: {len(layouts)}")
        layouts = filter_no_confounds(layouts, args.capture_radius, PIPELINE_TS, rationality)
        print(f"confound-free (radius {args.capture_radius}): {len(layouts)}")
        layouts = rank_by_info_gain(layouts, rationality)
        print("ranked by predictability gain")
    write_layout_file(args.out, layouts)
    print(f"wrote {len(layouts)} layouts to {args.out}")
    return 0


def cmd_plan(args: argparse.Namespace) -> int:
    layouts = {layout.id: layout for layout in read_layout_file(args.layouts)}
    layout = layouts.get(args.layout_id)
    if layout is None:
        print(f"tpred: unknown layout id {args.layout_id!r} in {args.layouts}", file=sys.stderr)
        return 4
    rationality = _rationality(args.beta)
    spec = PlannerSpec(t=args.t, rationality=rationality, mode=args.mode, l=args.l)
    plan = plan_t_predictable(layout, spec)
    cost = path_cost(layout, plan)
    exact = t_predictability_exact(layout, plan, args.t, rationality)
    approx = (
        t_predictability_approx(layout, plan, args.t, rationality, args.l)
        if args.mode == "approx"
        else None
    )
    if args.out_format == "json":
        payload = {
            "layout_id": layout.id,
            "t": args.t,
            "beta": args.beta,
            "mode": args.mode,
            "l": args.l,
            "order": list(plan.order),
            "path_cost": cost,
            "exact_pt": exact,
        }
        if approx is not None:
            payload["approx_pt"] = approx
        print(json.dumps(payload))
    else:
        print(f"layout: {layout.id} (T={layout.size})")
        print(f"order: {'-'.join(str(i) for i in plan.order)}")
        print(f"path_cost: {cost!r}")
        print(f"exact_pt: {exact!r}")
        if approx is not None:
            print(f"approx_pt: {approx!r}")
    return 0


def cmd_eval(args: argparse.Namespace) -> int:
    pool = read_layout_file(args.layouts)
    rationality = _rationality(args.beta)
    records = evaluate(pool, args.ts, args.ks, rationality, args.samples, args.seed)
    write_results_table(
        args.out, records, beta=args.beta, mode="exact", l=None, seed=args.seed
    )
    print(
        f"tpred {__version__} eval: layouts={len(pool)} ts={args.ts} ks={args.ks} "
        f"beta={args.beta} samples={args.samples} seed={args.seed}"
    )
    _print_eval_summary(records, args.ts, args.ks)
    print(f"wrote {len(records)} rows to {args.out}")
    return 0


def _print_eval_summary(records, ts, ks) -> None:
    pooled = {
        (t, k): [r.exact_match_rate for r in records if r.planner_t == t and r.k_observed == k]
        for t in ts
        for k in ks
    }
    dominant = True
    for k in ks:
        rates = {t: sum(pooled[(t, k)]) / len(pooled[(t, k)]) for t in ts if pooled[(t, k)]}
        if not rates:
            continue
        best = max(rates.values())
        line = " ".join(f"t={t}:{rate:.4f}" for t, rate in rates.items())
        print(f"k={k} pooled match rate: {line}")
        if k in rates and rates[k] < best:
            dominant = False
    if all(k in ts for k in ks):
        print(f"diagonal dominance of pooled match rates: {'yes' if dominant else 'no'}")
    try:
        r = pearson_correlation(
            [r.theoretical_k_pred for r in records],
            [r.exact_match_rate for r in records],
        )
        print(f"correlation theoretical vs empirical: {r:.4f}")
    except DegenerateVariance:
        print("correlation theoretical vs empirical: n/a (degenerate variance)")


def cmd_sweep(args: argparse.Namespace) -> int:
    if (args.beta_grid is None) == (args.l_grid is None):
        print("tpred: provide exactly one of --beta-grid or --l-grid", file=sys.stderr)
        return 2
    pool = read_layout_file(args.layouts)
    if args.beta_grid is not None:
        grid = [(beta, args.l) for beta in args.beta_grid]
    else:
        grid = [(args.beta, l) for l in args.l_grid]
    if not grid:
        print("tpred: empty parameter grid", file=sys.stderr)
        return 2
    rows = []
    for layout in pool:
        for beta, l in grid:
            rationality = _rationality(beta)
            plan = plan_t_predictable(layout, PlannerSpec(t=args.t, rationality=rationality))
            exact = t_predictability_exact(layout, plan, args.t, rationality)
            approx = t_predictability_approx(layout, plan, args.t, rationality, l)
            rows.append(
                {
                    "layout_id": layout.id,
                    "t": args.t,
                    "beta": beta,
                    "l": l,
                    "order": plan.order,
                    "path_cost": path_cost(layout, plan),
                    "exact_pt": exact,
                    "approx_pt": approx,
                    "ratio": exact / approx,
                }
            )
    write_sweep_table(args.out, rows)
    ratios = [row["ratio"] for row in rows]
    print(
        f"tpred {__version__} sweep: layouts={len(pool)} t={args.t} points={len(grid)} "
        f"mean ratio={sum(ratios) / len(ratios):.4f} min ratio={min(ratios):.4f}"
    )
    print(f"wrote {len(rows)} rows to {args.out}")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GenerationStalled as exc:
        print(f"tpred: {exc}", file=sys.stderr)
        return 3
    except HorizonExceeded as exc:
        print(f"tpred: {exc}", file=sys.stderr)
        return 2
    except TpredError as exc:
        print(f"tpred: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"tpred: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
