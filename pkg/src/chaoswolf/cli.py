"""Command line entry point: ``chaoswolf {maps,optimize,factor,experiment}``.

Exit codes: 0 success, 1 search exhausted / no convergence, 2 invalid input.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from importlib import resources
from pathlib import Path

import numpy as np

from . import __version__
from .benchmarks import get_benchmark
from .chaos import ChaoticMap, Interval, MapKind, fill_values, normalize, seed_state
from .experiments import ExperimentPlan, export, load_plans, run_plan
from .factorization import (
    BoundsInfeasible,
    ObjectiveTag,
    Semiprime,
    default_max_iter,
    default_variant,
    factor,
)
from .gwo import GwoConfig, GwoVariant, VariantKind, run

EXIT_OK, EXIT_EXHAUSTED, EXIT_INVALID = 0, 1, 2
SEED_ENV = "CHAOSWOLF_SEED"
MAP_NAMES = [m.label for m in MapKind]


class UsageError(Exception):
    pass


def _env_seed(default: int) -> int:
    env = os.environ.get(SEED_ENV, "").strip()
    if not env:
        return default
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"{SEED_ENV} must be an integer, got {env!r}") from None


def _seed(args) -> int:
    return args.seed if args.seed is not None else _env_seed(0)


def _emit(doc) -> None:
    sys.stdout.write(json.dumps(doc, indent=2) + "\n")


def _variant(args, default: GwoVariant) -> GwoVariant:
    if args.variant is None:
        kind = default.kind
    else:
        kind = VariantKind(args.variant)
    map_a = args.map_a or (default.map_a.label if default.map_a else "sinusoidal")
    map_c = args.map_c or (default.map_c.label if default.map_c else "sinusoidal")
    return GwoVariant(kind, map_a, map_c).fitted(args.iters)


def _add_search_flags(p, agents_default=30, iters_default=500):
    p.add_argument("--agents", type=int, default=agents_default, help="number of wolves (default %(default)s)")
    p.add_argument("--iters", type=int, default=iters_default, help="maximum iterations")
    p.add_argument("--variant", choices=[k.value for k in VariantKind], default=None)
    p.add_argument("--map-a", choices=MAP_NAMES, default=None, help="map driving a")
    p.add_argument("--map-c", choices=MAP_NAMES, default=None, help="map driving C")
    p.add_argument("--seed", type=int, default=None, help=f"RNG seed (falls back to ${SEED_ENV}, then 0)")


def cmd_maps(args) -> int:
    cmap = ChaoticMap(MapKind.parse(args.kind), args.param)
    if args.count < 0:
        raise UsageError("--count must be non-negative")
    if args.x0 is None:
        rng = np.random.default_rng(_env_seed(0))
        draw = rng.random()
    else:
        draw = args.x0
    state = seed_state(cmap, draw)
    target = Interval.parse(args.normalize) if args.normalize else None
    values: list[float] = []
    if args.count:
        _, raw = fill_values(state, args.count)
        values = raw.tolist()
        if target is not None:
            values = [normalize(v, cmap.native_range, target) for v in values]
    if args.format == "text":
        for v in values:
            print(repr(v))
        return EXIT_OK
    _emit({
        "map": cmap.label,
        "param": cmap.param,
        "x0": state.x,
        "count": args.count,
        "normalize": None if target is None else [target.lo, target.hi],
        "values": values,
    })
    return EXIT_OK


def cmd_optimize(args) -> int:
    bench = get_benchmark(args.benchmark)
    variant = _variant(args, GwoVariant.standard())
    seed = _seed(args)
    cfg = GwoConfig(args.agents, args.iters, variant, seed)
    trace = run(cfg, bench.objective)
    success = bool(bench.is_success(trace.best.position, trace.best_value))
    summary = {
        "benchmark": bench.name,
        "function": bench.title,
        "variant": variant.kind.value,
        "map_a": variant.map_a.label if variant.map_a else None,
        "map_c": variant.map_c.label if variant.map_c else None,
        "agents": args.agents,
        "iters": args.iters,
        "seed": seed,
        "best_value": float(trace.best_value),
        "best_position": [float(v) for v in trace.best.position],
        "iterations_used": trace.iterations_used,
        "success": success,
    }
    if args.out:
        doc = dict(summary)
        doc.update(trace.to_dict())
        Path(args.out).write_text(json.dumps(doc, indent=2) + "\n")
    _emit(summary)
    return EXIT_OK if success else EXIT_EXHAUSTED


def cmd_factor(args) -> int:
    sp = Semiprime.parse(args.N)
    tag = ObjectiveTag.parse(args.objective)
    if args.iters is None:
        args.iters = default_max_iter(sp)
    variant = _variant(args, default_variant(tag))
    seed = _seed(args)
    cfg = GwoConfig(args.agents, args.iters, variant, seed)
    result = factor(sp, tag, cfg)
    doc = result.to_dict()
    doc.update({
        "variant": variant.kind.value,
        "map_a": variant.map_a.label if variant.map_a else None,
        "map_c": variant.map_c.label if variant.map_c else None,
        "agents": args.agents,
        "iters": args.iters,
        "seed": seed,
    })
    _emit(doc)
    return EXIT_OK if result.success else EXIT_EXHAUSTED


def _resolve_plan(path_text: str) -> Path:
    p = Path(path_text)
    if p.is_file():
        return p
    bundled = resources.files("chaoswolf") / "plans" / p.name
    if bundled.is_file():
        return Path(str(bundled))
    raise UsageError(f"plan file not found: {path_text}")


def cmd_experiment(args) -> int:
    plans = load_plans(_resolve_plan(args.plan))
    fmt = args.format
    if fmt is None:
        fmt = "json" if args.out and args.out.endswith(".json") else "csv"
    rows = []
    for plan in plans:
        plan = ExperimentPlan(
            plan.objectives,
            plan.variants,
            args.agents or plan.n_agents,
            args.iters if args.iters is not None else plan.max_iter,
            args.runs or plan.n_runs,
            args.seed if args.seed is not None else _env_seed(plan.base_seed),
            plan.label,
        )
        rows.extend(run_plan(plan))
    data = export(rows, fmt)
    if args.out:
        Path(args.out).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chaoswolf", description="Chaotic Grey Wolf Optimizer toolkit")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("maps", help="dump iterates of a chaotic map")
    p.add_argument("kind", help=f"one of: {', '.join(MAP_NAMES)}")
    p.add_argument("--x0", "--seed", dest="x0", type=float, default=None, help="initial draw in (0, 1)")
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--param", type=float, default=None, help="map parameter (a or mu)")
    p.add_argument("--normalize", default=None, metavar="LO,HI")
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.set_defaults(func=cmd_maps)

    p = sub.add_parser("optimize", help="run one optimization on a benchmark")
    p.add_argument("benchmark", help="f1..f6 or a function name")
    _add_search_flags(p)
    p.add_argument("--out", default=None, help="write the full per-iteration trace as JSON")
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("factor", help="factor an equal-digit semiprime")
    p.add_argument("N", help="decimal integer")
    p.add_argument("--objective", choices=[t.value for t in ObjectiveTag], default="f2")
    _add_search_flags(p, iters_default=None)
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("experiment", help="execute an experiment plan file")
    p.add_argument("plan", help="plan JSON path or bundled plan name (table3.json, ...)")
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=["csv", "json"], default=None)
    p.add_argument("--runs", type=int, default=None)
    p.add_argument("--agents", type=int, default=None)
    p.add_argument("--iters", type=int, default=None)
    p.add_argument("--seed", type=int, default=None, help="base seed override")
    p.set_defaults(func=cmd_experiment)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, BoundsInfeasible, ValueError, KeyError, TypeError, OSError, json.JSONDecodeError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"chaoswolf {args.command}: error: {msg}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
