"""Batch harness: repeated seeded runs, summary statistics, table export."""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Union

import numpy as np

from .benchmarks import get_benchmark
from .factorization import FactorObjective, ObjectiveTag, Semiprime, default_variant, discrete_adapter
from .gwo import GwoConfig, GwoVariant, VariantKind, run

__all__ = [
    "FactorTarget",
    "ExperimentPlan",
    "RunStatistics",
    "ResultRow",
    "derive_seed",
    "aggregate",
    "run_plan",
    "export",
    "load_plans",
    "COLUMNS",
]

COLUMNS = ("map", "objective", "mean", "sd", "sr_percent", "sr_count", "mi", "sd_iter", "variant", "agents", "max_iter", "runs")

_MASK64 = (1 << 64) - 1


def _splitmix64(x: int) -> int:
    z = (x + 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def derive_seed(base_seed: int, run_index: int) -> int:
    """Per-run seed. splitmix64 is a bijection, so distinct indices never collide."""
    return (int(base_seed) ^ _splitmix64(int(run_index))) & _MASK64


@dataclass(frozen=True)
class FactorTarget:
    N: int
    objective: ObjectiveTag

    @property
    def label(self) -> str:
        return f"{self.objective.value}:{self.N}"


ObjectiveRef = Union[str, FactorTarget]


@dataclass
class ExperimentPlan:
    objectives: list
    variants: list = field(default_factory=list)
    n_agents: int = 30
    max_iter: int = 500
    n_runs: int = 30
    base_seed: int = 0
    label: str = ""

    def __post_init__(self):
        if self.n_runs < 1:
            raise ValueError("n_runs must be at least 1")
        if not self.objectives:
            raise ValueError("plan has no objectives")
        refs = []
        for ref in self.objectives:
            if isinstance(ref, FactorTarget):
                refs.append(ref)
            elif isinstance(ref, dict):
                refs.append(FactorTarget(Semiprime.parse(str(ref["N"])).N, ObjectiveTag.parse(ref.get("objective", "f2"))))
            else:
                get_benchmark(str(ref))
                refs.append(str(ref))
        self.objectives = refs

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentPlan":
        variants = [_variant_from_dict(v) for v in d.get("variants", [])]
        return cls(
            objectives=list(d["objectives"]),
            variants=variants,
            n_agents=int(d.get("agents", 30)),
            max_iter=int(d.get("iters", 500)),
            n_runs=int(d.get("runs", 30)),
            base_seed=int(d.get("base_seed", 0)),
            label=str(d.get("label", "")),
        )


def _variant_from_dict(d: dict) -> GwoVariant:
    kind = VariantKind(d.get("variant", "standard"))
    kw = {k: d[k] for k in ("final_exploit_iters", "final_a") if k in d}
    return GwoVariant(kind, d.get("map_a"), d.get("map_c"), **kw)


def load_plans(path) -> list[ExperimentPlan]:
    """Read a plan file: one plan object, a list of them, or ``{"plans": [...]}``."""
    doc = json.loads(Path(path).read_text())
    if isinstance(doc, dict) and "plans" in doc:
        doc = doc["plans"]
    if isinstance(doc, dict):
        doc = [doc]
    return [ExperimentPlan.from_dict(d) for d in doc]


@dataclass
class RunStatistics:
    mean: float
    sd: float
    sr_count: int
    n_runs: int
    mean_iterations: Optional[float] = None
    sd_iterations: Optional[float] = None

    @property
    def sr_percent(self) -> float:
        return 100.0 * self.sr_count / self.n_runs


@dataclass
class ResultRow:
    map: str
    objective: str
    variant: str
    agents: int
    max_iter: int
    stats: RunStatistics
    values: list = field(default_factory=list, repr=False)
    successes: list = field(default_factory=list, repr=False)
    iterations: list = field(default_factory=list, repr=False)


def aggregate(values: Iterable[float]) -> tuple[float, float]:
    """Mean and sample standard deviation (n - 1); a single value has SD 0."""
    v = np.asarray(list(values), dtype=np.float64)
    if v.size == 0:
        raise ValueError("aggregate of an empty list")
    if v.size == 1:
        return float(v[0]), 0.0
    return float(np.mean(v)), float(np.std(v, ddof=1))


def _statistics(values, successes, iterations, n_runs) -> RunStatistics:
    mean, sd = aggregate(values)
    won = [it for it, ok in zip(iterations, successes) if ok]
    mi = sdi = None
    if won and any(it is not None for it in won):
        mi, sdi = aggregate(won)
    return RunStatistics(mean, sd, int(sum(successes)), n_runs, mi, sdi)


def _run_benchmark(name: str, variant: GwoVariant, plan: ExperimentPlan):
    bench = get_benchmark(name)
    values, ok = [], []
    for i in range(plan.n_runs):
        cfg = GwoConfig(plan.n_agents, plan.max_iter, variant, derive_seed(plan.base_seed, i))
        trace = run(cfg, bench.objective)
        values.append(trace.best_value)
        ok.append(bool(bench.is_success(trace.best.position, trace.best_value)))
    return values, ok, [None] * plan.n_runs


def _run_factor(target: FactorTarget, variant: GwoVariant, plan: ExperimentPlan):
    fobj = FactorObjective.build(target.objective, target.N)
    spec = discrete_adapter(fobj)
    values, ok, iters = [], [], []
    for i in range(plan.n_runs):
        cfg = GwoConfig(plan.n_agents, plan.max_iter, variant, derive_seed(plan.base_seed, i))
        trace = run(cfg, spec, stop_at_value=0.0)
        success = False
        if trace.best_value == 0.0:
            fobj.recover(fobj.integer_point(trace.best.position))
            success = True
        values.append(trace.best_value)
        ok.append(success)
        iters.append(trace.iterations_used)
    return values, ok, iters


def run_plan(plan: ExperimentPlan) -> list[ResultRow]:
    """Execute every (objective, variant) pair of the plan ``n_runs`` times.

    Factorization targets with no variants listed use the default map choice
    for their objective. Rows come out objective-major, variant-minor.
    """
    rows = []
    for ref in plan.objectives:
        variants = plan.variants
        if not variants:
            variants = [default_variant(ref.objective) if isinstance(ref, FactorTarget) else GwoVariant.standard()]
        for v in variants:
            v = v.fitted(plan.max_iter)
            if isinstance(ref, FactorTarget):
                values, ok, iters = _run_factor(ref, v, plan)
                label = ref.label
            else:
                values, ok, iters = _run_benchmark(ref, v, plan)
                label = get_benchmark(ref).name
            stats = _statistics(values, ok, iters, plan.n_runs)
            rows.append(ResultRow(v.label, label, v.kind.value, plan.n_agents, plan.max_iter, stats, values, ok, iters))
    return rows


def _sci(v: Optional[float]) -> str:
    if v is None:
        return ""
    return f"{v:.4e}"


def _row_strings(row: ResultRow) -> dict:
    s = row.stats
    return {
        "map": row.map,
        "objective": row.objective,
        "mean": _sci(s.mean),
        "sd": _sci(s.sd),
        "sr_percent": f"{s.sr_percent:.2f}",
        "sr_count": str(s.sr_count),
        "mi": _sci(s.mean_iterations),
        "sd_iter": _sci(s.sd_iterations),
        "variant": row.variant,
        "agents": str(row.agents),
        "max_iter": str(row.max_iter),
        "runs": str(s.n_runs),
    }


def _json_value(key: str, text: str):
    if key in ("map", "objective", "variant"):
        return text
    if text == "":
        return None
    if key in ("sr_count", "agents", "max_iter", "runs"):
        return int(text)
    v = float(text)
    return v if math.isfinite(v) else None


def export(rows: list[ResultRow], fmt: str = "csv") -> bytes:
    """Serialize rows; identical rows always give identical bytes."""
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(COLUMNS)
        for r in rows:
            d = _row_strings(r)
            w.writerow([d[c] for c in COLUMNS])
        return buf.getvalue().encode("utf-8")
    if fmt == "json":
        out = []
        for r in rows:
            d = _row_strings(r)
            out.append({c: _json_value(c, d[c]) for c in COLUMNS})
        return (json.dumps(out, indent=2) + "\n").encode("utf-8")
    raise ValueError(f"unknown export format {fmt!r}")
