"""Grey Wolf Optimizer with chaotic parameters, benchmark harness and semiprime factorization."""

__version__ = "0.1.0"

from ._accel import backend
from .chaos import ChaoticMap, ChaoticState, Interval, MapKind
from .gwo import GwoConfig, GwoVariant, ObjectiveSpec, SearchSpace, Sense, run
from .benchmarks import get_benchmark
from .factorization import Semiprime, factor
from .experiments import ExperimentPlan, export, run_plan

__all__ = [
    "backend",
    "ChaoticMap",
    "ChaoticState",
    "Interval",
    "MapKind",
    "GwoConfig",
    "GwoVariant",
    "ObjectiveSpec",
    "SearchSpace",
    "Sense",
    "run",
    "get_benchmark",
    "Semiprime",
    "factor",
    "ExperimentPlan",
    "export",
    "run_plan",
]
