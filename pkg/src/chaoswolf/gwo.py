"""Grey Wolf Optimizer with optional chaotic ``a`` and chaotic ``C``.

Positions are updated towards the three best wolves (alpha, beta, delta):

    D_l = |C_l * X_l - X|,   X_l' = X_l - A_l * D_l,   X <- (X_a' + X_b' + X_d') / 3

with ``A = 2 a r1 - a`` and ``C = 2 r2``. The chaotic variants replace ``a`` by a
map iterate normalized to [1, 2] (except for a short final exploitation window
where ``a`` is pinned) and/or replace ``r2`` by a map iterate normalized to [0, 1].

Everything is minimized internally; maximization problems are negated on the
way in and reported back in their own sense.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from . import _kernels as K
from .chaos import ChaoticMap, ChaoticState, Interval, MapKind, fill_values, normalized_next, seed_state

__all__ = [
    "Sense",
    "SearchSpace",
    "ObjectiveSpec",
    "Agent",
    "Pack",
    "VariantKind",
    "GwoVariant",
    "GwoConfig",
    "RunTrace",
    "initialize_pack",
    "a_schedule",
    "coefficients",
    "update_position",
    "step",
    "run",
]

A_RANGE = Interval(1.0, 2.0)
UNIT = Interval(0.0, 1.0)
# separates the chaotic-seed stream from the main position/coefficient stream
_CHAOS_STREAM = 0x43484153


class Sense(enum.Enum):
    MINIMIZE = "min"
    MAXIMIZE = "max"


@dataclass(frozen=True)
class SearchSpace:
    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lo = np.atleast_1d(np.asarray(self.lower, dtype=np.float64))
        hi = np.atleast_1d(np.asarray(self.upper, dtype=np.float64))
        if lo.shape != hi.shape or lo.ndim != 1 or lo.size == 0:
            raise ValueError("lower and upper must be 1-D vectors of equal, positive length")
        if not np.all(lo < hi):
            raise ValueError("every lower bound must be strictly below its upper bound")
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)

    @classmethod
    def box(cls, lo: float, hi: float, dim: int) -> "SearchSpace":
        return cls(np.full(dim, float(lo)), np.full(dim, float(hi)))

    @property
    def dim(self) -> int:
        return self.lower.size

    @property
    def width(self) -> float:
        """Common per-dimension width (UB - LB); the widest one if they differ."""
        return float(np.max(self.upper - self.lower))

    def clamp(self, x):
        return np.clip(x, self.lower, self.upper)

    def contains(self, x) -> bool:
        x = np.asarray(x)
        return bool(np.all(x >= self.lower) and np.all(x <= self.upper))


@dataclass
class ObjectiveSpec:
    """A scalar function on a box.

    If ``vectorized`` is true, ``evaluate`` also accepts an ``(n, dim)`` array and
    returns ``n`` values; the optimizer then evaluates the whole pack in one call.
    """

    evaluate: Callable
    space: SearchSpace
    sense: Sense = Sense.MINIMIZE
    known_best_value: Optional[float] = None
    known_best_position: Optional[np.ndarray] = None
    vectorized: bool = False
    name: str = ""

    def evaluate_many(self, X: np.ndarray) -> np.ndarray:
        if self.vectorized:
            vals = np.asarray(self.evaluate(X), dtype=np.float64).reshape(X.shape[0])
        else:
            vals = np.fromiter((self.evaluate(row) for row in X), dtype=np.float64, count=X.shape[0])
        return vals

    def _internal(self, X: np.ndarray) -> np.ndarray:
        vals = self.evaluate_many(X)
        if self.sense is Sense.MAXIMIZE:
            vals = -vals
        return np.where(np.isnan(vals), np.inf, vals)

    def to_user(self, internal_value: float) -> float:
        return -internal_value if self.sense is Sense.MAXIMIZE else internal_value


@dataclass
class Agent:
    position: np.ndarray
    fitness: float


@dataclass
class Pack:
    """Wolf positions plus the remembered alpha/beta/delta.

    ``fitness`` and ``leader_fitness`` are in minimization orientation.
    """

    positions: np.ndarray
    fitness: np.ndarray
    leaders: np.ndarray
    leader_fitness: np.ndarray

    @property
    def agents(self) -> list[Agent]:
        return [Agent(p.copy(), float(f)) for p, f in zip(self.positions, self.fitness)]

    @property
    def alpha(self) -> Agent:
        return Agent(self.leaders[0].copy(), float(self.leader_fitness[0]))

    @property
    def beta(self) -> Agent:
        return Agent(self.leaders[1].copy(), float(self.leader_fitness[1]))

    @property
    def delta(self) -> Agent:
        return Agent(self.leaders[2].copy(), float(self.leader_fitness[2]))

    def copy(self) -> "Pack":
        return Pack(self.positions.copy(), self.fitness.copy(), self.leaders.copy(), self.leader_fitness.copy())


class VariantKind(enum.Enum):
    STANDARD = "standard"
    CHAOTIC_A = "chaotic-a"
    CHAOTIC_C = "chaotic-c"
    CHAOTIC_BOTH = "chaotic-both"


def _coerce_map(m):
    if m is None or isinstance(m, ChaoticMap):
        return m
    return ChaoticMap(MapKind.parse(m) if isinstance(m, str) else m)


@dataclass(frozen=True)
class GwoVariant:
    kind: VariantKind = VariantKind.STANDARD
    map_a: Optional[ChaoticMap] = None
    map_c: Optional[ChaoticMap] = None
    final_exploit_iters: int = 50
    final_a: float = 0.2

    def __post_init__(self):
        kind = VariantKind(self.kind) if isinstance(self.kind, str) else self.kind
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "map_a", _coerce_map(self.map_a))
        object.__setattr__(self, "map_c", _coerce_map(self.map_c))
        if self.chaotic_a and self.map_a is None:
            raise ValueError(f"{kind.value} needs a map for a")
        if self.chaotic_c and self.map_c is None:
            raise ValueError(f"{kind.value} needs a map for C")
        if not self.chaotic_a:
            object.__setattr__(self, "map_a", None)
        if not self.chaotic_c:
            object.__setattr__(self, "map_c", None)
        if self.final_exploit_iters < 0:
            raise ValueError("final_exploit_iters must be non-negative")

    @classmethod
    def standard(cls) -> "GwoVariant":
        return cls(VariantKind.STANDARD)

    @classmethod
    def chaotic_a_with(cls, m, **kw) -> "GwoVariant":
        return cls(VariantKind.CHAOTIC_A, map_a=m, **kw)

    @classmethod
    def chaotic_c_with(cls, m, **kw) -> "GwoVariant":
        return cls(VariantKind.CHAOTIC_C, map_c=m, **kw)

    @classmethod
    def chaotic_both_with(cls, map_a, map_c, **kw) -> "GwoVariant":
        return cls(VariantKind.CHAOTIC_BOTH, map_a=map_a, map_c=map_c, **kw)

    def fitted(self, max_iter: int) -> "GwoVariant":
        """Copy whose final exploitation window fits inside ``max_iter``."""
        if self.final_exploit_iters <= max_iter:
            return self
        return GwoVariant(self.kind, self.map_a, self.map_c, max_iter, self.final_a)

    @property
    def chaotic_a(self) -> bool:
        return self.kind in (VariantKind.CHAOTIC_A, VariantKind.CHAOTIC_BOTH)

    @property
    def chaotic_c(self) -> bool:
        return self.kind in (VariantKind.CHAOTIC_C, VariantKind.CHAOTIC_BOTH)

    @property
    def label(self) -> str:
        if self.kind is VariantKind.STANDARD:
            return "standard"
        if self.kind is VariantKind.CHAOTIC_A:
            return self.map_a.label
        if self.kind is VariantKind.CHAOTIC_C:
            return self.map_c.label
        return f"{self.map_a.label}/{self.map_c.label}"


@dataclass(frozen=True)
class GwoConfig:
    n_agents: int = 30
    max_iter: int = 500
    variant: GwoVariant = field(default_factory=GwoVariant)
    rng_seed: int = 0

    def __post_init__(self):
        if self.n_agents < 4:
            raise ValueError("n_agents must be at least 4 (three leaders plus one omega)")
        if self.max_iter < 0:
            raise ValueError("max_iter must be non-negative")
        if self.variant.chaotic_a and self.variant.final_exploit_iters > self.max_iter:
            raise ValueError(
                f"final_exploit_iters ({self.variant.final_exploit_iters}) exceeds max_iter ({self.max_iter})"
            )
        if not 0 <= int(self.rng_seed) < 2**64:
            raise ValueError("rng_seed must fit in an unsigned 64-bit integer")


@dataclass
class RunTrace:
    best_value_per_iter: np.ndarray
    a_per_iter: np.ndarray
    iterations_used: int
    best: Agent

    @property
    def best_value(self) -> float:
        return self.best.fitness

    def to_dict(self) -> dict:
        return {
            "iterations_used": int(self.iterations_used),
            "best_value": float(self.best.fitness),
            "best_position": [float(v) for v in self.best.position],
            "best_value_per_iter": [float(v) for v in self.best_value_per_iter],
            "a_per_iter": [float(v) for v in self.a_per_iter],
        }


def _rank_leaders(cand_pos: np.ndarray, cand_fit: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # stable: earlier candidates (the previous leaders) win ties, so leaders
    # are only displaced by strictly better wolves
    order = np.argsort(cand_fit, kind="stable")
    chosen: list[int] = []
    for idx in order:
        if any(cand_fit[idx] == cand_fit[c] and np.array_equal(cand_pos[idx], cand_pos[c]) for c in chosen):
            continue
        chosen.append(int(idx))
        if len(chosen) == 3:
            break
    while len(chosen) < 3:
        chosen.append(chosen[-1])
    return cand_pos[chosen].copy(), cand_fit[chosen].copy()


def initialize_pack(cfg: GwoConfig, obj: ObjectiveSpec, rng: Optional[np.random.Generator] = None) -> Pack:
    if rng is None:
        rng = np.random.default_rng(cfg.rng_seed)
    sp = obj.space
    X = sp.lower + (sp.upper - sp.lower) * rng.random((cfg.n_agents, sp.dim))
    X = sp.clamp(X)
    fit = obj._internal(X)
    leaders, lfit = _rank_leaders(X, fit)
    return Pack(X, fit, leaders, lfit)


def a_schedule(variant: GwoVariant, t: int, max_iter: int, chaotic_a: Optional[ChaoticState] = None):
    """Value of ``a`` at iteration ``t``.

    Returns ``(a, state)``; ``state`` is the advanced chaotic state (unchanged
    when no chaotic value was consumed).
    """
    if not 0 <= t < max_iter:
        raise ValueError(f"iteration {t} outside [0, {max_iter})")
    if not variant.chaotic_a:
        return 2.0 * (1.0 - t / max_iter), chaotic_a
    if chaotic_a is None:
        raise ValueError("chaotic-a variant requires a chaotic state")
    if t >= max_iter - variant.final_exploit_iters:
        return variant.final_a, chaotic_a
    state, a = normalized_next(chaotic_a, A_RANGE)
    return a, state


def coefficients(
    a: float,
    rng: np.random.Generator,
    shape,
    variant: GwoVariant = GwoVariant(),
    chaotic_c: Optional[ChaoticState] = None,
):
    """Draw ``A = 2 a r1 - a`` and ``C = 2 r2`` arrays of the given shape.

    ``r1`` is always uniform. ``r2`` is uniform, or, for chaotic-C variants,
    consecutive iterates of ``chaotic_c`` normalized to [0, 1] in C order.
    Returns ``(A, C, chaotic_c)``.
    """
    if a < 0:
        raise ValueError("a must be non-negative")
    shape = (shape,) if isinstance(shape, (int, np.integer)) else tuple(shape)
    r1 = rng.random(shape)
    A = 2.0 * a * r1 - a
    if variant.chaotic_c:
        if chaotic_c is None:
            raise ValueError("chaotic-C variant requires a chaotic state")
        chaotic_c, raw = fill_values(chaotic_c, int(np.prod(shape)))
        lo, hi = chaotic_c.map.native_range
        r2 = ((raw - lo) / (hi - lo)).reshape(shape)
    else:
        r2 = rng.random(shape)
    return A, 2.0 * r2, chaotic_c


def update_position(x, leaders, A, C, space: SearchSpace) -> np.ndarray:
    """New position of one wolf.

    ``leaders``, ``A`` and ``C`` are ``(3, dim)`` arrays (alpha, beta, delta rows).
    """
    x = np.asarray(x, dtype=np.float64)
    leaders = np.asarray(leaders, dtype=np.float64)
    D = np.abs(np.asarray(C) * leaders - x)
    Xs = leaders - np.asarray(A) * D
    return space.clamp((Xs[0] + Xs[1] + Xs[2]) / 3.0)


@dataclass
class _RunState:
    rng: np.random.Generator
    chaotic_a: Optional[ChaoticState] = None
    chaotic_c: Optional[ChaoticState] = None
    last_a: float = float("nan")


def _open_unit(rng: np.random.Generator) -> float:
    u = rng.random()
    while u == 0.0:
        u = rng.random()
    return u


def _start(cfg: GwoConfig, rng_seed: int) -> _RunState:
    rng = np.random.default_rng(rng_seed)
    chaos_rng = np.random.default_rng([rng_seed, _CHAOS_STREAM])
    st = _RunState(rng)
    v = cfg.variant
    if v.chaotic_a:
        st.chaotic_a = seed_state(v.map_a, _open_unit(chaos_rng), lambda: _open_unit(chaos_rng))
    if v.chaotic_c:
        st.chaotic_c = seed_state(v.map_c, _open_unit(chaos_rng), lambda: _open_unit(chaos_rng))
    return st


def step(pack: Pack, cfg: GwoConfig, obj: ObjectiveSpec, t: int, state: _RunState, a: Optional[float] = None) -> Pack:
    """Advance the pack by one iteration.

    ``a`` overrides the schedule when given (the chaotic state for ``a`` is then
    left untouched).
    """
    v = cfg.variant
    if a is None:
        a, state.chaotic_a = a_schedule(v, t, cfg.max_iter, state.chaotic_a)
    state.last_a = a
    n, dim = pack.positions.shape
    A, C, state.chaotic_c = coefficients(a, state.rng, (n, 3, dim), v, state.chaotic_c)
    sp = obj.space
    X = K.update_positions(pack.positions, pack.leaders, A, C, sp.lower, sp.upper)
    fit = obj._internal(X)
    cand_pos = np.concatenate([pack.leaders, X])
    cand_fit = np.concatenate([pack.leader_fitness, fit])
    leaders, lfit = _rank_leaders(cand_pos, cand_fit)
    return Pack(X, fit, leaders, lfit)


def _reached(value_internal: float, stop_internal: Optional[float]) -> bool:
    return stop_internal is not None and value_internal <= stop_internal


def run(
    cfg: GwoConfig,
    obj: ObjectiveSpec,
    stop_at_value: Optional[float] = None,
    a_source: Optional[Callable[[int], float]] = None,
) -> RunTrace:
    """Run the optimizer for ``cfg.max_iter`` iterations.

    Stops early once the incumbent reaches ``stop_at_value`` (in the objective's
    own sense). ``a_source(t)``, if given, replaces the ``a`` schedule entirely.
    """
    state = _start(cfg, int(cfg.rng_seed))
    pack = initialize_pack(cfg, obj, state.rng)
    stop_internal = None
    if stop_at_value is not None:
        stop_internal = -stop_at_value if obj.sense is Sense.MAXIMIZE else stop_at_value

    best = [pack.leader_fitness[0]]
    a_trace: list[float] = []
    used = 0
    if not _reached(pack.leader_fitness[0], stop_internal):
        for t in range(cfg.max_iter):
            a = a_source(t) if a_source is not None else None
            pack = step(pack, cfg, obj, t, state, a)
            a_trace.append(state.last_a)
            best.append(pack.leader_fitness[0])
            used = t + 1
            if _reached(pack.leader_fitness[0], stop_internal):
                break

    best_arr = np.array([obj.to_user(v) for v in best])
    alpha = pack.alpha
    return RunTrace(best_arr, np.array(a_trace), used, Agent(alpha.position, obj.to_user(alpha.fitness)))


def exploration_fraction(a_values: Sequence[float], start: int, stop: int) -> float:
    """Fraction of iterations in ``[start, stop)`` where ``a`` exceeds 1."""
    window = np.asarray(a_values, dtype=np.float64)[start:stop]
    if window.size == 0:
        return math.nan
    return float(np.mean(window > 1.0))
