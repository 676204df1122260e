"""One-dimensional chaotic maps used to drive GWO parameters.

Seven maps are supported (Gauss, Logistic, Chebyshev, Iterative, Singer, Tent,
Sinusoidal). A :class:`ChaoticState` is an immutable value; :func:`next_value`
returns the advanced state together with the new iterate.

Finite precision can drop an orbit onto a fixed point (Logistic at 0.75,
Sinusoidal collapsing through 1.0 to 0.0, ...). Any iterate within ``1e-12`` of a
range endpoint, of zero, or of a known fixed point is kicked by ``1e-6`` and
reflected back into the open native range.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

import numpy as np
from scipy.optimize import brentq

from . import _kernels as K

__all__ = [
    "MapKind",
    "ChaoticMap",
    "ChaoticState",
    "Interval",
    "LOGISTIC_EXCLUDED_SEEDS",
    "seed_state",
    "next_value",
    "normalized_next",
    "normalize",
    "sample_sequence",
    "fill_values",
    "orbit_extremes",
]


class MapKind(enum.Enum):
    GAUSS = K.GAUSS
    LOGISTIC = K.LOGISTIC
    CHEBYSHEV = K.CHEBYSHEV
    ITERATIVE = K.ITERATIVE
    SINGER = K.SINGER
    TENT = K.TENT
    SINUSOIDAL = K.SINUSOIDAL

    @classmethod
    def parse(cls, name: str) -> "MapKind":
        key = name.strip().upper()
        if key == "CHEBYCHEV":
            key = "CHEBYSHEV"
        try:
            return cls[key]
        except KeyError:
            valid = ", ".join(m.name.lower() for m in cls)
            raise ValueError(f"unknown chaotic map {name!r}; expected one of: {valid}") from None

    @property
    def label(self) -> str:
        return self.name.lower()


_DEFAULT_PARAM = {
    MapKind.LOGISTIC: 4.0,
    MapKind.ITERATIVE: 0.7,
    MapKind.SINGER: 1.07,
    MapKind.SINUSOIDAL: 2.3,
}

# Logistic seeds that fall onto a fixed point or collapse to zero.
LOGISTIC_EXCLUDED_SEEDS = (0.0, 0.25, 0.5, 0.75, 1.0)


def _fixed_points(kind: MapKind, param: float, full_form: bool) -> np.ndarray:
    if kind is MapKind.LOGISTIC:
        pts = [1.0 - 1.0 / param] if param > 1.0 else []
    elif kind is MapKind.TENT:
        pts = [10.0 / 13.0]
    elif kind is MapKind.GAUSS:
        # frac(1/x) = x on (1/(n+1), 1/n] for the first few branches
        pts = [(-n + math.sqrt(n * n + 4.0)) / 2.0 for n in range(1, 9)]
    elif kind is MapKind.SINUSOIDAL:
        if full_form:
            g = lambda x: param * x * math.sin(math.pi * x) - 1.0
        else:
            g = lambda x: math.sin(math.pi * x) - x
        xs = np.linspace(0.05, 0.999, 400)
        vals = [g(x) for x in xs]
        pts = [brentq(g, xs[i], xs[i + 1], xtol=1e-15) for i in range(len(xs) - 1) if vals[i] * vals[i + 1] < 0]
    elif kind is MapKind.SINGER:
        # mu*(7.86 - 23.31x + 28.75x^2 - 13.3x^3) = 1
        roots = np.roots([-13.3 * param, 28.75 * param, -23.31 * param, 7.86 * param - 1.0])
        pts = [r.real for r in roots if abs(r.imag) < 1e-12 and 0.0 < r.real < 1.0]
    else:
        pts = []
    return np.asarray(pts, dtype=np.float64)


@dataclass(frozen=True)
class ChaoticMap:
    """A map kind with its parameter.

    ``param`` is ``a`` for Logistic, Iterative and Sinusoidal and ``mu`` for
    Singer; the other maps ignore it. ``full_form`` switches Sinusoidal from
    ``sin(pi x)`` to ``a x^2 sin(pi x)``.
    """

    kind: MapKind
    param: Optional[float] = None
    full_form: bool = False
    fixed_points: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if isinstance(self.kind, str):
            object.__setattr__(self, "kind", MapKind.parse(self.kind))
        if self.param is None:
            object.__setattr__(self, "param", _DEFAULT_PARAM.get(self.kind, 0.0))
        p = float(self.param)
        if not math.isfinite(p):
            raise ValueError("map parameter must be finite")
        if self.kind is MapKind.ITERATIVE and not 0.0 < p < 1.0:
            raise ValueError(f"iterative map parameter must lie in (0, 1), got {p}")
        if self.kind is MapKind.SINGER and not 0.9 <= p <= 1.08:
            raise ValueError(f"singer map mu must lie in [0.9, 1.08], got {p}")
        object.__setattr__(self, "param", p)
        object.__setattr__(self, "fixed_points", _fixed_points(self.kind, p, self.full_form))

    @property
    def code(self) -> int:
        return self.kind.value

    @property
    def native_range(self) -> tuple[float, float]:
        return K.native_range(self.code)

    @property
    def label(self) -> str:
        return self.kind.label


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)) or not self.lo < self.hi:
            raise ValueError(f"invalid interval [{self.lo}, {self.hi}]")

    @classmethod
    def parse(cls, text: str) -> "Interval":
        try:
            lo, hi = (float(t) for t in text.split(","))
        except ValueError:
            raise ValueError(f"interval must look like 'lo,hi', got {text!r}") from None
        return cls(lo, hi)


@dataclass(frozen=True)
class ChaoticState:
    map: ChaoticMap
    x: float
    k: int = 0


def _as_map(kind) -> ChaoticMap:
    if isinstance(kind, ChaoticMap):
        return kind
    return ChaoticMap(MapKind.parse(kind) if isinstance(kind, str) else kind)


def seed_state(kind, rng_draw: float, redraw: Optional[Callable[[], float]] = None) -> ChaoticState:
    """Build a state from a uniform draw in the open interval (0, 1).

    Maps with native range (-1, 1) receive ``2 * draw - 1``. Logistic seeds in
    :data:`LOGISTIC_EXCLUDED_SEEDS` are replaced by calling ``redraw``; if no
    redraw source is given a ``ValueError`` is raised instead.
    """
    cmap = _as_map(kind)
    draw = rng_draw
    while True:
        draw = float(draw)
        if not math.isfinite(draw) or not 0.0 < draw < 1.0:
            raise ValueError(f"seed draw must lie in the open interval (0, 1), got {draw!r}")
        if cmap.kind is MapKind.LOGISTIC and draw in LOGISTIC_EXCLUDED_SEEDS:
            if redraw is None:
                raise ValueError(f"logistic seed {draw} is degenerate; a redraw is required")
            draw = redraw()
            continue
        break
    lo, hi = cmap.native_range
    return ChaoticState(cmap, lo + (hi - lo) * draw, 0)


def next_value(state: ChaoticState) -> tuple[ChaoticState, float]:
    m = state.map
    lo, hi = m.native_range
    x, k = K.advance(m.code, float(state.x), int(state.k), m.param, m.full_form, m.fixed_points, lo, hi)
    return ChaoticState(m, x, k), x


def normalize(value: float, native: tuple[float, float], target: Interval) -> float:
    lo, hi = native
    return target.lo + (target.hi - target.lo) * (value - lo) / (hi - lo)


def normalized_next(state: ChaoticState, target: Interval) -> tuple[ChaoticState, float]:
    state, x = next_value(state)
    return state, normalize(x, state.map.native_range, target)


def fill_values(state: ChaoticState, count: int) -> tuple[ChaoticState, np.ndarray]:
    """Advance ``count`` times, returning the new state and the raw iterates."""
    out = np.empty(int(count), dtype=np.float64)
    m = state.map
    x, k = K.fill(m.code, float(state.x), int(state.k), m.param, m.full_form, m.fixed_points, out)
    return replace(state, x=float(x), k=int(k)), out


def sample_sequence(state: ChaoticState, count: int) -> list[float]:
    if count < 1:
        raise ValueError("count must be at least 1")
    return fill_values(state, count)[1].tolist()


def orbit_extremes(cmap: ChaoticMap, seeds, steps: int):
    """Iterate every initial value in ``seeds`` for ``steps`` steps.

    Returns ``(final, mins, maxs)`` arrays, one entry per seed. Used by the
    range-containment checks, where the per-step Python overhead of
    :func:`next_value` would dominate.
    """
    xs = np.ascontiguousarray(seeds, dtype=np.float64)
    return K.orbit_extremes(cmap.code, xs, 0, cmap.param, cmap.full_form, cmap.fixed_points, int(steps))
