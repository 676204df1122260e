"""Semiprime factorization as a one-dimensional search.

Two objectives are driven by the GWO:

* ``F1``: ``N mod x`` over ``x`` in ``[10**(d-1), isqrt(N)]``; zero at the
  smaller factor.
* ``F2``: fractional part of ``sqrt(x**2 - N)`` over candidate means
  ``x = (p + q) / 2``; zero exactly when ``x**2 - N`` is a perfect square, and
  then ``p, q = x -/+ sqrt(x**2 - N)``.

``d`` is the number of decimal digits of ``isqrt(N)``; both factors are assumed
to have ``d`` digits. A third, two-dimensional objective
``|ln N - ln x - ln y|`` is available as ``F3_LOG``.

All integer work is exact (Python ints). The F2 fractional part is evaluated as
the rational ``(r - s*s) / (2*s + 1)`` with ``r = x*x - N`` and ``s = isqrt(r)``,
which is zero iff ``r`` is a square and rises with ``r`` between consecutive
squares like the true fractional part, without floating-point collapse.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .gwo import GwoConfig, GwoVariant, ObjectiveSpec, SearchSpace, run

__all__ = [
    "ObjectiveTag",
    "Semiprime",
    "FactorPair",
    "IntegerBounds",
    "FactorObjective",
    "FactorResult",
    "BoundsInfeasible",
    "isqrt",
    "digit_count_sqrt",
    "f1_bounds",
    "f1_eval",
    "f2_bounds",
    "f2_eval",
    "f2_eval_exact",
    "f3_bounds",
    "f3_log_eval",
    "recover_factors_f1",
    "recover_factors_f2",
    "discrete_adapter",
    "default_variant",
    "default_max_iter",
    "factor",
]

# continuous positions are float64; integers beyond this lose unit resolution
MAX_EXACT_POSITION = 2**53


class ObjectiveTag(enum.Enum):
    F1_MODULAR = "f1"
    F2_FRAC_SQRT = "f2"
    F3_LOG = "f3log"

    @classmethod
    def parse(cls, text) -> "ObjectiveTag":
        if isinstance(text, cls):
            return text
        key = str(text).strip().lower().replace("_", "").replace("-", "")
        for tag in cls:
            if key == tag.value:
                return tag
        raise ValueError(f"unknown objective {text!r}; expected f1, f2 or f3log")


class BoundsInfeasible(ValueError):
    """The equal-digit assumption leaves an empty search window."""


def isqrt(v: int) -> int:
    """Exact floor square root of a non-negative integer."""
    if v < 0:
        raise ValueError("isqrt of a negative number")
    return math.isqrt(v)


@dataclass(frozen=True)
class Semiprime:
    N: int

    def __post_init__(self):
        n = self.N
        if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
            raise TypeError("N must be an integer")
        n = int(n)
        object.__setattr__(self, "N", n)
        if n < 6:
            raise ValueError(f"N must be at least 6, got {n}")
        if n % 2 == 0:
            raise ValueError(f"N must be odd (a product of two odd primes), got {n}")

    @classmethod
    def parse(cls, text: str) -> "Semiprime":
        t = str(text).strip()
        if not t.isdigit():
            raise ValueError(f"N must be a positive decimal integer, got {text!r}")
        return cls(int(t))

    @property
    def sqrt_floor(self) -> int:
        return isqrt(self.N)

    @property
    def d(self) -> int:
        return len(str(self.sqrt_floor))

    @property
    def bits(self) -> int:
        return self.N.bit_length()


def _n(N) -> int:
    return N.N if isinstance(N, Semiprime) else int(N)


@dataclass(frozen=True)
class FactorPair:
    p: int
    q: int

    def __post_init__(self):
        if self.p > self.q:
            p, q = self.q, self.p
            object.__setattr__(self, "p", p)
            object.__setattr__(self, "q", q)
        if self.p < 2:
            raise ValueError(f"trivial factor {self.p}")

    def verify(self, N) -> "FactorPair":
        if self.p * self.q != _n(N):
            raise ArithmeticError(f"{self.p} * {self.q} != {_n(N)}")
        return self


@dataclass(frozen=True)
class IntegerBounds:
    lo: int
    hi: int

    def __post_init__(self):
        if self.lo > self.hi:
            raise BoundsInfeasible(f"empty integer window [{self.lo}, {self.hi}]")

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    @property
    def size(self) -> int:
        return self.hi - self.lo + 1


def digit_count_sqrt(N) -> int:
    return len(str(isqrt(_n(N))))


def f1_bounds(N) -> IntegerBounds:
    n = _n(N)
    d = digit_count_sqrt(n)
    # x = 1 divides everything; start at 2 for one-digit factors
    return IntegerBounds(max(10 ** (d - 1), 2), isqrt(n))


def f1_eval(x: int, N) -> int:
    if x < 2:
        raise ValueError("F1 is defined for x >= 2")
    return _n(N) % x


def f2_bounds(N) -> IntegerBounds:
    n = _n(N)
    s = isqrt(n)
    d = len(str(s))
    low = 10 ** (d - 1)
    # (10^(d-1) + N/10^(d-1)) / 2, floored without leaving the integers
    hi1 = (low * low + n) // (2 * low)
    # floor((sqrt(N) + 10^d - 1) / 2) == floor((isqrt(N) + 10^d - 1) / 2)
    hi2 = (s + 10**d - 1) // 2
    return IntegerBounds(s + 1, min(hi1, hi2))


def f2_eval_exact(x: int, N) -> Fraction:
    r = x * x - _n(N)
    if r <= 0:
        raise ValueError("F2 needs x*x > N")
    s = isqrt(r)
    return Fraction(r - s * s, 2 * s + 1)


def f2_eval(x: int, N) -> float:
    """Fractional-part surrogate of ``sqrt(x*x - N)`` as a float in [0, 1)."""
    r = x * x - _n(N)
    if r <= 0:
        raise ValueError("F2 needs x*x > N")
    s = isqrt(r)
    rem = r - s * s
    if rem == 0:
        return 0.0
    return rem / (2 * s + 1)


def f3_bounds(N) -> tuple[IntegerBounds, IntegerBounds]:
    n = _n(N)
    s = isqrt(n)
    d = len(str(s))
    return IntegerBounds(max(10 ** (d - 1), 2), s), IntegerBounds(s, 10**d - 1)


def f3_log_eval(x: int, y: int, N) -> float:
    n = _n(N)
    if x < 1 or y < 1:
        raise ValueError("F3 needs positive x and y")
    if x * y == n:
        return 0.0
    return abs(math.log(n) - math.log(x) - math.log(y))


def recover_factors_f1(x: int, N) -> FactorPair:
    n = _n(N)
    if not 2 <= x <= isqrt(n):
        raise ValueError(f"x={x} outside [2, isqrt(N)]")
    if n % x:
        raise ValueError(f"{x} does not divide {n}")
    return FactorPair(x, n // x).verify(n)


def recover_factors_f2(x: int, N) -> FactorPair:
    n = _n(N)
    r = x * x - n
    if r < 0:
        raise ValueError("x*x < N")
    s = isqrt(r)
    if s * s != r:
        raise ValueError(f"x*x - N = {r} is not a perfect square")
    if x - s < 2:
        raise ValueError(f"x={x} only yields the trivial factorization")
    return FactorPair(x - s, x + s).verify(n)


@dataclass(frozen=True)
class FactorObjective:
    tag: ObjectiveTag
    N: Semiprime
    bounds: tuple

    @classmethod
    def build(cls, tag, N) -> "FactorObjective":
        tag = ObjectiveTag.parse(tag)
        sp = N if isinstance(N, Semiprime) else Semiprime(int(N))
        if tag is ObjectiveTag.F1_MODULAR:
            b = (f1_bounds(sp),)
        elif tag is ObjectiveTag.F2_FRAC_SQRT:
            b = (f2_bounds(sp),)
        else:
            b = f3_bounds(sp)
        return cls(tag, sp, b)

    def integer_point(self, position) -> tuple[int, ...]:
        pos = np.atleast_1d(np.asarray(position, dtype=np.float64))
        out = []
        for v, b in zip(pos, self.bounds):
            i = int(np.rint(v))
            out.append(min(max(i, b.lo), b.hi))
        return tuple(out)

    def evaluate_integer(self, point) -> float:
        n = self.N.N
        if self.tag is ObjectiveTag.F1_MODULAR:
            return float(f1_eval(point[0], n))
        if self.tag is ObjectiveTag.F2_FRAC_SQRT:
            return f2_eval(point[0], n)
        return f3_log_eval(point[0], point[1], n)

    def recover(self, point) -> FactorPair:
        n = self.N.N
        if self.tag is ObjectiveTag.F1_MODULAR:
            return recover_factors_f1(point[0], n)
        if self.tag is ObjectiveTag.F2_FRAC_SQRT:
            return recover_factors_f2(point[0], n)
        x, y = point
        if x * y != n:
            raise ValueError(f"{x} * {y} != {n}")
        return FactorPair(x, y).verify(n)


def discrete_adapter(objective: FactorObjective) -> ObjectiveSpec:
    """Expose an integer objective to the continuous optimizer.

    Positions are rounded to the nearest integer and clamped to the window
    before exact evaluation.
    """
    for b in objective.bounds:
        if b.hi >= MAX_EXACT_POSITION:
            raise ValueError("search window exceeds float64 integer resolution")
    lower = [float(b.lo) for b in objective.bounds]
    upper = [float(b.hi) for b in objective.bounds]
    # a one-point window still needs a non-empty box
    upper = [u if u > l else l + 0.5 for l, u in zip(lower, upper)]

    def evaluate(position):
        return objective.evaluate_integer(objective.integer_point(position))

    return ObjectiveSpec(
        evaluate,
        SearchSpace(lower, upper),
        known_best_value=0.0,
        name=f"{objective.tag.value}:{objective.N.N}",
    )


def default_variant(tag) -> GwoVariant:
    """Map choices used for factorization: sinusoidal a with iterative C for F1,
    sinusoidal for both otherwise."""
    tag = ObjectiveTag.parse(tag)
    if tag is ObjectiveTag.F1_MODULAR:
        return GwoVariant.chaotic_both_with("sinusoidal", "iterative")
    return GwoVariant.chaotic_both_with("sinusoidal", "sinusoidal")


# (largest N covered, max iterations): budgets grow with the size of N
_ITER_ROWS = (
    (50759, 100),
    (370627, 200),
    (29835457, 500),
    (392913607, 1000),
    (5325280633, 2000),
    (42336478013, 3000),
    (272903119607, 4000),
)


def default_max_iter(N) -> int:
    n = _n(N)
    for top, iters in _ITER_ROWS:
        if n <= top:
            return iters
    return 12000


@dataclass
class FactorResult:
    N: int
    objective: ObjectiveTag
    pair: Optional[FactorPair]
    iterations_used: int
    best_value: float

    @property
    def success(self) -> bool:
        return self.pair is not None

    def to_dict(self) -> dict:
        return {
            "N": str(self.N),
            "objective": self.objective.value,
            "success": self.success,
            "p": None if self.pair is None else str(self.pair.p),
            "q": None if self.pair is None else str(self.pair.q),
            "iterations": int(self.iterations_used),
            "best_value": float(self.best_value),
        }


def factor(N, objective_tag="f2", cfg: Optional[GwoConfig] = None) -> FactorResult:
    """Search for the factors of ``N`` with the (chaotic) GWO.

    Raises :class:`BoundsInfeasible` when the equal-digit window is empty.
    """
    sp = N if isinstance(N, Semiprime) else Semiprime(int(N))
    tag = ObjectiveTag.parse(objective_tag)
    if cfg is None:
        cfg = GwoConfig(30, default_max_iter(sp), default_variant(tag).fitted(default_max_iter(sp)))
    fobj = FactorObjective.build(tag, sp)
    spec = discrete_adapter(fobj)
    trace = run(cfg, spec, stop_at_value=0.0)
    pair = None
    if trace.best_value == 0.0:
        pair = fobj.recover(fobj.integer_point(trace.best.position))
    return FactorResult(sp.N, tag, pair, trace.iterations_used, float(trace.best_value))
