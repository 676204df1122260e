"""Continuous test functions and the success criterion used to score runs.

All vector functions reduce over the last axis, so they accept a single point
of shape ``(dim,)`` or a batch of shape ``(n, dim)``.

Registry names: ``f1`` Rastrigin, ``f2`` Ackley, ``f3`` Sphere, ``f4``
Goldstein-Price, ``f5`` Griewank, ``f6`` product modulo 60000 (maximized).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .gwo import ObjectiveSpec, SearchSpace, Sense

__all__ = [
    "rastrigin",
    "ackley",
    "sphere",
    "goldstein_price",
    "griewank",
    "product_mod",
    "success_check",
    "BenchmarkSpec",
    "REGISTRY",
    "get_benchmark",
    "PRODUCT_MODULUS",
    "PRODUCT_SUCCESS_VALUE",
]

PRODUCT_MODULUS = 60000.0
PRODUCT_SUCCESS_VALUE = 59998.0


def rastrigin(x):
    x = np.asarray(x, dtype=np.float64)
    n = x.shape[-1]
    return 10.0 * n + np.sum(x * x - 10.0 * np.cos(2.0 * np.pi * x), axis=-1)


def ackley(x):
    x = np.asarray(x, dtype=np.float64)
    n = x.shape[-1]
    r = np.sqrt(np.sum(x * x, axis=-1) / n)
    c = np.sum(np.cos(2.0 * np.pi * x), axis=-1) / n
    return -20.0 * np.exp(-0.2 * r) - np.exp(c) + 20.0 + np.e


def sphere(x):
    x = np.asarray(x, dtype=np.float64)
    return np.sum(x * x, axis=-1)


def goldstein_price(x, y):
    a = 1.0 + (x + y + 1.0) ** 2 * (19.0 - 14.0 * x + 3.0 * x**2 - 14.0 * y + 6.0 * x * y + 3.0 * y**2)
    b = 30.0 + (2.0 * x - 3.0 * y) ** 2 * (18.0 - 32.0 * x + 12.0 * x**2 + 48.0 * y - 36.0 * x * y + 27.0 * y**2)
    return a * b


def _goldstein_price_vec(v):
    v = np.asarray(v, dtype=np.float64)
    return goldstein_price(v[..., 0], v[..., 1])


def griewank(x):
    x = np.asarray(x, dtype=np.float64)
    i = np.arange(1, x.shape[-1] + 1)
    return 1.0 + np.sum(x * x, axis=-1) / 4000.0 - np.prod(np.cos(x / np.sqrt(i)), axis=-1)


def product_mod(x):
    """Product of the coordinates, floored modulo 60000."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape[-1] != 5:
        raise ValueError("product_mod takes 5 coordinates")
    v = np.prod(x, axis=-1)
    return v - PRODUCT_MODULUS * np.floor(v / PRODUCT_MODULUS)


def success_check(obtained, optima, space: SearchSpace) -> bool:
    """True when the squared distance to some optimum is within ``(UB - LB) * 1e-4``."""
    if len(optima) == 0:
        raise ValueError("success_check needs at least one optimum")
    x = np.asarray(obtained, dtype=np.float64)
    threshold = space.width * 1e-4
    for opt in optima:
        opt = np.asarray(opt, dtype=np.float64)
        if opt.shape != x.shape:
            raise ValueError(f"dimension mismatch: {x.shape} vs {opt.shape}")
        if float(np.sum((x - opt) ** 2)) <= threshold:
            return True
    return False


@dataclass
class BenchmarkSpec:
    name: str
    title: str
    objective: ObjectiveSpec
    success_positions: list = field(default_factory=list)
    success_value: Optional[float] = None

    def is_success(self, position, value) -> bool:
        # product_mod optima form a surface, so it is scored on value
        if self.success_value is not None:
            if self.objective.sense is Sense.MAXIMIZE:
                return value >= self.success_value
            return value <= self.success_value
        return success_check(position, self.success_positions, self.objective.space)


def _spec(name, title, fn, lo, hi, dim, fmin, optimum, sense=Sense.MINIMIZE, success_value=None):
    space = SearchSpace.box(lo, hi, dim)
    opt = None if optimum is None else np.asarray(optimum, dtype=np.float64)
    obj = ObjectiveSpec(fn, space, sense, fmin, opt, vectorized=True, name=name)
    return BenchmarkSpec(name, title, obj, [] if opt is None else [opt], success_value)


def _build_registry() -> dict[str, BenchmarkSpec]:
    specs = [
        _spec("f1", "rastrigin", rastrigin, -5.12, 5.12, 30, 0.0, np.zeros(30)),
        _spec("f2", "ackley", ackley, -32.0, 32.0, 30, 0.0, np.zeros(30)),
        _spec("f3", "sphere", sphere, -100.0, 100.0, 30, 0.0, np.zeros(30)),
        _spec("f4", "goldstein_price", _goldstein_price_vec, -2.0, 2.0, 2, 3.0, [0.0, -1.0]),
        _spec("f5", "griewank", griewank, -600.0, 600.0, 30, 0.0, np.zeros(30)),
        _spec(
            "f6", "product_mod", product_mod, 1.0, 10.0, 5, PRODUCT_MODULUS, None,
            sense=Sense.MAXIMIZE, success_value=PRODUCT_SUCCESS_VALUE,
        ),
    ]
    return {s.name: s for s in specs}


REGISTRY = _build_registry()
_ALIASES = {s.title: s.name for s in REGISTRY.values()}
_ALIASES["goldstein-price"] = "f4"
_ALIASES["product-mod"] = "f6"


def get_benchmark(name: str) -> BenchmarkSpec:
    key = name.strip().lower()
    key = _ALIASES.get(key, key)
    try:
        return REGISTRY[key]
    except KeyError:
        raise KeyError(f"unknown benchmark {name!r}; known: {', '.join(sorted(REGISTRY))}") from None
