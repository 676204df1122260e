import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chaoswolf.benchmarks import (
    REGISTRY,
    ackley,
    get_benchmark,
    goldstein_price,
    griewank,
    product_mod,
    rastrigin,
    sphere,
    success_check,
)
from chaoswolf.gwo import SearchSpace, Sense


def gp_exact(x, y):
    """Goldstein-Price expanded term by term over rationals."""
    x, y = Fraction(x), Fraction(y)
    s = x + y + 1
    t = 2 * x - 3 * y
    p1 = 19 - 14 * x + 3 * x * x - 14 * y + 6 * x * y + 3 * y * y
    p2 = 18 - 32 * x + 12 * x * x + 48 * y - 36 * x * y + 27 * y * y
    return (1 + s * s * p1) * (30 + t * t * p2)


class TestFunctions:
    def test_rastrigin(self):
        assert rastrigin(np.zeros(30)) == 0.0
        assert rastrigin(np.ones(30)) == pytest.approx(30.0, abs=1e-10)

    def test_ackley_origin(self):
        assert abs(ackley(np.zeros(30))) < 1e-14

    @pytest.mark.parametrize("a", [0.3, -1.7, 5.0])
    def test_ackley_symmetric_point_matches_1d(self, a):
        assert ackley(np.full(30, a)) == pytest.approx(ackley(np.array([a])), rel=1e-12)

    def test_sphere(self):
        assert sphere(np.zeros(30)) == 0.0
        e1 = np.zeros(30)
        e1[0] = 1.0
        assert sphere(e1) == 1.0

    def test_goldstein_price_known_points(self):
        assert goldstein_price(0.0, -1.0) == 3.0
        assert gp_exact(0, -1) == 3
        assert gp_exact(0, 0) == 600
        assert goldstein_price(0.0, 0.0) == 600.0

    @settings(max_examples=200, deadline=None)
    @given(x=st.floats(-2, 2), y=st.floats(-2, 2))
    def test_goldstein_price_matches_exact(self, x, y):
        assert goldstein_price(x, y) == pytest.approx(float(gp_exact(x, y)), rel=1e-9)

    def test_goldstein_price_grid_minimum(self):
        g = np.linspace(-2, 2, 801)
        X, Y = np.meshgrid(g, g)
        Z = goldstein_price(X, Y)
        assert Z.min() >= 3.0 - 1e-9
        i = np.unravel_index(np.argmin(Z), Z.shape)
        assert (X[i], Y[i]) == pytest.approx((0.0, -1.0), abs=1e-9)

    def test_griewank(self):
        assert griewank(np.zeros(30)) == 0.0
        x = np.zeros(30)
        x[0] = 2 * math.pi
        # only the first cosine factor is touched, and it returns to 1
        assert griewank(x) == pytest.approx((2 * math.pi) ** 2 / 4000, rel=1e-12)

    def test_product_mod(self):
        assert product_mod(np.full(5, 9.0)) == 59049.0
        assert product_mod(np.full(5, 2.0)) == 32.0
        assert product_mod(np.array([10.0, 10.0, 10.0, 6.0, 10.0])) == 0.0
        assert product_mod(np.full(5, 10.0)) == 100000.0 - 60000.0

    def test_product_mod_dim(self):
        with pytest.raises(ValueError):
            product_mod(np.ones(4))

    def test_batch_equals_pointwise(self):
        rng = np.random.default_rng(0)
        X = rng.uniform(-5, 5, (7, 30))
        for fn in (rastrigin, ackley, sphere, griewank):
            assert np.allclose(fn(X), [fn(x) for x in X], rtol=1e-14, atol=0)

    @pytest.mark.parametrize("name", ["f1", "f2", "f3", "f5"])
    def test_nonnegative_on_box(self, name):
        spec = get_benchmark(name)
        sp = spec.objective.space
        rng = np.random.default_rng(1)
        X = sp.lower + (sp.upper - sp.lower) * rng.random((5000, sp.dim))
        assert np.all(spec.objective.evaluate_many(X) >= 0.0)


class TestRegistry:
    @pytest.mark.parametrize("name", ["f1", "f2", "f3", "f4", "f5"])
    def test_optima_attain_fmin(self, name):
        spec = REGISTRY[name]
        obj = spec.objective
        assert spec.success_positions
        for x in spec.success_positions:
            assert abs(float(obj.evaluate(x)) - obj.known_best_value) <= 1e-9
            assert spec.is_success(x, obj.evaluate(x))

    def test_dims_and_domains(self):
        expected = {"f1": (30, 5.12), "f2": (30, 32.0), "f3": (30, 100.0), "f4": (2, 2.0), "f5": (30, 600.0)}
        for name, (dim, hi) in expected.items():
            sp = REGISTRY[name].objective.space
            assert sp.dim == dim
            assert np.all(sp.upper == hi) and np.all(sp.lower == -hi)

    def test_product_mod_entry(self):
        spec = REGISTRY["f6"]
        assert spec.objective.sense is Sense.MAXIMIZE
        assert spec.objective.space.dim == 5
        assert spec.is_success(None, 59999.0)
        assert not spec.is_success(None, 59049.0)

    def test_aliases(self):
        assert get_benchmark("Sphere").name == "f3"
        assert get_benchmark("goldstein-price").name == "f4"
        with pytest.raises(KeyError):
            get_benchmark("rosenbrock")


class TestSuccessCheck:
    def test_one_dim(self):
        sp = SearchSpace.box(0, 10, 1)
        assert success_check([5.03], [[5.0]], sp)

    def test_exact(self):
        sp = SearchSpace.box(-1, 1, 3)
        assert success_check(np.zeros(3), [np.zeros(3)], sp)

    def test_far(self):
        sp = SearchSpace.box(-100, 100, 30)
        x = np.zeros(30)
        x[0] = math.sqrt(0.05)
        assert not success_check(x, [np.zeros(30)], sp)

    def test_empty_optima(self):
        with pytest.raises(ValueError):
            success_check([0.0], [], SearchSpace.box(0, 1, 1))

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            success_check([0.0, 1.0], [[0.0]], SearchSpace.box(0, 1, 2))

    @settings(max_examples=100, deadline=None)
    @given(
        x=st.lists(st.floats(-1, 1), min_size=2, max_size=2),
        opts=st.lists(st.lists(st.floats(-1, 1), min_size=2, max_size=2), min_size=1, max_size=4),
    )
    def test_permutation_invariant(self, x, opts):
        sp = SearchSpace.box(-1, 1, 2)
        results = {success_check(x, list(p), sp) for p in itertools.permutations(opts)}
        assert len(results) == 1
