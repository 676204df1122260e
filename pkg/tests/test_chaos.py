import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chaoswolf import _kernels as K
from chaoswolf.chaos import (
    ChaoticMap,
    ChaoticState,
    Interval,
    MapKind,
    fill_values,
    next_value,
    normalize,
    normalized_next,
    orbit_extremes,
    sample_sequence,
    seed_state,
)


def mp_step(kind, x, k, param):
    """High-precision evaluation of one map step, written from the formulas."""
    with mpmath.workdps(50):
        x = mpmath.mpf(x)
        if kind is MapKind.GAUSS:
            y = 1 / x
            return float(y - mpmath.floor(y))
        if kind is MapKind.LOGISTIC:
            return float(param * x * (1 - x))
        if kind is MapKind.CHEBYSHEV:
            return float(mpmath.cos(k * mpmath.acos(x)))
        if kind is MapKind.ITERATIVE:
            return float(mpmath.sin(param * mpmath.pi / x))
        if kind is MapKind.SINGER:
            return float(param * (mpmath.mpf("7.86") * x - mpmath.mpf("23.31") * x**2
                                  + mpmath.mpf("28.75") * x**3 - mpmath.mpf("13.3") * x**4))
        if kind is MapKind.TENT:
            return float(x / mpmath.mpf("0.7") if x < mpmath.mpf("0.7") else mpmath.mpf(10) / 3 * (1 - x))
        return float(mpmath.sin(mpmath.pi * x))


class TestSeedState:
    def test_logistic_excluded_seed_demands_redraw(self):
        with pytest.raises(ValueError, match="redraw"):
            seed_state("logistic", 0.25)

    def test_logistic_redraw_source_is_used(self):
        draws = iter([0.5, 0.3])
        state = seed_state("logistic", 0.25, redraw=lambda: next(draws))
        assert state.x == 0.3

    def test_tent_passes_through(self):
        state = seed_state("tent", 0.35)
        assert state.x == 0.35
        assert state.k == 0

    def test_chebyshev_maps_affinely(self):
        state = seed_state("chebyshev", 0.5)
        assert state.x == 0.0
        assert state.k == 0

    def test_iterative_lands_in_symmetric_range(self):
        assert seed_state("iterative", 0.75).x == pytest.approx(0.5)

    @pytest.mark.parametrize("bad", [0.0, 1.0, -0.1, 1.5, math.nan, math.inf])
    def test_rejects_out_of_range(self, bad):
        with pytest.raises(ValueError):
            seed_state("tent", bad)


class TestMapParams:
    def test_defaults(self):
        assert ChaoticMap(MapKind.LOGISTIC).param == 4.0
        assert ChaoticMap(MapKind.ITERATIVE).param == 0.7
        assert ChaoticMap(MapKind.SINGER).param == 1.07

    def test_iterative_param_must_be_in_open_unit(self):
        with pytest.raises(ValueError):
            ChaoticMap(MapKind.ITERATIVE, 1.0)

    @pytest.mark.parametrize("mu", [0.89, 1.09])
    def test_singer_mu_range(self, mu):
        with pytest.raises(ValueError):
            ChaoticMap(MapKind.SINGER, mu)

    def test_parse_names(self):
        assert MapKind.parse("Chebychev") is MapKind.CHEBYSHEV
        with pytest.raises(ValueError):
            MapKind.parse("henon")


class TestNext:
    def test_tent(self):
        _, x = next_value(seed_state("tent", 0.35))
        assert x == pytest.approx(0.5, abs=1e-15)

    def test_logistic(self):
        _, x = next_value(seed_state("logistic", 0.2))
        assert x == pytest.approx(0.64, abs=1e-15)

    def test_singer(self):
        # exact rational evaluation at x = 1/2
        h = Fraction(1, 2)
        exact = Fraction("1.07") * (Fraction("7.86") * h - Fraction("23.31") * h**2
                                    + Fraction("28.75") * h**3 - Fraction("13.3") * h**4)
        _, x = next_value(ChaoticState(ChaoticMap(MapKind.SINGER), 0.5))
        assert x == pytest.approx(float(exact), abs=1e-14)
        assert x == pytest.approx(0.92555, abs=1e-12)

    def test_gauss(self):
        _, x = next_value(ChaoticState(ChaoticMap(MapKind.GAUSS), 0.4))
        assert x == pytest.approx(0.5, abs=1e-15)

    def test_chebyshev_first_advance_uses_k_equal_one(self):
        state, x = next_value(ChaoticState(ChaoticMap(MapKind.CHEBYSHEV), 0.3))
        assert state.k == 1
        assert x == pytest.approx(0.3, abs=1e-15)
        state, x = next_value(state)
        assert state.k == 2
        assert x == pytest.approx(2 * 0.3**2 - 1, abs=1e-14)

    def test_counter_increments_by_one(self):
        state = seed_state("sinusoidal", 0.3)
        for expected in range(1, 6):
            state, _ = next_value(state)
            assert state.k == expected

    @pytest.mark.parametrize("kind", list(MapKind))
    def test_matches_high_precision_formula(self, kind):
        cmap = ChaoticMap(kind)
        rng = np.random.default_rng(kind.value)
        lo, hi = cmap.native_range
        for x0 in lo + (hi - lo) * rng.uniform(0.05, 0.95, 50):
            k0 = int(rng.integers(0, 20))
            state, x = next_value(ChaoticState(cmap, float(x0), k0))
            expected = mp_step(kind, float(x0), k0 + 1, cmap.param)
            if lo + 1e-9 < expected < hi - 1e-9 and abs(expected) > 1e-9:
                # the iterative map amplifies input ulps by param*pi/x^2
                assert x == pytest.approx(expected, rel=1e-9, abs=1e-12)


class TestDegeneratePoints:
    @pytest.mark.parametrize(
        "kind,x0",
        [
            (MapKind.SINUSOIDAL, 0.5),  # -> 1.0 -> 0.0
            (MapKind.LOGISTIC, 0.5),  # -> 1.0 -> 0.0
            (MapKind.LOGISTIC, 0.25),  # -> 0.75 fixed point
            (MapKind.GAUSS, 0.5),  # frac(2) = 0
            (MapKind.TENT, 10 / 13),  # fixed point
            (MapKind.CHEBYSHEV, 1.0),
            (MapKind.ITERATIVE, 0.0),  # pole of pi/x
        ],
    )
    def test_orbit_survives(self, kind, x0):
        cmap = ChaoticMap(kind)
        values = sample_sequence(ChaoticState(cmap, x0), 200)
        lo, hi = cmap.native_range
        assert all(lo < v < hi for v in values)
        assert len(set(values[-50:])) > 10

    def test_gauss_kick_does_not_cycle(self):
        # 1/1e-6 is an integer, so a plain kick would return to 1e-6 forever
        state, x = next_value(ChaoticState(ChaoticMap(MapKind.GAUSS), 1e-6))
        assert x != 1e-6
        _, y = next_value(state)
        assert y > 1e-3

    def test_iterative_seed_at_zero(self):
        state = seed_state("iterative", 0.5)
        assert state.x == 0.0
        _, x = next_value(state)
        assert -1.0 < x < 1.0

    def test_logistic_three_quarters_is_kicked(self):
        _, x = next_value(ChaoticState(ChaoticMap(MapKind.LOGISTIC), 0.25))
        assert x != 0.75
        assert abs(x - 0.75) == pytest.approx(1e-6, rel=1e-6)


class TestNormalization:
    def test_tent_to_one_two(self):
        _, v = normalized_next(seed_state("tent", 0.35), Interval(1.0, 2.0))
        assert v == pytest.approx(1.5, abs=1e-15)

    def test_chebyshev_endpoint(self):
        assert normalize(-1.0, (-1.0, 1.0), Interval(0.0, 1.0)) == 0.0
        assert normalize(1.0, (-1.0, 1.0), Interval(0.0, 1.0)) == 1.0

    def test_logistic_identity(self):
        _, v = normalized_next(seed_state("logistic", 0.2), Interval(0.0, 1.0))
        assert v == pytest.approx(0.64, abs=1e-15)

    def test_interval_validation(self):
        with pytest.raises(ValueError):
            Interval(1.0, 1.0)
        assert Interval.parse("1,2") == Interval(1.0, 2.0)

    @settings(max_examples=200, deadline=None)
    @given(
        kind=st.sampled_from(list(MapKind)),
        draw=st.floats(0.001, 0.999),
        lo=st.floats(-100, 100),
        width=st.floats(0.01, 100),
    )
    def test_stays_in_target(self, kind, draw, lo, width):
        if kind is MapKind.LOGISTIC and draw in (0.25, 0.5, 0.75):
            return
        target = Interval(lo, lo + width)
        state = seed_state(kind, draw)
        for _ in range(5):
            state, v = normalized_next(state, target)
            assert target.lo <= v <= target.hi

    @settings(max_examples=100, deadline=None)
    @given(a=st.floats(-1, 1), b=st.floats(-1, 1))
    def test_order_preserving(self, a, b):
        t = Interval(3.0, 7.0)
        if a < b:
            assert normalize(a, (-1.0, 1.0), t) <= normalize(b, (-1.0, 1.0), t)


class TestSequence:
    def test_logistic_three_values(self):
        # exact rational iteration of 4x(1-x) from 1/5
        x = Fraction(1, 5)
        expected = []
        for _ in range(3):
            x = 4 * x * (1 - x)
            expected.append(float(x))
        assert expected == pytest.approx([0.64, 0.9216, 0.28901376], abs=1e-15)
        assert sample_sequence(seed_state("logistic", 0.2), 3) == pytest.approx(expected, abs=1e-12)

    def test_single_value_is_next(self):
        state = seed_state("singer", 0.41)
        assert sample_sequence(state, 1) == [next_value(state)[1]]

    def test_deterministic(self):
        state = seed_state("iterative", 0.37)
        assert sample_sequence(state, 500) == sample_sequence(state, 500)

    def test_count_must_be_positive(self):
        with pytest.raises(ValueError):
            sample_sequence(seed_state("tent", 0.3), 0)

    def test_fill_matches_repeated_next(self):
        state = seed_state("chebyshev", 0.8)
        after, values = fill_values(state, 20)
        s = state
        for v in values:
            s, x = next_value(s)
            assert x == v
        assert (after.x, after.k) == (s.x, s.k)

    def test_logistic_sensitivity(self):
        a = sample_sequence(seed_state("logistic", 0.2), 100)
        b = sample_sequence(seed_state("logistic", 0.2 + 1e-10), 100)
        assert max(abs(x - y) for x, y in zip(a, b)) > 0.1


class TestBackends:
    @pytest.mark.parametrize("kind", list(MapKind))
    def test_fill_agrees_across_backends(self, kind):
        cmap = ChaoticMap(kind)
        lo, hi = cmap.native_range
        x0 = lo + (hi - lo) * 0.3141
        a = np.empty(15)
        b = np.empty(15)
        xa, ka = K.fill_nb(cmap.code, x0, 0, cmap.param, False, cmap.fixed_points, a)
        xb, kb = K.fill_py(cmap.code, x0, 0, cmap.param, False, cmap.fixed_points, b)
        assert ka == kb == 15
        np.testing.assert_allclose(a, b, rtol=0, atol=1e-8)

    @pytest.mark.parametrize("kind", list(MapKind))
    def test_orbit_extremes_agree(self, kind):
        cmap = ChaoticMap(kind)
        lo, hi = cmap.native_range
        seeds = lo + (hi - lo) * np.linspace(0.11, 0.89, 7)
        fa, mna, mxa = K.orbit_extremes_nb(cmap.code, seeds, 0, cmap.param, False, cmap.fixed_points, 10)
        fb, mnb, mxb = K.orbit_extremes_py(cmap.code, seeds, 0, cmap.param, False, cmap.fixed_points, 10)
        np.testing.assert_allclose(fa, fb, atol=1e-8)
        np.testing.assert_allclose(mna, mnb, atol=1e-8)

    def test_orbit_extremes_short_containment(self):
        for kind in MapKind:
            cmap = ChaoticMap(kind)
            lo, hi = cmap.native_range
            seeds = lo + (hi - lo) * np.random.default_rng(1).uniform(0.01, 0.99, 50)
            _, mins, maxs = orbit_extremes(cmap, seeds, 2000)
            assert np.all(mins > lo) and np.all(maxs < hi)

    def test_full_sinusoidal_form(self):
        cmap = ChaoticMap(MapKind.SINUSOIDAL, 2.3, full_form=True)
        _, x = next_value(ChaoticState(cmap, 0.7))
        assert x == pytest.approx(2.3 * 0.49 * math.sin(0.7 * math.pi), abs=1e-14)
