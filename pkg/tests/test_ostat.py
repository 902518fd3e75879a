import math

import numpy as np
import pytest
import scipy.stats as st

from inidstat.dist import (
    Atomic,
    Exponential,
    HalfGaussian,
    ParetoPower,
    PiecewiseLinearCdf,
    Uniform01,
)
from inidstat.ostat import (
    OrderStatModel,
    averaged_quantile,
    kmax_cdf,
    kmin_cdf,
    kmin_median,
    kmin_quantile,
    kmin_strict_cdf,
)
from inidstat.pbin import SuccessVector, tail_at_least


def mixed_model(k=2):
    return OrderStatModel(
        components=(
            Uniform01(),
            Exponential(rate=0.5),
            ParetoPower(p=2.0),
            HalfGaussian(sigma=2.0),
            Atomic(atoms=((0.25, 0.5), (1.5, 0.5))),
            PiecewiseLinearCdf(knots=((0.0, 0.0), (2.0, 1.0))),
        ),
        k=k,
    )


class TestModel:
    def test_validation(self):
        with pytest.raises(ValueError):
            OrderStatModel(components=(), k=1)
        with pytest.raises(ValueError):
            OrderStatModel(components=(Uniform01(),), k=0)
        with pytest.raises(ValueError):
            OrderStatModel(components=(Uniform01(),), k=2)
        with pytest.raises(TypeError):
            OrderStatModel(components=(Uniform01(), 0.3), k=1)
        with pytest.raises(TypeError):
            OrderStatModel(components=(Uniform01(),), k=1.0)

    def test_with_rank(self):
        m = mixed_model(k=2)
        m5 = m.with_rank(5)
        assert m5.k == 5 and m5.components == m.components
        with pytest.raises(ValueError):
            m.with_rank(7)

    def test_special_points_union(self):
        pts = mixed_model().special_points()
        for expected in (0.25, 1.5, 0.0, 2.0):
            assert expected in pts
        assert list(pts) == sorted(pts)


class TestBridgeIdentity:
    """P{k-th smallest <= t} must equal the count tail with p_i = F_i(t)."""

    def test_exact_equality_mixed_families(self):
        m = mixed_model()
        for t in (0.0, 0.1, 0.25, 0.5, 1.0, 1.5, 2.0, 7.0):
            for k in range(1, m.n + 1):
                mk = m.with_rank(k)
                direct = tail_at_least(
                    SuccessVector([c.cdf(t) for c in m.components]), k
                )
                assert kmin_cdf(mk, t) == direct

    def test_strict_version_uses_left_limits(self):
        m = mixed_model()
        for t in (0.25, 1.5, 2.0):
            for k in (1, 3, 6):
                mk = m.with_rank(k)
                direct = tail_at_least(
                    SuccessVector([c.cdf_left_limit(t) for c in m.components]), k
                )
                assert kmin_strict_cdf(mk, t) == direct
        # At a continuity point the two sides agree.
        assert kmin_cdf(m, 0.8) == pytest.approx(kmin_strict_cdf(m, 0.8), abs=1e-15)

    def test_minimum_is_complement_of_product(self):
        comps = (Exponential(rate=1.0), Exponential(rate=2.0), Uniform01())
        m = OrderStatModel(components=comps, k=1)
        for t in (0.05, 0.3, 0.9):
            prod = math.prod(1.0 - c.cdf(t) for c in comps)
            assert kmin_cdf(m, t) == pytest.approx(1.0 - prod, rel=1e-14)

    def test_maximum_is_product(self):
        comps = (Exponential(rate=1.0), Exponential(rate=2.0), Uniform01())
        m = OrderStatModel(components=comps, k=3)
        for t in (0.05, 0.3, 0.9):
            prod = math.prod(c.cdf(t) for c in comps)
            assert kmin_cdf(m, t) == pytest.approx(prod, rel=1e-14)


class TestDuality:
    def test_kmax_equals_flipped_rank(self):
        m = mixed_model()
        for k in range(1, m.n + 1):
            mk = m.with_rank(k)
            flipped = m.with_rank(m.n - k + 1)
            for t in (0.1, 0.5, 1.25, 3.0):
                assert kmax_cdf(mk, t) == kmin_cdf(flipped, t)

    def test_kmax_example(self):
        # Larger of two uniforms: P{max <= 1/2} = 1/4.
        m = OrderStatModel(components=(Uniform01(), Uniform01()), k=1)
        assert kmax_cdf(m, 0.5) == pytest.approx(0.25, rel=1e-15)
        # k = 2 means the second largest, i.e. the minimum: 3/4.
        m2 = m.with_rank(2)
        assert kmax_cdf(m2, 0.5) == pytest.approx(0.75, rel=1e-15)


class TestIidReduction:
    def test_uniform_order_statistic_is_binomial_tail(self):
        rng = np.random.default_rng(1234)
        for n in (1, 2, 5, 17, 50):
            comps = (Uniform01(),) * n
            for t in (0.1, 0.3, 0.5, 0.7, 0.9):
                ks = range(1, n + 1) if n <= 5 else rng.integers(1, n + 1, size=6)
                for k in ks:
                    m = OrderStatModel(components=comps, k=int(k))
                    expected = st.binom.sf(k - 1, n, t)
                    assert kmin_cdf(m, t) == pytest.approx(expected, abs=1e-10)

    def test_iid_exponential_median_matches_beta_quantile(self):
        # k-th smallest of n iid U(0,1) is Beta(k, n-k+1); map through -ln(1-u).
        n, k = 9, 4
        m = OrderStatModel(components=(Exponential(rate=1.0),) * n, k=k)
        u_med = st.beta.ppf(0.5, k, n - k + 1)
        assert kmin_median(m) == pytest.approx(-math.log1p(-u_med), rel=1e-9)


class TestMedianAndQuantiles:
    def test_closed_form_median_three_uniforms(self):
        m = OrderStatModel(components=(Uniform01(),) * 3, k=2)
        assert kmin_median(m) == pytest.approx(0.5, rel=1e-9)

    def test_closed_form_median_two_exponentials(self):
        m = OrderStatModel(components=(Exponential(rate=1.0),) * 2, k=1)
        assert kmin_median(m) == pytest.approx(math.log(2.0) / 2.0, rel=1e-9)

    def test_atomic_median_is_exact(self):
        m = OrderStatModel(components=(Atomic(atoms=((2.5, 1.0),)),) * 4, k=2)
        assert kmin_median(m) == 2.5

    def test_median_defining_inequalities(self):
        models = [
            mixed_model(k=2),
            mixed_model(k=5),
            OrderStatModel(components=(Atomic(atoms=((1.0, 0.5), (3.0, 0.5))),) * 3, k=2),
            OrderStatModel(
                components=(Exponential(rate=1.0), ParetoPower(p=1.0), Uniform01()), k=2
            ),
        ]
        for m in models:
            med = kmin_median(m)
            assert kmin_cdf(m, med) >= 0.5
            assert kmin_strict_cdf(m, med) <= 0.5 + 1e-12

    def test_quantile_is_left_inverse(self):
        m = mixed_model(k=3)
        for r in (0.01, 0.2, 0.5, 0.77, 0.99):
            q = kmin_quantile(m, r)
            assert kmin_cdf(m, q) >= r
            if q > 0:
                assert kmin_cdf(m, q * (1.0 - 1e-9)) < r + 1e-12

    def test_order_zero_and_one(self):
        m = mixed_model(k=2)
        assert kmin_quantile(m, 0.0) == 0.0
        # Component essential sups sorted: (1.0, 1.5, 2.0, inf, inf, inf);
        # the k-th smallest tops out at the k-th of these.
        assert kmin_quantile(m, 1.0) == 1.5
        assert kmin_quantile(m.with_rank(3), 1.0) == 2.0
        assert kmin_quantile(m.with_rank(4), 1.0) == math.inf

    def test_order_domain(self):
        m = mixed_model()
        for bad in (-0.1, 1.1, math.nan):
            with pytest.raises(ValueError):
                kmin_quantile(m, bad)


class TestAveragedQuantile:
    def test_three_uniforms(self):
        m = OrderStatModel(components=(Uniform01(),) * 3, k=2)
        assert averaged_quantile(m) == pytest.approx(0.5, rel=1e-12)

    def test_single_exponential(self):
        m = OrderStatModel(components=(Exponential(rate=1.0),), k=1)
        assert averaged_quantile(m) == pytest.approx(math.log(2.0), rel=1e-9)

    def test_two_exponentials_closed_form(self):
        # Mixture cdf 1 - (e^{-t} + e^{-2t})/2 at order 1/4 solves a quadratic
        # in e^{-t}: e^{-t} = (sqrt(7) - 1)/2.
        m = OrderStatModel(components=(Exponential(rate=1.0), Exponential(rate=2.0)), k=1)
        expected = -math.log((math.sqrt(7.0) - 1.0) / 2.0)
        assert averaged_quantile(m) == pytest.approx(expected, rel=1e-9)

    def test_midpoint_order(self):
        m = mixed_model(k=4)
        r = (4 - 0.5) / 6
        assert averaged_quantile(m) == m.mixture.quantile(r)
