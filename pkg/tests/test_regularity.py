import json
import math

import numpy as np
import pytest

from conftest import CATALOGUE
from inidstat.dist import Atomic, Exponential, HalfGaussian, ParetoPower, Uniform01
from inidstat.regularity import (
    DEFAULT_GRID,
    MARGIN_TOL,
    GridSpec,
    GrowthLemmaReport,
    MinKResult,
    RegularityCertificate,
    RegularityPreconditionError,
    check_condition,
    check_lemma_growth,
    check_logconcave_k3,
    check_measure_form,
    check_weak_condition,
    find_min_K,
    pointwise_margins,
)


class TestGridSpec:
    def test_default(self):
        assert DEFAULT_GRID == GridSpec(1e-6, 1e6, 64)
        pts = DEFAULT_GRID.points()
        assert pts[0] == 1e-6 and pts[-1] == 1e6
        assert pts.size == 12 * 64 + 1
        assert np.all(np.diff(pts) > 0)

    def test_validation(self):
        with pytest.raises(ValueError):
            GridSpec(0.0, 1.0, 8)
        with pytest.raises(ValueError):
            GridSpec(2.0, 1.0, 8)
        with pytest.raises(ValueError):
            GridSpec(1.0, 2.0, 0)

    def test_special_points_are_probed(self):
        d = Atomic(atoms=((3.1415, 1.0),))
        pts = GridSpec(1.0, 2.0, 4).points_for(d)
        assert 3.1415 in pts
        assert np.nextafter(3.1415, -np.inf) in pts
        assert np.nextafter(3.1415, np.inf) in pts
        # Everything stays strictly positive even for an atom near zero.
        tiny = Atomic(atoms=((0.0, 0.5), (1.0, 0.5)))
        assert np.all(GridSpec(1.0, 2.0, 4).points_for(tiny) > 0.0)


class TestCondition:
    def test_catalogue_passes(self):
        for d, K in CATALOGUE:
            cert = check_condition(d, K)
            assert cert.passed, (d, K, cert.margin)
            assert cert.margin >= -MARGIN_TOL
            assert cert.witness is None

    def test_uniform_fails_below_two(self):
        # On [0.08, 0.1] the margin t*(1.5t - 0.5) is decreasing, so the
        # worst grid point is exactly t = 0.1.
        cert = check_condition(Uniform01(), 1.5, GridSpec(0.08, 0.1, 16))
        assert not cert.passed
        t, lhs, rhs = cert.witness
        assert t == 0.1
        assert lhs == pytest.approx(0.15 * 0.9, rel=1e-12)
        assert rhs == pytest.approx(2.0 * 0.1 * 0.85, rel=1e-12)
        assert cert.margin == pytest.approx(lhs - rhs, rel=1e-12)

    def test_point_mass_passes_any_K(self):
        d = Atomic(atoms=((1.0, 1.0),))
        for K in (1.1, 2.0, 7.0):
            assert check_condition(d, K).passed

    def test_two_atom_law_fails(self):
        d = Atomic(atoms=((1.0, 0.5), (100.0, 0.5)))
        cert = check_condition(d, 2.0)
        assert not cert.passed

    def test_K_domain(self):
        for bad in (1.0, 0.5, math.inf, math.nan):
            with pytest.raises(ValueError):
                check_condition(Uniform01(), bad)

    def test_scale_invariance_of_verdicts(self):
        for d, K in CATALOGUE[:5]:
            base = check_condition(d, K).verdict
            for c in (0.01, 100.0):
                assert check_condition(d.scaled(c), K).verdict == base
        # Same for a failing pair.
        for c in (0.01, 1.0, 100.0):
            assert check_condition(Uniform01(scale=c), 1.5).verdict == "fail"


class TestMeasureForm:
    def test_equivalence_on_catalogue(self):
        for d, _ in CATALOGUE:
            for K in (1.5, 2.0, 3.0):
                t1, lhs1, rhs1, _ = pointwise_margins(d, K, DEFAULT_GRID, "condition")
                t2, lhs2, rhs2, _ = pointwise_margins(d, K, DEFAULT_GRID, "measure-form")
                assert np.array_equal(t1, t2)
                v1 = (lhs1 - rhs1) >= -MARGIN_TOL
                v2 = (lhs2 - rhs2) >= -MARGIN_TOL
                assert np.array_equal(v1, v2), (d, K)

    def test_examples(self):
        assert check_measure_form(Uniform01(), 2.0).passed
        assert check_measure_form(Exponential(rate=1.0), 3.0).passed
        cert = check_measure_form(Uniform01(), 1.5, GridSpec(0.08, 0.1, 16))
        assert not cert.passed
        assert cert.witness[0] == 0.1


class TestWeakCondition:
    def test_examples(self):
        assert check_weak_condition(Uniform01(), 2.0).passed
        assert check_weak_condition(Exponential(rate=1.0), 3.0).passed
        assert check_weak_condition(Atomic(atoms=((1.0, 1.0),)), 2.0).passed

    def test_implied_by_condition(self):
        for d, K in CATALOGUE:
            assert check_weak_condition(d, K).passed

    def test_restricted_to_lower_half(self):
        t, lhs, _, n_total = pointwise_margins(Uniform01(), 2.0, DEFAULT_GRID, "weak-condition")
        assert t.size < n_total
        assert np.all(lhs <= 0.5)


class TestGrowthLemma:
    def test_uniform_example(self):
        rep = check_lemma_growth(Uniform01(), 2.0, 1, 0.5)
        assert rep.passed
        assert rep.witnesses == ()
        assert rep.margin_growth >= -MARGIN_TOL
        assert rep.margin_survival >= -MARGIN_TOL

    def test_exponential_proof_pairing(self):
        rep = check_lemma_growth(Exponential(rate=1.0), 3.0, 5, 2.0**-2.5)
        assert rep.passed

    def test_pareto_example(self):
        assert check_lemma_growth(ParetoPower(p=1.0), 2.0, 3, 0.25).passed

    def test_catalogue_sweep(self):
        for d, K in CATALOGUE:
            for ell in (1, 3):
                for gamma in (2.0 ** (-ell / 2.0), 0.9):
                    rep = check_lemma_growth(d, K, ell, gamma)
                    assert rep.passed, (d, K, ell, gamma, rep.witnesses)

    def test_precondition_rejection(self):
        with pytest.raises(RegularityPreconditionError) as err:
            check_lemma_growth(Uniform01(), 1.5, 1, 0.5)
        assert err.value.certificate.verdict == "fail"
        assert err.value.certificate.K == 1.5

    def test_parameter_domains(self):
        with pytest.raises(ValueError):
            check_lemma_growth(Uniform01(), 2.0, 0, 0.5)
        with pytest.raises(ValueError):
            check_lemma_growth(Uniform01(), 2.0, 1, 0.0)
        with pytest.raises(ValueError):
            check_lemma_growth(Uniform01(), 2.0, 1, 1.0)


class TestLogConcaveK3:
    def test_builtin_families(self):
        assert check_logconcave_k3(Exponential(rate=1.0)).passed
        assert check_logconcave_k3(HalfGaussian(sigma=1.0)).passed
        assert check_logconcave_k3(Uniform01()).passed

    def test_rejects_other_families(self):
        with pytest.raises(TypeError):
            check_logconcave_k3(ParetoPower(p=1.0))


class TestMinK:
    def test_uniform_boundary(self):
        res = find_min_K(Uniform01())
        assert res.K == pytest.approx(2.0, abs=2e-3)
        assert check_condition(Uniform01(), res.K).passed
        assert res.assumes_monotone_in_K

    def test_pareto_boundary(self):
        res = find_min_K(ParetoPower(p=2.0))
        assert res.K == pytest.approx(math.sqrt(2.0), abs=2e-3)

    def test_exponential_below_three(self):
        res = find_min_K(Exponential(rate=1.0))
        assert res.K <= 3.0
        assert res.K == pytest.approx(2.0, abs=2e-3)

    def test_not_found(self):
        d = Atomic(atoms=((1.0, 0.5), (100.0, 0.5)))
        with pytest.raises(ValueError, match="not found in range"):
            find_min_K(d)

    def test_k_range_validation(self):
        with pytest.raises(ValueError):
            find_min_K(Uniform01(), K_range=(0.9, 8.0))
        with pytest.raises(ValueError):
            find_min_K(Uniform01(), tol=0.0)

    def test_bracket_width_within_tol(self):
        res = find_min_K(Uniform01(), tol=1e-4)
        lo, hi = res.bracket
        assert hi - lo <= 1e-4 + 1e-12
        assert res.K == hi


class TestSerialization:
    def test_certificate_round_trip(self):
        for cert in (
            check_condition(Uniform01(), 2.0),
            check_condition(Uniform01(), 1.5),
            check_weak_condition(Exponential(rate=2.0), 3.0, GridSpec(0.1, 10.0, 8)),
        ):
            again = RegularityCertificate.from_dict(json.loads(json.dumps(cert.to_dict())))
            assert again == cert

    def test_growth_report_round_trip(self):
        rep = check_lemma_growth(Uniform01(), 2.0, 2, 0.5)
        again = GrowthLemmaReport.from_dict(json.loads(json.dumps(rep.to_dict())))
        assert again == rep

    def test_min_k_round_trip(self):
        res = find_min_K(ParetoPower(p=1.0))
        again = MinKResult.from_dict(json.loads(json.dumps(res.to_dict())))
        assert again == res
