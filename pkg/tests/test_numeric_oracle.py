"""Tests for quadrature, Monte-Carlo estimates and the multiplicity check."""

import math
from dataclasses import replace

import pytest
from hypothesis import given, settings, strategies as st

from errors import ConfigError, DomainError
from geometry_core import CircleSpec, Point, build_triangle, construct_scene, relative_error
from numeric_oracle import (
    MIN_SAMPLES,
    VerifyConfig,
    mc_region_area,
    mc_scene_areas,
    multiplicity_at,
    multiplicity_check,
    quadrature_region_area,
    quadrature_segment_area,
    verify_all,
)
from region_model import CHORD_REGION_IDS, RegionId, region_area, region_spec

log_legs = st.floats(min_value=-2.0, max_value=3.0).map(lambda e: 10.0 ** e)

UNIT = CircleSpec(Point(0.0, 0.0), 1.0)


class TestQuadrature:
    def test_half_disk(self):
        area = quadrature_segment_area(UNIT, Point(-1, 0), Point(1, 0), Point(0, 0.5))
        assert area == pytest.approx(math.pi / 2, rel=1e-12)

    def test_major_segment(self):
        area = quadrature_segment_area(UNIT, Point(0, 1), Point(1, 0), Point(-0.5, -0.5))
        assert area == pytest.approx(math.pi - (math.pi / 4 - 0.5), rel=1e-12)

    def test_tangent_point_is_empty(self):
        assert quadrature_segment_area(UNIT, Point(1, 0), Point(1, 0), Point(2, 0)) == 0.0
        tiny = 1e-6
        area = quadrature_segment_area(UNIT, Point(1, 0), Point(math.cos(tiny), math.sin(tiny)), Point(2, 0))
        assert area == pytest.approx(0.0, abs=1e-15)

    def test_rejects_chord_off_circle(self):
        with pytest.raises(DomainError, match="not on the circle"):
            quadrature_segment_area(UNIT, Point(-0.5, 0), Point(1, 0), Point(0, 0.5))

    def test_rejects_collinear_witness(self):
        with pytest.raises(DomainError, match="collinear"):
            quadrature_segment_area(UNIT, Point(-1, 0), Point(1, 0), Point(0.3, 0))

    def test_region_b_for_3_4(self, scene345, tri345):
        spec = region_spec(RegionId.RB, scene345)
        area = quadrature_segment_area(spec.disk, spec.chord_from, spec.chord_to, Point(1.5, -0.1))
        assert area == pytest.approx(1.021882, abs=1e-6)
        assert relative_error(area, region_area(RegionId.RB, tri345)) <= 1e-9

    @settings(max_examples=200, deadline=None)
    @given(a=log_legs, b=log_legs)
    def test_agrees_with_closed_forms(self, a, b):
        tri = build_triangle(a, b)
        scene = construct_scene(tri)
        for region in CHORD_REGION_IDS:
            quad = quadrature_region_area(region_spec(region, scene))
            assert relative_error(quad, region_area(region, tri)) <= 1e-9, region


class TestMonteCarlo:
    def test_semicircle_on_hypotenuse(self, scene345):
        estimate = mc_region_area(region_spec(RegionId.SC, scene345), 1_000_000, 42)
        assert estimate.std_error == pytest.approx(0.012, abs=0.002)
        assert abs(estimate.mean - math.pi * 25 / 8) <= 5 * estimate.std_error
        assert estimate.samples == 1_000_000 and estimate.seed == 42

    def test_region_a(self, scene345, tri345):
        estimate = mc_region_area(region_spec(RegionId.RA, scene345), 1_000_000, 42)
        assert abs(estimate.mean - region_area(RegionId.RA, tri345)) <= 5 * estimate.std_error

    def test_is_reproducible(self, scene345):
        spec = region_spec(RegionId.RC, scene345)
        assert mc_region_area(spec, 50_000, 3) == mc_region_area(spec, 50_000, 3)
        assert mc_region_area(spec, 50_000, 3) != mc_region_area(spec, 50_000, 4)

    def test_independent_of_worker_count(self, scene345):
        spec = region_spec(RegionId.RD, scene345)
        samples = 3 * 65536 + 17
        assert mc_region_area(spec, samples, 11, workers=1) == mc_region_area(spec, samples, 11, workers=2)

    def test_scene_stream_matches_single_region(self, scene345):
        estimates = mc_scene_areas(scene345, 40_000, 5)
        assert set(estimates) == set(CHORD_REGION_IDS)
        single = mc_region_area(region_spec(RegionId.RE, scene345), 40_000, 5)
        assert estimates[RegionId.RE] == single

    def test_rejects_too_few_samples(self, scene345):
        with pytest.raises(DomainError, match="samples"):
            mc_region_area(region_spec(RegionId.RA, scene345), MIN_SAMPLES - 1, 0)

    def test_rejects_bad_seed(self, scene345):
        with pytest.raises(DomainError, match="seed"):
            mc_region_area(region_spec(RegionId.RA, scene345), MIN_SAMPLES, -1)

    def test_rejects_witness_outside_disk(self, scene345):
        spec = replace(region_spec(RegionId.RA, scene345), interior_witness=Point(-10.0, 2.0))
        with pytest.raises(DomainError, match="outside"):
            mc_region_area(spec, MIN_SAMPLES, 0)


class TestMultiplicity:
    def test_lower_triangle_point(self, scene345):
        assert multiplicity_at(scene345, Point(1.4, 1.0)) == (1, 1)

    def test_far_half_of_disk_d(self, scene345):
        assert multiplicity_at(scene345, Point(1.5, 3.8)) == (0, 0)

    def test_no_violations_for_3_4(self, scene345):
        report = multiplicity_check(scene345, 200_000, 7, epsilon=1e-9)
        assert report.violations == 0
        assert report.conforming + report.violations + report.excluded_near_boundary == report.samples

    @pytest.mark.parametrize("legs", [(1, 1), (1, 20), (7, 0.3), (0.05, 0.04)])
    def test_no_violations_for_other_triangles(self, legs):
        report = multiplicity_check(construct_scene(build_triangle(*legs)), 50_000, 1)
        assert report.violations == 0
        assert report.epsilon == pytest.approx(1e-9 * math.hypot(*legs))

    def test_wide_band_excludes_points(self, scene345):
        report = multiplicity_check(scene345, 20_000, 2, epsilon=0.05)
        assert report.excluded_near_boundary > 0
        assert report.violations == 0

    def test_rejects_bad_epsilon(self, scene345):
        with pytest.raises(DomainError):
            multiplicity_check(scene345, MIN_SAMPLES, 0, epsilon=0.0)


class TestVerifyAll:
    @pytest.mark.parametrize("legs", [(3, 4), (1, 1), (1, 1000), (4, 3)])
    def test_all_checks_pass(self, legs):
        report = verify_all(build_triangle(*legs), VerifyConfig(samples=200_000, seed=0, tol_stat=2e-3))
        assert report.overall_pass, [(c.name, c.residual, c.tolerance) for c in report.failed()]
        assert report.multiplicity.violations == 0
        assert len(report.estimates) == 9

    def test_expected_checks_present(self, tri345):
        report = verify_all(tri345, VerifyConfig(samples=20_000))
        names = {check.name for check in report.checks}
        for expected in ("scene_invariants", "angle_ledger", "quadrature_RA", "monte_carlo_SC",
                         "multiplicity", "ledger_theta_free", "ledger_boxed_coefficients",
                         "pythagoras_residual", "decomposition_identity", "trig_free_equivalence",
                         "residual_polynomial_identity", "circle_pairs_theta_free"):
            assert expected in names

    def test_notes(self):
        report = verify_all(build_triangle(1, 1), {"samples": 20_000})
        assert any("G coincides with D" in note for note in report.notes)
        assert any("Region A congruence" in note for note in report.notes)

    def test_status_callback(self, tri345):
        calls = []
        verify_all(tri345, VerifyConfig(samples=20_000), status_callback=lambda p, m: calls.append((p, m)))
        progress = [p for p, _ in calls]
        assert progress == sorted(progress)
        assert progress[-1] == 100

    def test_tight_statistical_tolerance_is_reported_not_raised(self, tri345):
        config = VerifyConfig(samples=1000, tol_stat=1e-12, tol_analytic=1e-9)
        report = verify_all(tri345, config)
        assert isinstance(report.overall_pass, bool)

    def test_default_statistical_slack(self):
        assert VerifyConfig().tol_stat == 2e-4

    @pytest.mark.parametrize("legs", [(1e-170, 1e-170), (1e160, 1e160)])
    def test_unrepresentable_areas_are_refused(self, legs):
        with pytest.raises(DomainError, match="floating-point range"):
            verify_all(build_triangle(*legs), VerifyConfig(samples=20_000))

    @pytest.mark.parametrize("values", [{"samples": 10}, {"seed": -1}, {"tol_analytic": 0},
                                        {"workers": 0}, {"epsilon": -1.0}])
    def test_invalid_config(self, tri345, values):
        with pytest.raises(ConfigError):
            verify_all(tri345, values)
