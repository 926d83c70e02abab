"""Tests for the angle ledger, named lengths and region areas."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from errors import DomainError
from geometry_core import Point, build_triangle, construct_scene, relative_error
from region_model import (
    CHORD_REGION_IDS,
    SEGMENT_IDS,
    RegionId,
    alt_triangle_areas,
    altitude_lengths,
    altitude_triangle_areas,
    all_region_areas,
    angle_ledger,
    check_area_range,
    decomposition_total,
    ledger_deviations,
    lemma_region_a_check,
    measured_angle_ledger,
    pair_sum_identities,
    partition_identities,
    region_area,
    region_mask,
    region_spec,
    similar_lengths,
)

log_legs = st.floats(min_value=-2.0, max_value=3.0).map(lambda e: 10.0 ** e)
moderate_legs = st.floats(min_value=-1.0, max_value=1.0).map(lambda e: 10.0 ** e)

TABLE_345 = {
    RegionId.RA: 2.795595,
    RegionId.RB: 1.021882,
    RegionId.RC: 1.789181,
    RegionId.RD: 0.654004,
    RegionId.RE: 1.006414,
    RegionId.RF: 0.367877,
    RegionId.SC: 9.817477,
}


class TestAngleLedger:
    def test_closed_forms_for_3_4(self, scene345):
        ledger = angle_ledger(scene345)
        theta = scene345.theta_deg
        assert ledger.theta == pytest.approx(36.869898, abs=1e-6)
        assert ledger.angle_BFG == pytest.approx(2 * theta)
        assert ledger.angle_CFG == pytest.approx(180 - 2 * theta)
        assert ledger.angle_CBG == pytest.approx(90 - theta)

    def test_measurement_agrees(self, scene345):
        deviations = ledger_deviations(angle_ledger(scene345, validate=False), measured_angle_ledger(scene345))
        assert max(deviations.values()) < 1e-10

    @settings(max_examples=100, deadline=None)
    @given(a=moderate_legs, b=moderate_legs)
    def test_validation_passes_for_random_triangles(self, a, b):
        angle_ledger(construct_scene(build_triangle(a, b)), validate=True)


class TestLengths:
    def test_altitudes_for_3_4(self, tri345):
        lengths = altitude_lengths(tri345)
        assert lengths.GH == pytest.approx(1.92, abs=1e-12)
        assert lengths.GJ == pytest.approx(1.44, abs=1e-12)

    def test_similar_lengths_for_3_4(self, tri345):
        lengths = similar_lengths(tri345)
        assert lengths.AG == pytest.approx(3.2)
        assert lengths.CG == pytest.approx(2.4)
        assert lengths.BG == pytest.approx(1.8)

    @settings(max_examples=200, deadline=None)
    @given(a=log_legs, b=log_legs)
    def test_hypotenuse_split(self, a, b):
        tri = build_triangle(a, b)
        lengths = similar_lengths(tri)
        assert relative_error(lengths.AG + lengths.BG, tri.c) <= 1e-12

    @settings(max_examples=200, deadline=None)
    @given(a=log_legs, b=log_legs)
    def test_trig_free_triangle_areas(self, a, b):
        tri = build_triangle(a, b)
        by_similarity = alt_triangle_areas(tri)
        by_altitude = altitude_triangle_areas(tri)
        half_agc = region_area(RegionId.TRI_AGC, tri) / 2
        half_cgb = region_area(RegionId.TRI_CGB, tri) / 2
        assert relative_error(by_similarity.AEG, half_agc) <= 1e-15
        assert relative_error(by_similarity.GFB, half_cgb) <= 1e-15
        assert relative_error(by_altitude.CEG, by_similarity.CEG) <= 1e-15
        assert relative_error(by_altitude.CFG, by_similarity.CFG) <= 1e-15


class TestRegionAreas:
    def test_table_for_3_4(self, tri345):
        for region, expected in TABLE_345.items():
            assert region_area(region, tri345) == pytest.approx(expected, abs=1e-6), region

    def test_reference_triangles_for_3_4(self, tri345):
        assert region_area(RegionId.TRI_ABC, tri345) == pytest.approx(6.0)
        assert region_area(RegionId.TRI_AGC, tri345) == pytest.approx(3.84)
        assert region_area(RegionId.TRI_CGB, tri345) == pytest.approx(2.16)

    def test_accepts_plain_strings(self, tri345):
        assert region_area("RA", tri345) == region_area(RegionId.RA, tri345)

    def test_all_region_areas_covers_every_id(self, tri345):
        values = all_region_areas(tri345)
        assert set(values) == set(RegionId)
        assert all(value >= 0 for value in values.values())

    def test_isosceles_segments_pair_up(self):
        tri = build_triangle(1, 1)
        assert region_area(RegionId.RA, tri) == pytest.approx(region_area(RegionId.RB, tri), rel=1e-12)
        assert region_area(RegionId.RC, tri) == pytest.approx(region_area(RegionId.RF, tri), rel=1e-12)

    @settings(max_examples=200, deadline=None)
    @given(a=log_legs, b=log_legs)
    def test_decomposition_identity(self, a, b):
        tri = build_triangle(a, b)
        assert relative_error(decomposition_total(tri), region_area(RegionId.SC, tri)) <= 1e-12

    @settings(max_examples=200, deadline=None)
    @given(a=log_legs, b=log_legs)
    def test_partition_and_pair_sum_identities(self, a, b):
        tri = build_triangle(a, b)
        for name, (semicircle, parts) in partition_identities(tri).items():
            assert relative_error(parts, semicircle) <= 1e-12, name
        for name, (pair, expected) in pair_sum_identities(tri).items():
            assert relative_error(pair, expected) <= 1e-12, name

    def test_lemma_region_a_discrepancy_is_reported(self, tri345):
        lemma = lemma_region_a_check(tri345)
        assert lemma.claimed == pytest.approx(-1.396815, abs=1e-6)
        assert lemma.actual == pytest.approx(2.795595, abs=1e-6)
        assert lemma.difference == pytest.approx(lemma.claimed - lemma.actual)


class TestRegionSpec:
    @pytest.mark.parametrize("region", CHORD_REGION_IDS)
    def test_witness_is_inside(self, scene345, region):
        spec = region_spec(region, scene345)
        assert spec.contains(spec.interior_witness)
        assert spec.frame == scene345.circleD

    @pytest.mark.parametrize("region", [RegionId.TRI_ABC, RegionId.TRI_AGC, RegionId.TRI_CGB])
    def test_triangles_have_no_chord_spec(self, scene345, region):
        with pytest.raises(DomainError):
            region_spec(region, scene345)

    def test_point_inside_lower_triangle(self, scene345):
        p = Point(1.4, 1.0)
        specs = {region: region_spec(region, scene345) for region in CHORD_REGION_IDS}
        inside = {region for region, spec in specs.items() if spec.contains(p)}
        assert inside == {RegionId.SA, RegionId.SB, RegionId.RD, RegionId.SC}

    def test_chord_points_are_outside(self, scene345):
        spec = region_spec(RegionId.RB, scene345)
        assert not spec.contains(Point(1.0, 0.0))

    def test_segment_witnesses_lie_beyond_chord(self, scene345):
        for region in SEGMENT_IDS:
            spec = region_spec(region, scene345)
            assert spec.side in (-1, 1)

    def test_tolerance_band_is_outside_for_both_rules(self, scene345):
        spec = region_spec(RegionId.RB, scene345)
        assert spec.side == -1
        for y, expected in [(-1e-9, False), (-2.9e-9, False), (-1e-8, True), (1e-8, False)]:
            p = Point(1.0, y)
            mask = region_mask(spec, np.array([p.x]), np.array([p.y]))
            assert spec.contains(p) is expected, y
            assert bool(mask[0]) is expected, y

    def test_mask_matches_scalar_membership(self, scene345):
        xs, ys = np.meshgrid(np.linspace(-1.0, 4.0, 41), np.linspace(-0.5, 4.5, 41))
        xs, ys = xs.ravel() + 1e-3, ys.ravel() + 2e-3
        for region in CHORD_REGION_IDS:
            spec = region_spec(region, scene345)
            mask = region_mask(spec, xs, ys)
            expected = [spec.contains(Point(x, y)) for x, y in zip(xs, ys)]
            assert mask.tolist() == expected, region


class TestRegionId:
    def test_parse_is_case_insensitive(self):
        assert RegionId.parse(" ra ") is RegionId.RA
        assert RegionId.parse("tri_abc") is RegionId.TRI_ABC

    def test_parse_rejects_unknown(self):
        with pytest.raises(DomainError, match="unknown region id"):
            RegionId.parse("RG")


EXTREME_LEGS = [(1e-170, 1e-170), (1e160, 1e160)]


class TestExtremeScales:
    @pytest.mark.parametrize("a,b", EXTREME_LEGS)
    def test_lengths_stay_finite(self, a, b):
        tri = build_triangle(a, b)
        altitudes = altitude_lengths(tri)
        assert altitudes.GH == pytest.approx(a / 2, rel=1e-12)
        assert altitudes.GJ == pytest.approx(b / 2, rel=1e-12)
        lengths = similar_lengths(tri)
        assert relative_error(lengths.AG + lengths.BG, tri.c) <= 1e-12
        assert lengths.CG == pytest.approx(tri.c / 2, rel=1e-12)

    @pytest.mark.parametrize("a,b", EXTREME_LEGS)
    def test_region_specs_build(self, a, b):
        scene = construct_scene(build_triangle(a, b))
        for region in CHORD_REGION_IDS:
            spec = region_spec(region, scene)
            assert spec.contains(spec.interior_witness), region

    @pytest.mark.parametrize("a,b", EXTREME_LEGS)
    def test_areas_out_of_range_are_refused(self, a, b):
        with pytest.raises(DomainError, match="floating-point range"):
            check_area_range(build_triangle(a, b))

    def test_ordinary_legs_are_in_range(self, tri345):
        check_area_range(tri345)
        check_area_range(build_triangle(1e-150, 1e-150))
        check_area_range(build_triangle(1e150, 1e150))
