"""Gallery functions: domains, evaluation, and the spec-string builder."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from seqderiv.errors import DomainError, ParamError
from seqderiv.extreal import ClosedExtSet
from seqderiv.gallery import (
    DiscreteDomain,
    Interval,
    build,
    continuous_two_sided_at_zero,
    make_dense_slope,
    make_glued,
    make_sine_envelope,
    make_sqrt_sin,
    make_sqrt_sin_even,
    make_two_slope,
    make_weierstrass,
    registry_description,
    registry_names,
    sine_envelope,
    weierstrass,
)
from seqderiv.seqgen import ExponentialDecay, HarmonicDecay


class TestDomains:
    def test_interval_membership(self):
        d = Interval(0.0, 1.0)
        assert d.contains(0.0) and d.contains(1.0) and d.contains(0.5)
        assert not d.contains(-0.1) and not d.contains(1.1)
        assert d.contains_many(np.array([0.0, 0.5, 1.0]))
        assert not d.contains_many(np.array([0.5, 2.0]))

    def test_discrete_membership_and_locate(self):
        d = DiscreteDomain(ExponentialDecay(a=2.0), ExponentialDecay(a=4.0))
        assert d.contains(0.0)
        assert d.contains(0.25)        # h_2 = 2^-2
        assert d.contains(-(4.0**-3))  # -k_3
        assert not d.contains(0.3)
        assert d.locate(0.0) == ("zero", 0)
        assert d.locate(0.25) == ("right", 2)
        assert d.locate(-(4.0**-3)) == ("left", 3)
        with pytest.raises(DomainError):
            d.locate(0.3)

    def test_eval_outside_domain_raises(self):
        f = make_sqrt_sin()
        with pytest.raises(DomainError):
            f.eval(-0.5)
        with pytest.raises(DomainError):
            f.eval_many(np.array([0.5, 2.0]))


class TestSmoothControls:
    def test_eval_many_matches_eval(self):
        xs = np.linspace(-1.0, 1.0, 101)
        for spec in ("abs", "square", "sin", "sqrt_sin_even"):
            f = build(spec)
            many = f.eval_many(xs)
            assert many.shape == xs.shape
            for x, v in zip(xs, many):
                assert v == pytest.approx(f.eval(float(x)), abs=1e-15)

    def test_describe(self):
        assert build("abs").describe() == "abs"
        assert "a=0.5" in build("weierstrass:a=0.5,b=13").describe()


class TestWeierstrass:
    def test_tail_truncation_respects_tolerance(self):
        coarse = weierstrass(0.5, 13, 0.3, 1e-4)
        fine = weierstrass(0.5, 13, 0.3, 1e-12)
        assert coarse == pytest.approx(fine, abs=2e-4)

    def test_bad_parameters_rejected(self):
        with pytest.raises(ParamError):
            weierstrass(1.5, 13, 0.0, 1e-6)
        with pytest.raises(ParamError):
            weierstrass(0.5, 12, 0.0, 1e-6)   # even frequency
        with pytest.raises(ParamError):
            weierstrass(0.5, 13, 0.0, -1e-6)

    def test_growth_condition_warning(self):
        with pytest.warns(UserWarning):
            make_weierstrass(a=0.5, b=3)
        assert dict(make_weierstrass().params)["growth_condition"] is True

    def test_function_is_even_with_period_two(self):
        f = make_weierstrass()
        xs = np.array([0.25, 0.5, 1.375])
        assert np.array_equal(f.eval_many(xs), f.eval_many(-xs))
        assert np.array_equal(f.eval_many(xs), f.eval_many(xs + 2.0))


class TestSineEnvelope:
    def test_zero_at_origin(self):
        assert sine_envelope(-1.0, 2.0, 0.0) == 0.0

    def test_envelope_lines_attained(self):
        # sin(1/x) = 1 on the upper progression, so f touches b*x there;
        # sin(1/x) = -1 puts b*sin below a, so the a*x clamp engages
        up = 1.0 / (math.pi / 2.0 + 2.0 * math.pi * 5)
        down = 1.0 / (3.0 * math.pi / 2.0 + 2.0 * math.pi * 5)
        assert sine_envelope(-1.0, 2.0, up) == pytest.approx(2.0 * up, rel=1e-12)
        assert sine_envelope(-1.0, 2.0, down) == pytest.approx(-down, rel=1e-12)

    @settings(max_examples=200, deadline=None)
    @given(st.floats(min_value=1e-6, max_value=1.0))
    def test_graph_between_the_lines(self, x):
        v = sine_envelope(-1.0, 2.0, x)
        assert -x - 1e-12 <= v <= 2.0 * x + 1e-12

    def test_parameter_order_enforced(self):
        with pytest.raises(ParamError):
            make_sine_envelope(2.0, -1.0)

    def test_vector_path_matches_scalar(self):
        f = make_sine_envelope(-1.0, 2.0)
        xs = np.linspace(0.0, 1.0, 97)
        many = f.eval_many(xs)
        for x, v in zip(xs, many):
            assert v == pytest.approx(f.eval(float(x)), abs=1e-15)


class TestTwoSlope:
    def test_slopes_exact_at_binary_powers(self):
        f = make_two_slope(
            R=1.0, L=0.0, hseq=ExponentialDecay(a=2.0), kseq=ExponentialDecay(a=4.0)
        )
        for n in (1, 5, 20):
            h = 2.0**-n
            k = 4.0**-n
            assert f.eval(h) / h == 1.0
            assert f.eval(-k) == 0.0
        assert f.eval(0.0) == 0.0

    def test_off_sample_points_rejected(self):
        f = make_two_slope(
            R=1.0, L=0.0, hseq=ExponentialDecay(a=2.0), kseq=ExponentialDecay(a=4.0)
        )
        with pytest.raises(DomainError):
            f.eval(0.3)
        assert not f.is_continuous


class TestDenseSlope:
    def test_cells_carry_listed_slopes(self):
        f = make_dense_slope(ClosedExtSet.from_values([0.5, 2.0]), [0.5, 2.0])
        # block n=2 covers (1/3, 1/2] in three cells
        assert f.eval(0.35) == pytest.approx(0.5 * 0.35)   # cell 1
        assert f.eval(0.42) == pytest.approx(2.0 * 0.42)   # cell 2
        assert f.eval(0.49) == pytest.approx(math.sqrt(0.49))  # final cell
        assert f.eval(0.0) == 0.0

    def test_slope_sequence_cycles_across_blocks(self):
        f = make_dense_slope(ClosedExtSet.from_values([0.5, 2.0]), [0.5, 2.0])
        # first cell of every block restarts the cycle
        assert f.eval(0.255) == pytest.approx(0.5 * 0.255)  # block n=3

    def test_empty_target_set_rejected(self):
        with pytest.raises(ParamError):
            make_dense_slope(ClosedExtSet.canonical(), [0.5])


class TestGlued:
    def test_right_branch_matches_envelope(self):
        f = make_glued(-1.0, 2.0, -3.0, 1.0)
        assert f.eval(0.3) == sine_envelope(-1.0, 2.0, 0.3)

    def test_left_branch_is_reflected(self):
        f = make_glued(-1.0, 2.0, -3.0, 1.0)
        assert f.eval(-0.3) == sine_envelope(-1.0, 3.0, 0.3)

    def test_continuous_at_zero(self):
        f = make_glued(-1.0, 2.0, -3.0, 1.0)
        assert f.eval(0.0) == 0.0
        assert abs(f.eval(1e-9)) <= 2e-9
        assert abs(f.eval(-1e-9)) <= 3e-9


class TestBuild:
    def test_registry_listing(self):
        names = registry_names()
        assert names == sorted(names)
        assert "weierstrass" in names
        for n in names:
            assert registry_description(n)

    def test_nested_sequence_specs_parse(self):
        f = build("two_slope:R=1,L=0,h=exp:2,k=exp:4")
        assert f.eval(0.5) == 0.5

    def test_list_values_survive_comma_splitting(self):
        f = build("dense_slope:slopes=0.5;2")
        assert f.eval(0.35) == pytest.approx(0.5 * 0.35)

    def test_unknown_name_rejected(self):
        with pytest.raises(ParamError):
            build("parabola")

    def test_missing_parameter_rejected(self):
        with pytest.raises(ParamError):
            build("sine_envelope:a=-1")

    def test_unused_parameter_rejected(self):
        with pytest.raises(ParamError):
            build("abs:a=1")


class TestTwoSidedFamily:
    def test_all_continuous_with_room_on_both_sides(self):
        fams = continuous_two_sided_at_zero()
        assert len(fams) >= 4
        for f in fams:
            assert f.is_continuous
            assert f.domain.contains(0.0)
            assert f.domain.contains(1e-3) and f.domain.contains(-1e-3)
            assert f.eval(0.0) == f.eval(0.0)  # evaluable, not NaN
