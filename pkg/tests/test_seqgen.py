"""Null-sequence generators, subsequences, and rate classification."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from seqderiv.errors import (
    DomainError,
    InvalidMapError,
    ParamError,
    SequenceIndexError,
)
from seqderiv.seqgen import (
    ExplicitDecay,
    ExponentialDecay,
    HarmonicDecay,
    parse_sequence_spec,
    power_decay,
    rate_classify,
    subsequence,
    term,
)


class TestFamilies:
    def test_harmonic_terms(self):
        s = HarmonicDecay(p=2.0, q=3.0)
        assert term(s, 1) == pytest.approx(1.0 / 5.0)
        assert term(s, 10) == pytest.approx(1.0 / 32.0)

    def test_power_terms(self):
        s = power_decay(m=2.0, a=3.0)
        assert term(s, 4) == pytest.approx(1.0 / 48.0)

    def test_exponential_terms(self):
        s = ExponentialDecay(a=2.0)
        assert term(s, 5) == pytest.approx(2.0**-5)

    def test_explicit_terms_and_end(self):
        s = ExplicitDecay(values=(0.5, 0.25, 1e-4))
        assert term(s, 1) == 0.5
        assert term(s, 3) == 1e-4
        with pytest.raises(SequenceIndexError):
            term(s, 4)

    def test_index_below_offset_rejected(self):
        with pytest.raises(SequenceIndexError):
            term(HarmonicDecay(p=0.0, q=1.0), 0)

    @pytest.mark.parametrize(
        "make",
        [
            lambda: HarmonicDecay(p=1.0, q=-1.0),
            lambda: HarmonicDecay(p=-5.0, q=1.0),
            lambda: power_decay(m=-1.0),
            lambda: power_decay(m=2.0, a=-3.0),
            lambda: ExponentialDecay(a=1.0),
            lambda: ExponentialDecay(a=0.5),
            lambda: ExplicitDecay(values=()),
        ],
    )
    def test_bad_parameters_rejected(self, make):
        with pytest.raises(ParamError):
            make()

    def test_explicit_must_decrease(self):
        with pytest.raises(DomainError):
            ExplicitDecay(values=(0.5, 0.7, 1e-4))

    def test_explicit_must_reach_decay_threshold(self):
        with pytest.raises(DomainError):
            ExplicitDecay(values=(0.5, 0.25))

    def test_explicit_negative_rejected(self):
        with pytest.raises(DomainError):
            ExplicitDecay(values=(0.5, -0.25))

    def test_spec_strings_round_trip(self):
        for s in (
            HarmonicDecay(p=0.0, q=1.0),
            power_decay(m=2.0, a=3.0),
            ExponentialDecay(a=4.0),
            ExplicitDecay(values=(0.5, 0.25, 1e-4)),
        ):
            again = parse_sequence_spec(s.spec_string())
            for n in range(1, 4):
                assert term(again, n) == pytest.approx(term(s, n))

    @settings(max_examples=60, deadline=None)
    @given(
        st.sampled_from(["harmonic", "poly", "exp"]),
        st.integers(min_value=1, max_value=200),
    )
    def test_terms_positive_and_decreasing(self, family, n):
        s = {
            "harmonic": HarmonicDecay(p=1.0, q=2.0),
            "poly": power_decay(m=1.5, a=2.0),
            "exp": ExponentialDecay(a=3.0),
        }[family]
        a, b = term(s, n), term(s, n + 1)
        assert a > 0 and b > 0
        assert b < a


class TestSubsequence:
    def test_even_index_subsequence(self):
        base = HarmonicDecay(p=0.0, q=1.0)
        sub = subsequence(base, lambda n: 2 * n)
        assert term(sub, 3) == pytest.approx(1.0 / 6.0)

    def test_map_must_increase(self):
        base = HarmonicDecay(p=0.0, q=1.0)
        with pytest.raises(InvalidMapError):
            subsequence(base, lambda n: 5)

    def test_map_must_be_integral(self):
        base = HarmonicDecay(p=0.0, q=1.0)
        with pytest.raises(InvalidMapError):
            subsequence(base, lambda n: n + 0.5)

    def test_map_must_respect_base_offset(self):
        base = HarmonicDecay(p=0.0, q=1.0)
        with pytest.raises(InvalidMapError):
            subsequence(base, lambda n: n - 1)

    def test_nested_subsequence(self):
        base = power_decay(m=2.0)
        sub = subsequence(subsequence(base, lambda n: 2 * n), lambda n: n + 1)
        assert term(sub, 1) == pytest.approx(1.0 / 16.0)


class TestRateClassification:
    def test_polynomial_recovered(self):
        c = rate_classify(power_decay(m=2.0, a=3.0), N=400)
        assert c.kind == "polynomial"
        assert c.m == pytest.approx(2.0, abs=1e-6)
        assert c.a == pytest.approx(3.0, rel=1e-4)

    def test_exponential_recovered(self):
        c = rate_classify(ExponentialDecay(a=2.0), N=60)
        assert c.kind == "exponential"
        assert c.a == pytest.approx(2.0, rel=1e-6)

    def test_harmonic_reads_as_degree_one(self):
        c = rate_classify(HarmonicDecay(p=5.0, q=2.0), N=400)
        assert c.kind == "polynomial"
        assert c.m == pytest.approx(1.0, abs=0.05)

    def test_small_sample_rejected(self):
        with pytest.raises(ParamError):
            rate_classify(power_decay(m=2.0), N=8)

    def test_str_is_readable(self):
        assert "polynomial" in str(rate_classify(power_decay(m=2.0), N=200))


class TestParseSpec:
    def test_families_parse(self):
        assert term(parse_sequence_spec("harmonic:0,1"), 2) == 0.5
        assert term(parse_sequence_spec("exp:2"), 2) == 0.25
        assert term(parse_sequence_spec("poly:2,1"), 3) == pytest.approx(1.0 / 9.0)
        assert term(parse_sequence_spec("list:0.5,0.25,1e-4"), 2) == 0.25

    @pytest.mark.parametrize(
        "spec", ["harmonic", "exp:", "poly:2", "nope:1", "list:", "exp:abc"]
    )
    def test_malformed_specs_rejected(self, spec):
        with pytest.raises(ParamError):
            parse_sequence_spec(spec)
