from fractions import Fraction

import numpy as np
import pytest

from teachtrace.scoring import (
    FeatureSpec,
    StyleNorms,
    clarity_from_cpp,
    classify_style,
    normalize_feature,
    score_equal_weights,
    score_reciprocal_std_weights,
)


class TestNormalization:
    def test_higher_better_clamps(self):
        spec = FeatureSpec("x", "higher_better", lo=0.0, hi=10.0)
        assert normalize_feature(-5.0, spec) == 0.0
        assert normalize_feature(5.0, spec) == 50.0
        assert normalize_feature(25.0, spec) == 100.0

    def test_target_centered(self):
        spec = FeatureSpec("rate", "target", target=140.0, tol=70.0)
        assert normalize_feature(140.0, spec) == 100.0
        assert normalize_feature(105.0, spec) == pytest.approx(50.0)
        assert normalize_feature(70.0, spec) == 0.0
        assert normalize_feature(280.0, spec) == 0.0

    def test_target_symmetry(self):
        spec = FeatureSpec("rate", "target", target=140.0, tol=70.0)
        for d in (5.0, 20.0, 60.0):
            assert normalize_feature(140.0 - d, spec) == pytest.approx(
                normalize_feature(140.0 + d, spec))

    def test_bad_direction_rejected(self):
        with pytest.raises(ValueError):
            FeatureSpec("x", "lower_better")


class TestEqualWeights:
    def test_mean(self):
        assert score_equal_weights([0.0, 50.0, 100.0]) == pytest.approx(50.0)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            score_equal_weights([])


class TestReciprocalWeights:
    def test_sigma_1_2_4_gives_4_2_1_sevenths(self):
        _, weights = score_reciprocal_std_weights([50.0, 50.0, 50.0], [1.0, 2.0, 4.0])
        expected = [Fraction(4, 7), Fraction(2, 7), Fraction(1, 7)]
        for got, want in zip(weights, expected):
            assert got == float(want)

    def test_weights_sum_to_one(self):
        rng = np.random.default_rng(6)
        for _ in range(100):
            n = rng.integers(1, 8)
            stds = rng.uniform(0.01, 10.0, n).tolist()
            scores = rng.uniform(0.0, 100.0, n).tolist()
            _, weights = score_reciprocal_std_weights(scores, stds)
            assert sum(weights) == pytest.approx(1.0, abs=1e-9)

    def test_equal_sigmas_reduce_to_equal_weights(self):
        scores = [10.0, 55.0, 90.0, 33.0]
        rw, _ = score_reciprocal_std_weights(scores, [3.0] * 4)
        assert abs(rw - score_equal_weights(scores)) <= 1e-9

    def test_zero_sigma_lifted_to_min_positive(self):
        _, weights = score_reciprocal_std_weights([50.0, 50.0], [0.0, 2.0])
        assert weights[0] == weights[1] == pytest.approx(0.5)

    def test_all_zero_sigma_rejected(self):
        with pytest.raises(ValueError, match="zero"):
            score_reciprocal_std_weights([50.0, 50.0], [0.0, 0.0])

    def test_rw_within_score_range(self):
        rng = np.random.default_rng(7)
        for _ in range(200):
            n = int(rng.integers(1, 7))
            scores = rng.uniform(0.0, 100.0, n).tolist()
            stds = rng.uniform(0.001, 5.0, n).tolist()
            rw, _ = score_reciprocal_std_weights(scores, stds)
            assert min(scores) - 1e-9 <= rw <= max(scores) + 1e-9

    def test_permutation_equivariance(self):
        scores = [10.0, 60.0, 90.0]
        stds = [1.0, 2.0, 4.0]
        rw_a, _ = score_reciprocal_std_weights(scores, stds)
        order = [2, 0, 1]
        rw_b, _ = score_reciprocal_std_weights(
            [scores[i] for i in order], [stds[i] for i in order])
        assert rw_a == pytest.approx(rw_b, abs=1e-12)

    def test_monotonicity_in_each_feature(self):
        rng = np.random.default_rng(8)
        for _ in range(1000):
            n = int(rng.integers(2, 7))
            scores = rng.uniform(0.0, 100.0, n).tolist()
            stds = rng.uniform(0.001, 5.0, n).tolist()
            k = int(rng.integers(0, n))
            bumped = list(scores)
            bumped[k] = min(100.0, bumped[k] + rng.uniform(0.0, 20.0))
            ew_lo = score_equal_weights(scores)
            ew_hi = score_equal_weights(bumped)
            rw_lo, _ = score_reciprocal_std_weights(scores, stds)
            rw_hi, _ = score_reciprocal_std_weights(bumped, stds)
            assert ew_hi >= ew_lo - 1e-12
            assert rw_hi >= rw_lo - 1e-12


class TestClarityMapping:
    def test_linear_range(self):
        assert clarity_from_cpp(0.0) == 0.0
        assert clarity_from_cpp(7.5) == pytest.approx(0.5)
        assert clarity_from_cpp(15.0) == 1.0

    def test_clamped(self):
        assert clarity_from_cpp(-3.0) == 0.0
        assert clarity_from_cpp(40.0) == 1.0

    def test_none_passthrough(self):
        assert clarity_from_cpp(None) is None


class TestStyleVerdicts:
    def test_rate_bands(self):
        assert classify_style(140.0, None, None)["speaking_rate"]["verdict"] == "within"
        assert classify_style(124.9, None, None)["speaking_rate"]["verdict"] == "below"
        assert classify_style(125.0, None, None)["speaking_rate"]["verdict"] == "within"
        assert classify_style(160.0, None, None)["speaking_rate"]["verdict"] == "above"
        assert classify_style(200.0, None, None)["speaking_rate"]["verdict"] == "above"

    def test_rate_distance_to_target(self):
        out = classify_style(140.0, None, None)["speaking_rate"]
        assert out["distance_to_target"] == 0.0
        assert classify_style(120.0, None, None)["speaking_rate"]["distance_to_target"] == -20.0

    def test_clarity_bands(self):
        assert classify_style(None, 0.80, None)["clarity"]["verdict"] == "optimal"
        assert classify_style(None, 0.75, None)["clarity"]["verdict"] == "optimal"
        assert classify_style(None, 0.74, None)["clarity"]["verdict"] == "acceptable"
        assert classify_style(None, 0.50, None)["clarity"]["verdict"] == "acceptable"
        assert classify_style(None, 0.49, None)["clarity"]["verdict"] == "suboptimal"

    def test_monotony_bands(self):
        assert classify_style(None, None, 0.3)["monotony"]["verdict"] == "monotonous"
        assert classify_style(None, None, 1.0)["monotony"]["verdict"] == "average"
        assert classify_style(None, None, 1.7)["monotony"]["verdict"] == "lively"
        assert classify_style(None, None, 0.4)["monotony"]["verdict"] == "average"
        assert classify_style(None, None, 1.6)["monotony"]["verdict"] == "lively"

    def test_missing_metrics_say_insufficient(self):
        out = classify_style(None, None, None)
        for key in ("speaking_rate", "clarity", "monotony"):
            assert out[key]["verdict"] == "insufficient data"
            assert out[key]["value"] is None

    def test_band_membership_is_the_whole_story(self):
        # any two values inside one band produce identical verdicts
        rng = np.random.default_rng(9)
        for _ in range(100):
            a, b = rng.uniform(125.0, 159.999, 2)
            va = classify_style(a, None, None)["speaking_rate"]["verdict"]
            vb = classify_style(b, None, None)["speaking_rate"]["verdict"]
            assert va == vb == "within"

    def test_custom_norms(self):
        norms = StyleNorms(rate_band_wpm=(100.0, 120.0), rate_target_wpm=110.0)
        assert classify_style(115.0, None, None, norms)["speaking_rate"]["verdict"] == "within"
