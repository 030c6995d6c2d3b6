"""Speaking-performance scoring and style classification.

Each feature is normalized onto [0, 100] (min-max for directional
features, distance-to-target for features with an optimal value), then
combined two ways: a plain mean (equal weights) and a reciprocal
standard deviation weighting where features that fluctuate more across
the session's fine windows contribute less. Style metrics are also
classified against fixed norms: the 140 wpm target with its 125-160
acceptable band, the 0.75 clarity threshold, and the monotony bands.
All bands are half-open [lo, hi).
"""

from __future__ import annotations

from dataclasses import dataclass

CLARITY_CPP_RANGE_DB = (0.0, 15.0)

INSUFFICIENT = "insufficient data"


@dataclass(frozen=True)
class FeatureSpec:
    """How one feature maps onto the [0, 100] scale."""

    name: str
    direction: str  # "higher_better" or "target"
    lo: float = 0.0
    hi: float = 1.0
    target: float = 0.0
    tol: float = 1.0

    def __post_init__(self) -> None:
        if self.direction not in ("higher_better", "target"):
            raise ValueError(f"unknown direction {self.direction!r}")
        if self.direction == "higher_better" and not self.lo < self.hi:
            raise ValueError(f"feature {self.name}: lo must be < hi")
        if self.direction == "target" and self.tol <= 0:
            raise ValueError(f"feature {self.name}: tol must be positive")


@dataclass(frozen=True)
class StyleNorms:
    """Published norms the style metrics are compared against."""

    rate_target_wpm: float = 140.0
    rate_band_wpm: tuple[float, float] = (125.0, 160.0)
    clarity_optimal: float = 0.75
    clarity_acceptable: float = 0.5
    monotony_low: float = 0.4
    monotony_high: float = 1.6


@dataclass(frozen=True)
class SpeakingScore:
    """Normalized per-feature scores plus both aggregate scores."""

    feature_scores: dict[str, float]
    ew_score: float
    rw_score: float | None
    weights: dict[str, float] | None


def normalize_feature(value: float, spec: FeatureSpec) -> float:
    """Map a raw value onto [0, 100] per the feature's direction."""
    if spec.direction == "higher_better":
        frac = (value - spec.lo) / (spec.hi - spec.lo)
        return 100.0 * min(1.0, max(0.0, frac))
    return 100.0 * max(0.0, 1.0 - abs(value - spec.target) / spec.tol)


def score_equal_weights(scores: list[float]) -> float:
    """Arithmetic mean of normalized scores."""
    if not scores:
        raise ValueError("cannot score an empty feature vector")
    return sum(scores) / len(scores)


def score_reciprocal_std_weights(
    scores: list[float],
    stds: list[float],
) -> tuple[float, list[float]]:
    """Weighted score with weights proportional to 1/sigma.

    Each sigma is the feature's variability over the session's fine
    windows. A zero sigma would dominate everything, so zeros are lifted
    to the smallest positive sigma present; all-zero sigmas are an error.
    """
    if not scores:
        raise ValueError("cannot score an empty feature vector")
    if len(scores) != len(stds):
        raise ValueError("scores and stds must have equal length")
    if any(s < 0 for s in stds):
        raise ValueError("standard deviations must be non-negative")
    positive = [s for s in stds if s > 0.0]
    if not positive:
        raise ValueError("all feature deviations are zero; reciprocal weights undefined")
    floor = min(positive)
    adjusted = [s if s > 0.0 else floor for s in stds]
    inverses = [1.0 / s for s in adjusted]
    total = sum(inverses)
    weights = [inv / total for inv in inverses]
    rw = sum(w * s for w, s in zip(weights, scores))
    return rw, weights


def clarity_from_cpp(cpp_db: float | None) -> float | None:
    """Map CPP in dB onto a [0, 1] clarity score (0 dB -> 0, 15 dB -> 1)."""
    if cpp_db is None:
        return None
    lo, hi = CLARITY_CPP_RANGE_DB
    return min(1.0, max(0.0, (cpp_db - lo) / (hi - lo)))


def classify_style(
    speaking_rate_wpm: float | None,
    clarity: float | None,
    monotony: float | None,
    norms: StyleNorms | None = None,
) -> dict[str, dict]:
    """Compare style metrics against the norms; verdicts, not grades.

    A missing metric's verdict is "insufficient data" rather than a value
    that could be mistaken for a measurement of zero.
    """
    norms = norms or StyleNorms()
    out: dict[str, dict] = {}

    if speaking_rate_wpm is None:
        out["speaking_rate"] = {"value": None, "verdict": INSUFFICIENT, "distance_to_target": None}
    else:
        lo, hi = norms.rate_band_wpm
        if speaking_rate_wpm < lo:
            verdict = "below"
        elif speaking_rate_wpm < hi:
            verdict = "within"
        else:
            verdict = "above"
        out["speaking_rate"] = {
            "value": speaking_rate_wpm,
            "verdict": verdict,
            "distance_to_target": speaking_rate_wpm - norms.rate_target_wpm,
        }

    if clarity is None:
        out["clarity"] = {"value": None, "verdict": INSUFFICIENT}
    else:
        if clarity < norms.clarity_acceptable:
            verdict = "suboptimal"
        elif clarity < norms.clarity_optimal:
            verdict = "acceptable"
        else:
            verdict = "optimal"
        out["clarity"] = {"value": clarity, "verdict": verdict}

    if monotony is None:
        out["monotony"] = {"value": None, "verdict": INSUFFICIENT}
    else:
        if monotony < norms.monotony_low:
            verdict = "monotonous"
        elif monotony < norms.monotony_high:
            verdict = "average"
        else:
            verdict = "lively"
        out["monotony"] = {"value": monotony, "verdict": verdict}

    return out
