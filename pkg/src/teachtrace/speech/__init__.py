"""Speech analysis: segmentation, frame features, quality, rate, windows."""

from .vad import VadParams, segment_utterances
from .pitch import FrameSeries, PitchParams, estimate_pitch
from .quality import (
    QualityParams,
    VoiceQuality,
    cepstral_peak_prominence,
    estimate_formants,
    find_period_markers,
    jitter_shimmer,
    voice_quality,
)
from .rate import RateParams, syllable_nuclei, to_words_per_minute
from .windows import (
    WindowFeatures,
    WindowParams,
    aggregate_windows,
    compute_window,
    hz_to_semitones,
    tile_windows,
)

__all__ = [
    "VadParams", "segment_utterances",
    "FrameSeries", "PitchParams", "estimate_pitch",
    "QualityParams", "VoiceQuality", "cepstral_peak_prominence",
    "estimate_formants", "find_period_markers", "jitter_shimmer", "voice_quality",
    "RateParams", "syllable_nuclei", "to_words_per_minute",
    "WindowFeatures", "WindowParams", "aggregate_windows",
    "compute_window", "hz_to_semitones", "tile_windows",
]
