"""Speaking rate from syllable nuclei.

Nuclei are local maxima of the smoothed intensity contour inside
utterances that rise at least 2 dB above the dips on both sides. The
count converts to words per minute through a fixed syllables-per-word
divisor; the denominator is total session time, not speech time, so a
teacher who pauses half the lesson speaks half as many words per minute.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..core import Interval
from ..ingest import AudioClip
from .vad import frame_rms_db


@dataclass(frozen=True)
class RateParams:
    smooth_seconds: float = 0.120
    hop_seconds: float = 0.010
    frame_seconds: float = 0.025
    min_prominence_db: float = 2.0
    syllables_per_word: float = 1.5


def syllable_nuclei(
    clip: AudioClip,
    utterances: list[Interval],
    params: RateParams | None = None,
) -> np.ndarray:
    """Times of detected syllable nuclei, sorted ascending."""
    params = params or RateParams()
    if not utterances:
        return np.empty(0)
    sr = clip.sample_rate
    hop = int(round(params.hop_seconds * sr))
    frame_len = int(round(params.frame_seconds * sr))
    levels = frame_rms_db(clip.samples, frame_len, hop)
    if len(levels) < 3:
        return np.empty(0)
    taps = max(1, int(round(params.smooth_seconds / params.hop_seconds)))
    kernel = np.ones(taps) / taps
    smoothed = np.convolve(levels, kernel, mode="same")
    times = np.arange(len(smoothed)) * params.hop_seconds + params.frame_seconds / 2.0

    nuclei: list[float] = []
    for utt in utterances:
        inside = np.nonzero((times >= utt.start) & (times <= utt.end))[0]
        if len(inside) < 3:
            continue
        seg = smoothed[inside]
        peaks = [
            k for k in range(1, len(seg) - 1)
            if seg[k] >= seg[k - 1] and seg[k] > seg[k + 1]
        ]
        for idx, k in enumerate(peaks):
            left_lo = peaks[idx - 1] if idx > 0 else 0
            right_hi = peaks[idx + 1] if idx + 1 < len(peaks) else len(seg) - 1
            dip_before = float(np.min(seg[left_lo:k + 1]))
            dip_after = float(np.min(seg[k:right_hi + 1]))
            if seg[k] - max(dip_before, dip_after) >= params.min_prominence_db:
                nuclei.append(float(times[inside[k]]))
    return np.asarray(sorted(nuclei))


def to_words_per_minute(
    nucleus_count: int,
    span_seconds: float,
    params: RateParams | None = None,
) -> float:
    """Convert a nucleus count over a time span to words per minute."""
    params = params or RateParams()
    if span_seconds <= 0.0:
        return 0.0
    syllables_per_minute = nucleus_count * 60.0 / span_seconds
    return syllables_per_minute / params.syllables_per_word
