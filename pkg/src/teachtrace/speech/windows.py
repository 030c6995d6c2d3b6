"""Two-level window aggregation of speech features.

The session is tiled into coarse (60 s) and fine (10 s) windows; the
last window keeps its partial length and is flagged. Each window gets
three groups of numbers: statistical summaries of the frame features,
contextual speech-structure features, and voice-quality measures. A
value that cannot be computed in a window is None, never zero.

Membership conventions, which the whole package shares: a frame, nucleus
or period marker belongs to the window containing its time stamp, with
windows half-open [start, end) except the final window, which closes at
the session end. Utterances contribute their intersection with the
window.
"""

from __future__ import annotations

from dataclasses import dataclass, asdict

import numpy as np

from ..core import Interval
from ..ingest import AudioClip
from .pitch import FrameSeries
from .quality import QualityParams, cepstral_peak_prominence, jitter_shimmer
from .rate import RateParams, to_words_per_minute


@dataclass(frozen=True)
class WindowParams:
    coarse_seconds: float = 60.0
    fine_seconds: float = 10.0
    semitone_ref_hz: float = 100.0
    intonation_ref_semitones: float = 2.0


@dataclass(frozen=True)
class WindowFeatures:
    """One aggregation window's feature bundle."""

    start: float
    end: float
    level: str
    partial: bool
    loudness_mean_db: float | None
    loudness_std_db: float | None
    pitch_mean_semitones: float | None
    pitch_std_semitones: float | None
    f1_hz: float | None
    f2_hz: float | None
    voicing_prob_mean: float | None
    utterance_count: int
    mean_utterance_seconds: float | None
    mean_pause_seconds: float | None
    speaking_rate_wpm: float
    speech_fraction: float
    cpp_db: float | None
    jitter_pct: float | None
    shimmer_pct: float | None
    intonation_score: float | None

    def to_dict(self) -> dict:
        return asdict(self)


def hz_to_semitones(f0: np.ndarray, ref_hz: float) -> np.ndarray:
    return 12.0 * np.log2(f0 / ref_hz)


def tile_windows(duration: float, length: float) -> list[tuple[float, float]]:
    """Cover [0, duration] with fixed-length windows plus a partial tail."""
    if duration <= 0.0:
        return []
    windows = []
    start = 0.0
    index = 0
    while start < duration:
        end = min(duration, (index + 1) * length)
        windows.append((start, end))
        start = (index + 1) * length
        index += 1
    return windows


def aggregate_windows(
    clip: AudioClip | None,
    frames: FrameSeries,
    utterances: list[Interval],
    nuclei_times: np.ndarray,
    markers: list[tuple[float, float, int]],
    duration: float,
    level: str,
    params: WindowParams | None = None,
    quality_params: QualityParams | None = None,
    rate_params: RateParams | None = None,
) -> list[WindowFeatures]:
    """Aggregate the session's speech features at one window level."""
    params = params or WindowParams()
    if level == "coarse":
        length = params.coarse_seconds
    elif level == "fine":
        length = params.fine_seconds
    else:
        raise ValueError(f"level must be 'coarse' or 'fine', got {level!r}")
    tiles = tile_windows(duration, length)
    out = []
    for i, (start, end) in enumerate(tiles):
        last = i == len(tiles) - 1
        out.append(compute_window(
            start, end, level, partial=(end - start) < length, closed_end=last,
            clip=clip, frames=frames, utterances=utterances,
            nuclei_times=nuclei_times, markers=markers,
            params=params, quality_params=quality_params, rate_params=rate_params,
        ))
    return out


def compute_window(
    start: float,
    end: float,
    level: str,
    partial: bool,
    closed_end: bool,
    clip: AudioClip | None,
    frames: FrameSeries,
    utterances: list[Interval],
    nuclei_times: np.ndarray,
    markers: list[tuple[float, float, int]],
    params: WindowParams | None = None,
    quality_params: QualityParams | None = None,
    rate_params: RateParams | None = None,
) -> WindowFeatures:
    """Feature bundle for one [start, end) window (closed at session end)."""
    params = params or WindowParams()
    span = end - start

    def in_window(t: np.ndarray) -> np.ndarray:
        upper = t <= end if closed_end else t < end
        return (t >= start) & upper

    member = in_window(frames.times)

    # overlap of each utterance with the window
    window_iv = Interval(start, end)
    cuts: list[Interval] = []
    cut_index: list[int] = []
    for u_index, utt in enumerate(utterances):
        overlap = utt.intersect(window_iv)
        if overlap is not None and overlap.duration > 0.0:
            cuts.append(overlap)
            cut_index.append(u_index)

    speech_time = sum(c.duration for c in cuts)
    speech_fraction = min(1.0, speech_time / span) if span > 0 else 0.0

    in_speech = np.zeros(len(frames.times), dtype=bool)
    for c in cuts:
        in_speech |= (frames.times >= c.start) & (frames.times <= c.end)

    loud = frames.loudness_db[member & in_speech]
    loudness_mean = float(np.mean(loud)) if len(loud) else None
    loudness_std = float(np.std(loud)) if len(loud) else None

    voiced = member & frames.voiced
    semis = hz_to_semitones(frames.f0_hz[voiced], params.semitone_ref_hz)
    pitch_mean = float(np.mean(semis)) if len(semis) else None
    pitch_std = float(np.std(semis)) if len(semis) else None
    intonation = (pitch_std / params.intonation_ref_semitones) if pitch_std is not None else None

    f1 = frames.f1_hz[member]
    f1 = f1[~np.isnan(f1)]
    f2 = frames.f2_hz[member]
    f2 = f2[~np.isnan(f2)]
    f1_mean = float(np.mean(f1)) if len(f1) else None
    f2_mean = float(np.mean(f2)) if len(f2) else None

    prob = frames.voicing_prob[member]
    prob_mean = float(np.mean(prob)) if len(prob) else None

    mean_utt = speech_time / len(cuts) if cuts else None
    pauses = _pause_lengths(cuts, start, end)
    mean_pause = float(np.mean(pauses)) if pauses else None

    nuclei = np.asarray(nuclei_times)
    rate_count = int(np.count_nonzero(in_window(nuclei))) if len(nuclei) else 0
    wpm = to_words_per_minute(rate_count, span, rate_params)

    def member_scalar(t: float) -> bool:
        return start <= t and (t <= end if closed_end else t < end)

    window_markers = [m for m in markers if member_scalar(m[0])]
    jitter, shimmer = jitter_shimmer(
        window_markers, quality_params,
        clip.sample_rate if clip is not None else None,
    )

    cpp = None
    if clip is not None and cuts:
        longest = max(cuts, key=lambda c: c.duration)
        sr = clip.sample_rate
        region = clip.samples[int(round(longest.start * sr)):int(round(longest.end * sr))]
        cpp = cepstral_peak_prominence(region, sr, quality_params)

    return WindowFeatures(
        start=start,
        end=end,
        level=level,
        partial=partial,
        loudness_mean_db=loudness_mean,
        loudness_std_db=loudness_std,
        pitch_mean_semitones=pitch_mean,
        pitch_std_semitones=pitch_std,
        f1_hz=f1_mean,
        f2_hz=f2_mean,
        voicing_prob_mean=prob_mean,
        utterance_count=len(cuts),
        mean_utterance_seconds=mean_utt,
        mean_pause_seconds=mean_pause,
        speaking_rate_wpm=wpm,
        speech_fraction=speech_fraction,
        cpp_db=cpp,
        jitter_pct=jitter,
        shimmer_pct=shimmer,
        intonation_score=intonation,
    )


def _pause_lengths(cuts: list[Interval], start: float, end: float) -> list[float]:
    """Lengths of the non-speech stretches inside [start, end]."""
    pauses = []
    cursor = start
    for c in sorted(cuts, key=lambda c: c.start):
        if c.start > cursor:
            pauses.append(c.start - cursor)
        cursor = max(cursor, c.end)
    if end > cursor:
        pauses.append(end - cursor)
    return [p for p in pauses if p > 1e-12]
