"""Voice quality: jitter, shimmer, cepstral peak prominence, formants.

Jitter and shimmer are cycle-to-cycle statistics over glottal period
markers (waveform peaks at roughly one pitch period spacing). CPP is the
height of the cepstral peak above a regression line fitted across the
pitch quefrency band. Formant candidates come from the linear-prediction
spectral envelope.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.signal import find_peaks

from ..core import Interval
from ..ingest import AudioClip
from .pitch import FrameSeries
from .vad import _EPS


@dataclass(frozen=True)
class QualityParams:
    fmin_hz: float = 75.0
    fmax_hz: float = 400.0
    marker_height_frac: float = 0.25
    cpp_max_samples: int = 32768
    lpc_window_seconds: float = 0.040
    preemphasis: float = 0.97
    formant_min_hz: float = 90.0
    formant_max_hz: float = 4000.0


@dataclass(frozen=True)
class VoiceQuality:
    """Session- or window-level quality numbers; None = not measurable."""

    jitter_pct: float | None
    shimmer_pct: float | None
    cpp_db: float | None


def find_period_markers(
    clip: AudioClip,
    utterances: list[Interval],
    f0_hint_hz: float | None,
    params: QualityParams | None = None,
) -> list[tuple[float, float, int]]:
    """Locate per-cycle peaks inside utterances.

    Returns (time, amplitude, utterance_index) per marker. The f0 hint
    (median voiced pitch) sets the minimum peak spacing; without one the
    upper band edge is assumed.
    """
    params = params or QualityParams()
    sr = clip.sample_rate
    f0 = f0_hint_hz if f0_hint_hz and np.isfinite(f0_hint_hz) else params.fmax_hz
    distance = max(1, int(round(0.7 * sr / f0)))
    markers: list[tuple[float, float, int]] = []
    for u_index, utt in enumerate(utterances):
        lo = int(round(utt.start * sr))
        hi = int(round(utt.end * sr))
        chunk = clip.samples[lo:hi]
        if len(chunk) < distance * 2:
            continue
        height = params.marker_height_frac * float(np.max(np.abs(chunk)))
        if height <= 0.0:
            continue
        peaks, _ = find_peaks(chunk, height=height, distance=distance)
        for p in peaks:
            markers.append(((lo + int(p)) / sr, float(chunk[p]), u_index))
    return markers


def jitter_shimmer(
    markers: list[tuple[float, float, int]],
    params: QualityParams | None = None,
    sample_rate: int | None = None,
) -> tuple[float | None, float | None]:
    """Cycle-to-cycle period and amplitude variability in percent.

    Periods are differences of consecutive markers within one utterance,
    kept only when they fall in the pitch band. Needs at least three
    periods; otherwise both values are unavailable. Markers sit on exact
    sample positions, so when the rate is known each period is snapped
    back to a whole sample count; equal cycles then subtract to exactly
    zero instead of float-division dust.
    """
    params = params or QualityParams()
    t_min = 1.0 / params.fmax_hz
    t_max = 1.0 / params.fmin_hz
    periods: list[float] = []
    amps: list[float] = []
    for i in range(1, len(markers)):
        t1, a1, u1 = markers[i]
        t0, a0, u0 = markers[i - 1]
        if u1 != u0:
            continue
        period = t1 - t0
        if sample_rate is not None:
            period = round(period * sample_rate) / sample_rate
        if t_min <= period <= t_max:
            periods.append(period)
            amps.append(a1)
    if len(periods) < 3:
        return None, None
    periods_arr = np.asarray(periods)
    amps_arr = np.asarray(amps)
    jitter = 100.0 * float(np.mean(np.abs(np.diff(periods_arr)))) / float(np.mean(periods_arr))
    shimmer = 100.0 * float(np.mean(np.abs(np.diff(amps_arr)))) / float(np.mean(amps_arr))
    return jitter, shimmer


def cepstral_peak_prominence(
    samples: np.ndarray,
    sample_rate: int,
    params: QualityParams | None = None,
) -> float | None:
    """CPP in dB: log-cepstral peak height above the band regression line."""
    params = params or QualityParams()
    x = np.asarray(samples, dtype=np.float64)[: params.cpp_max_samples]
    if len(x) < sample_rate // int(params.fmin_hz) * 2:
        return None
    if float(np.max(np.abs(x))) <= 0.0:
        return None
    windowed = x * np.hanning(len(x))
    spectrum_db = 20.0 * np.log10(np.abs(np.fft.rfft(windowed)) + _EPS)
    cepstrum = np.fft.irfft(spectrum_db)
    # prominence lives on the log-cepstrum: dB of cepstral magnitude
    cepstrum_db = 20.0 * np.log10(np.abs(cepstrum) + _EPS)
    q_lo = int(np.floor(sample_rate / params.fmax_hz))
    q_hi = int(np.ceil(sample_rate / params.fmin_hz))
    q_hi = min(q_hi, len(cepstrum_db) // 2 - 1)
    if q_hi <= q_lo + 2:
        return None
    band = cepstrum_db[q_lo:q_hi + 1]
    quefrencies = np.arange(q_lo, q_hi + 1, dtype=np.float64)
    slope, intercept = np.polyfit(quefrencies, band, 1)
    prominence = band - (slope * quefrencies + intercept)
    return float(np.max(prominence))


def voice_quality(
    clip: AudioClip,
    utterances: list[Interval],
    f0_hint_hz: float | None,
    params: QualityParams | None = None,
) -> VoiceQuality:
    """Bundle jitter, shimmer, and CPP for a clip region."""
    params = params or QualityParams()
    markers = find_period_markers(clip, utterances, f0_hint_hz, params)
    jitter, shimmer = jitter_shimmer(markers, params, clip.sample_rate)
    cpp = None
    if utterances:
        longest = max(utterances, key=lambda u: u.duration)
        sr = clip.sample_rate
        region = clip.samples[int(round(longest.start * sr)):int(round(longest.end * sr))]
        cpp = cepstral_peak_prominence(region, sr, params)
    return VoiceQuality(jitter, shimmer, cpp)


def estimate_formants(
    clip: AudioClip,
    frames: FrameSeries,
    params: QualityParams | None = None,
) -> FrameSeries:
    """Fill F1/F2 for voiced frames from the LP spectral envelope.

    Model order is 2 + rate/1000. Frames whose envelope yields no
    resolvable peak pair keep NaN (single-peak frames fill F1 only).
    """
    params = params or QualityParams()
    sr = clip.sample_rate
    order = 2 + sr // 1000
    win_len = int(round(params.lpc_window_seconds * sr))
    window = np.hamming(win_len)
    f1 = frames.f1_hz.copy()
    f2 = frames.f2_hz.copy()
    grid = np.fft.rfftfreq(1024, d=1.0 / sr)
    for i in np.nonzero(frames.voiced)[0]:
        center = int(round(frames.times[i] * sr))
        lo = center - win_len // 2
        if lo < 0 or lo + win_len > len(clip.samples):
            continue
        chunk = clip.samples[lo:lo + win_len]
        emphasized = np.empty_like(chunk)
        emphasized[0] = chunk[0]
        emphasized[1:] = chunk[1:] - params.preemphasis * chunk[:-1]
        coeffs = _lpc(emphasized * window, order)
        if coeffs is None:
            continue
        envelope = 1.0 / (np.abs(np.fft.rfft(coeffs, 1024)) + _EPS)
        peaks, _ = find_peaks(envelope)
        freqs = [
            float(grid[p]) for p in peaks
            if params.formant_min_hz <= grid[p] <= params.formant_max_hz
        ]
        if freqs:
            f1[i] = freqs[0]
        if len(freqs) >= 2:
            f2[i] = freqs[1]
    return FrameSeries(
        frames.times, frames.loudness_db, frames.f0_hz, frames.voicing_prob, f1, f2,
    )


def _lpc(frame: np.ndarray, order: int) -> np.ndarray | None:
    """Levinson-Durbin solve of the LP normal equations.

    Returns [1, a1, ..., ap] or None when the recursion degenerates.
    """
    n = len(frame)
    if n <= order:
        return None
    full = np.correlate(frame, frame, mode="full")
    r = full[n - 1:n + order]
    if r[0] <= _EPS:
        return None
    a = np.zeros(order + 1)
    a[0] = 1.0
    err = r[0]
    for i in range(1, order + 1):
        acc = r[i] + np.dot(a[1:i], r[i - 1:0:-1])
        k = -acc / err
        if not np.isfinite(k) or abs(k) >= 1.0:
            return None
        prev = a[1:i].copy()
        a[1:i] = prev + k * prev[::-1]
        a[i] = k
        err *= (1.0 - k * k)
        if err <= 0.0:
            return None
    return a
