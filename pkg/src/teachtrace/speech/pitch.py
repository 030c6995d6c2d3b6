"""Frame-level loudness, pitch, and voicing.

Pitch comes from the normalized autocorrelation of 40 ms windows: the
highest peak in the 75-400 Hz lag band gives the period candidate, its
height gives the voicing probability, and a parabolic fit through the
peak and its neighbors refines the lag below one sample. Normalizing by
the zero-lag term makes every estimate exactly invariant to gain.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..ingest import AudioClip
from .vad import frame_rms_db, _EPS


@dataclass(frozen=True)
class PitchParams:
    window_seconds: float = 0.040
    hop_seconds: float = 0.010
    frame_seconds: float = 0.025
    fmin_hz: float = 75.0
    fmax_hz: float = 400.0
    voicing_threshold: float = 0.45


@dataclass(frozen=True)
class FrameSeries:
    """Per-frame features on the hop grid; times are frame centers.

    f0_hz is NaN on unvoiced frames. Formant columns stay NaN until
    filled by the formant pass.
    """

    times: np.ndarray
    loudness_db: np.ndarray
    f0_hz: np.ndarray
    voicing_prob: np.ndarray
    f1_hz: np.ndarray
    f2_hz: np.ndarray

    def __len__(self) -> int:
        return len(self.times)

    @property
    def voiced(self) -> np.ndarray:
        return ~np.isnan(self.f0_hz)


def estimate_pitch(clip: AudioClip, params: PitchParams | None = None) -> FrameSeries:
    """Compute the frame series: loudness, f0, and voicing per hop."""
    params = params or PitchParams()
    sr = clip.sample_rate
    hop = int(round(params.hop_seconds * sr))
    frame_len = int(round(params.frame_seconds * sr))
    win_len = int(round(params.window_seconds * sr))

    loudness = frame_rms_db(clip.samples, frame_len, hop)
    n = len(loudness)
    times = np.arange(n) * params.hop_seconds + params.frame_seconds / 2.0

    f0 = np.full(n, np.nan)
    prob = np.zeros(n)
    if n == 0:
        return FrameSeries(times, loudness, f0, prob, f0.copy(), f0.copy())

    lag_lo = int(np.floor(sr / params.fmax_hz))
    lag_hi = int(np.ceil(sr / params.fmin_hz))
    centers = times * sr
    starts = np.round(centers - win_len / 2.0).astype(int)
    valid = (starts >= 0) & (starts + win_len <= len(clip.samples))
    if lag_hi + 1 >= win_len or not np.any(valid):
        return FrameSeries(times, loudness, f0, prob, f0.copy(), f0.copy())

    idx = np.nonzero(valid)[0]
    for chunk in np.array_split(idx, max(1, len(idx) // 4096)):
        windows = np.stack([clip.samples[s:s + win_len] for s in starts[chunk]])
        acf = _autocorrelate(windows)
        r0 = acf[:, 0]
        for row, frame_i in enumerate(chunk):
            if r0[row] <= _EPS:
                continue
            norm = acf[row, :lag_hi + 2] / r0[row]
            lag, height = _peak_in_band(norm, lag_lo, lag_hi)
            if lag is None:
                continue
            prob[frame_i] = min(1.0, max(0.0, height))
            if height >= params.voicing_threshold:
                candidate = sr / lag
                if params.fmin_hz <= candidate <= params.fmax_hz:
                    f0[frame_i] = candidate
    return FrameSeries(times, loudness, f0, prob, np.full(n, np.nan), np.full(n, np.nan))


def _autocorrelate(windows: np.ndarray) -> np.ndarray:
    """Row-wise autocorrelation via zero-padded FFT (exact, biased)."""
    w = windows.shape[1]
    nfft = 1 << (2 * w - 1).bit_length()
    spectrum = np.fft.rfft(windows, nfft, axis=1)
    acf = np.fft.irfft(spectrum * np.conj(spectrum), nfft, axis=1)
    return acf[:, :w]


def _peak_in_band(norm: np.ndarray, lag_lo: int, lag_hi: int) -> tuple[float | None, float]:
    """Highest local peak of the normalized ACF inside the lag band.

    Returns (interpolated lag, interpolated height); (None, 0.0) when the
    band holds no local maximum.
    """
    band = norm[lag_lo:lag_hi + 1]
    order = np.argsort(band)[::-1]
    for rank in order:
        lag = lag_lo + int(rank)
        if lag <= 0 or lag + 1 >= len(norm):
            continue
        if norm[lag] >= norm[lag - 1] and norm[lag] >= norm[lag + 1]:
            return _parabolic(norm, lag)
    return None, 0.0


def _parabolic(norm: np.ndarray, lag: int) -> tuple[float, float]:
    """Sub-sample peak via a parabola through the peak and neighbors."""
    y0, y1, y2 = norm[lag - 1], norm[lag], norm[lag + 1]
    denom = y0 - 2.0 * y1 + y2
    if denom >= 0.0 or abs(denom) < _EPS:
        return float(lag), float(y1)
    delta = 0.5 * (y0 - y2) / denom
    delta = min(0.5, max(-0.5, delta))
    height = y1 - 0.25 * (y0 - y2) * delta
    return lag + delta, float(height)
