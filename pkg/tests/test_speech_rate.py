import numpy as np
import pytest

from teachtrace.core import Interval
from teachtrace.ingest import AudioClip
from teachtrace.speech import RateParams, syllable_nuclei, to_words_per_minute

SR = 16000


def syllable_clip(duration=2.0, syllable_hz=4.0, phase_shift=0.125, depth=0.45):
    """Tone whose amplitude pulses like syllables: peaks at known times."""
    t = np.arange(int(duration * SR)) / SR
    envelope = 0.55 + depth * np.cos(2 * np.pi * syllable_hz * (t - phase_shift))
    x = 0.3 * envelope * np.sin(2 * np.pi * 180.0 * t)
    return AudioClip(x, SR)


class TestNuclei:
    def test_counts_amplitude_peaks(self):
        clip = syllable_clip()
        nuclei = syllable_nuclei(clip, [Interval(0.0, 2.0)])
        # envelope peaks at 0.125 + k/4 within (0, 2): eight of them
        assert len(nuclei) == 8

    def test_nucleus_times_near_envelope_peaks(self):
        clip = syllable_clip()
        nuclei = syllable_nuclei(clip, [Interval(0.0, 2.0)])
        expected = 0.125 + np.arange(8) * 0.25
        assert np.max(np.abs(nuclei - expected)) < 0.06

    def test_flat_tone_has_no_nuclei(self):
        t = np.arange(SR * 2) / SR
        clip = AudioClip(0.3 * np.sin(2 * np.pi * 180.0 * t), SR)
        assert len(syllable_nuclei(clip, [Interval(0.0, 2.0)])) == 0

    def test_shallow_modulation_below_prominence(self):
        # ~1 dB swing cannot clear the 2 dB prominence rule
        clip = syllable_clip(depth=0.06)
        assert len(syllable_nuclei(clip, [Interval(0.0, 2.0)])) == 0

    def test_only_inside_utterances(self):
        clip = syllable_clip(duration=4.0)
        nuclei = syllable_nuclei(clip, [Interval(0.0, 1.0)])
        assert np.all(nuclei <= 1.0)
        assert len(nuclei) == 4

    def test_no_utterances_no_nuclei(self):
        clip = syllable_clip()
        assert len(syllable_nuclei(clip, [])) == 0

    def test_sorted_across_utterances(self):
        clip = syllable_clip(duration=4.0)
        nuclei = syllable_nuclei(clip, [Interval(2.0, 4.0), Interval(0.0, 1.0)])
        assert np.all(np.diff(nuclei) > 0)


class TestWordsPerMinute:
    def test_straight_conversion(self):
        # 8 nuclei in 2 s: 240 syllables/min over 1.5 syllables/word
        assert to_words_per_minute(8, 2.0) == pytest.approx(160.0)

    def test_zero_span_is_zero(self):
        assert to_words_per_minute(10, 0.0) == 0.0

    def test_custom_syllable_ratio(self):
        params = RateParams(syllables_per_word=2.0)
        assert to_words_per_minute(8, 2.0, params) == pytest.approx(120.0)

    def test_session_denominator_halves_rate(self):
        # same nucleus count, double the span: half the rate
        assert to_words_per_minute(8, 4.0) == pytest.approx(80.0)
