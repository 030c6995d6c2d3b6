import numpy as np
import pytest

from teachtrace.core import Interval
from teachtrace.ingest import AudioClip
from teachtrace.speech import (
    FrameSeries,
    WindowParams,
    aggregate_windows,
    compute_window,
    hz_to_semitones,
    tile_windows,
)

SR = 16000


def synthetic_frames(duration, f0=200.0, loud=-20.0):
    """A frame grid with constant pitch and loudness everywhere."""
    hop, frame = 0.010, 0.025
    n = int((duration - frame) / hop) + 1
    times = np.arange(n) * hop + frame / 2
    f0_hz = np.full(n, f0)
    return FrameSeries(
        times=times,
        loudness_db=np.full(n, loud),
        f0_hz=f0_hz,
        voicing_prob=np.full(n, 0.9),
        f1_hz=np.full(n, np.nan),
        f2_hz=np.full(n, np.nan),
    )


def empty_frames():
    z = np.empty(0)
    return FrameSeries(z, z, z, z, z, z)


class TestTiling:
    def test_130s_coarse_tiling(self):
        assert tile_windows(130.0, 60.0) == [(0.0, 60.0), (60.0, 120.0), (120.0, 130.0)]

    def test_130s_fine_count(self):
        tiles = tile_windows(130.0, 10.0)
        assert len(tiles) == 13
        assert tiles[-1] == (120.0, 130.0)

    def test_exact_multiple_has_no_partial(self):
        tiles = tile_windows(120.0, 60.0)
        assert tiles == [(0.0, 60.0), (60.0, 120.0)]

    def test_shorter_than_one_window(self):
        assert tile_windows(7.0, 10.0) == [(0.0, 7.0)]

    def test_zero_duration(self):
        assert tile_windows(0.0, 10.0) == []

    def test_tiles_cover_duration_exactly(self):
        for duration in (1.0, 59.9, 60.0, 61.0, 130.0, 600.0, 12.34):
            tiles = tile_windows(duration, 10.0)
            assert tiles[0][0] == 0.0
            assert tiles[-1][1] == duration
            for (a, b), (c, d) in zip(tiles, tiles[1:]):
                assert b == c


class TestAggregation:
    def test_partial_tail_flagged(self):
        frames = synthetic_frames(130.0)
        windows = aggregate_windows(
            None, frames, [Interval(0.0, 130.0)], np.empty(0), [],
            duration=130.0, level="coarse",
        )
        assert [w.partial for w in windows] == [False, False, True]
        assert windows[-1].end - windows[-1].start == pytest.approx(10.0)

    def test_unknown_level_rejected(self):
        with pytest.raises(ValueError, match="level"):
            aggregate_windows(
                None, empty_frames(), [], np.empty(0), [],
                duration=10.0, level="medium",
            )

    def test_frame_membership_half_open(self):
        # a frame exactly on an interior boundary belongs to the later window
        frames = synthetic_frames(20.0)
        boundary = 10.0
        k = np.argmin(np.abs(frames.times - boundary))
        shifted_times = frames.times.copy()
        shifted_times[k] = boundary
        loud = frames.loudness_db.copy()
        loud[k] = 0.0  # marked frame
        frames = FrameSeries(shifted_times, loud, frames.f0_hz,
                             frames.voicing_prob, frames.f1_hz, frames.f2_hz)
        windows = aggregate_windows(
            None, frames, [Interval(0.0, 20.0)], np.empty(0), [],
            duration=20.0, level="fine",
        )
        assert windows[0].loudness_mean_db < -19.0       # marker excluded
        assert windows[1].loudness_mean_db > windows[0].loudness_mean_db

    def test_final_window_closed_at_session_end(self):
        frames = synthetic_frames(20.0)
        # plant a nucleus exactly at the session end
        windows = aggregate_windows(
            None, frames, [Interval(0.0, 20.0)], np.asarray([20.0]), [],
            duration=20.0, level="fine",
        )
        assert windows[-1].speaking_rate_wpm > 0.0

    def test_silent_window_none_not_zero(self):
        frames = synthetic_frames(20.0)
        windows = aggregate_windows(
            None, frames, [Interval(0.0, 9.0)], np.empty(0), [],
            duration=20.0, level="fine",
        )
        silent = windows[1]
        assert silent.loudness_mean_db is None
        assert silent.mean_utterance_seconds is None
        assert silent.cpp_db is None
        assert silent.utterance_count == 0
        assert silent.speech_fraction == 0.0

    def test_speech_fraction_from_interval_overlap(self):
        frames = synthetic_frames(20.0)
        windows = aggregate_windows(
            None, frames, [Interval(5.0, 12.0)], np.empty(0), [],
            duration=20.0, level="fine",
        )
        assert windows[0].speech_fraction == pytest.approx(0.5)
        assert windows[1].speech_fraction == pytest.approx(0.2)

    def test_utterance_split_across_windows_counts_in_both(self):
        frames = synthetic_frames(20.0)
        windows = aggregate_windows(
            None, frames, [Interval(8.0, 12.0)], np.empty(0), [],
            duration=20.0, level="fine",
        )
        assert windows[0].utterance_count == 1
        assert windows[1].utterance_count == 1


class TestWindowStats:
    def test_pitch_stats_in_semitones(self):
        frames = synthetic_frames(10.0, f0=200.0)
        w = compute_window(
            0.0, 10.0, "fine", partial=False, closed_end=True,
            clip=None, frames=frames, utterances=[Interval(0.0, 10.0)],
            nuclei_times=np.empty(0), markers=[],
        )
        assert w.pitch_mean_semitones == pytest.approx(12.0, abs=1e-9)
        assert w.pitch_std_semitones == pytest.approx(0.0, abs=1e-9)
        assert w.intonation_score == pytest.approx(0.0, abs=1e-9)

    def test_intonation_is_semitone_std_over_reference(self):
        frames = synthetic_frames(10.0)
        # alternate between two pitches one octave apart: std = 6 semitones
        f0 = np.where(np.arange(len(frames.times)) % 2 == 0, 100.0, 200.0)
        frames = FrameSeries(frames.times, frames.loudness_db, f0,
                             frames.voicing_prob, frames.f1_hz, frames.f2_hz)
        w = compute_window(
            0.0, 10.0, "fine", partial=False, closed_end=True,
            clip=None, frames=frames, utterances=[Interval(0.0, 10.0)],
            nuclei_times=np.empty(0), markers=[],
        )
        assert w.pitch_std_semitones == pytest.approx(6.0, abs=1e-6)
        assert w.intonation_score == pytest.approx(3.0, abs=1e-6)

    def test_loudness_only_over_speech_frames(self):
        frames = synthetic_frames(10.0, loud=-20.0)
        quiet = frames.loudness_db.copy()
        quiet[frames.times > 5.0] = -80.0   # silence tail
        frames = FrameSeries(frames.times, quiet, frames.f0_hz,
                             frames.voicing_prob, frames.f1_hz, frames.f2_hz)
        w = compute_window(
            0.0, 10.0, "fine", partial=False, closed_end=True,
            clip=None, frames=frames, utterances=[Interval(0.0, 5.0)],
            nuclei_times=np.empty(0), markers=[],
        )
        assert w.loudness_mean_db == pytest.approx(-20.0, abs=0.5)

    def test_pause_structure(self):
        frames = synthetic_frames(10.0)
        w = compute_window(
            0.0, 10.0, "fine", partial=False, closed_end=True,
            clip=None, frames=frames,
            utterances=[Interval(1.0, 3.0), Interval(5.0, 6.0)],
            nuclei_times=np.empty(0), markers=[],
        )
        # pauses: [0,1], [3,5], [6,10] -> mean 7/3
        assert w.mean_pause_seconds == pytest.approx(7.0 / 3.0)
        assert w.mean_utterance_seconds == pytest.approx(1.5)
        assert w.utterance_count == 2

    def test_wpm_counts_window_nuclei_over_window_span(self):
        frames = synthetic_frames(10.0)
        nuclei = np.asarray([1.0, 2.0, 3.0, 9.5])
        w = compute_window(
            0.0, 5.0, "fine", partial=False, closed_end=False,
            clip=None, frames=frames, utterances=[Interval(0.0, 10.0)],
            nuclei_times=nuclei, markers=[],
        )
        # 3 nuclei in [0,5): 36 syll/min -> 24 wpm
        assert w.speaking_rate_wpm == pytest.approx(24.0)

    def test_to_dict_round_trip_keys(self):
        frames = synthetic_frames(10.0)
        w = compute_window(
            0.0, 10.0, "fine", partial=False, closed_end=True,
            clip=None, frames=frames, utterances=[], nuclei_times=np.empty(0),
            markers=[],
        )
        doc = w.to_dict()
        assert doc["start"] == 0.0 and doc["level"] == "fine"
        assert doc["loudness_mean_db"] is None


class TestSemitones:
    def test_reference_is_zero(self):
        assert hz_to_semitones(np.asarray([100.0]), 100.0)[0] == 0.0

    def test_octave_is_twelve(self):
        assert hz_to_semitones(np.asarray([200.0]), 100.0)[0] == pytest.approx(12.0)


class TestRealSignalWindows:
    def test_cpp_and_jitter_populated_with_clip(self):
        t = np.arange(SR * 60) / SR
        x = 1e-4 * np.random.default_rng(0).standard_normal(len(t))
        x[SR:SR * 4] += 0.3 * np.sin(2 * np.pi * 100.0 * t[SR:SR * 4])
        clip = AudioClip(x, SR)
        from teachtrace.speech import estimate_pitch, find_period_markers, segment_utterances
        utts = segment_utterances(clip)
        frames = estimate_pitch(clip)
        markers = find_period_markers(clip, utts, 100.0)
        windows = aggregate_windows(
            clip, frames, utts, np.empty(0), markers,
            duration=60.0, level="fine", params=WindowParams(),
        )
        w = windows[0]  # the burst lives in [1, 4): first window has speech
        assert w.cpp_db is not None
        # noise can wiggle peak positions a sample or so: sub-0.5% jitter
        assert w.jitter_pct is not None and w.jitter_pct < 0.5
        later = windows[5]
        assert later.cpp_db is None and later.jitter_pct is None
