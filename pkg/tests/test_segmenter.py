import random

import pytest

from corpusgen import make_tokens, random_stream
from timeseek.errors import InvalidDuration, InvalidOverlap, TokenOutOfWindow
from timeseek.segmenter import TimedToken, merge_windows, plan_windows


def window_bounds(plans):
    return [(w.start_s, w.end_s) for w in plans]


class TestPlanWindows:
    def test_basic_stride(self):
        plans = plan_windows(100, 30, 5)
        assert window_bounds(plans) == [(0, 30), (25, 55), (50, 80), (75, 100)]
        assert [w.own_end_s for w in plans] == [27.5, 52.5, 77.5, 100]
        assert [w.own_start_s for w in plans] == [0, 27.5, 52.5, 77.5]

    def test_clamped_single_window(self):
        plans = plan_windows(20, 30, 5)
        assert window_bounds(plans) == [(0, 20)]
        assert (plans[0].own_start_s, plans[0].own_end_s) == (0, 20)

    def test_zero_overlap(self):
        plans = plan_windows(60, 30, 0)
        assert window_bounds(plans) == [(0, 30), (30, 60)]
        assert plans[0].own_end_s == 30

    def test_duration_shorter_than_overlap_still_covered(self):
        plans = plan_windows(3, 30, 5)
        assert window_bounds(plans) == [(0, 3)]

    def test_non_positive_duration(self):
        with pytest.raises(InvalidDuration):
            plan_windows(0, 30, 5)
        with pytest.raises(InvalidDuration):
            plan_windows(-1, 30, 5)

    def test_bad_overlap(self):
        with pytest.raises(InvalidOverlap):
            plan_windows(100, 30, 30)
        with pytest.raises(InvalidOverlap):
            plan_windows(100, 30, 31)
        with pytest.raises(InvalidOverlap):
            plan_windows(100, 30, -1)

    def test_indexes_are_ordinals(self):
        plans = plan_windows(100, 30, 5)
        assert [w.index for w in plans] == [0, 1, 2, 3]

    def test_coverage_and_partition_random(self):
        rng = random.Random(7)
        for _ in range(500):
            duration = rng.uniform(0.5, 5000)
            window = rng.uniform(1.0, 400)
            overlap = rng.uniform(0, window * 0.9)
            plans = plan_windows(duration, window, overlap)
            assert plans[0].start_s == 0
            assert plans[-1].end_s == duration
            for a, b in zip(plans, plans[1:]):
                assert b.start_s <= a.end_s + 1e-9  # no coverage gap
                assert a.own_end_s == b.own_start_s  # exact partition
            assert plans[0].own_start_s == 0
            assert plans[-1].own_end_s == duration
            for w in plans:
                assert w.start_s < w.end_s <= duration
                assert w.own_start_s < w.own_end_s


class TestMergeWindows:
    def test_duplicate_in_overlap_kept_once(self):
        plans = plan_windows(55, 30, 5)
        token = TimedToken("كلمة", "كلمه", 26.0, 27.0)
        merged = merge_windows([(plans[0], [token]), (plans[1], [token])])
        assert len(merged) == 1
        assert merged[0].start_s == 26.0
        assert merged[0].seq == 0

    def test_boundary_midpoint_goes_to_later_window(self):
        plans = plan_windows(55, 30, 5)
        assert plans[0].own_end_s == 27.5
        token = TimedToken("كلمة", "كلمه", 27.0, 28.0)  # midpoint exactly 27.5
        merged = merge_windows([(plans[0], [token]), (plans[1], [token])])
        assert len(merged) == 1

    def test_empty_segments(self):
        assert merge_windows([]) == []

    def test_token_outside_window_rejected(self):
        plans = plan_windows(55, 30, 5)
        stray = TimedToken("كلمة", "كلمه", 40.0, 41.0)
        with pytest.raises(TokenOutOfWindow):
            merge_windows([(plans[0], [stray])])

    def test_seq_renumbered_in_time_order(self):
        plans = plan_windows(60, 30, 0)
        first = make_tokens(["واحد", "اثنان"], start=5.0)
        second = make_tokens(["ثلاثة"], start=40.0)
        merged = merge_windows([(plans[0], first), (plans[1], second)])
        assert [t.seq for t in merged] == [0, 1, 2]
        assert [t.surface for t in merged] == ["واحد", "اثنان", "ثلاثة"]

    def test_hundred_second_stream_round_trip(self):
        # 100 one-second tokens, windowed, each window transcribed exactly:
        # merge must reproduce the stream with no loss and no duplicate.
        stream = make_tokens([f"كلمة{i}" for i in range(100)])
        plans = plan_windows(100, 30, 5)
        segments = [
            (w, [t for t in stream if t.start_s >= w.start_s and t.end_s <= w.end_s])
            for w in plans
        ]
        merged = merge_windows(segments)
        assert [t.surface for t in merged] == [t.surface for t in stream]
        assert [(t.start_s, t.end_s) for t in merged] == \
            [(t.start_s, t.end_s) for t in stream]
        assert [t.seq for t in merged] == list(range(100))

    def test_random_streams_round_trip(self):
        rng = random.Random(99)
        for _ in range(50):
            duration = rng.uniform(20, 400)
            window = rng.uniform(8, 90)
            overlap = rng.uniform(2, min(6.0, window * 0.5))
            stream = random_stream(rng, duration)
            plans = plan_windows(duration, window, overlap)
            segments = [
                (w, [t for t in stream
                     if t.start_s >= w.start_s and t.end_s <= w.end_s])
                for w in plans
            ]
            merged = merge_windows(segments)
            assert [(t.start_s, t.end_s, t.surface) for t in merged] == \
                [(t.start_s, t.end_s, t.surface) for t in stream]

    def test_merge_deterministic(self):
        rng = random.Random(3)
        stream = random_stream(rng, 120)
        plans = plan_windows(120, 30, 5)
        segments = [
            (w, [t for t in stream if t.start_s >= w.start_s and t.end_s <= w.end_s])
            for w in plans
        ]
        assert merge_windows(segments) == merge_windows(segments)
