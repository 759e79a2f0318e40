import math
import random

import pytest

from corpusgen import make_tokens, random_corpus, random_query
from timeseek.engagement import EngagementStore
from timeseek.errors import (
    EmptyBody,
    EmptyQuery,
    InvalidVote,
    TimestampOutOfRange,
    UnknownVideo,
)
from timeseek.timeindex import RankingParams, TimeIndex

PARAMS = RankingParams()

DURATIONS = {"v1": 120.0, "v2": 300.0}


@pytest.fixture
def store(tmp_path):
    return EngagementStore(
        duration_of=DURATIONS.get,
        feedback_log=tmp_path / "feedback.log",
        comments_log=tmp_path / "comments.log",
    )


class TestFeedback:
    def test_bucket_floor(self, store):
        store.record_feedback("بسم الله", "v1", 12.3, +1, "c1")
        (record,) = store.feedback_records()
        assert record.bucket == 2
        assert record.vote == 1
        assert record.query_norm == "بسم الله"

    def test_revote_overwrites(self, store):
        store.record_feedback("بسم", "v1", 12.3, +1, "c1")
        store.record_feedback("بسم", "v1", 13.9, -1, "c1")  # same bucket 2
        records = store.feedback_records()
        assert len(records) == 1
        assert records[0].vote == -1

    def test_different_clients_accumulate(self, store):
        store.record_feedback("بسم", "v1", 12.3, +1, "c1")
        store.record_feedback("بسم", "v1", 12.3, +1, "c2")
        assert len(store.feedback_records()) == 2

    def test_timestamp_beyond_duration(self, store):
        with pytest.raises(TimestampOutOfRange):
            store.record_feedback("بسم", "v1", 500.0, +1, "c1")
        with pytest.raises(TimestampOutOfRange):
            store.record_feedback("بسم", "v1", -1.0, +1, "c1")

    def test_unknown_video(self, store):
        with pytest.raises(UnknownVideo):
            store.record_feedback("بسم", "nope", 1.0, +1, "c1")

    def test_invalid_vote(self, store):
        with pytest.raises(InvalidVote):
            store.record_feedback("بسم", "v1", 1.0, 2, "c1")

    def test_empty_query_rejected(self, store):
        with pytest.raises(EmptyQuery):
            store.record_feedback("!!!", "v1", 1.0, +1, "c1")


class TestBoost:
    def test_no_feedback_is_exactly_one(self, store):
        assert store.boost_for("بسم", "v1", 10.0, PARAMS) == 1.0

    def test_single_vote_formula(self, store):
        store.record_feedback("بسم", "v1", 12.3, +1, "c1")
        boost = store.boost_for("بسم", "v1", 12.3, PARAMS)
        assert boost == pytest.approx(1 + 0.5 * math.log(2), abs=1e-12)

    def test_negative_net_clamped(self, store):
        store.record_feedback("بسم", "v1", 12.3, -1, "c1")
        store.record_feedback("بسم", "v1", 12.3, -1, "c2")
        assert store.boost_for("بسم", "v1", 12.3, PARAMS) == 1.0

    def test_adjacent_bucket_counts(self, store):
        store.record_feedback("بسم", "v1", 12.3, +1, "c1")  # bucket 2
        assert store.boost_for("بسم", "v1", 7.0, PARAMS) > 1.0   # bucket 1
        assert store.boost_for("بسم", "v1", 17.0, PARAMS) > 1.0  # bucket 3
        assert store.boost_for("بسم", "v1", 22.0, PARAMS) == 1.0  # bucket 4

    def test_other_query_isolated(self, store):
        store.record_feedback("بسم", "v1", 12.3, +1, "c1")
        assert store.boost_for("نور", "v1", 12.3, PARAMS) == 1.0

    def test_other_video_isolated(self, store):
        store.record_feedback("بسم", "v1", 12.3, +1, "c1")
        assert store.boost_for("بسم", "v2", 12.3, PARAMS) == 1.0

    def test_monotone_in_votes(self, store):
        previous = store.boost_for("بسم", "v1", 12.0, PARAMS)
        for i in range(6):
            store.record_feedback("بسم", "v1", 12.0, +1, f"client{i}")
            current = store.boost_for("بسم", "v1", 12.0, PARAMS)
            assert current > previous
            previous = current

    def test_vocalized_query_maps_to_same_key(self, store):
        store.record_feedback("الرَّحمن", "v1", 10.0, +1, "c1")
        assert store.boost_for("الرحمن", "v1", 10.0, PARAMS) > 1.0


class TestComments:
    def test_floor_anchor(self, store):
        store.add_comment("v1", 61.9, "هذه اللحظة")
        (c,) = store.comments_in_range("v1", 61, 61)
        assert c.second == 61

    def test_empty_body(self, store):
        with pytest.raises(EmptyBody):
            store.add_comment("v1", 10.0, "   ")

    def test_link_stored_verbatim(self, store):
        store.add_comment("v1", 10.0, "انظر أيضا", link="video://v2?t=30")
        (c,) = store.comments_in_range("v1", 10, 10)
        assert c.link == "video://v2?t=30"

    def test_inclusive_range(self, store):
        for t in (10.0, 15.0, 25.0):
            store.add_comment("v1", t, f"عند {t}")
        rows = store.comments_in_range("v1", 10, 20)
        assert [c.second for c in rows] == [10, 15]

    def test_empty_store(self, store):
        assert store.comments_in_range("v1", 0, 100) == []

    def test_same_second_ordered_by_created_at(self, store):
        store.add_comment("v1", 30.2, "الأول")
        store.add_comment("v1", 30.7, "الثاني")
        rows = store.comments_in_range("v1", 30, 30)
        assert [c.body for c in rows] == ["الأول", "الثاني"]

    def test_unknown_video(self, store):
        with pytest.raises(UnknownVideo):
            store.add_comment("nope", 1.0, "مرحبا")
        with pytest.raises(UnknownVideo):
            store.comments_in_range("nope", 0, 10)

    def test_negative_timestamp(self, store):
        with pytest.raises(TimestampOutOfRange):
            store.add_comment("v1", -0.5, "قبل البداية")


class TestPersistence:
    def test_replay_from_logs(self, tmp_path):
        store = EngagementStore(
            duration_of=DURATIONS.get,
            feedback_log=tmp_path / "f.log",
            comments_log=tmp_path / "c.log",
        )
        store.record_feedback("بسم", "v1", 12.3, +1, "c1")
        store.record_feedback("بسم", "v1", 12.3, -1, "c1")  # overwrite
        store.add_comment("v1", 61.9, "لحظة")

        reloaded = EngagementStore(
            duration_of=DURATIONS.get,
            feedback_log=tmp_path / "f.log",
            comments_log=tmp_path / "c.log",
        )
        records = reloaded.feedback_records()
        assert len(records) == 1 and records[0].vote == -1
        assert reloaded.comment_count("v1") == 1
        assert reloaded.boost_for("بسم", "v1", 12.3, PARAMS) == 1.0  # net -1 -> clamp

    def test_compaction_drops_overwritten(self, tmp_path):
        log = tmp_path / "f.log"
        store = EngagementStore(duration_of=DURATIONS.get, feedback_log=log)
        store.record_feedback("بسم", "v1", 12.3, +1, "c1")
        store.record_feedback("بسم", "v1", 12.3, -1, "c1")
        assert len(log.read_text().splitlines()) == 2
        store.compact()
        assert len(log.read_text().splitlines()) == 1
        reloaded = EngagementStore(duration_of=DURATIONS.get, feedback_log=log)
        assert reloaded.feedback_records()[0].vote == -1

    def test_in_memory_store_works_without_logs(self):
        store = EngagementStore(duration_of=DURATIONS.get)
        store.record_feedback("بسم", "v1", 1.0, +1, "c1")
        assert store.boost_for("بسم", "v1", 1.0, PARAMS) > 1.0
        store.compact()  # no-op


class TestSearchLevelRankMonotonicity:
    def build_tied_pair(self):
        """Two videos with identical one-token content: an exact score tie."""
        index = TimeIndex()
        index.add_document("va", make_tokens(["نور"], "va", start=10.0))
        index.add_document("vb", make_tokens(["نور"], "vb", start=10.0))
        store = EngagementStore(duration_of=lambda v: 60.0)
        return index, store

    def test_vote_breaks_exact_tie(self):
        index, store = self.build_tied_pair()
        before = index.search("نور", 10, boost_source=store.boost_for)
        assert [h.video_id for h in before] == ["va", "vb"]  # tie-break order
        assert before[0].score == before[1].score
        # vote for the currently-second hit at its own start second
        store.record_feedback("نور", "vb", before[1].start_s, +1, "client")
        after = index.search("نور", 10, boost_source=store.boost_for)
        assert after[0].video_id == "vb"

    def test_votes_never_worsen_rank(self):
        rng = random.Random(515)
        trials = 0
        while trials < 30:
            corpus = random_corpus(rng, rng.randint(3, 10))
            index = TimeIndex()
            for vid, tokens in corpus.items():
                index.add_document(vid, tokens)
            durations = {vid: max(t.end_s for t in toks) + 5
                         for vid, toks in corpus.items()}
            store = EngagementStore(duration_of=durations.get)
            query = random_query(rng)
            try:
                hits = index.search(query, 50, boost_source=store.boost_for)
            except EmptyQuery:
                continue
            if not hits:
                continue
            trials += 1
            target = rng.choice(hits)
            key = (target.video_id, target.start_s, target.end_s)

            def position():
                ranked = index.search(query, 50, boost_source=store.boost_for)
                return next(i for i, h in enumerate(ranked)
                            if (h.video_id, h.start_s, h.end_s) == key)

            prev_pos = position()
            for voter in range(3):
                store.record_feedback(query, target.video_id, target.start_s,
                                      +1, f"c{voter}")
                new_pos = position()
                assert new_pos <= prev_pos
                prev_pos = new_pos


def test_comment_anchor_floor_property():
    store = EngagementStore(duration_of=DURATIONS.get)
    rng = random.Random(808)
    for _ in range(50):
        t = rng.uniform(0, 119)
        store = EngagementStore(duration_of=DURATIONS.get)
        store.add_comment("v1", t, f"عند {t}")
        rows = store.comments_in_range("v1", math.floor(t), math.floor(t))
        assert len(rows) == 1
        assert rows[0].second == math.floor(t)
