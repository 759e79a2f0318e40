"""Reader/writer contract: searches running concurrently with ingest
never observe a partially updated index."""

import random
import threading

from corpusgen import make_tokens, random_corpus
from timeseek.errors import EmptyQuery
from timeseek.timeindex import TimeIndex


def test_searches_during_ingest_see_consistent_snapshots():
    rng = random.Random(140)
    corpus = random_corpus(rng, 40)
    index = TimeIndex()
    errors: list[BaseException] = []
    stop = threading.Event()

    def writer():
        try:
            for vid, tokens in corpus.items():
                index.add_document(vid, tokens)
        finally:
            stop.set()

    def reader():
        local = random.Random(threading.get_ident())
        try:
            while not stop.is_set():
                query = " ".join(
                    local.choice(["نور", "بسم", "الله", "علم"]) for _ in range(2))
                try:
                    hits = index.search(query, 10)
                except EmptyQuery:
                    continue
                for hit in hits:
                    # every hit must come from a fully indexed document:
                    # its snippet is renderable and its score positive
                    assert hit.score > 0
                    assert index.snippet(hit.video_id, hit.start_s, hit.end_s) != ""
        except BaseException as exc:  # propagate to the main thread
            errors.append(exc)

    readers = [threading.Thread(target=reader) for _ in range(4)]
    for t in readers:
        t.start()
    writer_thread = threading.Thread(target=writer)
    writer_thread.start()
    writer_thread.join()
    for t in readers:
        t.join(timeout=30)
    assert not errors, errors
    assert index.video_count == 40


def test_interleaved_add_remove_keeps_df_consistent():
    index = TimeIndex()
    for round_no in range(5):
        for i in range(10):
            index.add_document(f"v{i}", make_tokens(["نور", "علم"], f"v{i}"))
        hits = index.search("نور", 50)
        assert len(hits) == 10
        for i in range(10):
            index.remove_document(f"v{i}")
        assert index.search("نور", 50) == []
        assert index.video_count == 0
