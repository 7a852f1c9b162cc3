"""Sharded batch scoring with order-independent aggregation.

Records are cut into fixed-size chunks; each chunk is scored into a partial
aggregate (label counts plus per-hashtag label counts) and partials are
combined with :func:`merge`, which is associative and commutative with
:meth:`Partial.empty` as identity.  With ``parallelism > 1`` chunks go to a
process pool; the lexicon is shipped once per worker.
"""
from __future__ import annotations

import itertools
import threading
import time
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping

from .ingest import TweetRecord, synth_corpus
from .lexicon import SentimentLexicon
from .scorer import LABEL_ORDER, NegationMode, ScoredTweet, Scorer, SentimentLabel

DEFAULT_CHUNK_SIZE = 1024

# Table 2: 674,412 tweets in 14.8 s
PAPER_TWEETS = 674_412
PAPER_SECONDS = 14.8
PAPER_REFERENCE_TPS = PAPER_TWEETS / PAPER_SECONDS


@dataclass(frozen=True, slots=True)
class LabelCounts:
    positive: int = 0
    negative: int = 0
    neutral: int = 0

    @property
    def total(self) -> int:
        return self.positive + self.negative + self.neutral

    def __add__(self, other: "LabelCounts") -> "LabelCounts":
        return LabelCounts(
            self.positive + other.positive,
            self.negative + other.negative,
            self.neutral + other.neutral,
        )

    def get(self, label: SentimentLabel) -> int:
        return getattr(self, label.value)

    def to_json(self) -> dict:
        return {"positive": self.positive, "negative": self.negative, "neutral": self.neutral}


@dataclass(frozen=True)
class Partial:
    """Aggregate over some set of records; combine with :func:`merge`."""

    counts: LabelCounts = LabelCounts()
    per_hashtag: Mapping[str, LabelCounts] = field(default_factory=dict)
    tweets_processed: int = 0
    records_skipped: int = 0

    @classmethod
    def empty(cls) -> "Partial":
        return cls()


def merge(a: Partial, b: Partial) -> Partial:
    tags = dict(a.per_hashtag)
    for tag, c in b.per_hashtag.items():
        prev = tags.get(tag)
        tags[tag] = c if prev is None else prev + c
    return Partial(
        a.counts + b.counts,
        dict(sorted(tags.items())),
        a.tweets_processed + b.tweets_processed,
        a.records_skipped + b.records_skipped,
    )


@dataclass(frozen=True)
class BatchResult:
    counts: LabelCounts
    per_hashtag: Mapping[str, LabelCounts]
    tweets_processed: int
    records_skipped: int
    elapsed_ms: float
    throughput_tps: float
    parallelism: int = 1

    def top_hashtags(self, k: int = 10) -> list[tuple[str, LabelCounts]]:
        ranked = sorted(self.per_hashtag.items(), key=lambda kv: (-kv[1].total, kv[0]))
        return ranked[:k]

    def to_json(self, top_k: int | None = None) -> dict:
        tags = self.top_hashtags(top_k) if top_k is not None else sorted(self.per_hashtag.items())
        return {
            "counts": self.counts.to_json(),
            "tweets_processed": self.tweets_processed,
            "records_skipped": self.records_skipped,
            "elapsed_ms": round(self.elapsed_ms, 3),
            "throughput_tps": round(self.throughput_tps, 1),
            "parallelism": self.parallelism,
            "per_hashtag": {t: c.to_json() for t, c in tags},
        }


class PipelineError(RuntimeError):
    pass


class SerializingSink:
    """Wrap a sink so concurrent callers deliver one result at a time."""

    def __init__(self, sink: Callable[[ScoredTweet], object]):
        self._sink = sink
        self._lock = threading.Lock()

    def __call__(self, result: ScoredTweet) -> None:
        with self._lock:
            self._sink(result)


_LABEL_INDEX = {label: i for i, label in enumerate(LABEL_ORDER)}


def _score_chunk(scorer: Scorer, chunk: list[tuple[str, str]], keep: bool):
    counts = [0, 0, 0]
    tags: dict[str, list[int]] = {}
    results = [] if keep else None
    index = _LABEL_INDEX
    if keep:
        for tid, text in chunk:
            st = scorer.score_text(tid, text)
            results.append(st)
            i = index[st.label]
            counts[i] += 1
            for tag in st.hashtags:
                row = tags.get(tag)
                if row is None:
                    row = tags[tag] = [0, 0, 0]
                row[i] += 1
    else:
        classify = scorer.classify_index
        for _, text in chunk:
            i, hashtags = classify(text)
            counts[i] += 1
            for tag in hashtags:
                row = tags.get(tag)
                if row is None:
                    row = tags[tag] = [0, 0, 0]
                row[i] += 1
    partial = Partial(
        LabelCounts(*counts),
        {t: LabelCounts(*row) for t, row in tags.items()},
        len(chunk),
    )
    return partial, results


_worker_scorer: Scorer | None = None


def _init_worker(scorer: Scorer) -> None:
    global _worker_scorer
    _worker_scorer = scorer


def _worker_chunk(chunk, keep):
    return _score_chunk(_worker_scorer, chunk, keep)


def _chunks(tweets: Iterable[TweetRecord], size: int):
    it = iter(tweets)
    while True:
        chunk = [(r.id, r.text) for r in itertools.islice(it, size)]
        if not chunk:
            return
        yield chunk


def run_batch(
    tweets: Iterable[TweetRecord],
    lexicon: SentimentLexicon,
    mode: NegationMode = NegationMode.FINAL_FLIP,
    parallelism: int = 1,
    sink: Callable[[ScoredTweet], object] | None = None,
    *,
    score_hashtag_words: bool = True,
    chunk_size: int = DEFAULT_CHUNK_SIZE,
) -> BatchResult:
    """Score every record once and aggregate.

    Counts and per-hashtag tables do not depend on *parallelism* or
    *chunk_size*.  The sink, if given, sees each :class:`ScoredTweet` exactly
    once; it is always called from this thread, in input order.  If the sink
    raises, outstanding work is cancelled and :class:`PipelineError` is
    raised.  ``records_skipped`` is read from the source's ``skipped``
    attribute when it has one (see :class:`~sentiflux.ingest.TweetReader`).
    """
    if parallelism < 1:
        raise ValueError("parallelism must be >= 1")
    if chunk_size < 1:
        raise ValueError("chunk_size must be >= 1")
    scorer = Scorer(lexicon, mode, score_hashtag_words)
    keep = sink is not None
    total = Partial.empty()

    def deliver(partial, results):
        nonlocal total
        total = merge(total, partial)
        if results is not None:
            for st in results:
                try:
                    sink(st)
                except Exception as exc:
                    raise PipelineError(f"sink rejected result for tweet {st.tweet_id!r}: {exc}") from exc

    start = time.perf_counter()
    if parallelism == 1:
        for chunk in _chunks(tweets, chunk_size):
            deliver(*_score_chunk(scorer, chunk, keep))
    else:
        pool = ProcessPoolExecutor(max_workers=parallelism, initializer=_init_worker, initargs=(scorer,))
        pending: deque = deque()
        try:
            for chunk in _chunks(tweets, chunk_size):
                pending.append(pool.submit(_worker_chunk, chunk, keep))
                if len(pending) >= 2 * parallelism:
                    deliver(*pending.popleft().result())
            while pending:
                deliver(*pending.popleft().result())
        except BaseException:
            pool.shutdown(wait=True, cancel_futures=True)
            raise
        pool.shutdown(wait=True)
    elapsed = time.perf_counter() - start

    skipped = getattr(tweets, "skipped", 0)
    return BatchResult(
        total.counts,
        total.per_hashtag,
        total.tweets_processed,
        skipped,
        elapsed * 1000.0,
        total.tweets_processed / max(elapsed, 1e-9),
        parallelism,
    )


def benchmark(
    n: int,
    seed: int,
    lexicon: SentimentLexicon,
    mode: NegationMode = NegationMode.FINAL_FLIP,
    parallelism: int = 1,
    *,
    score_hashtag_words: bool = True,
    chunk_size: int = DEFAULT_CHUNK_SIZE,
) -> tuple[BatchResult, dict]:
    """Time :func:`run_batch` over a pre-built synthetic corpus of *n* tweets.

    Corpus generation happens before the clock starts, so the timing covers
    scoring and aggregation only.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    corpus = list(synth_corpus(n, seed, lexicon, mode, score_hashtag_words, labeled=False))
    result = run_batch(
        corpus, lexicon, mode, parallelism,
        score_hashtag_words=score_hashtag_words, chunk_size=chunk_size,
    )
    report = {
        "n": n,
        "seed": seed,
        "mode": NegationMode(mode).value,
        "parallelism": parallelism,
        "tweets_processed": result.tweets_processed,
        "elapsed_ms": round(result.elapsed_ms, 3),
        "throughput_tps": round(result.throughput_tps, 1),
        "paper_reference_tps": round(PAPER_REFERENCE_TPS, 1),
        "paper_reference": {"tweets": PAPER_TWEETS, "seconds": PAPER_SECONDS},
        "speedup_vs_paper": round(result.throughput_tps / PAPER_REFERENCE_TPS, 3),
        "counts": result.counts.to_json(),
    }
    return result, report
