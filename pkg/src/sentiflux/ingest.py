"""Tweet sources: line-oriented file readers and a seeded synthetic corpus."""
from __future__ import annotations

import io
import json
import logging
import random
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Iterator

from .lexicon import PartOfSpeech, Polarity, SentimentLexicon
from .oracle import senti_score
from .scorer import NegationMode, SentimentLabel
from .tokenizer import tokenize

log = logging.getLogger(__name__)

FORMATS = ("jsonl", "text", "labeled-tsv")


@dataclass(frozen=True, slots=True)
class TweetRecord:
    id: str
    text: str
    gold_label: SentimentLabel | None = None
    timestamp: int | None = None


class MalformedRecord(ValueError):
    pass


def _label(value, lineno: int) -> SentimentLabel:
    try:
        return SentimentLabel(value)
    except ValueError:
        raise MalformedRecord(f"line {lineno}: unknown label {value!r}") from None


def _parse_jsonl(line: str, lineno: int) -> TweetRecord | None:
    if not line.strip():
        return None
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise MalformedRecord(f"line {lineno}: invalid JSON ({exc.msg})") from None
    if not isinstance(obj, dict):
        raise MalformedRecord(f"line {lineno}: expected a JSON object")
    text = obj.get("text")
    if not isinstance(text, str):
        raise MalformedRecord(f"line {lineno}: missing string field 'text'")
    tid = obj.get("id")
    if tid is None:
        tid = f"line-{lineno}"
    elif not isinstance(tid, str) or not tid:
        raise MalformedRecord(f"line {lineno}: 'id' must be a non-empty string")
    gold = obj.get("label")
    if gold is not None:
        gold = _label(gold, lineno)
    ts = obj.get("timestamp_ms")
    if ts is not None and (not isinstance(ts, int) or isinstance(ts, bool)):
        raise MalformedRecord(f"line {lineno}: 'timestamp_ms' must be an integer")
    return TweetRecord(tid, text, gold, ts)


def _parse_text(line: str, lineno: int) -> TweetRecord:
    return TweetRecord(f"line-{lineno}", line)


def _parse_tsv(line: str, lineno: int) -> TweetRecord | None:
    if not line.strip():
        return None
    label, sep, text = line.partition("\t")
    if not sep:
        raise MalformedRecord(f"line {lineno}: expected 'label<TAB>text'")
    return TweetRecord(f"line-{lineno}", text, _label(label.strip(), lineno))


_PARSERS = {"jsonl": _parse_jsonl, "text": _parse_text, "labeled-tsv": _parse_tsv}


class TweetReader:
    """Single-pass stream of :class:`TweetRecord` from a file or stdin.

    Malformed records are skipped and counted in :attr:`skipped`; the
    messages are kept (up to a cap) in :attr:`problems`.
    """

    max_problems = 100

    def __init__(self, source: str | Path | IO[str], fmt: str = "jsonl"):
        if fmt not in _PARSERS:
            raise ValueError(f"unknown format {fmt!r}; expected one of {', '.join(FORMATS)}")
        self.format = fmt
        self.source = source
        self.skipped = 0
        self.yielded = 0
        self.problems: list[str] = []
        if isinstance(source, (str, Path)) and str(source) != "-":
            # open eagerly so an unreadable path fails at construction
            self._fh = io.open(source, encoding="utf-8", newline="")
            self._owned = True
        elif isinstance(source, (str, Path)):
            self._fh = sys.stdin
            self._owned = False
        else:
            self._fh = source
            self._owned = False
        self._consumed = False

    @property
    def name(self) -> str:
        return "<stdin>" if self._fh is sys.stdin else str(getattr(self._fh, "name", self.source))

    def __iter__(self) -> Iterator[TweetRecord]:
        if self._consumed:
            raise RuntimeError("tweet stream already consumed")
        self._consumed = True
        parse = _PARSERS[self.format]
        try:
            for lineno, line in enumerate(self._fh, start=1):
                line = line.rstrip("\r\n")
                try:
                    rec = parse(line, lineno)
                except MalformedRecord as exc:
                    self.skipped += 1
                    if len(self.problems) < self.max_problems:
                        self.problems.append(f"{self.name}: {exc}")
                    log.debug("skipping %s: %s", self.name, exc)
                    continue
                if rec is None:
                    continue
                self.yielded += 1
                yield rec
        finally:
            if self._owned:
                self._fh.close()


def read_tweets(source: str | Path | IO[str], fmt: str = "jsonl") -> TweetReader:
    return TweetReader(source, fmt)


# out-of-vocabulary filler; anything that happens to be in the lexicon is dropped
_FILLER = (
    "the movie was a it this that film plot and of to in is for on with at by "
    "from scene story cast director really just so very actor actress script "
    "screen ending sequel trailer tonight watched saw popcorn cinema theatre "
    "i we they you he she my our their 2 3 10 today yesterday week weekend "
    "music soundtrack effects camera dialogue character characters role roles "
    "don't can't it's that's"
).split()
_TOPICS = (
    "gravity", "oscars", "interstellar", "boxoffice", "netflix", "cinema",
    "moviepremiere", "filmfest", "sequel", "imax", "directorscut", "redcarpet",
)
_HANDLES = ("bob", "alice", "movie_fan", "critic42", "studio")


def synth_corpus(
    n: int,
    seed: int,
    lexicon: SentimentLexicon,
    mode: NegationMode = NegationMode.FINAL_FLIP,
    score_hashtag_words: bool = True,
    labeled: bool = True,
) -> Iterator[TweetRecord]:
    """Yield *n* seeded synthetic tweets of 5-20 tokens.

    Gold labels come from :mod:`sentiflux.oracle`, not from the production
    scorer.  ``labeled=False`` skips labeling (benchmark input).
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return
    if not len(lexicon):
        raise ValueError("synthetic corpus needs a non-empty lexicon")
    mode = NegationMode(mode)
    rng = random.Random(seed)
    words, emoticons, negations, blinds = [], [], [], []
    for e in sorted(lexicon, key=lambda e: e.surface):
        if e.polarity is Polarity.NEGATION:
            negations.append(e.surface)
        elif e.polarity is Polarity.BLIND_NEGATION:
            blinds.append(e.surface)
        elif e.pos is PartOfSpeech.EMOTICON:
            emoticons.append(e.surface)
        else:
            words.append(e.surface)
    filler = [w for w in _FILLER if w not in lexicon]
    topics = [t for t in _TOPICS if t not in lexicon] or list(_TOPICS)

    kinds, weights = [], []
    for kind, w, pool in (
        ("filler", 45, filler),
        ("word", 28, words),
        ("emoticon", 7, emoticons),
        ("negation", 8, negations),
        ("hashtag", 7, topics),
        ("mention", 2, _HANDLES),
        ("url", 2, _HANDLES),
    ):
        if pool:
            kinds.append((kind, pool))
            weights.append(w)
    emoticon_set = lexicon.emoticons
    literal = mode is NegationMode.LITERAL

    for i in range(n):
        length = rng.randint(5, 20)
        parts = []
        for kind, pool in rng.choices(kinds, weights, k=length):
            item = rng.choice(pool)
            if kind == "word" or kind == "filler" or kind == "negation":
                r = rng.random()
                if r < 0.1:
                    item = item.capitalize()
                elif r < 0.13:
                    item = item.upper()
                parts.append(item)
            elif kind == "hashtag":
                # sometimes tag a sentiment word, which is scored as a word
                if words and rng.random() < 0.25:
                    item = rng.choice(words)
                parts.append("#" + (item.capitalize() if rng.random() < 0.3 else item))
            elif kind == "mention":
                parts.append("@" + item)
            elif kind == "url":
                parts.append(f"https://t.co/{item}{rng.randrange(1000)}")
            else:
                parts.append(item)
        if blinds and rng.random() < 0.1:
            parts.insert(rng.randrange(len(parts) + 1), rng.choice(blinds))
        text = " ".join(parts)
        gold = None
        if labeled:
            sentiment, _ = senti_score(tokenize(text, emoticon_set), lexicon, literal, score_hashtag_words)
            gold = SentimentLabel(sentiment)
        yield TweetRecord(f"synth-{seed}-{i}", text, gold)


def write_tsv(records, fh: IO[str]) -> int:
    """Write gold-labeled records as ``label<TAB>text`` lines."""
    count = 0
    for rec in records:
        if rec.gold_label is None:
            raise ValueError(f"record {rec.id} has no gold label")
        if "\n" in rec.text or "\r" in rec.text:
            raise ValueError(f"record {rec.id} text spans lines")
        fh.write(f"{rec.gold_label.value}\t{rec.text}\n")
        count += 1
    return count


def write_jsonl(records, fh: IO[str]) -> int:
    count = 0
    for rec in records:
        obj = {"id": rec.id, "text": rec.text}
        if rec.gold_label is not None:
            obj["label"] = rec.gold_label.value
        if rec.timestamp is not None:
            obj["timestamp_ms"] = rec.timestamp
        fh.write(json.dumps(obj, ensure_ascii=False) + "\n")
        count += 1
    return count
