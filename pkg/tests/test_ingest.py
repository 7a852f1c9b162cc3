import io
import json
import tracemalloc
from collections import Counter

import pytest

from sentiflux.ingest import TweetRecord, read_tweets, synth_corpus, write_jsonl, write_tsv
from sentiflux.oracle import senti_score
from sentiflux.scorer import NegationMode, Scorer, SentimentLabel
from sentiflux.tokenizer import tokenize


def records(text, fmt):
    reader = read_tweets(io.StringIO(text), fmt)
    return list(reader), reader


def test_jsonl_mapping():
    recs, reader = records('{"id":"42","text":"abandoned :("}\n', "jsonl")
    assert recs == [TweetRecord("42", "abandoned :(")]
    assert reader.skipped == 0


def test_jsonl_optional_fields():
    line = json.dumps({"text": "hi", "label": "positive", "timestamp_ms": 1400000000000})
    (rec,), _ = records(line + "\n", "jsonl")
    assert rec == TweetRecord("line-1", "hi", SentimentLabel.POSITIVE, 1400000000000)


def test_text_ids_from_line_numbers():
    recs, _ = records("first\nsecond\nthe acting needed to be better\n", "text")
    assert recs[2] == TweetRecord("line-3", "the acting needed to be better")


def test_text_blank_lines_are_empty_tweets():
    recs, _ = records("a\n\nb\n", "text")
    assert [r.text for r in recs] == ["a", "", "b"]


def test_labeled_tsv():
    (rec,), _ = records("negative\tthe movie was not good\n", "labeled-tsv")
    assert rec.gold_label is SentimentLabel.NEGATIVE
    assert rec.text == "the movie was not good"


def test_tsv_text_may_contain_tabs():
    (rec,), _ = records("neutral\ta\tb\n", "labeled-tsv")
    assert rec.text == "a\tb"


def test_crlf():
    recs, _ = records("one\r\ntwo\r\n", "text")
    assert [r.text for r in recs] == ["one", "two"]


@pytest.mark.parametrize(
    "fmt, body, good",
    [
        ("jsonl", '{"text":"ok"}\nnot json\n[1,2]\n{"id":5,"text":"x"}\n{"text":"x","label":"meh"}\n{"id":"a","text":"y"}\n', 2),
        ("jsonl", '{"no_text":1}\n{"text":"x","timestamp_ms":"soon"}\n', 0),
        ("labeled-tsv", "positive\tgood\nno tab here\nhappy\tgood\n", 1),
    ],
)
def test_malformed_records_are_counted(fmt, body, good):
    recs, reader = records(body, fmt)
    assert len(recs) == good
    lines = [l for l in body.splitlines() if l.strip()]
    assert reader.skipped + reader.yielded == len(lines)
    assert len(reader.problems) == reader.skipped


def test_order_preserved():
    body = "".join(json.dumps({"id": str(i), "text": f"t{i}"}) + "\n" for i in range(500))
    recs, _ = records(body, "jsonl")
    assert [r.id for r in recs] == [str(i) for i in range(500)]


def test_unknown_format():
    with pytest.raises(ValueError):
        read_tweets(io.StringIO(""), "xml")


def test_unreadable_path(tmp_path):
    with pytest.raises(OSError):
        read_tweets(tmp_path / "nope.jsonl", "jsonl")


def test_single_pass(tmp_path):
    p = tmp_path / "t.txt"
    p.write_text("a\nb\n")
    reader = read_tweets(p, "text")
    assert len(list(reader)) == 2
    with pytest.raises(RuntimeError):
        list(reader)


def _peak_while_reading(path):
    tracemalloc.start()
    n = 0
    for _ in read_tweets(path, "jsonl"):
        n += 1
    _, peak = tracemalloc.get_traced_memory()
    tracemalloc.stop()
    return n, peak


def test_streaming_memory_is_flat(tmp_path, demo_lexicon):
    small, large = tmp_path / "small.jsonl", tmp_path / "large.jsonl"
    with open(small, "w") as fh:
        write_jsonl(synth_corpus(2_000, 1, demo_lexicon, labeled=False), fh)
    with open(large, "w") as fh:
        write_jsonl(synth_corpus(40_000, 1, demo_lexicon, labeled=False), fh)
    n_small, peak_small = _peak_while_reading(small)
    n_large, peak_large = _peak_while_reading(large)
    assert (n_small, n_large) == (2_000, 40_000)
    # 20x the records, essentially the same peak
    assert peak_large < peak_small * 1.5 + 64 * 1024


def test_synth_empty(demo_lexicon):
    assert list(synth_corpus(0, 5, demo_lexicon)) == []


def test_synth_deterministic(demo_lexicon):
    a = list(synth_corpus(1000, 7, demo_lexicon))
    b = list(synth_corpus(1000, 7, demo_lexicon))
    assert a == b
    assert a != list(synth_corpus(1000, 8, demo_lexicon))


def test_synth_byte_identical(demo_lexicon):
    def dump():
        buf = io.StringIO()
        write_tsv(synth_corpus(300, 11, demo_lexicon, NegationMode.LITERAL), buf)
        return buf.getvalue().encode()

    assert dump() == dump()


def test_synth_shape(demo_lexicon):
    recs = list(synth_corpus(500, 3, demo_lexicon))
    ids = [r.id for r in recs]
    assert len(set(ids)) == len(ids)
    for r in recs:
        assert "\n" not in r.text
        n_tokens = len(r.text.split())
        assert 5 <= n_tokens <= 21  # one optional blind-negation insertion
    text = " ".join(r.text for r in recs)
    assert "#" in text and "@" in text and "https://" in text and ":)" in text


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_synth_label_mix(demo_lexicon, seed):
    counts = Counter(r.gold_label for r in synth_corpus(100, seed, demo_lexicon))
    assert set(counts) == set(SentimentLabel)


def test_synth_small_lexicon(table1):
    counts = Counter(r.gold_label for r in synth_corpus(300, 1, table1, NegationMode.LITERAL))
    assert set(counts) == set(SentimentLabel)


def test_synth_requires_lexicon():
    from sentiflux.lexicon import load_lexicon

    with pytest.raises(ValueError):
        list(synth_corpus(3, 1, load_lexicon([])))


@pytest.mark.parametrize("mode", list(NegationMode))
def test_synth_gold_is_the_oracle(demo_lexicon, mode):
    literal = mode is NegationMode.LITERAL
    for rec in synth_corpus(300, 9, demo_lexicon, mode):
        label, _ = senti_score(tokenize(rec.text, demo_lexicon.emoticons), demo_lexicon, literal)
        assert rec.gold_label.value == label


def test_synth_production_agrees(demo_lexicon):
    scorer = Scorer(demo_lexicon, NegationMode.FINAL_FLIP)
    recs = list(synth_corpus(1000, 7, demo_lexicon, NegationMode.FINAL_FLIP))
    agree = sum(scorer.score_text(r.id, r.text).label is r.gold_label for r in recs)
    assert agree == 1000


def test_tsv_roundtrip(demo_lexicon, tmp_path):
    recs = list(synth_corpus(200, 4, demo_lexicon))
    p = tmp_path / "gold.tsv"
    with open(p, "w") as fh:
        write_tsv(recs, fh)
    back = list(read_tweets(p, "labeled-tsv"))
    assert [(r.text, r.gold_label) for r in back] == [(r.text, r.gold_label) for r in recs]
