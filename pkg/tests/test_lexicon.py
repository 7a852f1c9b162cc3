
import pytest
from hypothesis import given, strategies as st

from sentiflux.lexicon import (
    LexiconEntry,
    LexiconRowError,
    PartOfSpeech,
    Polarity,
    Strength,
    load_lexicon,
    lookup,
    parse_lexicon_line,
    read_lexicon,
)

from .conftest import TABLE1_ROWS


@pytest.mark.parametrize(
    "line, expected",
    [
        ("weaksubj\tabandoned\tadj\tn\tnegative",
         LexiconEntry("abandoned", Strength.WEAK, PartOfSpeech.ADJECTIVE, False, Polarity.NEGATIVE)),
        ("strongsubj\t:)\temoti\tn\tpositive",
         LexiconEntry(":)", Strength.STRONG, PartOfSpeech.EMOTICON, False, Polarity.POSITIVE)),
        ("strongsubj\tneeded\tverb\tn\tblindnegation",
         LexiconEntry("needed", Strength.STRONG, PartOfSpeech.VERB, False, Polarity.BLIND_NEGATION)),
        ("weaksubj\tabandon\tverb\ty\tnegative",
         LexiconEntry("abandon", Strength.WEAK, PartOfSpeech.VERB, True, Polarity.NEGATIVE)),
    ],
)
def test_parse_table1_rows(line, expected):
    assert parse_lexicon_line(line, 1) == expected


def test_parse_case_policy():
    assert parse_lexicon_line("strongsubj\tGood\tanypos\tn\tpositive", 1).surface == "good"
    assert parse_lexicon_line("strongsubj\tXD\temoti\tn\tpositive", 1).surface == "XD"


@pytest.mark.parametrize(
    "line, field",
    [
        ("weaksubj\tabandoned\tadj\tnegative", "record"),
        ("weaksubj\tabandoned\tadj\tn\tnegative\textra", "record"),
        ("mediumsubj\tabandoned\tadj\tn\tnegative", "strength"),
        ("weaksubj\tabandoned\tadverb\tn\tnegative", "pos"),
        ("weaksubj\tabandoned\tadj\tmaybe\tnegative", "stemmed"),
        ("weaksubj\tabandoned\tadj\tn\tsarcastic", "polarity"),
        ("weaksubj\t\tadj\tn\tnegative", "word"),
        ("weaksubj\ttwo words\tadj\tn\tnegative", "word"),
    ],
)
def test_parse_errors_name_line_and_field(line, field):
    with pytest.raises(LexiconRowError) as info:
        parse_lexicon_line(line, 17)
    assert info.value.line_number == 17
    assert info.value.field == field
    assert "line 17" in str(info.value)


def test_empty_input():
    lex = load_lexicon([])
    assert lex.entry_count == 0
    assert lex.warning_log == ()


def test_table1_loads_clean():
    lex = load_lexicon(TABLE1_ROWS)
    assert lex.entry_count == 10
    assert lex.warning_log == ()
    assert lex.emoticons == {":)", ":("}


def test_lookup(table1):
    assert lookup(table1, "abandoned") == LexiconEntry(
        "abandoned", Strength.WEAK, PartOfSpeech.ADJECTIVE, False, Polarity.NEGATIVE
    )
    assert lookup(table1, "zzzznotaword") is None
    assert lookup(table1, ":(").polarity is Polarity.NEGATIVE
    assert lookup(table1, ":(").pos is PartOfSpeech.EMOTICON


def test_comments_and_blank_lines_skipped():
    lex = load_lexicon(["# header", "", "   ", "  # indented comment", TABLE1_ROWS[0]])
    assert lex.entry_count == 1
    assert lex.warning_log == ()


def test_duplicate_prefers_strong():
    lex = load_lexicon([
        "weaksubj\tfine\tadj\tn\tpositive",
        "strongsubj\tfine\tadj\tn\tpositive",
    ])
    assert lex.entry_count == 1
    assert lex.lookup("fine").strength is Strength.STRONG
    assert len(lex.warning_log) == 1
    assert "duplicate" in lex.warning_log[0]


def test_duplicate_prefers_structural_then_first():
    lex = load_lexicon([
        "strongsubj\tno\tanypos\tn\tnegative",
        "strongsubj\tno\tadvb\tn\tnegation",
        "strongsubj\tno\tconj\tn\tnegation",
    ])
    entry = lex.lookup("no")
    assert entry.polarity is Polarity.NEGATION
    assert entry.pos is PartOfSpeech.ADVERB
    assert len(lex.warning_log) == 2


def test_duplicate_strength_outranks_structural():
    lex = load_lexicon([
        "weaksubj\tneed\tverb\tn\tblindnegation",
        "strongsubj\tneed\tverb\tn\tnegative",
    ])
    assert lex.lookup("need").polarity is Polarity.NEGATIVE


def test_case_folded_duplicates_collide():
    lex = load_lexicon(["strongsubj\tGood\tadj\tn\tpositive", "weaksubj\tgood\tadj\tn\tpositive"])
    assert lex.entry_count == 1
    assert lex.lookup("good").strength is Strength.STRONG


def test_lenient_load_skips_and_reports_every_bad_line():
    lines = [TABLE1_ROWS[0], "garbage", TABLE1_ROWS[1], "weaksubj\tx\tadj\tq\tnegative", "", TABLE1_ROWS[2]]
    lex = load_lexicon(lines)
    assert lex.entry_count == 3
    assert lex.malformed_lines == (2, 4)
    assert len(lex.warning_log) == 2


def test_strict_load_aborts_on_first_error():
    with pytest.raises(LexiconRowError) as info:
        load_lexicon([TABLE1_ROWS[0], "garbage", "also garbage"], strict=True)
    assert info.value.line_number == 2


def test_unreadable_file(tmp_path):
    with pytest.raises(OSError):
        read_lexicon(tmp_path / "missing.tsv")


def test_immutable(table1):
    with pytest.raises(TypeError):
        table1.entries["new"] = None
    with pytest.raises(AttributeError):
        table1.entries = {}


def test_pickle_roundtrip(table1):
    import pickle

    again = pickle.loads(pickle.dumps(table1))
    assert dict(again.entries) == dict(table1.entries)
    assert again.emoticons == table1.emoticons


def test_serialize_roundtrip_file(tmp_path, demo_lexicon):
    from sentiflux.lexicon import write_lexicon

    path = tmp_path / "lex.tsv"
    write_lexicon(demo_lexicon, path)
    again = read_lexicon(path, strict=True)
    assert dict(again.entries) == dict(demo_lexicon.entries)


def test_load_is_deterministic():
    lines = TABLE1_ROWS + ["weaksubj\tnot\tadvb\tn\tnegation", "bad line"] + TABLE1_ROWS
    a, b = load_lexicon(lines), load_lexicon(lines)
    assert a == b
    assert a.warning_log == b.warning_log


_surface = st.text(
    alphabet=st.characters(blacklist_categories=("Cs", "Zs", "Zl", "Zp", "Cc")), min_size=1, max_size=8
).filter(lambda s: not s.startswith("#") and not any(c.isspace() for c in s))
_row = st.tuples(
    st.sampled_from(list(Strength)),
    _surface,
    st.sampled_from(list(PartOfSpeech)),
    st.booleans(),
    st.sampled_from(list(Polarity)),
)


@given(st.lists(_row, max_size=30))
def test_roundtrip_and_membership(rows):
    lines = [LexiconEntry(s, st_, pos, stem, pol).to_line() for st_, s, pos, stem, pol in rows]
    lex = load_lexicon(lines)
    again = load_lexicon(lex.serialize())
    assert dict(again.entries) == dict(lex.entries)
    assert lex.entry_count <= len(lines)
    expected = {
        s if pos is PartOfSpeech.EMOTICON else s.lower() for _, s, pos, _, _ in rows
    }
    # a word and an emoticon may fold to the same key; membership is what matters
    assert set(lex.entries) == expected
    for key in expected:
        assert lex.lookup(key) is not None
