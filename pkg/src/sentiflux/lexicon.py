"""Sentiment dictionary loading and lookup.

The on-disk format is one tab-separated record per line with the columns
``strength  word  pos  stemmed  polarity``.  Blank lines and lines whose first
non-space character is ``#`` are ignored.  Words are lowercased at load time;
emoticons are kept verbatim.
"""
from __future__ import annotations

import enum
import io
import logging
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping

log = logging.getLogger(__name__)


class Polarity(enum.Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    NEUTRAL = "neutral"
    NEGATION = "negation"
    BLIND_NEGATION = "blindnegation"


class Strength(enum.Enum):
    WEAK = "weaksubj"
    STRONG = "strongsubj"


class PartOfSpeech(enum.Enum):
    ADJECTIVE = "adj"
    NOUN = "noun"
    VERB = "verb"
    ADVERB = "advb"
    CONJUNCTION = "conj"
    EMOTICON = "emoti"
    ANY = "anypos"


_STEMMED = {"y": True, "n": False}
_STRUCTURAL = (Polarity.NEGATION, Polarity.BLIND_NEGATION)


class LexiconRowError(ValueError):
    """A single malformed lexicon record."""

    def __init__(self, line_number: int, fieldname: str, message: str):
        self.line_number = line_number
        self.field = fieldname
        super().__init__(f"line {line_number}: {fieldname}: {message}")


@dataclass(frozen=True, slots=True)
class LexiconEntry:
    surface: str
    strength: Strength
    pos: PartOfSpeech
    stemmed: bool
    polarity: Polarity

    def to_line(self) -> str:
        return "\t".join(
            (
                self.strength.value,
                self.surface,
                self.pos.value,
                "y" if self.stemmed else "n",
                self.polarity.value,
            )
        )


def _enum_field(cls, token: str, line_number: int, fieldname: str):
    try:
        return cls(token)
    except ValueError:
        raise LexiconRowError(line_number, fieldname, f"unknown value {token!r}") from None


def parse_lexicon_line(line: str, line_number: int) -> LexiconEntry:
    """Parse one record; raises :class:`LexiconRowError` on malformed input."""
    fields = line.rstrip("\r\n").split("\t")
    if len(fields) != 5:
        raise LexiconRowError(line_number, "record", f"expected 5 tab-separated fields, got {len(fields)}")
    strength_tok, surface, pos_tok, stemmed_tok, polarity_tok = (f.strip() for f in fields)

    strength = _enum_field(Strength, strength_tok, line_number, "strength")
    pos = _enum_field(PartOfSpeech, pos_tok, line_number, "pos")
    polarity = _enum_field(Polarity, polarity_tok, line_number, "polarity")
    if stemmed_tok not in _STEMMED:
        raise LexiconRowError(line_number, "stemmed", f"unknown value {stemmed_tok!r}")
    if not surface:
        raise LexiconRowError(line_number, "word", "empty surface")
    if any(ch.isspace() for ch in surface):
        raise LexiconRowError(line_number, "word", f"surface contains whitespace: {surface!r}")
    if pos is not PartOfSpeech.EMOTICON:
        surface = surface.lower()
    return LexiconEntry(surface, strength, pos, _STEMMED[stemmed_tok], polarity)


def _preferred(old: LexiconEntry, new: LexiconEntry) -> LexiconEntry:
    # strong beats weak, then structural polarity beats sentiment, then first wins
    if (new.strength is Strength.STRONG) != (old.strength is Strength.STRONG):
        return new if new.strength is Strength.STRONG else old
    if (new.polarity in _STRUCTURAL) != (old.polarity in _STRUCTURAL):
        return new if new.polarity in _STRUCTURAL else old
    return old


@dataclass(frozen=True)
class SentimentLexicon:
    """Immutable surface-form index over lexicon entries."""

    entries: Mapping[str, LexiconEntry]
    warning_log: tuple[str, ...] = ()
    malformed_lines: tuple[int, ...] = ()
    _emoticons: frozenset[str] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.entries, MappingProxyType):
            object.__setattr__(self, "entries", MappingProxyType(dict(self.entries)))
        emos = frozenset(s for s, e in self.entries.items() if e.pos is PartOfSpeech.EMOTICON)
        object.__setattr__(self, "_emoticons", emos)

    @property
    def entry_count(self) -> int:
        return len(self.entries)

    @property
    def emoticons(self) -> frozenset[str]:
        return self._emoticons

    def lookup(self, surface: str) -> LexiconEntry | None:
        return self.entries.get(surface)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[LexiconEntry]:
        return iter(self.entries.values())

    def __contains__(self, surface: object) -> bool:
        return surface in self.entries

    def polarity_counts(self) -> dict[str, int]:
        return dict(Counter(e.polarity.value for e in self))

    def pos_counts(self) -> dict[str, int]:
        return dict(Counter(e.pos.value for e in self))

    def serialize(self) -> list[str]:
        return [e.to_line() for e in self]

    # pickling support for worker processes; MappingProxyType is not picklable
    def __reduce__(self):
        return (_rebuild, (dict(self.entries), self.warning_log, self.malformed_lines))


def _rebuild(entries, warnings, malformed):
    return SentimentLexicon(entries, warnings, malformed)


def lookup(lexicon: SentimentLexicon, surface: str) -> LexiconEntry | None:
    return lexicon.lookup(surface)


def _is_skipped(line: str) -> bool:
    stripped = line.strip()
    return not stripped or stripped.startswith("#")


def load_lexicon(lines: Iterable[str], strict: bool = False) -> SentimentLexicon:
    """Build a lexicon from raw record lines.

    Malformed rows are skipped with a warning unless *strict* is set, in which
    case the first :class:`LexiconRowError` propagates.  Duplicate surfaces
    keep a single entry (see :func:`_preferred`) and always log a warning.
    """
    entries: dict[str, LexiconEntry] = {}
    first_line: dict[str, int] = {}
    warnings: list[str] = []
    malformed: list[int] = []
    for lineno, line in enumerate(lines, start=1):
        if _is_skipped(line):
            continue
        try:
            entry = parse_lexicon_line(line, lineno)
        except LexiconRowError as exc:
            if strict:
                raise
            warnings.append(f"malformed {exc}")
            malformed.append(lineno)
            continue
        old = entries.get(entry.surface)
        if old is None:
            entries[entry.surface] = entry
            first_line[entry.surface] = lineno
            continue
        kept = _preferred(old, entry)
        entries[entry.surface] = kept
        which = "later" if kept is entry else "earlier"
        warnings.append(
            f"duplicate line {lineno}: surface {entry.surface!r} also on line "
            f"{first_line[entry.surface]}; kept {which} row "
            f"({kept.strength.value}, {kept.polarity.value})"
        )
    for w in warnings:
        log.warning("lexicon: %s", w)
    return SentimentLexicon(entries, tuple(warnings), tuple(malformed))


def read_lexicon(path: str | Path, strict: bool = False) -> SentimentLexicon:
    """Load a lexicon file. ``OSError`` propagates for unreadable paths."""
    with io.open(path, encoding="utf-8") as fh:
        return load_lexicon(fh, strict=strict)


def write_lexicon(lexicon: SentimentLexicon, path: str | Path) -> None:
    with io.open(path, "w", encoding="utf-8") as fh:
        for line in lexicon.serialize():
            fh.write(line + "\n")
