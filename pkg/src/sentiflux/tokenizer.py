"""Tweet tokenizer.

Tokens are found left to right with one compiled alternation, so at any
position the first alternative that matches wins:

    url > mention > hashtag > emoticon (longest first) > word

Everything else is a separator.  Word and hashtag surfaces are lowercased;
emoticons, mentions and urls are kept as written.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable


class TokenKind(enum.Enum):
    WORD = "word"
    HASHTAG = "hashtag"
    EMOTICON = "emoticon"
    MENTION = "mention"
    URL = "url"


@dataclass(frozen=True, slots=True)
class Token:
    kind: TokenKind
    surface: str
    start: int
    end: int

    @property
    def span(self) -> tuple[int, int]:
        return (self.start, self.end)


_URL = r"(https?://\S+)"
_MENTION = r"@(\w+)"
_HASHTAG = r"#(\w+)"
_WORD = r"((?:[^\W_]+|')+)"
_NEVER = r"(?!)"

# group index -> kind, in alternation order
_KINDS = (None, TokenKind.URL, TokenKind.MENTION, TokenKind.HASHTAG, TokenKind.EMOTICON, TokenKind.WORD)


@lru_cache(maxsize=32)
def _compile(emoticons: frozenset[str]) -> re.Pattern:
    if emoticons:
        # longest first so ">:(" wins over ":("
        alts = sorted(emoticons, key=lambda e: (-len(e), e))
        # the lookahead lets most positions skip the alternation entirely
        first = "".join(sorted({re.escape(e[0]) for e in alts}))
        emo = "(?=[" + first + "])(" + "|".join(re.escape(e) for e in alts) + ")"
    else:
        emo = "(" + _NEVER + ")"
    # leading whitespace is folded into the match so separators between
    # tokens cost no extra scan; the lookbehind keeps long blank runs linear
    return re.compile(r"(?:(?<!\s)\s+)?(?:" + "|".join((_URL, _MENTION, _HASHTAG, emo, _WORD)) + ")")


def token_pattern(emoticon_set: Iterable[str]) -> re.Pattern:
    """The compiled scanner for *emoticon_set*.

    Group 1 is a url, 2 a mention name, 3 a hashtag name, 4 an emoticon and
    5 a word.  Exactly one group participates in each match; the overall
    match may include leading whitespace, so use the group's own span.
    """
    if not isinstance(emoticon_set, frozenset):
        emoticon_set = frozenset(emoticon_set)
    return _compile(emoticon_set)


def tokenize(raw: str, emoticon_set: Iterable[str] = frozenset()) -> list[Token]:
    pattern = token_pattern(emoticon_set)
    tokens = []
    for m in pattern.finditer(raw):
        group = m.lastindex
        kind = _KINDS[group]
        text = m.group(group)
        start = m.start(group)
        if kind is TokenKind.HASHTAG or kind is TokenKind.MENTION:
            start -= 1
        if kind is TokenKind.WORD or kind is TokenKind.HASHTAG:
            text = text.lower()
        tokens.append(Token(kind, text, start, m.end()))
    return tokens


def normalize_span(kind: TokenKind, raw_slice: str) -> str:
    """Map the raw text under a token's span to that token's surface."""
    if kind is TokenKind.HASHTAG or kind is TokenKind.MENTION:
        raw_slice = raw_slice[1:]
    if kind is TokenKind.WORD or kind is TokenKind.HASHTAG:
        raw_slice = raw_slice.lower()
    return raw_slice


def extract_hashtags(tokens: Iterable[Token]) -> list[str]:
    """Distinct hashtag surfaces in first-occurrence order."""
    seen: dict[str, None] = {}
    for tok in tokens:
        if tok.kind is TokenKind.HASHTAG:
            seen.setdefault(tok.surface, None)
    return list(seen)
