"""Per-tweet sentiment scoring.

Scores are integers in half-units: a strong entry is worth 2, a weak entry 1,
so ``score / 2`` is the familiar +1/+0.5 scale.  A blind-negation term ends
scoring immediately and forces a negative label.  Negation terms either flip
the running total where they occur (``LITERAL``) or flip the final total when
their count is odd (``FINAL_FLIP``).
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from .lexicon import LexiconEntry, Polarity, SentimentLexicon, Strength
from .tokenizer import Token, TokenKind, token_pattern, tokenize


class SentimentLabel(enum.Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    NEUTRAL = "neutral"


LABEL_ORDER = (SentimentLabel.POSITIVE, SentimentLabel.NEGATIVE, SentimentLabel.NEUTRAL)


class NegationMode(enum.Enum):
    LITERAL = "literal"
    FINAL_FLIP = "final-flip"


_CONTRIBUTION = {
    (Polarity.POSITIVE, Strength.STRONG): 2,
    (Polarity.POSITIVE, Strength.WEAK): 1,
    (Polarity.NEGATIVE, Strength.STRONG): -2,
    (Polarity.NEGATIVE, Strength.WEAK): -1,
    (Polarity.NEUTRAL, Strength.STRONG): 0,
    (Polarity.NEUTRAL, Strength.WEAK): 0,
}

# codes in the compiled weight table; sentiment contributions are in [-2, 2]
_NEGATION = 100
_BLIND = 101
_RAW_CACHE_LIMIT = 1 << 16


def word_contribution(entry: LexiconEntry) -> int:
    """Half-unit contribution of a sentiment entry.

    Negation and blind-negation entries have no contribution; passing one is
    a programming error.
    """
    try:
        return _CONTRIBUTION[entry.polarity, entry.strength]
    except KeyError:
        raise ValueError(f"{entry.polarity.value} entries carry no contribution: {entry.surface!r}") from None


def label_from_score(score: int) -> SentimentLabel:
    if score > 0:
        return SentimentLabel.POSITIVE
    if score < 0:
        return SentimentLabel.NEGATIVE
    return SentimentLabel.NEUTRAL


@dataclass(frozen=True, slots=True)
class MatchedTerm:
    term: str
    polarity: Polarity
    strength: Strength


@dataclass(frozen=True, slots=True)
class ScoredTweet:
    tweet_id: str
    score: int
    label: SentimentLabel
    blind_negation_hit: bool = False
    matched: tuple[MatchedTerm, ...] = ()
    hashtags: tuple[str, ...] = ()
    negation_count: int = 0

    @property
    def score_display(self) -> float:
        return self.score / 2

    def to_json(self) -> dict:
        return {
            "id": self.tweet_id,
            "score": self.score,
            "score_display": self.score / 2,
            "label": self.label.value,
            "blind_negation": self.blind_negation_hit,
            "hashtags": list(self.hashtags),
            "matched": [
                {"term": m.term, "polarity": m.polarity.value, "strength": m.strength.value}
                for m in self.matched
            ],
            "negations": self.negation_count,
        }


class Scorer:
    """Scoring bound to one lexicon and configuration.

    Precomputes a surface -> weight table and the tokenizer pattern so the
    hot loop is a dict lookup per token.  Instances are immutable after
    construction and cheap to share.
    """

    def __init__(
        self,
        lexicon: SentimentLexicon,
        mode: NegationMode = NegationMode.FINAL_FLIP,
        score_hashtag_words: bool = True,
    ):
        self.lexicon = lexicon
        self.mode = NegationMode(mode)
        self.score_hashtag_words = score_hashtag_words
        self.pattern = token_pattern(lexicon.emoticons)
        weights = {}
        for entry in lexicon:
            if entry.polarity is Polarity.NEGATION:
                weights[entry.surface] = _NEGATION
            elif entry.polarity is Polarity.BLIND_NEGATION:
                weights[entry.surface] = _BLIND
            else:
                weights[entry.surface] = word_contribution(entry)
        self._weights = weights
        self._raw_cache: dict[str, int] = {}

    def __reduce__(self):
        return (Scorer, (self.lexicon, self.mode, self.score_hashtag_words))

    def score(self, tweet_id: str, tokens: Sequence[Token]) -> ScoredTweet:
        weights = self._weights
        literal = self.mode is NegationMode.LITERAL
        lookup = self.lexicon.entries.get
        total = 0
        negations = 0
        blind = False
        matched = []
        hashtags: dict[str, None] = {}
        for tok in tokens:
            kind = tok.kind
            if kind is TokenKind.HASHTAG:
                hashtags.setdefault(tok.surface, None)
                if not self.score_hashtag_words:
                    continue
            elif kind is TokenKind.MENTION or kind is TokenKind.URL:
                continue
            w = weights.get(tok.surface)
            if w is None:
                continue
            entry = lookup(tok.surface)
            matched.append(MatchedTerm(tok.surface, entry.polarity, entry.strength))
            if w == _BLIND:
                blind = True
                break
            if w == _NEGATION:
                negations += 1
                if literal:
                    total = -total
            else:
                total += w
        if blind:
            # the remaining hashtags still name the subject
            for tok in tokens:
                if tok.kind is TokenKind.HASHTAG:
                    hashtags.setdefault(tok.surface, None)
            label = SentimentLabel.NEGATIVE
        else:
            if not literal and negations & 1:
                total = -total
            label = label_from_score(total)
        return ScoredTweet(tweet_id, total, label, blind, tuple(matched), tuple(hashtags), negations)

    def score_text(self, tweet_id: str, raw: str) -> ScoredTweet:
        return self.score(tweet_id, tokenize(raw, self.lexicon.emoticons))

    def classify(self, raw: str) -> tuple[SentimentLabel, list[str]]:
        """Label and distinct hashtags of *raw* without building tokens.

        Agrees with ``score_text(...).label`` / ``.hashtags``.
        """
        index, tags = self.classify_index(raw)
        return LABEL_ORDER[index], tags

    def classify_index(self, raw: str) -> tuple[int, list[str]]:
        """:meth:`classify` with the label as an index into ``LABEL_ORDER``.

        This is the batch pipeline's hot path; it avoids enum hashing.
        """
        weights = self._weights
        cache = self._raw_cache
        literal = self.mode is NegationMode.LITERAL
        tag_words = self.score_hashtag_words
        total = 0
        negations = 0
        blind = False
        tags = []
        # neutral and unknown terms both weigh 0 and cannot change the label
        for url, mention, tag, emo, word in self.pattern.findall(raw):
            if word:
                if blind:
                    continue
                w = cache.get(word)
                if w is None:
                    w = weights.get(word.lower(), 0)
                    if len(cache) < _RAW_CACHE_LIMIT:
                        cache[word] = w
            elif emo:
                if blind:
                    continue
                w = weights.get(emo, 0)
            elif tag:
                s = tag.lower()
                if s not in tags:
                    tags.append(s)
                if blind or not tag_words:
                    continue
                w = weights.get(s, 0)
            else:
                continue
            if not w:
                continue
            if w == _BLIND:
                blind = True
            elif w == _NEGATION:
                negations += 1
                if literal:
                    total = -total
            else:
                total += w
        if blind:
            return 1, tags
        if not literal and negations & 1:
            total = -total
        if total > 0:
            return 0, tags
        if total < 0:
            return 1, tags
        return 2, tags


_scorers: dict[tuple, Scorer] = {}


def scorer_for(lexicon: SentimentLexicon, mode: NegationMode, score_hashtag_words: bool = True) -> Scorer:
    key = (id(lexicon), NegationMode(mode), score_hashtag_words)
    cached = _scorers.get(key)
    if cached is None or cached.lexicon is not lexicon:
        if len(_scorers) >= 16:
            _scorers.clear()
        cached = _scorers[key] = Scorer(lexicon, mode, score_hashtag_words)
    return cached


def score_tweet(
    tweet_id: str,
    tokens: Sequence[Token],
    lexicon: SentimentLexicon,
    mode: NegationMode = NegationMode.FINAL_FLIP,
    score_hashtag_words: bool = True,
) -> ScoredTweet:
    return scorer_for(lexicon, mode, score_hashtag_words).score(tweet_id, tokens)
