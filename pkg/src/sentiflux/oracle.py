"""Reference transcription of the ALGO_SENTICAL pseudocode.

Deliberately naive and kept apart from :mod:`sentiflux.scorer`: it walks the
tokens with fractional scores (+1, +0.5, -1, -0.5) exactly as the pseudocode
is written, so the production scorer can be checked against it and synthetic
corpora can be labeled without trusting the code under test.
"""
from __future__ import annotations

from .lexicon import SentimentLexicon
from .tokenizer import Token, TokenKind


def senti_score(tokens: list[Token], lexicon: SentimentLexicon, literal: bool = True,
                score_hashtag_words: bool = True) -> tuple[str, float]:
    """Return ``(sentiment, SentiScore)`` for one tweet.

    With ``literal=False`` the negation flips are deferred: an odd number of
    negation words flips the final score instead of the running one.
    """
    SentiScore = 0.0
    negation_words = 0
    for W in tokens:
        if W.kind == TokenKind.MENTION or W.kind == TokenKind.URL:
            continue
        if W.kind == TokenKind.HASHTAG and not score_hashtag_words:
            continue
        entry = lexicon.lookup(W.surface)
        if entry is None:
            continue  # only words that exist in the dictionary
        polarity = entry.polarity.value
        strength = entry.strength.value
        if polarity == "blindnegation":
            return "negative", SentiScore
        else:
            if polarity == "positive" and strength == "strongsubj":
                SentiScore = SentiScore + 1
            elif polarity == "positive" and strength == "weaksubj":
                SentiScore = SentiScore + 0.5
            elif polarity == "negative" and strength == "strongsubj":
                SentiScore = SentiScore - 1
            elif polarity == "negative" and strength == "weaksubj":
                SentiScore = SentiScore - 0.5
        if polarity == "negation":
            if literal:
                SentiScore = SentiScore * -1
            else:
                negation_words += 1
    if not literal and negation_words % 2 == 1:
        SentiScore = SentiScore * -1
    if SentiScore > 0:
        sentiment = "positive"
    elif SentiScore < 0:
        sentiment = "negative"
    else:
        sentiment = "neutral"
    return sentiment, SentiScore
