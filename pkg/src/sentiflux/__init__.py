"""Lexicon-based tweet sentiment scoring at batch scale."""
from importlib import resources

from .lexicon import (
    LexiconEntry,
    LexiconRowError,
    PartOfSpeech,
    Polarity,
    SentimentLexicon,
    Strength,
    load_lexicon,
    lookup,
    parse_lexicon_line,
    read_lexicon,
)
from .scorer import (
    NegationMode,
    ScoredTweet,
    Scorer,
    SentimentLabel,
    label_from_score,
    score_tweet,
    word_contribution,
)
from .tokenizer import Token, TokenKind, extract_hashtags, tokenize

__version__ = "0.1.0"

__all__ = [
    "LexiconEntry", "LexiconRowError", "PartOfSpeech", "Polarity", "SentimentLexicon", "Strength",
    "load_lexicon", "lookup", "parse_lexicon_line", "read_lexicon",
    "NegationMode", "ScoredTweet", "Scorer", "SentimentLabel", "label_from_score", "score_tweet",
    "word_contribution", "Token", "TokenKind", "extract_hashtags", "tokenize", "bundled_lexicon",
]


def bundled_lexicon(name: str = "demo", strict: bool = True) -> SentimentLexicon:
    """Load a lexicon shipped with the package (``"demo"`` or ``"table1"``)."""
    text = resources.files(__name__).joinpath("data", f"{name}.tsv").read_text(encoding="utf-8")
    return load_lexicon(text.splitlines(), strict=strict)
