"""Command-line entry point.

Machine-readable output (JSON Lines or one JSON object) goes to stdout or
``--output``; progress and summaries go to stderr.  Exit status is 0 on
success, 1 on runtime failure and 2 on usage errors.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from contextlib import contextmanager

from . import bundled_lexicon
from .evaluate import evaluate
from .ingest import FORMATS, read_tweets
from .lexicon import LexiconRowError, Polarity, PartOfSpeech, SentimentLexicon, read_lexicon
from .pipeline import DEFAULT_CHUNK_SIZE, PipelineError, benchmark, run_batch
from .scorer import NegationMode, scorer_for

log = logging.getLogger("sentiflux")

LEXICON_ENV = "SENTIFLUX_LEXICON"
BUILTIN_PREFIX = "builtin:"


class CommandError(Exception):
    """Runtime failure; reported on stderr with exit status 1."""


def _positive_int(value: str) -> int:
    try:
        n = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {value!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {n}")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sentiflux", description="Lexicon-based tweet sentiment scoring.")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    lex = argparse.ArgumentParser(add_help=False)
    lex.add_argument(
        "--lexicon", metavar="PATH",
        help=f"lexicon TSV file, or builtin:demo / builtin:table1 (default: ${LEXICON_ENV})",
    )
    lex.add_argument("--strict-lexicon", action="store_true", help="fail on the first malformed lexicon line")

    scoring = argparse.ArgumentParser(add_help=False)
    scoring.add_argument("--mode", choices=[m.value for m in NegationMode], default=NegationMode.FINAL_FLIP.value)
    scoring.add_argument("--parallelism", type=_positive_int, default=os.cpu_count() or 1, metavar="N")
    scoring.add_argument("--no-hashtag-words", dest="score_hashtag_words", action="store_false",
                         help="do not score the word inside a hashtag")
    scoring.add_argument("--chunk-size", type=_positive_int, default=DEFAULT_CHUNK_SIZE, metavar="N")

    io_opts = argparse.ArgumentParser(add_help=False)
    io_opts.add_argument("--input", default="-", metavar="PATH|-")
    io_opts.add_argument("--output", default="-", metavar="PATH|-")

    p = sub.add_parser("analyze", parents=[lex, scoring, io_opts], help="score tweets, one JSON line each")
    p.add_argument("--format", choices=FORMATS, default="jsonl")
    p.add_argument("--top-hashtags", type=int, default=10, metavar="K")

    p = sub.add_parser("benchmark", parents=[lex, scoring], help="time scoring of a synthetic corpus")
    p.add_argument("--n", type=int, default=674_412)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--output", default="-", metavar="PATH|-")

    p = sub.add_parser("evaluate", parents=[lex, scoring, io_opts], help="compare predictions with gold labels")
    p.add_argument("--format", choices=FORMATS, default="labeled-tsv")
    p.add_argument("--table", action="store_true", help="also print a plain-text report on stderr")

    p = sub.add_parser("lexicon-check", parents=[lex], help="validate a lexicon file")
    p.add_argument("--output", default="-", metavar="PATH|-")
    return parser


def _lexicon_path(args, parser) -> str:
    path = args.lexicon or os.environ.get(LEXICON_ENV)
    if not path:
        parser.error(f"--lexicon is required (or set {LEXICON_ENV})")
    return path


def _load_lexicon(path: str, strict: bool) -> SentimentLexicon:
    try:
        if path.startswith(BUILTIN_PREFIX):
            name = path[len(BUILTIN_PREFIX):]
            try:
                return bundled_lexicon(name, strict=strict)
            except FileNotFoundError:
                raise CommandError(f"{path}: no such built-in lexicon") from None
        return read_lexicon(path, strict=strict)
    except LexiconRowError as exc:
        raise CommandError(f"{path}: {exc}") from exc
    except OSError as exc:
        raise CommandError(f"{path}: cannot read lexicon: {exc.strerror or exc}") from exc


@contextmanager
def _output(path: str):
    if path == "-":
        yield sys.stdout
        sys.stdout.flush()
        return
    try:
        fh = open(path, "w", encoding="utf-8")
    except OSError as exc:
        raise CommandError(f"{path}: cannot write: {exc.strerror or exc}") from exc
    with fh:
        yield fh


def _reader(args):
    try:
        return read_tweets(args.input, args.format)
    except OSError as exc:
        raise CommandError(f"{args.input}: cannot read input: {exc.strerror or exc}") from exc


def _report_skips(reader) -> None:
    if reader.skipped:
        print(f"{reader.name}: skipped {reader.skipped} malformed record(s)", file=sys.stderr)
        for msg in reader.problems[:10]:
            print(f"  {msg}", file=sys.stderr)


def cmd_analyze(args, parser) -> int:
    lexicon = _load_lexicon(_lexicon_path(args, parser), args.strict_lexicon)
    reader = _reader(args)
    with _output(args.output) as out:
        write = out.write
        dumps = json.dumps

        def sink(st):
            write(dumps(st.to_json(), ensure_ascii=False) + "\n")

        result = run_batch(
            reader, lexicon, NegationMode(args.mode), args.parallelism, sink,
            score_hashtag_words=args.score_hashtag_words, chunk_size=args.chunk_size,
        )
    _report_skips(reader)
    c = result.counts
    print(
        f"tweets: {result.tweets_processed}  positive: {c.positive}  negative: {c.negative}  "
        f"neutral: {c.neutral}  skipped: {result.records_skipped}",
        file=sys.stderr,
    )
    print(
        f"elapsed: {result.elapsed_ms:.1f} ms  throughput: {result.throughput_tps:,.0f} tweets/s  "
        f"parallelism: {result.parallelism}",
        file=sys.stderr,
    )
    top = result.top_hashtags(args.top_hashtags)
    if top:
        print("top hashtags:", file=sys.stderr)
        for tag, tc in top:
            print(f"  #{tag:<24} {tc.total:>8}  +{tc.positive} -{tc.negative} ={tc.neutral}", file=sys.stderr)
    return 0


def cmd_benchmark(args, parser) -> int:
    if args.n < 1:
        parser.error(f"--n must be >= 1, got {args.n}")
    lexicon = _load_lexicon(_lexicon_path(args, parser), args.strict_lexicon)
    print(f"generating {args.n:,} synthetic tweets (seed {args.seed})", file=sys.stderr)
    _, report = benchmark(
        args.n, args.seed, lexicon, NegationMode(args.mode), args.parallelism,
        score_hashtag_words=args.score_hashtag_words, chunk_size=args.chunk_size,
    )
    with _output(args.output) as out:
        out.write(json.dumps(report) + "\n")
    print(
        f"{report['tweets_processed']:,} tweets in {report['elapsed_ms'] / 1000:.2f} s: "
        f"{report['throughput_tps']:,.0f} tweets/s vs reference {report['paper_reference_tps']:,.0f} tweets/s "
        f"({report['speedup_vs_paper']:.2f}x), parallelism {report['parallelism']}",
        file=sys.stderr,
    )
    return 0


def cmd_evaluate(args, parser) -> int:
    if args.format == "text":
        parser.error("evaluate needs gold labels: use --format labeled-tsv or jsonl with a 'label' field")
    lexicon = _load_lexicon(_lexicon_path(args, parser), args.strict_lexicon)
    reader = _reader(args)
    scorer = scorer_for(lexicon, NegationMode(args.mode), args.score_hashtag_words)
    report = evaluate((scorer.classify(rec.text)[0], rec.gold_label) for rec in reader)
    _report_skips(reader)
    if report.n_evaluated == 0:
        raise CommandError(f"{reader.name}: no record carries a gold label; nothing to evaluate")
    with _output(args.output) as out:
        out.write(json.dumps(report.to_json()) + "\n")
    if args.table:
        print(report.to_text(), file=sys.stderr)
    else:
        print(f"accuracy {report.accuracy:.4f} over {report.n_evaluated} tweets", file=sys.stderr)
    return 0


def cmd_lexicon_check(args, parser) -> int:
    path = _lexicon_path(args, parser)
    # always load leniently so the report lists every problem
    lexicon = _load_lexicon(path, strict=False)
    polarity = {p.value: 0 for p in Polarity}
    polarity.update(lexicon.polarity_counts())
    pos = {p.value: 0 for p in PartOfSpeech}
    pos.update(lexicon.pos_counts())
    duplicates = [w for w in lexicon.warning_log if w.startswith("duplicate")]
    malformed = [w for w in lexicon.warning_log if w.startswith("malformed")]
    report = {
        "path": path,
        "entry_count": lexicon.entry_count,
        "polarity_counts": polarity,
        "pos_counts": pos,
        "emoticons": len(lexicon.emoticons),
        "duplicate_warnings": duplicates,
        "malformed_lines": list(lexicon.malformed_lines),
        "malformed_messages": malformed,
    }
    with _output(args.output) as out:
        out.write(json.dumps(report, ensure_ascii=False) + "\n")
    for msg in lexicon.warning_log:
        print(f"{path}: {msg}", file=sys.stderr)
    print(f"{path}: {lexicon.entry_count} entries, {len(malformed)} malformed line(s), "
          f"{len(duplicates)} duplicate(s)", file=sys.stderr)
    if args.strict_lexicon and malformed:
        return 1
    return 0


COMMANDS = {
    "analyze": cmd_analyze,
    "benchmark": cmd_benchmark,
    "evaluate": cmd_evaluate,
    "lexicon-check": cmd_lexicon_check,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.ERROR,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return COMMANDS[args.command](args, parser)
    except CommandError as exc:
        print(f"sentiflux: error: {exc}", file=sys.stderr)
        return 1
    except PipelineError as exc:
        print(f"sentiflux: error: {exc}", file=sys.stderr)
        return 1
    except BrokenPipeError:
        return 1


if __name__ == "__main__":
    sys.exit(main())
