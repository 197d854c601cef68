"""Command line front end: train, encode, decode, stats, eval-compression, eval-speed."""

from __future__ import annotations

import argparse
import json
import sys
from datetime import datetime, timezone
from pathlib import Path

from .corpus import DEFAULT_CHUNK_SIZE, NormalizationOptions, scan_corpus
from .evaluation import benchmark_encode, benchmark_train, compression_factor
from .splitter import DEFAULT_MAX_WORD_LEN
from .tokenizers import KINDS, decode, encode, load_model, save_model, train


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="artok",
        description="Train and run Arabic tokenizers; evaluate them without labeled data.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", help="train a tokenizer and save its model file")
    p.add_argument("--tokenizer", "-t", required=True, choices=KINDS)
    p.add_argument("--corpus", required=True, help="UTF-8 training corpus")
    p.add_argument("--vocab-size", type=int, required=True)
    p.add_argument("--out", required=True, help="model file to write")
    p.add_argument("--seed", type=int, default=0, help="stochastic trainer seed")
    p.add_argument("--max-word-len", type=int, default=DEFAULT_MAX_WORD_LEN)
    _add_scan_flags(p)
    _add_norm_flags(p)
    p.set_defaults(func=_cmd_train)

    p = sub.add_parser("encode", help="turn text lines into token id lines")
    p.add_argument("--model", required=True)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", required=True)
    _add_norm_flags(p)
    p.set_defaults(func=_cmd_encode)

    p = sub.add_parser("decode", help="turn token id lines back into text lines")
    p.add_argument("--model", required=True)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_decode)

    p = sub.add_parser("stats", help="count words, unique words and characters")
    p.add_argument("--corpus", required=True)
    p.add_argument("--report", help="write JSON here instead of stdout (plus a .tsv mirror)")
    _add_scan_flags(p)
    _add_norm_flags(p)
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser(
        "eval-compression", help="measure the compression factor of one model or a size sweep"
    )
    p.add_argument("--corpus", required=True)
    p.add_argument("--report", required=True, help="JSON report path; a .tsv mirror sits beside it")
    p.add_argument("--model", help="evaluate this saved model")
    p.add_argument("--tokenizer", "-t", choices=KINDS, help="train fresh models instead (with --sweep)")
    p.add_argument("--sweep", help="comma-separated vocabulary sizes, e.g. 500,1000,5000")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-word-len", type=int, default=DEFAULT_MAX_WORD_LEN)
    _add_scan_flags(p)
    _add_norm_flags(p)
    p.set_defaults(func=_cmd_eval_compression)

    p = sub.add_parser("eval-speed", help="time training or encoding on a corpus")
    p.add_argument("--phase", required=True, choices=("train", "encode"))
    p.add_argument("--corpus", required=True)
    p.add_argument("--report", required=True, help="JSON report path; a .tsv mirror sits beside it")
    p.add_argument("--repetitions", type=int, default=3)
    p.add_argument("--model", help="saved model (encode phase)")
    p.add_argument("--tokenizer", "-t", choices=KINDS, help="kind to train (train phase)")
    p.add_argument("--vocab-size", type=int, help="vocabulary size (train phase)")
    p.add_argument("--seed", type=int, default=0)
    _add_scan_flags(p)
    _add_norm_flags(p)
    p.set_defaults(func=_cmd_eval_speed)

    return parser


def _add_norm_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--strip-diacritics", action="store_true")
    p.add_argument("--strip-tatweel", action="store_true")
    p.add_argument("--collapse-whitespace", action="store_true")


def _add_scan_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--chunk-size", type=int, default=DEFAULT_CHUNK_SIZE)


def _options_from(args) -> NormalizationOptions:
    return NormalizationOptions(
        strip_diacritics=args.strip_diacritics,
        strip_tatweel=args.strip_tatweel,
        collapse_whitespace=args.collapse_whitespace,
    )


def _cmd_train(args) -> int:
    model = train(
        args.tokenizer,
        args.corpus,
        args.vocab_size,
        options=_options_from(args),
        max_word_len=args.max_word_len,
        seed=args.seed,
        chunk_size=args.chunk_size,
        workers=args.workers,
    )
    save_model(model, args.out)
    print(f"wrote {args.tokenizer} model with {len(model.vocab)} tokens to {args.out}")
    return 0


def _cmd_encode(args) -> int:
    model = load_model(args.model)
    options = _options_from(args)
    with open(args.input, encoding="utf-8") as fin, open(
        args.out, "w", encoding="utf-8", newline="\n"
    ) as fout:
        for line in fin:
            ids = encode(model, line, options)
            fout.write(" ".join(map(str, ids)) + "\n")
    return 0


def _cmd_decode(args) -> int:
    model = load_model(args.model)
    with open(args.input, encoding="utf-8") as fin, open(
        args.out, "w", encoding="utf-8", newline="\n"
    ) as fout:
        for lineno, line in enumerate(fin, start=1):
            try:
                ids = [int(part) for part in line.split()]
            except ValueError:
                raise ValueError(f"{args.input}: malformed token id, line {lineno}") from None
            fout.write(decode(model, ids) + "\n")
    return 0


def _cmd_stats(args) -> int:
    _, stats = scan_corpus(
        args.corpus,
        _options_from(args),
        chunk_size=args.chunk_size,
        workers=args.workers,
    )
    payload = {
        "corpus": args.corpus,
        "word_count": stats.word_count,
        "unique_word_count": stats.unique_word_count,
        "char_count": stats.char_count,
    }
    if args.report:
        _write_report(args.report, payload)
    else:
        print(json.dumps(payload, ensure_ascii=False, indent=2))
    return 0


def _cmd_eval_compression(args) -> int:
    options = _options_from(args)
    if bool(args.model) == bool(args.sweep):
        raise ValueError("choose exactly one of --model or --sweep")

    if args.model:
        model = load_model(args.model)
        report = compression_factor(model, args.corpus, options)
        payload = _metric_payload(
            model.kind,
            len(model.vocab),
            "compression_factor",
            report.factor,
            {
                "token_cost": report.total_token_cost,
                "chars": report.total_chars,
                "words": report.total_words,
            },
            args.corpus,
        )
        rows = [payload]
    else:
        if not args.tokenizer:
            raise ValueError("--sweep requires --tokenizer")
        payload = []
        for size in _parse_sweep(args.sweep):
            model = train(
                args.tokenizer,
                args.corpus,
                size,
                options=options,
                max_word_len=args.max_word_len,
                seed=args.seed,
                chunk_size=args.chunk_size,
                workers=args.workers,
            )
            report = compression_factor(model, args.corpus, options)
            payload.append(
                _metric_payload(
                    args.tokenizer,
                    size,
                    "compression_factor",
                    report.factor,
                    {
                        "token_cost": report.total_token_cost,
                        "chars": report.total_chars,
                        "words": report.total_words,
                    },
                    args.corpus,
                )
            )
        rows = payload

    _write_report(args.report, payload)
    for row in rows:
        print(
            f"{row['tokenizer']} vocab {row['vocab_size']}: "
            f"compression factor {row['value']:.4f}"
        )
    return 0


def _cmd_eval_speed(args) -> int:
    options = _options_from(args)
    if args.phase == "train":
        if not args.tokenizer or args.vocab_size is None:
            raise ValueError("eval-speed --phase train requires --tokenizer and --vocab-size")
        report = benchmark_train(
            args.tokenizer,
            args.corpus,
            args.vocab_size,
            repetitions=args.repetitions,
            options=options,
            seed=args.seed,
            chunk_size=args.chunk_size,
            workers=args.workers,
        )
        tokenizer = args.tokenizer
        vocab_size = args.vocab_size
    else:
        if not args.model:
            raise ValueError("eval-speed --phase encode requires --model")
        model = load_model(args.model)
        report = benchmark_encode(model, args.corpus, repetitions=args.repetitions, options=options)
        tokenizer = model.kind
        vocab_size = len(model.vocab)

    payload = _metric_payload(
        tokenizer,
        vocab_size,
        f"{report.phase}_seconds",
        report.seconds,
        {"corpus_bytes": report.corpus_bytes, "samples": list(report.samples)},
        args.corpus,
    )
    _write_report(args.report, payload)
    print(f"{tokenizer} vocab {vocab_size}: median {report.phase} time {report.seconds:.4f}s")
    return 0


def _metric_payload(tokenizer, vocab_size, metric, value, totals, corpus) -> dict:
    return {
        "tokenizer": tokenizer,
        "vocab_size": vocab_size,
        "metric": metric,
        "value": value,
        "totals": totals,
        "corpus": str(corpus),
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
    }


def _parse_sweep(text: str) -> list[int]:
    try:
        sizes = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise ValueError(f"malformed --sweep value {text!r}") from None
    if not sizes:
        raise ValueError(f"malformed --sweep value {text!r}")
    return sizes


def _write_report(path: str, payload) -> None:
    """Write the JSON report plus a flat TSV mirror next to it."""
    target = Path(path)
    target.write_text(
        json.dumps(payload, ensure_ascii=False, indent=2) + "\n", encoding="utf-8"
    )
    rows = payload if isinstance(payload, list) else [payload]
    flat_rows = [_flatten(row) for row in rows]
    columns = list(flat_rows[0])
    lines = ["\t".join(columns)]
    for row in flat_rows:
        lines.append("\t".join(str(row[col]) for col in columns))
    target.with_suffix(".tsv").write_text(
        "\n".join(lines) + "\n", encoding="utf-8"
    )


def _flatten(row: dict) -> dict:
    flat = {}
    for key, value in row.items():
        if isinstance(value, dict):
            for inner, inner_value in value.items():
                flat[f"{key}_{inner}"] = inner_value
        elif isinstance(value, list):
            flat[key] = " ".join(str(v) for v in value)
        else:
            flat[key] = value
    return flat


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
