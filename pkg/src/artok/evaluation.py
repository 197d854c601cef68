"""Unsupervised evaluation: token-count compression and wall-clock speed."""

from __future__ import annotations

import os
import time
from dataclasses import dataclass
from statistics import median

from .corpus import NO_NORMALIZATION, NormalizationOptions, iter_words, normalize
from .tokenizers import TokenizerModel, encode, segment_word, train
from .vocabulary import UNK_TOKEN


@dataclass(frozen=True)
class CompressionReport:
    """Corpus totals behind one compression factor measurement."""

    total_token_cost: int
    total_chars: int
    total_words: int
    factor: float


@dataclass(frozen=True)
class SpeedReport:
    """Median wall time of one phase over repeated runs."""

    phase: str
    seconds: float
    corpus_bytes: int
    samples: tuple[float, ...]


def token_cost(word: str, segmentation: list[str] | None) -> int:
    """Cost of one word: its token count, charging unknowns per character.

    A word the tokenizer rejects outright costs len(word) + 1, the price of
    spelling it out character by character. An unknown token inside a
    segmentation costs 2 instead of 1 for the same reason, scaled down to the
    single character it hides.
    """
    if segmentation is None:
        return len(word) + 1
    cost = len(segmentation)
    for token in segmentation:
        if token == UNK_TOKEN:
            cost += 1
    return cost


def compression_factor(
    model: TokenizerModel,
    corpus_path: str | os.PathLike,
    options: NormalizationOptions = NO_NORMALIZATION,
) -> CompressionReport:
    """Mean tokens spent per character-plus-word over a corpus file.

    The factor is total token cost divided by (total characters + total
    words). A vocabulary that recognizes nothing scores exactly 1.0, the
    character-spelling baseline; richer vocabularies score lower. Raises
    ValueError when the corpus has no words.
    """
    total_cost = 0
    total_chars = 0
    total_words = 0
    cost_of: dict[str, int] = {}
    with open(corpus_path, encoding="utf-8") as fh:
        for line in fh:
            if not options.is_noop():
                line = normalize(line, options)
            for word in iter_words(line):
                cost = cost_of.get(word)
                if cost is None:
                    cost = token_cost(word, segment_word(model, word))
                    cost_of[word] = cost
                total_cost += cost
                total_chars += len(word)
                total_words += 1
    if total_words == 0:
        raise ValueError(f"{os.fspath(corpus_path)}: corpus contains no words")
    factor = total_cost / (total_chars + total_words)
    return CompressionReport(total_cost, total_chars, total_words, factor)


def benchmark_train(
    kind: str,
    corpus_path: str | os.PathLike,
    vocab_size: int,
    repetitions: int = 3,
    **train_kwargs,
) -> SpeedReport:
    """Median wall time to train a tokenizer from scratch.

    Every repetition runs the full pipeline including the corpus scan, so the
    numbers compare trainers end to end on the same file.
    """
    if repetitions < 1:
        raise ValueError(f"repetitions must be positive, got {repetitions}")
    samples = []
    for _ in range(repetitions):
        started = time.perf_counter()
        train(kind, corpus_path, vocab_size, **train_kwargs)
        samples.append(time.perf_counter() - started)
    return SpeedReport(
        "train", float(median(samples)), os.path.getsize(corpus_path), tuple(samples)
    )


def benchmark_encode(
    model: TokenizerModel,
    corpus_path: str | os.PathLike,
    repetitions: int = 3,
    options: NormalizationOptions = NO_NORMALIZATION,
) -> SpeedReport:
    """Median wall time to encode a corpus already loaded in memory.

    The file is read once outside the clock; each repetition starts from
    cleared caches so no run inherits memoized splits from the previous one.
    """
    if repetitions < 1:
        raise ValueError(f"repetitions must be positive, got {repetitions}")
    with open(corpus_path, encoding="utf-8") as fh:
        lines = fh.readlines()
    samples = []
    for _ in range(repetitions):
        model.reset_caches()
        started = time.perf_counter()
        for line in lines:
            encode(model, line, options)
        samples.append(time.perf_counter() - started)
    return SpeedReport(
        "encode", float(median(samples)), os.path.getsize(corpus_path), tuple(samples)
    )
