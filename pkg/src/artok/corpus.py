"""Corpus ingestion: text normalization, word iteration, and parallel frequency counting."""

from __future__ import annotations

import os
import re
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

FrequencyTable = Counter  # token -> frequency, all frequencies >= 1

DEFAULT_CHUNK_SIZE = 8 * 1024 * 1024

# Arabic harakat and related combining marks, plus superscript alef.
_DIACRITIC_CODEPOINTS = list(range(0x064B, 0x0660)) + [0x0670]
_TATWEEL_CODEPOINT = 0x0640

_STRIP_DIACRITICS = {cp: None for cp in _DIACRITIC_CODEPOINTS}
_STRIP_TATWEEL = {_TATWEEL_CODEPOINT: None}

_WHITESPACE_RUN = re.compile(r"\s+")

# ASCII whitespace bytes never occur inside a UTF-8 multi-byte sequence, so they
# are safe range-boundary markers for parallel scanning.
_BOUNDARY_BYTE = re.compile(rb"[\t\n\x0b\x0c\r ]")
_PROBE_SIZE = 1 << 16


@dataclass(frozen=True)
class NormalizationOptions:
    strip_diacritics: bool = False
    strip_tatweel: bool = False
    collapse_whitespace: bool = False

    def is_noop(self) -> bool:
        return not (self.strip_diacritics or self.strip_tatweel or self.collapse_whitespace)


NO_NORMALIZATION = NormalizationOptions()


@dataclass(frozen=True)
class CorpusStats:
    """Aggregate counts for one corpus: whitespace-delimited words and their characters."""

    word_count: int
    unique_word_count: int
    char_count: int


def normalize(text: str, options: NormalizationOptions) -> str:
    """Apply the selected normalizations; idempotent, never adds word boundaries."""
    if options.strip_diacritics:
        text = text.translate(_STRIP_DIACRITICS)
    if options.strip_tatweel:
        text = text.translate(_STRIP_TATWEEL)
    if options.collapse_whitespace:
        text = _WHITESPACE_RUN.sub(" ", text)
    return text


def iter_words(text: str) -> list[str]:
    """Maximal runs of non-whitespace characters, in order."""
    return text.split()


def scan_corpus(
    path: str | os.PathLike,
    options: NormalizationOptions = NO_NORMALIZATION,
    *,
    chunk_size: int = DEFAULT_CHUNK_SIZE,
    workers: int = 1,
) -> tuple[FrequencyTable, CorpusStats]:
    """Count normalized word frequencies over a UTF-8 file.

    The file is partitioned into byte ranges; each range is extended forward to
    the next whitespace byte so no word straddles two ranges, and the per-range
    tables are merged by summation. The result is identical for every chunk_size
    and worker count.

    Raises:
        OSError: the file cannot be read (message carries the path).
        ValueError: the file is not valid UTF-8 (message carries the byte offset).
    """
    if chunk_size < 1:
        raise ValueError("chunk_size must be >= 1")
    if workers < 1:
        raise ValueError("workers must be >= 1")

    path = os.fspath(path)
    size = os.path.getsize(path)
    ranges = _effective_ranges(path, size, chunk_size)

    freqs: FrequencyTable = Counter()
    word_count = 0
    char_count = 0

    if workers == 1 or len(ranges) <= 1:
        parts = (_scan_range(path, start, end, options) for start, end in ranges)
    else:
        pool = ProcessPoolExecutor(max_workers=workers)
        try:
            parts = list(
                pool.map(
                    _scan_range,
                    [path] * len(ranges),
                    [r[0] for r in ranges],
                    [r[1] for r in ranges],
                    [options] * len(ranges),
                )
            )
        finally:
            pool.shutdown()

    for part_freqs, part_words, part_chars in parts:
        freqs.update(part_freqs)
        word_count += part_words
        char_count += part_chars

    stats = CorpusStats(
        word_count=word_count,
        unique_word_count=len(freqs),
        char_count=char_count,
    )
    return freqs, stats


def _effective_ranges(path: str, size: int, chunk_size: int) -> list[tuple[int, int]]:
    """Split [0, size) at whitespace bytes near multiples of chunk_size."""
    cuts = [0]
    with open(path, "rb") as fh:
        pos = chunk_size
        while pos < size:
            cut = _boundary_at_or_after(fh, pos, size)
            if cut > cuts[-1]:
                cuts.append(cut)
            pos += chunk_size
    cuts.append(size)
    return [(cuts[i], cuts[i + 1]) for i in range(len(cuts) - 1) if cuts[i] < cuts[i + 1]]


def _boundary_at_or_after(fh, pos: int, size: int) -> int:
    fh.seek(pos)
    offset = pos
    while True:
        block = fh.read(_PROBE_SIZE)
        if not block:
            return size
        match = _BOUNDARY_BYTE.search(block)
        if match:
            return offset + match.start()
        offset += len(block)


def _scan_range(
    path: str, start: int, end: int, options: NormalizationOptions
) -> tuple[Counter, int, int]:
    with open(path, "rb") as fh:
        fh.seek(start)
        raw = fh.read(end - start)
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ValueError(
            f"{path}: invalid UTF-8 at byte offset {start + exc.start}"
        ) from exc

    words = normalize(text, options).split()
    freqs = Counter(words)
    chars = sum(len(word) for word in words)
    return freqs, len(words), chars
