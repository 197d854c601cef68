"""Word-level segmentation rules feeding the trainable tokenizers."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .splitter import mark

# Arabic letters that never connect to the letter after them in cursive script.
NON_JOINING_LETTERS = frozenset("اأإآىدذرزوؤءة")

_ARABIC_FIRST = "ء"
_ARABIC_LAST = "ي"

DEFAULT_PREFIXES = ("ال", "و", "ف", "ب", "ك", "ل", "لل", "وال", "بال", "فال", "كال", "س")
DEFAULT_SUFFIXES = (
    "ة", "ات", "ان", "ين", "ون", "ها", "هم", "هن",
    "كم", "نا", "ني", "ه", "ك", "وا", "تم", "ي",
)

STOCHASTIC_MAX_GRAM = 4


def is_arabic_letter(ch: str) -> bool:
    return _ARABIC_FIRST <= ch <= _ARABIC_LAST


def joins_forward(ch: str) -> bool:
    """Whether the character connects cursively to the character after it."""
    return is_arabic_letter(ch) and ch not in NON_JOINING_LETTERS


def segment_character(word: str) -> list[str]:
    """One token per character."""
    return mark(list(word))


def segment_disjoint(word: str) -> list[str]:
    """Cut after every character that does not join to its successor.

    Keeps visually connected letter runs together, so the pieces match the
    glyph groups a reader sees. Non-Arabic characters never join.
    """
    if not word:
        return []
    pieces = []
    start = 0
    for i, ch in enumerate(word[:-1]):
        if not joins_forward(ch):
            pieces.append(word[start : i + 1])
            start = i + 1
    pieces.append(word[start:])
    return mark(pieces)


@dataclass(frozen=True)
class AffixTables:
    """Closed prefix and suffix lists for light affix stripping."""

    prefixes: tuple[str, ...] = DEFAULT_PREFIXES
    suffixes: tuple[str, ...] = DEFAULT_SUFFIXES
    min_stem_len: int = 2
    # per-length lookup sets, longest length first, derived once
    _prefix_sets: tuple[tuple[int, frozenset], ...] = field(init=False, repr=False, compare=False)
    _suffix_sets: tuple[tuple[int, frozenset], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        for affix in self.prefixes + self.suffixes:
            if not affix:
                raise ValueError("affix tables must not contain empty strings")
        if self.min_stem_len < 1:
            raise ValueError(f"min_stem_len must be at least 1, got {self.min_stem_len}")
        object.__setattr__(self, "_prefix_sets", _by_length(self.prefixes))
        object.__setattr__(self, "_suffix_sets", _by_length(self.suffixes))


def _by_length(affixes: tuple[str, ...]) -> tuple[tuple[int, frozenset], ...]:
    buckets: dict[int, set] = {}
    for affix in affixes:
        buckets.setdefault(len(affix), set()).add(affix)
    return tuple(
        (length, frozenset(buckets[length])) for length in sorted(buckets, reverse=True)
    )


DEFAULT_AFFIXES = AffixTables()


def segment_affixes(word: str, tables: AffixTables = DEFAULT_AFFIXES) -> list[str]:
    """Strip at most one prefix and one suffix, longest match first.

    Either strip is taken only if the remaining stem keeps at least
    min_stem_len characters; words with no matching affix stay intact.
    """
    if not word:
        return []
    stem = word
    prefix = ""
    for length, table in tables._prefix_sets:
        if len(stem) - length >= tables.min_stem_len and stem[:length] in table:
            prefix = stem[:length]
            stem = stem[length:]
            break
    suffix = ""
    for length, table in tables._suffix_sets:
        if len(stem) - length >= tables.min_stem_len and stem[-length:] in table:
            suffix = stem[-length:]
            stem = stem[: len(stem) - length]
            break
    pieces = []
    if prefix:
        pieces.append(prefix)
    pieces.append(stem)
    if suffix:
        pieces.append(suffix)
    return mark(pieces)


def stochastic_ngrams(word: str, rng: random.Random, max_gram: int = STOCHASTIC_MAX_GRAM) -> list[str]:
    """All overlapping k-grams of the word for one randomly drawn k.

    k is uniform on 1..min(len(word), max_gram); the draw consumes exactly one
    value from the generator. The result covers the word with stride one, so it
    is training material rather than a segmentation.
    """
    if not word:
        raise ValueError("cannot draw n-grams from an empty word")
    k = rng.randint(1, min(len(word), max_gram))
    grams = [word[i : i + k] for i in range(len(word) - k + 1)]
    return mark(grams)
