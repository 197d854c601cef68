"""Trainable tokenizers: model container, training, inference, persistence.

Six kinds share one model shape and one inference contract. A word maps to a
marked token sequence or to the unknown token; text-level tokenize, encode and
decode are thin loops over whitespace-separated words.
"""

from __future__ import annotations

import heapq
import os
import random
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

from .corpus import (
    DEFAULT_CHUNK_SIZE,
    NO_NORMALIZATION,
    NormalizationOptions,
    iter_words,
    normalize,
    scan_corpus,
)
from .segmenters import (
    DEFAULT_AFFIXES,
    STOCHASTIC_MAX_GRAM,
    AffixTables,
    segment_affixes,
    segment_character,
    segment_disjoint,
    stochastic_ngrams,
)
from .splitter import (
    CONTINUATION,
    DEFAULT_MAX_WORD_LEN,
    SplitCache,
    best_split,
    strip_marker,
)
from .vocabulary import DEFAULT_SPECIALS, UNK_TOKEN, Vocabulary

KINDS = ("character", "word", "morphological", "stochastic", "disjoint", "bpe")

_SECTION_SEPARATOR = "---"


class ModelFormatError(ValueError):
    """Saved model file cannot be parsed."""


@dataclass
class TokenizerModel:
    """A trained tokenizer: kind tag, vocabulary, and kind-specific extras.

    seed is present only for stochastic models, merges only for bpe, affixes
    only for morphological. Instances are treated as immutable; the two private
    fields are lazily built inference caches and never part of identity.
    """

    kind: str
    vocab: Vocabulary
    max_word_len: int = DEFAULT_MAX_WORD_LEN
    seed: int | None = None
    merges: tuple[tuple[str, str], ...] | None = None
    affixes: AffixTables | None = None
    _split_cache: SplitCache | None = field(
        default=None, init=False, repr=False, compare=False
    )
    _merge_ranks: dict[tuple[str, str], int] | None = field(
        default=None, init=False, repr=False, compare=False
    )
    _bpe_cache: dict[str, list[str]] | None = field(
        default=None, init=False, repr=False, compare=False
    )

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown tokenizer kind {self.kind!r}")
        if self.max_word_len < 1:
            raise ValueError(f"max_word_len must be positive, got {self.max_word_len}")
        if (self.seed is not None) != (self.kind == "stochastic"):
            raise ValueError(f"seed is required for stochastic models only, kind is {self.kind!r}")
        if (self.merges is not None) != (self.kind == "bpe"):
            raise ValueError(f"merges are required for bpe models only, kind is {self.kind!r}")
        if (self.affixes is not None) != (self.kind == "morphological"):
            raise ValueError(
                f"affix tables are required for morphological models only, kind is {self.kind!r}"
            )
        if self.merges is not None:
            self.merges = tuple((left, right) for left, right in self.merges)

    @property
    def split_cache(self) -> SplitCache:
        if self._split_cache is None:
            self._split_cache = SplitCache()
        return self._split_cache

    @property
    def merge_ranks(self) -> dict[tuple[str, str], int]:
        if self._merge_ranks is None:
            self._merge_ranks = {pair: rank for rank, pair in enumerate(self.merges or ())}
        return self._merge_ranks

    @property
    def bpe_cache(self) -> dict[str, list[str]]:
        if self._bpe_cache is None:
            self._bpe_cache = {}
        return self._bpe_cache

    def reset_caches(self) -> None:
        """Drop memoized split results, e.g. between benchmark repetitions."""
        self._split_cache = None
        self._merge_ranks = None
        self._bpe_cache = None


def train(
    kind: str,
    corpus_path: str | os.PathLike,
    vocab_size: int,
    *,
    specials: tuple[str, ...] = DEFAULT_SPECIALS,
    options: NormalizationOptions = NO_NORMALIZATION,
    max_word_len: int = DEFAULT_MAX_WORD_LEN,
    seed: int = 0,
    max_gram: int = STOCHASTIC_MAX_GRAM,
    affixes: AffixTables = DEFAULT_AFFIXES,
    chunk_size: int = DEFAULT_CHUNK_SIZE,
    workers: int = 1,
) -> TokenizerModel:
    """Train a tokenizer of the given kind from a UTF-8 corpus file.

    seed feeds the stochastic trainer, max_gram caps its n-gram length,
    affixes configures the morphological segmenter; each is ignored by the
    other kinds. Training is deterministic for fixed arguments, including
    chunk_size and workers, which only affect scanning throughput.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown tokenizer kind {kind!r}")
    word_freqs, _ = scan_corpus(corpus_path, options, chunk_size=chunk_size, workers=workers)

    if kind == "bpe":
        merges, vocab = learn_bpe_merges(word_freqs, vocab_size, specials)
        model = TokenizerModel("bpe", vocab, max_word_len, merges=tuple(merges))
        return model

    if kind == "word":
        token_freqs = word_freqs
    elif kind == "character":
        token_freqs = _count_segments(word_freqs, segment_character)
    elif kind == "disjoint":
        token_freqs = _count_segments(word_freqs, segment_disjoint)
    elif kind == "morphological":
        token_freqs = _count_segments(word_freqs, lambda w: segment_affixes(w, affixes))
    else:
        token_freqs = _count_stochastic(word_freqs, seed, max_gram)

    vocab = Vocabulary.build(token_freqs, vocab_size, specials)
    if kind == "stochastic":
        return TokenizerModel(kind, vocab, max_word_len, seed=seed)
    if kind == "morphological":
        return TokenizerModel(kind, vocab, max_word_len, affixes=affixes)
    return TokenizerModel(kind, vocab, max_word_len)


def _count_segments(word_freqs, segment) -> Counter:
    token_freqs: Counter = Counter()
    for word, freq in word_freqs.items():
        for token in segment(word):
            token_freqs[token] += freq
    return token_freqs


def _count_stochastic(word_freqs, seed: int, max_gram: int) -> Counter:
    """Draw one gram length per distinct word and count its covering n-grams.

    Words are visited in sorted order so a fixed seed consumes the random
    stream identically however the corpus was scanned.
    """
    rng = random.Random(seed)
    token_freqs: Counter = Counter()
    for word in sorted(word_freqs):
        freq = word_freqs[word]
        for token in stochastic_ngrams(word, rng, max_gram):
            token_freqs[token] += freq
    return token_freqs


def learn_bpe_merges(
    word_freqs,
    vocab_size: int,
    specials: tuple[str, ...] = DEFAULT_SPECIALS,
) -> tuple[list[tuple[str, str]], Vocabulary]:
    """Learn byte-pair merges over word frequencies until the vocab is full.

    The base alphabet holds every corpus character in bare and continuation
    form, both carrying the character's total occurrence count. Each round
    merges the most frequent adjacent pair, ties to the lexicographically
    smallest; a merge product's frequency is the pair count at merge time,
    accumulated when two merge paths yield the same product. Learning stops
    when the vocabulary reaches vocab_size or no pair occurs at least twice.
    """
    items = sorted(word_freqs.items())

    char_counts: Counter = Counter()
    for word, freq in items:
        for ch in word:
            char_counts[ch] += freq
    token_freqs: dict[str, int] = {}
    for ch, count in char_counts.items():
        token_freqs[ch] = count
        token_freqs[CONTINUATION + ch] = count

    floor = len(specials) + len(token_freqs)
    if vocab_size < floor:
        raise ValueError(
            f"vocab size {vocab_size} cannot hold {len(specials)} specials "
            f"plus a {len(token_freqs)}-token alphabet"
        )

    words = [segment_character(word) for word, _ in items]
    weights = [freq for _, freq in items]

    pair_counts: dict[tuple[str, str], int] = {}
    pair_words: dict[tuple[str, str], set[int]] = {}
    for index, syms in enumerate(words):
        weight = weights[index]
        for pair in zip(syms, syms[1:]):
            pair_counts[pair] = pair_counts.get(pair, 0) + weight
            pair_words.setdefault(pair, set()).add(index)

    heap = [(-count, pair) for pair, count in pair_counts.items()]
    heapq.heapify(heap)

    merges: list[tuple[str, str]] = []
    current_size = floor
    while current_size < vocab_size and heap:
        neg_count, pair = heapq.heappop(heap)
        count = pair_counts.get(pair, 0)
        if count != -neg_count:
            # stale entry: the true count changed since this push
            if count >= 2:
                heapq.heappush(heap, (-count, pair))
            continue
        if count < 2:
            break

        merges.append(pair)
        product = pair[0] + strip_marker(pair[1])
        if product in token_freqs:
            token_freqs[product] += count
        else:
            token_freqs[product] = count
            current_size += 1

        for index in sorted(pair_words.get(pair, ())):
            syms = words[index]
            before = Counter(zip(syms, syms[1:]))
            if pair not in before:
                continue
            merged = _merge_in_word(syms, pair, product)
            after = Counter(zip(merged, merged[1:]))
            words[index] = merged
            weight = weights[index]
            for changed in before.keys() | after.keys():
                delta = (after[changed] - before[changed]) * weight
                if delta == 0:
                    continue
                new_count = pair_counts.get(changed, 0) + delta
                if new_count > 0:
                    pair_counts[changed] = new_count
                    if delta > 0:
                        pair_words.setdefault(changed, set()).add(index)
                        heapq.heappush(heap, (-new_count, changed))
                else:
                    pair_counts.pop(changed, None)
        pair_counts.pop(pair, None)
        pair_words.pop(pair, None)

    vocab = Vocabulary.build(token_freqs, vocab_size, specials)
    return merges, vocab


def _merge_in_word(syms: list[str], pair: tuple[str, str], product: str) -> list[str]:
    left, right = pair
    out = []
    i = 0
    while i < len(syms):
        if syms[i] == left and i + 1 < len(syms) and syms[i + 1] == right:
            out.append(product)
            i += 2
        else:
            out.append(syms[i])
            i += 1
    return out


def apply_merges(symbols: list[str], ranks: dict[tuple[str, str], int]) -> list[str]:
    """Collapse a symbol sequence by repeatedly taking the earliest-learned
    applicable merge. Equivalent to replaying the merge list in order."""
    syms = list(symbols)
    while len(syms) > 1:
        best_pair = None
        best_rank = None
        for pair in zip(syms, syms[1:]):
            rank = ranks.get(pair)
            if rank is not None and (best_rank is None or rank < best_rank):
                best_rank = rank
                best_pair = pair
        if best_pair is None:
            break
        syms = _merge_in_word(syms, best_pair, best_pair[0] + strip_marker(best_pair[1]))
    return syms


def segment_word(model: TokenizerModel, word: str) -> list[str] | None:
    """Map one word to its token sequence, or None when it is unknown.

    character and bpe substitute the unknown token per unseen character and
    always produce something; word is a plain lookup; the remaining kinds try
    their canonical segmentation first and fall back to the vocabulary-driven
    best split, which declines words longer than max_word_len.
    """
    vocab = model.vocab
    if model.kind == "word":
        return [word] if word in vocab else None
    if model.kind == "character":
        return [t if t in vocab else UNK_TOKEN for t in segment_character(word)]
    if model.kind == "bpe":
        cache = model.bpe_cache
        seg = cache.get(word)
        if seg is None:
            syms = apply_merges(segment_character(word), model.merge_ranks)
            seg = [s if s in vocab else UNK_TOKEN for s in syms]
            cache[word] = seg
        return seg

    if model.kind == "disjoint":
        canonical = segment_disjoint(word)
    elif model.kind == "morphological":
        canonical = segment_affixes(word, model.affixes)
    else:
        canonical = [word]
    if all(t in vocab for t in canonical):
        return canonical
    return best_split(word, vocab, model.split_cache, model.max_word_len)


def tokenize(
    model: TokenizerModel,
    text: str,
    options: NormalizationOptions | None = None,
) -> list[str]:
    """Token sequence for a text; unknown words become the unknown token."""
    if options is not None and not options.is_noop():
        text = normalize(text, options)
    tokens: list[str] = []
    for word in iter_words(text):
        seg = segment_word(model, word)
        tokens.extend([UNK_TOKEN] if seg is None else seg)
    return tokens


def detokenize(model: TokenizerModel, tokens: list[str]) -> str:
    """Glue continuation tokens onto their predecessor, words joined by spaces.

    A continuation token with no predecessor starts a word. The model argument
    fixes the signature shared by all kinds; gluing itself is kind-independent.
    """
    del model
    words: list[str] = []
    for token in tokens:
        if token.startswith(CONTINUATION) and words:
            words[-1] += token[len(CONTINUATION):]
        else:
            words.append(strip_marker(token))
    return " ".join(words)


def encode(
    model: TokenizerModel,
    text: str,
    options: NormalizationOptions | None = None,
) -> list[int]:
    """Token ids for a text; tokens outside the vocabulary get the unknown id."""
    vocab = model.vocab
    return [vocab.id_of(token) for token in tokenize(model, text, options)]


def decode(model: TokenizerModel, ids: list[int]) -> str:
    """Text reconstructed from token ids."""
    tokens = []
    for position, value in enumerate(ids):
        try:
            tokens.append(model.vocab.token_of(value))
        except IndexError:
            raise ValueError(f"token id {value} out of range at position {position}") from None
    return detokenize(model, tokens)


def save_model(model: TokenizerModel, path: str | os.PathLike) -> None:
    """Write the model as one UTF-8 text file.

    Layout: `key = value` header lines, a `---` separator, kind-specific
    sections (bpe merge pairs, morphological affix rows) each closed by
    another `---`, then the vocabulary in its own file format. Saving the
    result of load_model reproduces the file byte for byte.
    """
    lines = [f"kind = {model.kind}", f"max_word_len = {model.max_word_len}"]
    if model.kind == "stochastic":
        lines.append(f"seed = {model.seed}")
    if model.kind == "bpe":
        lines.append(f"merges = {len(model.merges)}")
    if model.kind == "morphological":
        lines.append(f"min_stem_len = {model.affixes.min_stem_len}")
        lines.append(f"prefixes = {len(model.affixes.prefixes)}")
        lines.append(f"suffixes = {len(model.affixes.suffixes)}")
    lines.append(_SECTION_SEPARATOR)
    if model.kind == "bpe":
        lines.extend(f"{left}\t{right}" for left, right in model.merges)
        lines.append(_SECTION_SEPARATOR)
    if model.kind == "morphological":
        lines.extend(f"prefix\t{p}" for p in model.affixes.prefixes)
        lines.extend(f"suffix\t{s}" for s in model.affixes.suffixes)
        lines.append(_SECTION_SEPARATOR)
    body = "\n".join(lines) + "\n" + model.vocab.to_text()
    Path(path).write_text(body, encoding="utf-8", newline="\n")


def load_model(path: str | os.PathLike) -> TokenizerModel:
    """Read a model saved by save_model; malformed files raise ModelFormatError."""
    source = os.fspath(path)
    raw = Path(path).read_bytes()
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ModelFormatError(f"{source}: invalid UTF-8 at byte offset {exc.start}") from exc
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()

    header: dict[str, str] = {}
    cursor = 0
    while cursor < len(lines) and lines[cursor] != _SECTION_SEPARATOR:
        line = lines[cursor]
        key, sep, value = line.partition(" = ")
        if not sep or not key or not value:
            hint = "; is this a vocabulary file?" if "\t" in line else ""
            raise ModelFormatError(f"{source}: malformed header, line {cursor + 1}{hint}")
        if key in header:
            raise ModelFormatError(f"{source}: duplicate header key {key!r}, line {cursor + 1}")
        header[key] = value
        cursor += 1
    if cursor == len(lines):
        raise ModelFormatError(f"{source}: missing section separator after header")
    cursor += 1

    kind = header.pop("kind", None)
    if kind is None:
        raise ModelFormatError(f"{source}: missing header key 'kind'")
    if kind not in KINDS:
        raise ModelFormatError(f"{source}: unknown tokenizer kind {kind!r}")
    max_word_len = _header_int(header, "max_word_len", source)

    seed = None
    merges = None
    affixes = None
    if kind == "stochastic":
        seed = _header_int(header, "seed", source)
    if kind == "bpe":
        merge_count = _header_int(header, "merges", source)
        merges, cursor = _read_merges(lines, cursor, merge_count, source)
    if kind == "morphological":
        min_stem_len = _header_int(header, "min_stem_len", source)
        prefix_count = _header_int(header, "prefixes", source)
        suffix_count = _header_int(header, "suffixes", source)
        affixes, cursor = _read_affixes(
            lines, cursor, prefix_count, suffix_count, min_stem_len, source
        )
    if header:
        stray = sorted(header)[0]
        raise ModelFormatError(f"{source}: unexpected header key {stray!r} for kind {kind!r}")

    vocab = Vocabulary.from_lines(lines[cursor:], source=source, first_line=cursor + 1)
    try:
        return TokenizerModel(
            kind, vocab, max_word_len, seed=seed, merges=merges, affixes=affixes
        )
    except ValueError as exc:
        raise ModelFormatError(f"{source}: {exc}") from exc


def _header_int(header: dict[str, str], key: str, source: str) -> int:
    if key not in header:
        raise ModelFormatError(f"{source}: missing header key {key!r}")
    value = header.pop(key)
    try:
        return int(value)
    except ValueError:
        raise ModelFormatError(f"{source}: header key {key!r} is not an integer: {value!r}") from None


def _read_merges(lines, cursor, count, source):
    merges = []
    for _ in range(count):
        if cursor >= len(lines) or lines[cursor] == _SECTION_SEPARATOR:
            raise ModelFormatError(
                f"{source}: merge section ended early, expected {count} pairs"
            )
        parts = lines[cursor].split("\t")
        if len(parts) != 2 or not parts[0] or not parts[1]:
            raise ModelFormatError(f"{source}: malformed merge pair, line {cursor + 1}")
        merges.append((parts[0], parts[1]))
        cursor += 1
    if cursor >= len(lines) or lines[cursor] != _SECTION_SEPARATOR:
        raise ModelFormatError(f"{source}: missing separator after merge section")
    return tuple(merges), cursor + 1


def _read_affixes(lines, cursor, prefix_count, suffix_count, min_stem_len, source):
    rows = []
    for expected_tag, expected_count in (("prefix", prefix_count), ("suffix", suffix_count)):
        collected = []
        for _ in range(expected_count):
            if cursor >= len(lines) or lines[cursor] == _SECTION_SEPARATOR:
                raise ModelFormatError(
                    f"{source}: affix section ended early, "
                    f"expected {expected_count} {expected_tag} rows"
                )
            parts = lines[cursor].split("\t")
            if len(parts) != 2 or parts[0] != expected_tag or not parts[1]:
                raise ModelFormatError(f"{source}: malformed affix row, line {cursor + 1}")
            collected.append(parts[1])
            cursor += 1
        rows.append(tuple(collected))
    if cursor >= len(lines) or lines[cursor] != _SECTION_SEPARATOR:
        raise ModelFormatError(f"{source}: missing separator after affix section")
    try:
        tables = AffixTables(rows[0], rows[1], min_stem_len)
    except ValueError as exc:
        raise ModelFormatError(f"{source}: {exc}") from exc
    return tables, cursor + 1
