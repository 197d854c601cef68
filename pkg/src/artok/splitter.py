"""Shared inference engine: candidate segmentation search over a trained vocabulary."""

from __future__ import annotations

from .vocabulary import Vocabulary

CONTINUATION = "##"
DEFAULT_MAX_WORD_LEN = 20

# A Segmentation is a list of tokens in marked form: the first token is bare,
# every later token carries the CONTINUATION prefix. `None` stands for unknown.
Segmentation = list


class WordTooLongError(ValueError):
    """Word exceeds the enumeration length cap."""


def mark(pieces: list[str]) -> list[str]:
    """Attach the continuation marker to every piece after the first."""
    if not pieces:
        return []
    return [pieces[0]] + [CONTINUATION + piece for piece in pieces[1:]]


def strip_marker(token: str) -> str:
    if token.startswith(CONTINUATION):
        return token[len(CONTINUATION):]
    return token


def join_tokens(tokens: list[str]) -> str:
    """Concatenate a segmentation back into its word."""
    return "".join(strip_marker(token) for token in tokens)


def enumerate_segmentations(word: str, max_len: int = DEFAULT_MAX_WORD_LEN) -> list[list[str]]:
    """Every contiguous segmentation of the word, in split-point bitmask order.

    Bit i of the mask cuts after character i, so mask 0 is the intact word and
    an n-character word yields 2**(n-1) segmentations.
    """
    n = len(word)
    if n > max_len:
        raise WordTooLongError(f"word of {n} characters exceeds the {max_len}-character cap")
    if n == 0:
        return []
    segmentations = []
    for mask in range(1 << (n - 1)):
        pieces = []
        start = 0
        for i in range(n - 1):
            if mask >> i & 1:
                pieces.append(word[start : i + 1])
                start = i + 1
        pieces.append(word[start:])
        segmentations.append(mark(pieces))
    return segmentations


class SplitCache:
    """Memo of computed best splits, valid for one (vocabulary, max_len) pair.

    Concurrent fillers may race; they always store the same value, so a cached
    result is indistinguishable from a fresh computation.
    """

    __slots__ = ("splits", "piece_bound")

    def __init__(self):
        self.splits: dict[str, list[str] | None] = {}
        self.piece_bound: int | None = None

    def __len__(self) -> int:
        return len(self.splits)


def best_split(
    word: str,
    vocab: Vocabulary,
    cache: SplitCache | None = None,
    max_len: int = DEFAULT_MAX_WORD_LEN,
) -> list[str] | None:
    """Highest-scoring segmentation whose every token is in the vocabulary.

    Score is the sum of raw token frequencies; ties prefer fewer tokens, then
    the earliest segmentation in enumeration order. Returns None (unknown) when
    no token-covered segmentation exists or the word is longer than max_len.
    """
    if cache is not None:
        hit = cache.splits.get(word, _MISS)
        if hit is not _MISS:
            return hit

    if len(word) > max_len or not word:
        result = None
    else:
        bound = cache.piece_bound if cache is not None else None
        if bound is None:
            bound = _longest_piece(vocab)
            if cache is not None:
                cache.piece_bound = bound
        result = _best_split_dp(word, vocab, bound)

    if cache is not None:
        cache.splits[word] = result
    return result


_MISS = object()


def _longest_piece(vocab: Vocabulary) -> int:
    """Character length of the longest vocabulary token, marker excluded."""
    longest = 0
    for token in vocab.specials:
        longest = max(longest, len(strip_marker(token)))
    for token, _ in vocab.entries:
        longest = max(longest, len(strip_marker(token)))
    return longest


def _best_split_dp(word: str, vocab: Vocabulary, piece_bound: int) -> list[str] | None:
    if piece_bound == 0:
        return None
    n = len(word)
    # best[i]: optimal (score, token_count, cut_mask, first_cut) for word[i:],
    # where cut_mask bit p means a cut after character p. Minimizing the mask
    # reproduces the enumeration-order tie-break.
    best: list[tuple[int, int, int, int] | None] = [None] * (n + 1)
    best[n] = (0, 0, 0, n)

    for i in range(n - 1, -1, -1):
        chosen = None
        for j in range(i + 1, min(n, i + piece_bound) + 1):
            rest = best[j]
            if rest is None:
                continue
            piece = word[i:j]
            token = piece if i == 0 else CONTINUATION + piece
            if token not in vocab:
                continue
            score = vocab.frequency_of(token) + rest[0]
            count = 1 + rest[1]
            mask = rest[2] | (1 << (j - 1)) if j < n else rest[2]
            candidate = (score, count, mask, j)
            if chosen is None or _beats(candidate, chosen):
                chosen = candidate
        best[i] = chosen

    if best[0] is None:
        return None
    tokens = []
    i = 0
    while i < n:
        j = best[i][3]
        piece = word[i:j]
        tokens.append(piece if i == 0 else CONTINUATION + piece)
        i = j
    return tokens


def _beats(a: tuple, b: tuple) -> bool:
    if a[0] != b[0]:
        return a[0] > b[0]
    if a[1] != b[1]:
        return a[1] < b[1]
    return a[2] < b[2]
