"""Shared fixtures: small hand corpora plus one large generated Arabic corpus."""

import random
import time

import pytest

from artok import KINDS, train
from artok.segmenters import DEFAULT_PREFIXES, DEFAULT_SUFFIXES

# 28 basic Arabic letters; six of them never join forward.
LETTERS = "ابتثجحخدذرزسشصضطظعغفقكلمنهوي"

GENERATOR_SEED = 20260821
BIG_CORPUS_MIN_BYTES = 10 * 1024 * 1024
BIG_VOCAB_SIZE = 10_000


def make_words(rng: random.Random, count: int, min_len: int = 2, max_len: int = 8) -> list[str]:
    """Distinct random letter strings, handy as synthetic vocabulary material."""
    words = set()
    while len(words) < count:
        length = rng.randint(min_len, max_len)
        words.add("".join(rng.choice(LETTERS) for _ in range(length)))
    return sorted(words)


def write_big_corpus(path) -> int:
    """Generate at least 10 MB of synthetic Arabic text with a Zipf-like shape.

    Word types are random stems optionally wrapped in the standard affixes, so
    every tokenizer kind finds structure to exploit. A flat-ish Zipf exponent
    keeps whole-word coverage at 10K types well below one, which separates the
    tokenizers' compression factors. Fully deterministic for a fixed seed.
    """
    rng = random.Random(GENERATOR_SEED)
    stems = make_words(rng, 30_000, min_len=5, max_len=8)

    types = set(stems)
    for stem in stems:
        for _ in range(rng.randint(1, 4)):
            prefix = rng.choice(DEFAULT_PREFIXES + ("",))
            suffix = rng.choice(DEFAULT_SUFFIXES + ("",))
            types.add(prefix + stem + suffix)
    population = sorted(types)
    rng.shuffle(population)

    weights = [1.0 / (rank + 1) ** 0.8 for rank in range(len(population))]
    cum_weights = []
    running = 0.0
    for weight in weights:
        running += weight
        cum_weights.append(running)

    written = 0
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        while written < BIG_CORPUS_MIN_BYTES:
            words = rng.choices(population, cum_weights=cum_weights, k=rng.randint(8, 12))
            line = " ".join(words) + "\n"
            fh.write(line)
            written += len(line.encode("utf-8"))
    return written


@pytest.fixture(scope="session")
def big_corpus(tmp_path_factory):
    path = tmp_path_factory.mktemp("bigcorpus") / "arabic_10mb.txt"
    write_big_corpus(path)
    return path


@pytest.fixture(scope="session")
def big_models(big_corpus):
    """All six kinds trained at the 10K vocabulary size, with the wall time."""
    started = time.perf_counter()
    models = {
        kind: train(kind, big_corpus, BIG_VOCAB_SIZE, seed=11) for kind in KINDS
    }
    return {"models": models, "train_seconds": time.perf_counter() - started}


@pytest.fixture
def tiny_corpus(tmp_path):
    """Three short repeated lines; word frequencies are easy to hand-count."""
    path = tmp_path / "tiny.txt"
    text = "الشباب يحب الجمال\nزورق صنع في بحر\nالشباب في زورق\n"
    path.write_text(text * 5, encoding="utf-8")
    return path
