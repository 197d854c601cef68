"""Arabic tokenization toolkit: six trainable tokenizers with unsupervised evaluation."""

from .corpus import (
    CorpusStats,
    NO_NORMALIZATION,
    NormalizationOptions,
    iter_words,
    normalize,
    scan_corpus,
)
from .evaluation import (
    CompressionReport,
    SpeedReport,
    benchmark_encode,
    benchmark_train,
    compression_factor,
    token_cost,
)
from .segmenters import (
    AffixTables,
    DEFAULT_AFFIXES,
    NON_JOINING_LETTERS,
    segment_affixes,
    segment_character,
    segment_disjoint,
    stochastic_ngrams,
)
from .splitter import (
    CONTINUATION,
    DEFAULT_MAX_WORD_LEN,
    SplitCache,
    WordTooLongError,
    best_split,
    enumerate_segmentations,
)
from .tokenizers import (
    KINDS,
    ModelFormatError,
    TokenizerModel,
    apply_merges,
    decode,
    detokenize,
    encode,
    learn_bpe_merges,
    load_model,
    save_model,
    segment_word,
    tokenize,
    train,
)
from .vocabulary import (
    DEFAULT_SPECIALS,
    PAD_TOKEN,
    UNK_TOKEN,
    Vocabulary,
    VocabularyFormatError,
)

__version__ = "0.1.0"

__all__ = [
    "AffixTables",
    "CompressionReport",
    "CONTINUATION",
    "CorpusStats",
    "DEFAULT_AFFIXES",
    "DEFAULT_MAX_WORD_LEN",
    "DEFAULT_SPECIALS",
    "KINDS",
    "ModelFormatError",
    "NON_JOINING_LETTERS",
    "NO_NORMALIZATION",
    "NormalizationOptions",
    "PAD_TOKEN",
    "SpeedReport",
    "SplitCache",
    "TokenizerModel",
    "UNK_TOKEN",
    "Vocabulary",
    "VocabularyFormatError",
    "WordTooLongError",
    "apply_merges",
    "benchmark_encode",
    "benchmark_train",
    "best_split",
    "compression_factor",
    "decode",
    "detokenize",
    "encode",
    "enumerate_segmentations",
    "iter_words",
    "learn_bpe_merges",
    "load_model",
    "normalize",
    "save_model",
    "scan_corpus",
    "segment_affixes",
    "segment_character",
    "segment_disjoint",
    "segment_word",
    "stochastic_ngrams",
    "token_cost",
    "tokenize",
    "train",
]
