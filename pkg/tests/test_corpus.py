"""Corpus scanning and normalization."""

from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from artok.corpus import (
    NO_NORMALIZATION,
    CorpusStats,
    NormalizationOptions,
    iter_words,
    normalize,
    scan_corpus,
)


class TestNormalize:
    def test_diacritics_stripped(self):
        options = NormalizationOptions(strip_diacritics=True)
        assert normalize("كَتَبَ", options) == "كتب"
        assert normalize("مُدَرِّسٌ", options) == "مدرس"

    def test_superscript_alef_is_a_diacritic(self):
        options = NormalizationOptions(strip_diacritics=True)
        assert normalize("رحمٰن", options) == "رحمن"

    def test_tatweel_stripped(self):
        options = NormalizationOptions(strip_tatweel=True)
        assert normalize("كـــتاب", options) == "كتاب"

    def test_whitespace_collapsed(self):
        options = NormalizationOptions(collapse_whitespace=True)
        assert normalize("اب  جد\tهز", options) == "اب جد هز"

    def test_noop_returns_text_unchanged(self):
        text = "كَتَبَ  في الـبحر"
        assert normalize(text, NO_NORMALIZATION) == text

    def test_options_compose(self):
        options = NormalizationOptions(
            strip_diacritics=True, strip_tatweel=True, collapse_whitespace=True
        )
        assert normalize("كَـتَبَ  اليوم", options) == "كتب اليوم"

    def test_is_noop(self):
        assert NO_NORMALIZATION.is_noop()
        assert not NormalizationOptions(strip_tatweel=True).is_noop()


class TestIterWords:
    def test_splits_on_any_whitespace(self):
        assert list(iter_words("اب\tجد\nهز  وط")) == ["اب", "جد", "هز", "وط"]

    def test_empty_text(self):
        assert list(iter_words("")) == []
        assert list(iter_words("  \n\t")) == []


class TestScanCorpus:
    def test_hand_counted_frequencies(self, tmp_path):
        path = tmp_path / "c.txt"
        path.write_text("اب اج اب\nاب اج\n", encoding="utf-8")
        freqs, stats = scan_corpus(path)
        assert freqs == Counter({"اب": 3, "اج": 2})
        assert stats == CorpusStats(word_count=5, unique_word_count=2, char_count=10)

    def test_empty_file(self, tmp_path):
        path = tmp_path / "empty.txt"
        path.write_text("", encoding="utf-8")
        freqs, stats = scan_corpus(path)
        assert freqs == Counter()
        assert stats == CorpusStats(0, 0, 0)

    def test_normalization_applied_before_counting(self, tmp_path):
        path = tmp_path / "c.txt"
        path.write_text("كَتَبَ كتب\n", encoding="utf-8")
        freqs, _ = scan_corpus(path, NormalizationOptions(strip_diacritics=True))
        assert freqs == Counter({"كتب": 2})

    @pytest.mark.parametrize("chunk_size", [1, 2, 3, 7, 16, 64, 1024])
    def test_chunk_size_never_changes_the_result(self, tmp_path, chunk_size):
        path = tmp_path / "c.txt"
        path.write_text("اب اج اب\nطويلة قصيرة طويلة\nاب\n" * 4, encoding="utf-8")
        base_freqs, base_stats = scan_corpus(path)
        freqs, stats = scan_corpus(path, chunk_size=chunk_size)
        assert freqs == base_freqs
        assert stats == base_stats

    @pytest.mark.parametrize("workers", [2, 3])
    def test_workers_never_change_the_result(self, tmp_path, workers):
        path = tmp_path / "c.txt"
        path.write_text("اب اج اب\nطويلة قصيرة طويلة\nاب\n" * 20, encoding="utf-8")
        base_freqs, base_stats = scan_corpus(path)
        freqs, stats = scan_corpus(path, chunk_size=32, workers=workers)
        assert freqs == base_freqs
        assert stats == base_stats

    def test_word_straddling_a_chunk_boundary_stays_whole(self, tmp_path):
        path = tmp_path / "c.txt"
        # the 8-byte chunk boundary lands inside the second word
        path.write_text("اب جدهزوط اب\n", encoding="utf-8")
        freqs, _ = scan_corpus(path, chunk_size=8)
        assert freqs == Counter({"اب": 2, "جدهزوط": 1})

    def test_invalid_utf8_names_the_byte_offset(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_bytes("اب ".encode("utf-8") + b"\xff\xfe" + b" done\n")
        with pytest.raises(ValueError, match="invalid UTF-8 at byte offset 5"):
            scan_corpus(path)

    def test_missing_file_raises(self, tmp_path):
        with pytest.raises(OSError):
            scan_corpus(tmp_path / "absent.txt")

    def test_chunk_size_must_be_positive(self, tmp_path):
        path = tmp_path / "c.txt"
        path.write_text("اب\n", encoding="utf-8")
        with pytest.raises(ValueError):
            scan_corpus(path, chunk_size=0)
        with pytest.raises(ValueError):
            scan_corpus(path, workers=0)

    @settings(max_examples=60, deadline=None)
    @given(
        text=st.text(
            alphabet=st.sampled_from("اب ج\nد\t"),
            max_size=120,
        ),
        chunk_size=st.integers(min_value=1, max_value=40),
    )
    def test_matches_python_split_for_any_text(self, tmp_path_factory, text, chunk_size):
        path = tmp_path_factory.mktemp("prop") / "c.txt"
        path.write_text(text, encoding="utf-8")
        freqs, stats = scan_corpus(path, chunk_size=chunk_size)
        words = text.split()
        assert freqs == Counter(words)
        assert stats.word_count == len(words)
        assert stats.unique_word_count == len(set(words))
        assert stats.char_count == sum(len(w) for w in words)
