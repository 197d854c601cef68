"""Token-frequency vocabulary with contiguous id assignment and text persistence."""

from __future__ import annotations

import os
from collections.abc import Mapping, Sequence

PAD_TOKEN = "<pad>"
UNK_TOKEN = "<unk>"
DEFAULT_SPECIALS = (PAD_TOKEN, UNK_TOKEN)


class VocabularyFormatError(ValueError):
    """Raised when a vocabulary file cannot be parsed."""


class Vocabulary:
    """Immutable token store: specials on the lowest ids, then entries by frequency.

    Entries are strictly ordered by (frequency descending, token ascending);
    ids are contiguous from 0 with specials first, in their listed order.
    """

    __slots__ = ("specials", "entries", "_token_to_id", "_id_to_token", "_unk_id")

    def __init__(self, specials: Sequence[str], entries: Sequence[tuple[str, int]]):
        specials = tuple(specials)
        entries = tuple((token, int(freq)) for token, freq in entries)

        for token, freq in entries:
            _check_token(token)
            if freq < 1:
                raise ValueError(f"entry {token!r} has frequency {freq}; entries must be >= 1")
        for token in specials:
            _check_token(token)
        for prev, cur in zip(entries, entries[1:]):
            if (-prev[1], prev[0]) >= (-cur[1], cur[0]):
                raise ValueError(
                    f"entries out of order at {cur[0]!r}: must be frequency desc, token asc"
                )

        id_to_token = list(specials) + [token for token, _ in entries]
        token_to_id = {token: i for i, token in enumerate(id_to_token)}
        if len(token_to_id) != len(id_to_token):
            seen: set[str] = set()
            for token in id_to_token:
                if token in seen:
                    raise ValueError(f"duplicate token {token!r}")
                seen.add(token)

        self.specials = specials
        self.entries = entries
        self._token_to_id = token_to_id
        self._id_to_token = id_to_token
        self._unk_id = token_to_id.get(UNK_TOKEN)

    @classmethod
    def build(
        cls,
        freqs: Mapping[str, int],
        vocab_size: int,
        specials: Sequence[str] = DEFAULT_SPECIALS,
    ) -> "Vocabulary":
        """Keep the (vocab_size - len(specials)) most frequent tokens.

        Ties are broken lexicographically so the result is reproducible.
        """
        specials = tuple(specials)
        if vocab_size <= len(specials):
            raise ValueError(
                f"vocab_size {vocab_size} must exceed the {len(specials)} special tokens"
            )
        capacity = vocab_size - len(specials)
        ranked = sorted(freqs.items(), key=lambda kv: (-kv[1], kv[0]))
        return cls(specials, ranked[:capacity])

    def __len__(self) -> int:
        return len(self._id_to_token)

    def __contains__(self, token: str) -> bool:
        return token in self._token_to_id

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Vocabulary):
            return NotImplemented
        return self.specials == other.specials and self.entries == other.entries

    def __hash__(self):
        return hash((self.specials, self.entries))

    def __repr__(self) -> str:
        return f"Vocabulary(specials={len(self.specials)}, entries={len(self.entries)})"

    @property
    def unk_id(self) -> int:
        if self._unk_id is None:
            raise KeyError(f"vocabulary has no {UNK_TOKEN!r} special token")
        return self._unk_id

    def id_of(self, token: str) -> int:
        """The token's id, falling back to the unknown id for absent tokens."""
        idx = self._token_to_id.get(token)
        if idx is not None:
            return idx
        return self.unk_id

    def token_of(self, idx: int) -> str:
        if not 0 <= idx < len(self._id_to_token):
            raise IndexError(f"id {idx} out of range for vocabulary of {len(self)}")
        return self._id_to_token[idx]

    def frequency_of(self, token: str) -> int:
        """Raw training frequency; specials and absent tokens count 0."""
        idx = self._token_to_id.get(token)
        if idx is None or idx < len(self.specials):
            return 0
        return self.entries[idx - len(self.specials)][1]

    def save(self, path: str | os.PathLike) -> None:
        """Write one `token<TAB>frequency` line per token, specials (frequency 0) first."""
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(self.to_text())

    def to_text(self) -> str:
        lines = [f"{token}\t0\n" for token in self.specials]
        lines.extend(f"{token}\t{freq}\n" for token, freq in self.entries)
        return "".join(lines)

    @classmethod
    def load(cls, path: str | os.PathLike) -> "Vocabulary":
        with open(path, "rb") as fh:
            raw_lines = fh.read().splitlines()
        return cls.from_lines(raw_lines, source=os.fspath(path))

    @classmethod
    def from_lines(
        cls,
        raw_lines: Sequence[bytes | str],
        source: str = "<vocab>",
        first_line: int = 1,
    ) -> "Vocabulary":
        """Parse saved vocabulary lines; errors name the offending line number.

        first_line shifts reported line numbers for callers that embed the
        vocabulary below other sections of a file.
        """
        specials: list[str] = []
        entries: list[tuple[str, int]] = []
        seen: set[str] = set()
        in_specials = True

        for lineno, raw in enumerate(raw_lines, start=first_line):
            if isinstance(raw, bytes):
                try:
                    line = raw.decode("utf-8")
                except UnicodeDecodeError as exc:
                    raise VocabularyFormatError(
                        f"{source}: invalid UTF-8, line {lineno}"
                    ) from exc
            else:
                line = raw
            parts = line.split("\t")
            if len(parts) != 2 or not parts[0]:
                raise VocabularyFormatError(f"{source}: malformed line, line {lineno}")
            token, freq_text = parts
            try:
                freq = int(freq_text)
            except ValueError as exc:
                raise VocabularyFormatError(
                    f"{source}: malformed frequency, line {lineno}"
                ) from exc
            if token in seen:
                raise VocabularyFormatError(f"{source}: duplicate token, line {lineno}")
            seen.add(token)

            if freq == 0 and in_specials:
                specials.append(token)
            elif freq >= 1:
                in_specials = False
                entries.append((token, freq))
            else:
                raise VocabularyFormatError(
                    f"{source}: invalid frequency {freq}, line {lineno}"
                )

        if not raw_lines:
            raise VocabularyFormatError(f"{source}: no special tokens declared")

        try:
            return cls(specials, entries)
        except ValueError as exc:
            raise VocabularyFormatError(f"{source}: {exc}") from exc


def _check_token(token: str) -> None:
    if not token:
        raise ValueError("empty string cannot be a token")
    if any(ch.isspace() for ch in token):
        raise ValueError(f"token {token!r} contains whitespace")
