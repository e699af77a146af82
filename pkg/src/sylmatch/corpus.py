"""Corpus ingestion: lexicon files, tokenization, and syllable annotation.

Text becomes a sequence of per-word syllable counts.  Word counts come from a
hand-maintained lexicon; digit strings are read out as English numbers
(cardinals in the long "and" form, plain four-digit years as pairs).
"""

from __future__ import annotations

import enum
import json
import re
import unicodedata
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from types import MappingProxyType
from typing import Callable, Iterable, Iterator, Mapping, Sequence

import numpy as np

from .errors import (
    DomainError,
    LexiconConflictError,
    LexiconParseError,
    UnknownWordError,
)
from .numbers import number_syllables

_HYPHENS = re.compile(r"[-‐‑‒–—―]+")
_GROUPED_DIGITS = re.compile(r"\d{1,3}(?:,\d{3})+")
_DIGITS = re.compile(r"\d+")
_APOSTROPHES = str.maketrans({"’": "'", "‘": "'", "ʼ": "'"})


def normalize_word(text: str) -> str:
    """Case-fold and strip surrounding punctuation; internal apostrophes stay.

    Idempotent: ``normalize_word(normalize_word(s)) == normalize_word(s)``.
    """
    s = unicodedata.normalize("NFC", text).translate(_APOSTROPHES).casefold()
    start, end = 0, len(s)
    while start < end and not s[start].isalnum():
        start += 1
    while end > start and not s[end - 1].isalnum():
        end -= 1
    return s[start:end]


# ---------------------------------------------------------------------------
# Lexicon
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class LexiconEntry:
    wordform: str
    syllables: int

    def __post_init__(self):
        if self.syllables < 1:
            raise DomainError(f"{self.wordform!r}: syllable count must be >= 1, got {self.syllables}")


class Lexicon(Mapping[str, int]):
    """Immutable wordform -> syllable count table."""

    def __init__(self, entries: Mapping[str, int] | Iterable[LexiconEntry] = ()):
        table: dict[str, int] = {}
        items = entries.items() if isinstance(entries, Mapping) else ((e.wordform, e.syllables) for e in entries)
        for raw, count in items:
            word = normalize_word(raw)
            if not word:
                raise DomainError(f"wordform {raw!r} is empty after normalization")
            LexiconEntry(word, int(count))
            if word in table and table[word] != count:
                raise LexiconConflictError(word, table[word], int(count))
            table[word] = int(count)
        self._table = MappingProxyType(table)

    def __getitem__(self, wordform: str) -> int:
        return self._table[normalize_word(wordform)]

    def __contains__(self, wordform: object) -> bool:
        return isinstance(wordform, str) and normalize_word(wordform) in self._table

    def __iter__(self) -> Iterator[str]:
        return iter(self._table)

    def __len__(self) -> int:
        return len(self._table)

    def __repr__(self) -> str:
        return f"Lexicon({len(self)} entries)"

    @property
    def entry_count(self) -> int:
        return len(self._table)

    @property
    def entries(self) -> frozenset[LexiconEntry]:
        return frozenset(LexiconEntry(w, c) for w, c in self._table.items())

    def length_histogram(self) -> dict[int, int]:
        """Number of entries per syllable count, sorted by count."""
        return dict(sorted(Counter(self._table.values()).items()))

    def with_entries(self, additions: Mapping[str, int]) -> "Lexicon":
        merged, conflicts = merge_lexicons(self, Lexicon(additions))
        if conflicts:
            word, a, b = conflicts[0]
            raise LexiconConflictError(word, a, b)
        return merged


def merge_lexicons(first: Lexicon, second: Lexicon) -> tuple[Lexicon, list[tuple[str, int, int]]]:
    """Union of two lexicons.

    Conflicting wordforms keep the count from ``first`` and are reported as
    ``(wordform, first_count, second_count)``.
    """
    table = dict(first.items())
    conflicts = []
    for word, count in second.items():
        if word in table and table[word] != count:
            conflicts.append((word, table[word], count))
            continue
        table[word] = count
    return Lexicon(table), sorted(conflicts)


def _scan_lexicon(lines: Iterable[str]) -> Iterator[tuple[int, str, int | None, str | None]]:
    """Yield ``(line_no, wordform, count, problem)`` for each non-comment line."""
    for line_no, line in enumerate(lines, start=1):
        line = line.rstrip("\r\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) != 2:
            yield line_no, line, None, f"expected 2 tab-separated columns, got {len(cols)}"
            continue
        word = normalize_word(cols[0])
        if not word:
            yield line_no, cols[0], None, "empty wordform"
            continue
        try:
            count = int(cols[1].strip())
        except ValueError:
            yield line_no, word, None, f"syllable count {cols[1]!r} is not an integer"
            continue
        if count < 1:
            yield line_no, word, None, f"syllable count must be >= 1, got {count}"
            continue
        yield line_no, word, count, None


def parse_lexicon(lines: Iterable[str], path: str | None = None) -> Lexicon:
    table: dict[str, int] = {}
    for line_no, word, count, problem in _scan_lexicon(lines):
        if problem:
            raise LexiconParseError(line_no, problem, path)
        if word in table and table[word] != count:
            raise LexiconConflictError(word, table[word], count)
        table[word] = count
    return Lexicon(table)


def load_lexicon(path: str | Path) -> Lexicon:
    path = Path(path)
    with path.open(encoding="utf-8") as fh:
        return parse_lexicon(fh, str(path))


def lint_lexicon(path: str | Path) -> list[str]:
    """All problems found in a lexicon file, one message per problem."""
    path = Path(path)
    problems = []
    seen: dict[str, tuple[int, int]] = {}
    with path.open(encoding="utf-8") as fh:
        for line_no, word, count, problem in _scan_lexicon(fh):
            if problem:
                problems.append(f"{path}:{line_no}: {problem}")
                continue
            if word in seen and seen[word][1] != count:
                first_line, first_count = seen[word]
                problems.append(
                    f"{path}:{line_no}: conflicting syllable counts for {word!r}: "
                    f"{first_count} (line {first_line}) vs {count}"
                )
                continue
            seen.setdefault(word, (line_no, count))
    return problems


def write_lexicon(lexicon: Lexicon, path: str | Path) -> None:
    with Path(path).open("w", encoding="utf-8") as fh:
        for word in sorted(lexicon):
            fh.write(f"{word}\t{lexicon[word]}\n")


# ---------------------------------------------------------------------------
# Tokens
# ---------------------------------------------------------------------------


class TokenKind(str, enum.Enum):
    WORD = "word"
    NUMBER = "number"
    YEAR = "year"
    ABBREVIATION = "abbreviation"


@dataclass(frozen=True)
class Token:
    surface: str
    normalized: str
    kind: TokenKind = TokenKind.WORD

    def __post_init__(self):
        if self.kind is TokenKind.WORD and not self.normalized:
            raise DomainError(f"word token {self.surface!r} has empty normal form")


def _abbreviation_key(text: str) -> str:
    # keep trailing periods: "Mr.," -> "mr."
    s = text.translate(_APOSTROPHES).casefold()
    start = 0
    while start < len(s) and not s[start].isalnum():
        start += 1
    end = len(s)
    while end > start and not (s[end - 1].isalnum() or s[end - 1] == "."):
        end -= 1
    return s[start:end]


def _classify(part: str) -> Token | None:
    core = normalize_word(part)
    if not core:
        return None
    if _GROUPED_DIGITS.fullmatch(core):
        return Token(core, core.replace(",", ""), TokenKind.NUMBER)
    if _DIGITS.fullmatch(core):
        if len(core) == 4 and 1000 <= int(core) <= 2099:
            return Token(core, core, TokenKind.YEAR)
        return Token(core, core, TokenKind.NUMBER)
    # surface keeps original case, minus surrounding punctuation
    lo = part.casefold().translate(_APOSTROPHES).find(core[0])
    surface = part[lo:lo + len(core)] if lo >= 0 else core
    return Token(surface, core, TokenKind.WORD)


def tokenize(text: str, abbreviations: Mapping[str, str] | None = None) -> list[Token]:
    """Split text into word, number, year and abbreviation tokens.

    Hyphenated forms are split into their parts.  A four-digit integer in
    1000-2099 standing on its own is a year; comma-grouped or other digit
    strings are numbers.
    """
    abbrevs = {_abbreviation_key(k): v for k, v in (abbreviations or {}).items()}
    tokens: list[Token] = []
    for chunk in text.split():
        if abbrevs:
            key = _abbreviation_key(chunk)
            if key in abbrevs or key.rstrip(".") in abbrevs:
                key = key if key in abbrevs else key.rstrip(".")
                tokens.append(Token(chunk, key, TokenKind.ABBREVIATION))
                continue
        for part in _HYPHENS.split(chunk):
            token = _classify(part)
            if token is not None:
                tokens.append(token)
    return tokens


def detokenize(tokens: Sequence[Token]) -> str:
    return " ".join(t.surface for t in tokens)


def load_abbreviations(path: str | Path) -> dict[str, str]:
    """Read an ``abbreviation<TAB>expansion`` table; ``#`` lines are comments."""
    table = {}
    with Path(path).open(encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.rstrip("\r\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            cols = line.split("\t")
            if len(cols) != 2 or not cols[1].strip():
                raise LexiconParseError(line_no, "expected 'abbreviation<TAB>expansion'", str(path))
            table[_abbreviation_key(cols[0])] = cols[1].strip()
    return table


def expand_abbreviations(tokens: Sequence[Token], table: Mapping[str, str]) -> list[Token]:
    """Replace abbreviation tokens by the word tokens of their expansion."""
    keyed = {_abbreviation_key(k): v for k, v in table.items()}
    out: list[Token] = []
    for token in tokens:
        if token.kind is TokenKind.ABBREVIATION and token.normalized in keyed:
            out.extend(tokenize(keyed[token.normalized]))
        else:
            out.append(token)
    return out


def syllabify_number(token: Token) -> int:
    """Syllables in the spoken reading of a number or year token."""
    if token.kind not in (TokenKind.NUMBER, TokenKind.YEAR):
        raise DomainError(f"token {token.surface!r} is a {token.kind.value}, not a number")
    return number_syllables(int(token.normalized), year=token.kind is TokenKind.YEAR)


# ---------------------------------------------------------------------------
# Annotation
# ---------------------------------------------------------------------------


class UnknownPolicy(str, enum.Enum):
    ERROR = "error"
    LOG_SKIP = "log_skip"
    INTERACTIVE = "interactive"

    @classmethod
    def parse(cls, value: "str | UnknownPolicy") -> "UnknownPolicy":
        if isinstance(value, cls):
            return value
        return cls(str(value).replace("-", "_"))


Resolver = Callable[[Token, int], "int | None"]


@dataclass(frozen=True)
class SyllableSequence:
    """Per-word syllable counts N_i in text order."""

    counts: np.ndarray
    unknown_log: tuple[tuple[int, str], ...] = ()
    resolved: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self):
        counts = np.asarray(self.counts, dtype=np.int64).reshape(-1)
        if counts.size and counts.min() < 1:
            raise DomainError("syllable counts must all be >= 1")
        counts.setflags(write=False)
        object.__setattr__(self, "counts", counts)
        object.__setattr__(self, "unknown_log", tuple((int(p), str(s)) for p, s in self.unknown_log))
        object.__setattr__(self, "resolved", MappingProxyType(dict(self.resolved)))

    @property
    def word_total(self) -> int:
        return int(self.counts.size)

    def __len__(self) -> int:
        return self.word_total

    @classmethod
    def concatenate(cls, parts: Iterable["SyllableSequence"]) -> "SyllableSequence":
        # unknown positions are per-input token indices, so they are not carried over
        parts = list(parts)
        if not parts:
            return cls(np.zeros(0, dtype=np.int64))
        return cls(np.concatenate([p.counts for p in parts]))

    def unknown_report(self) -> list[dict]:
        return [{"position": p, "surface": s} for p, s in self.unknown_log]

    def unknown_report_json(self) -> str:
        return json.dumps(self.unknown_report(), ensure_ascii=False, indent=2)


def annotate(
    tokens: Sequence[Token],
    lexicon: Mapping[str, int],
    unknown_policy: str | UnknownPolicy = UnknownPolicy.LOG_SKIP,
    resolver: Resolver | None = None,
) -> SyllableSequence:
    """Map tokens to syllable counts.

    Under ``log_skip`` unknown words are dropped and recorded as
    ``(token_position, surface)``; under ``error`` the first unknown raises
    :class:`UnknownWordError`; under ``interactive`` ``resolver(token, position)``
    supplies the count (``None`` means skip and log).  Resolved forms are
    reused for later occurrences and returned in ``SyllableSequence.resolved``.
    """
    policy = UnknownPolicy.parse(unknown_policy)
    if policy is UnknownPolicy.INTERACTIVE and resolver is None:
        raise DomainError("interactive policy needs a resolver")
    counts: list[int] = []
    unknowns: list[tuple[int, str]] = []
    resolved: dict[str, int] = {}
    for pos, token in enumerate(tokens):
        if token.kind in (TokenKind.NUMBER, TokenKind.YEAR):
            counts.append(syllabify_number(token))
            continue
        key = token.normalized.rstrip(".") if token.kind is TokenKind.ABBREVIATION else token.normalized
        key = normalize_word(key)
        count = lexicon.get(key) if key else None
        if count is None:
            count = resolved.get(key)
        if count is None:
            if policy is UnknownPolicy.ERROR:
                raise UnknownWordError(token.surface, pos)
            if policy is UnknownPolicy.INTERACTIVE:
                answer = resolver(token, pos)
                if answer is not None:
                    if int(answer) < 1:
                        raise DomainError(f"resolver gave {answer} syllables for {token.surface!r}")
                    count = resolved[key] = int(answer)
            if count is None:
                unknowns.append((pos, token.surface))
                continue
        counts.append(int(count))
    return SyllableSequence(np.array(counts, dtype=np.int64), tuple(unknowns), resolved)


def read_sequence(path: str | Path) -> SyllableSequence:
    """Load a plain syllable-count file (whitespace-separated integers)."""
    text = Path(path).read_text(encoding="utf-8")
    return SyllableSequence(np.array([int(v) for v in text.split()], dtype=np.int64))


def write_sequence(seq: SyllableSequence, path: str | Path, per_line: int = 20) -> None:
    counts = seq.counts.tolist()
    with Path(path).open("w", encoding="utf-8") as fh:
        for i in range(0, len(counts), per_line):
            fh.write(" ".join(map(str, counts[i:i + per_line])) + "\n")
