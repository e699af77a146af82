"""Counting word strings that total exactly n syllables.

``L[n, k]`` is the number of windows of k consecutive words whose syllable
counts sum to n.  With the periodic boundary the text is treated as a ring
(every start position yields a window for every k); with the Dirichlet
boundary windows stop at the last word.
"""

from __future__ import annotations

import csv
import enum
import io
from dataclasses import dataclass

import numpy as np

from .corpus import SyllableSequence
from .errors import ConfigurationError, EmptyInputError
from .model import LengthDistribution

DEFAULT_N_MAX = 30


class Boundary(str, enum.Enum):
    PERIODIC = "periodic"
    DIRICHLET = "dirichlet"

    @classmethod
    def parse(cls, value: "str | Boundary") -> "Boundary":
        return value if isinstance(value, cls) else cls(str(value).lower())


@dataclass(frozen=True)
class MatchTable:
    """Exact integer counts ``counts[n, k]`` for 0 <= n <= n_max, 0 <= k <= k_max.

    Row 0 and column 0 are always zero; they exist so indices match n and k.
    """

    counts: np.ndarray
    word_total: int
    boundary: Boundary = Boundary.PERIODIC

    def __post_init__(self):
        counts = np.array(self.counts, dtype=np.int64)
        counts.setflags(write=False)
        object.__setattr__(self, "counts", counts)

    @property
    def n_max(self) -> int:
        return self.counts.shape[0] - 1

    @property
    def k_max(self) -> int:
        return self.counts.shape[1] - 1

    @property
    def marginals(self) -> np.ndarray:
        """L_n = sum over k of L_{n,k}; index 0 unused."""
        return self.counts.sum(axis=1)

    def L(self, n: int, k: int | None = None) -> int:
        if k is None:
            return int(self.marginals[n])
        return int(self.counts[n, k])

    def __add__(self, other: "MatchTable") -> "MatchTable":
        # merging partial tables over disjoint start positions of one sequence
        if self.counts.shape != other.counts.shape or self.boundary is not other.boundary:
            raise ConfigurationError("tables differ in shape or boundary mode")
        return MatchTable(self.counts + other.counts, self.word_total, self.boundary)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["n"] + [f"L_n{k}" for k in range(1, self.k_max + 1)] + ["L_n"])
        marg = self.marginals
        for n in range(1, self.n_max + 1):
            writer.writerow([n] + self.counts[n, 1:].tolist() + [int(marg[n])])
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {
            "boundary": self.boundary.value,
            "word_total": self.word_total,
            "n_max": self.n_max,
            "k_max": self.k_max,
            "counts": self.counts[1:, 1:].tolist(),
            "marginals": self.marginals[1:].tolist(),
        }


def count_matches(
    seq: SyllableSequence,
    n_max: int = DEFAULT_N_MAX,
    k_max: int | None = None,
    bc: str | Boundary = Boundary.PERIODIC,
    starts: slice | None = None,
) -> MatchTable:
    """Count windows of k words summing to n syllables, for n <= n_max, k <= k_max.

    Sliding sums: the k-word window sums are the (k-1)-word sums plus one more
    word, so the whole table costs O(I * k_max).  ``starts`` restricts the
    count to a slice of window start positions; tables over a partition of
    the starts add up to the full table.
    """
    bc = Boundary.parse(bc)
    k_max = n_max if k_max is None else k_max
    if n_max < 1 or not (1 <= k_max <= n_max):
        raise ConfigurationError(f"need n_max >= 1 and 1 <= k_max <= n_max, got n_max={n_max}, k_max={k_max}")
    counts = np.asarray(seq.counts if isinstance(seq, SyllableSequence) else seq, dtype=np.int64)
    size = counts.size
    if size == 0:
        raise EmptyInputError("cannot count matches in an empty sequence")

    table = np.zeros((n_max + 1, k_max + 1), dtype=np.int64)
    idx = np.arange(size)[starts] if starts is not None else np.arange(size)
    if bc is Boundary.DIRICHLET:
        idx = idx[idx < size]
    sums = np.zeros(idx.size, dtype=np.int64)
    whole = starts is None
    for k in range(1, k_max + 1):
        if whole and bc is Boundary.PERIODIC:
            sums += np.roll(counts, -(k - 1))
        elif whole:
            sums = sums[: size - k + 1] + counts[k - 1:]
        elif bc is Boundary.PERIODIC:
            sums += counts[(idx + (k - 1)) % size]
        else:
            keep = idx + (k - 1) < size
            idx, sums = idx[keep], sums[keep]
            sums += counts[idx + (k - 1)]
        if sums.size == 0:
            break
        hits = sums[sums <= n_max]
        if hits.size == 0:
            break  # sums only grow with k
        table[:, k] = np.bincount(hits, minlength=n_max + 1)
    return MatchTable(table, size, bc)


@dataclass(frozen=True)
class FrequencyProfile:
    """P_{n,k} = L_{n,k}/I and Q_n = L_n/I, with q the mean of Q_n over ``q_range``."""

    probabilities: np.ndarray
    frequencies: np.ndarray
    mean_frequency: float
    q_range: tuple[int, int]
    word_total: int

    @property
    def q(self) -> float:
        return self.mean_frequency

    @property
    def n_max(self) -> int:
        return self.frequencies.size - 1

    def Q(self, n: int) -> float:
        return float(self.frequencies[n])

    def to_dict(self) -> dict:
        return {
            "word_total": self.word_total,
            "n_max": self.n_max,
            "q": self.mean_frequency,
            "q_range": list(self.q_range),
            "Q": self.frequencies[1:].tolist(),
            "P": self.probabilities[1:, 1:].tolist(),
        }


def normalize(table: MatchTable, q_range: tuple[int, int] | None = None) -> FrequencyProfile:
    if table.word_total < 1:
        raise EmptyInputError("word total must be >= 1")
    lo, hi = q_range if q_range is not None else (1, min(DEFAULT_N_MAX, table.n_max))
    if not (1 <= lo <= hi <= table.n_max):
        raise ConfigurationError(f"q_range {lo}..{hi} not inside 1..{table.n_max}")
    total = float(table.word_total)
    probs = table.counts / total
    freqs = table.marginals / total
    q = float(freqs[lo:hi + 1].mean())
    for arr in (probs, freqs):
        arr.setflags(write=False)
    return FrequencyProfile(probs, freqs, q, (lo, hi), table.word_total)


def length_histogram(seq: SyllableSequence, n_max: int | None = None) -> LengthDistribution:
    """Empirical p_n = #{i : N_i = n} / I.

    Words longer than ``n_max`` (default: the longest word) go to ``tail``.
    """
    counts = np.asarray(seq.counts if isinstance(seq, SyllableSequence) else seq, dtype=np.int64)
    if counts.size == 0:
        raise EmptyInputError("cannot build a length histogram from an empty sequence")
    n_max = int(counts.max()) if n_max is None else n_max
    hist = np.bincount(counts, minlength=n_max + 1)
    inside = hist[: n_max + 1]
    beyond = int(hist[n_max + 1:].sum())
    size = counts.size
    return LengthDistribution(inside / size, tail=beyond / size, sample_size=size)
