"""Detecting isometric lineation from peaks of delta-Q_n at a line length and its multiples.

A text composed in lines of L syllables has a forced word boundary L
syllables after every line start, so Q_L, Q_2L, ... rise above the flat
level q.  Prose shows no such series.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

from .corpus import SyllableSequence
from .deviation import DeviationReport
from .errors import ConfigurationError, DomainError

MIN_N_MAX = 24
DEFAULT_CANDIDATES = tuple(range(4, 15))
# prose shows a depression at n=2 that says nothing about lines
DEFAULT_EXCLUDED = (2,)
PEAK_Z = 3.0

ISOMETRIC = "isometric"
MULTI_LENGTH = "multi-length"
NONE = "none"

# line-length mix of a blank-verse long poem: ten-syllable lines dominate,
# eleven and twelve fill most of the rest
BLANK_VERSE_MIX = {10: 0.775, 11: 0.194, 12: 0.023}
BLANK_VERSE_WORDS = 57_570
BLANK_VERSE_Q = 0.714


@dataclass(frozen=True)
class Candidate:
    length: int
    score: float
    z_at_length: float
    z_at_double: float
    qualifies: bool


@dataclass(frozen=True)
class LineationReport:
    candidates: tuple[Candidate, ...]
    peaks: Mapping[int, tuple[tuple[int, bool], ...]]
    verdict: str
    core_length: int | None
    core_lengths: tuple[int, ...] = field(default_factory=tuple)

    @property
    def candidate_lengths(self) -> list[tuple[int, float]]:
        return [(c.length, c.score) for c in self.candidates]

    def candidate(self, length: int) -> Candidate:
        return next(c for c in self.candidates if c.length == length)

    def to_dict(self) -> dict:
        def num(x: float):
            return float(x) if np.isfinite(x) else None

        return {
            "verdict": self.verdict,
            "core_length": self.core_length,
            "core_lengths": list(self.core_lengths),
            "candidates": [
                {"L": c.length, "score": num(c.score), "z_at_L": num(c.z_at_length),
                 "z_at_2L": num(c.z_at_double), "qualifies": c.qualifies}
                for c in self.candidates
            ],
            "peaks": {str(L): [{"n": n, "flag": f} for n, f in peaks] for L, peaks in self.peaks.items()},
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["L", "score", "z_at_L", "z_at_2L"])
        for c in self.candidates:
            writer.writerow([c.length, repr(c.score), repr(c.z_at_length), repr(c.z_at_double)])
        return buf.getvalue()


def detect_lineation(
    report: DeviationReport,
    n_max: int | None = None,
    candidates: Iterable[int] = DEFAULT_CANDIDATES,
    excluded: Iterable[int] = DEFAULT_EXCLUDED,
    threshold: float = PEAK_Z,
) -> LineationReport:
    """Score candidate line lengths by their harmonic-weighted series of positive peaks.

    score(L) = sum over multiples mL <= n_max of max(0, z(mL)) / m, where
    z(n) = delta_Q_n / sigma_Q_n.  L qualifies when z(L) > threshold and
    z(2L) > threshold.  The verdict is ``multi-length`` if two qualifying
    lengths are not multiples of one another, ``isometric`` if the
    top-scoring length qualifies, else ``none``.
    """
    n_max = report.n_max if n_max is None else n_max
    if n_max < MIN_N_MAX:
        raise ConfigurationError(f"lineation needs n_max >= {MIN_N_MAX} to see two multiples, got {n_max}")
    if n_max > report.n_max:
        raise ConfigurationError(f"n_max={n_max} exceeds the report's n_max={report.n_max}")
    skip = set(excluded)
    z = report.z()

    scored = []
    peaks = {}
    for L in sorted(set(candidates)):
        if L < 1:
            raise ConfigurationError(f"candidate length must be >= 1, got {L}")
        multiples = [(m, m * L) for m in range(1, n_max // L + 1) if m * L not in skip]
        score = sum(max(0.0, z[n]) / m for m, n in multiples)
        zL = z[L] if L <= n_max else np.nan
        z2L = z[2 * L] if 2 * L <= n_max else np.nan
        qualifies = bool(2 * L <= n_max and zL > threshold and z2L > threshold)
        scored.append(Candidate(L, float(score), float(zL), float(z2L), qualifies))
        peaks[L] = tuple((n, bool(z[n] > threshold)) for _, n in multiples)

    qualifying = [c.length for c in scored if c.qualifies]
    primitive = tuple(L for L in qualifying if not any(L != M and L % M == 0 for M in qualifying))
    # first maximum wins, so ties go to the shorter length
    best = max(scored, key=lambda c: c.score) if scored else None

    if len(primitive) >= 2:
        verdict = MULTI_LENGTH
        core = best.length if best.qualifies else primitive[0]
    elif best is not None and best.qualifies:
        verdict, core = ISOMETRIC, best.length
    else:
        verdict, core = NONE, None
    return LineationReport(tuple(scored), peaks, verdict, core, primitive)


def simulate_verse(
    word_total: int = BLANK_VERSE_WORDS,
    line_mix: Mapping[int, float] = BLANK_VERSE_MIX,
    q: float = BLANK_VERSE_Q,
    seed: int | None = 0,
) -> SyllableSequence:
    """Synthetic lineated text.

    Each line length is drawn from ``line_mix`` (weights are renormalized)
    and filled with geometric(q) word lengths conditioned, by rejection, to
    sum exactly to the line length.  Lines are generated until ``word_total``
    words exist; the last line is cut at that point.
    """
    if not (0.0 < q <= 1.0):
        raise DomainError(f"q must lie in (0, 1], got {q}")
    if word_total < 1:
        raise DomainError("word_total must be >= 1")
    lengths = np.array(sorted(line_mix), dtype=np.int64)
    weights = np.array([line_mix[L] for L in lengths], dtype=float)
    if lengths.size == 0 or (lengths < 1).any() or (weights < 0).any() or weights.sum() <= 0:
        raise DomainError(f"bad line mix {dict(line_mix)!r}")
    weights = weights / weights.sum()
    rng = np.random.default_rng(seed)
    words: list[int] = []
    while len(words) < word_total:
        target = int(rng.choice(lengths, p=weights))
        while True:
            draw = rng.geometric(q, size=target)
            sums = np.cumsum(draw)
            hit = np.searchsorted(sums, target)
            if hit < target and sums[hit] == target:
                words.extend(draw[: hit + 1].tolist())
                break
    return SyllableSequence(np.array(words[:word_total], dtype=np.int64))
