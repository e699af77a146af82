"""Statistical error bands and deviations from the random-ordering geometric structure."""

from __future__ import annotations

import csv
import io
import itertools
import math
from dataclasses import dataclass

import numpy as np
from scipy import stats

from .corpus import SyllableSequence
from .errors import ConfigurationError, ConsistencyError, EmptyInputError
from .matching import DEFAULT_N_MAX, Boundary, FrequencyProfile
from .model import GeometricModel, LengthDistribution

SIGMA_MULTIPLIER = 3.0
MIN_ROW_FOR_TESTS = 30


def probability_error_band(P: float, I: int, multiplier: float = SIGMA_MULTIPLIER) -> tuple[float, float]:
    """Binomial band P -/+ multiplier * sqrt(P (1 - P) / I)."""
    half = multiplier * math.sqrt(P * (1.0 - P) / I)
    return P - half, P + half


def frequency_sigma(Q: float, I: int) -> float:
    """Standard error sqrt(Q/I) of a frequency Q_n.

    The summands L_{n,k} of L_n are treated as independent counts, each with
    variance roughly equal to itself, so Var(L_n) ~ L_n.
    """
    return math.sqrt(Q / I)


def q_interval(q: float, I: int, multiplier: float = SIGMA_MULTIPLIER) -> tuple[float, float]:
    # sigma_q is taken as a single Q_n's sigma, not divided by sqrt(#points)
    s = frequency_sigma(q, I)
    return q - multiplier * s, q + multiplier * s


# ---------------------------------------------------------------------------
# Bigram matrix
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BigramMatrix:
    """``counts[m, n]``: n-syllable words immediately after m-syllable words."""

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
    def row_totals(self) -> np.ndarray:
        return self.counts.sum(axis=1)

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    def conditional(self) -> np.ndarray:
        """p_{n,m} = counts[m, n] / row total; rows with no data are zero."""
        rows = self.row_totals.astype(float)
        out = np.zeros(self.counts.shape)
        nz = rows > 0
        out[nz] = self.counts[nz] / rows[nz, None]
        return out

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["m"] + [f"n{n}" for n in range(1, self.n_max + 1)] + ["total"])
        rows = self.row_totals
        for m in range(1, self.n_max + 1):
            writer.writerow([m] + self.counts[m, 1:].tolist() + [int(rows[m])])
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {
            "boundary": self.boundary.value,
            "word_total": self.word_total,
            "n_max": self.n_max,
            "counts": self.counts[1:, 1:].tolist(),
        }


def bigram_matrix(
    seq: SyllableSequence,
    n_max: int = DEFAULT_N_MAX,
    bc: str | Boundary = Boundary.PERIODIC,
) -> BigramMatrix:
    bc = Boundary.parse(bc)
    counts = np.asarray(seq.counts if isinstance(seq, SyllableSequence) else seq, dtype=np.int64)
    if counts.size == 0:
        raise EmptyInputError("cannot build a bigram matrix from an empty sequence")
    first = counts
    second = np.roll(counts, -1)
    if bc is Boundary.DIRICHLET:
        first, second = first[:-1], second[:-1]
    keep = (first <= n_max) & (second <= n_max)
    side = n_max + 1
    flat = np.bincount(first[keep] * side + second[keep], minlength=side * side)
    return BigramMatrix(flat.reshape(side, side), int(counts.size), bc)


@dataclass(frozen=True)
class IndependenceTest:
    """Per-cell z-scores of p_{n,m} against p_n, plus a chi-square aggregate.

    ``z[m, n]`` is NaN where undefined (empty row m, or p_n in {0, 1}).
    ``expected[m, n]`` is the count R_m p_n that independence predicts.
    """

    z: np.ndarray
    row_totals: np.ndarray
    expected: np.ndarray
    chi2: float
    dof: int
    p_value: float

    def cells(self, min_row: int = MIN_ROW_FOR_TESTS, min_expected: float = 0.0) -> np.ndarray:
        """Finite z-scores in rows with at least ``min_row`` observations.

        ``min_expected`` also drops cells whose expected count is below it;
        a single stray hit in a cell expecting 0.01 gives |z| near 10.
        """
        keep = (self.row_totals[:, None] >= min_row) & (self.expected >= min_expected) & np.isfinite(self.z)
        return self.z[keep]

    def fraction_within(self, limit: float = 4.0, min_row: int = MIN_ROW_FOR_TESTS,
                        min_expected: float = 0.0) -> float:
        cells = self.cells(min_row, min_expected)
        return float(np.mean(np.abs(cells) < limit)) if cells.size else 1.0

    def to_dict(self) -> dict:
        z = [[None if not np.isfinite(v) else float(v) for v in row[1:]] for row in self.z[1:]]
        return {"z": z, "row_totals": self.row_totals[1:].tolist(), "chi2": self.chi2,
                "dof": self.dof, "p_value": self.p_value}


def ordering_independence_test(bigram: BigramMatrix, p: LengthDistribution) -> IndependenceTest:
    """z[m, n] = (p_{n,m} - p_n) / sqrt(p_n (1 - p_n) / R_m) with R_m the row total."""
    side = bigram.n_max + 1
    pn = np.zeros(side)
    m = min(side - 1, p.n_max)
    pn[: m + 1] = p.probs[: m + 1]
    rows = bigram.row_totals
    cond = bigram.conditional()
    z = np.full((side, side), np.nan)
    with np.errstate(divide="ignore", invalid="ignore"):
        se = np.sqrt(pn[None, :] * (1.0 - pn[None, :]) / rows[:, None])
        valid = (rows[:, None] > 0) & (pn[None, :] > 0) & (pn[None, :] < 1)
        z[valid] = ((cond - pn[None, :]) / se)[valid]
    z[0, :] = np.nan
    z[:, 0] = np.nan

    table = bigram.counts[rows > 0][:, bigram.counts.sum(axis=0) > 0]
    if table.shape[0] >= 2 and table.shape[1] >= 2:
        chi2, p_value, dof, _ = stats.chi2_contingency(table, correction=False)
    else:
        chi2, p_value, dof = 0.0, 1.0, 0
    expected = rows[:, None] * pn[None, :]
    return IndependenceTest(z, rows, expected, float(chi2), int(dof), float(p_value))


# ---------------------------------------------------------------------------
# Deviation report
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DeviationReport:
    """Deviations of Q_n from flat q and of p_n from the geometric model.

    Arrays are indexed by n (index 0 unused).  ``flags[n]`` is true iff
    |delta_Q[n]| > multiplier * sigma_Q[n].
    """

    Q: np.ndarray
    q: float
    delta_Q: np.ndarray
    sigma_Q: np.ndarray
    q_sigma: float
    flags: np.ndarray
    p: np.ndarray
    p_geom: np.ndarray
    p_resid_geom: np.ndarray
    p_resid_order: np.ndarray
    p_flags: np.ndarray
    word_total: int
    multiplier: float = SIGMA_MULTIPLIER

    @property
    def n_max(self) -> int:
        return self.Q.size - 1

    def z(self) -> np.ndarray:
        """delta_Q / sigma_Q; +/-inf where sigma is zero but delta is not."""
        with np.errstate(divide="ignore", invalid="ignore"):
            z = self.delta_Q / self.sigma_Q
        z[(self.sigma_Q == 0) & (self.delta_Q == 0)] = 0.0
        z[0] = 0.0
        return z

    def flagged(self) -> list[int]:
        return [int(n) for n in np.flatnonzero(self.flags) if n >= 1]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["n", "Q_n", "q", "delta", "sigma", "flag"])
        for n in range(1, self.n_max + 1):
            writer.writerow([n, repr(float(self.Q[n])), repr(self.q), repr(float(self.delta_Q[n])),
                             repr(float(self.sigma_Q[n])), int(self.flags[n])])
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {
            "word_total": self.word_total,
            "n_max": self.n_max,
            "multiplier": self.multiplier,
            "q": self.q,
            "q_sigma": self.q_sigma,
            "rows": [
                {
                    "n": n,
                    "Q": float(self.Q[n]),
                    "delta": float(self.delta_Q[n]),
                    "sigma": float(self.sigma_Q[n]),
                    "flag": bool(self.flags[n]),
                    "p": float(self.p[n]),
                    "p_geom": float(self.p_geom[n]),
                    "p_resid_geom": float(self.p_resid_geom[n]),
                    "p_resid_order": float(self.p_resid_order[n]),
                    "p_flag": bool(self.p_flags[n]),
                }
                for n in range(1, self.n_max + 1)
            ],
        }


def deviation_report(
    profile: FrequencyProfile,
    p: LengthDistribution,
    bigram: BigramMatrix,
    model: GeometricModel,
    multiplier: float = SIGMA_MULTIPLIER,
) -> DeviationReport:
    I = profile.word_total
    for name, size in (("length distribution", p.sample_size), ("bigram matrix", bigram.word_total)):
        if size is not None and size != I:
            raise ConsistencyError(f"{name} built from {size} words, profile from {I}")
    n_max = profile.n_max
    n = np.arange(n_max + 1)
    Q = np.array(profile.frequencies, dtype=float)
    q = profile.mean_frequency
    delta = Q - q
    delta[0] = 0.0
    sigma = np.sqrt(Q / I)
    flags = np.abs(delta) > multiplier * sigma
    flags[0] = False

    pn = np.zeros(n_max + 1)
    m = min(n_max, p.n_max)
    pn[: m + 1] = p.probs[: m + 1]
    p_geom = np.where(n >= 1, model.q * (1.0 - model.q) ** np.maximum(n - 1, 0), 0.0)
    after_mono = np.zeros(n_max + 1)
    cond = bigram.conditional()
    if bigram.n_max >= 1:
        k = min(n_max, bigram.n_max)
        after_mono[: k + 1] = cond[1, : k + 1]
    half = multiplier * np.sqrt(pn * (1.0 - pn) / I)
    p_flags = np.abs(pn - p_geom) > half
    p_flags[0] = False
    return DeviationReport(
        Q=Q, q=q, delta_Q=delta, sigma_Q=sigma, q_sigma=frequency_sigma(q, I), flags=flags,
        p=pn, p_geom=p_geom, p_resid_geom=pn - p_geom, p_resid_order=after_mono - p_geom,
        p_flags=p_flags, word_total=I, multiplier=multiplier,
    )


# ---------------------------------------------------------------------------
# Cross-corpus comparison of q
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QEstimate:
    label: str
    q: float
    word_total: int
    sigma: float
    low: float
    high: float

    def overlaps(self, other: "QEstimate") -> bool:
        return self.low <= other.high and other.low <= self.high


@dataclass(frozen=True)
class QComparison:
    estimates: tuple[QEstimate, ...]
    overlaps: dict[tuple[str, str], bool]

    def estimate(self, label: str) -> QEstimate:
        return next(e for e in self.estimates if e.label == label)

    def to_dict(self) -> dict:
        return {
            "estimates": [
                {"label": e.label, "q": e.q, "word_total": e.word_total, "sigma": e.sigma,
                 "low": e.low, "high": e.high}
                for e in self.estimates
            ],
            "pairs": [{"a": a, "b": b, "overlap": v} for (a, b), v in self.overlaps.items()],
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["label", "q", "word_total", "sigma", "low", "high"])
        for e in self.estimates:
            writer.writerow([e.label, repr(e.q), e.word_total, repr(e.sigma), repr(e.low), repr(e.high)])
        return buf.getvalue()


def compare_q(
    profiles: list[tuple[str, FrequencyProfile | float, int]],
    multiplier: float = SIGMA_MULTIPLIER,
) -> QComparison:
    """3-sigma intervals q -/+ 3 sqrt(q/I) per label and pairwise overlap verdicts.

    Each entry is ``(label, profile_or_q, word_total)``.  Output is sorted by label.
    """
    if len(profiles) < 2:
        raise ConfigurationError("compare_q needs at least two profiles")
    estimates = []
    for label, prof, size in profiles:
        q = prof.mean_frequency if isinstance(prof, FrequencyProfile) else float(prof)
        lo, hi = q_interval(q, size, multiplier)
        estimates.append(QEstimate(str(label), q, int(size), frequency_sigma(q, size), lo, hi))
    estimates.sort(key=lambda e: e.label)
    overlaps = {(a.label, b.label): a.overlaps(b) for a, b in itertools.combinations(estimates, 2)}
    return QComparison(tuple(estimates), overlaps)
