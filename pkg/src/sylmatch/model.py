"""Random-ordering predictions, the geometric word-length model, and random segmentation.

Under random ordering the generating function of k-word strings is the
k-th power of the single-word generating function, and the frequency
generating function is ``P1 / (1 - P1)``.  A geometric word-length
distribution is exactly the one whose frequencies are flat in n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError, DomainError, NormalizationError

NORMALIZATION_TOL = 1e-9


class PolySeries:
    """Power series in x truncated at degree ``n_max``, with zero constant term.

    ``coeffs[n]`` is the coefficient of x**n; ``coeffs[0]`` is always 0
    because there are no zero-syllable words.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        c = np.array(coeffs, dtype=float).reshape(-1)
        if c.size < 2:
            raise DomainError("series needs at least the x**1 coefficient")
        if c[0] != 0.0:
            raise DomainError("constant term must be zero")
        c.setflags(write=False)
        self.coeffs = c

    @property
    def n_max(self) -> int:
        return self.coeffs.size - 1

    def __getitem__(self, n: int) -> float:
        return float(self.coeffs[n]) if 0 <= n <= self.n_max else 0.0

    def __mul__(self, other: "PolySeries") -> "PolySeries":
        n_max = min(self.n_max, other.n_max)
        prod = np.convolve(self.coeffs[: n_max + 1], other.coeffs[: n_max + 1])[: n_max + 1]
        return PolySeries(prod)

    def __add__(self, other: "PolySeries") -> "PolySeries":
        n_max = min(self.n_max, other.n_max)
        return PolySeries(self.coeffs[: n_max + 1] + other.coeffs[: n_max + 1])

    def __pow__(self, k: int) -> "PolySeries":
        if k < 1:
            raise DomainError("power must be >= 1 (a zero-th power has a constant term)")
        out = self
        for _ in range(k - 1):
            out = out * self
        return out

    def __repr__(self) -> str:
        head = ", ".join(f"{c:.6g}" for c in self.coeffs[1:6])
        return f"PolySeries(n_max={self.n_max}, [{head}{', ...' if self.n_max > 5 else ''}])"

    def value_at_one(self) -> float:
        return float(self.coeffs.sum())

    def tolist(self) -> list[float]:
        """Coefficients of x**1 .. x**n_max."""
        return self.coeffs[1:].tolist()


@dataclass(frozen=True)
class LengthDistribution:
    """Single-word syllable-count probabilities p_n.

    ``probs[n]`` holds p_n for n = 0..n_max with ``probs[0] == 0``.  ``tail``
    is the probability mass beyond n_max (zero for empirical histograms,
    positive for truncated model distributions).  ``sample_size`` is the word
    count the probabilities were estimated from, when known.
    """

    probs: np.ndarray
    tail: float = 0.0
    sample_size: int | None = None

    def __post_init__(self):
        p = np.array(self.probs, dtype=float).reshape(-1)
        if p.size < 2:
            raise DomainError("distribution needs n_max >= 1")
        if p[0] != 0.0:
            raise DomainError("p_0 must be zero")
        if (p < 0).any() or self.tail < 0:
            raise DomainError("probabilities must be non-negative")
        total = p.sum() + self.tail
        if abs(total - 1.0) > NORMALIZATION_TOL:
            raise NormalizationError(f"probabilities sum to {total!r}, not 1")
        p.setflags(write=False)
        object.__setattr__(self, "probs", p)

    @classmethod
    def from_list(cls, probs, **kwargs) -> "LengthDistribution":
        """Build from ``[p_1, p_2, ...]``."""
        return cls(np.concatenate([[0.0], np.asarray(probs, dtype=float)]), **kwargs)

    @property
    def n_max(self) -> int:
        return self.probs.size - 1

    def p(self, n: int) -> float:
        return float(self.probs[n]) if 1 <= n <= self.n_max else 0.0

    def mean(self) -> float:
        return float(np.dot(np.arange(self.probs.size), self.probs))

    def as_series(self, n_max: int | None = None) -> PolySeries:
        n_max = self.n_max if n_max is None else n_max
        c = np.zeros(n_max + 1)
        m = min(n_max, self.n_max)
        c[: m + 1] = self.probs[: m + 1]
        return PolySeries(c)

    def to_dict(self) -> dict:
        return {"n_max": self.n_max, "p": self.probs[1:].tolist(), "tail": self.tail,
                "sample_size": self.sample_size}


@dataclass(frozen=True)
class GeometricModel:
    """Word ends after each syllable with probability ``q``."""

    q: float

    def __post_init__(self):
        if not (0.0 < self.q <= 1.0):
            raise DomainError(f"q must lie in (0, 1], got {self.q}")

    def pmf(self, n: int) -> float:
        return geometric_pmf(self, n)

    def mean_word_length(self) -> float:
        return mean_word_length(self)

    def distribution(self, n_max: int) -> LengthDistribution:
        """Truncation to n <= n_max; the remaining mass (1-q)**n_max goes to ``tail``."""
        n = np.arange(1, n_max + 1)
        probs = np.concatenate([[0.0], self.q * (1.0 - self.q) ** (n - 1)])
        return LengthDistribution(probs, tail=(1.0 - self.q) ** n_max)


def geometric_pmf(model: GeometricModel, n: int) -> float:
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    return model.q * (1.0 - model.q) ** (n - 1)


def mean_word_length(model: GeometricModel) -> float:
    return 1.0 / model.q


def predict_Pnk(p: LengthDistribution, k: int, n_max: int) -> PolySeries:
    """Random-ordering prediction of P_{n,k} for n <= n_max: the series P_1(x)**k."""
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    return p.as_series(n_max) ** k


def predict_Pnk_table(p: LengthDistribution, n_max: int, k_max: int | None = None) -> np.ndarray:
    """Matrix ``out[n, k]`` of predicted P_{n,k} for 0 <= n <= n_max, 0 <= k <= k_max."""
    k_max = n_max if k_max is None else k_max
    base = p.as_series(n_max)
    out = np.zeros((n_max + 1, k_max + 1))
    power = base
    for k in range(1, k_max + 1):
        out[:, k] = power.coeffs
        power = power * base
    return out


def predict_Qn(p: LengthDistribution, n_max: int, method: str = "inversion") -> PolySeries:
    """Random-ordering prediction of Q_n: the series P_1/(1 - P_1).

    ``inversion`` solves Q = P_1 + P_1 Q term by term; ``sum`` adds the
    powers P_1**k for k = 1..n_max (higher powers start above x**n_max).
    """
    p1 = p.as_series(n_max).coeffs
    if method == "inversion":
        q = np.zeros(n_max + 1)
        for n in range(1, n_max + 1):
            q[n] = p1[n] + np.dot(p1[1:n], q[n - 1:0:-1])
        return PolySeries(q)
    if method == "sum":
        total = np.zeros(n_max + 1)
        base = PolySeries(p1)
        power = base
        for _ in range(n_max):
            total += power.coeffs
            power = power * base
        return PolySeries(total)
    raise ConfigurationError(f"unknown method {method!r}")


def moments(series: PolySeries | LengthDistribution) -> tuple[float, float]:
    """Mean P'(1) and standard deviation sqrt(P''(1) + P'(1) - P'(1)**2)."""
    if isinstance(series, LengthDistribution):
        series = series.as_series()
    total = series.value_at_one()
    if abs(total - 1.0) > NORMALIZATION_TOL:
        raise NormalizationError(f"series sums to {total!r} at x=1, not 1")
    n = np.arange(series.coeffs.size, dtype=float)
    d1 = float(np.dot(n, series.coeffs))
    d2 = float(np.dot(n * (n - 1), series.coeffs))
    var = d2 + d1 - d1 * d1
    return d1, math.sqrt(max(var, 0.0))


def fit_geometric(p: LengthDistribution) -> GeometricModel:
    """Moment fit q = 1/mean word length (coincides with maximum likelihood)."""
    mean = p.mean()
    if mean < 1.0 - NORMALIZATION_TOL:
        raise DomainError(f"mean word length {mean} < 1")
    return GeometricModel(min(1.0, 1.0 / mean))


def simulate_segmentation(
    q: float,
    word_total: int | None = None,
    seed: int | None = 0,
    *,
    syllable_total: int | None = None,
):
    """Random segmentation: word boundaries fall after each syllable with probability q.

    Give ``word_total`` to draw that many i.i.d. geometric word lengths, or
    ``syllable_total`` to place Bernoulli(q) boundaries in a syllable stream
    of that length (the final syllable always closes a word).  The result is
    a deterministic function of ``seed``.
    """
    from .corpus import SyllableSequence

    if not (0.0 < q <= 1.0):
        raise DomainError(f"q must lie in (0, 1], got {q}")
    if (word_total is None) == (syllable_total is None):
        raise DomainError("give exactly one of word_total or syllable_total")
    size = word_total if word_total is not None else syllable_total
    if size < 1:
        raise DomainError("size must be >= 1")
    rng = np.random.default_rng(seed)
    if word_total is not None:
        return SyllableSequence(rng.geometric(q, size=word_total).astype(np.int64))
    boundary = rng.random(syllable_total) < q
    boundary[-1] = True
    ends = np.flatnonzero(boundary)
    return SyllableSequence(np.diff(ends, prepend=-1).astype(np.int64))


@dataclass(frozen=True)
class ModelPrediction:
    """Fitted parameters plus predicted distributions, for JSON output."""

    q: float
    n_max: int
    p: list[float] = field(default_factory=list)
    Q_pred: list[float] = field(default_factory=list)

    @classmethod
    def from_distribution(cls, dist: LengthDistribution, n_max: int) -> "ModelPrediction":
        model = fit_geometric(dist)
        return cls(model.q, n_max, dist.as_series(n_max).tolist(), predict_Qn(dist, n_max).tolist())

    def to_dict(self) -> dict:
        return {"q": self.q, "n_max": self.n_max, "p": self.p, "Q_pred": self.Q_pred}
