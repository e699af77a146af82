"""End-to-end analysis of one syllable sequence."""

from __future__ import annotations

from dataclasses import dataclass

from .corpus import SyllableSequence
from .deviation import (
    BigramMatrix,
    DeviationReport,
    IndependenceTest,
    bigram_matrix,
    deviation_report,
    ordering_independence_test,
)
from .matching import (
    DEFAULT_N_MAX,
    Boundary,
    FrequencyProfile,
    MatchTable,
    count_matches,
    length_histogram,
    normalize,
)
from .model import GeometricModel, LengthDistribution, fit_geometric


@dataclass(frozen=True)
class Analysis:
    sequence: SyllableSequence
    table: MatchTable
    profile: FrequencyProfile
    lengths: LengthDistribution
    bigram: BigramMatrix
    model: GeometricModel
    deviation: DeviationReport
    independence: IndependenceTest

    @property
    def word_total(self) -> int:
        return self.sequence.word_total


def analyze_sequence(
    seq: SyllableSequence,
    n_max: int = DEFAULT_N_MAX,
    k_max: int | None = None,
    bc: str | Boundary = Boundary.PERIODIC,
    q_range: tuple[int, int] | None = None,
) -> Analysis:
    table = count_matches(seq, n_max, k_max, bc)
    profile = normalize(table, q_range)
    # histogram over the full range so the fitted mean is not truncated
    lengths = length_histogram(seq)
    bigram = bigram_matrix(seq, n_max, bc)
    model = fit_geometric(lengths)
    dev = deviation_report(profile, lengths, bigram, model)
    indep = ordering_independence_test(bigram, lengths)
    return Analysis(seq, table, profile, lengths, bigram, model, dev, indep)
