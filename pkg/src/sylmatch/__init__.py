"""Syllable-count statistics of English text.

Counts word strings totalling n syllables, compares them with the
random-ordering geometric model, and tests texts for isometric lineation.
"""

__version__ = "0.1.0"

from .corpus import (
    Lexicon,
    LexiconEntry,
    SyllableSequence,
    Token,
    TokenKind,
    UnknownPolicy,
    annotate,
    load_lexicon,
    syllabify_number,
    tokenize,
)
from .deviation import (
    BigramMatrix,
    DeviationReport,
    bigram_matrix,
    compare_q,
    deviation_report,
    frequency_sigma,
    ordering_independence_test,
    probability_error_band,
)
from .lineation import LineationReport, detect_lineation, simulate_verse
from .matching import Boundary, FrequencyProfile, MatchTable, count_matches, length_histogram, normalize
from .model import (
    GeometricModel,
    LengthDistribution,
    PolySeries,
    fit_geometric,
    geometric_pmf,
    mean_word_length,
    moments,
    predict_Pnk,
    predict_Qn,
    simulate_segmentation,
)
from .pipeline import Analysis, analyze_sequence

__all__ = [
    "Analysis", "BigramMatrix", "Boundary", "DeviationReport", "FrequencyProfile",
    "GeometricModel", "LengthDistribution", "Lexicon", "LexiconEntry", "LineationReport",
    "MatchTable", "PolySeries", "SyllableSequence", "Token", "TokenKind", "UnknownPolicy",
    "analyze_sequence", "annotate", "bigram_matrix", "compare_q", "count_matches",
    "detect_lineation", "deviation_report", "fit_geometric", "frequency_sigma",
    "geometric_pmf", "length_histogram", "load_lexicon", "mean_word_length", "moments",
    "normalize", "ordering_independence_test", "predict_Pnk", "predict_Qn",
    "probability_error_band", "simulate_segmentation", "simulate_verse",
    "syllabify_number", "tokenize",
]
