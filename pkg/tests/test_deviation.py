import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_force_bigram
from sylmatch.corpus import SyllableSequence
from sylmatch.deviation import (
    bigram_matrix,
    compare_q,
    deviation_report,
    frequency_sigma,
    ordering_independence_test,
    probability_error_band,
    q_interval,
)
from sylmatch.errors import ConfigurationError, ConsistencyError, EmptyInputError
from sylmatch.matching import MatchTable, count_matches, length_histogram, normalize
from sylmatch.model import fit_geometric, simulate_segmentation
from sylmatch.pipeline import analyze_sequence

CORPUS_I = 1_977_676
CORPUS_Q = 0.720316


class TestErrorModel:
    def test_band(self):
        assert probability_error_band(0.5, 100) == pytest.approx((0.35, 0.65), abs=1e-12)

    def test_band_at_zero(self):
        assert probability_error_band(0.0, 12345) == (0.0, 0.0)

    def test_band_half_width_at_corpus_scale(self):
        lo, hi = probability_error_band(CORPUS_Q, CORPUS_I)
        # the reference value has three significant figures
        assert (hi - lo) / 2 == pytest.approx(0.000957, abs=1e-6)

    def test_band_multiplier(self):
        lo, hi = probability_error_band(0.5, 100, multiplier=1)
        assert (lo, hi) == pytest.approx((0.45, 0.55))

    def test_sigma(self):
        assert frequency_sigma(CORPUS_Q, CORPUS_I) == pytest.approx(0.00060, abs=5e-6)
        assert frequency_sigma(0.0, 10) == 0.0
        assert frequency_sigma(0.70649, CORPUS_I) == pytest.approx(0.000598, abs=5e-7)


class TestCompareQ:
    def test_reference_intervals(self):
        cmp = compare_q([("eliot", 0.69844, 317_827), ("all", CORPUS_Q, CORPUS_I)])
        eliot, full = cmp.estimate("eliot"), cmp.estimate("all")
        assert (eliot.low, eliot.high) == pytest.approx((0.6940, 0.7029), abs=5e-5)
        assert (full.low, full.high) == pytest.approx((0.7185, 0.7221), abs=5e-5)
        assert cmp.overlaps[("all", "eliot")] is False

    def test_identical_profiles_overlap(self):
        profile = normalize(count_matches(simulate_segmentation(0.7, 5000, seed=1)))
        cmp = compare_q([("a", profile, 5000), ("b", profile, 5000)])
        assert cmp.overlaps == {("a", "b"): True}

    def test_needs_two(self):
        with pytest.raises(ConfigurationError):
            compare_q([("a", 0.7, 100)])

    def test_interval_shrinks_like_root_i(self):
        widths = []
        for size in (200_000, 400_000):
            profile = normalize(count_matches(simulate_segmentation(0.72, size, seed=3)))
            lo, hi = q_interval(profile.q, size)
            widths.append(hi - lo)
        assert widths[0] / widths[1] == pytest.approx(math.sqrt(2), rel=0.05)

    def test_outputs(self):
        cmp = compare_q([("b", 0.7, 1000), ("a", 0.71, 2000)])
        assert [e.label for e in cmp.estimates] == ["a", "b"]
        data = json.loads(json.dumps(cmp.to_dict()))
        assert data["pairs"] == [{"a": "a", "b": "b", "overlap": True}]
        assert cmp.to_csv().splitlines()[0] == "label,q,word_total,sigma,low,high"


class TestBigram:
    def test_example(self):
        bigram = bigram_matrix(SyllableSequence([1, 2, 1]), 4)
        nonzero = {(m, n): int(bigram.counts[m, n]) for m, n in zip(*np.nonzero(bigram.counts))}
        assert nonzero == {(1, 2): 1, (2, 1): 1, (1, 1): 1}

    def test_monosyllables(self):
        assert bigram_matrix(SyllableSequence([1, 1, 1]), 3).counts[1, 1] == 3

    def test_dirichlet_total(self):
        assert bigram_matrix(SyllableSequence([1, 2, 1, 3]), 5, "dirichlet").total == 3

    def test_empty(self):
        with pytest.raises(EmptyInputError):
            bigram_matrix(SyllableSequence([]))

    @given(st.lists(st.integers(1, 9), min_size=1, max_size=64), st.booleans())
    @settings(deadline=None)
    def test_oracle(self, values, periodic):
        bigram = bigram_matrix(SyllableSequence(values), 9, "periodic" if periodic else "dirichlet")
        got = {(int(m), int(n)): int(bigram.counts[m, n]) for m, n in zip(*np.nonzero(bigram.counts))}
        assert got == brute_force_bigram(values, 9, periodic)
        assert bigram.total == (len(values) if periodic else len(values) - 1)

    @given(st.lists(st.integers(1, 6), min_size=1, max_size=64))
    def test_conditionals_sum_to_one(self, values):
        bigram = bigram_matrix(SyllableSequence(values), 6)
        cond = bigram.conditional()
        rows = bigram.row_totals > 0
        assert np.abs(cond[rows].sum(axis=1) - 1).max() <= 1e-12
        assert (cond[~rows] == 0).all()

    def test_csv(self):
        lines = bigram_matrix(SyllableSequence([1, 2, 1]), 2).to_csv().splitlines()
        assert lines == ["m,n1,n2,total", "1,1,1,2", "2,1,0,1"]


class TestIndependence:
    def test_iid_sample(self):
        # A single run has only ~70 qualifying cells, and some of them expect far
        # fewer than one count, where one stray hit gives |z| > 4.  The share of
        # cells is therefore estimated over pooled runs.
        cells = []
        for seed in range(10):
            seq = simulate_segmentation(0.72, 10**6, seed=seed)
            test = ordering_independence_test(bigram_matrix(seq), length_histogram(seq))
            cells.append(test.cells(min_row=1000))
        cells = np.concatenate(cells)
        assert cells.size > 500
        assert np.mean(np.abs(cells) < 4) >= 0.99

    def test_sparse_cells_can_be_dropped(self):
        seq = simulate_segmentation(0.72, 10**6, seed=99)
        test = ordering_independence_test(bigram_matrix(seq), length_histogram(seq))
        assert test.expected[1, 1] == pytest.approx(test.row_totals[1] * length_histogram(seq).p(1))
        # this run has one hit in a cell expecting ~0.016
        assert (np.abs(test.cells(min_row=1000)) >= 4).sum() == 1
        assert test.fraction_within(4.0, min_row=1000, min_expected=5) == 1.0

    @pytest.mark.parametrize("size", [100, 10_000])
    def test_alternating(self, size):
        seq = SyllableSequence([1, 2] * (size // 2))
        test = ordering_independence_test(bigram_matrix(seq, 4), length_histogram(seq))
        # p_{2,1} = 1 against p_2 = 1/2: z = sqrt(R_1)
        assert test.z[1, 2] == pytest.approx(math.sqrt(size / 2))
        assert test.p_value < 1e-6 or size < 1000

    def test_empty_rows_are_nan(self):
        seq = SyllableSequence([1, 1, 2, 1])
        test = ordering_independence_test(bigram_matrix(seq, 4), length_histogram(seq))
        assert np.isnan(test.z[3]).all()
        assert test.to_dict()["z"][2] == [None] * 4


class TestDeviationReport:
    def test_flags_are_three_sigma(self):
        report = analyze_sequence(simulate_segmentation(0.72, 50_000, seed=4)).deviation
        expected = np.abs(report.delta_Q) > 3 * report.sigma_Q
        expected[0] = False
        assert (report.flags == expected).all()

    def test_forced_depression(self):
        seq = simulate_segmentation(0.72, 200_000, seed=8)
        table = count_matches(seq)
        counts = np.array(table.counts)
        counts[2, 2] -= int(10 * math.sqrt(table.L(2)))
        profile = normalize(MatchTable(counts, table.word_total))
        lengths = length_histogram(seq)
        report = deviation_report(profile, lengths, bigram_matrix(seq), fit_geometric(lengths))
        assert report.flags[2]
        assert report.z()[2] < -9

    def test_simulated_large_sample(self):
        report = analyze_sequence(simulate_segmentation(0.72, 2_000_000, seed=21)).deviation
        assert len(report.flagged()) <= 1

    def test_calibration(self):
        quiet = sum(
            len(analyze_sequence(simulate_segmentation(0.72, 100_000, seed=s)).deviation.flagged()) <= 2
            for s in range(20)
        )
        assert quiet / 20 >= 0.95

    def test_mismatched_inputs(self):
        a = simulate_segmentation(0.72, 1000, seed=1)
        b = simulate_segmentation(0.72, 1200, seed=1)
        lengths = length_histogram(b)
        with pytest.raises(ConsistencyError):
            deviation_report(normalize(count_matches(a)), lengths, bigram_matrix(b), fit_geometric(lengths))

    def test_residuals(self):
        seq = simulate_segmentation(0.72, 100_000, seed=6)
        report = analyze_sequence(seq).deviation
        assert report.p_resid_geom[1:] == pytest.approx(report.p[1:] - report.p_geom[1:])
        # the fitted geometric has q = 1 / mean word length, and p_1 = q
        assert report.p_geom[1] == pytest.approx(1 / seq.counts.mean(), rel=1e-12)
        assert abs(report.p_resid_order[1]) < 0.01

    def test_csv_and_json(self):
        report = analyze_sequence(SyllableSequence([1, 2, 1] * 10), n_max=6).deviation
        lines = report.to_csv().splitlines()
        assert lines[0] == "n,Q_n,q,delta,sigma,flag"
        assert len(lines) == 7
        data = json.loads(json.dumps(report.to_dict(), allow_nan=False))
        assert [row["n"] for row in data["rows"]] == list(range(1, 7))

