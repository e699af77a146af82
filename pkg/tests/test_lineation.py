import json

import numpy as np
import pytest

from sylmatch.corpus import SyllableSequence
from sylmatch.errors import ConfigurationError, DomainError
from sylmatch.lineation import BLANK_VERSE_MIX, detect_lineation, simulate_verse
from sylmatch.model import simulate_segmentation
from sylmatch.pipeline import analyze_sequence


def lineation(seq, n_max=30):
    return detect_lineation(analyze_sequence(seq, n_max=n_max).deviation)


def test_repeated_five_syllable_word():
    report = lineation(SyllableSequence([5] * 200))
    assert report.verdict == "isometric"
    assert report.core_length == 5
    assert report.peaks[5] == tuple((n, True) for n in (5, 10, 15, 20, 25, 30))


def test_n_max_too_small():
    dev = analyze_sequence(simulate_segmentation(0.7, 1000, seed=1), n_max=20).deviation
    with pytest.raises(ConfigurationError):
        detect_lineation(dev)
    with pytest.raises(ConfigurationError):
        detect_lineation(analyze_sequence(SyllableSequence([1, 2]), n_max=30).deviation, n_max=40)


def test_prose_is_not_verse():
    hits = sum(lineation(simulate_segmentation(0.72, 57_570, seed=s)).verdict == "isometric" for s in range(20))
    assert hits <= 1


def test_ten_times_blank_verse_is_isometric():
    report = lineation(simulate_verse(10 * 57_570, BLANK_VERSE_MIX, q=0.714, seed=1))
    assert report.verdict == "isometric"
    assert report.core_length == 10
    best = max(report.candidates, key=lambda c: c.score)
    assert best.length == 10


def test_two_line_lengths():
    seq = SyllableSequence.concatenate([
        simulate_verse(200_000, {7: 1.0}, q=0.6, seed=3),
        simulate_verse(200_000, {11: 1.0}, q=0.6, seed=103),
    ])
    report = lineation(seq)
    assert report.verdict == "multi-length"
    assert set(report.core_lengths) == {7, 11}


def test_rotation_invariance():
    seq = simulate_verse(30_000, {10: 1.0}, q=0.7, seed=5)
    a = lineation(seq)
    b = lineation(SyllableSequence(np.roll(seq.counts, 12_345)))
    assert a.to_dict() == b.to_dict()


def test_score_grows_with_share_of_exact_lines():
    scores = []
    for share in (0.0, 0.3, 0.6, 0.9, 1.0):
        mix = {10: share, 11: (1 - share) / 2, 12: (1 - share) / 2}
        mix = {L: w for L, w in mix.items() if w > 0}
        scores.append(lineation(simulate_verse(200_000, mix, q=0.714, seed=3)).candidate(10).score)
    assert scores == sorted(scores)


def test_report_invariants():
    for seq in (SyllableSequence([5] * 100), simulate_verse(20_000, {9: 1.0}, q=0.65, seed=2),
                simulate_segmentation(0.72, 20_000, seed=2)):
        report = lineation(seq)
        if report.verdict == "isometric":
            L = report.core_length
            assert dict(report.peaks[L])[L] and dict(report.peaks[L])[2 * L]
        elif report.verdict == "none":
            assert report.core_length is None
        for c in report.candidates:
            assert c.score >= 0
            assert c.qualifies == (c.z_at_length > 3 and c.z_at_double > 3)


def test_depression_at_two_is_not_scored():
    report = lineation(simulate_segmentation(0.72, 20_000, seed=9))
    assert all(n != 2 for L in report.peaks for n, _ in report.peaks[L])


def test_outputs():
    report = lineation(SyllableSequence([5] * 100))
    data = json.loads(json.dumps(report.to_dict(), allow_nan=False))
    assert data["verdict"] == "isometric" and data["core_length"] == 5
    assert [c["L"] for c in data["candidates"]] == list(range(4, 15))
    assert report.to_csv().splitlines()[0] == "L,score,z_at_L,z_at_2L"


class TestSimulateVerse:
    def test_lines_are_exact(self):
        seq = simulate_verse(5_000, {10: 1.0}, q=0.7, seed=4)
        starts = np.cumsum(seq.counts)
        # with one line length every line ends on a multiple of 10
        assert np.isin(np.arange(10, starts[-1] - 10, 10), starts).all()

    def test_deterministic(self):
        a = simulate_verse(3_000, seed=8).counts.tolist()
        assert a == simulate_verse(3_000, seed=8).counts.tolist()
        assert len(a) == 3_000

    @pytest.mark.parametrize("kwargs", [{"q": 0.0}, {"word_total": 0}, {"line_mix": {}},
                                        {"line_mix": {0: 1.0}}, {"line_mix": {10: -1.0}}])
    def test_bad_arguments(self, kwargs):
        with pytest.raises(DomainError):
            simulate_verse(**{"word_total": 100, **kwargs})
