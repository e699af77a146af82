import pytest

from oracles import spelled_syllables
from sylmatch.corpus import Token, TokenKind, syllabify_number
from sylmatch.errors import DomainError, UnsupportedNumberError
from sylmatch.numbers import number_syllables, spell_cardinal, spell_year


@pytest.mark.parametrize(
    "value, spelling",
    [
        (0, "zero"),
        (7, "seven"),
        (12, "twelve"),
        (21, "twenty one"),
        (101, "one hundred and one"),
        (1005, "one thousand and five"),
        (1920, "one thousand nine hundred and twenty"),
        (20000, "twenty thousand"),
        (1_000_001, "one million and one"),
        (3_000_200_000, "three billion two hundred thousand"),
    ],
)
def test_spell_cardinal(value, spelling):
    assert " ".join(spell_cardinal(value)) == spelling


@pytest.mark.parametrize(
    "value, spelling",
    [
        (1920, "nineteen twenty"),
        (1905, "nineteen oh five"),
        (1900, "nineteen hundred"),
        (1066, "ten sixty six"),
        (2000, "two thousand"),
        (2005, "two thousand and five"),
        (2016, "twenty sixteen"),
    ],
)
def test_spell_year(value, spelling):
    assert " ".join(spell_year(value)) == spelling


def test_1920_number_reading_matches_hand_count():
    expected = spelled_syllables("one-thousand-nine-hundred-and-twenty")
    assert expected == 9
    assert syllabify_number(Token("1,920", "1920", TokenKind.NUMBER)) == expected


def test_1920_year_reading():
    assert spelled_syllables("nineteen twenty") == 4
    assert syllabify_number(Token("1920", "1920", TokenKind.YEAR)) == 4


def test_seven():
    assert syllabify_number(Token("7", "7", TokenKind.NUMBER)) == spelled_syllables("seven") == 2


def test_range_cap():
    assert number_syllables(10**15 - 1) > 0
    with pytest.raises(UnsupportedNumberError):
        number_syllables(10**15)
    with pytest.raises(UnsupportedNumberError):
        syllabify_number(Token("1" + "0" * 15, "1" + "0" * 15, TokenKind.NUMBER))


def test_word_token_rejected():
    with pytest.raises(DomainError):
        syllabify_number(Token("cat", "cat"))
