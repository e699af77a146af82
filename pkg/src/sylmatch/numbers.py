"""Spelling out digit strings and counting the syllables of the reading.

Cardinals are read in the long hyphenated form with a British "and"
(1920 -> one-thousand-nine-hundred-and-twenty); years are read in pairs
(1920 -> nineteen twenty, 1905 -> nineteen oh five).
"""

from __future__ import annotations

from .errors import UnsupportedNumberError

NUMBER_LIMIT = 10**15

WORD_SYLLABLES = {
    "zero": 2, "oh": 1,
    "one": 1, "two": 1, "three": 1, "four": 1, "five": 1,
    "six": 1, "seven": 2, "eight": 1, "nine": 1, "ten": 1,
    "eleven": 3, "twelve": 1, "thirteen": 2, "fourteen": 2, "fifteen": 2,
    "sixteen": 2, "seventeen": 3, "eighteen": 2, "nineteen": 2,
    "twenty": 2, "thirty": 2, "forty": 2, "fifty": 2,
    "sixty": 2, "seventy": 3, "eighty": 2, "ninety": 2,
    "hundred": 2, "thousand": 2, "million": 2, "billion": 2, "trillion": 2,
    "and": 1,
}

_UNITS = [
    "zero", "one", "two", "three", "four", "five", "six", "seven", "eight",
    "nine", "ten", "eleven", "twelve", "thirteen", "fourteen", "fifteen",
    "sixteen", "seventeen", "eighteen", "nineteen",
]
_TENS = ["", "", "twenty", "thirty", "forty", "fifty", "sixty", "seventy", "eighty", "ninety"]
_SCALES = ["", "thousand", "million", "billion", "trillion"]


def _below_hundred(n: int) -> list[str]:
    if n < 20:
        return [_UNITS[n]]
    tens, units = divmod(n, 10)
    return [_TENS[tens]] + ([_UNITS[units]] if units else [])


def _below_thousand(n: int) -> list[str]:
    hundreds, rest = divmod(n, 100)
    words: list[str] = []
    if hundreds:
        words += [_UNITS[hundreds], "hundred"]
        if rest:
            words.append("and")
    if rest:
        words += _below_hundred(rest)
    return words


def _check_range(value: int) -> None:
    if value < 0 or value >= NUMBER_LIMIT:
        raise UnsupportedNumberError(f"number {value} outside supported range [0, 10^15)")


def spell_cardinal(value: int) -> list[str]:
    """Words of the long-form reading, e.g. 1920 -> one thousand nine hundred and twenty."""
    _check_range(value)
    if value == 0:
        return ["zero"]
    groups = []
    rest = value
    while rest:
        rest, group = divmod(rest, 1000)
        groups.append(group)
    words: list[str] = []
    top = len(groups) - 1
    for scale in range(top, -1, -1):
        group = groups[scale]
        if not group:
            continue
        chunk = _below_thousand(group)
        # "one thousand and five": bridge a bare final tens/units group
        if scale == 0 and top > 0 and group < 100:
            chunk = ["and"] + chunk
        words += chunk
        if scale:
            words.append(_SCALES[scale])
    return words


def spell_year(value: int) -> list[str]:
    """Words of the paired reading of a year, e.g. 1920 -> nineteen twenty."""
    _check_range(value)
    if value < 1000 or value % 1000 == 0 or 2000 < value < 2010:
        return spell_cardinal(value)
    high, low = divmod(value, 100)
    words = _below_hundred(high)
    if low == 0:
        return words + ["hundred"]
    if low < 10:
        return words + ["oh", _UNITS[low]]
    return words + _below_hundred(low)


def count_syllables(words: list[str]) -> int:
    return sum(WORD_SYLLABLES[w] for w in words)


def number_syllables(value: int, *, year: bool = False) -> int:
    words = spell_year(value) if year else spell_cardinal(value)
    return count_syllables(words)
