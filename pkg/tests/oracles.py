"""Independent reference computations used as test oracles.

Plain loops with no numpy vectorization and no calls into sylmatch.
"""

import itertools
import math


def brute_force_matches(values, n_max, k_max, periodic=True):
    """dict (n, k) -> count by walking every start position and extending the window."""
    size = len(values)
    out = {}
    for start in range(size):
        total = 0
        for k in range(1, k_max + 1):
            if not periodic and start + k > size:
                break
            total += values[(start + k - 1) % size]
            if total <= n_max:
                out[(total, k)] = out.get((total, k), 0) + 1
    return out


def brute_force_bigram(values, n_max, periodic=True):
    size = len(values)
    pairs = range(size) if periodic else range(size - 1)
    out = {}
    for i in pairs:
        m, n = values[i], values[(i + 1) % size]
        if m <= n_max and n <= n_max:
            out[(m, n)] = out.get((m, n), 0) + 1
    return out


def enumerate_Pnk(p, n, k):
    """Sum over every k-tuple of word lengths adding to n of the product of their p's."""
    total = 0.0
    for parts in itertools.product(range(1, n + 1), repeat=k):
        if sum(parts) == n:
            total += math.prod(p.get(a, 0.0) for a in parts)
    return total


def closed_forms(p):
    """Hand-derived closed forms for P_{n,k} with n, k <= 5."""
    p1, p2, p3, p4, p5 = (p.get(i, 0.0) for i in range(1, 6))
    return {
        (1, 1): p1, (2, 1): p2, (3, 1): p3, (4, 1): p4, (5, 1): p5,
        (2, 2): p1 ** 2,
        (3, 2): 2 * p1 * p2,
        (4, 2): 2 * p1 * p3 + p2 ** 2,
        (5, 2): 2 * (p1 * p4 + p2 * p3),
        (3, 3): p1 ** 3,
        (4, 3): 3 * p1 ** 2 * p2,
        (5, 3): 3 * (p1 ** 2 * p3 + p1 * p2 ** 2),
        (4, 4): p1 ** 4,
        (5, 4): 4 * p1 ** 3 * p2,
        (5, 5): p1 ** 5,
    }


def p54_with_extra_term(p):
    """P_{5,4} plus 6 p1^2 p2^2, a term that belongs to 4-word strings of 6 syllables."""
    p1, p2 = p.get(1, 0.0), p.get(2, 0.0)
    return 4 * p1 ** 3 * p2 + 6 * p1 ** 2 * p2 ** 2


# hand-built syllable counts of English number words
NUMBER_WORD_SYLLABLES = {
    "one": 1, "two": 1, "three": 1, "four": 1, "five": 1, "six": 1, "seven": 2,
    "eight": 1, "nine": 1, "ten": 1, "eleven": 3, "twelve": 1, "nineteen": 2,
    "twenty": 2, "sixty": 2, "hundred": 2, "thousand": 2, "and": 1, "oh": 1,
}


def spelled_syllables(spelling):
    """'one-thousand-nine-hundred-and-twenty' -> 9."""
    return sum(NUMBER_WORD_SYLLABLES[w] for w in spelling.replace("-", " ").split())
