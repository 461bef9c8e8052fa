"""Built-in integer sequences for demos, comparisons, and tests.

Every generator is closed-form or a direct summation formula, never the
polynomial recurrence the guessers are supposed to find, so the corpus
can serve as an independent oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence


def catalan(count: int) -> list[int]:
    return [math.comb(2 * n, n) // (n + 1) for n in range(count)]


def central_binomial(count: int) -> list[int]:
    return [math.comb(2 * n, n) for n in range(count)]


def motzkin(count: int) -> list[int]:
    return [
        sum(math.comb(n, 2 * k) * math.comb(2 * k, k) // (k + 1) for k in range(n // 2 + 1))
        for n in range(count)
    ]


def delannoy_central(count: int) -> list[int]:
    return [
        sum(math.comb(n, k) * math.comb(n + k, k) for k in range(n + 1))
        for n in range(count)
    ]


def schroeder_large(count: int) -> list[int]:
    return [
        sum(math.comb(n + k, 2 * k) * math.comb(2 * k, k) // (k + 1) for k in range(n + 1))
        for n in range(count)
    ]


def apery(count: int) -> list[int]:
    return [
        sum(math.comb(n, k) ** 2 * math.comb(n + k, k) ** 2 for k in range(n + 1))
        for n in range(count)
    ]


def franel(count: int) -> list[int]:
    return [sum(math.comb(n, k) ** 3 for k in range(n + 1)) for n in range(count)]


def binomial_3n_n(count: int) -> list[int]:
    return [math.comb(3 * n, n) for n in range(count)]


def factorials(count: int) -> list[int]:
    return [math.factorial(n) for n in range(count)]


def derangements(count: int) -> list[int]:
    out = []
    acc = 1
    for n in range(count):
        if n > 0:
            acc = n * acc + (-1) ** n
        out.append(acc)
    return out


def fibonacci(count: int) -> list[int]:
    out = [1, 1][:count]
    while len(out) < count:
        out.append(out[-1] + out[-2])
    return out


def tribonacci(count: int) -> list[int]:
    out = [1, 1, 2][:count]
    while len(out) < count:
        out.append(out[-1] + out[-2] + out[-3])
    return out


def partial_sums(terms: Sequence[int]) -> list[int]:
    out = []
    acc = 0
    for t in terms:
        acc += t
        out.append(acc)
    return out


def catalan_partial_sums(count: int) -> list[int]:
    return partial_sums(catalan(count))


def central_binomial_partial_sums(count: int) -> list[int]:
    return partial_sums(central_binomial(count))


def motzkin_partial_sums(count: int) -> list[int]:
    return partial_sums(motzkin(count))


def delannoy_partial_sums(count: int) -> list[int]:
    return partial_sums(delannoy_central(count))


def sum_binomial_3k_k(count: int) -> list[int]:
    return partial_sums(binomial_3n_n(count))


def catalan_3k_partial_sums(count: int) -> list[int]:
    """Partial sums of the Catalan numbers at indices 0, 3, 6, ..."""
    return partial_sums(
        [math.comb(6 * k, 3 * k) // (3 * k + 1) for k in range(count)]
    )


def quasi_poly_a307717(count: int, start: int = 2) -> list[int]:
    """Terms of the piecewise cubic quasi-polynomial starting at n = start.

    Value 0 at even n; (n^3 - 15n^2 + 203n + 195)/192 when n = 1 mod 4;
    (n^3 - 9n^2 + 107n + 501)/384 when n = 3 mod 4.  Only valid from
    n = 2 on (the sequence it describes has an irregular first value).
    """
    if start < 2:
        raise ValueError("the closed form is only valid for n >= 2")
    out = []
    for n in range(start, start + count):
        if n % 2 == 0:
            out.append(0)
        elif n % 4 == 1:
            val, rem = divmod(n ** 3 - 15 * n ** 2 + 203 * n + 195, 192)
            assert rem == 0
            out.append(val)
        else:
            val, rem = divmod(n ** 3 - 9 * n ** 2 + 107 * n + 501, 384)
            assert rem == 0
            out.append(val)
    return out


@dataclass(frozen=True)
class CorpusEntry:
    """A named sequence with the ansatz cell it satisfies."""

    name: str
    generator: Callable[[int], list[int]]
    order: int
    degree: int


CORPUS: tuple[CorpusEntry, ...] = (
    CorpusEntry("catalan", catalan, 1, 1),
    CorpusEntry("central-binomial", central_binomial, 1, 1),
    CorpusEntry("factorials", factorials, 1, 1),
    CorpusEntry("binomial-3n-n", binomial_3n_n, 1, 2),
    CorpusEntry("motzkin", motzkin, 2, 1),
    CorpusEntry("delannoy-central", delannoy_central, 2, 1),
    CorpusEntry("schroeder-large", schroeder_large, 2, 1),
    CorpusEntry("derangements", derangements, 2, 1),
    CorpusEntry("catalan-partial-sums", catalan_partial_sums, 2, 1),
    CorpusEntry("central-binomial-partial-sums", central_binomial_partial_sums, 2, 1),
    CorpusEntry("motzkin-partial-sums", motzkin_partial_sums, 3, 1),
    CorpusEntry("delannoy-partial-sums", delannoy_partial_sums, 3, 1),
    CorpusEntry("franel", franel, 2, 2),
    CorpusEntry("apery", apery, 2, 3),
    CorpusEntry("sum-binomial-3k-k", sum_binomial_3k_k, 2, 2),
    CorpusEntry("catalan-3k-partial-sums", catalan_3k_partial_sums, 2, 3),
    CorpusEntry("fibonacci", fibonacci, 2, 0),
    CorpusEntry("tribonacci", tribonacci, 3, 0),
)


def corpus_by_name(name: str) -> CorpusEntry:
    for entry in CORPUS:
        if entry.name == name:
            return entry
    raise KeyError(f"no bundled sequence named {name!r}")
