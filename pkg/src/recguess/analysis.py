"""Predictive bounds, synthetic experiments, and brute-force search.

The central quantity is the Bombieri-Vaaler bound: the kernel lattice of
a k x m guess matrix contains a nonzero vector of sup-norm at most
((1/g) sqrt(det(M M^T)))^(1/(m-k)).  When that bound drops below the
size of the sought recurrence's coefficients, shorter parasite vectors
drown it out and guessing from so little data must fail.  Everything
here quantifies that threshold: an a-priori bitsize estimate for generic
sequences, the closed-form soft bound on N it implies, a synthetic
experiment measuring the actual minimal N, and an exhaustive search
demonstrating how few terms pin down a recurrence information-
theoretically.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Callable, Iterable, Sequence

from .exact_linalg import (
    IntMatrix,
    MinorEnumerationLimitError,
    gram_det,
    minor_gcd,
)
from .guesser import min_terms
from .poly_basis import STANDARD
from .recurrence import Recurrence, SequenceData, normalized, unroll


class RankDeficientError(ValueError):
    """det(M M^T) vanished; the bound needs full row rank."""


class BudgetExceededError(RuntimeError):
    """The enumeration is larger than the allowed budget."""


@dataclass(frozen=True)
class GenericModel:
    """Shape parameters of a random guessing instance.

    order, degree: the ansatz cell; bitsize: coefficients and initial
    values are drawn uniformly from {-2^bitsize + 1, ..., 2^bitsize};
    rows: number of matrix rows k = N - r + 1 (0 when not relevant).
    """

    order: int
    degree: int
    bitsize: int
    rows: int = 0

    def __post_init__(self) -> None:
        if self.order < 1 or self.degree < 0 or self.bitsize < 1 or self.rows < 0:
            raise ValueError("bad model parameters")

    @property
    def cols(self) -> int:
        return (self.order + 1) * (self.degree + 1)


def bv_bound(m: IntMatrix, g: int | None = None, minor_limit: int = 100_000) -> float:
    """Bombieri-Vaaler sup-norm bound ((1/g) sqrt(det(M M^T)))^(1/(m-n)).

    Some nonzero integer kernel vector is guaranteed below this bound.
    When g is not given it is taken as the gcd of all maximal minors,
    falling back to the always-valid g = 1 if there are more than
    `minor_limit` of them.
    """
    n, cols = m.rows, m.cols
    if n >= cols:
        raise ValueError("bound needs strictly more columns than rows")
    det = gram_det(m)
    if det <= 0:
        raise RankDeficientError("matrix does not have full row rank")
    if g is None:
        try:
            g = minor_gcd(m, minor_limit)
        except MinorEnumerationLimitError:
            g = 1
    log2_bound = (0.5 * _log2_int(det) - math.log2(g)) / (cols - n)
    if log2_bound > 1020:
        return math.inf
    return 2.0 ** log2_bound


def _log2_int(n: int) -> float:
    # math.log2 handles arbitrarily large ints exactly enough for bounds
    return math.log2(n)


def bv_bitsize_estimate(model: GenericModel, a_mag: int, c0_mag: int, cd_mag: int) -> float:
    """log2 of the a-priori approximation of sqrt(det(M M^T))^(1/(m-k)).

    For a generic rational sequence whose terms grow like the quotient
    of iterated leading coefficients, the bound is approximately

      ((a c0)^k * cd^(k(k-1)/2) * ((1/k) prod_{i=1..k} i!)^d)^(1/(m-k))

    where a, c0, cd are the magnitudes of the (r-1)-st initial value and
    of the constant and top coefficients of p_{r-1}: the diagonal-product
    determinant heuristic with row numerators a c0 cd^i (i!)^d.  Returned
    in the log2 domain since the plain value overflows quickly.
    """
    k, d, cols = model.rows, model.degree, model.cols
    if k < 1:
        raise ValueError("model.rows must be positive")
    if cols - k < 1:
        raise ValueError("estimate needs k < (r+1)(d+1)")
    if a_mag < 1 or c0_mag < 1 or cd_mag < 1:
        raise ValueError("magnitudes must be positive")
    log_fact_sum = 0.0
    log_fact = 0.0
    for i in range(1, k + 1):
        log_fact += math.log2(i)
        log_fact_sum += log_fact
    num = (
        k * (math.log2(a_mag) + math.log2(c0_mag))
        + (k * (k - 1) / 2) * math.log2(cd_mag)
        + d * (log_fact_sum - math.log2(k))
    )
    return num / (cols - k)


def soft_bound(order: int, degree: float) -> float:
    """Largest N below which identifying the true recurrence is unlikely.

    N <~ (sqrt(8(r+1)(d+1) + 49) - 7)/2 + r - 1; fractional degrees are
    allowed so the threshold can be plotted as a curve.
    """
    m = (order + 1) * (degree + 1)
    return 0.5 * (math.sqrt(8 * m + 49) - 7) + order - 1


def random_recurrence(
    model: GenericModel, rng: random.Random, terms: int = 48
) -> tuple[Recurrence, tuple[int, ...]]:
    """Random recurrence and initial values from the generic model.

    Coefficients and initials are uniform in {-2^l + 1, ..., 2^l}.
    Resamples until the leading polynomial is nonzero on 0..terms-1 (so
    the sequence can be unrolled that far) and some initial value is
    nonzero.
    """
    r, d, ell = model.order, model.degree, model.bitsize
    lo, hi = -(2 ** ell) + 1, 2 ** ell
    while True:
        grid = tuple(
            tuple(rng.randint(lo, hi) for _ in range(d + 1)) for _ in range(r + 1)
        )
        if not any(grid[r]):
            continue
        initial = tuple(rng.randint(lo, hi) for _ in range(r))
        if not any(initial):
            continue
        rec = Recurrence(r, d, grid)
        if all(rec.eval_poly(r, n) != 0 for n in range(terms)):
            return rec, initial


@dataclass(frozen=True)
class ExperimentRow:
    order: int
    degree: int
    trial: int
    min_n: int


def generic_experiment(
    orders: Sequence[int],
    degrees: Sequence[int],
    bitsize: int,
    trials: int,
    seed: int,
    slack: int = 8,
    algorithm: str = "modular",
    progress: Callable[[int, int], None] | None = None,
) -> list[ExperimentRow]:
    """Observed minimal N for planted random recurrences, per (r, d) cell.

    For each trial a recurrence is planted, unrolled, and scanned with
    the lattice guesser for the smallest prefix a_0..a_N whose first
    reduced vector is exactly the planted recurrence (after canonical
    normalization).  Deterministic in `seed`.

    The modular guess path is the default: it reduces lattices whose
    entries are bounded by the working modulus instead of the planted
    terms (which grow superexponentially), and it keeps merging primes
    until its answer lies in the true kernel, so the observed minimal N
    agrees with the direct HNF route on any cell small enough to run
    both.
    """
    rows: list[ExperimentRow] = []
    total = len(orders) * len(degrees) * trials
    done = 0
    for r in orders:
        for d in degrees:
            cap = math.ceil(soft_bound(r, d)) + slack
            for trial in range(trials):
                rng = random.Random(f"{seed}:{r}:{d}:{trial}")
                model = GenericModel(r, d, bitsize)
                rec, initial = random_recurrence(model, rng, terms=2 * cap + 8)
                target = normalized(rec)
                min_n = _planted_min_n(rec, initial, target, cap, algorithm)
                rows.append(ExperimentRow(r, d, trial, min_n))
                done += 1
                if progress is not None:
                    progress(done, total)
    return rows


def _planted_min_n(
    rec: Recurrence,
    initial: Sequence[int],
    target: Recurrence,
    cap: int,
    algorithm: str = "modular",
) -> int:
    r, d = rec.order, rec.degree
    data = SequenceData(tuple(unroll(rec, initial, cap + 1)))
    result = min_terms(
        data, r, d, d,
        algorithm=algorithm,
        families=[STANDARD],
        accept=lambda cand: cand == target,
    )
    if result is None:
        # extremely unlucky instance; retry once with twice the data
        data = SequenceData(tuple(unroll(rec, initial, 2 * cap + 1)))
        result = min_terms(
            data, r, d, d,
            algorithm=algorithm,
            families=[STANDARD],
            accept=lambda cand: cand == target,
        )
    if result is None:
        raise RuntimeError(f"planted recurrence not recovered within N = {2 * cap}")
    return result.count - 1


def exact_bv_bitsize(rec: Recurrence, initial: Sequence[int], k: int) -> float | None:
    """log2 of the true sqrt(det(M M^T))^(1/(m-k)) for a planted instance.

    Builds the k-row standard-basis guess matrix from the unrolled
    sequence, clearing row i with the denominator product
    v_{i+r} = prod_{t=0..i} (-p_r(t)) so the entries are integers.
    Returns None when the Gram determinant degenerates to 0.
    """
    r, d = rec.order, rec.degree
    cols = (r + 1) * (d + 1)
    if k < 1 or cols - k < 1:
        raise ValueError("need 1 <= k < (r+1)(d+1)")
    terms = unroll(rec, initial, k + r)
    v = Fraction(1)
    rows = []
    for n in range(k):
        v *= -rec.eval_poly(r, n)
        row = []
        for j in range(d, -1, -1):
            for i in range(r + 1):
                entry = Fraction(n ** j) * terms[n + i] * v
                assert entry.denominator == 1
                row.append(int(entry))
        rows.append(row)
    det = gram_det(IntMatrix.from_rows(rows, cols=cols))
    if det <= 0:
        return None
    return 0.5 * _log2_int(det) / (cols - k)


def bv_ratio_samples(
    count: int, seed: int, max_rows: int = 16
) -> list[float]:
    """Ratios estimate/exact of the bound's bitsize on random instances.

    Instances are drawn with r in 1..6, d in 0..6, bitsize in 6..100 and
    a row count k in 2..min(m-1, max_rows); degenerate draws (zero
    magnitudes or vanishing determinant) are rejected.
    """
    rng = random.Random(f"bv-ratio:{seed}")
    out: list[float] = []
    while len(out) < count:
        r = rng.randint(1, 6)
        d = rng.randint(0, 6)
        ell = rng.randint(6, 100)
        cols = (r + 1) * (d + 1)
        if cols - 1 < 2:
            continue
        k = rng.randint(2, min(cols - 1, max_rows))
        model = GenericModel(r, d, ell, rows=k)
        rec, initial = random_recurrence(model, rng, terms=k + r + 1)
        a_mag = abs(initial[r - 1])
        c0_mag = abs(rec.coeffs[r - 1][0])
        cd_mag = abs(rec.coeffs[r - 1][d])
        if a_mag == 0 or c0_mag == 0 or cd_mag == 0:
            continue
        exact = exact_bv_bitsize(rec, initial, k)
        if exact is None or exact <= 0:
            continue
        out.append(bv_bitsize_estimate(model, a_mag, c0_mag, cd_mag) / exact)
    return out


@dataclass(frozen=True)
class BruteForceSpec:
    """Exhaustive search space: all recurrences of the given cell with
    coefficients in [-coeff_bound, coeff_bound] and initial values in
    [0, init_bound], unrolled through index `horizon`, counted when the
    generated sequence hits `target_value` at `target_index`."""

    order: int
    degree: int
    coeff_bound: int
    init_bound: int
    horizon: int
    target_index: int
    target_value: int


def _divisors(n: int) -> list[int]:
    n = abs(n)
    out = []
    for t in range(1, math.isqrt(n) + 1):
        if n % t == 0:
            out.append(t)
            if t * t != n:
                out.append(n // t)
    return out


def _eval_poly(coeffs: Sequence[int], n: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = acc * n + c
    return acc


def _has_nonneg_integer_root(coeffs: Sequence[int]) -> bool:
    """Whether the nonzero integer polynomial vanishes at some n >= 0."""
    if coeffs[0] == 0:
        return True
    # any integer root divides the constant term
    return any(_eval_poly(coeffs, t) == 0 for t in _divisors(coeffs[0]))


def search_space_size(order: int, degree: int, coeff_bound: int, init_bound: int) -> int:
    grids = (2 * coeff_bound + 1) ** ((order + 1) * (degree + 1))
    inits = (init_bound + 1) ** order
    return grids * inits


def enumerate_sequences(
    order: int,
    degree: int,
    coeff_bound: int,
    init_bound: int,
    horizon: int,
    budget: int = 10 ** 8,
    huge: bool = False,
    progress: Callable[[int, int], None] | None = None,
) -> Iterable[tuple[tuple[int, ...], tuple[tuple[int, ...], ...], tuple[int, ...]]]:
    """Yield (terms, coefficient grid, initials) for every surviving case.

    Filters, in order: leading or trailing polynomial identically zero;
    coefficient content > 1 (a scaled duplicate); leading polynomial
    with a root in the nonnegative integers.  Unrolling then discards
    any case with a non-integer term up to the horizon.  The same term
    tuple may be yielded several times (different recurrences can
    generate the same sequence); callers deduplicate.
    """
    r, d = order, degree
    space = search_space_size(r, d, coeff_bound, init_bound)
    if space > budget and not huge:
        raise BudgetExceededError(
            f"{space} cases exceed the budget {budget}; pass huge=True to force"
        )
    width = (r + 1) * (d + 1)
    grid_total = (2 * coeff_bound + 1) ** width
    steps = horizon - r + 1
    init_range = range(init_bound + 1)
    done = 0
    for flat in product(range(-coeff_bound, coeff_bound + 1), repeat=width):
        done += 1
        if progress is not None and done % 65536 == 0:
            progress(done, grid_total)
        polys = [flat[i * (d + 1):(i + 1) * (d + 1)] for i in range(r + 1)]
        if not any(polys[r]) or not any(polys[0]):
            continue
        if math.gcd(*flat) != 1:
            continue
        if _has_nonneg_integer_root(polys[r]):
            continue
        pvals = [[_eval_poly(p, n) for p in polys] for n in range(steps)]
        grid = tuple(polys)
        for initial in product(init_range, repeat=r):
            terms = list(initial)
            ok = True
            for n in range(steps):
                row = pvals[n]
                num = 0
                for i in range(r):
                    num += row[i] * terms[n + i]
                q, rem = divmod(-num, row[r])
                if rem:
                    ok = False
                    break
                terms.append(q)
            if ok:
                yield tuple(terms), grid, initial


def brute_force_counts(
    order: int,
    degree: int,
    coeff_bound: int,
    init_bound: int,
    horizon: int,
    targets: dict[int, int],
    budget: int = 10 ** 8,
    huge: bool = False,
    progress: Callable[[int, int], None] | None = None,
    example_cap: int = 4,
) -> tuple[dict[int, int], dict[int, list[tuple[Recurrence, tuple[int, ...]]]]]:
    """Distinct generated sequences matching each target, plus examples.

    `targets` maps an index to the required value there.  A sequence is
    counted once per matching index no matter how many (coefficients,
    initials) pairs generate it; sign-flipped coefficient grids generate
    the same sequence, which is why counting pairs would double
    everything.
    """
    buckets: dict[int, set[tuple[int, ...]]] = {n: set() for n in targets}
    examples: dict[int, list[tuple[Recurrence, tuple[int, ...]]]] = {n: [] for n in targets}
    for terms, grid, initial in enumerate_sequences(
        order, degree, coeff_bound, init_bound, horizon,
        budget=budget, huge=huge, progress=progress,
    ):
        for n, want in targets.items():
            if n <= horizon and terms[n] == want and terms not in buckets[n]:
                buckets[n].add(terms)
                if len(examples[n]) < example_cap:
                    examples[n].append((normalized(Recurrence(order, degree, grid)), initial))
    counts = {n: len(buckets[n]) for n in targets}
    return counts, examples


def brute_force(
    spec: BruteForceSpec,
    budget: int = 10 ** 8,
    huge: bool = False,
    progress: Callable[[int, int], None] | None = None,
) -> tuple[int, list[tuple[Recurrence, tuple[int, ...]]]]:
    """Count distinct sequences hitting the target, with a few examples."""
    counts, examples = brute_force_counts(
        spec.order, spec.degree, spec.coeff_bound, spec.init_bound, spec.horizon,
        {spec.target_index: spec.target_value},
        budget=budget, huge=huge, progress=progress,
    )
    return counts[spec.target_index], examples[spec.target_index]
