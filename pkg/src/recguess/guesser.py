"""Recurrence guessing from few terms.

Four strategies over the ansatz sum_{i<=r} sum_{j<=d} c_{i,j} b_j(n) a(n+i) = 0:

  classical    rational nullspace; accepts only a 1-dimensional kernel,
               which needs roughly (r+1)(d+2) <= N+2 terms
  hnf-lll      basis of the integer kernel lattice via HNF, then LLL;
               the first reduced vector is the candidate
  modular      kernels modulo word-sized primes, CRT-merged, lifted to
               the lattice {w : Mw = 0 mod q}, then LLL until the
               candidate fits the data
  incremental  degree sweep d = d_min..d_max recycling the reduced
               basis of each degree as an LLL prefix for the next

All of them return a candidate that fits every window of the supplied
terms; with fewer terms than the classical threshold the candidate is a
conjecture and should be screened by a plausibility check.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Callable, Iterator, Sequence

from .exact_linalg import (
    IntMatrix,
    RatMatrix,
    clear_denominators,
    hnf,
    integer_kernel,
    rational_kernel,
)
from .lattice import (
    DEFAULT_PARAMS,
    LatticeBasis,
    ReductionParams,
    lll_reduce,
    lll_reduce_with_prefix,
)
from .modular import crt_merge, kernel_mod_p, lift_lattice, prime_stream
from .poly_basis import STANDARD, BasisFamily, eval_basis, make_family
from .recurrence import (
    Recurrence,
    SequenceData,
    TooFewTermsError,
    fits_data,
    from_vector,
    integrality_check,
)

ALGORITHMS = ("classical", "hnf-lll", "modular", "incremental")

# safety cap on CRT merges; each merge multiplies the modulus by a prime
# around 2^31, so hitting this means something is wrong
_MAX_MERGES = 64


@dataclass(frozen=True)
class GuessProblem:
    """One guessing task: data plus the ansatz cell (or degree range)."""

    data: SequenceData
    order: int
    degree_min: int
    degree_max: int
    family: BasisFamily = STANDARD
    params: ReductionParams = DEFAULT_PARAMS
    primes: tuple[int, ...] = ()
    horizon: int = 10

    def __post_init__(self) -> None:
        if self.order < 1:
            raise ValueError("order must be at least 1")
        if not 0 <= self.degree_min <= self.degree_max:
            raise ValueError("need 0 <= degree_min <= degree_max")

    @classmethod
    def cell(cls, data: SequenceData, order: int, degree: int, **kw) -> "GuessProblem":
        return cls(data, order, degree, degree, **kw)

    @property
    def degree(self) -> int:
        if self.degree_min != self.degree_max:
            raise ValueError("degree range is not a single cell")
        return self.degree_max


@dataclass(frozen=True)
class GuessMatrix:
    """Integer guess matrix for one (order, degree) cell.

    Columns come in blocks of descending basis degree j = d..0; inside a
    block the shift runs i = 0..r.  Row n encodes the window
    a_n..a_{n+r} against b_j(n), scaled integral row by row.
    """

    matrix: IntMatrix
    order: int
    degree: int

    @property
    def rows(self) -> int:
        return self.matrix.rows

    @property
    def cols(self) -> int:
        return self.matrix.cols


def build_matrix(data: SequenceData, order: int, degree: int, family: BasisFamily = STANDARD) -> GuessMatrix:
    """Guess matrix with k = N - r + 1 rows and (r+1)(d+1) columns."""
    r, d = order, degree
    n_last = data.last_index
    k = n_last - r + 1
    if k < 1:
        raise TooFewTermsError(f"need at least {r + 1} terms for order {r}")
    t = data.terms
    rows = []
    for n in range(k):
        row = []
        for j in range(d, -1, -1):
            b = eval_basis(family, j, n)
            for i in range(r + 1):
                row.append(b * t[n + i])
        rows.append(row)
    rat = RatMatrix.from_rows(rows, cols=(r + 1) * (d + 1))
    return GuessMatrix(clear_denominators(rat), r, d)


@dataclass(frozen=True)
class CellResult:
    """Outcome of one guessing run, with diagnostics for reporting."""

    algorithm: str
    recurrence: Recurrence | None
    kernel_dim: int
    degree: int | None = None
    margin: int | None = None


def run_cell(problem: GuessProblem, algorithm: str) -> CellResult:
    if algorithm == "classical":
        return _run_classical(problem)
    if algorithm == "hnf-lll":
        return _run_hnf_lll(problem)
    if algorithm == "modular":
        return _run_modular(problem)
    if algorithm == "incremental":
        return _run_incremental(problem)
    raise ValueError(f"unknown algorithm {algorithm!r}")


def _run_classical(problem: GuessProblem) -> CellResult:
    """Overdetermined baseline: accept only a unique (rank-1) nullspace."""
    gm = build_matrix(problem.data, problem.order, problem.degree, problem.family)
    basis = rational_kernel(gm.matrix)
    margin = gm.rows - gm.cols
    if len(basis) != 1:
        return CellResult("classical", None, len(basis), gm.degree, margin)
    rec = from_vector(basis[0], gm.order, gm.degree, problem.family)
    return CellResult("classical", rec, 1, gm.degree, margin)


def _run_hnf_lll(problem: GuessProblem) -> CellResult:
    gm = build_matrix(problem.data, problem.order, problem.degree, problem.family)
    kernel = integer_kernel(gm.matrix)
    if not kernel:
        return CellResult("hnf-lll", None, 0, gm.degree)
    reduced = lll_reduce(LatticeBasis._trusted(kernel), problem.params)
    rec = from_vector(reduced[0], gm.order, gm.degree, problem.family)
    return CellResult("hnf-lll", rec, len(kernel), gm.degree)


def _run_modular(problem: GuessProblem) -> CellResult:
    """Modular kernels + CRT, growing the modulus until the guess fits."""
    gm = build_matrix(problem.data, problem.order, problem.degree, problem.family)
    stream = prime_stream(problem.primes)
    acc = kernel_mod_p(gm.matrix, next(stream))
    if acc.dimension == 0:
        return CellResult("modular", None, 0, gm.degree)
    for _ in range(_MAX_MERGES):
        fresh = kernel_mod_p(gm.matrix, next(stream))
        if fresh.dimension > acc.dimension:
            continue  # the new prime is unlucky: its rank dropped
        if fresh.dimension < acc.dimension:
            # every previously used prime was unlucky; start over
            acc = fresh
            if acc.dimension == 0:
                return CellResult("modular", None, 0, gm.degree)
            continue
        acc = crt_merge(acc, fresh)
        reduced = lll_reduce(lift_lattice(acc), problem.params)
        rec = from_vector(reduced[0], gm.order, gm.degree, problem.family)
        if fits_data(rec, problem.data):
            return CellResult("modular", rec, acc.dimension, gm.degree)
    raise RuntimeError("modular guess did not stabilize; giving up")


def _run_incremental(problem: GuessProblem) -> CellResult:
    """Degree sweep that recycles each reduced basis as the next prefix.

    At degree d the kernel vectors whose first r+1 components vanish
    span exactly the embedded degree-(d-1) kernel, so the previous
    reduced basis (padded with r+1 leading zeros, which preserves
    LLL-reducedness) together with the fresh HNF rows is again a basis
    of the whole kernel lattice.
    """
    r = problem.order
    plausible = _default_plausibility(problem)
    prev: list[tuple[int, ...]] | None = None
    last_dim = 0
    for d in range(problem.degree_min, problem.degree_max + 1):
        gm = build_matrix(problem.data, r, d, problem.family)
        kernel = integer_kernel(gm.matrix)
        last_dim = len(kernel)
        if not kernel:
            prev = None
            continue
        if prev is None:
            reduced = lll_reduce(LatticeBasis._trusted(kernel), problem.params)
        else:
            # In HNF form exactly the first ell rows keep a nonzero
            # leading block, and those complement the embedded kernel.
            h = hnf(IntMatrix.from_rows(kernel, cols=gm.matrix.cols))
            fresh = [h.row(i) for i in range(h.rows) if any(h.row(i)[: r + 1])]
            padded = [(0,) * (r + 1) + w for w in prev]
            reduced = lll_reduce_with_prefix(
                LatticeBasis._trusted(padded), fresh, problem.params
            )
        prev = list(reduced.vectors)
        rec = from_vector(reduced[0], r, d, problem.family)
        if plausible(rec):
            return CellResult("incremental", rec, len(kernel), d)
    return CellResult("incremental", None, last_dim, None)


def _default_plausibility(problem: GuessProblem) -> Callable[[Recurrence], bool]:
    """Integrality of the continued terms, when that test is meaningful."""
    if problem.data.is_integral():
        return lambda rec: integrality_check(rec, problem.data, problem.horizon)
    return lambda rec: True


def guess_classical(problem: GuessProblem) -> Recurrence | None:
    return _run_classical(problem).recurrence


def guess_hnf_lll(problem: GuessProblem) -> Recurrence | None:
    return _run_hnf_lll(problem).recurrence


def guess_modular(problem: GuessProblem) -> Recurrence | None:
    return _run_modular(problem).recurrence


def guess_incremental(problem: GuessProblem) -> Recurrence | None:
    return _run_incremental(problem).recurrence


def default_grid(
    n_last: int,
    max_order: int | None = None,
    max_degree: int | None = None,
) -> list[tuple[int, int]]:
    """Ansatz cells (r, d) worth trying on a_0..a_N, smallest first.

    Includes every cell with (r+1)(d+2) <= 3N, i.e. up to three times
    the data a classical guesser would need, sorted by column count
    (r+1)(d+1), then order.
    """
    cells = []
    r = 1
    while (r + 1) * 2 <= 3 * n_last and (max_order is None or r <= max_order):
        d = 0
        while (r + 1) * (d + 2) <= 3 * n_last and (max_degree is None or d <= max_degree):
            cells.append((r, d))
            d += 1
        r += 1
    cells.sort(key=lambda rd: ((rd[0] + 1) * (rd[1] + 1), rd[0]))
    return cells


def default_families(order: int) -> list[BasisFamily]:
    """Candidate bases in scanning order, shifted variants first.

    At order <= 1 the default shift is 0 and the shifted variants
    coincide with their unshifted ones, so duplicates are dropped.
    """
    unshifted = {"shifted": "standard", "shifted-binomial": "binomial"}
    families = [
        make_family("shifted", order),
        BasisFamily("standard"),
        BasisFamily("binomial"),
        make_family("shifted-binomial", order),
    ]
    out: list[BasisFamily] = []
    for fam in families:
        if fam.shift == 0 and fam.kind in unshifted:
            fam = BasisFamily(unshifted[fam.kind])
        if fam not in out:
            out.append(fam)
    return out


@dataclass(frozen=True)
class MinTermsResult:
    count: int
    recurrence: Recurrence
    family: BasisFamily
    algorithm: str


def min_terms(
    data: SequenceData,
    order: int,
    degree_min: int,
    degree_max: int,
    algorithm: str = "hnf-lll",
    families: Sequence[BasisFamily] | None = None,
    params: ReductionParams = DEFAULT_PARAMS,
    primes: tuple[int, ...] = (),
    horizon: int = 10,
    accept: Callable[[Recurrence], bool] | None = None,
) -> MinTermsResult | None:
    """Smallest prefix length from which the method's guess is accepted.

    Default acceptance: the candidate fits every term of `data`, not
    just the prefix it was guessed from.  Scans prefix lengths upward;
    for each length the families are tried in the given order (default:
    shifted, standard, binomial, shifted-binomial).  The classical
    method is basis-independent, so it only ever runs with the standard
    family.
    """
    if algorithm not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    if families is None:
        families = default_families(order)
    if algorithm == "classical":
        families = [STANDARD]
    if accept is None:
        accept = lambda rec: fits_data(rec, data)
    for count in range(order + 1, len(data) + 1):
        prefix = data.prefix(count)
        for family in families:
            problem = GuessProblem(
                prefix, order, degree_min, degree_max,
                family=family, params=params, primes=primes, horizon=horizon,
            )
            result = run_cell(problem, algorithm)
            rec = result.recurrence
            if rec is not None and accept(rec):
                return MinTermsResult(count, rec, family, algorithm)
    return None
