"""Exact integer and rational linear algebra.

Row-style Hermite normal form, integer kernels, Gram determinants and a
few fraction-free helpers.  Everything works on arbitrary-precision
Python integers or `fractions.Fraction`; no floating point is involved,
so results are exact and reproducible.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

IntVector = tuple[int, ...]


class DimensionMismatchError(ValueError):
    """Matrices or vectors with incompatible shapes."""


class MinorEnumerationLimitError(RuntimeError):
    """Raised when there are more maximal minors than the caller allows."""


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix, entries stored row-major."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise DimensionMismatchError("negative dimension")
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatchError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )
        if not all(isinstance(x, int) for x in self.entries):
            raise TypeError("IntMatrix entries must be int")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if rows:
            cols = len(rows[0])
            if any(len(r) != cols for r in rows):
                raise DimensionMismatchError("ragged rows")
        elif cols is None:
            cols = 0
        flat = tuple(x for r in rows for x in r)
        return cls(len(rows), cols, flat)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    def row(self, i: int) -> IntVector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            self.cols,
            self.rows,
            tuple(self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)),
        )


@dataclass(frozen=True)
class RatMatrix:
    """Immutable rational matrix.  Fraction entries are canonical by construction."""

    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise DimensionMismatchError("negative dimension")
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatchError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[Fraction | int]], cols: int | None = None) -> "RatMatrix":
        rows = [[Fraction(x) for x in r] for r in rows]
        if rows:
            cols = len(rows[0])
            if any(len(r) != cols for r in rows):
                raise DimensionMismatchError("ragged rows")
        elif cols is None:
            cols = 0
        return cls(len(rows), cols, tuple(x for r in rows for x in r))

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with g = gcd(a, b) >= 0 and s*a + t*b = g."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def hnf(m: IntMatrix) -> IntMatrix:
    """Row-style Hermite normal form.

    Unique canonical form: pivots positive and strictly right of the
    pivots above them, entries above a pivot reduced into [0, pivot),
    zero rows collected at the bottom.  Columns without a pivot are not
    otherwise constrained.  Row operations are unimodular, so the row
    lattice is preserved.
    """
    a = m.to_rows()
    nrows, ncols = m.rows, m.cols
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        for i in range(r + 1, nrows):
            if a[i][c] == 0:
                continue
            p, q = a[r][c], a[i][c]
            if p != 0 and q % p == 0:
                f = q // p
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
                continue
            g, s, t = _xgcd(p, q)
            # 2x2 unimodular transform sending (p, q) to (g, 0)
            u, v = -(q // g), p // g
            row_r, row_i = a[r], a[i]
            a[r] = [s * x + t * y for x, y in zip(row_r, row_i)]
            a[i] = [u * x + v * y for x, y in zip(row_r, row_i)]
        if a[r][c] != 0:
            if a[r][c] < 0:
                a[r] = [-x for x in a[r]]
            piv = a[r][c]
            for i in range(r):
                f = a[i][c] // piv  # floor keeps the remainder in [0, piv)
                if f:
                    a[i] = [x - f * y for x, y in zip(a[i], a[r])]
            r += 1
    return IntMatrix.from_rows(a, cols=ncols)


def _nonzero_hnf_rows(vectors: Sequence[Sequence[int]], cols: int) -> tuple[IntVector, ...]:
    h = hnf(IntMatrix.from_rows(vectors, cols=cols))
    return tuple(h.row(i) for i in range(h.rows) if any(h.row(i)))


def lattice_equal(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> bool:
    """Whether two generating sets span the same integer lattice.

    Decided by comparing canonical HNFs, zero rows dropped.  Empty
    generating sets denote the zero lattice.
    """
    a = [list(v) for v in a]
    b = [list(v) for v in b]
    cols_a = len(a[0]) if a else None
    cols_b = len(b[0]) if b else None
    if cols_a is not None and cols_b is not None and cols_a != cols_b:
        raise DimensionMismatchError("ambient dimensions differ")
    ha = _nonzero_hnf_rows(a, cols_a or 0) if a else ()
    hb = _nonzero_hnf_rows(b, cols_b or 0) if b else ()
    return ha == hb


def clear_denominators(m: RatMatrix) -> IntMatrix:
    """Scale each row by the lcm of its entries' denominators."""
    out = []
    for i in range(m.rows):
        row = m.row(i)
        scale = math.lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * scale) for x in row])
    return IntMatrix.from_rows(out, cols=m.cols)


# Witness prime for the trivial-kernel fast path: full column rank mod any
# single prime already proves the rational (hence integer) kernel is {0}.
_RANK_WITNESS_PRIME = (1 << 61) - 1


def _full_column_rank_mod_p(m: IntMatrix, p: int) -> bool:
    if m.rows < m.cols:
        return False
    rows = [[x % p for x in m.row(i)] for i in range(m.rows)]
    rank = 0
    for c in range(m.cols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if piv is None:
            return False
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][c], -1, p)
        lead = [(x * inv) % p for x in rows[rank]]
        rows[rank] = lead
        for i in range(rank + 1, len(rows)):
            f = rows[i][c]
            if f:
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], lead)]
        rank += 1
    return True


def integer_kernel(m: IntMatrix | RatMatrix) -> list[IntVector]:
    """Basis of the integer kernel {v in Z^cols : M v = 0}.

    Row-echelonizes (M^T | I) with unimodular operations: rows whose
    first block comes out zero carry kernel vectors in the identity
    block, and they form a basis of the full kernel lattice (not merely
    a finite-index sublattice).  Unlike `hnf` this skips the canonical
    above-pivot reduction, which dominates the cost on wide blocks with
    large entries and does not change the span of the zero-block rows.
    Rational input is cleared row-wise first, which does not change the
    kernel.  Returns [] when the matrix has full column rank.
    """
    if isinstance(m, RatMatrix):
        m = clear_denominators(m)
    if _full_column_rank_mod_p(m, _RANK_WITNESS_PRIME):
        return []
    n, w = m.rows, m.cols
    rows = m.to_rows()
    a = []
    for j in range(w):
        a.append([rows[i][j] for i in range(n)] + [1 if t == j else 0 for t in range(w)])
    r = 0
    for c in range(n):
        if r == w:
            break
        for i in range(r + 1, w):
            if a[i][c] == 0:
                continue
            p, q = a[r][c], a[i][c]
            if p != 0 and q % p == 0:
                f = q // p
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
                continue
            g, s, t = _xgcd(p, q)
            u, v = -(q // g), p // g
            row_r, row_i = a[r], a[i]
            a[r] = [s * x + t * y for x, y in zip(row_r, row_i)]
            a[i] = [u * x + v * y for x, y in zip(row_r, row_i)]
        if a[r][c] != 0:
            r += 1
    basis: list[IntVector] = []
    for i in range(r, w):
        tail = tuple(a[i][n:])
        if any(tail):
            basis.append(tail)
    return basis


def _det_bareiss(a: list[list[int]]) -> int:
    """Determinant by fraction-free elimination.  Destroys its argument."""
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        piv = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * piv - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = piv
    return sign * a[n - 1][n - 1]


def gram_det(m: IntMatrix) -> int:
    """det(M M^T) for a matrix with rows <= cols.  Zero iff rows are dependent."""
    if m.rows > m.cols:
        raise DimensionMismatchError("gram_det expects rows <= cols")
    rows = m.to_rows()
    g = [[sum(x * y for x, y in zip(ri, rj)) for rj in rows] for ri in rows]
    return _det_bareiss(g)


def minor_gcd(m: IntMatrix, limit: int = 100_000) -> int:
    """Gcd of all maximal (rows x rows) minors of a wide matrix.

    Zero iff the rank is below the row count.  Raises
    MinorEnumerationLimitError when C(cols, rows) exceeds `limit`;
    callers that only want a divisor bound may then fall back to 1.
    """
    if m.rows > m.cols:
        raise DimensionMismatchError("minor_gcd expects rows <= cols")
    count = math.comb(m.cols, m.rows)
    if count > limit:
        raise MinorEnumerationLimitError(
            f"{count} maximal minors exceed the enumeration limit {limit}"
        )
    rows = m.to_rows()
    g = 0
    for cols in itertools.combinations(range(m.cols), m.rows):
        sub = [[row[c] for c in cols] for row in rows]
        g = math.gcd(g, _det_bareiss(sub))
        if g == 1:
            break
    return g


def rational_rank(m: IntMatrix | RatMatrix) -> int:
    """Rank over the rationals, by fraction-free elimination."""
    if isinstance(m, RatMatrix):
        m = clear_denominators(m)
    a = m.to_rows()
    nrows, ncols = m.rows, m.cols
    rank = 0
    prev = 1
    for c in range(ncols):
        if rank == nrows:
            break
        piv_row = next((i for i in range(rank, nrows) if a[i][c] != 0), None)
        if piv_row is None:
            continue
        a[rank], a[piv_row] = a[piv_row], a[rank]
        piv = a[rank][c]
        for i in range(rank + 1, nrows):
            for j in range(c + 1, ncols):
                a[i][j] = (a[i][j] * piv - a[i][c] * a[rank][j]) // prev
            a[i][c] = 0
        prev = piv
        rank += 1
    return rank


def rational_kernel(m: IntMatrix | RatMatrix) -> list[tuple[Fraction, ...]]:
    """Basis of the rational nullspace via Gaussian elimination (RREF).

    One basis vector per free column, unit entry at that column, sorted
    by free column.  Kept independent of the HNF-based integer kernel so
    the two can cross-check each other.
    """
    if isinstance(m, IntMatrix):
        a = [[Fraction(x) for x in m.row(i)] for i in range(m.rows)]
    else:
        a = m.to_rows()
    nrows, ncols = len(a), m.cols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv_row = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if piv_row is None:
            continue
        a[r], a[piv_row] = a[piv_row], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -a[i][f]
        basis.append(tuple(v))
    return basis
