"""Kernels modulo primes, CRT merging, and lattice lifting.

The modular route avoids big intermediate integers: row-reduce the
guess matrix modulo word-sized primes, merge the kernels by Chinese
remaindering, lift the merged kernel to the integer lattice
{w : M w = 0 mod q}, and hand that to LLL.  Because the true integer
kernel is contained in the lifted lattice, a short vector of the lift
that actually fits the data is a genuine solution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence

from .exact_linalg import IntMatrix, IntVector, hnf
from .lattice import LatticeBasis


class PivotProfileMismatchError(ValueError):
    """Two modular kernels disagree structurally and cannot be merged."""

    def __init__(self, message: str, suspect_modulus: int | None = None):
        super().__init__(message)
        self.suspect_modulus = suspect_modulus


@dataclass(frozen=True)
class ModularKernel:
    """Row-reduced kernel basis modulo q.

    The basis matrix itself is in reduced row echelon form mod q (unit
    pivots, pivot columns sorted ascending), entries in [0, q).  `cols`
    is the ambient dimension, kept explicitly so empty kernels still
    know it.
    """

    modulus: int
    cols: int
    basis: tuple[IntVector, ...]
    pivot_cols: tuple[int, ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)


def _rref_mod_p(rows: list[list[int]], p: int) -> tuple[list[list[int]], list[int]]:
    """Reduce rows to RREF over Z/p in place; returns (rows, pivot columns)."""
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv_row = next((i for i in range(r, nrows) if rows[i][c] % p != 0), None)
        if piv_row is None:
            continue
        rows[r], rows[piv_row] = rows[piv_row], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [(x * inv) % p for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return rows, pivots


def kernel_mod_p(m: IntMatrix, p: int) -> ModularKernel:
    """Kernel of M over Z/p, as a canonical row-reduced basis.

    A spanning set is read off the free columns of the RREF of M; the
    basis matrix is then itself brought to RREF, which makes it the
    unique canonical basis of the subspace (two kernels of the same
    subspace are literally equal, and the entrywise CRT of two such
    bases is again in this form).
    """
    if p < 2:
        raise ValueError("modulus must be at least 2")
    nrows, ncols = m.rows, m.cols
    a = [[x % p for x in m.row(i)] for i in range(nrows)]
    _, pivots = _rref_mod_p(a, p)
    free = [c for c in range(ncols) if c not in pivots]
    spanning = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for i, c in enumerate(pivots):
            v[c] = (-a[i][f]) % p
        spanning.append(v)
    if not spanning:
        return ModularKernel(p, ncols, (), ())
    basis, kernel_pivots = _rref_mod_p(spanning, p)
    return ModularKernel(p, ncols, tuple(tuple(v) for v in basis), tuple(kernel_pivots))


def crt_merge(k1: ModularKernel, k2: ModularKernel) -> ModularKernel:
    """Entrywise Chinese remainder merge of two modular kernels.

    Requires coprime moduli and identical pivot profiles.  A dimension
    mismatch names the modulus with the larger kernel as suspect (its
    prime lost rank, i.e. was unlucky).
    """
    if math.gcd(k1.modulus, k2.modulus) != 1:
        raise ValueError(f"moduli {k1.modulus} and {k2.modulus} are not coprime")
    if k1.cols != k2.cols:
        raise PivotProfileMismatchError("ambient dimensions differ")
    if k1.dimension != k2.dimension:
        suspect = k1 if k1.dimension > k2.dimension else k2
        raise PivotProfileMismatchError(
            f"kernel dimensions differ ({k1.dimension} mod {k1.modulus} vs "
            f"{k2.dimension} mod {k2.modulus}); modulus {suspect.modulus} looks unlucky",
            suspect_modulus=suspect.modulus,
        )
    if k1.pivot_cols != k2.pivot_cols:
        # equal dimension forces equal pivot profiles for kernels of the
        # same rational matrix, so this indicates corrupted input
        raise PivotProfileMismatchError(
            f"pivot profiles differ at equal dimension "
            f"(mod {k1.modulus}: {k1.pivot_cols}, mod {k2.modulus}: {k2.pivot_cols})"
        )
    q1, q2 = k1.modulus, k2.modulus
    q = q1 * q2
    inv = pow(q1, -1, q2)
    merged = []
    for v1, v2 in zip(k1.basis, k2.basis):
        merged.append(tuple((x1 + q1 * (((x2 - x1) * inv) % q2)) % q for x1, x2 in zip(v1, v2)))
    return ModularKernel(q, k1.cols, tuple(merged), k1.pivot_cols)


def lift_lattice(kernel: ModularKernel) -> LatticeBasis:
    """Basis of {w in Z^cols : M w = 0 mod q} from a kernel mod q.

    The lattice is spanned by the kernel representatives together with
    q times the unit vectors; the HNF of that stack has exactly `cols`
    nonzero rows (the lattice has full rank since it contains qZ^cols).
    """
    q, ncols = kernel.modulus, kernel.cols
    rows = [list(v) for v in kernel.basis]
    rows.extend([q if t == j else 0 for t in range(ncols)] for j in range(ncols))
    h = hnf(IntMatrix.from_rows(rows, cols=ncols))
    nonzero = [h.row(i) for i in range(h.rows) if any(h.row(i))]
    assert len(nonzero) == ncols
    return LatticeBasis._trusted(nonzero)


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin with a fixed base set, deterministic below 3.3e24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


DEFAULT_PRIME_FLOOR = 2 ** 31 + 11  # first prime above 2^31


def prime_stream(pinned: Sequence[int] = (), floor: int = DEFAULT_PRIME_FLOOR) -> Iterator[int]:
    """Deterministic prime source: pinned values first, then ascending
    primes starting at `floor`, skipping anything already pinned."""
    seen = set()
    for p in pinned:
        if not is_probable_prime(p):
            raise ValueError(f"{p} is not prime")
        seen.add(p)
        yield p
    n = floor
    while True:
        if is_probable_prime(n) and n not in seen:
            yield n
        n += 1 if n % 2 == 0 else 2
