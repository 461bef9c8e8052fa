"""Lattice basis reduction over the integers.

All-integer LLL in the style of de Weger: the Gram-Schmidt data is kept
as the integers d_i = det(Gram of first i vectors) and
lambda_{i,j} = d_{j+1} * mu_{i,j}, so no rationals or floats appear and
the reduction is exact for arbitrarily large entries.

The entry point `lll_reduce_with_prefix` starts the sweep after an
already-reduced prefix, which lets callers recycle work when a reduced
basis is extended by fresh vectors (the prefix must genuinely be
LLL-reduced; appending zero coordinates to reduced vectors keeps them
reduced, so padded previous output qualifies).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

from .exact_linalg import IntMatrix, IntVector, rational_rank


class DependentVectorsError(ValueError):
    """Input vectors are linearly dependent over the rationals."""


class SearchSpaceError(ValueError):
    """Brute-force enumeration would exceed the configured limit."""


@dataclass(frozen=True)
class ReductionParams:
    """LLL quality parameters as exact fractions.

    delta in (1/4, 1], eta in [1/2, sqrt(delta)).  The defaults match a
    fairly aggressive reduction (delta = 0.99) with the tightest
    practical size-reduction bound.
    """

    delta: Fraction = Fraction(99, 100)
    eta: Fraction = Fraction(501, 1000)

    def __post_init__(self) -> None:
        delta = Fraction(self.delta)
        eta = Fraction(self.eta)
        object.__setattr__(self, "delta", delta)
        object.__setattr__(self, "eta", eta)
        if not Fraction(1, 4) < delta <= 1:
            raise ValueError("delta must lie in (1/4, 1]")
        if not (Fraction(1, 2) <= eta and eta * eta < delta):
            raise ValueError("eta must lie in [1/2, sqrt(delta))")


DEFAULT_PARAMS = ReductionParams()


@dataclass(frozen=True)
class LatticeBasis:
    """Ordered list of linearly independent integer vectors."""

    vectors: tuple[IntVector, ...]

    def __post_init__(self) -> None:
        vecs = tuple(tuple(int(x) for x in v) for v in self.vectors)
        object.__setattr__(self, "vectors", vecs)
        if not vecs:
            return
        n = len(vecs[0])
        if any(len(v) != n for v in vecs):
            raise ValueError("vectors must share one length")
        if rational_rank(IntMatrix.from_rows(vecs, cols=n)) != len(vecs):
            raise DependentVectorsError("basis vectors are linearly dependent")

    @classmethod
    def _trusted(cls, vectors: Sequence[Sequence[int]]) -> "LatticeBasis":
        # construction that skips the rank check, for vectors produced by
        # operations that provably preserve independence
        obj = object.__new__(cls)
        object.__setattr__(obj, "vectors", tuple(tuple(int(x) for x in v) for v in vectors))
        return obj

    def __len__(self) -> int:
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)

    def __getitem__(self, i: int) -> IntVector:
        return self.vectors[i]

    @property
    def dimension(self) -> int | None:
        return len(self.vectors[0]) if self.vectors else None


def _dot(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(u, v))


def _nearest_quotient(a: int, d: int) -> int:
    """Integer nearest a/d for d > 0, ties rounded toward +infinity."""
    return (2 * a + d) // (2 * d)


def _gram_schmidt_row(b, lam, d, i) -> None:
    """Fill lambda row i and d[i + 1] from vectors 0..i."""
    for j in range(i + 1):
        u = _dot(b[i], b[j])
        for t in range(j):
            u = (d[t + 1] * u - lam[i][t] * lam[j][t]) // d[t]
        if j < i:
            lam[i][j] = u
        else:
            if u <= 0:
                raise DependentVectorsError("vectors are linearly dependent")
            d[i + 1] = u


def _size_reduce(b, lam, d, k, l, eta: Fraction) -> None:
    if abs(lam[k][l]) * eta.denominator > eta.numerator * d[l + 1]:
        q = _nearest_quotient(lam[k][l], d[l + 1])
        b[k] = [x - q * y for x, y in zip(b[k], b[l])]
        for t in range(l):
            lam[k][t] -= q * lam[l][t]
        lam[k][l] -= q * d[l + 1]


def _swap_step(b, lam, d, k, n) -> None:
    """Exchange b[k-1] and b[k], updating the integral GS data in place."""
    lam_k = lam[k][k - 1]
    new_dk = (d[k - 1] * d[k + 1] + lam_k * lam_k) // d[k]
    for j in range(k - 1):
        lam[k - 1][j], lam[k][j] = lam[k][j], lam[k - 1][j]
    for i in range(k + 1, n):
        a0, a1 = lam[i][k - 1], lam[i][k]
        lam[i][k - 1] = (lam_k * a0 + d[k - 1] * a1) // d[k]
        lam[i][k] = (d[k + 1] * a0 - lam_k * a1) // d[k]
    d[k] = new_dk
    b[k - 1], b[k] = b[k], b[k - 1]


def _lll_in_place(b: list[list[int]], params: ReductionParams, start: int) -> None:
    """Exact LLL sweep over b, assuming b[:start] is already reduced.

    Inlined variant of the _size_reduce/_swap_step building blocks: the
    sweep spends almost all its time in these loops, so the quotients
    and guards are spelled out with local bindings.  The arithmetic is
    identical to the helpers, which remain the readable reference (and
    are exercised directly by the certificate tests).
    """
    n = len(b)
    if n == 0:
        return
    lam = [[0] * n for _ in range(n)]
    d = [1] * (n + 1)
    for i in range(n):
        _gram_schmidt_row(b, lam, d, i)
    delta, eta = params.delta, params.eta
    delta_num, delta_den = delta.numerator, delta.denominator
    eta_num, eta_den = eta.numerator, eta.denominator
    k = max(1, start)
    while k < n:
        lam_k = lam[k]
        # size-reduce against the immediate predecessor
        u = lam_k[k - 1]
        dk = d[k]
        if abs(u) * eta_den > eta_num * dk:
            q = (2 * u + dk) // (2 * dk)
            bl = b[k - 1]
            b[k] = [x - q * y for x, y in zip(b[k], bl)]
            lam_l = lam[k - 1]
            for t in range(k - 1):
                lam_k[t] -= q * lam_l[t]
            lam_k[k - 1] -= q * dk
        # Lovasz condition in integral form:
        # delta * d_k^2 <= d_{k+1} d_{k-1} + lambda_{k,k-1}^2
        u = lam_k[k - 1]
        if delta_num * dk * dk > delta_den * (d[k + 1] * d[k - 1] + u * u):
            # swap b[k-1] and b[k], updating the integral GS data
            dk1 = d[k - 1]
            dk2 = d[k + 1]
            new_dk = (dk1 * dk2 + u * u) // dk
            lam_l = lam[k - 1]
            for j in range(k - 1):
                lam_l[j], lam_k[j] = lam_k[j], lam_l[j]
            for i in range(k + 1, n):
                lam_i = lam[i]
                a0, a1 = lam_i[k - 1], lam_i[k]
                lam_i[k - 1] = (u * a0 + dk1 * a1) // dk
                lam_i[k] = (dk2 * a0 - u * a1) // dk
            d[k] = new_dk
            b[k - 1], b[k] = b[k], b[k - 1]
            if k > 1:
                k -= 1
        else:
            for l in range(k - 2, -1, -1):
                u = lam_k[l]
                dl = d[l + 1]
                if abs(u) * eta_den > eta_num * dl:
                    q = (2 * u + dl) // (2 * dl)
                    bl = b[l]
                    b[k] = [x - q * y for x, y in zip(b[k], bl)]
                    lam_l = lam[l]
                    for t in range(l):
                        lam_k[t] -= q * lam_l[t]
                    lam_k[l] -= q * dl
            k += 1


def sign_normalized(v: Sequence[int]) -> IntVector:
    """Flip the sign so the first nonzero entry is positive."""
    for x in v:
        if x:
            return tuple(v) if x > 0 else tuple(-y for y in v)
    return tuple(v)


def lll_reduce(basis: LatticeBasis, params: ReductionParams = DEFAULT_PARAMS) -> LatticeBasis:
    """LLL-reduced basis of the same lattice.

    Output vectors are sign-normalized (first nonzero entry positive),
    which preserves both the lattice and the reduction certificates.
    """
    b = [list(v) for v in basis.vectors]
    _lll_in_place(b, params, start=0)
    return LatticeBasis._trusted([sign_normalized(v) for v in b])


def lll_reduce_with_prefix(
    prefix: LatticeBasis,
    new_vectors: Sequence[Sequence[int]],
    params: ReductionParams = DEFAULT_PARAMS,
) -> LatticeBasis:
    """Reduce prefix + new_vectors, skipping the sweep over the prefix.

    `prefix` must already be LLL-reduced for `params`; the sweep then
    starts at the first new vector, and only drops back into the prefix
    region when an exchange makes it necessary.  The result satisfies
    the same contract as `lll_reduce` applied to the concatenation.
    """
    combined = [list(v) for v in prefix.vectors] + [list(v) for v in new_vectors]
    if not combined:
        return LatticeBasis._trusted([])
    n = len(combined[0])
    if any(len(v) != n for v in combined):
        raise ValueError("vectors must share one length")
    b = [list(v) for v in combined]
    _lll_in_place(b, params, start=len(prefix.vectors))
    return LatticeBasis._trusted([sign_normalized(v) for v in b])


def shortest_vector_bruteforce(
    basis: LatticeBasis,
    coeff_bound: int = 20,
    limit: int = 10_000_000,
) -> IntVector:
    """Shortest nonzero vector among small integer combinations.

    Enumerates all combinations with coefficients in [-coeff_bound,
    coeff_bound], keeping the minimum Euclidean norm; ties are broken by
    lexicographic order of the sign-normalized vector, so the result is
    deterministic.  Only a reference oracle: cost grows like
    (2*coeff_bound + 1)^len(basis), and the enumeration refuses to start
    if that exceeds `limit`.
    """
    k = len(basis.vectors)
    if k == 0:
        raise ValueError("empty basis")
    space = (2 * coeff_bound + 1) ** k
    if space > limit:
        raise SearchSpaceError(f"{space} combinations exceed the limit {limit}")
    vecs = basis.vectors
    m = len(vecs[0])
    best: tuple[int, IntVector] | None = None
    # only coefficient tuples whose first nonzero entry is positive;
    # the mirrored tuple gives the same vector up to sign
    for coeffs in product(range(-coeff_bound, coeff_bound + 1), repeat=k):
        lead = next((c for c in coeffs if c), None)
        if lead is None or lead < 0:
            continue
        v = [0] * m
        for c, vec in zip(coeffs, vecs):
            if c:
                for t in range(m):
                    v[t] += c * vec[t]
        norm = sum(x * x for x in v)
        cand = (norm, sign_normalized(v))
        if best is None or cand < best:
            best = cand
    assert best is not None
    return best[1]


def reduction_certificates(
    basis: LatticeBasis, params: ReductionParams = DEFAULT_PARAMS
) -> tuple[list[list[Fraction]], list[Fraction]]:
    """Rational Gram-Schmidt data (mu, |b*|^2) for checking reducedness.

    Test helper: recomputes mu and the squared GS norms with Fractions,
    independently of the integral bookkeeping used during reduction.
    """
    vecs = basis.vectors
    n = len(vecs)
    mu: list[list[Fraction]] = [[Fraction(0)] * n for _ in range(n)]
    norms: list[Fraction] = [Fraction(0)] * n
    star: list[list[Fraction]] = []
    for i in range(n):
        v = [Fraction(x) for x in vecs[i]]
        for j in range(i):
            if norms[j] == 0:
                raise DependentVectorsError("vectors are linearly dependent")
            mu[i][j] = sum(Fraction(x) * y for x, y in zip(vecs[i], star[j])) / norms[j]
            v = [a - mu[i][j] * b for a, b in zip(v, star[j])]
        star.append(v)
        norms[i] = sum(x * x for x in v)
        if norms[i] == 0:
            raise DependentVectorsError("vectors are linearly dependent")
    return mu, norms


def is_lll_reduced(basis: LatticeBasis, params: ReductionParams = DEFAULT_PARAMS) -> bool:
    """Check size-reduction and the Lovasz condition exactly."""
    mu, norms = reduction_certificates(basis, params)
    n = len(basis.vectors)
    for i in range(n):
        for j in range(i):
            if abs(mu[i][j]) > params.eta:
                return False
    for i in range(1, n):
        if params.delta * norms[i - 1] > norms[i] + mu[i][i - 1] ** 2 * norms[i - 1]:
            return False
    return True
