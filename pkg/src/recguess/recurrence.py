"""Recurrences with polynomial coefficients and sequence data.

A recurrence of order r and degree d is

    sum_{i=0..r} p_i(n) * a(n+i) = 0,      deg p_i <= d,

stored as an integer coefficient grid coeffs[i][j] (shift-major: i is
the shift, j the power of n), normalized to content 1 with the leading
polynomial's leading coefficient positive.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .poly_basis import STANDARD, BasisFamily, to_standard


class TooFewTermsError(ValueError):
    """Not enough sequence terms for the requested operation."""


class LeadingCoefficientZeroError(ZeroDivisionError):
    """The leading polynomial vanishes at an index needed for unrolling."""

    def __init__(self, n: int):
        super().__init__(f"leading coefficient vanishes at n = {n}")
        self.n = n


@dataclass(frozen=True)
class SequenceData:
    """Finite prefix a(offset), a(offset+1), ..., stored as Fractions.

    Internally everything is re-indexed to start at 0; the offset is
    carried only for reporting.
    """

    terms: tuple[Fraction, ...]
    offset: int = 0

    def __post_init__(self) -> None:
        if not self.terms:
            raise TooFewTermsError("a sequence needs at least one term")
        object.__setattr__(self, "terms", tuple(Fraction(t) for t in self.terms))

    @property
    def last_index(self) -> int:
        """N such that the data covers a_0 .. a_N (after re-indexing)."""
        return len(self.terms) - 1

    def __len__(self) -> int:
        return len(self.terms)

    def is_integral(self) -> bool:
        return all(t.denominator == 1 for t in self.terms)

    def prefix(self, count: int) -> "SequenceData":
        if count < 1 or count > len(self.terms):
            raise TooFewTermsError(f"cannot take a prefix of {count} terms")
        return SequenceData(self.terms[:count], self.offset)


def sequence_from(values: Iterable, offset: int = 0) -> SequenceData:
    """Build SequenceData from ints, Fractions, or strings like '3/7'."""
    return SequenceData(tuple(Fraction(v) for v in values), offset)


@dataclass(frozen=True)
class Recurrence:
    order: int
    degree: int
    coeffs: tuple[tuple[int, ...], ...]
    origin_family: BasisFamily = STANDARD

    def __post_init__(self) -> None:
        if self.order < 0 or self.degree < 0:
            raise ValueError("order and degree must be nonnegative")
        grid = tuple(tuple(int(c) for c in row) for row in self.coeffs)
        object.__setattr__(self, "coeffs", grid)
        if len(grid) != self.order + 1 or any(len(row) != self.degree + 1 for row in grid):
            raise ValueError("coefficient grid must be (order+1) x (degree+1)")
        if not any(c for row in grid for c in row):
            raise ValueError("zero recurrence")

    def poly(self, i: int) -> tuple[int, ...]:
        """Coefficients of p_i, ascending powers."""
        return self.coeffs[i]

    def eval_poly(self, i: int, n: int) -> int:
        acc = 0
        for c in reversed(self.coeffs[i]):
            acc = acc * n + c
        return acc

    def sup_norm(self) -> int:
        return max(abs(c) for row in self.coeffs for c in row)


def _normalize_grid(grid: list[list[int]]) -> list[list[int]]:
    """Divide by the content and fix the sign.

    Sign rule: the leading nonzero coefficient of the leading polynomial
    is positive; if p_r is identically zero (the order overshoots), the
    highest shift with a nonzero polynomial decides instead.
    """
    content = 0
    for row in grid:
        for c in row:
            content = math.gcd(content, c)
    if content == 0:
        raise ValueError("zero recurrence")
    grid = [[c // content for c in row] for row in grid]
    for row in reversed(grid):
        lead = next((c for c in reversed(row) if c), None)
        if lead is not None:
            if lead < 0:
                grid = [[-c for c in row] for row in grid]
            break
    return grid


def from_vector(
    v: Sequence[Fraction | int],
    order: int,
    degree: int,
    family: BasisFamily = STANDARD,
) -> Recurrence:
    """Recurrence from a solution vector of the guess matrix.

    The vector is laid out in blocks by descending basis degree j = d..0
    and within each block by shift i = 0..r, i.e. v[(d-j)*(r+1) + i] is
    the coefficient of b_j(n) * a(n+i).  The family coefficients are
    converted to the power basis and the grid is normalized.
    """
    r, d = order, degree
    if len(v) != (r + 1) * (d + 1):
        raise ValueError(f"vector length {len(v)} != (r+1)(d+1) = {(r + 1) * (d + 1)}")
    if not any(v):
        raise ValueError("zero vector")
    rows: list[list[Fraction]] = []
    for i in range(r + 1):
        fam_coeffs = [Fraction(v[(d - j) * (r + 1) + i]) for j in range(d + 1)]
        rows.append(to_standard(family, fam_coeffs))
    denom = math.lcm(*(c.denominator for row in rows for c in row))
    grid = [[int(c * denom) for c in row] for row in rows]
    grid = _normalize_grid(grid)
    return Recurrence(r, d, tuple(tuple(row) for row in grid), origin_family=family)


def normalized(rec: Recurrence) -> Recurrence:
    """Same recurrence with content 1 and canonical sign."""
    grid = _normalize_grid([list(row) for row in rec.coeffs])
    return Recurrence(rec.order, rec.degree, tuple(tuple(row) for row in grid), rec.origin_family)


def unroll(rec: Recurrence, initial: Sequence[Fraction | int], count: int) -> list[Fraction]:
    """First `count` terms generated from `initial` (at least r values).

    Terms are Fractions; raises LeadingCoefficientZeroError if p_r
    vanishes at an index the unrolling needs.
    """
    r = rec.order
    if len(initial) < r:
        raise TooFewTermsError(f"need at least {r} initial terms")
    terms = [Fraction(t) for t in initial]
    while len(terms) < count:
        n = len(terms) - r
        lead = rec.eval_poly(r, n)
        if lead == 0:
            raise LeadingCoefficientZeroError(n)
        acc = Fraction(0)
        for i in range(r):
            acc += rec.eval_poly(i, n) * terms[n + i]
        terms.append(-acc / lead)
    return terms[:count]


def fits_data(rec: Recurrence, data: SequenceData) -> bool:
    """Whether the recurrence annihilates every full window of the data."""
    r = rec.order
    if data.last_index < r:
        raise TooFewTermsError(f"need at least {r + 1} terms to test an order-{r} recurrence")
    t = data.terms
    for n in range(len(t) - r):
        if sum(rec.eval_poly(i, n) * t[n + i] for i in range(r + 1)) != 0:
            return False
    return True


def integrality_check(rec: Recurrence, data: SequenceData, horizon: int = 10) -> bool:
    """Continue the sequence `horizon` steps; True iff all new terms are integers.

    The plausibility filter for integer sequences: a wrong candidate
    almost always produces fractions as soon as it has to divide by its
    leading polynomial.  Returns False (no exception) when the leading
    polynomial vanishes inside the window.
    """
    r = rec.order
    if data.last_index < r:
        raise TooFewTermsError(f"need at least {r + 1} terms")
    terms = list(data.terms)
    for _ in range(horizon):
        n = len(terms) - r
        lead = rec.eval_poly(r, n)
        if lead == 0:
            return False
        acc = Fraction(0)
        for i in range(r):
            acc += rec.eval_poly(i, n) * terms[n + i]
        nxt = -acc / lead
        if nxt.denominator != 1:
            return False
        terms.append(nxt)
    return True


def _format_poly(coeffs: Sequence[int]) -> str:
    """Ascending-power int coefficients -> compact text, descending powers."""
    parts: list[str] = []
    for j in range(len(coeffs) - 1, -1, -1):
        c = coeffs[j]
        if c == 0:
            continue
        sign = "-" if c < 0 else ("+" if parts else "")
        mag = abs(c)
        if j == 0:
            body = str(mag)
        else:
            head = "" if mag == 1 else str(mag)
            body = f"{head}n" if j == 1 else f"{head}n^{j}"
        parts.append(f"{sign}{body}")
    return "".join(parts) if parts else "0"


def format_recurrence(rec: Recurrence) -> str:
    """Human-readable form like '(4n+6)*a(n) + (-5n-9)*a(n+1) + (n+3)*a(n+2) = 0'."""
    terms = []
    for i in range(rec.order + 1):
        poly = rec.coeffs[i]
        if not any(poly):
            continue
        arg = "n" if i == 0 else f"n+{i}"
        terms.append(f"({_format_poly(poly)})*a({arg})")
    return " + ".join(terms) + " = 0"


_TERM_RE = re.compile(r"\(([^()]*)\)\*a\(n(?:\+(\d+))?\)")
_MONOMIAL_RE = re.compile(r"([+-]?)(\d*)(n(?:\^(\d+))?)?")


def _parse_poly(text: str) -> dict[int, int]:
    """Parse '(4n^2-5n-9)' body into {power: coefficient}."""
    out: dict[int, int] = {}
    pos = 0
    text = text.replace(" ", "")
    while pos < len(text):
        m = _MONOMIAL_RE.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial {text!r} at {pos}")
        sign, digits, nvar, power = m.groups()
        coeff = int(digits) if digits else 1
        if sign == "-":
            coeff = -coeff
        if nvar is None:
            j = 0
        else:
            j = int(power) if power else 1
        out[j] = out.get(j, 0) + coeff
        pos = m.end()
    return out


def parse_recurrence(text: str) -> Recurrence:
    """Inverse of format_recurrence.

    Accepts the exact output format; the parsed order and degree are the
    largest shift and power that appear, so formatting a recurrence
    whose leading polynomial or top-degree column is nonzero and parsing
    it back reproduces the original grid.
    """
    body = text.strip()
    if body.endswith("= 0"):
        body = body[: -len("= 0")].strip()
    matches = _TERM_RE.findall(body)
    if not matches:
        raise ValueError(f"no recurrence terms found in {text!r}")
    polys: dict[int, dict[int, int]] = {}
    for poly_text, shift_text in matches:
        i = int(shift_text) if shift_text else 0
        polys[i] = _parse_poly(poly_text)
    order = max(polys)
    degree = max((j for p in polys.values() for j in p), default=0)
    grid = tuple(
        tuple(polys.get(i, {}).get(j, 0) for j in range(degree + 1))
        for i in range(order + 1)
    )
    return Recurrence(order, degree, grid)
