"""Polynomial bases used for the coefficient ansatz.

Four families, all integer-valued at integer points and with exact
degree j for the j-th element:

  standard          n^j
  shifted           (n + s)^j
  binomial          C(n + j, j)
  shifted-binomial  C(n + s + j, j)

The shift s defaults to floor(order / 2), which centers the shifted
families on the middle of the window a_n .. a_{n+r}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

FAMILY_KINDS = ("standard", "shifted", "binomial", "shifted-binomial")


@dataclass(frozen=True)
class BasisFamily:
    kind: str
    shift: int = 0

    def __post_init__(self) -> None:
        if self.kind not in FAMILY_KINDS:
            raise ValueError(f"unknown basis family {self.kind!r}")
        if self.kind in ("standard", "binomial") and self.shift != 0:
            raise ValueError(f"{self.kind} family takes no shift")

    def label(self) -> str:
        if self.kind in ("standard", "binomial"):
            return self.kind
        return f"{self.kind}({self.shift:+d})"


STANDARD = BasisFamily("standard")


def default_shift(order: int) -> int:
    return order // 2


def make_family(kind: str, order: int = 0, shift: int | None = None) -> BasisFamily:
    """Family from a CLI-style name, resolving the default shift."""
    if kind in ("standard", "binomial"):
        return BasisFamily(kind)
    if shift is None:
        shift = default_shift(order)
    return BasisFamily(kind, shift)


def _binomial(a: int, j: int) -> int:
    """C(a, j) for any integer a and j >= 0 (generalized, still an integer)."""
    if j < 0:
        raise ValueError("lower index must be nonnegative")
    if a >= 0:
        return math.comb(a, j)
    num = 1
    for t in range(j):
        num *= a - t
    return num // math.factorial(j)


def eval_basis(family: BasisFamily, j: int, n: int) -> int:
    """Value b_j(n) of the j-th basis element.  Always an integer."""
    if j < 0:
        raise ValueError("basis index must be nonnegative")
    if family.kind == "standard":
        return n ** j
    if family.kind == "shifted":
        return (n + family.shift) ** j
    if family.kind == "binomial":
        return _binomial(n + j, j)
    return _binomial(n + family.shift + j, j)


def basis_poly(family: BasisFamily, j: int) -> list[Fraction]:
    """Coefficients of b_j in the power basis, ascending, length j + 1."""
    if family.kind == "standard":
        return [Fraction(0)] * j + [Fraction(1)]
    if family.kind == "shifted":
        s = family.shift
        return [Fraction(math.comb(j, t) * s ** (j - t)) for t in range(j + 1)]
    s = family.shift if family.kind == "shifted-binomial" else 0
    # C(x + s + j, j) = prod_{t=1..j} (x + s + t) / j!
    poly = [Fraction(1)]
    for t in range(1, j + 1):
        const = Fraction(s + t)
        poly = [0] + poly  # multiply by x
        poly = [poly[i] + (const * poly[i + 1] if i + 1 < len(poly) else 0) for i in range(len(poly))]
    fact = Fraction(math.factorial(j))
    return [c / fact for c in poly]


def to_standard(family: BasisFamily, coeffs: Sequence[Fraction | int]) -> list[Fraction]:
    """Power-basis coefficients of sum_j coeffs[j] * b_j, ascending.

    Output has the same length as the input; the change of basis is
    triangular because each b_j has exact degree j.
    """
    out = [Fraction(0)] * len(coeffs)
    for j, c in enumerate(coeffs):
        c = Fraction(c)
        if c == 0:
            continue
        for t, p in enumerate(basis_poly(family, j)):
            out[t] += c * p
    return out
