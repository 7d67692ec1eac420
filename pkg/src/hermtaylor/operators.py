"""Stationary difference operators with matrix coefficients.

An operator acts as ``(L c)(a) = sum_b L(b) c(a + b)`` and is stored as its
symbol ``L*(z) = sum_b L(b) z^(-b)``. With ``c#(z) = sum_a c(a) z^a`` this
gives ``(L c)# = L* c#``, so composition is symbol multiplication and the
forward difference has symbol ``z^-1 - 1``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence

from .algebra import (
    DELTA,
    LaurentMatrix,
    LaurentPoly,
    Poly,
    delta_poly_to_laurent,
    format_laurent,
    format_poly,
    laurent_to_delta_poly,
)
from .combinatorics import gregory_g

VARIANTS = ("incomplete", "complete", "prime")

_SUPERSCRIPT = str.maketrans("0123456789-", "⁰¹²³⁴⁵⁶⁷⁸⁹⁻")


@dataclass(frozen=True)
class DiffOp:
    symbol: LaurentMatrix

    @property
    def dim(self) -> int:
        return self.symbol.rows

    def __matmul__(self, other: DiffOp) -> DiffOp:
        """``self ∘ other`` (apply ``other`` first)."""
        return DiffOp(self.symbol * other.symbol)

    def coefficients(self) -> dict[int, list[list[Fraction]]]:
        """Map shift ``b`` to the matrix ``L(b)`` (nonzero ones only)."""
        rng = self.symbol.exponent_range()
        if rng is None:
            return {}
        lo, hi = rng
        out = {}
        for e in range(lo, hi + 1):
            m = self.symbol.coefficient(e)
            if any(x for row in m for x in row):
                out[-e] = m
        return out

    def to_delta(self) -> list[list[Poly]]:
        """Entries as polynomials in the forward difference.

        Raises ``ValueError`` for operators with backward shifts.
        """
        rows = []
        for row in self.symbol.entries:
            out = []
            for e in row:
                p = laurent_to_delta_poly(e)
                if p is None:
                    raise ValueError("operator uses backward shifts; no Delta form")
                out.append(p)
            rows.append(out)
        return rows

    @classmethod
    def from_delta(cls, rows: Sequence[Sequence]) -> DiffOp:
        """Build from entries given as Delta-coefficient lists (ascending) or scalars."""
        grid = []
        for row in rows:
            out = []
            for e in row:
                if isinstance(e, Poly):
                    e = e.coeffs
                elif not isinstance(e, (list, tuple)):
                    e = [e]
                out.append(delta_poly_to_laurent(e))
            grid.append(out)
        return cls(LaurentMatrix(grid))

    @classmethod
    def constant(cls, matrix: Sequence[Sequence]) -> DiffOp:
        return cls(LaurentMatrix(matrix))


@dataclass(frozen=True)
class DilationMatrix:
    """``diag(1, 1/2, ..., 2^-d)`` used by the level-dependent Hermite masks."""

    d: int

    def power(self, level: int) -> list[Fraction]:
        """Diagonal of the ``level``-th power (``level`` may be negative)."""
        return [Fraction(2) ** (-k * level) for k in range(self.d + 1)]

    def matrix(self) -> list[list[Fraction]]:
        diag = self.power(1)
        return [[diag[i] if i == j else Fraction(0) for j in range(self.d + 1)] for i in range(self.d + 1)]


def delta_power(k: int) -> LaurentPoly:
    return DELTA ** k


def delta_block(d: int) -> DiffOp:
    """``diag(1, ..., 1, Delta)`` of size ``d + 1``."""
    if d < 1:
        raise ValueError("d must be >= 1")
    return DiffOp(LaurentMatrix.diag([1] * d + [DELTA]))


def _taylor_band(d: int) -> list[list[LaurentPoly]]:
    """Upper-left ``d x d`` block of the complete Taylor operator."""
    grid = [[LaurentPoly() for _ in range(d)] for _ in range(d)]
    for i in range(d):
        grid[i][i] = DELTA
        for k in range(i + 1, d):
            grid[i][k] = LaurentPoly.const(Fraction(-1, factorial(k - i)))
    return grid


def taylor(d: int, variant: str = "complete") -> DiffOp:
    """Incomplete, complete or primed Taylor operator of size ``d + 1``.

    ``d = 0`` gives the 1x1 conventions: ``Delta`` for the complete variant,
    the identity otherwise.
    """
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    if d < 0:
        raise ValueError("d must be >= 0")
    band = _taylor_band(d + 1)
    if variant == "incomplete":
        band[d][d] = LaurentPoly.const(1)
    elif variant == "prime":
        for i in range(d):
            band[i][d] = LaurentPoly()
        band[d][d] = LaurentPoly.const(1)
    return DiffOp(LaurentMatrix(band))


def augmented_taylor(d: int, n: int) -> DiffOp:
    """Augmented Taylor operator of order ``n``, built entry by entry.

    Upper-left block is the complete Taylor operator of size ``d``; row
    ``i < d`` of the last column is ``-sum_{k<=n-d} G_k^(d-i) Delta^k``;
    the corner is ``Delta^(n+1-d)``.
    """
    if d < 1 or n < d:
        raise ValueError("need n >= d >= 1")
    grid = [row + [LaurentPoly()] for row in _taylor_band(d)]
    grid.append([LaurentPoly()] * d + [delta_power(n + 1 - d)])
    for i in range(d):
        grid[i][d] = delta_poly_to_laurent([-gregory_g(k, d - i) for k in range(n - d + 1)])
    return DiffOp(LaurentMatrix(grid))


def gauss_matrix(y: Sequence, inverse: bool = False) -> list[list[Fraction]]:
    """``I + y e_d^T`` (or its inverse ``I - y e_d^T``); requires ``y[-1] == 0``."""
    n = len(y)
    if y[-1] != 0:
        raise ValueError("last entry of y must vanish")
    sign = -1 if inverse else 1
    m = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for i in range(n - 1):
        m[i][n - 1] += sign * Fraction(y[i])
    return m


def gauss_step(y: Sequence, d: int) -> DiffOp:
    """The operator ``D (I - y e_d^T)``: identity block, last column ``-y``, corner Delta."""
    if len(y) != d + 1:
        raise ValueError(f"y has length {len(y)}, expected {d + 1}")
    if y[d] != 0:
        raise ValueError("last entry of y must vanish")
    return delta_block(d) @ DiffOp.constant(gauss_matrix(y, inverse=True))


def row_swap(n: int, i: int, j: int) -> DiffOp:
    m = [[Fraction(int(r == c)) for c in range(n)] for r in range(n)]
    m[i], m[j] = m[j], m[i]
    return DiffOp.constant(m)


def _delta_power_str(k: int) -> str:
    return "Δ" + str(k).translate(_SUPERSCRIPT)


def format_delta(op: DiffOp) -> list[str]:
    """One line per row, entries as polynomials in Δ separated by ``", "``."""
    return [
        ", ".join(format_poly(p.coeffs, "Δ", _delta_power_str) for p in row)
        for row in op.to_delta()
    ]


def format_symbol(op: DiffOp) -> list[str]:
    return [", ".join(format_laurent(e) for e in row) for row in op.symbol.entries]
