"""Polynomial vector sequences ``a -> (p_0(a), ..., p_d(a))``.

Operators and subdivision act on these exactly, so identities about
polynomial data are checked as polynomial identities rather than on windows.
"""
from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Iterable, Sequence

from .algebra import Poly, poly_shift
from .operators import DiffOp


class PolyVec(tuple):
    """Tuple of :class:`Poly`, one per vector component."""

    def __new__(cls, entries: Iterable):
        entries = tuple(e if isinstance(e, Poly) else Poly([e]) for e in entries)
        if len(entries) < 2:
            raise ValueError("PolyVec needs at least two components")
        return super().__new__(cls, entries)

    @classmethod
    def constant(cls, vec: Sequence) -> PolyVec:
        return cls(Poly([c]) for c in vec)

    @classmethod
    def zero(cls, n: int) -> PolyVec:
        return cls(Poly() for _ in range(n))

    @classmethod
    def outer(cls, vec: Sequence, p: Poly) -> PolyVec:
        """The sequence ``vec * p(a)``."""
        return cls(p * Fraction(c) for c in vec)

    def __add__(self, other: PolyVec) -> PolyVec:
        _check_len(self, other)
        return PolyVec(a + b for a, b in zip(self, other))

    def __sub__(self, other: PolyVec) -> PolyVec:
        _check_len(self, other)
        return PolyVec(a - b for a, b in zip(self, other))

    def __neg__(self):
        return PolyVec(-a for a in self)

    def scale(self, c) -> PolyVec:
        return PolyVec(a * Fraction(c) for a in self)

    def shift(self, t) -> PolyVec:
        return PolyVec(poly_shift(a, t) for a in self)

    def compose_affine(self, a, b) -> PolyVec:
        return PolyVec(p.compose_affine(a, b) for p in self)

    def is_constant(self) -> bool:
        return all(p.degree <= 0 for p in self)

    def constant_value(self) -> list[Fraction]:
        if not self.is_constant():
            raise ValueError("sequence is not constant")
        return [p.coeffs[0] if p.coeffs else Fraction(0) for p in self]

    def __repr__(self):
        return "PolyVec(" + ", ".join(str(p) for p in self) + ")"


def _check_len(a, b):
    if len(a) != len(b):
        raise ValueError(f"dimension mismatch: {len(a)} vs {len(b)}")


def vpoly(p: Poly, d: int) -> PolyVec:
    """``(p, p', ..., p^(d))``."""
    return PolyVec(p.deriv(k) for k in range(d + 1))


def diffop_apply(op: DiffOp, s: PolyVec) -> PolyVec:
    if op.dim != len(s):
        raise ValueError(f"dimension mismatch: operator {op.dim}, data {len(s)}")
    n = len(s)
    out = [Poly() for _ in range(n)]
    for shift, mat in op.coefficients().items():
        shifted = s.shift(shift)
        for i in range(n):
            for k in range(n):
                if mat[i][k]:
                    out[i] = out[i] + shifted[k] * mat[i][k]
    return PolyVec(out)


def mask_apply_poly(mask, s: PolyVec) -> tuple[PolyVec, PolyVec]:
    """Even and odd branches of ``S_A s`` for polynomial ``s``.

    ``(S_A s)(2a) = even(a)`` and ``(S_A s)(2a+1) = odd(a)`` with
    ``even(a) = sum_g A(2g) s(a-g)`` and ``odd(a) = sum_g A(2g+1) s(a-g)``.
    """
    n = mask.d + 1
    if len(s) != n:
        raise ValueError(f"dimension mismatch: mask {n}, data {len(s)}")
    branches = [[Poly() for _ in range(n)], [Poly() for _ in range(n)]]
    for alpha, mat in mask.items():
        parity = alpha % 2
        g = (alpha - parity) // 2
        shifted = s.shift(-g)
        out = branches[parity]
        for i in range(n):
            for k in range(n):
                if mat[i][k]:
                    out[i] = out[i] + shifted[k] * mat[i][k]
    return PolyVec(branches[0]), PolyVec(branches[1])


def q_poly(p: Poly, d: int) -> Poly:
    """``q = sum_{k=1}^{n-d} p^(k+d) / k!`` for ``deg p = n > d``."""
    n = p.degree
    if n <= d:
        raise ValueError(f"q undefined: deg(p) = {n} <= d = {d}")
    out = Poly()
    for k in range(1, n - d + 1):
        out = out + p.deriv(k + d) * Fraction(1, factorial(k))
    return out
