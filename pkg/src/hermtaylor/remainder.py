"""Repeated integration with forward differences and its remainder.

``I^k_n f(x1; x0) = (x1-x0)^k sum_{m<=n} G_m^k Delta^m f(x0)`` approximates
the ``k``-fold iterated integral of ``f`` from ``x0`` to ``x1``; the
remainder is the difference. Rows of the augmented Taylor operator applied
to ``(f, f', ..., f^(d))`` are such remainders for ``f^(d)``.

Polynomials with rational arguments are handled in exact arithmetic;
``exp`` and ``sin`` use double precision and adaptive quadrature.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from scipy import integrate

from .algebra import Poly
from .combinatorics import gregory_g
from .errors import QuadratureError
from .operators import augmented_taylor

BUILTINS = ("exp", "sin")


@dataclass(frozen=True)
class AnalyticFn:
    """``exp``, ``sin`` (shifted by ``phase`` quarter turns) or a rational polynomial."""

    kind: str
    poly: Poly | None = None
    phase: int = 0

    def __post_init__(self):
        if self.kind not in BUILTINS + ("poly",):
            raise ValueError(f"unknown function kind {self.kind!r}")
        if self.kind == "poly" and self.poly is None:
            raise ValueError("polynomial kind needs coefficients")

    @classmethod
    def exp(cls) -> AnalyticFn:
        return cls("exp")

    @classmethod
    def sin(cls) -> AnalyticFn:
        return cls("sin")

    @classmethod
    def polynomial(cls, coeffs) -> AnalyticFn:
        return cls("poly", Poly(coeffs))

    @property
    def is_exact(self) -> bool:
        return self.kind == "poly"

    def derivative(self, m: int = 1) -> AnalyticFn:
        if self.kind == "exp":
            return self
        if self.kind == "sin":
            return AnalyticFn("sin", phase=(self.phase + m) % 4)
        return AnalyticFn("poly", self.poly.deriv(m))

    def __call__(self, x):
        if self.kind == "poly":
            return self.poly(x)
        x = float(x)
        if self.kind == "exp":
            return math.exp(x)
        # sin^(m)(x) = sin(x + m*pi/2)
        if self.phase % 2 == 0:
            value = math.sin(x)
        else:
            value = math.cos(x)
        return -value if self.phase >= 2 else value


def _exact(f: AnalyticFn, *xs) -> bool:
    return f.is_exact and all(isinstance(x, (int, Fraction)) for x in xs)


def forward_difference(f: AnalyticFn, m: int, x0, h=1):
    """``Delta_h^m f(x0) = sum_i C(m, i) (-1)^(m-i) f(x0 + i h)``."""
    exact = _exact(f, x0, h)
    if not exact:
        x0, h = float(x0), float(h)
    start = Fraction(0) if exact else 0.0
    return sum((comb(m, i) * (-1) ** (m - i) * f(x0 + i * h) for i in range(m + 1)), start)


def forward_int_sum(f: AnalyticFn, k: int, n: int, x0, x1):
    """``(x1 - x0)^k * sum_{m=0}^{n} G_m^k Delta^m f(x0)``, differences with step ``x1 - x0``."""
    if k < 1:
        raise ValueError("k must be >= 1")
    h = x1 - x0
    exact = _exact(f, x0, x1)
    total = Fraction(0) if exact else 0.0
    for m in range(n + 1):
        g = gregory_g(m, k)
        total += (g if exact else float(g)) * forward_difference(f, m, x0, h)
    return total * (h ** k if exact else float(h) ** k)


def _poly_iterated(p: Poly, k: int, x0, x1) -> Fraction:
    for _ in range(k):
        anti = p.antideriv()
        p = anti - anti(x0)
    return p(x1)


def iterated_integral(f: AnalyticFn, k: int, x0, x1, tol: float = 1e-12):
    """``k``-fold iterated integral from ``x0`` to ``x1``.

    Computed as ``int_{x0}^{x1} (x1-t)^(k-1)/(k-1)! f(t) dt``; exact for
    polynomials at rational endpoints.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if tol <= 0:
        raise ValueError("tol must be positive")
    if _exact(f, x0, x1):
        return _poly_iterated(f.poly, k, Fraction(x0), Fraction(x1))
    a, b = float(x0), float(x1)
    kernel = factorial(k - 1)
    return _quad(lambda t: (b - t) ** (k - 1) / kernel * f(t), a, b, tol)


def _quad(fun, a: float, b: float, tol: float) -> float:
    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            val, err = integrate.quad(fun, a, b, epsabs=tol, epsrel=tol, limit=200)
        except integrate.IntegrationWarning as exc:
            raise QuadratureError(str(exc)) from None
    if not math.isfinite(val) or err > max(tol, tol * abs(val)) * 10:
        raise QuadratureError(f"quadrature did not converge (error estimate {err:.3g})")
    return val


def iterated_integral_nested(f: AnalyticFn, k: int, x0, x1, tol: float = 1e-12) -> float:
    """Nested quadrature of the same iterated integral (slow; low ``k`` only)."""
    a = float(x0)

    def inner(x, level):
        if level == 1:
            return _quad(lambda t: f(t), a, x, tol)
        return _quad(lambda t: inner(t, level - 1), a, x, tol)

    return inner(float(x1), k)


def remainder(f: AnalyticFn, k: int, n: int, x0, x1, tol: float = 1e-12):
    """``R^k_n f(x1; x0)``: iterated integral minus ``I^k_n``."""
    return iterated_integral(f, k, x0, x1, tol) - forward_int_sum(f, k, n, x0, x1)


@dataclass(frozen=True)
class RowReport:
    row: int
    operator_value: float | Fraction
    remainder_value: float | Fraction

    @property
    def discrepancy(self):
        return abs(self.operator_value - self.remainder_value)


def apply_augmented(f: AnalyticFn, d: int, n: int, x) -> list:
    """Augmented Taylor operator of order ``n`` applied to ``(f, ..., f^(d))`` at ``x``."""
    op = augmented_taylor(d, n)
    exact = _exact(f, x)
    if not exact:
        x = float(x)
    derivs = [f.derivative(m) for m in range(d + 1)]
    out = [Fraction(0) if exact else 0.0 for _ in range(d + 1)]
    for shift, mat in op.coefficients().items():
        values = [g(x + shift) for g in derivs]
        for i in range(d + 1):
            for j in range(d + 1):
                if mat[i][j]:
                    out[i] += (mat[i][j] if exact else float(mat[i][j])) * values[j]
    return out


def interpret_check(f: AnalyticFn, d: int, n: int, x, tol: float = 1e-12) -> list[RowReport]:
    """Compare each operator row with the matching integration remainder.

    Row ``j < d`` is compared with ``R^{d-j}_{n-d} f^(d)(x+1; x)``; the last
    row with ``Delta^{n+1-d} f^(d)(x)``.
    """
    if d < 1 or n < d:
        raise ValueError("need n >= d >= 1")
    lhs = apply_augmented(f, d, n, x)
    fd = f.derivative(d)
    reports = []
    for j in range(d):
        rem = remainder(fd, d - j, n - d, x, x + 1, tol)
        reports.append(RowReport(j, lhs[j], rem))
    reports.append(RowReport(d, lhs[d], forward_difference(fd, n + 1 - d, x)))
    return reports
