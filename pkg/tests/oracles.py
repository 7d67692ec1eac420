"""Independent brute-force oracles shared by the test modules.

Nothing here reuses the library's arithmetic beyond constructing inputs:
sequences and Laurent polynomials are plain ``{exponent: Fraction}`` dicts.
"""
from __future__ import annotations

import itertools
import math
from fractions import Fraction

from scipy import integrate


def lp_dict(p) -> dict[int, Fraction]:
    return {e: c for e, c in p.terms().items() if c}


def dict_mul(a: dict, b: dict) -> dict:
    out: dict[int, Fraction] = {}
    for i, x in a.items():
        for j, y in b.items():
            out[i + j] = out.get(i + j, 0) + x * y
    return {e: c for e, c in out.items() if c}


def dict_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for e, c in b.items():
        out[e] = out.get(e, 0) + c
    return {e: c for e, c in out.items() if c}


def leibniz_det(entries: list[list[dict]]) -> dict:
    """Determinant of a matrix of Laurent dicts by the permutation expansion."""
    n = len(entries)
    total: dict = {}
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = {0: Fraction(-1 if inv % 2 else 1)}
        for i in range(n):
            term = dict_mul(term, entries[i][perm[i]])
        total = dict_add(total, term)
    return total


def seq_dict(c) -> dict[int, list[Fraction]]:
    return {a: list(v) for a, v in c.items() if any(v)}


def brute_subdivide(mask, c: dict[int, list]) -> dict[int, list[Fraction]]:
    """``(S_A c)(alpha) = sum_beta A(alpha - 2 beta) c(beta)`` over all contributing alpha."""
    n = mask.d + 1
    out: dict[int, list[Fraction]] = {}
    for beta, v in c.items():
        for a, m in mask.items():
            alpha = a + 2 * beta
            acc = out.setdefault(alpha, [Fraction(0)] * n)
            for i in range(n):
                acc[i] += sum(m[i][j] * v[j] for j in range(n))
    return {a: v for a, v in out.items() if any(v)}


def brute_diffop(coeffs: dict[int, list[list]], c: dict[int, list]) -> dict[int, list[Fraction]]:
    """``(L c)(alpha) = sum_beta L(beta) c(alpha + beta)``."""
    if not c:
        return {}
    n = len(next(iter(c.values())))
    lo = min(c) - max(coeffs)
    hi = max(c) - min(coeffs)
    out = {}
    for alpha in range(lo, hi + 1):
        acc = [Fraction(0)] * n
        for beta, m in coeffs.items():
            v = c.get(alpha + beta)
            if v is None:
                continue
            for i in range(n):
                acc[i] += sum(m[i][j] * v[j] for j in range(n))
        if any(acc):
            out[alpha] = acc
    return out


def falling(n: int) -> list[Fraction]:
    """Coefficients of ``x (x-1) ... (x-n+1)``, ascending."""
    coeffs = [Fraction(1)]
    for r in range(n):
        nxt = [Fraction(0)] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i + 1] += c
            nxt[i] -= r * c
        coeffs = nxt
    return coeffs


def gregory_exact(n: int, k: int) -> Fraction:
    """``G_n^k`` by exact k-fold integration from 0 of the falling factorial, evaluated at 1."""
    if n == 0:
        return Fraction(1, math.factorial(k))
    p = falling(n)
    for _ in range(k):
        p = [Fraction(0)] + [c / (i + 1) for i, c in enumerate(p)]
    return sum(p, Fraction(0)) / math.factorial(n)


def gregory_quad(n: int, k: int, tol: float = 1e-12) -> float:
    """``G_n^k`` by adaptive quadrature of the Cauchy-kernel form of the iterated integral."""
    ff = [float(c) for c in falling(n)]

    def integrand(t):
        v = sum(c * t ** i for i, c in enumerate(ff))
        return (1 - t) ** (k - 1) / math.factorial(k - 1) * v

    val, _ = integrate.quad(integrand, 0.0, 1.0, epsabs=tol, epsrel=tol)
    return val / math.factorial(n)


def gregory_nested(n: int, k: int, tol: float = 1e-12) -> float:
    """Literal nested quadrature of the iterated integral (small ``k`` only)."""
    ff = [float(c) for c in falling(n)]

    def level(x, depth):
        if depth == 1:
            return integrate.quad(lambda t: sum(c * t ** i for i, c in enumerate(ff)), 0.0, x, epsabs=tol, epsrel=tol)[0]
        return integrate.quad(lambda t: level(t, depth - 1), 0.0, x, epsabs=tol, epsrel=tol)[0]

    return level(1.0, k) / math.factorial(n)


def poly_eval(coeffs, x):
    return sum(c * x ** i for i, c in enumerate(coeffs))
