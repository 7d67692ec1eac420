"""Stirling numbers, repeated-integration coefficients and p-Cauchy numbers.

All tables are exact. ``G(n, k)`` is the coefficient of the ``n``-th forward
difference in the ``k``-fold repeated integration formula; ``G(n, 1)`` are
the Gregory coefficients.
"""
from __future__ import annotations

import threading
from fractions import Fraction
from math import comb, factorial

KINDS = ("stirling1", "stirling1-signed", "stirling2", "gregory")


class CoeffTable:
    """Memoized table of one coefficient family, safe to share across threads.

    ``table(n, m)`` evaluates lazily; values already computed are never
    recomputed. Stirling arguments outside the triangle give 0.
    """

    def __init__(self, kind: str):
        if kind not in KINDS:
            raise ValueError(f"unknown table kind {kind!r}; expected one of {KINDS}")
        self.kind = kind
        self._values: dict[tuple[int, int], int | Fraction] = {}
        self._rows = 0  # stirling rows 0.._rows-1 are filled
        self._lock = threading.RLock()

    def __len__(self):
        return len(self._values)

    def __call__(self, n: int, m: int):
        if n < 0 or m < 0:
            raise ValueError("indices must be nonnegative")
        key = (n, m)
        value = self._values.get(key)
        if value is not None:
            return value
        with self._lock:
            if self.kind == "gregory":
                return self._gregory(n, m)
            self._grow_stirling(n)
            return self._values.get(key, 0)

    def _grow_stirling(self, n: int) -> None:
        vals = self._values
        if self._rows == 0:
            vals[0, 0] = 1
            self._rows = 1
        while self._rows <= n:
            r = self._rows - 1  # fill row r + 1 from row r
            for m in range(1, r + 2):
                prev = vals.get((r, m), 0)
                left = vals.get((r, m - 1), 0)
                if self.kind == "stirling1":
                    vals[r + 1, m] = r * prev + left
                elif self.kind == "stirling1-signed":
                    vals[r + 1, m] = left - r * prev
                else:
                    vals[r + 1, m] = m * prev + left
            self._rows += 1

    def _gregory(self, n: int, k: int) -> Fraction:
        if k < 1:
            raise ValueError("G(n, k) needs k >= 1")
        key = (n, k)
        if key in self._values:
            return self._values[key]
        if n == 0:
            value = Fraction(1, factorial(k))
        elif k == 1:
            # G_n^1 = (1/n!) sum_j s(n, j) / (j + 1)
            value = sum(
                (Fraction(stirling1_signed(n, j), j + 1) for j in range(1, n + 1)),
                Fraction(0),
            ) / factorial(n)
        else:
            value = Fraction(
                (n - 1) * self._gregory(n, k - 1) + (n + 1) * self._gregory(n + 1, k - 1),
                1 - k,
            )
        self._values[key] = value
        return value


_STIRLING1 = CoeffTable("stirling1")
_STIRLING1_SIGNED = CoeffTable("stirling1-signed")
_STIRLING2 = CoeffTable("stirling2")
_GREGORY = CoeffTable("gregory")


def stirling1(n: int, m: int) -> int:
    """Unsigned Stirling number of the first kind (cycle count)."""
    return _STIRLING1(n, m)


def stirling1_signed(n: int, m: int) -> int:
    return _STIRLING1_SIGNED(n, m)


def stirling2(n: int, m: int) -> int:
    return _STIRLING2(n, m)


def stirling2_explicit(n: int, m: int) -> int:
    """Closed form ``(1/m!) sum_j C(m, j) (-1)^(m-j) j^n``."""
    total = sum(comb(m, j) * (-1) ** (m - j) * j ** n for j in range(m + 1))
    return total // factorial(m)


def gregory_g(n: int, k: int) -> Fraction:
    """``G_n^k``, seeded at ``k = 1`` from signed Stirling numbers and then
    lifted in ``k`` by the three-term recursion."""
    return _GREGORY(n, k)


def gregory_g_stirling(n: int, k: int) -> Fraction:
    """``G_n^k`` via ``(1/n!) sum_j s(n, j) / ((j+1)...(j+k))`` (needs ``n >= 1``)."""
    if n == 0:
        return Fraction(1, factorial(k))
    total = Fraction(0)
    for j in range(1, n + 1):
        rising = 1
        for i in range(1, k + 1):
            rising *= j + i
        total += Fraction(stirling1_signed(n, j), rising)
    return total / factorial(n)


def p_cauchy(n: int, p: int) -> Fraction:
    """p-Cauchy number of the first kind, ``n! (p+1)! G_n^(p+1)``."""
    return factorial(n) * factorial(p + 1) * gregory_g(n, p + 1)


def gamma_coeff(j: int, m: int) -> Fraction:
    """``(m!/j!) * S2(j, m)``; zero outside ``1 <= m <= j``."""
    return Fraction(factorial(m) * stirling2(j, m), factorial(j))


def coeff_vectors(j: int, d: int) -> tuple[list[Fraction], list[Fraction]]:
    """Return ``(a_j, y_j)`` of length ``d + 1``.

    ``a_j = (1/(j+d)!, ..., 1/(j+1)!, 1/j!)`` and
    ``y_j = (G_j^d, ..., G_j^1, 0)``.
    """
    a = [Fraction(1, factorial(j + d - i)) for i in range(d + 1)]
    y = [gregory_g(j, d - i) for i in range(d)] + [Fraction(0)]
    return a, y


def hat(v):
    """Zero the last entry."""
    return list(v[:-1]) + [Fraction(0)]
