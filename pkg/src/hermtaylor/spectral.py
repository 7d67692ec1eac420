"""Spectral condition: checking, solving for polynomials, building masks.

A mask satisfies the spectral condition of order ``n`` when there are
polynomials ``p_k = x^k/k! + (lower terms)`` with
``S_A v(p_k) = 2^-k v(p_k)`` for ``k = 0..n``. Everything is decided as an
exact polynomial identity on the even and odd branches.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Sequence

from .algebra import Poly, identity, rank, rational_nullspace, rational_solve
from .errors import InfeasibleConstruction
from .polyseq import PolyVec, mask_apply_poly, vpoly
from .subdivision import Mask, coset_sums


@dataclass(frozen=True)
class SpectralSystem:
    """Spectral polynomials ``p_0..p_order`` for vectors of size ``d + 1``.

    ``failed_at`` is set by :func:`spectral_solve` when the search stopped
    at an order with no admissible polynomial.
    """

    d: int
    polys: tuple[Poly, ...]
    failed_at: int | None = field(default=None, compare=False)

    def __post_init__(self):
        for k, p in enumerate(self.polys):
            if p.degree != k or p.coeffs[-1] != Fraction(1, factorial(k)):
                raise ValueError(f"p_{k} must have degree {k} and leading coefficient 1/{k}!")

    @property
    def order(self) -> int:
        return len(self.polys) - 1

    @classmethod
    def monomial(cls, d: int, order: int) -> SpectralSystem:
        return cls(d, tuple(Poly.monomial(k, Fraction(1, factorial(k))) for k in range(order + 1)))


def _residual(mask: Mask, p: Poly, k: int) -> PolyVec:
    """Both branches of ``S_A v(p) - 2^-k v(p)``, concatenated."""
    s = vpoly(p, mask.d)
    even, odd = mask_apply_poly(mask, s)
    scale = Fraction(1, 2 ** k)
    even_res = even - s.compose_affine(2, 0).scale(scale)
    odd_res = odd - s.compose_affine(2, 1).scale(scale)
    return PolyVec(tuple(even_res) + tuple(odd_res))


def spectral_check(mask: Mask, system: SpectralSystem) -> list[bool]:
    """Per order ``k``: does ``S_A v(p_k) = 2^-k v(p_k)`` hold exactly?"""
    if mask.d != system.d:
        raise ValueError(f"dimension mismatch: mask d={mask.d}, system d={system.d}")
    return [all(r.is_zero() for r in _residual(mask, p, k)) for k, p in enumerate(system.polys)]


def _coeff_rows(vec: PolyVec, width: int) -> list[Fraction]:
    out = []
    for p in vec:
        cs = list(p.coeffs) + [Fraction(0)] * (width - len(p.coeffs))
        out.extend(cs)
    return out


def spectral_solve(mask: Mask, max_order: int, rng: random.Random | None = None) -> SpectralSystem:
    """Find spectral polynomials for ``k = 0, 1, ...`` up to ``max_order``.

    Unknown lower-order coefficients are solved exactly; free parameters
    are 0, or random small rationals when ``rng`` is given. Stops at the
    first order without a solution and records it in ``failed_at``.
    """
    polys: list[Poly] = []
    for k in range(max_order + 1):
        lead = Poly.monomial(k, Fraction(1, factorial(k)))
        width = k + 1
        rhs = [-x for x in _coeff_rows(_residual(mask, lead, k), width)]
        cols = [_coeff_rows(_residual(mask, Poly.monomial(i), k), width) for i in range(k)]
        if cols:
            m = [[cols[i][r] for i in range(k)] for r in range(len(rhs))]
            free = None
            if rng is not None:
                free = lambda _c: Fraction(rng.randint(-9, 9), rng.randint(1, 5))  # noqa: E731
            sol = rational_solve(m, rhs, free)
        else:
            sol = [] if not any(rhs) else None
        if sol is None:
            return SpectralSystem(mask.d, tuple(polys), failed_at=k)
        polys.append(lead + Poly(sol))
    return SpectralSystem(mask.d, tuple(polys))


def eigenspace_constants(mask: Mask, lam) -> list[list[Fraction]]:
    """Basis of ``{c : lam * S_A c = c}`` for constant sequences ``c``."""
    lam = Fraction(lam)
    if lam == 0:
        raise ValueError("lambda must be nonzero")
    even, odd = coset_sums(mask)
    n = mask.d + 1
    eye = identity(n)
    system = [[lam * even[i][j] - eye[i][j] for j in range(n)] for i in range(n)]
    system += [[lam * odd[i][j] - eye[i][j] for j in range(n)] for i in range(n)]
    return rational_nullspace(system)


def _constraint_system(d: int, support: range, system: SpectralSystem):
    """Linear equations on the mask entries, one block per parity.

    Unknown ``(alpha, i, j)`` is entry ``A(alpha)[i][j]``.
    """
    n = d + 1
    unknowns = [(a, i, j) for a in support for i in range(n) for j in range(n)]
    index = {u: t for t, u in enumerate(unknowns)}
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for k, p in enumerate(system.polys):
        s = vpoly(p, d)
        scale = Fraction(1, 2 ** k)
        for parity in (0, 1):
            target = s.compose_affine(2, parity).scale(scale)
            width = k + 1
            for i in range(n):
                # sum_{alpha = 2g + parity} sum_j A(alpha)[i][j] s_j(x - g) = target_i(x)
                block = [[Fraction(0)] * len(unknowns) for _ in range(width)]
                for a in support:
                    if a % 2 != parity:
                        continue
                    g = (a - parity) // 2
                    for j in range(n):
                        shifted = s[j].shift(-g)
                        col = index[(a, i, j)]
                        for e, c in enumerate(shifted.coeffs):
                            block[e][col] += c
                tc = list(target[i].coeffs) + [Fraction(0)] * (width - len(target[i].coeffs))
                rows.extend(block)
                rhs.extend(tc)
    return unknowns, rows, rhs


def mask_construct(
    d: int,
    n: int,
    support: Sequence[int] | range,
    system: SpectralSystem | None = None,
    rng: random.Random | None = None,
) -> Mask:
    """Solve for a mask supported on ``support`` with spectral order ``n``.

    ``support`` is ``(lo, hi)`` inclusive or a ``range``. Spectral polynomials
    default to monomials. Free entries are 0, or random small rationals when
    ``rng`` is given.
    """
    if n < d:
        raise ValueError("need n >= d")
    if not isinstance(support, range):
        lo, hi = support
        support = range(lo, hi + 1)
    if system is None:
        system = SpectralSystem.monomial(d, n)
    if system.d != d or system.order < n:
        raise ValueError("spectral system does not match d or order")
    system = SpectralSystem(d, system.polys[: n + 1])
    unknowns, rows, rhs = _constraint_system(d, support, system)
    free = None
    if rng is not None:
        free = lambda _c: Fraction(rng.randint(-4, 4), rng.choice((1, 2, 4, 8)))  # noqa: E731
    sol = rational_solve(rows, rhs, free)
    if sol is None:
        r = rank(rows)
        ra = rank([row + [b] for row, b in zip(rows, rhs)])
        raise InfeasibleConstruction(
            f"no mask on support {support.start}:{support.stop - 1} has spectral order {n} "
            f"(rank {r}, augmented rank {ra}, deficiency {ra - r})",
            r,
            ra,
        )
    mats = {a: [[Fraction(0)] * (d + 1) for _ in range(d + 1)] for a in support}
    for (a, i, j), v in zip(unknowns, sol):
        mats[a][i][j] = v
    return Mask.from_dict(d, mats)


def spectral_order(mask: Mask, max_order: int) -> int:
    """Largest ``k <= max_order`` with spectral order ``k`` (``-1`` if none)."""
    return spectral_solve(mask, max_order).order
