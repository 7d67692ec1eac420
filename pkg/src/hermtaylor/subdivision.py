"""Masks, finitely supported vector sequences and subdivision.

``(S_A c)(a) = sum_b A(a - 2b) c(b)``; the mask symbol is
``A#(z) = sum_a A(a) z^a`` so that ``(S_A c)#(z) = A#(z) c#(z^2)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .algebra import LaurentMatrix, LaurentPoly, mat_mul
from .operators import DiffOp, DilationMatrix

Matrix = tuple[tuple[Fraction, ...], ...]
Vector = tuple[Fraction, ...]


def _freeze_matrix(m: Sequence[Sequence], n: int) -> Matrix:
    if len(m) != n or any(len(row) != n for row in m):
        raise ValueError(f"expected a {n}x{n} matrix")
    return tuple(tuple(Fraction(x) for x in row) for row in m)


def _is_zero(m) -> bool:
    return not any(x for row in m for x in row)


@dataclass(frozen=True)
class Mask:
    """Matrices ``A(offset), A(offset+1), ...``; zero end matrices are trimmed."""

    d: int
    offset: int
    matrices: tuple[Matrix, ...]

    def __init__(self, d: int, offset: int, matrices: Sequence[Sequence[Sequence]]):
        if d < 1:
            raise ValueError("d must be >= 1")
        mats = [_freeze_matrix(m, d + 1) for m in matrices]
        lo, hi = 0, len(mats)
        while lo < hi and _is_zero(mats[lo]):
            lo += 1
        while hi > lo and _is_zero(mats[hi - 1]):
            hi -= 1
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "offset", offset + lo if hi > lo else 0)
        object.__setattr__(self, "matrices", tuple(mats[lo:hi]))

    @classmethod
    def from_dict(cls, d: int, mats: dict[int, Sequence[Sequence]]) -> Mask:
        if not mats:
            return cls(d, 0, [])
        lo, hi = min(mats), max(mats)
        zero = [[0] * (d + 1) for _ in range(d + 1)]
        return cls(d, lo, [mats.get(a, zero) for a in range(lo, hi + 1)])

    @classmethod
    def from_symbol(cls, sym: LaurentMatrix) -> Mask:
        if sym.rows != sym.cols:
            raise ValueError("mask symbol must be square")
        rng = sym.exponent_range()
        d = sym.rows - 1
        if rng is None:
            return cls(d, 0, [])
        lo, hi = rng
        return cls(d, lo, [sym.coefficient(e) for e in range(lo, hi + 1)])

    def is_zero(self) -> bool:
        return not self.matrices

    def support(self) -> range:
        return range(self.offset, self.offset + len(self.matrices))

    def __getitem__(self, alpha: int) -> Matrix:
        i = alpha - self.offset
        if 0 <= i < len(self.matrices):
            return self.matrices[i]
        return _freeze_matrix([[0] * (self.d + 1)] * (self.d + 1), self.d + 1)

    def items(self) -> Iterator[tuple[int, Matrix]]:
        for i, m in enumerate(self.matrices):
            if not _is_zero(m):
                yield self.offset + i, m

    def symbol(self) -> LaurentMatrix:
        n = self.d + 1
        grid = [
            [LaurentPoly(self.offset, [m[i][j] for m in self.matrices]) for j in range(n)]
            for i in range(n)
        ]
        return LaurentMatrix(grid)

    def scaled(self, c) -> Mask:
        c = Fraction(c)
        return Mask(self.d, self.offset, [[[x * c for x in row] for row in m] for m in self.matrices])


@dataclass(frozen=True)
class VecSeq:
    """Vectors ``c(offset), c(offset+1), ...``; zero vectors outside."""

    d: int
    offset: int
    vectors: tuple[Vector, ...]

    def __init__(self, d: int, offset: int, vectors: Sequence[Sequence]):
        vecs = []
        for v in vectors:
            if len(v) != d + 1:
                raise ValueError(f"expected vectors of length {d + 1}")
            vecs.append(tuple(Fraction(x) for x in v))
        lo, hi = 0, len(vecs)
        while lo < hi and not any(vecs[lo]):
            lo += 1
        while hi > lo and not any(vecs[hi - 1]):
            hi -= 1
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "offset", offset + lo if hi > lo else 0)
        object.__setattr__(self, "vectors", tuple(vecs[lo:hi]))

    @classmethod
    def from_dict(cls, d: int, vecs: dict[int, Sequence]) -> VecSeq:
        if not vecs:
            return cls(d, 0, [])
        lo, hi = min(vecs), max(vecs)
        zero = [0] * (d + 1)
        return cls(d, lo, [vecs.get(a, zero) for a in range(lo, hi + 1)])

    def __getitem__(self, alpha: int) -> Vector:
        i = alpha - self.offset
        if 0 <= i < len(self.vectors):
            return self.vectors[i]
        return tuple(Fraction(0) for _ in range(self.d + 1))

    def support(self) -> range:
        return range(self.offset, self.offset + len(self.vectors))

    def items(self) -> Iterator[tuple[int, Vector]]:
        for i, v in enumerate(self.vectors):
            if any(v):
                yield self.offset + i, v

    def generating_function(self) -> LaurentMatrix:
        """``c#(z)`` as a column Laurent matrix."""
        return LaurentMatrix(
            [[LaurentPoly(self.offset, [v[i] for v in self.vectors])] for i in range(self.d + 1)]
        )

    @classmethod
    def from_generating_function(cls, col: LaurentMatrix) -> VecSeq:
        rng = col.exponent_range()
        d = col.rows - 1
        if rng is None:
            return cls(d, 0, [])
        lo, hi = rng
        return cls(d, lo, [[col[i, 0].coefficient(e) for i in range(d + 1)] for e in range(lo, hi + 1)])


def _matvec_acc(acc: list[Fraction], m: Matrix, v: Vector) -> None:
    for i, row in enumerate(m):
        s = acc[i]
        for x, y in zip(row, v):
            if x and y:
                s += x * y
        acc[i] = s


def mask_apply(mask: Mask, c: VecSeq) -> VecSeq:
    """``(S_A c)(a) = sum_b A(a - 2b) c(b)``, exactly."""
    if mask.d != c.d:
        raise ValueError(f"dimension mismatch: mask d={mask.d}, data d={c.d}")
    out: dict[int, list[Fraction]] = {}
    for beta, v in c.items():
        for alpha, m in mask.items():
            acc = out.setdefault(alpha + 2 * beta, [Fraction(0)] * (c.d + 1))
            _matvec_acc(acc, m, v)
    return VecSeq.from_dict(c.d, out)


def diffop_apply_seq(op: DiffOp, c: VecSeq) -> VecSeq:
    """``(L c)(a) = sum_b L(b) c(a + b)`` on finitely supported data."""
    if op.dim != c.d + 1:
        raise ValueError(f"dimension mismatch: operator {op.dim}, data {c.d + 1}")
    out: dict[int, list[Fraction]] = {}
    coeffs = op.coefficients()
    for gamma, v in c.items():
        for beta, m in coeffs.items():
            acc = out.setdefault(gamma - beta, [Fraction(0)] * (c.d + 1))
            _matvec_acc(acc, m, v)
    return VecSeq.from_dict(c.d, out)


def coset_sums(mask: Mask) -> tuple[list[list[Fraction]], list[list[Fraction]]]:
    """``(sum_b A(2b), sum_b A(2b+1))``."""
    n = mask.d + 1
    sums = [[[Fraction(0)] * n for _ in range(n)] for _ in range(2)]
    for alpha, m in mask.items():
        s = sums[alpha % 2]
        for i in range(n):
            for j in range(n):
                s[i][j] += m[i][j]
    return sums[0], sums[1]


def hermite_level_mask(mask: Mask, level: int) -> Mask:
    """``Dil^(-level-1) A Dil^level`` for every matrix of the mask."""
    if level < 0:
        raise ValueError("level must be >= 0")
    dil = DilationMatrix(mask.d)
    left = dil.power(-level - 1)
    right = dil.power(level)
    n = mask.d + 1
    return Mask(
        mask.d,
        mask.offset,
        [[[left[i] * m[i][j] * right[j] for j in range(n)] for i in range(n)] for m in mask.matrices],
    )


def hermite_iterate(mask: Mask, c0: VecSeq, levels: int, normalized: bool = False) -> VecSeq:
    """Run ``c[n+1] = S_{A[n]} c[n]`` for ``n = 0..levels-1``.

    Index ``a`` of the result stands for the point ``a * 2^-levels``. The raw
    output is the level-dependent data. With ``normalized=True`` it is
    multiplied by ``Dil^levels``, which turns it into the stationary
    iterate ``S_A^levels c0``.
    """
    if levels < 1:
        raise ValueError("levels must be >= 1")
    if mask.d != c0.d:
        raise ValueError(f"dimension mismatch: mask d={mask.d}, data d={c0.d}")
    c = c0
    for n in range(levels):
        c = mask_apply(hermite_level_mask(mask, n), c)
    if normalized:
        scale = DilationMatrix(mask.d).power(levels)
        c = VecSeq(c.d, c.offset, [[s * x for s, x in zip(scale, v)] for v in c.vectors])
    return c


def mask_matrix_product(left, mask: Mask, right) -> Mask:
    """``left * A(a) * right`` for constant matrices."""
    return Mask(mask.d, mask.offset, [mat_mul(mat_mul(left, m), right) for m in mask.matrices])
