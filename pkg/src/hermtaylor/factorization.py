"""Factor masks ``B_j`` with ``T S_A = 2^-j S_{B_j} T``.

In the symbol domain the identity reads ``T*(z) A#(z) = 2^-j B#(z) T*(z^2)``,
so ``B#`` is obtained by exact right division. Two routes are provided:
:func:`factor_direct` divides by a given operator, :func:`factor_chain`
starts from the complete Taylor factorization and applies one rank-one
step per order with the Gauss generators ``I + y e_d^T``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .algebra import lmat_solve_right, mat_inverse, mat_vec, rank
from .combinatorics import coeff_vectors
from .errors import InsufficientSpectralOrder, NotExactlyDivisible
from .operators import DiffOp, augmented_taylor, delta_block, gauss_matrix
from .polyseq import diffop_apply, vpoly
from .spectral import SpectralSystem, eigenspace_constants, spectral_solve
from .subdivision import Mask, coset_sums


@dataclass(frozen=True)
class FactorizationResult:
    mask: Mask
    order: int
    operator: DiffOp
    factor: Mask
    verified: bool
    eigenspaces: dict[int, list[list[Fraction]]] = field(compare=False)
    flags: tuple[str, ...] = field(default=(), compare=False)

    def eigenspace_dims(self) -> dict[int, int]:
        return {lam: len(basis) for lam, basis in self.eigenspaces.items()}


def verify_factorization(mask: Mask, op: DiffOp, factor: Mask, j: int) -> bool:
    """Exact check of ``T*(z) A#(z) = 2^-j B#(z) T*(z^2)``."""
    t = op.symbol
    lhs = t * mask.symbol()
    rhs = factor.symbol() * t.substitute_square() * Fraction(1, 2 ** j)
    return lhs == rhs


def _eigen_report(factor: Mask) -> dict[int, list[list[Fraction]]]:
    return {lam: eigenspace_constants(factor, lam) for lam in (1, 2)}


def factor_direct(mask: Mask, op: DiffOp, j: int) -> FactorizationResult:
    """``B# = 2^j T*(z) A#(z) T*(z^2)^-1`` by exact division."""
    if op.dim != mask.d + 1:
        raise ValueError(f"dimension mismatch: operator {op.dim}, mask {mask.d + 1}")
    t = op.symbol
    num = t * mask.symbol() * Fraction(2) ** j
    try:
        sym = lmat_solve_right(num, t.substitute_square())
    except NotExactlyDivisible as exc:
        raise NotExactlyDivisible(f"not exactly divisible at order {j}: {exc}") from None
    factor = Mask.from_symbol(sym)
    return FactorizationResult(
        mask=mask,
        order=j,
        operator=op,
        factor=factor,
        verified=verify_factorization(mask, op, factor, j),
        eigenspaces=_eigen_report(factor),
    )


def rank1_step(b: Mask, v: Sequence[Sequence], scale=1) -> Mask:
    """``C# = scale * M*(z) B#(z) M*(z^2)^-1`` with ``M = D V^-1``.

    Succeeds exactly when the last column of ``V`` spans the constant
    eigenspace of ``scale * S_B``.
    """
    vinv = mat_inverse(v)
    m = (delta_block(b.d) @ DiffOp.constant(vinv)).symbol
    num = m * b.symbol() * Fraction(scale)
    return Mask.from_symbol(lmat_solve_right(num, m.substitute_square()))


def _in_span(vec: Sequence[Fraction], basis: list[list[Fraction]]) -> bool:
    if not basis:
        return not any(vec)
    return rank(basis + [list(vec)]) == len(basis)


def factor_chain(mask: Mask, n: int, system: SpectralSystem | None = None) -> list[FactorizationResult]:
    """Factor masks ``B_d, ..., B_n`` following the rank-one chain.

    ``B_d`` comes from dividing by the complete Taylor operator. Each next
    factor is ``rank1_step(B_j, I + y e_d^T, 2)`` with
    ``y = y_{j+1-d}``, which depends on ``d`` and ``j`` only. The spectral
    polynomials (solved if not given) are used to confirm that
    ``T_d^j v(p_{j+1})`` equals ``e_d + y`` and that this vector is fixed by
    ``2 S_{B_j}``; a step with a non one-dimensional eigenspace still runs
    but is flagged.
    """
    d = mask.d
    if n < d:
        raise ValueError("need n >= d")
    if system is None:
        system = spectral_solve(mask, n)
    if system.order < n:
        failed = system.failed_at if system.failed_at is not None else system.order + 1
        raise InsufficientSpectralOrder(
            f"spectral order insufficient: fails at order {failed}, need {n}", failed
        )
    results = [factor_direct(mask, augmented_taylor(d, d), d)]
    for j in range(d, n):
        prev = results[-1]
        _, y = coeff_vectors(j + 1 - d, d)
        eig = list(y)
        eig[d] = Fraction(1)
        flags = list(prev.flags)
        image = diffop_apply(prev.operator, vpoly(system.polys[j + 1], d))
        if not image.is_constant() or image.constant_value() != eig:
            flags.append(f"order {j}: operator image of p_{j + 1} differs from e_d + y")
        even, odd = coset_sums(prev.factor)
        for s in (even, odd):
            if [2 * x for x in mat_vec(s, eig)] != eig:
                raise NotExactlyDivisible(
                    f"step {j}: e_d + y is not fixed by 2 S_B (not exactly divisible at order {j + 1})"
                )
        basis = prev.eigenspaces[2]
        if not _in_span(eig, basis):
            raise NotExactlyDivisible(f"step {j}: e_d + y outside the computed eigenspace")
        if len(basis) != 1:
            flags.append(f"order {j}: dim E(2 B) = {len(basis)}")
        try:
            factor = rank1_step(prev.factor, gauss_matrix(y), 2)
        except NotExactlyDivisible as exc:
            raise NotExactlyDivisible(f"step {j}: not exactly divisible at order {j + 1}: {exc}") from None
        op = augmented_taylor(d, j + 1)
        results.append(
            FactorizationResult(
                mask=mask,
                order=j + 1,
                operator=op,
                factor=factor,
                verified=verify_factorization(mask, op, factor, j + 1),
                eigenspaces=_eigen_report(factor),
                flags=tuple(flags),
            )
        )
    return results

