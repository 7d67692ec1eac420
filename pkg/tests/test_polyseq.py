from __future__ import annotations

import random
from fractions import Fraction
from math import factorial

import pytest

from conftest import rand_q, worked_mask
from hermtaylor.algebra import Poly
from hermtaylor.combinatorics import coeff_vectors, gamma_coeff, hat, stirling2
from hermtaylor.operators import augmented_taylor, gauss_step, taylor
from hermtaylor.polyseq import PolyVec, diffop_apply, mask_apply_poly, q_poly, vpoly
from hermtaylor.subdivision import Mask, VecSeq, mask_apply

H = Fraction(1, 2)
X = Poly.x()
INSTANCES = 50


def rand_poly(rng: random.Random, n: int, normalized: bool = False) -> Poly:
    coeffs = [rand_q(rng) for _ in range(n)]
    lead = Fraction(1, factorial(n)) if normalized else rand_q(rng) or Fraction(1)
    return Poly(coeffs + [lead])


def const_vec(v) -> PolyVec:
    return PolyVec.constant(v)


def combo(rng_terms) -> PolyVec:
    """``sum_k vec_k * poly_k`` as a PolyVec."""
    out = None
    for vec, p in rng_terms:
        term = PolyVec.outer(vec, p)
        out = term if out is None else out + term
    return out


def test_vpoly_examples():
    assert vpoly(Poly([1]), 1) == PolyVec([Poly([1]), Poly([])])
    assert vpoly(Poly([0, 0, H]), 1) == PolyVec([Poly([0, 0, H]), X])
    assert vpoly(Poly([0, 0, 0, Fraction(1, 6)]), 2) == PolyVec([Poly([0, 0, 0, Fraction(1, 6)]), Poly([0, 0, H]), X])


def test_diffop_apply_examples():
    t1 = taylor(1, "complete")
    assert diffop_apply(t1, vpoly(X, 1)) == PolyVec.zero(2)
    half_sq = Poly([0, 0, H])
    assert diffop_apply(t1, vpoly(half_sq, 1)) == const_vec([H, 1])
    assert diffop_apply(augmented_taylor(1, 1), vpoly(half_sq, 1)) == const_vec([H, 1])


def test_diffop_dimension_mismatch():
    with pytest.raises(ValueError):
        diffop_apply(taylor(2, "complete"), vpoly(X, 1))


def test_mask_apply_poly_examples():
    zero = Mask(1, 0, [])
    assert mask_apply_poly(zero, vpoly(X, 1)) == (PolyVec.zero(2), PolyVec.zero(2))
    even, odd = mask_apply_poly(worked_mask(), vpoly(X, 1))
    assert even == PolyVec([X, Poly([H])])
    assert odd == PolyVec([Poly([H, 1]), Poly([H])])
    s = vpoly(Poly([1, 2, 3]), 2)
    ident = Mask(2, 0, [[[int(i == j) for j in range(3)] for i in range(3)]])
    assert mask_apply_poly(ident, s) == (s, PolyVec.zero(3))


@pytest.mark.parametrize("seed", range(10))
def test_mask_apply_poly_matches_window(seed):
    rng = random.Random(seed)
    d = rng.randint(1, 3)
    mask = Mask(d, rng.randint(-2, 1), [[[rand_q(rng, 3) for _ in range(d + 1)] for _ in range(d + 1)] for _ in range(3)])
    s = vpoly(rand_poly(rng, rng.randint(0, 4)), d)
    lo, hi = -12, 12
    window = VecSeq(d, lo, [[p(a) for p in s] for a in range(lo, hi + 1)])
    refined = mask_apply(mask, window)
    even, odd = mask_apply_poly(mask, s)
    # far enough inside the window the truncation is invisible
    for alpha in range(-4, 5):
        assert list(refined[2 * alpha]) == [p(alpha) for p in even]
        assert list(refined[2 * alpha + 1]) == [p(alpha) for p in odd]


def test_q_examples():
    assert q_poly(Poly([0, 0, H]), 1) == Poly([1])
    assert q_poly(Poly([0, 0, 0, Fraction(1, 6)]), 1) == Poly([H, 1])
    for d in range(1, 6):
        assert q_poly(Poly.monomial(d + 1, Fraction(1, factorial(d + 1))), d) == Poly([1])
    with pytest.raises(ValueError, match="q undefined"):
        q_poly(Poly([0, 1]), 1)


def test_high_forward_differences():
    rng = random.Random(11)
    for _ in range(INSTANCES):
        n = rng.randint(1, 8)
        p = rand_poly(rng, n)
        for ell in range(n + 1):
            pl = p.deriv(ell)
            for k in range(1, n - ell + 1):
                lhs = pl.delta(k) * Fraction(1, factorial(k))
                rhs = Poly([])
                for m in range(k, n - ell + 1):
                    rhs = rhs + p.deriv(m + ell) * Fraction(stirling2(m, k), factorial(m))
                assert lhs == rhs


def test_taylor_applied():
    rng = random.Random(12)
    for _ in range(INSTANCES):
        d = rng.randint(1, 4)
        n = rng.randint(0, d + 5)
        p = rand_poly(rng, n)
        got = diffop_apply(taylor(d, "complete"), vpoly(p, d))
        if n <= d:
            assert got == PolyVec.zero(d + 1)
        else:
            assert got == combo((coeff_vectors(k, d)[0], p.deriv(k + d)) for k in range(1, n - d + 1))


def test_q_differences():
    rng = random.Random(13)
    for _ in range(INSTANCES):
        d = rng.randint(1, 3)
        n = rng.randint(d + 1, d + 5)
        p = rand_poly(rng, n)
        q = q_poly(p, d)
        assert q.degree == n - d - 1
        for k in range(n - d):
            rhs = Poly([])
            for s in range(k + 1, n - d + 1):
                rhs = rhs + p.deriv(s + d) * gamma_coeff(s, k + 1)
            assert q.delta(k) == rhs


def _chain(cs, d, start: PolyVec) -> PolyVec:
    s = start
    for c in cs:
        s = diffop_apply(gauss_step(c, d), s)
    return s


def test_iterated_gauss_chain():
    rng = random.Random(14)
    for _ in range(INSTANCES):
        d = rng.randint(1, 3)
        n = rng.randint(d + 1, d + 4)
        p = rand_poly(rng, n)
        j = rng.randint(1, n - d)
        cs = [[rand_q(rng) for _ in range(d)] + [0] for _ in range(j)]
        start = combo((coeff_vectors(k, d)[0], p.deriv(k + d)) for k in range(1, n - d + 1))
        got = _chain(cs, d, start)
        q = q_poly(p, d)
        e_d = [0] * d + [1]
        # e_d D^j q - sum_k hat(c_{k+1}) D^k q + sum_k hat(a_k) p^(k+d)
        expected = PolyVec.outer(e_d, q.delta(j))
        for k in range(j):
            expected = expected - PolyVec.outer(hat(cs[k]), q.delta(k))
        expected = expected + combo((hat(coeff_vectors(k, d)[0]), p.deriv(k + d)) for k in range(1, n - d + 1))
        assert got == expected
        # gamma form
        cor = PolyVec.outer(e_d, q.delta(j))
        for s in range(1, n - d + 1):
            vec = hat(coeff_vectors(s, d)[0])
            for k in range(1, min(s, j) + 1):
                vec = [v - gamma_coeff(s, k) * c for v, c in zip(vec, hat(cs[k - 1]))]
            cor = cor + PolyVec.outer(vec, p.deriv(s + d))
        assert got == cor


def test_iterated_chain_constant():
    rng = random.Random(15)
    count = 0
    while count < INSTANCES:
        d = rng.randint(1, 3)
        n = rng.randint(d + 1, d + 4)
        p = rand_poly(rng, n, normalized=True)
        ys = [coeff_vectors(k, d)[1] for k in range(1, n - d)]
        start = combo((coeff_vectors(k, d)[0], p.deriv(k + d)) for k in range(1, n - d + 1))
        target = coeff_vectors(n - d, d)[1][:-1] + [1]
        assert _chain(ys, d, start) == const_vec(target)
        assert diffop_apply(augmented_taylor(d, n - 1), vpoly(p, d)) == const_vec(target)
        count += 1
