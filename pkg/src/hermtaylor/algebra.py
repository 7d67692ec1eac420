"""Exact scalars, polynomials, Laurent polynomials and Laurent matrices.

Everything here works over :class:`fractions.Fraction`. Values are immutable;
arithmetic returns new objects.
"""
from __future__ import annotations

import re
from fractions import Fraction
from math import comb, gcd
from typing import Iterable, Sequence

from .errors import FormatError, NotExactlyDivisible, SingularSymbol

Rational = Fraction

_RATIONAL_RE = re.compile(r"-?\d+(/\d+)?")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` (no whitespace, optional leading ``-``)."""
    if not isinstance(text, str) or not _RATIONAL_RE.fullmatch(text):
        raise FormatError(f"not a rational string: {text!r}")
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise FormatError(f"zero denominator in {text!r}") from None


def format_rational(value: Fraction | int) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def _trim(coeffs: list[Fraction]) -> tuple[Fraction, ...]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


# ---------------------------------------------------------------------------
# Polynomials
# ---------------------------------------------------------------------------
class Poly:
    """Univariate polynomial, coefficients by ascending degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        self.coeffs = _trim([_as_fraction(c) for c in coeffs])

    @classmethod
    def monomial(cls, k: int, c=1) -> Poly:
        return cls([0] * k + [c])

    @classmethod
    def x(cls) -> Poly:
        return cls([0, 1])

    @property
    def degree(self) -> float | int:
        """Degree; ``-inf`` for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else float("-inf")

    def is_zero(self) -> bool:
        return not self.coeffs

    def __repr__(self):
        return f"Poly({[format_rational(c) for c in self.coeffs]})"

    def __str__(self):
        return format_poly(self.coeffs, "x")

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly([other])
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("Poly", self.coeffs))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly([other])
        if not isinstance(other, Poly):
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return Poly([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly([c * other for c in self.coeffs])
        if not isinstance(other, Poly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __call__(self, x):
        """Horner evaluation; exact for int/Fraction input, float otherwise."""
        exact = isinstance(x, (int, Fraction))
        acc = Fraction(0) if exact else 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + (c if exact else float(c))
        return acc

    def deriv(self, order: int = 1) -> Poly:
        coeffs = list(self.coeffs)
        for _ in range(order):
            coeffs = [k * c for k, c in enumerate(coeffs)][1:]
        return Poly(coeffs)

    def antideriv(self) -> Poly:
        """Antiderivative vanishing at 0."""
        return Poly([0] + [c / (k + 1) for k, c in enumerate(self.coeffs)])

    def shift(self, t) -> Poly:
        return poly_shift(self, t)

    def compose_affine(self, a, b) -> Poly:
        """``x -> p(a*x + b)``."""
        a, b = _as_fraction(a), _as_fraction(b)
        lin = Poly([b, a])
        out = Poly()
        for c in reversed(self.coeffs):
            out = out * lin + c
        return out

    def delta(self, k: int = 1) -> Poly:
        """Unit forward difference applied ``k`` times."""
        p = self
        for _ in range(k):
            p = poly_shift(p, 1) - p
        return p


def poly_shift(p: Poly, t) -> Poly:
    """Return ``q`` with ``q(x) = p(x + t)``, by binomial expansion."""
    t = _as_fraction(t)
    n = len(p.coeffs)
    out = [Fraction(0)] * n
    for k, c in enumerate(p.coeffs):
        if not c:
            continue
        tp = Fraction(1)
        # c * (x + t)^k = c * sum_i C(k, i) t^(k-i) x^i
        for i in range(k, -1, -1):
            out[i] += c * comb(k, i) * tp
            tp *= t
    return Poly(out)


def format_poly(coeffs: Sequence[Fraction], var: str, power=None) -> str:
    """Render ascending coefficients as ``c0+c1*var+...``."""
    if power is None:
        power = lambda k: f"{var}^{k}"  # noqa: E731
    parts = []
    for k, c in enumerate(coeffs):
        if c == 0:
            continue
        if k == 0:
            body = format_rational(c)
        else:
            mono = var if k == 1 else power(k)
            if c == 1:
                body = mono
            elif c == -1:
                body = "-" + mono
            elif c.denominator == 1:
                body = f"{c.numerator}{mono}"
            else:
                sign = "-" if c < 0 else ""
                body = f"{sign}({format_rational(abs(c))}){mono}"
        if parts and not body.startswith("-"):
            body = "+" + body
        parts.append(body)
    return "".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# Laurent polynomials
# ---------------------------------------------------------------------------
class LaurentPoly:
    """Finite sum ``sum_k c_k z^k`` with ``k`` possibly negative."""

    __slots__ = ("low", "coeffs")

    def __init__(self, low: int = 0, coeffs: Iterable = ()):
        cs = [_as_fraction(c) for c in coeffs]
        start = 0
        while start < len(cs) and cs[start] == 0:
            start += 1
        cs = _trim(cs[start:])
        self.low = low + start if cs else 0
        self.coeffs = cs

    @classmethod
    def from_dict(cls, terms: dict[int, object]) -> LaurentPoly:
        terms = {e: _as_fraction(c) for e, c in terms.items() if c}
        if not terms:
            return cls()
        lo, hi = min(terms), max(terms)
        return cls(lo, [terms.get(e, 0) for e in range(lo, hi + 1)])

    @classmethod
    def const(cls, c) -> LaurentPoly:
        return cls(0, [c])

    @classmethod
    def monomial(cls, e: int, c=1) -> LaurentPoly:
        return cls(e, [c])

    @property
    def high(self) -> int:
        return self.low + len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def terms(self) -> dict[int, Fraction]:
        return {self.low + i: c for i, c in enumerate(self.coeffs) if c}

    def coefficient(self, e: int) -> Fraction:
        i = e - self.low
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def __repr__(self):
        return f"LaurentPoly({self.low}, {[format_rational(c) for c in self.coeffs]})"

    def __str__(self):
        return format_laurent(self)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.low == other.low and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("LaurentPoly", self.low, self.coeffs))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        lo = min(self.low, other.low)
        hi = max(self.high, other.high)
        return LaurentPoly(lo, [self.coefficient(e) + other.coefficient(e) for e in range(lo, hi + 1)])

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.low, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return LaurentPoly(self.low, [c * other for c in self.coeffs])
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return LaurentPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return LaurentPoly(self.low + other.low, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not Laurent polynomials in general")
        out = LaurentPoly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def substitute_square(self) -> LaurentPoly:
        """``z -> z^2``."""
        return LaurentPoly.from_dict({2 * e: c for e, c in self.terms().items()})

    def divexact(self, other: LaurentPoly) -> LaurentPoly:
        """Exact quotient ``self / other``; raises :class:`NotExactlyDivisible`."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero Laurent polynomial")
        if self.is_zero():
            return LaurentPoly()
        # both are z^low * (polynomial with nonzero constant term)
        num = list(self.coeffs)
        den = other.coeffs
        if len(num) < len(den):
            raise NotExactlyDivisible(f"{self} is not a multiple of {other}")
        lead = den[-1]
        quot = [Fraction(0)] * (len(num) - len(den) + 1)
        for i in range(len(quot) - 1, -1, -1):
            c = num[i + len(den) - 1] / lead
            quot[i] = c
            if c:
                for j, b in enumerate(den):
                    num[i + j] -= c * b
        if any(num):
            raise NotExactlyDivisible(f"{self} is not a multiple of {other}")
        return LaurentPoly(self.low - other.low, quot)

    def __call__(self, z):
        return sum(c * z ** e for e, c in self.terms().items())


def format_laurent(p: LaurentPoly, var: str = "z") -> str:
    if p.is_zero():
        return "0"
    parts = []
    for e, c in sorted(p.terms().items()):
        if e == 0:
            body = format_rational(c)
        else:
            mono = var if e == 1 else f"{var}^{e}"
            if c == 1:
                body = mono
            elif c == -1:
                body = "-" + mono
            else:
                body = f"{format_rational(c)}*{mono}"
        if parts and not body.startswith("-"):
            body = "+" + body
        parts.append(body)
    return "".join(parts)


Z = LaurentPoly.monomial(1)
ZINV = LaurentPoly.monomial(-1)
#: Symbol of the forward difference under the convention L*(z) = sum L(b) z^-b.
DELTA = LaurentPoly.from_dict({-1: 1, 0: -1})


def delta_poly_to_laurent(coeffs: Sequence) -> LaurentPoly:
    """Symbol of ``sum_k c_k Delta^k``."""
    out = LaurentPoly()
    power = LaurentPoly.const(1)
    for c in coeffs:
        c = _as_fraction(c)
        if c:
            out = out + power * c
        power = power * DELTA
    return out


def laurent_to_delta_poly(p: LaurentPoly) -> Poly | None:
    """Inverse of :func:`delta_poly_to_laurent`; ``None`` if ``p`` has positive powers of z."""
    if p.is_zero():
        return Poly()
    if p.high > 0:
        return None
    # z^-1 = 1 + Delta
    out = Poly()
    for e, c in p.terms().items():
        out = out + Poly([comb(-e, i) for i in range(-e + 1)]) * c
    return out


# ---------------------------------------------------------------------------
# Laurent matrices
# ---------------------------------------------------------------------------
def _as_laurent(value) -> LaurentPoly:
    if isinstance(value, LaurentPoly):
        return value
    return LaurentPoly.const(_as_fraction(value))


class LaurentMatrix:
    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence]):
        grid = tuple(tuple(_as_laurent(e) for e in row) for row in entries)
        if not grid or not grid[0]:
            raise ValueError("LaurentMatrix needs at least one row and column")
        if any(len(row) != len(grid[0]) for row in grid):
            raise ValueError("ragged rows")
        self.entries = grid
        self.rows = len(grid)
        self.cols = len(grid[0])

    @classmethod
    def identity(cls, n: int) -> LaurentMatrix:
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> LaurentMatrix:
        return cls([[0] * cols for _ in range(rows)])

    @classmethod
    def diag(cls, items: Sequence) -> LaurentMatrix:
        n = len(items)
        return cls([[items[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij: tuple[int, int]) -> LaurentPoly:
        i, j = ij
        return self.entries[i][j]

    def __repr__(self):
        return "LaurentMatrix([" + ", ".join(
            "[" + ", ".join(str(e) for e in row) + "]" for row in self.entries
        ) + "])"

    def __eq__(self, other):
        if not isinstance(other, LaurentMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __add__(self, other: LaurentMatrix) -> LaurentMatrix:
        if self.shape != other.shape:
            raise ValueError(f"incompatible shapes {self.shape} and {other.shape}")
        return LaurentMatrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)]
        )

    def __neg__(self):
        return LaurentMatrix([[-a for a in row] for row in self.entries])

    def __sub__(self, other: LaurentMatrix) -> LaurentMatrix:
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, LaurentMatrix):
            return lmat_mul(self, other)
        if isinstance(other, (int, Fraction, LaurentPoly)):
            return LaurentMatrix([[a * other for a in row] for row in self.entries])
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, LaurentPoly)):
            return LaurentMatrix([[other * a for a in row] for row in self.entries])
        return NotImplemented

    def substitute_square(self) -> LaurentMatrix:
        return lmat_substitute_square(self)

    def det(self) -> LaurentPoly:
        return lmat_det(self)

    def adjugate(self) -> LaurentMatrix:
        return lmat_adjugate(self)

    def is_constant(self) -> bool:
        return all(e.is_zero() or (e.low == 0 and e.high == 0) for row in self.entries for e in row)

    def coefficient(self, e: int) -> list[list[Fraction]]:
        return [[x.coefficient(e) for x in row] for row in self.entries]

    def exponent_range(self) -> tuple[int, int] | None:
        nz = [x for row in self.entries for x in row if not x.is_zero()]
        if not nz:
            return None
        return min(x.low for x in nz), max(x.high for x in nz)


def lmat_mul(a: LaurentMatrix, b: LaurentMatrix) -> LaurentMatrix:
    if a.cols != b.rows:
        raise ValueError(f"incompatible shapes {a.shape} and {b.shape}")
    out = []
    for i in range(a.rows):
        row = []
        for j in range(b.cols):
            acc = LaurentPoly()
            for k in range(a.cols):
                x, y = a.entries[i][k], b.entries[k][j]
                if not x.is_zero() and not y.is_zero():
                    acc = acc + x * y
            row.append(acc)
        out.append(row)
    return LaurentMatrix(out)


def lmat_substitute_square(m: LaurentMatrix) -> LaurentMatrix:
    return LaurentMatrix([[e.substitute_square() for e in row] for row in m.entries])


def _minor(entries, i: int, j: int):
    return [row[:j] + row[j + 1:] for k, row in enumerate(entries) if k != i]


def _det(entries) -> LaurentPoly:
    n = len(entries)
    if n == 0:
        return LaurentPoly.const(1)
    if n == 1:
        return entries[0][0]
    # expand along the sparsest row
    r = min(range(n), key=lambda i: sum(not e.is_zero() for e in entries[i]))
    acc = LaurentPoly()
    for j, e in enumerate(entries[r]):
        if e.is_zero():
            continue
        term = e * _det(_minor(entries, r, j))
        acc = acc + term if (r + j) % 2 == 0 else acc - term
    return acc


def lmat_det(m: LaurentMatrix) -> LaurentPoly:
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    return _det([list(row) for row in m.entries])


def lmat_adjugate(m: LaurentMatrix) -> LaurentMatrix:
    if m.rows != m.cols:
        raise ValueError("adjugate of a non-square matrix")
    n = m.rows
    entries = [list(row) for row in m.entries]
    if n == 1:
        return LaurentMatrix([[1]])
    adj = [[LaurentPoly()] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            c = _det(_minor(entries, i, j))
            adj[j][i] = c if (i + j) % 2 == 0 else -c
    return LaurentMatrix(adj)


def lmat_solve_right(num: LaurentMatrix, den: LaurentMatrix) -> LaurentMatrix:
    """Return ``X`` with ``X * den == num``, requiring every entry to be Laurent."""
    if den.rows != den.cols:
        raise ValueError("denominator must be square")
    if num.cols != den.rows:
        raise ValueError(f"incompatible shapes {num.shape} and {den.shape}")
    det = lmat_det(den)
    if det.is_zero():
        raise SingularSymbol("denominator symbol has zero determinant")
    prod = lmat_mul(num, lmat_adjugate(den))
    out = []
    for i, row in enumerate(prod.entries):
        out_row = []
        for j, e in enumerate(row):
            try:
                out_row.append(e.divexact(det))
            except NotExactlyDivisible:
                raise NotExactlyDivisible(
                    f"entry ({i},{j}) is not exactly divisible by det = {det}"
                ) from None
        out.append(out_row)
    return LaurentMatrix(out)


# ---------------------------------------------------------------------------
# Rational linear algebra
# ---------------------------------------------------------------------------
def _integer_rows(m: Sequence[Sequence]) -> list[list[int]]:
    rows = []
    for row in m:
        fr = [_as_fraction(x) for x in row]
        den = 1
        for x in fr:
            den = den * x.denominator // gcd(den, x.denominator)
        rows.append([int(x * den) for x in fr])
    return rows


def _primitive(row: list[int]) -> list[int]:
    g = 0
    for x in row:
        g = gcd(g, x)
    if g > 1:
        return [x // g for x in row]
    return row


def integer_rref(m: Sequence[Sequence]) -> tuple[list[list[int]], list[int]]:
    """Fraction-free Gauss-Jordan elimination.

    Rows are scaled to integers and kept primitive. Returns the nonzero
    reduced rows and their pivot columns; each pivot row is zero in every
    other pivot column.
    """
    rows = _integer_rows(m)
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        prow = rows[r]
        pv = prow[c]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = _primitive([pv * x - f * y for x, y in zip(rows[i], prow)])
        if pv < 0:
            rows[r] = [-x for x in prow]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(m: Sequence[Sequence]) -> int:
    return len(integer_rref(m)[1])


def rational_nullspace(m: Sequence[Sequence]) -> list[list[Fraction]]:
    """Exact kernel basis; each vector's first nonzero entry is 1."""
    if not m:
        return []
    ncols = len(m[0])
    rows, pivots = integer_rref(m)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(rows, pivots):
            v[pc] = Fraction(-row[f], row[pc])
        lead = next(x for x in v if x)
        basis.append([x / lead for x in v])
    return basis


def rational_solve(m: Sequence[Sequence], b: Sequence, free_values=None):
    """Solve ``m x = b`` exactly.

    Free variables take values from ``free_values`` (a callable
    ``column -> Fraction``), or 0. Returns ``None`` if inconsistent.
    """
    if not m:
        return []
    ncols = len(m[0])
    aug = [list(row) + [bi] for row, bi in zip(m, b)]
    rows, pivots = integer_rref(aug)
    if pivots and pivots[-1] == ncols:
        return None
    x = [Fraction(0)] * ncols
    for c in range(ncols):
        if c not in pivots and free_values is not None:
            x[c] = _as_fraction(free_values(c))
    for row, pc in zip(rows, pivots):
        acc = Fraction(row[ncols])
        for c in range(ncols):
            if c != pc and row[c] and x[c]:
                acc -= row[c] * x[c]
        x[pc] = acc / row[pc]
    return x


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list[Fraction]]:
    return [
        [sum((a[i][k] * b[k][j] for k in range(len(b))), Fraction(0)) for j in range(len(b[0]))]
        for i in range(len(a))
    ]


def mat_vec(a: Sequence[Sequence], v: Sequence) -> list[Fraction]:
    return [sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a]


def mat_inverse(a: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("inverse of a non-square matrix")
    if rank(a) < n:
        raise SingularSymbol("matrix is singular")
    cols = [rational_solve(a, [Fraction(int(i == j)) for i in range(n)]) for j in range(n)]
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def identity(n: int) -> list[list[Fraction]]:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
