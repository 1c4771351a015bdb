"""Exact linear algebra over the rationals.

Vectors are tuples of ``fractions.Fraction``; matrices are tuples of such
row tuples.  All reductions are plain fraction-pivoted Gaussian elimination,
so every result is exact and deterministic.  The sizes handled here are tiny
(ambient dimension at most ~17), so no effort is spent on pivoting for speed.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

Vector = tuple[Fraction, ...]
Matrix = tuple[Vector, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def vec(*entries) -> Vector:
    """Build a rational vector from ints, Fractions or 'n/d' strings."""
    return tuple(as_fraction(e) for e in entries)


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError("expected an exact rational, got %r" % (value,))


def parse_rational(text: str) -> Fraction:
    """Parse 'n/d' or plain integer strings; floats are rejected."""
    text = text.strip()
    if "/" in text:
        num, den = text.split("/", 1)
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def format_rational(value: Fraction) -> str:
    """Serialize as 'n/d', always including the denominator."""
    return "%d/%d" % (value.numerator, value.denominator)


def dot(a: Vector, b: Vector) -> Fraction:
    if len(a) != len(b):
        raise ValueError("dimension mismatch: %d vs %d" % (len(a), len(b)))
    return sum((x * y for x, y in zip(a, b)), ZERO)


def vadd(a: Vector, b: Vector) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def vsub(a: Vector, b: Vector) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def vscale(c: Fraction, a: Vector) -> Vector:
    return tuple(c * x for x in a)


def zeros(n: int) -> Vector:
    return (ZERO,) * n


def unit(n: int, i: int) -> Vector:
    return tuple(ONE if j == i else ZERO for j in range(n))


def is_zero(a: Vector) -> bool:
    return all(x == 0 for x in a)


def mat_vec(m: Matrix, x: Vector) -> Vector:
    return tuple(dot(row, x) for row in m)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def transpose(m: Matrix) -> Matrix:
    return tuple(zip(*m)) if m else ()


def identity(n: int) -> Matrix:
    return tuple(unit(n, i) for i in range(n))


def rref(rows) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form.

    Returns (reduced nonzero rows, pivot column indices).  Pivots are chosen
    left to right, first nonzero entry in column order, which makes the
    output canonical for a given row span.
    """
    work = [list(r) for r in rows]
    if not work:
        return [], []
    ncols = len(work[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, len(work)):
            if work[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        work[r], work[pivot_row] = work[pivot_row], work[r]
        inv = ONE / work[r][c]
        work[r] = [inv * x for x in work[r]]
        for i in range(len(work)):
            if i != r and work[i][c] != 0:
                factor = work[i][c]
                work[i] = [x - factor * y for x, y in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    return [row for row in work[:r]], pivots


def rank(rows) -> int:
    _, pivots = rref(rows)
    return len(pivots)


def null_space(rows, ncols: int) -> list[Vector]:
    """Canonical basis of {x : Rx = 0}, one vector per free column."""
    reduced, pivots = rref(rows)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for row, p in zip(reduced, pivots):
            v[p] = -row[f]
        basis.append(tuple(v))
    return basis


def solve(a_rows, b: Vector) -> Vector | None:
    """One solution of Ax = b, or None if inconsistent.

    When the system is underdetermined the free variables are set to zero,
    which keeps the result canonical.
    """
    if not a_rows:
        return zeros(0)
    ncols = len(a_rows[0])
    augmented = [list(row) + [rhs] for row, rhs in zip(a_rows, b)]
    reduced, pivots = rref(augmented)
    for row, p in zip(reduced, pivots):
        if p == ncols:
            return None
    x = [ZERO] * ncols
    for row, p in zip(reduced, pivots):
        x[p] = row[ncols]
    return tuple(x)


def inverse(m: Matrix) -> Matrix | None:
    """Exact inverse of a square matrix, or None if singular."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("inverse requires a square matrix")
    augmented = [list(row) + list(unit(n, i)) for i, row in enumerate(m)]
    reduced, pivots = rref(augmented)
    if pivots[:n] != list(range(n)):
        return None
    return tuple(tuple(row[n:]) for row in reduced)


def affine_rank(points) -> int:
    """Dimension of the affine hull of a nonempty point list."""
    pts = list(points)
    if not pts:
        raise ValueError("affine_rank of an empty point list")
    base = pts[0]
    return rank([vsub(p, base) for p in pts[1:]])


def primitive(v: Vector) -> Vector:
    """Scale by a positive rational to coprime integers (canonical ray form)."""
    denoms = [x.denominator for x in v]
    scale = 1
    for d in denoms:
        scale = scale * d // gcd(scale, d)
    ints = [int(x * scale) for x in v]
    g = 0
    for value in ints:
        g = gcd(g, abs(value))
    if g == 0:
        return tuple(ZERO for _ in v)
    return tuple(Fraction(value, g) for value in ints)


def primitive_signed(v: Vector) -> Vector:
    """Primitive form with the first nonzero entry positive (for equalities)."""
    p = primitive(v)
    for x in p:
        if x != 0:
            if x < 0:
                return tuple(-y for y in p)
            break
    return p
