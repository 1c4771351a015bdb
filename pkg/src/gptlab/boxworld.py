"""The two-gbit composite: no-signalling tables, PR boxes, CHSH.

A behavior is the list of 16 probabilities p(a,b|x,y) for binary inputs
x, y and binary outcomes a, b (up encoded 0, down encoded 1), stored in the
fixed index order a + 2b + 4x + 8y.  The composite state space is the set
of all such tables obeying nonnegativity, normalization per setting pair,
and the no-signalling marginal equalities; it is a polytope with 24
vertices: 16 local deterministic ones and 8 PR boxes.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import InputError, NotAVertexError, SignallingError
from .ratgeo import HRep
from .ratgeo.linalg import ONE, Vector, ZERO, rank
from .spaces import StateSpace, from_hrep

HALF = Fraction(1, 2)


def table_index(a: int, b: int, x: int, y: int) -> int:
    """Fixed global index order for the 16 entries of a behavior."""
    return a + 2 * b + 4 * x + 8 * y


@dataclass(frozen=True)
class ProbabilityTable:
    """16 exact probabilities p(a,b|x,y) in the fixed index order.

    Construction checks nonnegativity and per-setting normalization; the
    no-signalling equalities are checked by :func:`marginals` (so that the
    signalling error path stays reachable for hand-built tables).
    """

    p: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.p) != 16:
            raise InputError("a probability table has exactly 16 entries")
        if any(v < 0 for v in self.p):
            raise InputError("probabilities must be nonnegative")
        for x in range(2):
            for y in range(2):
                total = sum(
                    (self.p[table_index(a, b, x, y)] for a in range(2) for b in range(2)),
                    ZERO,
                )
                if total != 1:
                    raise InputError(
                        "outcomes for settings (x=%d, y=%d) sum to %s, not 1"
                        % (x, y, total)
                    )

    def value(self, a: int, b: int, x: int, y: int) -> Fraction:
        return self.p[table_index(a, b, x, y)]

    @staticmethod
    def from_function(f) -> "ProbabilityTable":
        entries = [ZERO] * 16
        for a, b, x, y in itertools.product(range(2), repeat=4):
            entries[table_index(a, b, x, y)] = Fraction(f(a, b, x, y))
        return ProbabilityTable(p=tuple(entries))


def pr_box_table(r: int = 1, s: int = 1, t: int = 0) -> ProbabilityTable:
    """The PR box with a xor b = xy xor rx xor sy xor t, entries in {0, 1/2}.

    The default (r, s, t) = (1, 1, 0) is the box whose outcomes are
    correlated exactly when both parties measure 0 and anticorrelated
    otherwise.
    """
    def f(a, b, x, y):
        return HALF if (a ^ b) == (x * y) ^ (r * x) ^ (s * y) ^ t else ZERO

    return ProbabilityTable.from_function(f)


def local_deterministic_table(a0: int, a1: int, b0: int, b1: int) -> ProbabilityTable:
    """Deterministic behavior with a(x) = ax and b(y) = by."""
    assign_a = (a0, a1)
    assign_b = (b0, b1)

    def f(a, b, x, y):
        return ONE if (a, b) == (assign_a[x], assign_b[y]) else ZERO

    return ProbabilityTable.from_function(f)


@lru_cache(maxsize=1)
def build_ns_hrep() -> HRep:
    """H-representation of the no-signalling set in the raw 16-dim embedding.

    16 nonnegativity inequalities plus the normalization and no-signalling
    equalities, the latter reduced to an independent system (rank 8, which
    leaves the expected affine dimension of 8).
    """
    ineqs = []
    for i in range(16):
        normal = [ZERO] * 16
        normal[i] = -ONE
        ineqs.append((tuple(normal), ZERO))

    eqs = []
    for x in range(2):
        for y in range(2):
            normal = [ZERO] * 16
            for a in range(2):
                for b in range(2):
                    normal[table_index(a, b, x, y)] = ONE
            eqs.append((tuple(normal), ONE))
    for a in range(2):
        for x in range(2):
            normal = [ZERO] * 16
            for b in range(2):
                normal[table_index(a, b, x, 0)] += ONE
                normal[table_index(a, b, x, 1)] -= ONE
            eqs.append((tuple(normal), ZERO))
    for b in range(2):
        for y in range(2):
            normal = [ZERO] * 16
            for a in range(2):
                normal[table_index(a, b, 0, y)] += ONE
                normal[table_index(a, b, 1, y)] -= ONE
            eqs.append((tuple(normal), ZERO))

    # Reduce the equality system to an independent subset, kept in input order.
    independent = []
    for eq in eqs:
        trial = independent + [eq]
        if rank([n + (o,) for n, o in trial]) == len(trial):
            independent.append(eq)
    return HRep.make(16, ineqs, independent)


@lru_cache(maxsize=1)
def make_boxworld2() -> StateSpace:
    """The two-gbit composite state space (vertices enumerated exactly)."""
    return from_hrep(build_ns_hrep(), "boxworld2")


def table_from_vector(v: Vector) -> ProbabilityTable:
    return ProbabilityTable(p=tuple(v))


def vector_from_table(t: ProbabilityTable) -> Vector:
    return t.p


# ---------------------------------------------------------------------------
# Marginals and products
# ---------------------------------------------------------------------------


def marginals(t: ProbabilityTable):
    """Setting-independent marginals (pA, pB), each indexed [outcome][setting].

    Raises :class:`SignallingError` naming the violated equality if a
    marginal depends on the remote party's setting.
    """
    pa = [[None, None], [None, None]]
    for a in range(2):
        for x in range(2):
            values = [
                sum((t.value(a, b, x, y) for b in range(2)), ZERO) for y in range(2)
            ]
            if values[0] != values[1]:
                raise SignallingError("A", a, x, (0, 1), values)
            pa[a][x] = values[0]
    pb = [[None, None], [None, None]]
    for b in range(2):
        for y in range(2):
            values = [
                sum((t.value(a, b, x, y) for a in range(2)), ZERO) for x in range(2)
            ]
            if values[0] != values[1]:
                raise SignallingError("B", b, y, (0, 1), values)
            pb[b][y] = values[0]
    return (
        tuple(tuple(row) for row in pa),
        tuple(tuple(row) for row in pb),
    )


def is_no_signalling(t: ProbabilityTable) -> bool:
    try:
        marginals(t)
    except SignallingError:
        return False
    return True


def product_table(omega_a: Vector, omega_b: Vector) -> ProbabilityTable:
    """Independent local preparation: p(a,b|x,y) = pA(a|x) * pB(b|y).

    The gbit state (p(up|0), p(up|1)) fixes pA(0|x) = omega[x] under the
    encoding up -> 0.
    """
    omega_a = tuple(omega_a)
    omega_b = tuple(omega_b)
    for omega in (omega_a, omega_b):
        if len(omega) != 2 or any(not 0 <= c <= 1 for c in omega):
            raise InputError("gbit states lie in the unit square, got %s" % (omega,))

    def pa(a, x):
        return omega_a[x] if a == 0 else ONE - omega_a[x]

    def pb(b, y):
        return omega_b[y] if b == 0 else ONE - omega_b[y]

    return ProbabilityTable.from_function(
        lambda a, b, x, y: pa(a, x) * pb(b, y)
    )


# ---------------------------------------------------------------------------
# Vertex classification
# ---------------------------------------------------------------------------

LOCAL_DETERMINISTIC = "local_deterministic"
PR_BOX = "pr_box"


@dataclass(frozen=True)
class VertexClass:
    """Classification of a no-signalling polytope vertex.

    For local deterministic vertices ``detail`` is the assignment tuple
    (a(0), a(1), b(0), b(1)); for PR boxes it is the relabelling index
    r + 2s + 4t of the xor relation a xor b = xy xor rx xor sy xor t.
    """

    tag: str
    detail: tuple[int, ...] | int


def classify_vertex(t: ProbabilityTable) -> VertexClass:
    """Classify a vertex of the no-signalling polytope.

    Raises :class:`NotAVertexError` when the table is not an extreme point
    of the no-signalling set (checked exactly via the active-constraint
    rank test).
    """
    h = build_ns_hrep()
    point = t.p
    if not h.contains(point):
        raise NotAVertexError("table is not in the no-signalling set")
    active = [h.inequalities[i][0] for i in h.active_inequalities(point)]
    active += [n for n, _ in h.equalities]
    if rank(active) != 16:
        raise NotAVertexError("table is not an extreme point")

    pa, pb = marginals(t)
    if all(pa[a][x] in (ZERO, ONE) for a in range(2) for x in range(2)) and all(
        pb[b][y] in (ZERO, ONE) for b in range(2) for y in range(2)
    ):
        a_of = tuple(next(a for a in range(2) if pa[a][x] == 1) for x in range(2))
        b_of = tuple(next(b for b in range(2) if pb[b][y] == 1) for y in range(2))
        return VertexClass(tag=LOCAL_DETERMINISTIC, detail=a_of + b_of)

    if not all(v in (ZERO, HALF) for v in t.p):
        raise NotAVertexError(
            "vertex is neither deterministic nor of half-integer PR type"
        )
    g = {}
    for x in range(2):
        for y in range(2):
            support = {
                (a ^ b)
                for a in range(2)
                for b in range(2)
                if t.value(a, b, x, y) > 0
            }
            if len(support) != 1:
                raise NotAVertexError("PR-type vertex with inconsistent support")
            g[(x, y)] = support.pop()
    tt = g[(0, 0)]
    r = g[(1, 0)] ^ tt
    s = g[(0, 1)] ^ tt
    if g[(1, 1)] != 1 ^ r ^ s ^ tt:
        raise NotAVertexError("support pattern does not match any PR relabelling")
    return VertexClass(tag=PR_BOX, detail=r + 2 * s + 4 * tt)


# ---------------------------------------------------------------------------
# CHSH
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CHSHVariant:
    """Sign choice for the four correlators, ordered E(0,0), E(0,1), E(1,0), E(1,1).

    The product of the signs must be -1 (an odd number of minus signs);
    exactly eight such variants exist.
    """

    signs: tuple[int, int, int, int]

    def __post_init__(self):
        if any(s not in (1, -1) for s in self.signs):
            raise InputError("CHSH signs must be +1 or -1")
        if self.signs[0] * self.signs[1] * self.signs[2] * self.signs[3] != -1:
            raise InputError("CHSH sign product must be -1")

    def sign(self, x: int, y: int) -> int:
        return self.signs[2 * x + y]


def all_chsh_variants() -> tuple[CHSHVariant, ...]:
    variants = []
    for signs in itertools.product((1, -1), repeat=4):
        if signs[0] * signs[1] * signs[2] * signs[3] == -1:
            variants.append(CHSHVariant(signs=signs))
    return tuple(variants)


def correlator(t: ProbabilityTable, x: int, y: int) -> Fraction:
    """E(x,y) = sum over outcomes of (-1)^(a xor b) p(a,b|x,y)."""
    total = ZERO
    for a in range(2):
        for b in range(2):
            term = t.value(a, b, x, y)
            total += term if (a ^ b) == 0 else -term
    return total


def chsh_value(t: ProbabilityTable, variant: CHSHVariant) -> Fraction:
    return sum(
        (variant.sign(x, y) * correlator(t, x, y) for x in range(2) for y in range(2)),
        ZERO,
    )


def chsh_max(t: ProbabilityTable) -> Fraction:
    """Largest |CHSH value| over the eight sign variants."""
    return max(abs(chsh_value(t, v)) for v in all_chsh_variants())


def chsh_objective(variant: CHSHVariant) -> Vector:
    """The CHSH expression as a linear objective over the 16 raw coordinates."""
    c = [ZERO] * 16
    for a, b, x, y in itertools.product(range(2), repeat=4):
        sign = 1 if (a ^ b) == 0 else -1
        c[table_index(a, b, x, y)] = Fraction(variant.sign(x, y) * sign)
    return tuple(c)


# ---------------------------------------------------------------------------
# Quantum comparison point (floating point; never mixed with exact tables)
# ---------------------------------------------------------------------------


def quantum_chsh_table(theta_a0, theta_a1, theta_b0, theta_b1):
    """Behavior of the two-qubit singlet under equatorial measurements.

    The singlet gives E(x,y) = -cos(theta_Ax - theta_By) with uniform
    marginals; the 16 float entries follow the fixed index order.
    """
    thetas_a = (theta_a0, theta_a1)
    thetas_b = (theta_b0, theta_b1)
    p = [0.0] * 16
    for a, b, x, y in itertools.product(range(2), repeat=4):
        e = -math.cos(thetas_a[x] - thetas_b[y])
        sign = 1.0 if (a ^ b) == 0 else -1.0
        p[table_index(a, b, x, y)] = (1.0 + sign * e) / 4.0
    return tuple(p)


def chsh_max_float(p) -> float:
    """chsh_max on a float table (same variant family, float arithmetic)."""
    best = 0.0
    for variant in all_chsh_variants():
        total = 0.0
        for x in range(2):
            for y in range(2):
                e = 0.0
                for a in range(2):
                    for b in range(2):
                        sign = 1.0 if (a ^ b) == 0 else -1.0
                        e += sign * p[table_index(a, b, x, y)]
                total += variant.sign(x, y) * e
        best = max(best, abs(total))
    return best
