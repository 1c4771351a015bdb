"""Exact linear programming over the rationals.

Two-phase primal simplex with Bland's pivoting rule, run entirely on
``Fraction`` arithmetic.  Bland's rule makes the solver immune to cycling on
degenerate systems (the no-signalling polytope is highly degenerate) and, in
combination with fixed column and row orderings, makes every answer
deterministic: the same input always yields the same witness.

Certificates:

* ``optimal``   - witness is the optimal point; ``dual`` holds multipliers
                  (one per inequality, then one per equality) that prove
                  optimality exactly (see :func:`verify_dual`).
* ``infeasible`` - witness holds Farkas multipliers proving that no point
                  satisfies the constraints (see :func:`verify_farkas`).
* ``unbounded`` - witness is an improving ray: a direction that satisfies
                  all homogeneous constraints and strictly improves the
                  objective.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import InputError
from .linalg import Vector, ZERO, ONE, dot, is_zero, primitive, zeros

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

MAX = "max"
MIN = "min"


@dataclass(frozen=True)
class LPResult:
    """Outcome of an exact LP solve.

    ``optimum`` is present only when ``status == OPTIMAL``.  ``witness`` is
    the optimal point, the Farkas multipliers, or the improving ray,
    depending on status.  ``dual`` carries the optimality certificate for
    the max-form of the program (see :func:`verify_dual`).
    """

    status: str
    optimum: Fraction | None
    witness: Vector
    dual: Vector | None = None

    @property
    def is_optimal(self) -> bool:
        return self.status == OPTIMAL


class _Tableau:
    """Dense simplex tableau with Bland's rule.

    Columns are laid out as [x+ | x- | slacks | artificials]; rows keep their
    construction order (inequalities first, then equalities).  The objective
    row stores reduced costs and, in its last entry, minus the objective
    value of the current basis.
    """

    def __init__(self, ineqs, eqs, dim):
        self.dim = dim
        self.n_ineq = len(ineqs)
        m = len(ineqs) + len(eqs)
        self.m = m
        self.n_struct = 2 * dim + self.n_ineq
        self.n = self.n_struct + m
        self.flip = []
        rows = []
        rhs = []
        for r, (normal, offset) in enumerate(list(ineqs) + list(eqs)):
            sigma = ONE if offset >= 0 else -ONE
            self.flip.append(sigma)
            row = [ZERO] * self.n
            for k in range(dim):
                row[k] = sigma * normal[k]
                row[dim + k] = -sigma * normal[k]
            if r < self.n_ineq:
                row[2 * dim + r] = sigma
            row[self.n_struct + r] = ONE
            rows.append(row)
            rhs.append(sigma * offset)
        self.rows = rows
        self.rhs = rhs
        self.basis = [self.n_struct + r for r in range(m)]
        self.row_ids = list(range(m))
        self.obj = [ZERO] * (self.n + 1)

    def set_costs(self, costs, allow_artificial: bool):
        """Recompute the reduced-cost row for the given column costs."""
        self.allow_artificial = allow_artificial
        obj = list(costs) + [ZERO]
        for i, bcol in enumerate(self.basis):
            cb = costs[bcol]
            if cb == 0:
                continue
            for j in range(self.n):
                obj[j] -= cb * self.rows[i][j]
            obj[self.n] -= cb * self.rhs[i]
        self.obj = obj
        self.costs = list(costs)

    def _pivot(self, r: int, e: int):
        piv = self.rows[r][e]
        inv = ONE / piv
        self.rows[r] = [inv * x for x in self.rows[r]]
        self.rhs[r] = inv * self.rhs[r]
        for i in range(self.m):
            if i != r and self.rows[i][e] != 0:
                f = self.rows[i][e]
                self.rows[i] = [x - f * y for x, y in zip(self.rows[i], self.rows[r])]
                self.rhs[i] -= f * self.rhs[r]
        if self.obj[e] != 0:
            f = self.obj[e]
            for j in range(self.n):
                self.obj[j] -= f * self.rows[r][j]
            self.obj[self.n] -= f * self.rhs[r]
        self.basis[r] = e

    def minimize(self) -> str:
        """Run the simplex to optimality or unboundedness (min problem)."""
        while True:
            enter = None
            for j in range(self.n):
                if not self.allow_artificial and j >= self.n_struct:
                    continue
                if self.obj[j] < 0:
                    enter = j
                    break
            if enter is None:
                return OPTIMAL
            leave = None
            best = None
            for i in range(self.m):
                a = self.rows[i][enter]
                if a > 0:
                    ratio = self.rhs[i] / a
                    if best is None or ratio < best or (
                        ratio == best and self.basis[i] < self.basis[leave]
                    ):
                        best = ratio
                        leave = i
            if leave is None:
                self.unbounded_col = enter
                return UNBOUNDED
            self._pivot(leave, enter)

    def objective_value(self) -> Fraction:
        return -self.obj[self.n]

    def row_multipliers(self) -> list[Fraction]:
        """Simplex multipliers per original row, read off the artificial columns.

        The artificial column for row r starts as the unit vector e_r, so its
        current entries record the coefficients expressing each tableau row as
        a combination of original rows; contracting with the basic costs gives
        pi_r = cost_r - reduced_cost_r.  This stays valid after redundant rows
        are dropped, because the columns themselves are never touched.
        """
        pi = []
        for rid in range(len(self.flip)):
            col = self.n_struct + rid
            pi.append(self.costs[col] - self.obj[col])
        return pi

    def drop_redundant_and_artificials(self):
        """After phase 1, pivot artificials out of the basis; drop rows that
        turn out to be linearly dependent on the others."""
        keep = []
        for i in range(self.m):
            if self.basis[i] < self.n_struct:
                keep.append(i)
                continue
            enter = None
            for j in range(self.n_struct):
                if self.rows[i][j] != 0:
                    enter = j
                    break
            if enter is None:
                continue
            self._pivot(i, enter)
            keep.append(i)
        if len(keep) != self.m:
            self.rows = [self.rows[i] for i in keep]
            self.rhs = [self.rhs[i] for i in keep]
            self.basis = [self.basis[i] for i in keep]
            self.row_ids = [self.row_ids[i] for i in keep]
            self.m = len(keep)

    def solution(self) -> Vector:
        x = [ZERO] * self.dim
        for i, bcol in enumerate(self.basis):
            if bcol < self.dim:
                x[bcol] += self.rhs[i]
            elif bcol < 2 * self.dim:
                x[bcol - self.dim] -= self.rhs[i]
        return tuple(x)

    def ray(self) -> Vector:
        e = self.unbounded_col
        xi = [ZERO] * self.n
        xi[e] = ONE
        for i, bcol in enumerate(self.basis):
            xi[bcol] = -self.rows[i][e]
        d = [xi[k] - xi[self.dim + k] for k in range(self.dim)]
        return primitive(tuple(d))


def solve_lp(objective: Vector, sense: str, constraints) -> LPResult:
    """Exact optimum of a linear objective over an H-represented polyhedron.

    ``constraints`` is an :class:`~gptlab.ratgeo.polytope.HRep` (or anything
    with ``inequalities``, ``equalities`` and ``ambient_dim`` attributes).
    """
    if sense not in (MAX, MIN):
        raise InputError("sense must be 'max' or 'min', got %r" % (sense,))
    dim = constraints.ambient_dim
    if len(objective) != dim:
        raise InputError(
            "objective has length %d, constraints are %d-dimensional"
            % (len(objective), dim)
        )
    ineqs = list(constraints.inequalities)
    eqs = list(constraints.equalities)
    for normal, _ in ineqs + eqs:
        if len(normal) != dim:
            raise InputError("constraint normal has wrong dimension")

    c = objective if sense == MAX else tuple(-x for x in objective)

    tab = _Tableau(ineqs, eqs, dim)

    # Phase 1: minimize the sum of artificials.
    phase1_costs = [ZERO] * tab.n_struct + [ONE] * tab.m
    tab.set_costs(phase1_costs, allow_artificial=True)
    status = tab.minimize()
    assert status == OPTIMAL, "phase 1 cannot be unbounded"
    if tab.objective_value() > 0:
        pi = tab.row_multipliers()
        mult = tuple(-p * s for p, s in zip(pi, tab.flip))
        return LPResult(status=INFEASIBLE, optimum=None, witness=mult)

    tab.drop_redundant_and_artificials()

    # Phase 2: minimize -c.x (i.e. maximize c.x).
    phase2_costs = [ZERO] * tab.n
    for k in range(dim):
        phase2_costs[k] = -c[k]
        phase2_costs[dim + k] = c[k]
    tab.set_costs(phase2_costs, allow_artificial=False)
    status = tab.minimize()
    if status == UNBOUNDED:
        return LPResult(status=UNBOUNDED, optimum=None, witness=tab.ray())

    x = tab.solution()
    value = dot(objective, x)
    pi = tab.row_multipliers()
    dual = tuple(-p * s for p, s in zip(pi, tab.flip))
    return LPResult(status=OPTIMAL, optimum=value, witness=x, dual=dual)


def verify_farkas(constraints, multipliers: Vector) -> bool:
    """Check a Farkas infeasibility certificate exactly.

    ``multipliers`` holds one value per inequality followed by one per
    equality.  The certificate is valid iff the inequality multipliers are
    nonnegative, the combined normal vanishes, and the combined offset is
    negative: the combination reads ``0.x <= negative``, so no point can
    satisfy the system.
    """
    ineqs = list(constraints.inequalities)
    eqs = list(constraints.equalities)
    if len(multipliers) != len(ineqs) + len(eqs):
        return False
    y = multipliers[: len(ineqs)]
    z = multipliers[len(ineqs):]
    if any(v < 0 for v in y):
        return False
    combined = list(zeros(constraints.ambient_dim))
    offset = ZERO
    for coeff, (normal, rhs) in zip(list(y) + list(z), ineqs + eqs):
        for k, a in enumerate(normal):
            combined[k] += coeff * a
        offset += coeff * rhs
    return is_zero(tuple(combined)) and offset < 0


def verify_dual(constraints, objective: Vector, sense: str, result: LPResult) -> bool:
    """Check an optimality certificate exactly.

    For the max form the multipliers (y for inequalities, z for equalities)
    must satisfy y >= 0, y.A + z.E = c and y.b + z.f = optimum; weak duality
    then pins the optimum from above while the witness point pins it from
    below.  ``min`` problems are certified through their max form.
    """
    if result.status != OPTIMAL or result.dual is None:
        return False
    ineqs = list(constraints.inequalities)
    eqs = list(constraints.equalities)
    mult = result.dual
    if len(mult) != len(ineqs) + len(eqs):
        return False
    y = mult[: len(ineqs)]
    if any(v < 0 for v in y):
        return False
    c = objective if sense == MAX else tuple(-x for x in objective)
    target = result.optimum if sense == MAX else -result.optimum
    combined = list(zeros(constraints.ambient_dim))
    offset = ZERO
    for coeff, (normal, rhs) in zip(mult, ineqs + eqs):
        for k, a in enumerate(normal):
            combined[k] += coeff * a
        offset += coeff * rhs
    if tuple(combined) != tuple(c) or offset != target:
        return False
    # The primal witness must be feasible and achieve the same value.
    x = result.witness
    for normal, rhs in ineqs:
        if dot(normal, x) > rhs:
            return False
    for normal, rhs in eqs:
        if dot(normal, x) != rhs:
            return False
    return dot(objective, x) == result.optimum
