"""Exact polytope representations and conversions.

A polytope lives either as an ``HRep`` (inequalities ``a.x <= b`` plus
equalities ``e.x = f``) or a ``VRep`` (canonically ordered vertex list).
``vertex_enumeration`` converts H to V with the double description method
run on the homogenization cone; ``facet_enumeration`` converts V to H by
enumerating the vertices of the polar dual inside the affine hull.  All
arithmetic is exact, all outputs canonically ordered, so conversions are
reproducible bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import EmptyError, InputError, UnboundedError
from . import lp
from .linalg import (
    ONE,
    Vector,
    ZERO,
    dot,
    inverse,
    is_zero,
    null_space,
    primitive,
    primitive_signed,
    rank,
    vscale,
    vsub,
    zeros,
)

Constraint = tuple[Vector, Fraction]


def _canonical_inequality(normal: Vector, offset: Fraction) -> Constraint:
    """Scale to primitive integers; positive scaling keeps the direction."""
    scaled = primitive(tuple(normal) + (offset,))
    return scaled[:-1], scaled[-1]


def _canonical_equality(normal: Vector, offset: Fraction) -> Constraint:
    scaled = primitive_signed(tuple(normal) + (offset,))
    return scaled[:-1], scaled[-1]


@dataclass(frozen=True)
class HRep:
    """Linear inequality/equality description of a polyhedron."""

    ambient_dim: int
    inequalities: tuple[Constraint, ...]
    equalities: tuple[Constraint, ...] = ()

    def __post_init__(self):
        if self.ambient_dim < 1:
            raise InputError("ambient dimension must be >= 1")
        for normal, offset in self.inequalities:
            if len(normal) != self.ambient_dim:
                raise InputError("inequality normal has wrong length")
            if is_zero(normal) and offset < 0:
                raise InputError(
                    "inequality 0.x <= %s is trivially infeasible" % (offset,)
                )
        for normal, _ in self.equalities:
            if len(normal) != self.ambient_dim:
                raise InputError("equality normal has wrong length")

    @staticmethod
    def make(dim, ineqs=(), eqs=()) -> "HRep":
        """Build with canonicalized constraints from (normal, offset) pairs."""
        canon_ineqs = tuple(
            _canonical_inequality(tuple(n), o) for n, o in ineqs
        )
        canon_eqs = tuple(_canonical_equality(tuple(n), o) for n, o in eqs)
        return HRep(ambient_dim=dim, inequalities=canon_ineqs, equalities=canon_eqs)

    def contains(self, x: Vector) -> bool:
        return all(dot(n, x) <= o for n, o in self.inequalities) and all(
            dot(n, x) == o for n, o in self.equalities
        )

    def active_inequalities(self, x: Vector) -> tuple[int, ...]:
        return tuple(
            i for i, (n, o) in enumerate(self.inequalities) if dot(n, x) == o
        )


@dataclass(frozen=True)
class VRep:
    """Vertex description: canonically (lexicographically) ordered extreme points."""

    ambient_dim: int
    vertices: tuple[Vector, ...]

    def __post_init__(self):
        if self.ambient_dim < 1:
            raise InputError("ambient dimension must be >= 1")
        for v in self.vertices:
            if len(v) != self.ambient_dim:
                raise InputError("vertex has wrong length")

    @staticmethod
    def make(dim, points) -> "VRep":
        """Canonicalize: exact-duplicate removal and lexicographic sort.

        Callers must pass extreme points only; use ``from_points`` to clean
        an arbitrary point set.
        """
        unique = sorted(set(tuple(p) for p in points))
        return VRep(ambient_dim=dim, vertices=tuple(unique))

    @staticmethod
    def from_points(dim, points) -> "VRep":
        """Canonical VRep of conv(points): drops non-extreme points exactly."""
        unique = sorted(set(tuple(p) for p in points))
        extreme = [
            p
            for i, p in enumerate(unique)
            if not _in_convex_hull(p, unique[:i] + unique[i + 1:])
        ]
        return VRep(ambient_dim=dim, vertices=tuple(extreme))


def _in_convex_hull(point: Vector, points: list[Vector]) -> bool:
    """Exact LP feasibility test: point in conv(points)?"""
    if not points:
        return False
    n = len(points)
    d = len(point)
    eqs = []
    for k in range(d):
        eqs.append((tuple(p[k] for p in points), point[k]))
    eqs.append(((ONE,) * n, ONE))
    ineqs = [(tuple(-ONE if j == i else ZERO for j in range(n)), ZERO) for i in range(n)]
    h = HRep.make(n, ineqs, eqs)
    result = lp.solve_lp(zeros(n), lp.MAX, h)
    return result.status == lp.OPTIMAL


def affine_dimension(points) -> int:
    """Exact dimension of the affine hull of a nonempty point list."""
    pts = [tuple(p) for p in points]
    if not pts:
        raise InputError("affine_dimension of an empty point list")
    base = pts[0]
    return rank([vsub(p, base) for p in pts[1:]])


# ---------------------------------------------------------------------------
# Double description on the homogenization cone
# ---------------------------------------------------------------------------


def _check_bounded_nonempty(h: HRep):
    feas = lp.solve_lp(zeros(h.ambient_dim), lp.MAX, h)
    if feas.status == lp.INFEASIBLE:
        raise EmptyError("the H-representation describes an empty polytope")
    for k in range(h.ambient_dim):
        direction = tuple(
            ONE if j == k else ZERO for j in range(h.ambient_dim)
        )
        for sense in (lp.MAX, lp.MIN):
            if lp.solve_lp(direction, sense, h).status == lp.UNBOUNDED:
                raise UnboundedError(
                    "polyhedron is unbounded along coordinate %d" % k
                )


def _dd_extreme_rays(rows: list[Vector], k: int) -> list[Vector]:
    """Extreme rays of the pointed cone {z in Q^k : M z <= 0}.

    ``rows`` must have rank k (pointedness).  Uses the double description
    method: start from a simplicial subcone given by k independent rows,
    insert the remaining rows one at a time, and keep only adjacent-pair
    combinations (combinatorial adjacency test).
    """
    order = sorted(range(len(rows)), key=lambda i: rows[i])
    basis_idx: list[int] = []
    basis_rows: list[Vector] = []
    for i in order:
        if rank(basis_rows + [rows[i]]) > len(basis_rows):
            basis_idx.append(i)
            basis_rows.append(rows[i])
            if len(basis_rows) == k:
                break
    if len(basis_rows) < k:
        raise InputError("cone is not pointed: constraint matrix rank deficient")


    binv = inverse(tuple(basis_rows))
    assert binv is not None
    rays = [primitive(tuple(-binv[r][c] for r in range(k))) for c in range(k)]
    processed = list(basis_idx)
    zero_sets = []
    for ray in rays:
        zs = 0
        for pos, i in enumerate(processed):
            if dot(rows[i], ray) == 0:
                zs |= 1 << pos
        zero_sets.append(zs)

    remaining = [i for i in order if i not in set(basis_idx)]
    for i in remaining:
        m = rows[i]
        values = [dot(m, ray) for ray in rays]
        keep_rays, keep_zs = [], []
        plus, minus = [], []
        for idx, val in enumerate(values):
            if val <= 0:
                keep_rays.append(rays[idx])
                keep_zs.append(zero_sets[idx])
            if val > 0:
                plus.append(idx)
            elif val < 0:
                minus.append(idx)
        new_rays, new_zs = [], []
        for p in plus:
            for q in minus:
                common = zero_sets[p] & zero_sets[q]
                adjacent = True
                for r in range(len(rays)):
                    if r != p and r != q and (common & ~zero_sets[r]) == 0:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                combo = vsub(
                    vscale(values[p], rays[q]), vscale(values[q], rays[p])
                )
                new_rays.append(primitive(combo))
                new_zs.append(common)
        bit = 1 << len(processed)
        rays = keep_rays + new_rays
        zero_sets = []
        for idx, ray in enumerate(keep_rays):
            zs = keep_zs[idx]
            if dot(m, ray) == 0:
                zs |= bit
            zero_sets.append(zs)
        for zs in new_zs:
            zero_sets.append(zs | bit)
        processed.append(i)
    return rays


def vertex_enumeration(h: HRep) -> VRep:
    """Exact vertex list of a bounded nonempty H-represented polytope.

    Raises ``EmptyError`` / ``UnboundedError`` when the preconditions fail
    (boundedness is verified with two LPs per coordinate direction).  Every
    returned vertex is re-verified extremal via the active-constraint rank
    test before the canonical VRep is built.
    """
    _check_bounded_nonempty(h)
    d = h.ambient_dim

    hom_eqs = [tuple(n) + (-o,) for n, o in h.equalities]
    if hom_eqs:
        n_basis = null_space(hom_eqs, d + 1)
    else:
        n_basis = [
            tuple(ONE if j == i else ZERO for j in range(d + 1))
            for i in range(d + 1)
        ]
    n_cols = len(n_basis)

    hom_ineqs = [tuple(n) + (-o,) for n, o in h.inequalities]
    hom_ineqs.append(tuple(ZERO for _ in range(d)) + (-ONE,))  # t >= 0

    reduced_rows = []
    for row in hom_ineqs:
        reduced = tuple(dot(row, col) for col in n_basis)
        if not is_zero(reduced):
            reduced_rows.append(reduced)

    rays_reduced = _dd_extreme_rays(reduced_rows, n_cols)

    vertices = []
    for zray in rays_reduced:
        y = [ZERO] * (d + 1)
        for coeff, col in zip(zray, n_basis):
            for j in range(d + 1):
                y[j] += coeff * col[j]
        t = y[d]
        if t == 0:
            raise UnboundedError("recession ray found despite boundedness check")
        if t < 0:
            y = [-val for val in y]
            t = -t
        vertices.append(tuple(val / t for val in y[:d]))

    result = VRep.make(d, vertices)
    for v in result.vertices:
        if not _is_extreme_in(h, v):
            raise InputError("double description produced a non-extreme point")
    return result


def _is_extreme_in(h: HRep, v: Vector) -> bool:
    if not h.contains(v):
        return False
    active = [h.inequalities[i][0] for i in h.active_inequalities(v)]
    active += [n for n, _ in h.equalities]
    return rank(active) == h.ambient_dim


# ---------------------------------------------------------------------------
# Facet enumeration via the polar dual
# ---------------------------------------------------------------------------


def facet_enumeration(v: VRep) -> HRep:
    """Irredundant H-representation of conv(v.vertices).

    Within the affine hull the facets are found as vertices of the polar
    dual taken around the vertex centroid; the affine hull itself is
    returned as an exact equality system.  Round trip holds exactly:
    ``vertex_enumeration(facet_enumeration(v)) == v``.
    """
    if not v.vertices:
        raise InputError("facet enumeration of an empty vertex list")
    d = v.ambient_dim
    verts = list(v.vertices)
    base = verts[0]
    diffs = [vsub(p, base) for p in verts[1:]]

    hull_normals = null_space(diffs, d) if diffs else null_space([], d)
    equalities = [
        _canonical_equality(n, dot(n, base)) for n in hull_normals
    ]
    equalities.sort()

    k = d - len(hull_normals)
    if k == 0:
        return HRep(ambient_dim=d, inequalities=(), equalities=tuple(equalities))

    # Affinely independent subset: base + k vertices with independent diffs.
    chosen: list[Vector] = []
    for p in verts[1:]:
        candidate = vsub(p, base)
        if rank(chosen + [candidate]) > len(chosen):
            chosen.append(candidate)
            if len(chosen) == k:
                break
    bmat_cols = chosen  # each a length-d vector; B = column matrix
    pivot_rows = _independent_rows(bmat_cols, d, k)


    b_sub = tuple(
        tuple(bmat_cols[c][r] for c in range(k)) for r in pivot_rows
    )
    b_sub_inv = inverse(b_sub)
    assert b_sub_inv is not None

    def to_reduced(x: Vector) -> Vector:
        rel = tuple(x[r] - base[r] for r in pivot_rows)
        return tuple(dot(row, rel) for row in b_sub_inv)

    reduced = [to_reduced(p) for p in verts]
    n = len(reduced)
    centroid = tuple(
        sum((p[j] for p in reduced), ZERO) / n for j in range(k)
    )
    shifted = [vsub(p, centroid) for p in reduced]

    dual_h = HRep.make(k, [(u, ONE) for u in shifted], [])
    dual_vertices = vertex_enumeration(dual_h).vertices

    inequalities = []
    binv_t = tuple(tuple(b_sub_inv[r][c] for r in range(k)) for c in range(k))
    for y in dual_vertices:
        # y.(t - centroid) <= 1 with t = B_sub^{-1} (x_R - base_R).
        coeff_reduced = tuple(dot(row, y) for row in binv_t)
        normal = [ZERO] * d
        for pos, r in enumerate(pivot_rows):
            normal[r] = coeff_reduced[pos]
        offset = ONE + dot(y, centroid) + dot(tuple(normal), base)
        inequalities.append(
            _canonical_inequality(*_reduce_mod_equalities(tuple(normal), offset, equalities))
        )
    inequalities = sorted(set(inequalities))
    return HRep(
        ambient_dim=d,
        inequalities=tuple(inequalities),
        equalities=tuple(equalities),
    )


def _independent_rows(cols: list[Vector], d: int, k: int) -> list[int]:
    """First k row indices of the d x k column matrix with full rank."""
    rows = []
    picked = []
    for r in range(d):
        candidate = tuple(col[r] for col in cols)
        if rank(rows + [candidate]) > len(rows):
            rows.append(candidate)
            picked.append(r)
            if len(picked) == k:
                break
    return picked


def _reduce_mod_equalities(normal, offset, equalities):
    """Canonical representative of an inequality modulo the affine hull.

    Subtracts multiples of the (RREF-like) equality rows so the normal has
    zeros in the equality pivot columns; the geometric halfspace within the
    hull is unchanged.
    """
    normal = list(normal)
    for eq_normal, eq_offset in equalities:
        pivot = None
        for j, val in enumerate(eq_normal):
            if val != 0:
                pivot = j
                break
        if pivot is None:
            continue
        factor = normal[pivot] / eq_normal[pivot]
        if factor != 0:
            for j in range(len(normal)):
                normal[j] -= factor * eq_normal[j]
            offset -= factor * eq_offset
    return tuple(normal), offset


# ---------------------------------------------------------------------------
# Adjacency
# ---------------------------------------------------------------------------


def vertex_adjacency(v: VRep, h: HRep) -> tuple[tuple[int, ...], ...]:
    """Edge graph of the polytope, as a sorted neighbor tuple per vertex.

    Vertices i and j are adjacent iff the constraints active at both span a
    solution space of affine dimension exactly 1 (the segment's line).  The
    test is exact; it requires v and h to describe the same polytope.
    """
    if v.ambient_dim != h.ambient_dim:
        raise InputError("representation dimension mismatch")
    for x in v.vertices:
        if not h.contains(x):
            raise InputError("vertex %s violates the H-representation" % (x,))
    d = h.ambient_dim
    eq_normals = [n for n, _ in h.equalities]
    active_sets = [set(h.active_inequalities(x)) for x in v.vertices]
    n = len(v.vertices)
    neighbors: list[list[int]] = [[] for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            common = active_sets[i] & active_sets[j]
            normals = [h.inequalities[c][0] for c in sorted(common)] + eq_normals
            if rank(normals) == d - 1:
                neighbors[i].append(j)
                neighbors[j].append(i)
    return tuple(tuple(sorted(ns)) for ns in neighbors)


def adjacency_edges(adj) -> tuple[tuple[int, int], ...]:
    """Edge list {(i, j) : i < j}, sorted, from a neighbor-list graph."""
    edges = set()
    for i, ns in enumerate(adj):
        for j in ns:
            edges.add((min(i, j), max(i, j)))
    return tuple(sorted(edges))
