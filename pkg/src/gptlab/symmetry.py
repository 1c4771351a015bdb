"""Affine symmetry groups of polytopal state spaces.

The reversible transformations of a GPT are the affine bijections of its
state space onto itself.  For a polytope these permute the vertex set, so
the full group is found by a backtracking search over vertex permutations:
images are branched only for an affinely independent prefix (everything
else is forced by exact affine dependencies), candidates are pruned by
adjacency and facet-incidence invariants, and every surviving permutation
is realized as an explicit affine map and re-verified on all vertices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .bloch import rotation_path
from .errors import InputError, UnsupportedError
from .ratgeo import vertex_adjacency
from .ratgeo.linalg import (
    ONE,
    Vector,
    inverse,
    mat_mul,
    mat_vec,
    null_space,
    rank,
    solve,
    vsub,
)
from .spaces import AffineMap, BALL3, StateSpace

PASS = "pass"
FAIL = "fail"
INTERACTING = "interacting"
NON_INTERACTING = "non_interacting"
FINITE_SYMMETRY_GROUP = "FiniteSymmetryGroup"

MAX_VERTICES = 32


@dataclass(frozen=True)
class SymmetryGroup:
    """The complete group of affine self-bijections of a polytope.

    Elements are canonically sorted by their induced vertex permutation;
    ``generators`` is a (greedy minimal) generating sublist.
    """

    elements: tuple[AffineMap, ...]
    vertex_permutations: tuple[tuple[int, ...], ...]
    generators: tuple[AffineMap, ...]
    generator_permutations: tuple[tuple[int, ...], ...]

    @property
    def order(self) -> int:
        return len(self.elements)


@dataclass(frozen=True)
class OrbitPartition:
    """Partition of vertex indices into group orbits (canonically sorted)."""

    classes: tuple[tuple[int, ...], ...]

    def class_of(self, index: int) -> tuple[int, ...]:
        for cls in self.classes:
            if index in cls:
                return cls
        raise InputError("vertex index %d not covered by the partition" % index)


@lru_cache(maxsize=32)
def affine_automorphisms(space: StateSpace) -> SymmetryGroup:
    """Exact, complete affine symmetry group of a polytopal state space."""
    if space.kind == BALL3:
        raise UnsupportedError(
            "the ball has a continuous symmetry group; handled analytically"
        )
    space.require_polytopal()
    verts = space.vertices
    n = len(verts)
    if n > MAX_VERTICES:
        raise InputError(
            "symmetry search supports at most %d vertices, got %d"
            % (MAX_VERTICES, n)
        )
    d = space.dim

    adjacency = vertex_adjacency(space.v, space.h)
    adj_sets = [frozenset(row) for row in adjacency]
    incidence = [
        frozenset(space.h.active_inequalities(v)) for v in verts
    ]
    common = [
        [len(incidence[i] & incidence[j]) for j in range(n)] for i in range(n)
    ]
    profile = []
    for i in range(n):
        row = sorted(
            (common[i][j], j in adj_sets[i], len(incidence[j]))
            for j in range(n)
            if j != i
        )
        profile.append((len(adj_sets[i]), len(incidence[i]), tuple(row)))

    lifted = [tuple(v) + (ONE,) for v in verts]
    vertex_index = {lift: i for i, lift in enumerate(lifted)}

    permutations: list[tuple[int, ...]] = []

    assigned_src: list[int] = []
    assigned_dst: list[int] = []
    used = [False] * n
    image = [-1] * n
    # Forward-elimination echelon over the assigned lifted vertices; each row
    # keeps the combination coefficients over the assigned list, so affine
    # dependencies (and hence forced images) are read off incrementally.
    echelon: list[tuple[list[Fraction], int, list[Fraction]]] = []

    def reduce_lifted(vector):
        residual = list(vector)
        coeffs = [Fraction(0)] * len(assigned_src)
        for row, pivot, row_coeffs in echelon:
            factor = residual[pivot] / row[pivot]
            if factor:
                for k in range(d + 1):
                    residual[k] -= factor * row[k]
                for idx, c in enumerate(row_coeffs):
                    coeffs[idx] += factor * c
        return residual, coeffs

    def compatible(u: int, w: int) -> bool:
        if profile[u] != profile[w]:
            return False
        for uu, ww in zip(assigned_src, assigned_dst):
            if (uu in adj_sets[u]) != (ww in adj_sets[w]):
                return False
            if common[u][uu] != common[w][ww]:
                return False
        return True

    def push(u: int, w: int) -> bool:
        """Assign u -> w; returns whether an echelon row was added."""
        residual, coeffs = reduce_lifted(lifted[u])
        pushed = False
        pivot = next((k for k, val in enumerate(residual) if val != 0), None)
        if pivot is not None:
            row_coeffs = [-c for c in coeffs] + [ONE]
            echelon.append((residual, pivot, row_coeffs))
            pushed = True
        assigned_src.append(u)
        assigned_dst.append(w)
        used[w] = True
        image[u] = w
        return pushed

    def pop(u: int, w: int, pushed: bool):
        if pushed:
            echelon.pop()
        assigned_src.pop()
        assigned_dst.pop()
        used[w] = False
        image[u] = -1

    def forced_candidate():
        for u in range(n):
            if image[u] >= 0:
                continue
            residual, coeffs = reduce_lifted(lifted[u])
            if all(val == 0 for val in residual):
                return u, coeffs
        return None

    def descend():
        if len(assigned_src) == n:
            permutations.append(tuple(image))
            return
        forced = forced_candidate() if assigned_src else None
        if forced is not None:
            u, coeffs = forced
            target = [Fraction(0)] * (d + 1)
            for c, w in zip(coeffs, assigned_dst):
                if c:
                    for r in range(d + 1):
                        target[r] += c * lifted[w][r]
            w = vertex_index.get(tuple(target))
            if w is None or used[w] or not compatible(u, w):
                return
            pushed = push(u, w)
            descend()
            pop(u, w, pushed)
            return
        u = next(i for i in range(n) if image[i] < 0)
        for w in range(n):
            if used[w] or not compatible(u, w):
                continue
            pushed = push(u, w)
            descend()
            pop(u, w, pushed)

    descend()
    permutations.sort()

    realizer = _AffineRealizer(verts, d)
    elements = []
    for perm in permutations:
        el = realizer.realize(perm)
        assert el is not None, "search produced an affinely unrealizable permutation"
        elements.append(el)
    elements = tuple(elements)

    gen_perms = _greedy_generators(permutations, n)
    perm_pos = {perm: k for k, perm in enumerate(permutations)}
    generators = tuple(elements[perm_pos[p]] for p in gen_perms)
    return SymmetryGroup(
        elements=elements,
        vertex_permutations=tuple(permutations),
        generators=generators,
        generator_permutations=tuple(gen_perms),
    )


class _AffineRealizer:
    """Builds the canonical ambient affine map for a vertex permutation.

    On the affine hull the map is determined by the images of a fixed affine
    basis of vertices; on the orthogonal complement of the hull's direction
    space it acts as the identity, which makes the representative canonical.
    The permutation-independent linear algebra (basis choice, barycentric
    coordinates of every vertex, the inverse basis matrix) is precomputed.
    """

    def __init__(self, verts, d):
        self.verts = verts
        self.d = d
        base = 0
        basis_idx: list[int] = []
        diffs: list[Vector] = []
        for i in range(1, len(verts)):
            candidate = vsub(verts[i], verts[base])
            if rank(diffs + [candidate]) > len(diffs):
                basis_idx.append(i)
                diffs.append(candidate)
        self.base = base
        self.basis_idx = basis_idx
        self.diffs = diffs
        self.complement = null_space(diffs, d) if diffs else null_space([], d)
        columns = diffs + self.complement
        a_mat = tuple(tuple(col[r] for col in columns) for r in range(d))
        self.a_inv = inverse(a_mat)
        assert self.a_inv is not None
        # Barycentric coordinates of every vertex over [base] + basis_idx.
        lifted_basis = [
            tuple(verts[i]) + (ONE,) for i in [base] + basis_idx
        ]
        rows = tuple(
            tuple(col[r] for col in lifted_basis) for r in range(d + 1)
        )
        self.barycentric = [
            solve(rows, tuple(v) + (ONE,)) for v in verts
        ]
        assert all(c is not None for c in self.barycentric)

    def realize(self, perm) -> AffineMap | None:
        """The affine map for perm, or None if perm is not affinely consistent.

        Consistency is verified on every vertex: the barycentric expansion
        of each vertex over the affine basis must be preserved by the
        permutation.
        """
        verts = self.verts
        d = self.d
        basis_points = [self.base] + self.basis_idx
        image_lifted = [
            tuple(verts[perm[i]]) + (ONE,) for i in basis_points
        ]
        for u in range(len(verts)):
            coeffs = self.barycentric[u]
            expected = tuple(verts[perm[u]]) + (ONE,)
            for r in range(d + 1):
                acc = Fraction(0)
                for c, img in zip(coeffs, image_lifted):
                    if c:
                        acc += c * img[r]
                if acc != expected[r]:
                    return None
        image_diffs = [
            vsub(verts[perm[i]], verts[perm[self.base]]) for i in self.basis_idx
        ]
        image_columns = image_diffs + self.complement
        b_mat = tuple(tuple(col[r] for col in image_columns) for r in range(d))
        matrix = mat_mul(b_mat, self.a_inv)
        shift = vsub(verts[perm[self.base]], mat_vec(matrix, verts[self.base]))
        candidate = AffineMap(matrix=matrix, shift=shift)
        for i in basis_points:
            if candidate.apply(verts[i]) != verts[perm[i]]:
                return None
        return candidate


def _compose_perm(p, q):
    """p after q."""
    return tuple(p[q[i]] for i in range(len(q)))


def _closure(gens, n):
    identity = tuple(range(n))
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = _compose_perm(g, p)
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return seen

def _greedy_generators(perms, n):
    gens: list[tuple[int, ...]] = []
    generated = _closure(gens, n)
    for p in perms:
        if p not in generated:
            gens.append(p)
            generated = _closure(gens, n)
    return gens


def orbits(group: SymmetryGroup, space: StateSpace) -> OrbitPartition:
    """Orbit partition of the vertex indices under the group action."""
    space.require_polytopal()
    n = len(space.vertices)
    if not group.vertex_permutations or any(
        len(p) != n for p in group.vertex_permutations
    ):
        raise InputError("group permutations do not match the vertex count")
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for perm in group.vertex_permutations:
        for i, j in enumerate(perm):
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
    classes: dict[int, list[int]] = {}
    for i in range(n):
        classes.setdefault(find(i), []).append(i)
    ordered = tuple(
        tuple(sorted(cls)) for _, cls in sorted(classes.items())
    )
    return OrbitPartition(classes=ordered)


@dataclass(frozen=True)
class ReversibilityResult:
    status: str
    witness: tuple[int, int] | None = None  # vertex pair in distinct orbits


def check_reversibility(space: StateSpace) -> ReversibilityResult:
    """Pass iff the symmetry group acts transitively on pure states."""
    group = affine_automorphisms(space)
    partition = orbits(group, space)
    if len(partition.classes) == 1:
        return ReversibilityResult(status=PASS)
    first, second = partition.classes[0][0], partition.classes[1][0]
    return ReversibilityResult(status=FAIL, witness=(first, second))


@dataclass(frozen=True)
class ContinuityResult:
    status: str
    reason: str | None = None
    detail: dict | None = None
    path_constructor: object | None = None


def check_continuous_reversibility(space: StateSpace) -> ContinuityResult:
    """Decide Continuous Reversibility for a registered state space.

    Polytopal spaces with at least two pure states fail outright: their
    reversible transformations form a finite group (a subgroup of the
    vertex permutations), and a continuous family G(t) into a finite set of
    affine maps must be constant, so G(1) = G(0) = identity can move no
    pure state.  The ball passes: any two unit Bloch vectors are joined by
    a one-parameter rotation family, verified here at 100 sample points.
    """
    if space.kind == BALL3:
        checks = [
            ((0.0, 0.0, 1.0), (1.0, 0.0, 0.0)),
            ((0.0, 1.0, 0.0), (0.0, -1.0, 0.0)),
            ((1.0, 0.0, 0.0), (1.0, 0.0, 0.0)),
        ]
        worst_endpoint = 0.0
        worst_step = 0.0
        for a, b in checks:
            path = rotation_path(a, b)
            start_err = float(np.max(np.abs(path(0.0) - np.eye(3))))
            end_err = float(np.linalg.norm(path(1.0) @ np.array(a) - np.array(b)))
            worst_endpoint = max(worst_endpoint, start_err, end_err)
            samples = [path(t / 100.0) for t in range(101)]
            for prev, cur in zip(samples, samples[1:]):
                worst_step = max(worst_step, float(np.max(np.abs(cur - prev))))
        if worst_endpoint > 1e-9:
            return ContinuityResult(
                status=FAIL,
                reason="RotationPathBroken",
                detail={"endpoint_error": worst_endpoint},
            )
        return ContinuityResult(
            status=PASS,
            detail={
                "endpoint_error": worst_endpoint,
                "max_sample_step": worst_step,
                "samples": 101,
            },
            path_constructor=rotation_path,
        )
    space.require_polytopal()
    n = len(space.vertices)
    if n >= 2:
        return ContinuityResult(
            status=FAIL,
            reason=FINITE_SYMMETRY_GROUP,
            detail={"vertex_count": n},
        )
    return ContinuityResult(
        status=PASS,
        detail={"vertex_count": n, "note": "single pure state; constant path"},
        path_constructor=lambda a, b: (lambda t: np.eye(space.dim)),
    )


@dataclass(frozen=True)
class InteractionResult:
    status: str
    witness: tuple[int, int, int] | None = None  # (element, vertex, image)


def check_interaction(
    space_ab: StateSpace,
    product_vertices,
    group: SymmetryGroup | None = None,
) -> InteractionResult:
    """Decide whether any reversible transformation leaves the locally
    preparable vertex set (at the vertex level).

    ``product_vertices`` indexes the locally preparable vertices of the
    composite; the caller computes it (for boxworld, the image of the pure
    product preparations).
    """
    space_ab.require_polytopal()
    n = len(space_ab.vertices)
    product_set = frozenset(product_vertices or ())
    if not product_set:
        raise InputError(
            "no locally preparable vertex set given: not a composite space"
        )
    if any(not 0 <= i < n for i in product_set):
        raise InputError("product vertex index out of range")
    if group is None:
        group = affine_automorphisms(space_ab)
    for k, perm in enumerate(group.vertex_permutations):
        for i in sorted(product_set):
            if perm[i] not in product_set:
                return InteractionResult(status=INTERACTING, witness=(k, i, perm[i]))
    return InteractionResult(status=NON_INTERACTING)
