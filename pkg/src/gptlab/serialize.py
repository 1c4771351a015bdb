"""JSON serialization for all exact and floating-point artifacts.

Every rational value is rendered as an ``"n/d"`` string (never a float), so
files round-trip bit for bit.  Floating-point payloads (Bloch / quantum
tables) are kept in separate fields and flagged ``"inexact": true``.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import InputError
from .ratgeo import HRep, VRep, format_rational, parse_rational
from .spaces import AffineMap, BALL3, Effect, Measurement, POLYTOPAL, StateSpace


def rational_to_json(value: Fraction) -> str:
    return format_rational(value)


def rational_from_json(text) -> Fraction:
    if isinstance(text, str):
        return parse_rational(text)
    if isinstance(text, int):
        return Fraction(text)
    raise InputError("exact rationals must be 'n/d' strings, got %r" % (text,))


def vector_to_json(v) -> list:
    return [rational_to_json(x) for x in v]


def vector_from_json(data) -> tuple:
    return tuple(rational_from_json(x) for x in data)


def hrep_to_json(h: HRep) -> dict:
    return {
        "dim": h.ambient_dim,
        "ineqs": [[vector_to_json(n), rational_to_json(o)] for n, o in h.inequalities],
        "eqs": [[vector_to_json(n), rational_to_json(o)] for n, o in h.equalities],
    }


def hrep_from_json(data) -> HRep:
    try:
        dim = int(data["dim"])
        ineqs = [
            (vector_from_json(n), rational_from_json(o)) for n, o in data["ineqs"]
        ]
        eqs = [(vector_from_json(n), rational_from_json(o)) for n, o in data["eqs"]]
    except (KeyError, TypeError, ValueError) as err:
        raise InputError("malformed H-representation: %s" % err) from err
    return HRep.make(dim, ineqs, eqs)


def vrep_to_json(v: VRep) -> dict:
    return {
        "dim": v.ambient_dim,
        "vertices": [vector_to_json(x) for x in v.vertices],
    }


def vrep_from_json(data) -> VRep:
    try:
        dim = int(data["dim"])
        vertices = [vector_from_json(x) for x in data["vertices"]]
    except (KeyError, TypeError, ValueError) as err:
        raise InputError("malformed V-representation: %s" % err) from err
    return VRep.make(dim, vertices)


def graph_to_json(edges) -> dict:
    normalized = sorted({(min(i, j), max(i, j)) for i, j in edges})
    return {"edges": [list(e) for e in normalized]}


def table_to_json(t) -> dict:
    return {"p": vector_to_json(t.p)}


def table_from_json(data):
    from .boxworld import ProbabilityTable

    try:
        entries = vector_from_json(data["p"])
    except (KeyError, TypeError) as err:
        raise InputError("malformed probability table: %s" % err) from err
    return ProbabilityTable(p=entries)


def float_table_to_json(p) -> dict:
    return {"p_float": [float(x) for x in p], "inexact": True}


def space_to_json(space: StateSpace) -> dict:
    data = {"kind": space.kind, "label": space.label}
    if space.kind == POLYTOPAL:
        data["vrep"] = vrep_to_json(space.v)
        data["hrep"] = hrep_to_json(space.h)
    return data


def space_from_json(data) -> StateSpace:
    try:
        kind = data["kind"]
        label = data["label"]
    except (KeyError, TypeError) as err:
        raise InputError("malformed state space: %s" % err) from err
    if kind == BALL3:
        return StateSpace(kind=BALL3, label=label)
    if kind != POLYTOPAL:
        raise InputError("unknown state space kind %r" % (kind,))
    v = vrep_from_json(data["vrep"])
    h = hrep_from_json(data["hrep"])
    return StateSpace(kind=POLYTOPAL, label=label, v=v, h=h)


def effect_to_json(e: Effect) -> dict:
    return {
        "linear": vector_to_json(e.linear),
        "constant": rational_to_json(e.constant),
    }


def effect_from_json(data) -> Effect:
    return Effect(
        linear=vector_from_json(data["linear"]),
        constant=rational_from_json(data["constant"]),
    )


def measurement_to_json(m: Measurement) -> dict:
    return {"effects": [effect_to_json(e) for e in m.effects]}


def affine_map_to_json(t: AffineMap) -> dict:
    return {
        "matrix": [vector_to_json(row) for row in t.matrix],
        "shift": vector_to_json(t.shift),
    }


def symmetry_group_to_json(group) -> list:
    return [
        {
            "matrix": [vector_to_json(row) for row in el.matrix],
            "shift": vector_to_json(el.shift),
            "perm": list(perm),
        }
        for el, perm in zip(group.elements, group.vertex_permutations)
    ]


def complex_matrix_to_json(m) -> list:
    """Row-major [[re, im], ...] pairs for a complex matrix."""
    rows = []
    for row in m:
        rows.append([[float(z.real), float(z.imag)] for z in row])
    return rows


def report_to_json(report) -> dict:
    return {"subject": report.subject, "results": report.as_dict()}


def dumps(data) -> str:
    """Deterministic JSON rendering (fixed key order, stable separators)."""
    return json.dumps(data, indent=2, sort_keys=False)
