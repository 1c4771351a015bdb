"""Command-line front end: every analysis as a subcommand with JSON output.

Exact quantities are printed as "n/d" strings; the bloch and quantum
subcommands are flagged ``"inexact": true``.  Input errors exit with code 2
and a machine-readable error object on standard output.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction

import numpy as np

from . import bloch as bloch_mod
from . import serialize
from .boxworld import (
    LOCAL_DETERMINISTIC,
    PR_BOX,
    all_chsh_variants,
    build_ns_hrep,
    chsh_max,
    chsh_max_float,
    chsh_objective,
    chsh_value,
    classify_vertex,
    make_boxworld2,
    quantum_chsh_table,
    table_from_vector,
)
from .errors import GptlabError, InputError
from .postulates import REGISTERED_CONFIGS, run_report
from .ratgeo import (
    MAX,
    adjacency_edges,
    parse_rational,
    solve_lp,
    vertex_adjacency,
)
from .spaces import decompose_state, make_ball3, make_classical, make_gbit
from .symmetry import affine_automorphisms, check_continuous_reversibility, orbits


class _Parser(argparse.ArgumentParser):
    """argparse variant that reports errors as JSON with exit code 2."""

    def error(self, message):
        _fail("usage", message)


def _fail(kind: str, message: str):
    print(serialize.dumps({"error": {"type": kind, "message": message}}))
    raise SystemExit(2)


def resolve_space(name: str):
    """Built-in registry plus JSON files for custom spaces."""
    if name == "gbit":
        return make_gbit()
    if name == "boxworld2":
        return make_boxworld2()
    if name == "ball3":
        return make_ball3()
    if name.startswith("classical-"):
        try:
            n = int(name.split("-", 1)[1])
        except ValueError:
            raise InputError("malformed classical space name %r" % name)
        return make_classical(n)
    try:
        with open(name) as fh:
            return serialize.space_from_json(json.load(fh))
    except FileNotFoundError:
        raise InputError(
            "unknown space %r (registered: gbit, classical-N, boxworld2, "
            "ball3, or a JSON file path)" % name
        )
    except json.JSONDecodeError as err:
        raise InputError("space file %r is not valid JSON: %s" % (name, err))


def load_table(path: str):
    try:
        with open(path) as fh:
            return serialize.table_from_json(json.load(fh))
    except FileNotFoundError:
        raise InputError("table file %r not found" % path)
    except json.JSONDecodeError as err:
        raise InputError("table file %r is not valid JSON: %s" % (path, err))


def parse_state(text: str):
    try:
        return tuple(parse_rational(part) for part in text.split(","))
    except ValueError as err:
        raise InputError("malformed state %r: %s" % (text, err))


def _classification_labels(space):
    return [classify_vertex(table_from_vector(v)).tag for v in space.vertices]


def cmd_build(args):
    return serialize.space_to_json(resolve_space(args.space))


def cmd_vertices(args):
    space = resolve_space(args.space)
    space.require_polytopal()
    return serialize.vrep_to_json(space.v)


def cmd_adjacency(args):
    space = resolve_space(args.space)
    space.require_polytopal()
    adj = vertex_adjacency(space.v, space.h)
    if not args.summary:
        return serialize.graph_to_json(adjacency_edges(adj))
    degrees = sorted(len(row) for row in adj)
    summary = {
        "degree_histogram": {
            str(d): degrees.count(d) for d in sorted(set(degrees))
        }
    }
    if space.label == "boxworld2":
        tags = _classification_labels(space)
        local = [i for i, t in enumerate(tags) if t == LOCAL_DETERMINISTIC]
        pr = [i for i, t in enumerate(tags) if t == PR_BOX]
        local_deg = {len(adj[i]) for i in local}
        pr_deg = {len(adj[i]) for i in pr}
        l2l = {sum(1 for j in adj[i] if tags[j] == LOCAL_DETERMINISTIC) for i in local}
        l2p = {sum(1 for j in adj[i] if tags[j] == PR_BOX) for i in local}
        summary.update(
            {
                "local_degree": local_deg.pop() if len(local_deg) == 1 else None,
                "local_to_local": l2l.pop() if len(l2l) == 1 else None,
                "local_to_pr": l2p.pop() if len(l2p) == 1 else None,
                "pr_degree": pr_deg.pop() if len(pr_deg) == 1 else None,
            }
        )
    return summary


def cmd_classify(args):
    if args.table:
        cls = classify_vertex(load_table(args.table))
        return {"tag": cls.tag, "detail": list(cls.detail) if isinstance(cls.detail, tuple) else cls.detail}
    space = resolve_space(args.space)
    space.require_polytopal()
    tags = _classification_labels(space)
    return {
        "classes": tags,
        "counts": {
            LOCAL_DETERMINISTIC: tags.count(LOCAL_DETERMINISTIC),
            PR_BOX: tags.count(PR_BOX),
        },
    }


def cmd_symmetries(args):
    space = resolve_space(args.space)
    group = affine_automorphisms(space)
    return {
        "order": group.order,
        "generator_count": len(group.generators),
        "elements": serialize.symmetry_group_to_json(group),
    }


def cmd_orbits(args):
    space = resolve_space(args.space)
    group = affine_automorphisms(space)
    partition = orbits(group, space)
    return {"classes": [list(cls) for cls in partition.classes]}


def cmd_chsh(args):
    if args.angles:
        try:
            angles = [float(part) for part in args.angles.split(",")]
        except ValueError as err:
            raise InputError("malformed angles %r: %s" % (args.angles, err))
        if len(angles) != 4:
            raise InputError("need exactly 4 angles (thetaA0,thetaA1,thetaB0,thetaB1)")
        table = quantum_chsh_table(*angles)
        data = serialize.float_table_to_json(table)
        data["chsh_max"] = chsh_max_float(table)
        return data
    if not args.table:
        raise InputError("chsh needs --table FILE or --angles LIST")
    t = load_table(args.table)
    values = {
        "".join("+" if s > 0 else "-" for s in variant.signs): serialize.rational_to_json(
            chsh_value(t, variant)
        )
        for variant in all_chsh_variants()
    }
    return {"chsh_max": serialize.rational_to_json(chsh_max(t)), "values": values}


def cmd_decompose(args):
    space = resolve_space(args.space)
    state = parse_state(args.state)
    decs = decompose_state(state, space)
    return {
        "state": serialize.vector_to_json(state),
        "decompositions": [
            {
                "support": list(dec.support),
                "weights": serialize.vector_to_json(dec.weights),
            }
            for dec in decs
        ],
    }


def cmd_bloch(args):
    if args.unitary:
        try:
            with open(args.unitary) as fh:
                raw = json.load(fh)
            u = np.array(
                [[complex(re, im) for re, im in row] for row in raw], dtype=complex
            )
        except FileNotFoundError:
            raise InputError("unitary file %r not found" % args.unitary)
        except (json.JSONDecodeError, TypeError, ValueError) as err:
            raise InputError("malformed unitary file: %s" % err)
        rotation = bloch_mod.unitary_to_rotation(u)
        return {"rotation": rotation.tolist(), "inexact": True}
    if not args.vector:
        raise InputError("bloch needs --vector X,Y,Z or --unitary FILE")
    try:
        a = tuple(float(part) for part in args.vector.split(","))
    except ValueError as err:
        raise InputError("malformed Bloch vector %r: %s" % (args.vector, err))
    rho = bloch_mod.bloch_density(a)
    hi, lo = bloch_mod.bloch_eigenvalues(a)
    return {
        "density": serialize.complex_matrix_to_json(rho),
        "eigenvalues": [hi, lo],
        "inexact": True,
    }


def cmd_postulates(args):
    return serialize.report_to_json(run_report(args.config))


def cmd_report(args):
    return build_full_report()


def build_full_report() -> dict:
    """One artifact bundling every headline computation of the workbench."""
    bw = make_boxworld2()
    gbit = make_gbit()
    tags = _classification_labels(bw)
    adj = vertex_adjacency(bw.v, bw.h)
    local = [i for i, t in enumerate(tags) if t == LOCAL_DETERMINISTIC]
    pr = [i for i, t in enumerate(tags) if t == PR_BOX]

    group = affine_automorphisms(bw)
    partition = orbits(group, bw)
    orbit_tags = [sorted({tags[i] for i in cls}) for cls in partition.classes]

    gbit_group = affine_automorphisms(gbit)
    gbit_orbits = orbits(gbit_group, gbit)

    ns = build_ns_hrep()
    lp_maxima = {
        "".join("+" if s > 0 else "-" for s in variant.signs): serialize.rational_to_json(
            solve_lp(chsh_objective(variant), MAX, ns).optimum
        )
        for variant in all_chsh_variants()
    }
    chsh_by_class = {
        "pr_box": sorted(
            {serialize.rational_to_json(chsh_max(table_from_vector(bw.vertices[i]))) for i in pr}
        ),
        "local_deterministic": sorted(
            {serialize.rational_to_json(chsh_max(table_from_vector(bw.vertices[i]))) for i in local}
        ),
    }
    tsirelson = chsh_max_float(
        quantum_chsh_table(0.0, math.pi / 2, math.pi / 4, -math.pi / 4)
    )

    from .ratgeo import affine_dimension

    center = (Fraction(1, 2), Fraction(1, 2))
    decs = decompose_state(center, gbit)

    ball_continuity = check_continuous_reversibility(make_ball3())

    return {
        "no_signalling_polytope": {
            "vertex_count": len(bw.vertices),
            "affine_dimension": affine_dimension(bw.vertices),
            "local_vertices": len(local),
            "pr_vertices": len(pr),
            "local_degree": sorted({len(adj[i]) for i in local}),
            "local_to_local": sorted(
                {sum(1 for j in adj[i] if tags[j] == LOCAL_DETERMINISTIC) for i in local}
            ),
            "local_to_pr": sorted(
                {sum(1 for j in adj[i] if tags[j] == PR_BOX) for i in local}
            ),
            "pr_degree": sorted({len(adj[i]) for i in pr}),
            "pr_neighbors_all_local": all(
                tags[j] == LOCAL_DETERMINISTIC for i in pr for j in adj[i]
            ),
        },
        "symmetries": {
            "boxworld2_order": group.order,
            "orbit_sizes": [len(cls) for cls in partition.classes],
            "orbit_tags": orbit_tags,
            "orbits_mix_classes": any(len(ts) > 1 for ts in orbit_tags),
            "gbit_order": gbit_group.order,
            "gbit_vertex_transitive": len(gbit_orbits.classes) == 1,
        },
        "chsh": {
            "lp_maxima_over_ns": lp_maxima,
            "max_by_vertex_class": chsh_by_class,
            "quantum_standard_angles": tsirelson,
            "quantum_standard_angles_inexact": True,
        },
        "decompositions": {
            "gbit_center": [
                {
                    "support": list(dec.support),
                    "weights": serialize.vector_to_json(dec.weights),
                }
                for dec in decs
            ],
            "simplex_interior_count": len(
                decompose_state((Fraction(1, 4),) * 4, make_classical(4))
            ),
        },
        "continuous_reversibility": {
            "gbit": check_continuous_reversibility(gbit).status,
            "ball3": ball_continuity.status,
            "ball3_endpoint_error": ball_continuity.detail["endpoint_error"],
        },
        "postulates": {
            config: serialize.report_to_json(run_report(config))
            for config in ("boxworld2", "classical2", "ball3")
        },
    }


def make_parser() -> _Parser:
    parser = _Parser(prog="gptlab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, **flags):
        p = sub.add_parser(name)
        for flag, kwargs in flags.items():
            p.add_argument("--" + flag, **kwargs)
        p.add_argument("--out", help="also write the JSON output to this path")
        p.add_argument("--format", choices=["json"], default="json")
        p.set_defaults(func=func)
        return p

    space_arg = {"space": dict(required=True, help="registered name or JSON path")}
    add("build", cmd_build, **space_arg)
    add("vertices", cmd_vertices, **space_arg)
    add(
        "adjacency",
        cmd_adjacency,
        space=dict(required=True),
        summary=dict(action="store_true"),
    )
    add("classify", cmd_classify, space=dict(), table=dict())
    add("symmetries", cmd_symmetries, **space_arg)
    add("orbits", cmd_orbits, **space_arg)
    add("chsh", cmd_chsh, table=dict(), angles=dict())
    add(
        "decompose",
        cmd_decompose,
        space=dict(required=True),
        state=dict(required=True, help="comma-separated rationals, e.g. 1/2,1/2"),
    )
    add("bloch", cmd_bloch, vector=dict(), unitary=dict())
    add(
        "postulates",
        cmd_postulates,
        config=dict(required=True, help="one of: " + ", ".join(REGISTERED_CONFIGS)),
    )
    add("report", cmd_report)
    return parser


def run(argv) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
        result = args.func(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    except GptlabError as err:
        print(
            serialize.dumps(
                {"error": {"type": type(err).__name__, "message": str(err)}}
            )
        )
        return 2
    text = serialize.dumps(result)
    print(text)
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    return 0


def main():
    raise SystemExit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
