"""Command-line interface: batch access to covers, Laplacians,
arborescence polynomials, the ratio identity, vector fields, norms,
experiment harnesses, and a canned verification suite over built-in
instances.
"""

from __future__ import annotations

import argparse
import json
import sys

from .algebra import (
    Cyclotomic,
    FiniteGroup,
    ReducedGA,
    RingMatrix,
    det_fraction_free,
    det_group_algebra,
)
from .cover import build_cover, deck_group, is_regular_cover
from .errors import SchemaError, SearchSpaceTooLarge, VoltageKindMismatch
from .experiments import (
    count_euler_circuits,
    euler_ratio,
    expectation_check_exhaustive,
    positivity_scan,
    vf_tuple_report,
)
from .graph import GROUP_KIND, VoltageGraph, build_graph, parse_graph, serialize_graph
from .laplacian import (
    laplacian,
    restricted_voltage_laplacian,
    triangularize,
    voltage_laplacian,
)
from .poly import IntPoly, parse_poly
from .spanning import (
    arborescence_polynomial,
    enumerate_arborescences,
    invariance_report,
    ratio_report,
)
from .vecfield import enumerate_vector_fields, omega

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_FALSIFIED = 2


# -- built-in instances -------------------------------------------------------


def cyclic_triangle_instance() -> VoltageGraph:
    """Three vertices over Z/3Z: a loop at vertex 1 with voltage g, and a
    cycle structure whose arborescence data exercises every operation."""
    g3 = FiniteGroup.cyclic(3)
    return build_graph(
        ["1", "2", "3"],
        [
            (0, 0, "a", 1),
            (0, 1, "b", 0),
            (1, 2, "c", 2),
            (2, 0, "d", 2),
            (2, 1, "e", 0),
        ],
        group=g3,
        group_spec={"type": "cyclic", "order": 3},
    )


def permutation_triangle_instance() -> VoltageGraph:
    """The same underlying graph with raw 3-sheet permutation voltages;
    its cover is connected but not regular."""
    return build_graph(
        ["1", "2", "3"],
        [
            (0, 0, "a", (2, 1, 0)),
            (0, 1, "b", (1, 2, 0)),
            (1, 2, "c", (0, 1, 2)),
            (2, 0, "d", (0, 1, 2)),
            (2, 1, "e", (0, 2, 1)),
        ],
        sheets=3,
    )


def two_fold_counterexample_instance() -> VoltageGraph:
    """A loopless simple base with a regular 2-fold cover; one of the
    cover's arborescences is not a completed lift of a base arborescence."""
    g2 = FiniteGroup.cyclic(2)
    return build_graph(
        ["1", "2", "3"],
        [
            (0, 1, "p", 0),
            (1, 0, "q", 1),
            (2, 0, "r", 1),
            (0, 2, "s", 0),
            (1, 2, "t", 0),
        ],
        group=g2,
        group_spec={"type": "cyclic", "order": 2},
    )


BUILTIN_INSTANCES = {
    "cyclic-triangle": cyclic_triangle_instance,
    "permutation-triangle": permutation_triangle_instance,
    "two-fold-counterexample": two_fold_counterexample_instance,
}


# -- helpers ------------------------------------------------------------------


def _load_graph(args) -> VoltageGraph:
    if getattr(args, "builtin", None):
        return BUILTIN_INSTANCES[args.builtin]()
    if not getattr(args, "input", None):
        raise SchemaError("an --input file or --builtin instance is required")
    with open(args.input) as fh:
        return parse_graph(fh.read())


def _resolve_vertex(g: VoltageGraph, token: str) -> int:
    if token in g.labels:
        return g.labels.index(token)
    v = int(token)
    if not 0 <= v < g.n:
        raise SchemaError(f"vertex {token!r} not found")
    return v


def _emit(args, payload: dict):
    text = json.dumps(payload, indent=2, default=str)
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


# -- subcommands --------------------------------------------------------------


def _cmd_cover(args) -> int:
    g = _load_graph(args)
    c = build_cover(g)
    payload = {
        "base": serialize_graph(g),
        "vertices": [c.vertex_label(i, s) for s in range(c.k) for i in range(c.n)],
        "edges": [
            {
                "src": c.vertex_label(s % c.n, s // c.n),
                "dst": c.vertex_label(d % c.n, d // c.n),
                "weight": g.weights.name(w),
            }
            for s, d, w in c.lifted_edges()
        ],
        "projection": c.projection_table(),
    }
    try:
        payload["regular"] = is_regular_cover(c)
        payload["deck_group_order"] = len(deck_group(c))
    except SearchSpaceTooLarge:
        payload["regular"] = "unknown (search space too large)"
    _emit(args, payload)
    return EXIT_OK


def _matrix_payload(m: RingMatrix, names) -> list[list[str]]:
    return m.to_strings(names)


def _cmd_laplacian(args) -> int:
    g = _load_graph(args)
    names = g.weights
    payload: dict = {"base": _matrix_payload(laplacian(g), names)}
    which = args.which
    if which in ("voltage", "all") and g.kind == GROUP_KIND:
        payload["voltage"] = voltage_laplacian(g).to_strings(names)
    if which in ("restricted", "all"):
        m = restricted_voltage_laplacian(g)
        payload["restricted"] = m.to_strings(names)
        payload["restricted_determinant"] = det_fraction_free(m).to_string(names)
    if which in ("cover", "all"):
        payload["cover"] = laplacian(build_cover(g)).to_strings(names)
    if which in ("triangular", "all"):
        u, _, _ = triangularize(build_cover(g))
        payload["triangular"] = u.to_strings(names)
    _emit(args, payload)
    return EXIT_OK


def _cmd_arbor(args) -> int:
    g = _load_graph(args)
    root = _resolve_vertex(g, args.root)
    payload = {"root": g.labels[root]}
    if args.method in ("matrix-tree", "both"):
        payload["matrix_tree"] = arborescence_polynomial(g, root).to_string(g.weights)
    if args.method in ("brute-force", "both"):
        payload["brute_force"] = arborescence_polynomial(
            g, root, method="brute-force"
        ).to_string(g.weights)
        payload["arborescences"] = [
            [g.weights.name(g.edges[e].weight) for e in t.edges]
            for t in enumerate_arborescences(g, root)
        ]
    _emit(args, payload)
    return EXIT_OK


def _cmd_ratio(args) -> int:
    g = _load_graph(args)
    v = _resolve_vertex(g, args.vertex)
    rep = ratio_report(g, v)
    _emit(args, rep.to_dict(g.weights))
    return EXIT_OK if rep.theorem_holds else EXIT_FALSIFIED


def _cmd_invariance(args) -> int:
    g = _load_graph(args)
    rep = invariance_report(g)
    _emit(args, rep.to_dict(g.weights))
    if rep.strongly_connected and rep.simple and not rep.all_equal:
        return EXIT_FALSIFIED
    return EXIT_OK


def _cmd_vf(args) -> int:
    g = _load_graph(args)
    fields = enumerate_vector_fields(g)
    rows = []
    for vf in fields:
        row: dict = {
            "edges": [g.weights.name(g.edges[e].weight) for e in vf.edges],
            "weight": vf.weight(g).to_string(g.weights),
            "cycles": [
                [g.weights.name(g.edges[e].weight) for e in c] for c in vf.cycles
            ],
        }
        if g.kind == GROUP_KIND and g.group.is_abelian():
            row["cycle_voltages"] = list(vf.cycle_voltages(g))
        rows.append(row)
    payload: dict = {"count": len(fields), "vector_fields": rows}
    if g.kind == GROUP_KIND and g.group.is_abelian():
        payload["omega"] = omega(g).to_string(g.weights)
    _emit(args, payload)
    return EXIT_OK


def _cmd_norm(args) -> int:
    g = _load_graph(args)
    if g.kind != GROUP_KIND:
        raise SchemaError("norm needs group voltages over a prime cyclic group")
    det_ga = det_group_algebra(voltage_laplacian(g))
    x = Cyclotomic.from_reduced_ga(det_ga)
    norm = x.field_norm()
    det_restricted = det_fraction_free(restricted_voltage_laplacian(g))
    payload = {
        "determinant": det_ga.to_string(g.weights),
        "field_norm": norm.to_string(g.weights),
        "restricted_determinant": det_restricted.to_string(g.weights),
        "equal": norm == det_restricted,
    }
    _emit(args, payload)
    return EXIT_OK if payload["equal"] else EXIT_FALSIFIED


def _group_spec_from_flag(token: str) -> dict:
    if token.startswith("cyclic:"):
        return {"type": "cyclic", "order": int(token.split(":")[1])}
    if token.startswith("symmetric:"):
        return {"type": "symmetric", "degree": int(token.split(":")[1])}
    if token.startswith("permutation:"):
        return {"type": "permutation", "sheets": int(token.split(":")[1])}
    raise SchemaError(f"bad group spec {token!r}")


def _cmd_experiment(args) -> int:
    if args.kind == "positivity":
        config: dict = {"seed": args.seed, "trials": args.trials}
        if args.group:
            config["group_specs"] = [_group_spec_from_flag(t) for t in args.group]
        if args.max_n:
            config["n_range"] = (2, args.max_n)
        report = positivity_scan(config)
        _emit(args, report)
        return (
            EXIT_OK
            if not report["negative_coefficient_instances"]
            else EXIT_FALSIFIED
        )
    g = _load_graph(args)
    if args.kind == "expectation":
        rep = expectation_check_exhaustive(g, args.max_k or 2)
        rep["mean_ratio"] = repr(rep["mean_ratio"])
        rep["formula"] = repr(rep["formula"])
        _emit(args, rep)
        return EXIT_OK if rep["equal"] else EXIT_FALSIFIED
    if args.kind == "euler":
        rep = euler_ratio(g)
        _emit(args, {k: str(v) for k, v in rep.items()})
        return EXIT_OK if rep["equal"] else EXIT_FALSIFIED
    if args.kind == "vftuple":
        rep = vf_tuple_report(g)
        _emit(args, rep)
        return EXIT_OK
    raise SchemaError(f"unknown experiment {args.kind!r}")


# -- canned verification suite ------------------------------------------------


def _reproduce_checks():
    g = cyclic_triangle_instance()
    names = g.weights
    pp = lambda s: parse_poly(s, names)  # noqa: E731

    def check_root2_arborescences():
        a2 = arborescence_polynomial(g, 1)
        if a2 != pp("b*d + b*e"):
            return False
        if arborescence_polynomial(g, 1, method="brute-force") != a2:
            return False
        trees = {
            frozenset(names.name(g.edges[e].weight) for e in t.edges)
            for t in enumerate_arborescences(g, 1)
        }
        return trees == {frozenset({"b", "d"}), frozenset({"b", "e"})}

    def check_base_laplacian():
        expected = [
            ["b", "-b", "0"],
            ["0", "c", "-c"],
            ["-d", "-e", "d + e"],
        ]
        return laplacian(g).to_strings(names) == expected

    def check_voltage_laplacian():
        group = g.group
        zeta = lambda i: ReducedGA.term(group, i, IntPoly.one())  # noqa: E731
        one = ReducedGA.one(group)
        scal = lambda t: ReducedGA.from_poly(group, pp(t))  # noqa: E731
        expected = [
            [(one - zeta(1)).scale(pp("a")) + scal("b"), -scal("b"), scal("0")],
            [scal("0"), scal("c"), -zeta(2).scale(pp("c"))],
            [-zeta(2).scale(pp("d")), -scal("e"), scal("d + e")],
        ]
        actual = voltage_laplacian(g)
        return all(
            actual[i, j] == expected[i][j] for i in range(3) for j in range(3)
        )

    expected_restricted = [
        ["a + b", "-b", "0", "-a", "0", "0"],
        ["0", "c", "c", "0", "0", "c"],
        ["d", "-e", "d + e", "d", "0", "0"],
        ["a", "0", "0", "2*a + b", "-b", "0"],
        ["0", "0", "-c", "0", "c", "0"],
        ["-d", "0", "0", "0", "-e", "d + e"],
    ]
    nine_terms = (
        "3*a^2*c^2*d^2 + 3*b^2*c^2*d^2 + 6*a*b*c^2*d^2 + 9*a^2*c^2*e^2"
        " + 3*b^2*c^2*e^2 + 9*a*b*c^2*e^2 + 9*a^2*c^2*d*e + 3*b^2*c^2*d*e"
        " + 12*a*b*c^2*d*e"
    )

    def check_restriction():
        m = restricted_voltage_laplacian(g)
        if m.to_strings(names) != expected_restricted:
            return False
        return det_fraction_free(m) == pp(nine_terms)

    def check_cyclotomic_determinant():
        det = Cyclotomic.from_reduced_ga(det_group_algebra(voltage_laplacian(g)))
        one = Cyclotomic.one(3)
        z = Cyclotomic.from_exponents(3, {1: IntPoly.one()})
        z2 = Cyclotomic.from_exponents(3, {2: IntPoly.one()})
        expected = (
            (one - z) * Cyclotomic.from_poly(3, pp("b*c*d"))
            + (one - z) * Cyclotomic.from_poly(3, pp("a*c*d"))
            + (one - z2) * Cyclotomic.from_poly(3, pp("b*c*e"))
            + (one - z) * (one - z2) * Cyclotomic.from_poly(3, pp("a*c*e"))
        )
        return det == expected

    def check_galois_norm():
        det = Cyclotomic.from_reduced_ga(det_group_algebra(voltage_laplacian(g)))
        return det.field_norm() == pp(nine_terms)

    def check_triangularization():
        u, upper_left, lower_right = triangularize(build_cover(g))
        expected_u = [
            ["b", "-b", "0", "0", "0", "0", "0", "0", "0"],
            ["0", "c", "-c", "0", "0", "0", "0", "0", "0"],
            ["-d", "-e", "d + e", "0", "0", "0", "0", "0", "0"],
            ["0", "0", "0", "a + b", "-b", "0", "-a", "0", "0"],
            ["0", "0", "-c", "0", "c", "c", "0", "0", "c"],
            ["-d", "0", "0", "d", "-e", "d + e", "d", "0", "0"],
            ["-a", "0", "0", "a", "0", "0", "2*a + b", "-b", "0"],
            ["0", "0", "0", "0", "0", "-c", "0", "c", "0"],
            ["0", "0", "0", "-d", "0", "0", "0", "-e", "d + e"],
        ]
        if u.to_strings(names) != expected_u:
            return False
        if upper_left.to_strings(names) != laplacian(g).to_strings(names):
            return False
        return lower_right.to_strings(names) == expected_restricted

    def check_ratio_identity():
        rep = ratio_report(g, 0)
        return rep.theorem_holds and rep.rhs == pp(nine_terms).div_int_exact(3)

    def check_deck_groups():
        regular = build_cover(g)
        if not is_regular_cover(regular) or len(deck_group(regular)) != 3:
            return False
        irregular = build_cover(permutation_triangle_instance())
        return not is_regular_cover(irregular)

    def check_permutation_cover_shape():
        c = build_cover(permutation_triangle_instance())
        if c.num_vertices != 9 or len(c.edges) != 15:
            return False
        # the loop's nontrivial permutation swaps the lifts of vertex 1
        # on sheets 1 and 3 and fixes the one on sheet 2
        loop_lifts = {
            (ce.src_sheet, ce.dst_sheet) for ce in c.edges if ce.base_id == 0
        }
        return loop_lifts == {(0, 2), (1, 1), (2, 0)}

    def check_unliftable_arborescence():
        base = two_fold_counterexample_instance()
        c = build_cover(base)
        # cover edges named by (base edge weight, source sheet): this is
        # the 5-edge arborescence rooted at the first lift of vertex 3
        wanted = {("s", 0), ("r", 1), ("t", 1), ("p", 1), ("q", 0)}
        root = c.vertex_index(2, 0)
        lifted = c.lifted_edges()
        target = None
        for t in enumerate_arborescences(c, root):
            tags = set()
            for pos, eid in enumerate(t.edges):
                ce = c.edges[eid]
                tags.add((base.weights.name(base.edges[ce.base_id].weight), ce.src_sheet))
            if tags == wanted:
                target = t
                break
        if target is None:
            return False
        # no choice of one lift per base vertex containing the root spans a
        # connected subtree of it, so it does not complete a lifted base
        # arborescence
        tree_edges = {(lifted[e][0], lifted[e][1]) for e in target.edges}
        n = base.n
        for s1 in range(2):
            for s2 in range(2):
                chosen = {s1 * n + 0, s2 * n + 1, root}
                inside = {
                    (u, v) for (u, v) in tree_edges if u in chosen and v in chosen
                }
                if len(inside) == 2:  # both non-root vertices hooked up
                    return False
        return True

    return [
        ("arborescence polynomial at root 2", check_root2_arborescences),
        ("base Laplacian matrix", check_base_laplacian),
        ("voltage Laplacian entries", check_voltage_laplacian),
        ("scalar-restriction matrix and determinant", check_restriction),
        ("cyclotomic determinant of the voltage Laplacian", check_cyclotomic_determinant),
        ("Galois norm equals the restricted determinant", check_galois_norm),
        ("block triangularization of the cover Laplacian", check_triangularization),
        ("ratio identity on the built-in instance", check_ratio_identity),
        ("deck groups: regular and non-regular covers", check_deck_groups),
        ("permutation-voltage cover shape", check_permutation_cover_shape),
        ("cover arborescence that lifts no base arborescence", check_unliftable_arborescence),
    ]


def _cmd_reproduce(args) -> int:
    failures = 0
    checks = _reproduce_checks()
    for name, check in checks:
        ok = check()
        print(f"{'PASS' if ok else 'FAIL'}  {name}")
        if not ok:
            failures += 1
    print(f"{len(checks) - failures} passed, {failures} failed")
    return EXIT_OK if failures == 0 else EXIT_FALSIFIED


# -- argument parsing ----------------------------------------------------------


def _add_io(p, vertex_flag=None):
    p.add_argument("--input", help="graph JSON file")
    p.add_argument(
        "--builtin", choices=sorted(BUILTIN_INSTANCES), help="built-in instance"
    )
    p.add_argument("--output", help="write JSON here instead of stdout")
    if vertex_flag:
        p.add_argument(vertex_flag, required=True)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="voltcover",
        description="Covers of voltage graphs, arborescence ratios, and "
        "voltage-Laplacian determinants over exact integer polynomials.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    _add_io(sub.add_parser("cover", help="build the covering graph"))

    p = sub.add_parser("laplacian", help="Laplacian matrices and determinants")
    _add_io(p)
    p.add_argument(
        "--which",
        choices=["base", "voltage", "restricted", "cover", "triangular", "all"],
        default="all",
    )

    p = sub.add_parser("arbor", help="arborescence polynomial")
    _add_io(p)
    p.add_argument("--root", required=True)
    p.add_argument(
        "--method", choices=["matrix-tree", "brute-force", "both"], default="both"
    )

    _add_io(sub.add_parser("ratio", help="cover/base arborescence ratio"), "--vertex")
    _add_io(sub.add_parser("invariance", help="ratio across all roots and lifts"))
    _add_io(sub.add_parser("vf", help="vector fields and their determinant sum"))
    _add_io(sub.add_parser("norm", help="Galois norm of the voltage determinant"))

    p = sub.add_parser("experiment", help="conjecture harnesses")
    p.add_argument(
        "kind", choices=["positivity", "expectation", "euler", "vftuple"]
    )
    _add_io(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--max-n", type=int, default=0)
    p.add_argument("--max-k", type=int, default=0)
    p.add_argument("--group", action="append", help="e.g. cyclic:3, permutation:2")

    sub.add_parser("reproduce", help="run the built-in verification suite")
    return parser


_HANDLERS = {
    "cover": _cmd_cover,
    "laplacian": _cmd_laplacian,
    "arbor": _cmd_arbor,
    "ratio": _cmd_ratio,
    "invariance": _cmd_invariance,
    "vf": _cmd_vf,
    "norm": _cmd_norm,
    "experiment": _cmd_experiment,
    "reproduce": _cmd_reproduce,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except (SchemaError, VoltageKindMismatch, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
