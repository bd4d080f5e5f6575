"""Empirical harnesses: positivity scans over random voltage graphs,
exhaustive random-cover expectation checks, Euler-circuit ratios, and
decompositions of the cover/base arborescence ratio over tuples of
vector fields.

Randomness policy: every harness takes a single integer seed driving a
`random.Random` (Mersenne Twister) instance, and every reported instance
serializes to JSON replayable through `parse_graph`.  Polynomial-valued
averages are computed exactly with rational coefficients.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from random import Random

from .algebra import det_fraction_free
from .cover import CoverGraph, build_cover
from .errors import NotEulerian, SearchSpaceTooLarge, ZeroBaseArborescence
from .graph import (
    GROUP_KIND,
    VoltageGraph,
    build_graph,
    group_from_spec,
    serialize_graph,
)
from .laplacian import restricted_voltage_laplacian
from .poly import FracPoly, IntPoly
from .spanning import _brute_force_poly, arborescence_polynomial
from .vecfield import enumerate_vector_fields

EXPECTATION_COVER_GUARD = 10**5
EULER_ENUM_BOUND = 10**6
TUPLE_COMBO_BOUND = 10**5

DEFAULT_GROUP_SPECS = (
    {"type": "cyclic", "order": 2},
    {"type": "cyclic", "order": 3},
    {"type": "cyclic", "order": 4},
    {"type": "permutation", "sheets": 2},
    {"type": "permutation", "sheets": 3},
)


# -- random instances -------------------------------------------------------


def random_voltage_graph(
    rng: Random,
    spec: dict,
    n_range: tuple[int, int] = (2, 3),
    edge_range: tuple[int, int] = (2, 5),
    allow_loops: bool = True,
) -> VoltageGraph:
    """Sample a voltage graph: uniform endpoints per edge, uniform voltage
    per edge (group element, or a uniform sheet permutation)."""
    n = rng.randint(*n_range)
    m = rng.randint(*edge_range)
    labels = [str(i + 1) for i in range(n)]
    if spec.get("type") == "permutation":
        k = int(spec["sheets"])
        group = None
    else:
        group = group_from_spec(spec)
        k = group.order
    edge_data = []
    for i in range(m):
        src = rng.randrange(n)
        dst = rng.randrange(n)
        if not allow_loops:
            while dst == src and n > 1:
                dst = rng.randrange(n)
        if group is not None:
            volt: int | tuple[int, ...] = rng.randrange(k)
        else:
            perm = list(range(k))
            rng.shuffle(perm)
            volt = tuple(perm)
        edge_data.append((src, dst, f"w{i}", volt))
    if group is not None:
        return build_graph(labels, edge_data, group=group, group_spec=spec)
    return build_graph(labels, edge_data, sheets=k)


def _cover_weakly_connected(c: CoverGraph) -> bool:
    nv = c.num_vertices
    if nv == 0:
        return False
    adj: list[set[int]] = [set() for _ in range(nv)]
    for src, dst, _ in c.lifted_edges():
        adj[src].add(dst)
        adj[dst].add(src)
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == nv


# -- positivity scan ---------------------------------------------------------


def positivity_scan(config: dict) -> dict:
    """Sample voltage graphs and look for negative coefficients in the
    cover/base arborescence ratio.

    config keys (all optional): seed, trials, group_specs, n_range,
    edge_range.  A negative coefficient is a finding, not an error: the
    offending instance is serialized into the report for replay.
    """
    seed = int(config.get("seed", 0))
    trials = int(config.get("trials", 1000))
    specs = list(config.get("group_specs", DEFAULT_GROUP_SPECS))
    n_range = tuple(config.get("n_range", (2, 3)))
    edge_range = tuple(config.get("edge_range", (2, 5)))
    rng = Random(seed)

    checked = 0
    skipped: dict[str, int] = {}
    negatives: list[dict] = []

    def skip(reason: str):
        skipped[reason] = skipped.get(reason, 0) + 1

    for _ in range(trials):
        spec = rng.choice(specs)
        g = random_voltage_graph(rng, spec, n_range, edge_range)
        root = rng.randrange(g.n)
        a_base = arborescence_polynomial(g, root)
        if a_base.is_zero():
            skip("base arborescence polynomial is 0")
            continue
        c = build_cover(g)
        if not _cover_weakly_connected(c):
            skip("cover disconnected (ratio is 0)")
            continue
        a_cover = _brute_force_poly(c, c.vertex_index(root, 0))
        ratio = a_cover.exact_div(a_base)
        checked += 1
        bad = [(m, coef) for m, coef in ratio.sorted_terms() if coef < 0]
        if bad:
            negatives.append(
                {
                    "instance": serialize_graph(g),
                    "root": root,
                    "ratio": ratio.to_string(g.weights),
                    "negative_terms": [
                        {"monomial": IntPoly.monomial(m).to_string(g.weights),
                         "coefficient": coef}
                        for m, coef in bad
                    ],
                }
            )

    return {
        "seed": seed,
        "trials": trials,
        "checked": checked,
        "skipped": skipped,
        "negative_coefficient_instances": negatives,
    }


# -- expectation over random covers ------------------------------------------


def expectation_check_exhaustive(
    g: VoltageGraph,
    k: int,
    root: int = 0,
    cover_guard: int = EXPECTATION_COVER_GUARD,
) -> dict:
    """Average the cover/base arborescence ratio over ALL assignments of a
    sheet permutation to each edge (the uniform random k-cover), and compare
    exactly with (1/k) * prod over vertices of (sum of outgoing weights)^(k-1).
    """
    m = len(g.edges)
    total = math.factorial(k) ** m
    if total > cover_guard:
        raise SearchSpaceTooLarge(f"{total} covers to enumerate")
    a_base = arborescence_polynomial(g, root)
    if a_base.is_zero():
        raise ZeroBaseArborescence("base graph has no arborescence at the root")

    perms = list(itertools.permutations(range(k)))
    ratio_sum = IntPoly.zero()
    for assignment in itertools.product(perms, repeat=m):
        edge_data = [
            (e.src, e.dst, g.weights.name(e.weight), assignment[i])
            for i, e in enumerate(g.edges)
        ]
        twisted = build_graph(g.labels, edge_data, sheets=k)
        c = build_cover(twisted)
        a_cover = _brute_force_poly(c, c.vertex_index(root, 0))
        ratio_sum = ratio_sum + a_cover.exact_div(a_base)

    formula = IntPoly.one()
    for v in range(g.n):
        out_sum = IntPoly.zero()
        for e in g.out_edges(v):
            out_sum = out_sum + IntPoly.var(e.weight)
        formula = formula * out_sum ** (k - 1)

    mean = FracPoly.from_int(ratio_sum).scale(Fraction(1, total))
    target = FracPoly.from_int(formula).scale(Fraction(1, k))
    return {
        "k": k,
        "root": root,
        "covers": total,
        "mean_ratio": mean,
        "formula": target,
        "equal": mean == target,
    }


# -- Euler circuits -----------------------------------------------------------


def _degrees(n: int, arcs: list[tuple[int, int]]) -> tuple[list[int], list[int]]:
    outd = [0] * n
    ind = [0] * n
    for s, d in arcs:
        outd[s] += 1
        ind[d] += 1
    return outd, ind


def _check_eulerian(n: int, arcs: list[tuple[int, int]]):
    outd, ind = _degrees(n, arcs)
    if any(o != i for o, i in zip(outd, ind)):
        raise NotEulerian("in-degree differs from out-degree somewhere")
    if any(o == 0 for o in outd):
        raise NotEulerian("isolated or sink vertex")
    # balanced + every vertex reachable from 0 => Eulerian
    adj: list[list[int]] = [[] for _ in range(n)]
    for s, d in arcs:
        adj[s].append(d)
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) != n:
        raise NotEulerian("graph is not connected")


def _best_count(n: int, arcs: list[tuple[int, int]]) -> int:
    """Euler-circuit count via arborescences: count of arborescences at any
    root times prod (outdeg - 1)!.  Circuits are rooted at a fixed first
    edge, the standard normalization."""
    outd, _ = _degrees(n, arcs)
    ones = [[IntPoly.zero() for _ in range(n)] for _ in range(n)]
    for s, d in arcs:
        ones[s][s] = ones[s][s] + IntPoly.one()
        ones[s][d] = ones[s][d] - IntPoly.one()
    from .algebra import RingMatrix

    lap = RingMatrix(ones, zero=IntPoly.zero(), one=IntPoly.one())
    arb = det_fraction_free(lap.minor(0, 0)).eval_ones()
    count = arb
    for o in outd:
        count *= math.factorial(o - 1)
    return count


def count_euler_circuits(
    n: int, arcs: list[tuple[int, int]], bound: int = EULER_ENUM_BOUND
) -> int:
    """Brute-force oracle: walks that start with arc 0, use every arc once,
    and return to arc 0's source."""
    m = len(arcs)
    _check_eulerian(n, arcs)
    by_src: list[list[int]] = [[] for _ in range(n)]
    for j, (s, _) in enumerate(arcs):
        by_src[s].append(j)

    start = arcs[0][0]
    count = 0
    steps = 0
    used = [False] * m
    used[0] = True

    def walk(v: int, remaining: int):
        nonlocal count, steps
        steps += 1
        if steps > bound:
            raise SearchSpaceTooLarge("too many partial circuits")
        if remaining == 0:
            if v == start:
                count += 1
            return
        for j in by_src[v]:
            if not used[j]:
                used[j] = True
                walk(arcs[j][1], remaining - 1)
                used[j] = False

    walk(arcs[0][1], m - 1)
    return count


def euler_ratio(g: VoltageGraph, cover: CoverGraph | None = None) -> dict:
    """Euler-circuit counts of a voltage graph and its cover, with the
    closed-form value (1/k) * det(restricted voltage Laplacian)|_{wt=1}
    * prod over vertices ((outdeg - 1)!)^(k-1) for their ratio."""
    if cover is None:
        cover = build_cover(g)
    base_arcs = [(e.src, e.dst) for e in g.edges]
    cover_arcs = [(s, d) for s, d, _ in cover.lifted_edges()]
    _check_eulerian(g.n, base_arcs)
    _check_eulerian(cover.num_vertices, cover_arcs)
    e_base = _best_count(g.n, base_arcs)
    e_cover = _best_count(cover.num_vertices, cover_arcs)

    det_ones = det_fraction_free(restricted_voltage_laplacian(cover)).eval_ones()
    outd, _ = _degrees(g.n, base_arcs)
    factorial_part = 1
    for o in outd:
        factorial_part *= math.factorial(o - 1) ** (g.k - 1)
    formula_value = Fraction(det_ones, g.k) * factorial_part

    return {
        "k": g.k,
        "euler_base": e_base,
        "euler_cover": e_cover,
        "ratio": Fraction(e_cover, e_base),
        "formula_value": formula_value,
        "equal": Fraction(e_cover, e_base) == formula_value,
    }


# -- vector-field tuple decomposition -----------------------------------------


def vf_tuple_report(g: VoltageGraph, combo_bound: int = TUPLE_COMBO_BOUND) -> dict:
    """Try to write the cover/base arborescence ratio as a nonnegative
    integer combination of products of (k-1) vector-field weights.

    Every vector-field weight is a single degree-n monomial, so the linear
    system splits by monomial: a decomposition exists iff every ratio
    coefficient is nonnegative and its monomial is a product of k-1
    vector-field weights.  The report assigns each coefficient to one
    witnessing multiset of vector fields and lists the alternatives count.
    """
    k = g.k
    root = 0
    a_base = arborescence_polynomial(g, root)
    if a_base.is_zero():
        return {"success": False, "reason": "base arborescence polynomial is 0"}
    c = build_cover(g)
    a_cover = _brute_force_poly(c, c.vertex_index(root, 0))
    ratio = a_cover.exact_div(a_base)

    if k == 1:
        return {
            "success": ratio == IntPoly.one(),
            "k": 1,
            "assignments": [{"vector_fields": (), "coefficient": 1}],
            "ratio": ratio.to_string(g.weights),
        }

    fields = enumerate_vector_fields(g)
    num_combos = math.comb(len(fields) + k - 2, k - 1) if fields else 0
    if num_combos > combo_bound:
        raise SearchSpaceTooLarge("too many vector-field tuples")
    by_monomial: dict = {}
    for combo in itertools.combinations_with_replacement(range(len(fields)), k - 1):
        w = IntPoly.one()
        for i in combo:
            w = w * fields[i].weight(g)
        (mono, _coef), = w.sorted_terms()
        by_monomial.setdefault(mono, []).append(combo)

    assignments = []
    failures = []
    for mono, coef in ratio.sorted_terms():
        text = IntPoly.monomial(mono).to_string(g.weights)
        if coef < 0:
            failures.append({"monomial": text, "reason": f"negative coefficient {coef}"})
        elif mono not in by_monomial:
            failures.append(
                {"monomial": text, "reason": "not a product of vector-field weights"}
            )
        else:
            combos = by_monomial[mono]
            assignments.append(
                {
                    "monomial": text,
                    "coefficient": coef,
                    "vector_fields": combos[0],
                    "witness_count": len(combos),
                }
            )

    return {
        "success": not failures,
        "k": k,
        "num_vector_fields": len(fields),
        "ratio": ratio.to_string(g.weights),
        "assignments": assignments,
        "failures": failures,
    }
