"""Harnesses: expectation over all k-covers, Euler-circuit ratios,
positivity scanning, and vector-field tuple decompositions."""

from fractions import Fraction
from random import Random

import pytest

from voltcover import (
    FiniteGroup,
    build_cover,
    build_graph,
    count_euler_circuits,
    euler_ratio,
    expectation_check_exhaustive,
    negative_vector_field_sum,
    parse_graph,
    positivity_scan,
    ratio_report,
    vf_tuple_report,
)
from voltcover.errors import NotEulerian, SearchSpaceTooLarge, ZeroBaseArborescence
from voltcover.experiments import _cover_weakly_connected
from voltcover.poly import FracPoly
from conftest import cyclic_triangle_instance, single_loop


def _random_plain_graph(rng, max_edges=4):
    n = rng.randint(2, 3)
    m = rng.randint(n, max_edges)
    edges = [(rng.randrange(n), rng.randrange(n), f"w{i}", (0,)) for i in range(m)]
    return build_graph([str(i + 1) for i in range(n)], edges, sheets=1)


# -- expectation ---------------------------------------------------------------


def test_expectation_exact_for_two_sheets():
    rng = Random(61)
    checked = 0
    while checked < 20:
        g = _random_plain_graph(rng)
        try:
            rep = expectation_check_exhaustive(g, 2)
        except ZeroBaseArborescence:
            continue
        assert rep["equal"], rep
        checked += 1


def test_expectation_single_loop():
    g = build_graph(["1"], [(0, 0, "a", (0,))], sheets=1)
    rep = expectation_check_exhaustive(g, 2)
    assert rep["equal"]
    a = g.weights.id("a")
    assert rep["mean_ratio"] == FracPoly({((a, 1),): Fraction(1, 2)})


def test_expectation_one_sheet_is_trivial():
    g = _random_plain_graph(Random(3))
    rep = expectation_check_exhaustive(g, 1)
    assert rep["equal"]
    assert rep["mean_ratio"] == FracPoly({(): Fraction(1)})


def test_expectation_three_sheets_spot_check():
    g = build_graph(["1", "2"], [(0, 1, "a", (0,)), (1, 0, "b", (0,))], sheets=1)
    rep = expectation_check_exhaustive(g, 3)
    assert rep["covers"] == 36
    assert rep["equal"]


def test_expectation_guards():
    g = _random_plain_graph(Random(5))
    with pytest.raises(SearchSpaceTooLarge):
        expectation_check_exhaustive(g, 4, cover_guard=10)
    sink = build_graph(["1", "2"], [(0, 1, "a", (0,))], sheets=1)
    with pytest.raises(ZeroBaseArborescence):
        expectation_check_exhaustive(sink, 2)


# -- Euler circuits --------------------------------------------------------------


def test_euler_two_cycle():
    assert count_euler_circuits(2, [(0, 1), (1, 0)]) == 1


def test_euler_not_eulerian():
    with pytest.raises(NotEulerian):
        count_euler_circuits(2, [(0, 1)])
    with pytest.raises(NotEulerian):
        count_euler_circuits(3, [(0, 1), (1, 0), (2, 2)])


def _random_eulerian_arcs(rng):
    """Superimpose a few closed walks through vertex 0 so the result is
    connected and balanced."""
    n = rng.randint(2, 3)
    arcs = []
    for _ in range(rng.randint(1, 3)):
        length = rng.randint(1, 3)
        walk = [0] + [rng.randrange(n) for _ in range(length)]
        for u, v in zip(walk, walk[1:] + [0]):
            arcs.append((u, v))
    used = sorted({v for arc in arcs for v in arc})
    relabel = {v: i for i, v in enumerate(used)}
    return len(used), [(relabel[u], relabel[v]) for u, v in arcs]


def test_best_formula_matches_brute_force():
    from voltcover.experiments import _best_count

    rng = Random(67)
    for _ in range(15):
        n, arcs = _random_eulerian_arcs(rng)
        assert _best_count(n, arcs) == count_euler_circuits(n, arcs)


def test_euler_ratio_two_cycle_cover():
    g = build_graph(
        ["1", "2"],
        [(0, 1, "a", 1), (1, 0, "b", 0)],
        group=FiniteGroup.cyclic(2),
    )
    rep = euler_ratio(g)
    assert rep["euler_base"] == 1
    assert rep["euler_cover"] == 1
    assert rep["formula_value"] == Fraction(1)
    assert rep["equal"]


def test_euler_ratio_on_random_eulerian_voltage_graphs():
    rng = Random(71)
    produced = 0
    while produced < 10:
        n, arcs = _random_eulerian_arcs(rng)
        k = rng.choice((2, 3))
        group = FiniteGroup.cyclic(k)
        edges = [
            (u, v, f"w{i}", rng.randrange(k)) for i, (u, v) in enumerate(arcs)
        ]
        g = build_graph([str(i + 1) for i in range(n)], edges, group=group)
        try:
            rep = euler_ratio(g)
        except NotEulerian:  # the sampled cover can be disconnected
            continue
        assert rep["equal"], rep
        assert rep["formula_value"].denominator == 1
        assert rep["formula_value"] > 0
        # the closed form matches a direct count on small covers
        c = build_cover(g)
        cover_arcs = [(s, d) for s, d, _ in c.lifted_edges()]
        if len(cover_arcs) <= 12:
            assert rep["euler_cover"] == count_euler_circuits(
                c.num_vertices, cover_arcs
            )
        produced += 1


# -- positivity -------------------------------------------------------------------


def test_positivity_scan_reports_and_replays():
    report = positivity_scan({"seed": 101, "trials": 150})
    assert report["checked"] > 0
    assert report["checked"] + sum(report["skipped"].values()) == 150
    assert report["negative_coefficient_instances"] == []


def test_positivity_scan_skips_disconnected_covers():
    report = positivity_scan(
        {
            "seed": 7,
            "trials": 100,
            "group_specs": [{"type": "cyclic", "order": 3}],
        }
    )
    assert "cover disconnected (ratio is 0)" in report["skipped"]


def test_disconnected_cover_detection():
    trivial = build_graph(
        ["1", "2"],
        [(0, 1, "a", 0), (1, 0, "b", 0)],
        group=FiniteGroup.cyclic(2),
    )
    assert not _cover_weakly_connected(build_cover(trivial))
    assert _cover_weakly_connected(build_cover(cyclic_triangle_instance()))


def test_scan_instances_replay():
    # serialize/parse round trip preserves the sampled instance's ratio
    from voltcover.experiments import random_voltage_graph
    from voltcover.graph import serialize_graph

    rng = Random(103)
    g = random_voltage_graph(rng, {"type": "cyclic", "order": 2}, (2, 3), (2, 4))
    replay = parse_graph(serialize_graph(g))
    rep1, rep2 = ratio_report(g, 0), ratio_report(replay, 0)
    assert rep1.a_cover == rep2.a_cover
    assert rep1.det_restricted == rep2.det_restricted


# -- vector-field tuples -----------------------------------------------------------


def test_vf_tuple_k2_matches_negative_vector_fields():
    rng = Random(107)
    done = 0
    while done < 10:
        n = rng.randint(2, 3)
        m = rng.randint(n, 5)
        edges = [
            (rng.randrange(n), rng.randrange(n), f"w{i}", rng.randrange(2))
            for i in range(m)
        ]
        g = build_graph(
            [str(i + 1) for i in range(n)], edges, group=FiniteGroup.cyclic(2)
        )
        rep = vf_tuple_report(g)
        if not rep.get("success"):
            continue
        # ratio = half the negative-vector-field sum, i.e. f = 2^{cycles-1}
        ratio_poly = negative_vector_field_sum(g).div_int_exact(2)
        assert rep["ratio"] == ratio_poly.to_string(g.weights)
        done += 1


def test_vf_tuple_trivial_cover():
    g = build_graph(["1", "2"], [(0, 1, "a", (0,)), (1, 0, "b", (0,))], sheets=1)
    rep = vf_tuple_report(g)
    assert rep["success"]
    assert rep["k"] == 1


def test_vf_tuple_on_the_cyclic_triangle():
    rep = vf_tuple_report(cyclic_triangle_instance())
    assert rep["k"] == 3
    assert "success" in rep and "assignments" in rep
    # recorded outcome: every ratio coefficient is witnessed by a pair
    if rep["success"]:
        assert rep["failures"] == []
        assert all(a["coefficient"] > 0 for a in rep["assignments"])


def test_vf_tuple_zero_base():
    sink = build_graph(["1", "2"], [(0, 1, "a", 0)], group=FiniteGroup.cyclic(2))
    rep = vf_tuple_report(sink)
    assert not rep["success"]
