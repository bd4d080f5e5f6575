"""Vector fields on directed graphs: cycle decompositions, cycle voltages,
and the vector-field expansion of the voltage-Laplacian determinant.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import FiniteGroup, ReducedGA
from .errors import NonAbelianGroup, SearchSpaceTooLarge, VoltageKindMismatch
from .graph import GROUP_KIND, Edge, VoltageGraph
from .poly import IntPoly

VF_ENUM_BOUND = 10**6


@dataclass(frozen=True)
class VectorField:
    """One outgoing edge per vertex; the functional graph decomposes into
    trees hanging off disjoint directed cycles, one per component."""

    edges: tuple[int, ...]  # edges[v] = chosen edge id at vertex v
    cycles: tuple[tuple[int, ...], ...]  # each cycle as an edge-id sequence

    def weight(self, g: VoltageGraph) -> IntPoly:
        p = IntPoly.one()
        for eid in self.edges:
            p = p * IntPoly.var(g.edges[eid].weight)
        return p

    def cycle_voltage(self, g: VoltageGraph, cycle: tuple[int, ...]) -> int:
        """Product of the edge voltages around a cycle (abelian groups only,
        where the product needs no basepoint)."""
        if g.kind != GROUP_KIND:
            raise VoltageKindMismatch("cycle voltages need group voltages")
        if not g.group.is_abelian():
            raise NonAbelianGroup("cycle voltage is basepoint-dependent")
        v = 0
        for eid in cycle:
            v = g.group.mul(v, g.edges[eid].voltage)
        return v

    def cycle_voltages(self, g: VoltageGraph) -> tuple[int, ...]:
        return tuple(self.cycle_voltage(g, c) for c in self.cycles)


def _cycles_of(choice: list[Edge]) -> tuple[tuple[int, ...], ...]:
    n = len(choice)
    state = [0] * n  # 0 unvisited, 1 on current path, 2 done
    cycles = []
    for start in range(n):
        if state[start]:
            continue
        path = []
        v = start
        while state[v] == 0:
            state[v] = 1
            path.append(v)
            v = choice[v].dst
        if state[v] == 1:
            # v closes a new cycle; slice it out of the path
            i = path.index(v)
            cycles.append(tuple(choice[w].id for w in path[i:]))
        for w in path:
            state[w] = 2
    return tuple(cycles)


def enumerate_vector_fields(
    g: VoltageGraph, bound: int = VF_ENUM_BOUND
) -> list[VectorField]:
    """All choices of one outgoing edge per vertex, each with its cycle
    decomposition.  A vertex with no outgoing edge means no vector fields."""
    out = [g.out_edges(v) for v in range(g.n)]
    if any(not out[v] for v in range(g.n)):
        return []
    total = 1
    for v in range(g.n):
        total *= len(out[v])
        if total > bound:
            raise SearchSpaceTooLarge("too many vector fields")

    fields = []
    idx = [0] * g.n
    while True:
        choice = [out[v][idx[v]] for v in range(g.n)]
        fields.append(
            VectorField(tuple(e.id for e in choice), _cycles_of(choice))
        )
        pos = 0
        while pos < g.n:
            idx[pos] += 1
            if idx[pos] < len(out[pos]):
                break
            idx[pos] = 0
            pos += 1
        else:
            break
    return fields


def omega(g: VoltageGraph, bound: int = VF_ENUM_BOUND) -> ReducedGA:
    """Σ over vector fields of wt(γ) · ∏_{cycles c} (1 − ν(c)), an element
    of the reduced group algebra with polynomial coefficients.  Equals the
    determinant of the voltage Laplacian for abelian voltage groups."""
    if g.kind != GROUP_KIND:
        raise VoltageKindMismatch("omega needs group voltages")
    group = g.group
    if not group.is_abelian():
        raise NonAbelianGroup("omega is defined for abelian voltage groups")
    total = ReducedGA.zero(group)
    one = ReducedGA.one(group)
    for vf in enumerate_vector_fields(g, bound):
        term = ReducedGA.term(group, 0, vf.weight(g))
        for c in vf.cycles:
            nu = vf.cycle_voltage(g, c)
            term = term * (one - ReducedGA.term(group, nu, IntPoly.one()))
        total = total + term
    return total


def negative_vector_field_sum(g: VoltageGraph, bound: int = VF_ENUM_BOUND) -> IntPoly:
    """Σ 2^{#cycles} wt(γ) over vector fields whose cycles all carry the
    nontrivial voltage of a two-element group."""
    if g.kind != GROUP_KIND or g.group.order != 2:
        raise VoltageKindMismatch("negative vector fields need order-2 voltages")
    total = IntPoly.zero()
    for vf in enumerate_vector_fields(g, bound):
        if all(vf.cycle_voltage(g, c) == 1 for c in vf.cycles):
            total = total + vf.weight(g).scale(2 ** len(vf.cycles))
    return total
