"""Covering graphs built from voltage data: construction, projection,
deck-transformation search, regularity tests, and gauge moves.

Cover vertices are pairs (base vertex, sheet) with sheets 0..k-1, ordered
colexicographically (sheet-major), so vertex (i, s) has flat index
s*n + i.  Sheet 0 is the distinguished sheet; for group voltages the
sheets are the group elements with the identity first, so the derived
graph falls out of the same construction via the left-regular action.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import SearchSpaceTooLarge, VoltageKindMismatch
from .graph import Edge, PERM_KIND, VoltageGraph

DECK_SEARCH_BUDGET = 10**6


@dataclass(frozen=True)
class CoverEdge:
    base_id: int  # id of the base edge this lift projects to
    src_sheet: int
    dst_sheet: int


class CoverGraph:
    """A k-fold cover of a voltage graph, with the projection implicit in
    the (base edge, sheet) tags on lifted edges."""

    def __init__(self, base: VoltageGraph):
        self.base = base
        self.k = base.k
        self.n = base.n
        self.edges: list[CoverEdge] = []
        for e in base.edges:
            sigma = base.edge_permutation(e)
            for x in range(self.k):
                self.edges.append(CoverEdge(e.id, x, sigma[x]))

    def vertex_index(self, base_vertex: int, sheet: int) -> int:
        return sheet * self.n + base_vertex

    def vertex_label(self, base_vertex: int, sheet: int) -> str:
        return f"{self.base.labels[base_vertex]}^{sheet + 1}"

    @property
    def num_vertices(self) -> int:
        return self.n * self.k

    def lifted_edges(self) -> list[tuple[int, int, int]]:
        """(flat source index, flat target index, weight var id) triples."""
        out = []
        for ce in self.edges:
            e = self.base.edges[ce.base_id]
            out.append(
                (
                    self.vertex_index(e.src, ce.src_sheet),
                    self.vertex_index(e.dst, ce.dst_sheet),
                    e.weight,
                )
            )
        return out

    def as_plain_graph(self) -> VoltageGraph:
        """Forget the sheet structure: a flat graph with trivial voltages
        whose edges keep their base weight variables (so lifted edges of
        one base edge deliberately share a variable)."""
        labels = [
            self.vertex_label(i, s) for s in range(self.k) for i in range(self.n)
        ]
        edges = []
        for j, ce in enumerate(self.edges):
            e = self.base.edges[ce.base_id]
            edges.append(
                Edge(
                    j,
                    self.vertex_index(e.src, ce.src_sheet),
                    self.vertex_index(e.dst, ce.dst_sheet),
                    e.weight,
                    (0,),
                )
            )
        return VoltageGraph(
            labels, edges, PERM_KIND, sheets=1, weights=self.base.weights
        )

    def projection_table(self) -> list[dict]:
        return [
            {
                "vertex": self.vertex_label(i, s),
                "base_vertex": self.base.labels[i],
                "sheet": s + 1,
            }
            for s in range(self.k)
            for i in range(self.n)
        ]


def build_cover(g: VoltageGraph) -> CoverGraph:
    """Lift every base edge across every sheet: edge e = (v, w) with sheet
    permutation sigma produces lifts (v, x) -> (w, sigma(x))."""
    return CoverGraph(g)


def _edge_constraints(base: VoltageGraph) -> list[tuple[int, int, tuple[int, ...]]]:
    return [(e.src, e.dst, base.edge_permutation(e)) for e in base.edges]


def deck_group(c: CoverGraph, budget: int = DECK_SEARCH_BUDGET) -> list[tuple[tuple[int, ...], ...]]:
    """All deck transformations, each as a tuple (per base vertex) of sheet
    permutations.

    A candidate assigns a sheet bijection phi_v to every fiber; it is a
    deck transformation iff phi_w o sigma_e = sigma_e o phi_v for every
    base edge e = (v, w).  Each edge forces phi_w from phi_v, so the search
    only branches on one representative vertex per weakly-connected
    component of the base.
    """
    base = c.base
    n, k = c.n, c.k
    constraints = _edge_constraints(base)
    adj: list[list[tuple[int, tuple[int, ...], bool]]] = [[] for _ in range(n)]
    for v, w, sigma in constraints:
        adj[v].append((w, sigma, True))
        adj[w].append((v, sigma, False))

    components: list[list[int]] = []
    seen = [False] * n
    for v0 in range(n):
        if seen[v0]:
            continue
        comp = [v0]
        seen[v0] = True
        stack = [v0]
        while stack:
            v = stack.pop()
            for w, _, _ in adj[v]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    stack.append(w)
        components.append(comp)

    import math

    if math.factorial(k) ** len(components) > budget:
        raise SearchSpaceTooLarge(
            f"{math.factorial(k)}^{len(components)} deck candidates exceed budget"
        )

    sheet_perms = list(itertools.permutations(range(k)))

    def propagate(root: int, phi_root: tuple[int, ...]) -> dict[int, tuple[int, ...]] | None:
        assign = {root: phi_root}
        stack = [root]
        while stack:
            v = stack.pop()
            phi_v = assign[v]
            for w, sigma, forward in adj[v]:
                if forward:
                    # phi_w(sigma(x)) = sigma(phi_v(x))
                    phi_w = [0] * k
                    for x in range(k):
                        phi_w[sigma[x]] = sigma[phi_v[x]]
                    phi_w = tuple(phi_w)
                else:
                    # v is the edge target: phi_v(sigma(x)) = sigma(phi_w(x))
                    inv = [0] * k
                    for x in range(k):
                        inv[sigma[x]] = x
                    phi_w = tuple(inv[phi_v[sigma[x]]] for x in range(k))
                if w in assign:
                    if assign[w] != phi_w:
                        return None
                else:
                    assign[w] = phi_w
                    stack.append(w)
        return assign

    per_component: list[list[dict[int, tuple[int, ...]]]] = []
    for comp in components:
        root = comp[0]
        found = []
        for phi in sheet_perms:
            assign = propagate(root, phi)
            if assign is not None:
                found.append(assign)
        per_component.append(found)

    result = []
    for combo in itertools.product(*per_component):
        merged: dict[int, tuple[int, ...]] = {}
        for assign in combo:
            merged.update(assign)
        result.append(tuple(merged[v] for v in range(n)))
    return result


def is_regular_cover(c: CoverGraph, budget: int = DECK_SEARCH_BUDGET) -> bool:
    """True iff the deck group is transitive on every fiber."""
    autos = deck_group(c, budget=budget)
    for v in range(c.n):
        images = {phi[v][0] for phi in autos}
        if len(images) != c.k:
            return False
    return True


def gauge_transform(g: VoltageGraph, v: int, h: int) -> VoltageGraph:
    """Shift voltages around vertex v by the group element h: outgoing
    non-loop edges pick up h on the left, incoming non-loop edges h^-1 on
    the right; loops and edges away from v are untouched."""
    if g.kind != "group":
        raise VoltageKindMismatch("gauge transforms need group voltages")
    grp = g.group
    hinv = grp.inv(h)
    edges = []
    for e in g.edges:
        volt = e.voltage
        if not e.is_loop():
            if e.src == v:
                volt = grp.mul(h, volt)
            elif e.dst == v:
                volt = grp.mul(volt, hinv)
        edges.append(Edge(e.id, e.src, e.dst, e.weight, volt))
    return g.with_edges(edges)
