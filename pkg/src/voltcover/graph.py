"""Weighted directed multigraphs with indeterminate edge weights and
per-edge voltages, plus JSON parsing and serialization.

Each edge owns one polynomial variable (its weight); the graph's VarTable
maps those variable ids back to the user-supplied weight names.  Voltages
are either elements of a finite group or permutations on sheet labels
(stored 0-based internally, one-line 1-based in JSON).
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .algebra import FiniteGroup
from .errors import (
    DanglingVertexIndex,
    DuplicateWeightName,
    SchemaError,
    VoltageKindMismatch,
)
from .poly import IntPoly, VarTable

GROUP_KIND = "group"
PERM_KIND = "permutation"


@dataclass(frozen=True)
class Edge:
    id: int
    src: int
    dst: int
    weight: int  # variable id
    voltage: int | tuple[int, ...]  # group element index or 0-based one-line perm

    def is_loop(self) -> bool:
        return self.src == self.dst


class VoltageGraph:
    """Directed multigraph with one indeterminate per edge and a voltage
    context shared by all edges."""

    def __init__(
        self,
        labels: list[str],
        edges: list[Edge],
        kind: str,
        group: FiniteGroup | None = None,
        sheets: int | None = None,
        weights: VarTable | None = None,
        group_spec: dict | None = None,
    ):
        self.labels = list(labels)
        self.edges = list(edges)
        self.kind = kind
        self.group = group
        self.group_spec = group_spec
        if kind == GROUP_KIND:
            if group is None:
                raise ValueError("group voltages need a group")
            self.k = group.order
        elif kind == PERM_KIND:
            if sheets is None:
                raise ValueError("permutation voltages need a sheet count")
            self.k = sheets
        else:
            raise ValueError(f"unknown voltage kind {kind!r}")
        self.weights = weights if weights is not None else VarTable()
        self._out: list[list[Edge]] = [[] for _ in self.labels]
        self._in: list[list[Edge]] = [[] for _ in self.labels]
        for e in self.edges:
            self._out[e.src].append(e)
            self._in[e.dst].append(e)

    @property
    def n(self) -> int:
        return len(self.labels)

    def out_edges(self, v: int) -> list[Edge]:
        return list(self._out[v])

    def in_edges(self, v: int) -> list[Edge]:
        return list(self._in[v])

    def weight_poly(self, e: Edge) -> IntPoly:
        return IntPoly.var(e.weight)

    def edge_permutation(self, e: Edge) -> tuple[int, ...]:
        """The sheet permutation an edge lifts along: the stored permutation,
        or for group voltages the left-regular action x -> g*x."""
        if self.kind == PERM_KIND:
            return e.voltage  # type: ignore[return-value]
        return self.group.left_action(e.voltage)  # type: ignore[arg-type]

    def as_permutation_graph(self) -> "VoltageGraph":
        """Explicit conversion of group voltages to sheet permutations via
        the left-regular action."""
        if self.kind == PERM_KIND:
            return self
        edges = [
            Edge(e.id, e.src, e.dst, e.weight, self.group.left_action(e.voltage))
            for e in self.edges
        ]
        return VoltageGraph(
            self.labels, edges, PERM_KIND, sheets=self.k, weights=self.weights
        )

    def with_edges(self, edges: list[Edge]) -> "VoltageGraph":
        """Same vertices / context / weights, different edge list (ids are
        reassigned positionally)."""
        renumbered = [
            Edge(i, e.src, e.dst, e.weight, e.voltage) for i, e in enumerate(edges)
        ]
        return VoltageGraph(
            self.labels,
            renumbered,
            self.kind,
            group=self.group,
            sheets=self.k,
            weights=self.weights,
            group_spec=self.group_spec,
        )

    def is_simple(self) -> bool:
        """No loops and no parallel edges (same source and target)."""
        seen = set()
        for e in self.edges:
            if e.is_loop() or (e.src, e.dst) in seen:
                return False
            seen.add((e.src, e.dst))
        return True

    def is_strongly_connected(self) -> bool:
        if self.n == 0:
            return False
        return _reaches_all(self, 0, forward=True) and _reaches_all(
            self, 0, forward=False
        )


def _reaches_all(g: VoltageGraph, start: int, forward: bool) -> bool:
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        nbrs = (e.dst for e in g._out[v]) if forward else (e.src for e in g._in[v])
        for w in nbrs:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == g.n


def group_from_spec(spec: dict) -> FiniteGroup:
    kind = spec.get("type")
    if kind == "cyclic":
        return FiniteGroup.cyclic(int(spec["order"]))
    if kind == "symmetric":
        return FiniteGroup.symmetric(int(spec["degree"]))
    if kind == "table":
        return FiniteGroup(spec["mul"])
    raise SchemaError(f"unknown group spec {spec!r}")


def parse_graph(document: str | dict) -> VoltageGraph:
    """Parse the JSON graph schema; see serialize_graph for the format."""
    doc = json.loads(document) if isinstance(document, str) else document
    if not isinstance(doc, dict):
        raise SchemaError("graph document must be a JSON object")
    try:
        labels = list(doc["vertices"])
        voltage_spec = doc["voltage"]
        edge_docs = doc["edges"]
    except KeyError as exc:
        raise SchemaError(f"missing key {exc}") from exc
    if not labels:
        raise SchemaError("graph needs at least one vertex")

    if voltage_spec.get("type") == "permutation":
        kind = PERM_KIND
        k = int(voltage_spec["sheets"])
        group = None
        group_spec = None
    else:
        kind = GROUP_KIND
        group = group_from_spec(voltage_spec)
        group_spec = voltage_spec
        k = group.order

    weights = VarTable()
    edges: list[Edge] = []
    n = len(labels)
    for i, ed in enumerate(edge_docs):
        try:
            src, dst, wname, volt = ed["src"], ed["dst"], ed["weight"], ed["voltage"]
        except KeyError as exc:
            raise SchemaError(f"edge {i} missing key {exc}") from exc
        if not (0 <= src < n and 0 <= dst < n):
            raise DanglingVertexIndex(f"edge {i} endpoint out of range")
        if wname in weights:
            raise DuplicateWeightName(f"weight name {wname!r} used twice")
        wid = weights.add(wname)
        if kind == GROUP_KIND:
            if not isinstance(volt, int) or not 0 <= volt < group.order:
                raise VoltageKindMismatch(
                    f"edge {i} voltage must be a group element index"
                )
            voltage: int | tuple[int, ...] = volt
        else:
            if not isinstance(volt, list) or sorted(volt) != list(range(1, k + 1)):
                raise VoltageKindMismatch(
                    f"edge {i} voltage must be one-line notation on 1..{k}"
                )
            voltage = tuple(x - 1 for x in volt)
        edges.append(Edge(i, src, dst, wid, voltage))

    return VoltageGraph(
        labels, edges, kind, group=group, sheets=k, weights=weights,
        group_spec=group_spec,
    )


def serialize_graph(g: VoltageGraph) -> dict:
    if g.kind == GROUP_KIND:
        voltage_spec = g.group_spec or {"type": "table", "mul": g.group.table}
    else:
        voltage_spec = {"type": "permutation", "sheets": g.k}
    return {
        "vertices": list(g.labels),
        "voltage": voltage_spec,
        "edges": [
            {
                "src": e.src,
                "dst": e.dst,
                "weight": g.weights.name(e.weight),
                "voltage": (
                    e.voltage
                    if g.kind == GROUP_KIND
                    else [x + 1 for x in e.voltage]
                ),
            }
            for e in g.edges
        ],
    }


def build_graph(
    labels: list[str],
    edge_data: list[tuple[int, int, str, int | tuple[int, ...]]],
    group: FiniteGroup | None = None,
    sheets: int | None = None,
    group_spec: dict | None = None,
) -> VoltageGraph:
    """Programmatic constructor: edge_data rows are (src, dst, weight name,
    voltage), with permutation voltages given 0-based."""
    weights = VarTable()
    edges = []
    for i, (src, dst, wname, volt) in enumerate(edge_data):
        if wname in weights:
            raise DuplicateWeightName(f"weight name {wname!r} used twice")
        edges.append(Edge(i, src, dst, weights.add(wname), volt))
    if group is not None:
        return VoltageGraph(
            labels, edges, GROUP_KIND, group=group, weights=weights,
            group_spec=group_spec,
        )
    return VoltageGraph(labels, edges, PERM_KIND, sheets=sheets, weights=weights)
