"""Arborescence enumeration, Matrix-Tree determinants, and the ratio
between a cover's arborescence polynomial and its base's.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import RingMatrix, det_fraction_free
from .cover import CoverGraph, build_cover
from .errors import SearchSpaceTooLarge
from .laplacian import laplacian, restricted_voltage_laplacian
from .poly import IntPoly
from .graph import VoltageGraph

ENUM_VERTEX_BOUND = 12
ENUM_CHOICE_BOUND = 10**6


@dataclass(frozen=True)
class Arborescence:
    root: int
    edges: tuple[int, ...]  # one outgoing edge id per non-root vertex


def _adjacency(g: VoltageGraph | CoverGraph) -> tuple[int, list[list[tuple[int, int, int]]]]:
    """(vertex count, per-vertex outgoing (edge id, target, weight var))."""
    if isinstance(g, CoverGraph):
        n = g.num_vertices
        out: list[list[tuple[int, int, int]]] = [[] for _ in range(n)]
        for j, (src, dst, wid) in enumerate(g.lifted_edges()):
            out[src].append((j, dst, wid))
    else:
        n = g.n
        out = [[] for _ in range(n)]
        for e in g.edges:
            out[e.src].append((e.id, e.dst, e.weight))
    return n, out


def enumerate_arborescences(
    g: VoltageGraph | CoverGraph,
    root: int,
    vertex_bound: int = ENUM_VERTEX_BOUND,
    choice_bound: int = ENUM_CHOICE_BOUND,
) -> list[Arborescence]:
    """Exhaustively pick one outgoing edge per non-root vertex and keep the
    choices whose pointer-following reaches the root from everywhere."""
    n, out = _adjacency(g)
    if n > vertex_bound:
        raise SearchSpaceTooLarge(f"{n} vertices exceed the enumeration bound")
    non_root = [v for v in range(n) if v != root]
    total = 1
    for v in non_root:
        total *= len(out[v])
        if total > choice_bound:
            raise SearchSpaceTooLarge("too many out-edge combinations")
    if any(not out[v] for v in non_root):
        return []

    result = []
    choice = [0] * len(non_root)
    while True:
        parent = {}
        for pos, v in enumerate(non_root):
            _, dst, _ = out[v][choice[pos]]
            parent[v] = dst
        ok = True
        for v in non_root:
            seen = set()
            cur = v
            while cur != root:
                if cur in seen:
                    ok = False
                    break
                seen.add(cur)
                cur = parent[cur]
            if not ok:
                break
        if ok:
            edges = tuple(out[v][choice[pos]][0] for pos, v in enumerate(non_root))
            result.append(Arborescence(root, edges))
        # advance the mixed-radix counter
        pos = 0
        while pos < len(non_root):
            choice[pos] += 1
            if choice[pos] < len(out[non_root[pos]]):
                break
            choice[pos] = 0
            pos += 1
        else:
            break
        if not non_root:
            break
    if not non_root:
        return [Arborescence(root, ())]
    return result


def _brute_force_poly(
    g: VoltageGraph | CoverGraph, root: int, choice_bound: int = ENUM_CHOICE_BOUND
) -> IntPoly:
    """Sum of arborescence weights by direct enumeration, without storing
    the arborescences."""
    n, out = _adjacency(g)
    non_root = [v for v in range(n) if v != root]
    if not non_root:
        return IntPoly.one()
    total = 1
    for v in non_root:
        total *= len(out[v])
        if total > choice_bound:
            raise SearchSpaceTooLarge("too many out-edge combinations")
    if any(not out[v] for v in non_root):
        return IntPoly.zero()

    pos_of = {v: i for i, v in enumerate(non_root)}
    acc: dict = {}
    choice = [0] * len(non_root)
    while True:
        parent = [out[v][choice[i]][1] for i, v in enumerate(non_root)]
        ok = True
        for v in non_root:
            seen = set()
            cur = v
            while cur != root:
                if cur in seen:
                    ok = False
                    break
                seen.add(cur)
                cur = parent[pos_of[cur]]
            if not ok:
                break
        if ok:
            mono: dict[int, int] = {}
            for i, v in enumerate(non_root):
                wid = out[v][choice[i]][2]
                mono[wid] = mono.get(wid, 0) + 1
            key = tuple(sorted(mono.items()))
            acc[key] = acc.get(key, 0) + 1
        pos = 0
        while pos < len(non_root):
            choice[pos] += 1
            if choice[pos] < len(out[non_root[pos]]):
                break
            choice[pos] = 0
            pos += 1
        else:
            break
    return IntPoly({m: c for m, c in acc.items() if c})


def arborescence_polynomial(
    g: VoltageGraph | CoverGraph, root: int, method: str = "matrix-tree"
) -> IntPoly:
    """Sum of arborescence weights rooted at `root`.

    method 'matrix-tree' takes the determinant of the Laplacian with the
    root row and column removed; 'brute-force' enumerates arborescences.
    """
    if method == "matrix-tree":
        return det_fraction_free(laplacian(g).minor(root, root))
    if method == "brute-force":
        return _brute_force_poly(g, root)
    raise ValueError(f"unknown method {method!r}")


def _cover_arborescence_poly(c: CoverGraph, root: int, method: str) -> IntPoly:
    if method == "brute-force":
        return _brute_force_poly(c, root)
    if method == "auto":
        _, out = _adjacency(c)
        total = 1
        for v in range(c.num_vertices):
            if v != root:
                total *= max(len(out[v]), 1)
        if total <= 200_000:
            return _brute_force_poly(c, root)
    return det_fraction_free(laplacian(c).minor(root, root))


@dataclass
class RatioReport:
    vertex: int
    k: int
    a_base: IntPoly
    a_cover: IntPoly
    det_restricted: IntPoly
    rhs: IntPoly  # det / k
    ratio: IntPoly | None  # a_cover / a_base when a_base != 0
    theorem_holds: bool

    def to_dict(self, names=None) -> dict:
        return {
            "vertex": self.vertex,
            "k": self.k,
            "a_base": self.a_base.to_string(names),
            "a_cover": self.a_cover.to_string(names),
            "det_restricted": self.det_restricted.to_string(names),
            "rhs": self.rhs.to_string(names),
            "ratio": None if self.ratio is None else self.ratio.to_string(names),
            "theorem_holds": self.theorem_holds,
        }


def ratio_report(
    g: VoltageGraph, v: int, cover_method: str = "matrix-tree"
) -> RatioReport:
    """Compare k * A_(v,sheet 1)(cover) with A_v(base) * det of the
    restricted voltage Laplacian; the two must agree identically.

    The right-hand side polynomial (det / k) requires every determinant
    coefficient to be divisible by k, which the main identity guarantees;
    a failed division aborts loudly.
    """
    c = build_cover(g)
    a_base = arborescence_polynomial(g, v, method="matrix-tree")
    a_cover = _cover_arborescence_poly(c, c.vertex_index(v, 0), cover_method)
    det_r = det_fraction_free(restricted_voltage_laplacian(c))
    rhs = det_r.div_int_exact(g.k)
    holds = a_cover.scale(g.k) == a_base * det_r
    ratio = None
    if not a_base.is_zero():
        ratio = a_cover.exact_div(a_base)
    return RatioReport(
        vertex=v,
        k=g.k,
        a_base=a_base,
        a_cover=a_cover,
        det_restricted=det_r,
        rhs=rhs,
        ratio=ratio,
        theorem_holds=holds,
    )


@dataclass
class InvarianceReport:
    ratios: dict[tuple[int, int], IntPoly] = field(default_factory=dict)
    strongly_connected: bool = True
    simple: bool = True
    all_equal: bool = True

    def to_dict(self, names=None) -> dict:
        return {
            "ratios": {
                f"v{v}^s{s + 1}": p.to_string(names)
                for (v, s), p in self.ratios.items()
            },
            "strongly_connected": self.strongly_connected,
            "simple": self.simple,
            "all_equal": self.all_equal,
        }


def invariance_report(g: VoltageGraph, cover_method: str = "auto") -> InvarianceReport:
    """The ratio A_lift(cover) / A_v(base) for every vertex and every lift.

    When the base is strongly connected and simple the ratios must all
    coincide; otherwise the report is still produced but equality is not
    asserted.
    """
    rep = InvarianceReport(
        strongly_connected=g.is_strongly_connected(), simple=g.is_simple()
    )
    c = build_cover(g)
    for v in range(g.n):
        a_base = arborescence_polynomial(g, v, method="matrix-tree")
        if a_base.is_zero():
            rep.all_equal = False
            continue
        for s in range(g.k):
            a_cov = _cover_arborescence_poly(c, c.vertex_index(v, s), cover_method)
            rep.ratios[(v, s)] = a_cov.exact_div(a_base)
    values = list(rep.ratios.values())
    if values and any(p != values[0] for p in values[1:]):
        rep.all_equal = False
    return rep
