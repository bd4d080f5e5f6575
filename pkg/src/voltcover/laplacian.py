"""Laplacian matrices: the plain weighted Laplacian, the voltage Laplacian
over a reduced group algebra, its integer-polynomial restriction, and the
block triangularization connecting cover and base.
"""

from __future__ import annotations

from .algebra import (
    FiniteGroup,
    IntPoly,
    ReducedGA,
    RingMatrix,
    reduced_regular_representation,
)
from .cover import CoverGraph, build_cover
from .errors import BlockMismatch, VoltageKindMismatch
from .graph import GROUP_KIND, VoltageGraph


def laplacian(g: VoltageGraph | CoverGraph) -> RingMatrix:
    """Weighted out-degree matrix minus weighted adjacency matrix, over
    IntPoly.  Rows sum to zero; covers are flattened in colex vertex
    order."""
    if isinstance(g, CoverGraph):
        n = g.num_vertices
        triples = g.lifted_edges()
    else:
        n = g.n
        triples = [(e.src, e.dst, e.weight) for e in g.edges]
    zero = IntPoly.zero()
    m = [[zero] * n for _ in range(n)]
    for src, dst, wid in triples:
        w = IntPoly.var(wid)
        m[src][src] = m[src][src] + w
        m[src][dst] = m[src][dst] - w
    return RingMatrix(m, zero=zero, one=IntPoly.one())


def voltage_laplacian(g: VoltageGraph) -> RingMatrix:
    """The Laplacian with adjacency entries weighted by edge voltages in
    the reduced group algebra: D - sum of nu(e) wt(e)."""
    if g.kind != GROUP_KIND:
        raise VoltageKindMismatch("voltage Laplacian needs group voltages")
    grp = g.group
    zero = ReducedGA.zero(grp)
    n = g.n
    m = [[zero] * n for _ in range(n)]
    for e in g.edges:
        w = IntPoly.var(e.weight)
        m[e.src][e.src] = m[e.src][e.src] + ReducedGA.from_poly(grp, w)
        m[e.src][e.dst] = m[e.src][e.dst] - ReducedGA.term(grp, e.voltage, w)
    return RingMatrix(m, zero=zero, one=ReducedGA.one(grp))


def restricted_voltage_laplacian(g: VoltageGraph | CoverGraph) -> RingMatrix:
    """The n(k-1) x n(k-1) integer-polynomial matrix obtained from the
    cover Laplacian by folding each sheet-1 column into the columns of the
    other sheets, with basis v_1^2..v_n^2, ..., v_1^k..v_n^k.

    Entry [(i,t),(j,r)] is the cover-Laplacian entry at (v_i^t, v_j^r)
    minus the entry at (v_i^t, v_j^1); this is exactly the lower-right
    block produced by the triangularization change of basis, and for
    regular covers with the identity sheet first it is the integer
    linearization of the voltage Laplacian.
    """
    c = g if isinstance(g, CoverGraph) else build_cover(g)
    n, k = c.n, c.k
    zero = IntPoly.zero()
    dim = n * (k - 1)
    m = [[zero] * dim for _ in range(dim)]

    def idx(i: int, sheet: int) -> int:
        # sheets 1..k-1 (0-based), i.e. every sheet but the first
        return (sheet - 1) * n + i

    for ce in c.edges:
        e = c.base.edges[ce.base_id]
        w = IntPoly.var(e.weight)
        if ce.src_sheet == 0:
            continue
        row = idx(e.src, ce.src_sheet)
        # out-degree contribution of the lift
        m[row][row] = m[row][row] + w
        if ce.dst_sheet == 0:
            # folded sheet-1 column: -(-w) = +w into every... handled below
            for r in range(1, k):
                m[row][idx(e.dst, r)] = m[row][idx(e.dst, r)] + w
        else:
            m[row][idx(e.dst, ce.dst_sheet)] = m[row][idx(e.dst, ce.dst_sheet)] - w
    return RingMatrix(m, zero=zero, one=IntPoly.one())


def restricted_via_representation(g: VoltageGraph) -> RingMatrix:
    """Blockwise image of the voltage Laplacian under the reduced regular
    representation, arranged in the same sheet-major basis order as the
    direct construction."""
    if g.kind != GROUP_KIND:
        raise VoltageKindMismatch("representation route needs group voltages")
    vl = voltage_laplacian(g)
    n = g.n
    k = g.group.order
    zero = IntPoly.zero()
    dim = n * (k - 1)
    m = [[zero] * dim for _ in range(dim)]
    for i in range(n):
        for j in range(n):
            block = reduced_regular_representation(vl[i, j])
            for t in range(k - 1):
                for r in range(k - 1):
                    m[t * n + i][r * n + j] = block[t, r]
    return RingMatrix(m, zero=zero, one=IntPoly.one())


def _fold_matrix(lt: RingMatrix, n: int, k: int) -> RingMatrix:
    """U = S * L(cover) * S^-1: add the other-sheet rows onto the sheet-1
    rows, then subtract each sheet-1 column from its other-sheet copies."""
    u = [row[:] for row in lt.entries]
    for i in range(n):
        for s in range(1, k):
            src = s * n + i
            u[i] = [a + b for a, b in zip(u[i], u[src])]
    for row in u:
        for i in range(n):
            for s in range(1, k):
                row[s * n + i] = row[s * n + i] - row[i]
    return RingMatrix(u, zero=lt.zero, one=lt.one)


def triangularize(c: CoverGraph) -> tuple[RingMatrix, RingMatrix, RingMatrix]:
    """Conjugate the cover Laplacian into block-triangular form and return
    (U, upper-left block, lower-right block).

    The upper-left block must equal the base Laplacian, the upper-right
    block must vanish, and the lower-right block must equal the restricted
    voltage Laplacian; any mismatch is an implementation fault.
    """
    n, k = c.n, c.k
    lt = laplacian(c)
    u = _fold_matrix(lt, n, k)

    base_l = laplacian(c.base)
    for i in range(n):
        for j in range(n):
            if u[i, j] != base_l[i, j]:
                raise BlockMismatch(f"upper-left block differs at ({i}, {j})")
        for j in range(n, n * k):
            if not u[i, j].is_zero():
                raise BlockMismatch(f"upper-right block nonzero at ({i}, {j})")

    rvl = restricted_voltage_laplacian(c)
    dim = n * (k - 1)
    lower = [[u[n + i, n + j] for j in range(dim)] for i in range(dim)]
    lower_m = RingMatrix(lower, zero=lt.zero, one=lt.one)
    if lower_m != rvl:
        raise BlockMismatch("lower-right block differs from direct construction")
    return u, base_l, lower_m


def restricted_from_group(group: FiniteGroup, x: ReducedGA) -> RingMatrix:
    """Convenience: the regular-representation matrix of one element."""
    if x.group != group:
        raise VoltageKindMismatch("element lies in a different group algebra")
    return reduced_regular_representation(x)
