"""Finite groups, reduced group algebras, cyclotomic integers, and exact
matrices with fraction-free determinants.

Group elements are integers 0..|G|-1 with 0 the identity.  A reduced
group-algebra value keeps a polynomial coefficient per element in the
canonical form whose identity coefficient is zero (the all-ones element is
zero in the quotient, so any constant shift of all coefficients is free).
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from .errors import GroupMismatch, NonAbelianGroup, NormNotRational
from .poly import IntPoly


class FiniteGroup:
    """A finite group given by a multiplication table.

    table[a][b] is the product a*b.  Element 0 must be the identity.
    """

    def __init__(self, table: list[list[int]], name: str = "", check: bool = True):
        self.table = [list(row) for row in table]
        self.order = len(table)
        self.name = name or f"group{self.order}"
        if check:
            self._check_axioms()
        self._inverse = [0] * self.order
        for a in range(self.order):
            for b in range(self.order):
                if self.table[a][b] == 0:
                    self._inverse[a] = b

    def _check_axioms(self):
        n = self.order
        if n == 0:
            raise ValueError("empty multiplication table")
        rng = range(n)
        for row in self.table:
            if len(row) != n or any(x not in rng for x in row):
                raise ValueError("malformed multiplication table")
        for a in rng:
            if self.table[0][a] != a or self.table[a][0] != a:
                raise ValueError("element 0 is not the identity")
        for a in rng:
            if sorted(self.table[a]) != list(rng):
                raise ValueError("multiplication table row is not a bijection")
            if sorted(self.table[b][a] for b in rng) != list(rng):
                raise ValueError("multiplication table column is not a bijection")
        for a in rng:
            for b in rng:
                ab = self.table[a][b]
                for c in rng:
                    if self.table[ab][c] != self.table[a][self.table[b][c]]:
                        raise ValueError("multiplication table is not associative")

    @staticmethod
    def cyclic(n: int) -> "FiniteGroup":
        table = [[(a + b) % n for b in range(n)] for a in range(n)]
        return FiniteGroup(table, name=f"cyclic{n}", check=False)

    @staticmethod
    def symmetric(degree: int) -> "FiniteGroup":
        """Symmetric group on `degree` letters; permutations enumerated in
        lexicographic one-line order, so the identity comes first."""
        perms = list(itertools.permutations(range(degree)))
        index = {p: i for i, p in enumerate(perms)}
        # product a*b acts as: first apply b, then a (left action)
        table = [
            [index[tuple(a[b[i]] for i in range(degree))] for b in perms]
            for a in perms
        ]
        g = FiniteGroup(table, name=f"symmetric{degree}", check=False)
        g.perms = perms
        return g

    @staticmethod
    def product(g1: "FiniteGroup", g2: "FiniteGroup") -> "FiniteGroup":
        n1, n2 = g1.order, g2.order
        # pair (a, b) -> a * n2 + b keeps (0, 0) at index 0
        table = [
            [
                g1.table[a1][b1] * n2 + g2.table[a2][b2]
                for b1 in range(n1)
                for b2 in range(n2)
            ]
            for a1 in range(n1)
            for a2 in range(n2)
        ]
        return FiniteGroup(table, name=f"{g1.name}x{g2.name}", check=False)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self._inverse[a]

    def is_abelian(self) -> bool:
        n = self.order
        return all(
            self.table[a][b] == self.table[b][a]
            for a in range(n)
            for b in range(a + 1, n)
        )

    def left_action(self, g: int) -> tuple[int, ...]:
        """The permutation x -> g*x on element indices."""
        return tuple(self.table[g][x] for x in range(self.order))

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteGroup) and self.table == other.table

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name}, order={self.order})"


class ReducedGA:
    """Element of the reduced group algebra: Z[G][E] modulo the all-ones
    group-algebra element, in identity-coefficient-zero canonical form."""

    __slots__ = ("group", "coeffs")

    def __init__(self, group: FiniteGroup, coeffs: list[IntPoly], canonical: bool = False):
        if len(coeffs) != group.order:
            raise ValueError("coefficient vector length must equal group order")
        self.group = group
        if canonical:
            self.coeffs = list(coeffs)
        else:
            c0 = coeffs[0]
            self.coeffs = [c - c0 for c in coeffs]

    @staticmethod
    def zero(group: FiniteGroup) -> "ReducedGA":
        return ReducedGA(group, [IntPoly.zero()] * group.order, canonical=True)

    @staticmethod
    def from_poly(group: FiniteGroup, p: IntPoly) -> "ReducedGA":
        """The 'rational' element p (coefficient on the identity)."""
        coeffs = [IntPoly.zero()] * group.order
        coeffs[0] = p
        return ReducedGA(group, coeffs)

    @staticmethod
    def term(group: FiniteGroup, g: int, p: IntPoly) -> "ReducedGA":
        """p times the group element g."""
        coeffs = [IntPoly.zero()] * group.order
        coeffs[g] = p
        return ReducedGA(group, coeffs)

    @staticmethod
    def one(group: FiniteGroup) -> "ReducedGA":
        return ReducedGA.from_poly(group, IntPoly.one())

    def _require_same_group(self, other: "ReducedGA"):
        if self.group is not other.group and self.group != other.group:
            raise GroupMismatch("operands lie in different group algebras")

    def __add__(self, other: "ReducedGA") -> "ReducedGA":
        self._require_same_group(other)
        return ReducedGA(
            self.group,
            [a + b for a, b in zip(self.coeffs, other.coeffs)],
            canonical=True,
        )

    def __neg__(self) -> "ReducedGA":
        return ReducedGA(self.group, [-a for a in self.coeffs], canonical=True)

    def __sub__(self, other: "ReducedGA") -> "ReducedGA":
        self._require_same_group(other)
        return ReducedGA(
            self.group,
            [a - b for a, b in zip(self.coeffs, other.coeffs)],
            canonical=True,
        )

    def __mul__(self, other: "ReducedGA") -> "ReducedGA":
        self._require_same_group(other)
        g = self.group
        out = [IntPoly.zero()] * g.order
        for a, ca in enumerate(self.coeffs):
            if ca.is_zero():
                continue
            for b, cb in enumerate(other.coeffs):
                if cb.is_zero():
                    continue
                ab = g.table[a][b]
                out[ab] = out[ab] + ca * cb
        return ReducedGA(g, out)

    def scale(self, p: IntPoly) -> "ReducedGA":
        return ReducedGA(self.group, [c * p for c in self.coeffs], canonical=True)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ReducedGA)
            and self.group == other.group
            and self.coeffs == other.coeffs
        )

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def to_string(self, names=None) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for g, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            parts.append(f"({c.to_string(names)})*g{g}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"ReducedGA({self.to_string()})"


def reduced_regular_representation(x: ReducedGA) -> "RingMatrix":
    """Matrix of left multiplication by x on the canonical basis of the
    reduced group algebra (non-identity elements), over IntPoly.

    Row t, column r hold the coefficient of basis element r in x * t.
    This matches the sheet action used to lift edges, so applying it
    blockwise to the voltage Laplacian reproduces the restricted matrix
    even for non-abelian voltage groups.
    """
    g = x.group
    n = g.order - 1
    rows = []
    for t in range(1, g.order):
        prod = x * ReducedGA.term(g, t, IntPoly.one())
        rows.append(prod.coeffs[1:])
    return RingMatrix(rows, zero=IntPoly.zero(), one=IntPoly.one())


class Cyclotomic:
    """Element of Z[zeta_p][E] for prime p, over the basis 1, zeta, ...,
    zeta^(p-2).  Exponents >= p-1 reduce via 1 + zeta + ... + zeta^(p-1) = 0.
    """

    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs: list[IntPoly]):
        if len(coeffs) != p - 1:
            raise ValueError("need p-1 coefficients")
        self.p = p
        self.coeffs = list(coeffs)

    @staticmethod
    def zero(p: int) -> "Cyclotomic":
        return Cyclotomic(p, [IntPoly.zero()] * (p - 1))

    @staticmethod
    def from_poly(p: int, q: IntPoly) -> "Cyclotomic":
        coeffs = [IntPoly.zero()] * (p - 1)
        coeffs[0] = q
        return Cyclotomic(p, coeffs)

    @staticmethod
    def one(p: int) -> "Cyclotomic":
        return Cyclotomic.from_poly(p, IntPoly.one())

    @staticmethod
    def from_exponents(p: int, raw: dict[int, IntPoly]) -> "Cyclotomic":
        """Build from coefficients on zeta^i for arbitrary i, reducing."""
        coeffs = [IntPoly.zero()] * (p - 1)
        for i, c in raw.items():
            i %= p
            if i < p - 1:
                coeffs[i] = coeffs[i] + c
            else:
                # zeta^(p-1) = -(1 + zeta + ... + zeta^(p-2))
                for j in range(p - 1):
                    coeffs[j] = coeffs[j] - c
        return Cyclotomic(p, coeffs)

    @staticmethod
    def from_reduced_ga(x: ReducedGA) -> "Cyclotomic":
        """Identify the reduced group algebra of a prime cyclic group with
        Z[zeta_p][E], sending the generator (element 1) to zeta_p."""
        p = x.group.order
        if x.group.table != FiniteGroup.cyclic(p).table:
            raise GroupMismatch("group is not cyclic in canonical form")
        return Cyclotomic.from_exponents(p, dict(enumerate(x.coeffs)))

    def _require_same(self, other: "Cyclotomic"):
        if self.p != other.p:
            raise GroupMismatch("cyclotomic orders differ")

    def __add__(self, other: "Cyclotomic") -> "Cyclotomic":
        self._require_same(other)
        return Cyclotomic(self.p, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> "Cyclotomic":
        return Cyclotomic(self.p, [-a for a in self.coeffs])

    def __sub__(self, other: "Cyclotomic") -> "Cyclotomic":
        self._require_same(other)
        return Cyclotomic(self.p, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __mul__(self, other: "Cyclotomic") -> "Cyclotomic":
        self._require_same(other)
        raw: dict[int, IntPoly] = {}
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if b.is_zero():
                    continue
                k = i + j
                raw[k] = raw.get(k, IntPoly.zero()) + a * b
        return Cyclotomic.from_exponents(self.p, raw)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Cyclotomic)
            and self.p == other.p
            and self.coeffs == other.coeffs
        )

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c.is_zero() for c in self.coeffs[1:])

    def galois_conjugate(self, i: int) -> "Cyclotomic":
        """Transport along zeta -> zeta^i, for 1 <= i <= p-1."""
        if not 1 <= i <= self.p - 1:
            raise IndexError(f"conjugation index {i} out of range for p={self.p}")
        raw = {(j * i) % self.p: c for j, c in enumerate(self.coeffs)}
        return Cyclotomic.from_exponents(self.p, raw)

    def field_norm(self) -> IntPoly:
        """Product of all Galois conjugates; the result must be rational."""
        prod = Cyclotomic.one(self.p)
        for i in range(1, self.p):
            prod = prod * self.galois_conjugate(i)
        if not prod.is_rational():
            raise NormNotRational("norm product has irrational components")
        return prod.coeffs[0]

    def exact_div(self, other: "Cyclotomic") -> "Cyclotomic":
        """Exact division: multiply by the product of the other conjugates
        of the divisor, then divide coefficient-wise by its integer-poly
        norm."""
        self._require_same(other)
        cofactor = Cyclotomic.one(self.p)
        for i in range(2, self.p):
            cofactor = cofactor * other.galois_conjugate(i)
        norm = (other * cofactor).coeffs[0]  # rational by construction
        num = self * cofactor
        return Cyclotomic(self.p, [c.exact_div(norm) for c in num.coeffs])

    def to_string(self, names=None) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            basis = "1" if i == 0 else ("z" if i == 1 else f"z^{i}")
            parts.append(f"({c.to_string(names)})*{basis}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"Cyclotomic(p={self.p}, {self.to_string()})"


class RingMatrix:
    """Dense square matrix over one exact commutative-ring element type.

    Entries must support +, -, * and is_zero(); `zero` and `one` supply the
    ring constants, and exact_div on entries enables Bareiss elimination.
    """

    def __init__(self, entries, zero, one):
        self.entries = [list(row) for row in entries]
        self.n = len(self.entries)
        for row in self.entries:
            if len(row) != self.n:
                raise ValueError("matrix must be square")
        self.zero = zero
        self.one = one

    @staticmethod
    def identity(n: int, zero, one) -> "RingMatrix":
        return RingMatrix(
            [[one if i == j else zero for j in range(n)] for i in range(n)],
            zero,
            one,
        )

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other) -> bool:
        return isinstance(other, RingMatrix) and self.entries == other.entries

    def minor(self, i: int, j: int) -> "RingMatrix":
        """Submatrix with row i and column j removed."""
        if not (0 <= i < self.n and 0 <= j < self.n):
            raise IndexError(f"minor index ({i}, {j}) out of range")
        rows = [
            [e for jj, e in enumerate(row) if jj != j]
            for ii, row in enumerate(self.entries)
            if ii != i
        ]
        return RingMatrix(rows, self.zero, self.one)

    def det_bareiss(self):
        """Fraction-free determinant; entry divisions are exact over an
        integral domain."""
        n = self.n
        if n == 0:
            return self.one
        m = [row[:] for row in self.entries]
        sign = 1
        prev = self.one
        for r in range(n - 1):
            # first nonzero pivot in column r
            pivot_row = next(
                (i for i in range(r, n) if not m[i][r].is_zero()), None
            )
            if pivot_row is None:
                return self.zero
            if pivot_row != r:
                m[r], m[pivot_row] = m[pivot_row], m[r]
                sign = -sign
            for i in range(r + 1, n):
                for j in range(r + 1, n):
                    num = m[r][r] * m[i][j] - m[i][r] * m[r][j]
                    m[i][j] = num.exact_div(prev)
                m[i][r] = self.zero
            prev = m[r][r]
        d = m[n - 1][n - 1]
        if sign < 0:
            d = self.zero - d
        return d

    def det_cofactor(self):
        """Naive determinant by expansion along the first column of each
        column subset; works over any commutative ring."""
        n = self.n
        if n == 0:
            return self.one
        entries = self.entries
        zero = self.zero

        @lru_cache(maxsize=None)
        def sub_det(row: int, cols: tuple[int, ...]):
            if row == n:
                return self.one
            acc = zero
            for idx, c in enumerate(cols):
                e = entries[row][c]
                if e.is_zero():
                    continue
                rest = cols[:idx] + cols[idx + 1:]
                term = e * sub_det(row + 1, rest)
                acc = acc + term if idx % 2 == 0 else acc - term
            return acc

        result = sub_det(0, tuple(range(n)))
        sub_det.cache_clear()
        return result

    def map_entries(self, fn, zero, one) -> "RingMatrix":
        return RingMatrix(
            [[fn(e) for e in row] for row in self.entries], zero, one
        )

    def to_strings(self, names=None) -> list[list[str]]:
        return [[e.to_string(names) for e in row] for row in self.entries]

    def __repr__(self) -> str:
        return f"RingMatrix(n={self.n})"


def det_fraction_free(m: RingMatrix):
    """Exact determinant over an integral domain with exact division."""
    return m.det_bareiss()


def det_group_algebra(m: RingMatrix) -> ReducedGA:
    """Cofactor-expansion determinant over a reduced group algebra; the
    group must be abelian for the determinant to be well-defined."""
    if m.n > 0:
        group = m.entries[0][0].group
        if not group.is_abelian():
            raise NonAbelianGroup("determinant over a non-abelian group algebra")
    return m.det_cofactor()
