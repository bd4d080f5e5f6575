"""Sparse multivariate polynomials over arbitrary-precision integers.

Variables are nonnegative integer ids; display names live in a VarTable so
the arithmetic core stays free of strings.  A monomial is a tuple of
(var_id, exponent) pairs, sorted by var id, with no zero exponents; the
empty tuple is the monomial 1.  Monomials are ordered graded-lex with
smaller var ids ranked higher (x0 > x1 > ...).
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import DivisionByZero, NotDivisible

Mono = tuple[tuple[int, int], ...]

ONE_MONO: Mono = ()


def mono_mul(m1: Mono, m2: Mono) -> Mono:
    if not m1:
        return m2
    if not m2:
        return m1
    exps = dict(m1)
    for v, e in m2:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items()))


def mono_deg(m: Mono) -> int:
    return sum(e for _, e in m)


def mono_div(m1: Mono, m2: Mono) -> Mono | None:
    """m1 / m2, or None if m2 does not divide m1."""
    exps = dict(m1)
    for v, e in m2:
        r = exps.get(v, 0) - e
        if r < 0:
            return None
        if r == 0:
            exps.pop(v, None)
        else:
            exps[v] = r
    return tuple(sorted(exps.items()))


def mono_key(m: Mono):
    """Sort key realizing graded-lex order (greater key = greater monomial)."""
    # At equal degree, the monomial with the larger exponent on the
    # smallest differing var id wins; (-v, e) pairs compare that way.
    return (mono_deg(m), tuple((-v, e) for v, e in m))


class IntPoly:
    """Immutable sparse polynomial with integer coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[Mono, int] | None = None):
        # terms is trusted to be canonical (no zero coefficients)
        object.__setattr__(self, "terms", terms or {})

    def __setattr__(self, name, value):
        raise AttributeError("IntPoly is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "IntPoly":
        return _ZERO

    @staticmethod
    def one() -> "IntPoly":
        return _ONE

    @staticmethod
    def const(c: int) -> "IntPoly":
        return IntPoly({ONE_MONO: c}) if c else _ZERO

    @staticmethod
    def var(v: int) -> "IntPoly":
        return IntPoly({((v, 1),): 1})

    @staticmethod
    def monomial(m: Mono, c: int = 1) -> "IntPoly":
        return IntPoly({m: c}) if c else _ZERO

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "IntPoly") -> "IntPoly":
        if not self.terms:
            return other
        if not other.terms:
            return self
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                del out[m]
        return IntPoly(out)

    def __neg__(self) -> "IntPoly":
        return IntPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        if not other.terms:
            return self
        return self + (-other)

    def __mul__(self, other: "IntPoly") -> "IntPoly":
        if not self.terms or not other.terms:
            return _ZERO
        out: dict[Mono, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    del out[m]
        return IntPoly(out)

    def scale(self, c: int) -> "IntPoly":
        if c == 0:
            return _ZERO
        if c == 1:
            return self
        return IntPoly({m: c * k for m, k in self.terms.items()})

    def __pow__(self, n: int) -> "IntPoly":
        if n < 0:
            raise ValueError("negative power")
        result = _ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        return isinstance(other, IntPoly) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # -- queries -----------------------------------------------------------

    def leading(self) -> tuple[Mono, int]:
        """Leading (monomial, coefficient) under graded-lex."""
        m = max(self.terms, key=mono_key)
        return m, self.terms[m]

    def eval_ones(self) -> int:
        """Value with every variable specialized to 1: sum of coefficients."""
        return sum(self.terms.values())

    def homogeneous_degree(self) -> int | None:
        """Common total degree of all terms, or None if degrees are mixed.

        The zero polynomial reports 0 by convention.
        """
        if not self.terms:
            return 0
        degs = {mono_deg(m) for m in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(mono_deg(m) for m in self.terms)

    def variables(self) -> set[int]:
        return {v for m in self.terms for v, _ in m}

    def coefficients(self) -> list[int]:
        return list(self.terms.values())

    # -- division ----------------------------------------------------------

    def exact_div(self, q: "IntPoly") -> "IntPoly":
        """Return r with self == q * r, or raise NotDivisible."""
        if q.is_zero():
            raise DivisionByZero("division by the zero polynomial")
        p_terms = dict(self.terms)
        lq_m, lq_c = q.leading()
        quot: dict[Mono, int] = {}
        while p_terms:
            lp_m = max(p_terms, key=mono_key)
            lp_c = p_terms[lp_m]
            m = mono_div(lp_m, lq_m)
            if m is None or lp_c % lq_c != 0:
                raise NotDivisible("no exact quotient exists")
            c = lp_c // lq_c
            quot[m] = quot.get(m, 0) + c
            # p -= c * x^m * q
            for qm, qc in q.terms.items():
                t = mono_mul(m, qm)
                s = p_terms.get(t, 0) - c * qc
                if s:
                    p_terms[t] = s
                else:
                    p_terms.pop(t, None)
        return IntPoly({m: c for m, c in quot.items() if c})

    def div_int_exact(self, k: int) -> "IntPoly":
        """Coefficient-wise division by the integer k; every coefficient
        must be divisible."""
        if k == 0:
            raise DivisionByZero("division by zero")
        out = {}
        for m, c in self.terms.items():
            if c % k != 0:
                raise NotDivisible(f"coefficient {c} not divisible by {k}")
            out[m] = c // k
        return IntPoly(out)

    # -- printing / parsing ------------------------------------------------

    def sorted_terms(self) -> list[tuple[Mono, int]]:
        """Terms in canonical (descending graded-lex) order."""
        return sorted(self.terms.items(), key=lambda t: mono_key(t[0]), reverse=True)

    def to_string(self, names: "VarTable | None" = None) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            factors = []
            if abs(c) != 1 or not m:
                factors.append(str(abs(c)))
            for v, e in m:
                name = names.name(v) if names is not None else f"x{v}"
                factors.append(name if e == 1 else f"{name}^{e}")
            text = "*".join(factors)
            if not parts:
                parts.append(text if c > 0 else f"-{text}")
            else:
                parts.append(f"+ {text}" if c > 0 else f"- {text}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"IntPoly({self.to_string()})"


_ZERO = IntPoly({})
_ONE = IntPoly({ONE_MONO: 1})


class VarTable:
    """Bidirectional map between variable ids and display names."""

    def __init__(self, names: list[str] | None = None):
        self._names: list[str] = []
        self._ids: dict[str, int] = {}
        for n in names or []:
            self.add(n)

    def add(self, name: str) -> int:
        if name in self._ids:
            raise ValueError(f"duplicate variable name {name!r}")
        vid = len(self._names)
        self._names.append(name)
        self._ids[name] = vid
        return vid

    def name(self, vid: int) -> str:
        return self._names[vid]

    def id(self, name: str) -> int:
        return self._ids[name]

    def __contains__(self, name: str) -> bool:
        return name in self._ids

    def __len__(self) -> int:
        return len(self._names)

    def names(self) -> list[str]:
        return list(self._names)


_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*^()]))")


def parse_poly(text: str, names: VarTable) -> IntPoly:
    """Parse the canonical text form: `3*a^2*c + 6*a*b - c^2`."""
    tokens: list[str] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            if text[pos:].strip() == "":
                break
            raise ValueError(f"bad polynomial syntax at {text[pos:pos + 10]!r}")
        tokens.append(m.group(0).strip())
        pos = m.end()

    result = IntPoly.zero()
    sign = 1
    coeff = 1
    mono: dict[int, int] = {}
    pending = False

    def flush():
        nonlocal coeff, mono, pending, result, sign
        if pending:
            m = tuple(sorted(mono.items()))
            result = result + IntPoly.monomial(m, sign * coeff)
        sign, coeff, mono, pending = 1, 1, {}, False

    i = 0
    while i < len(tokens):
        tok = tokens[i]
        if tok in ("+", "-"):
            flush()
            sign = 1 if tok == "+" else -1
        elif tok == "*":
            pass
        elif tok.isdigit():
            coeff *= int(tok)
            pending = True
        else:
            if tok not in names:
                raise ValueError(f"unknown variable {tok!r}")
            vid = names.id(tok)
            exp = 1
            if i + 2 < len(tokens) and tokens[i + 1] == "^" and tokens[i + 2].isdigit():
                exp = int(tokens[i + 2])
                i += 2
            mono[vid] = mono.get(vid, 0) + exp
            pending = True
        i += 1
    flush()
    return result


class FracPoly:
    """Thin helper for exact rational-coefficient polynomials, used where
    averages over instance families are required."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[Mono, Fraction] | None = None):
        self.terms = {m: c for m, c in (terms or {}).items() if c}

    @staticmethod
    def from_int(p: IntPoly) -> "FracPoly":
        return FracPoly({m: Fraction(c) for m, c in p.terms.items()})

    def __add__(self, other: "FracPoly") -> "FracPoly":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return FracPoly(out)

    def scale(self, c: Fraction) -> "FracPoly":
        return FracPoly({m: c * k for m, k in self.terms.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, FracPoly) and self.terms == other.terms

    def __repr__(self) -> str:
        return f"FracPoly({self.terms!r})"
