"""Exact arithmetic in the parameter ring Z[t_a^{+-1/2} | a in Z].

Exponents are stored doubled, so every stored value is an integer and the
semantic exponent is ``value / 2``.  An exponent sequence may carry an
eventually periodic tail towards +infinity, which is how the infinite
products attached to the quantized Cartan matrix are represented.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping


class DivergentSpecialization(ValueError):
    pass


def _min_period(pat: tuple) -> tuple:
    n = len(pat)
    for d in range(1, n + 1):
        if n % d == 0 and all(pat[i] == pat[i % d] for i in range(n)):
            return pat[:d]
    return pat


def fmt_half(v: int) -> str:
    """Render a doubled value as ``n`` or ``n/2``."""
    if v % 2 == 0:
        return str(v // 2)
    return f"{v}/2"


class ExpSeq:
    """Doubled exponent sequence a -> e_a with finite support below and an
    optional periodic tail.

    ``finite`` holds sorted ``(a, value)`` pairs, all below the tail start.
    ``tail`` is ``None`` or ``(start, pattern)``; for ``a >= start`` the value
    is ``pattern[(a - start) % len(pattern)]``.  Instances are always in
    canonical form (minimal period, minimal start, no zero entries), so
    structural equality is equality of sequences.
    """

    __slots__ = ("finite", "tail", "_hash")

    def __init__(self, finite: tuple = (), tail: tuple | None = None):
        self.finite = finite
        self.tail = tail
        self._hash = hash((finite, tail))

    @classmethod
    def make(cls, values: Mapping[int, int] | None = None, tail=None) -> "ExpSeq":
        vals = {a: v for a, v in (values or {}).items() if v}
        if tail is not None:
            start, pat = tail
            pat = _min_period(tuple(pat))
            if any(a >= start for a in vals):
                raise ValueError("explicit entries must lie below the tail start")
            if not any(pat):
                tail = None
            else:
                # slide the tail start down while the explicit part agrees
                while vals.get(start - 1, 0) == pat[-1]:
                    vals.pop(start - 1, None)
                    start -= 1
                    pat = (pat[-1],) + pat[:-1]
                tail = (start, pat)
        return cls(tuple(sorted(vals.items())), tail)

    @classmethod
    def single(cls, a: int, v: int) -> "ExpSeq":
        return cls(((a, v),), None) if v else ZERO_SEQ

    # public views
    @property
    def a_min(self) -> int:
        if self.finite:
            return self.finite[0][0]
        if self.tail is not None:
            start, pat = self.tail
            return start + next(i for i, v in enumerate(pat) if v)
        return 0

    @property
    def a_tail(self) -> int | None:
        return None if self.tail is None else self.tail[0]

    @property
    def period(self) -> int | None:
        return None if self.tail is None else len(self.tail[1])

    def is_zero(self) -> bool:
        return not self.finite and self.tail is None

    def is_finite(self) -> bool:
        return self.tail is None

    def value(self, a: int) -> int:
        if self.tail is not None and a >= self.tail[0]:
            start, pat = self.tail
            return pat[(a - start) % len(pat)]
        for b, v in self.finite:
            if b == a:
                return v
        return 0

    def as_dict(self) -> dict:
        return dict(self.finite)

    def support_window(self) -> range:
        """Indices that determine the sequence: explicit part plus one tail period."""
        lo = self.finite[0][0] if self.finite else (self.tail[0] if self.tail else 0)
        if self.tail is not None:
            hi = self.tail[0] + len(self.tail[1])
        else:
            hi = self.finite[-1][0] + 1 if self.finite else lo
        return range(lo, hi)

    def __eq__(self, other):
        return isinstance(other, ExpSeq) and self.finite == other.finite and self.tail == other.tail

    def __hash__(self):
        return self._hash

    def sort_key(self):
        return (self.finite, self.tail or ())

    def __add__(self, other: "ExpSeq") -> "ExpSeq":
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self.tail is None and other.tail is None:
            vals = dict(self.finite)
            for a, v in other.finite:
                vals[a] = vals.get(a, 0) + v
            return ExpSeq(tuple(sorted((a, v) for a, v in vals.items() if v)), None)
        starts, periods = [], []
        for s in (self, other):
            if s.tail is not None:
                starts.append(s.tail[0])
                periods.append(len(s.tail[1]))
            elif s.finite:
                starts.append(s.finite[-1][0] + 1)
        start = max(starts)
        P = math.lcm(*periods)
        vals: dict = {}
        for s in (self, other):
            for a, v in s.finite:
                vals[a] = vals.get(a, 0) + v
            if s.tail is not None:
                for a in range(s.tail[0], start):
                    vals[a] = vals.get(a, 0) + s.value(a)
        pat = tuple(self.value(start + j) + other.value(start + j) for j in range(P))
        return ExpSeq.make(vals, (start, pat))

    def __neg__(self) -> "ExpSeq":
        return self.scale(-1)

    def __sub__(self, other: "ExpSeq") -> "ExpSeq":
        return self + other.scale(-1)

    def scale(self, k: int) -> "ExpSeq":
        if k == 0:
            return ZERO_SEQ
        if k == 1:
            return self
        fin = tuple((a, k * v) for a, v in self.finite)
        tail = None if self.tail is None else (self.tail[0], tuple(k * v for v in self.tail[1]))
        return ExpSeq(fin, tail)

    def halve(self) -> "ExpSeq":
        """Exact division of every stored value by 2."""
        vals = [v for _, v in self.finite] + list(self.tail[1] if self.tail else ())
        if any(v % 2 for v in vals):
            raise ValueError("odd entry, cannot halve")
        fin = tuple((a, v // 2) for a, v in self.finite)
        tail = None if self.tail is None else (self.tail[0], tuple(v // 2 for v in self.tail[1]))
        return ExpSeq.make(dict(fin), tail)

    def project(self, keep: Iterable[int]) -> "ExpSeq":
        return ExpSeq.make({a: self.value(a) for a in set(keep)})

    def __repr__(self):
        return f"ExpSeq({self.finite!r}, {self.tail!r})"


ZERO_SEQ = ExpSeq((), None)


class ParamMonomial:
    """A monomial prod_a t_a^{e_a/2} of the parameter torus."""

    __slots__ = ("e",)

    def __init__(self, e: ExpSeq = ZERO_SEQ):
        self.e = e

    @classmethod
    def from_exponents(cls, exps: Mapping[int, int | Fraction]) -> "ParamMonomial":
        """Build from semantic exponents, e.g. ``{0: 1, 2: Fraction(-1, 2)}``."""
        vals = {}
        for a, x in exps.items():
            d = Fraction(x) * 2
            if d.denominator != 1:
                raise ValueError(f"exponent {x} is not a half-integer")
            vals[a] = int(d)
        return cls(ExpSeq.make(vals))

    @classmethod
    def t(cls, a: int, e: int | Fraction = 1) -> "ParamMonomial":
        return cls.from_exponents({a: e})

    def exponent(self, a: int) -> Fraction:
        return Fraction(self.e.value(a), 2)

    def is_one(self) -> bool:
        return self.e.is_zero()

    def __mul__(self, other):
        if isinstance(other, ParamMonomial):
            return ParamMonomial(self.e + other.e)
        return NotImplemented

    def __truediv__(self, other: "ParamMonomial") -> "ParamMonomial":
        return ParamMonomial(self.e - other.e)

    def inverse(self) -> "ParamMonomial":
        return ParamMonomial(-self.e)

    def __pow__(self, k) -> "ParamMonomial":
        k = Fraction(k)
        if k.denominator == 1:
            return ParamMonomial(self.e.scale(int(k)))
        if k.denominator == 2:
            return ParamMonomial(self.e.scale(int(k.numerator)).halve())
        raise ValueError("only integer and half-integer powers are supported")

    def bar(self) -> "ParamMonomial":
        return self.inverse()

    def project(self, keep: Iterable[int]) -> "ParamMonomial":
        return ParamMonomial(self.e.project(keep))

    def specialize(self, weights: Mapping[int, int], default: int = 0) -> Fraction:
        """Exponent c of t^c under t_a -> t^{weights[a]} (others -> t^default)."""
        if default and self.e.tail is not None:
            if any(self.e.tail[1]):
                raise DivergentSpecialization("periodic tail meets infinitely many nonzero weights")
        total = 0
        for a, v in self.e.finite:
            total += v * weights.get(a, default)
        if self.e.tail is not None:
            start, pat = self.e.tail
            for a, w in weights.items():
                if a >= start and w:
                    total += w * pat[(a - start) % len(pat)]
            # weights is a finite map here, so only finitely many tail indices meet it
        return Fraction(total, 2)

    def __eq__(self, other):
        return isinstance(other, ParamMonomial) and self.e == other.e

    def __hash__(self):
        return hash(self.e)

    def sort_key(self):
        return self.e.sort_key()

    def __str__(self):
        parts = [f"t[{a}]^{{{fmt_half(v)}}}" for a, v in self.e.finite]
        if self.e.tail is not None:
            start, pat = self.e.tail
            parts.append(f"*PER({start},{len(pat)})[{','.join(fmt_half(v) for v in pat)}]")
        return " ".join(parts) if parts else "1"

    def __repr__(self):
        return f"ParamMonomial({self})"


ONE = ParamMonomial()


class QuotientContext:
    """Relations imposed on the parameter torus.

    ``kind`` is ``"none"``, ``"standard"`` (the family R_k, k >= 1) or
    ``"custom"`` (a finite list of monomials declared equal to 1).
    """

    def __init__(self, kind: str = "none", relations: Iterable[ParamMonomial] = ()):
        if kind not in ("none", "standard", "custom"):
            raise ValueError(kind)
        self.kind = kind
        self.relations = tuple(relations)
        self._rows = _echelon([r.e for r in self.relations]) if kind == "custom" else []
        self._cache: dict = {}

    @classmethod
    def none(cls):
        return _NONE

    @classmethod
    def standard(cls):
        return _STANDARD

    @classmethod
    def custom(cls, relations):
        return cls("custom", relations)

    def __repr__(self):
        if self.kind == "custom":
            return f"QuotientContext(custom, {[str(r) for r in self.relations]})"
        return f"QuotientContext({self.kind})"

    def reduce(self, m: ParamMonomial) -> ParamMonomial:
        """Canonical representative of the class of ``m``."""
        if self.kind == "none":
            return m
        hit = self._cache.get(m)
        if hit is not None:
            return hit
        if self.kind == "standard":
            out = ParamMonomial(_standard_reduce(m.e))
        else:
            out = ParamMonomial(_custom_reduce(m.e, self._rows))
        if len(self._cache) < 200000:
            self._cache[m] = out
        return out

    def contains(self, m: ParamMonomial) -> bool:
        """Lattice membership of ``m`` (i.e. ``m == 1`` in the quotient)."""
        if self.kind == "none":
            return m.is_one()
        if self.kind == "standard":
            return standard_lattice_member(m.e)
        return _custom_reduce(m.e, self._rows).is_zero()

    def equal(self, m1: ParamMonomial, m2: ParamMonomial) -> bool:
        return self.contains(m1 / m2)


def standard_lattice_member(D: ExpSeq) -> bool:
    """Four-condition membership test for the lattice spanned by the R_k."""
    if D.tail is not None:
        return False
    d = dict(D.finite)
    for a, v in d.items():
        if a % 2 or a == 0:
            return False
        if d.get(-a, 0) != v:
            return False
    return sum(v for a, v in d.items() if a > 0) == 0


def standard_generator(k: int) -> ExpSeq:
    """Doubled exponent vector of the relation R_k."""
    return ExpSeq.make({-2 * k - 2: -1, -2 * k: 1, 2 * k: 1, 2 * k + 2: -1})


def _standard_reduce(D: ExpSeq) -> ExpSeq:
    # Move the mass at -2k (k >= 2) onto +2k, compensating at +-2; the
    # correction is a lattice vector, and the result only uses -2 among the
    # negative even indices, which makes it unique.
    delta: dict = {}
    for a, c in D.finite:
        if a <= -4 and a % 2 == 0:
            delta[a] = delta.get(a, 0) - c
            delta[-a] = delta.get(-a, 0) - c
            delta[2] = delta.get(2, 0) + c
            delta[-2] = delta.get(-2, 0) + c
    if not delta:
        return D
    return D + ExpSeq.make(delta)


def _echelon(vectors: list) -> list:
    """Integer row echelon form of finitely supported doubled vectors.

    Returns rows ``(pivot, pivot_value, {index: value})`` with increasing
    pivots and positive pivot values.
    """
    rows = []
    for v in vectors:
        if v.tail is not None:
            raise ValueError("custom relations must be finitely supported")
        rows.append(dict(v.finite))
    cols = sorted({a for r in rows for a in r})
    out = []
    for c in cols:
        active = [r for r in rows if r.get(c, 0)]
        rest = [r for r in rows if not r.get(c, 0)]
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[c]))
            piv = active[0]
            nxt = [piv]
            for r in active[1:]:
                q = r[c] // piv[c]
                r2 = {a: r.get(a, 0) - q * piv.get(a, 0) for a in set(r) | set(piv)}
                r2 = {a: x for a, x in r2.items() if x}
                if r2.get(c, 0):
                    nxt.append(r2)
                elif r2:
                    rest.append(r2)
            active = nxt
        if active:
            piv = active[0]
            if piv[c] < 0:
                piv = {a: -x for a, x in piv.items()}
            out.append((c, piv[c], piv))
        rows = rest
    return out


def _custom_reduce(D: ExpSeq, rows: list) -> ExpSeq:
    for c, pv, row in rows:
        q = D.value(c) // pv
        if q:
            D = D + ExpSeq.make({a: -q * x for a, x in row.items()})
    return D


_NONE = QuotientContext("none")
_STANDARD = QuotientContext("standard")


class ParamLaurent:
    """Finite Z-combination of parameter monomials."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[ParamMonomial, int] | None = None):
        self.terms = {m: c for m, c in (terms or {}).items() if c}
        self._hash = None

    @classmethod
    def build(cls, terms: Mapping[ParamMonomial, int], ctx: QuotientContext | None = None) -> "ParamLaurent":
        if ctx is None or ctx.kind == "none":
            return cls(terms)
        out: dict = {}
        for m, c in terms.items():
            r = ctx.reduce(m)
            out[r] = out.get(r, 0) + c
        return cls(out)

    @classmethod
    def const(cls, c: int) -> "ParamLaurent":
        return cls({ONE: c})

    @classmethod
    def mono(cls, m: ParamMonomial, c: int = 1) -> "ParamLaurent":
        return cls({m: c})

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return len(self.terms) == 1 and self.terms.get(ONE) == 1

    def unit(self):
        """``(sign, monomial)`` if this is +-monomial, else ``None``."""
        if len(self.terms) == 1:
            (m, c), = self.terms.items()
            if c in (1, -1):
                return c, m
        return None

    def reduce(self, ctx: QuotientContext) -> "ParamLaurent":
        return ParamLaurent.build(self.terms, ctx)

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return ParamLaurent(out)

    __radd__ = __add__

    def __neg__(self):
        return ParamLaurent({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, ParamMonomial):
            return ParamLaurent({m * other: c for m, c in self.terms.items()})
        other = _coerce(other)
        if other is None:
            return NotImplemented
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1 * m2
                out[m] = out.get(m, 0) + c1 * c2
        return ParamLaurent(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = ParamLaurent.const(1)
        for _ in range(k):
            out = out * self
        return out

    def bar(self) -> "ParamLaurent":
        return ParamLaurent({m.bar(): c for m, c in self.terms.items()})

    def project(self, keep) -> "ParamLaurent":
        out: dict = {}
        for m, c in self.terms.items():
            p = m.project(keep)
            out[p] = out.get(p, 0) + c
        return ParamLaurent(out)

    def specialize(self, weights: Mapping[int, int], default: int = 0) -> dict:
        """Single-parameter Laurent polynomial as ``{exponent: coefficient}``."""
        out: dict = {}
        for m, c in self.terms.items():
            e = m.specialize(weights, default)
            out[e] = out.get(e, 0) + c
        return {e: c for e, c in out.items() if c}

    def at_one(self) -> int:
        return sum(self.terms.values())

    def is_positive(self) -> bool:
        return bool(self.terms) and all(c > 0 for c in self.terms.values())

    def __eq__(self, other):
        other = _coerce(other)
        return other is not None and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: mc[0].sort_key())

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for i, (m, c) in enumerate(self.sorted_terms()):
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if m.is_one():
                body = str(a)
            elif a == 1:
                body = str(m)
            else:
                body = f"{a}*{m}"
            if i == 0:
                out.append(body if sign == "+" else "-" + body)
            else:
                out.append(f" {sign} {body}")
        return "".join(out)

    def __repr__(self):
        return f"ParamLaurent({self})"


def _coerce(x):
    if isinstance(x, ParamLaurent):
        return x
    if isinstance(x, ParamMonomial):
        return ParamLaurent({x: 1})
    if isinstance(x, int):
        return ParamLaurent.const(x)
    return None


# functional interface

def pm_mul(m1: ParamMonomial, m2: ParamMonomial) -> ParamMonomial:
    return m1 * m2


def pm_equal(m1: ParamMonomial, m2: ParamMonomial, ctx: QuotientContext) -> bool:
    return ctx.equal(m1, m2)


def pl_mul(x: ParamLaurent, y: ParamLaurent, ctx: QuotientContext) -> ParamLaurent:
    return (x * y).reduce(ctx)


def pl_bar(x: ParamLaurent) -> ParamLaurent:
    return x.bar()


def pm_project(m: ParamMonomial, keep) -> ParamMonomial:
    return m.project(keep)


def pm_specialize(m: ParamMonomial, weights: Mapping[int, int], default: int = 0) -> Fraction:
    return m.specialize(weights, default)


def pl_is_positive(x: ParamLaurent) -> bool:
    return x.is_positive()


@lru_cache(maxsize=None)
def tprod(*pairs) -> ParamMonomial:
    """Shorthand: ``tprod((0, 1), (2, Fraction(-1, 2)))`` is t_0 t_2^{-1/2}."""
    return ParamMonomial.from_exponents(dict(pairs))
