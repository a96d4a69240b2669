"""Quantum tori in the commutative-monomial basis.

Two backends provide the pairing D(m1, m2) with
``m1 * m2 = t^{D/2} m1 m2``: a finite one given by integer skew matrices
Lambda_a on generators X[1..n], and one built on a Cartan type where the
generators are Y[i,r] and the pairing comes from the N-exponents.
"""
from __future__ import annotations

from fractions import Fraction
from functools import cmp_to_key
from typing import Iterable, Mapping

from .cartan import CartanData, a_support, cartan_data, n_raw
from .params import ONE, ExpSeq, ParamLaurent, ParamMonomial, QuotientContext


class NotQuasiCommuting(ValueError):
    pass


class NotDivisible(ValueError):
    pass


def _vkey(v):
    # Y variables (i, r) are ordered by (r, i); generators X[k] by k
    return (v[1], v[0]) if isinstance(v, tuple) else (v,)


class Monomial:
    """Commutative Laurent monomial: finitely supported exponent map."""

    __slots__ = ("items", "_hash")

    def __init__(self, items: tuple = ()):
        self.items = items
        self._hash = hash(items)

    @classmethod
    def make(cls, exps: Mapping) -> "Monomial":
        return cls(tuple(sorted(((v, e) for v, e in exps.items() if e), key=lambda ve: _vkey(ve[0]))))

    @property
    def exps(self) -> dict:
        return dict(self.items)

    def degree(self, v) -> int:
        for w, e in self.items:
            if w == v:
                return e
        return 0

    def variables(self):
        return [v for v, _ in self.items]

    def is_one(self) -> bool:
        return not self.items

    def is_dominant(self) -> bool:
        return all(e > 0 for _, e in self.items)

    def __mul__(self, other: "Monomial") -> "Monomial":
        d = dict(self.items)
        for v, e in other.items:
            d[v] = d.get(v, 0) + e
        return Monomial.make(d)

    def inverse(self) -> "Monomial":
        return Monomial(tuple((v, -e) for v, e in self.items))

    def __truediv__(self, other: "Monomial") -> "Monomial":
        return self * other.inverse()

    def __pow__(self, k: int) -> "Monomial":
        if k == 0:
            return MONO_ONE
        return Monomial(tuple((v, k * e) for v, e in self.items))

    def __eq__(self, other):
        return isinstance(other, Monomial) and self.items == other.items

    def __hash__(self):
        return self._hash

    def sort_key(self):
        return tuple((_vkey(v), e) for v, e in self.items)

    def __repr__(self):
        return f"Monomial({self.items!r})"


MONO_ONE = Monomial()


def lex_cmp(m1: Monomial, m2: Monomial) -> int:
    """Lexicographic group order: the first variable (ascending (r, i)) with
    differing exponents decides."""
    d1, d2 = m1.exps, m2.exps
    for v in sorted(set(d1) | set(d2), key=_vkey):
        a, b = d1.get(v, 0), d2.get(v, 0)
        if a != b:
            return 1 if a > b else -1
    return 0


class Backend:
    """Shared structure of a quantum torus: pairing, quotient and projection."""

    def __init__(self, ctx: QuotientContext | None = None, keep: Iterable[int] | None = None):
        self.ctx = ctx or QuotientContext.none()
        self.keep = None if keep is None else frozenset(keep)
        self._pair_cache: dict = {}
        self._norm_cache: dict = {}

    def raw_pair(self, m1: Monomial, m2: Monomial) -> ExpSeq:
        raise NotImplementedError

    def norm(self, m: ParamMonomial) -> ParamMonomial:
        hit = self._norm_cache.get(m)
        if hit is None:
            hit = m
            if self.keep is not None:
                hit = hit.project(self.keep)
            hit = self.ctx.reduce(hit)
            self._norm_cache[m] = hit
        return hit

    def norm_pl(self, x: ParamLaurent) -> ParamLaurent:
        out: dict = {}
        for m, c in x.terms.items():
            r = self.norm(m)
            out[r] = out.get(r, 0) + c
        return ParamLaurent(out)

    def pair(self, m1: Monomial, m2: Monomial) -> ParamMonomial:
        """The factor t^{D(m1,m2)/2} of ``m1 * m2`` (normalized)."""
        key = (m1, m2)
        hit = self._pair_cache.get(key)
        if hit is None:
            hit = self.norm(ParamMonomial(self.raw_pair(m1, m2)))
            self._pair_cache[key] = hit
        return hit

    def equal_params(self, m1: ParamMonomial, m2: ParamMonomial) -> bool:
        return self.norm(m1) == self.norm(m2)

    # element constructors
    def element(self, terms: Mapping) -> "TorusElement":
        return TorusElement(self, terms)

    def one(self) -> "TorusElement":
        return TorusElement(self, {MONO_ONE: ParamLaurent.const(1)}, _clean=True)

    def zero(self) -> "TorusElement":
        return TorusElement(self, {}, _clean=True)

    def mono(self, exps: Mapping, coef=1) -> "TorusElement":
        return TorusElement(self, {Monomial.make(exps): coef})

    def scalar(self, c) -> "TorusElement":
        return TorusElement(self, {MONO_ONE: c})

    def var_text(self, v) -> str:
        raise NotImplementedError

    def parse(self, text: str) -> "TorusElement":
        from .textfmt import parse_element
        return parse_element(text, self)


class FiniteBackend(Backend):
    """Generators X[1..n] with integer skew matrices Lambda_a, a in a finite set."""

    def __init__(self, n: int, lambdas: Mapping[int, list], ctx=None, keep=None):
        super().__init__(ctx, keep)
        self.n = n
        self.lambdas = {a: [list(r) for r in L] for a, L in sorted(lambdas.items())}
        for a, L in self.lambdas.items():
            if len(L) != n or any(len(r) != n for r in L):
                raise ValueError(f"Lambda_{a} is not {n}x{n}")
            for i in range(n):
                for j in range(n):
                    if L[i][j] != -L[j][i]:
                        raise ValueError(f"Lambda_{a} is not skew-symmetric")

    def raw_pair(self, m1, m2):
        vals = {}
        for a, L in self.lambdas.items():
            D = 0
            for i, u in m1.items:
                row = L[i - 1]
                for j, w in m2.items:
                    D += u * w * row[j - 1]
            if D:
                vals[a] = D
        return ExpSeq.make(vals)

    def gen(self, k: int) -> "TorusElement":
        return self.mono({k: 1})

    def var_text(self, v):
        return f"X[{v}]"

    def __repr__(self):
        return f"FiniteBackend(n={self.n}, params={list(self.lambdas)})"


class CartanBackend(Backend):
    """Variables Y[i,r] with the N-exponent pairing of a Cartan type."""

    def __init__(self, cartan: CartanData | str, ctx=None, keep=None):
        super().__init__(ctx, keep)
        self.cartan = cartan_data(cartan) if isinstance(cartan, str) else cartan

    def raw_pair(self, m1, m2):
        total = ExpSeq()
        for (i, p), u in m1.items:
            for (j, s), w in m2.items:
                total = total + n_raw(self.cartan, i, p, j, s).scale(u * w)
        return total

    def Y(self, i: int, r: int) -> "TorusElement":
        return self.mono({(i, r): 1})

    def A(self, i: int, r: int) -> "TorusElement":
        return self.mono(a_support(self.cartan, i, r))

    def var_text(self, v):
        return f"Y[{v[0]},{v[1]}]"

    def __repr__(self):
        return f"CartanBackend({self.cartan.label}, {self.ctx!r}, keep={sorted(self.keep) if self.keep else None})"


def _as_pl(c) -> ParamLaurent:
    if isinstance(c, ParamLaurent):
        return c
    if isinstance(c, ParamMonomial):
        return ParamLaurent.mono(c)
    if isinstance(c, int):
        return ParamLaurent.const(c)
    raise TypeError(f"not a coefficient: {c!r}")


class TorusElement:
    """Finite sum of parameter coefficients times commutative monomials.

    ``*`` is the star product; scalars may multiply on either side.
    """

    __slots__ = ("backend", "terms")

    def __init__(self, backend: Backend, terms: Mapping, _clean: bool = False):
        self.backend = backend
        if _clean:
            self.terms = dict(terms)
        else:
            out = {}
            for m, c in terms.items():
                c = backend.norm_pl(_as_pl(c))
                if not c.is_zero():
                    if m in out:
                        c = out[m] + c
                        if c.is_zero():
                            del out[m]
                            continue
                    out[m] = c
            self.terms = out

    def _same(self, other):
        if other.backend is not self.backend:
            raise ValueError("elements live in different tori")

    def _wrap(self, c):
        if isinstance(c, TorusElement):
            return c
        return self.backend.scalar(c)

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def __add__(self, other):
        try:
            other = self._wrap(other)
        except TypeError:
            return NotImplemented
        self._same(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            if m in out:
                s = out[m] + c
                if s.is_zero():
                    del out[m]
                else:
                    out[m] = s
            else:
                out[m] = c
        return TorusElement(self.backend, out, _clean=True)

    __radd__ = __add__

    def __neg__(self):
        return TorusElement(self.backend, {m: -c for m, c in self.terms.items()}, _clean=True)

    def __sub__(self, other):
        try:
            other = self._wrap(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return self._wrap(other) - self

    def scale(self, c) -> "TorusElement":
        c = _as_pl(c)
        return TorusElement(self.backend, {m: x * c for m, x in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, TorusElement):
            return star(self, other)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other):
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_monomial():
                raise ValueError("negative powers need a monomial")
            return star_power(inverse_monomial(self), -k)
        return star_power(self, k)

    def bar(self) -> "TorusElement":
        return TorusElement(self.backend, {m: self.backend.norm_pl(c.bar()) for m, c in self.terms.items()}, _clean=True)

    def coefficient(self, m) -> ParamLaurent:
        if not isinstance(m, Monomial):
            m = Monomial.make(m)
        return self.terms.get(m, ParamLaurent())

    def monomials(self) -> list:
        return sorted(self.terms, key=cmp_to_key(lex_cmp))

    def leading(self):
        m = max(self.terms, key=cmp_to_key(lex_cmp))
        return m, self.terms[m]

    def trailing(self):
        m = min(self.terms, key=cmp_to_key(lex_cmp))
        return m, self.terms[m]

    def at_one(self) -> dict:
        """Classical specialization t_a -> 1 as ``{Monomial: int}``."""
        out = {m: c.at_one() for m, c in self.terms.items()}
        return {m: c for m, c in out.items() if c}

    def variables(self) -> set:
        return {v for m in self.terms for v in m.exps}

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        if not isinstance(other, TorusElement):
            return NotImplemented
        return self.backend is other.backend and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self):
        from .textfmt import format_element
        return format_element(self)

    __repr__ = __str__


def star(x: TorusElement, y: TorusElement) -> TorusElement:
    x._same(y)
    be = x.backend
    acc: dict = {}
    for m1, c1 in x.terms.items():
        for m2, c2 in y.terms.items():
            f = be.pair(m1, m2)
            m = m1 * m2
            cc = c1 * c2
            for p, k in cc.terms.items():
                q = be.norm(p * f)
                d = acc.setdefault(m, {})
                d[q] = d.get(q, 0) + k
    out = {}
    for m, d in acc.items():
        c = ParamLaurent(d)
        if not c.is_zero():
            out[m] = c
    return TorusElement(be, out, _clean=True)


def star_all(*xs: TorusElement) -> TorusElement:
    out = xs[0]
    for x in xs[1:]:
        out = star(out, x)
    return out


def star_power(x: TorusElement, k: int) -> TorusElement:
    out = x.backend.one()
    for _ in range(k):
        out = star(out, x)
    return out


def inverse_monomial(x: TorusElement) -> TorusElement:
    """Inverse of c*m for a unit coefficient c: (c m)^{-1} = c^{-1} m^{-1}."""
    (m, c), = x.terms.items()
    u = c.unit()
    if u is None:
        raise NotDivisible("coefficient is not a unit")
    sign, p = u
    # m * m^{-1} = 1 since a monomial pairs trivially with its inverse
    return TorusElement(x.backend, {m.inverse(): ParamLaurent({x.backend.norm(p.inverse()): sign})}, _clean=True)


def bar(x: TorusElement) -> TorusElement:
    return x.bar()


def commutator_factor(x: TorusElement, y: TorusElement) -> ParamMonomial:
    """The monomial c with ``x * y == c (y * x)``."""
    if x.is_zero() or y.is_zero():
        raise NotQuasiCommuting("zero element")
    be = x.backend
    m1 = next(iter(x.terms))
    m2 = next(iter(y.terms))
    c = be.pair(m1, m2) ** 2
    c = be.norm(c)
    if star(x, y) != star(y, x).scale(c):
        raise NotQuasiCommuting(f"{x} and {y} do not quasi-commute")
    return c


def _divide(x: TorusElement, d: TorusElement, right: bool, use_max: bool) -> TorusElement:
    be = x.backend
    lead = TorusElement.leading if use_max else TorusElement.trailing
    md, cd = lead(d)
    u = cd.unit()
    if u is None:
        raise NotDivisible("lead coefficient of divisor is not a unit")
    sd, pd = u
    q_terms: dict = {}
    rem = x
    limit = 4 * (len(x.terms) + 1) * (len(d.terms) + 1) + 64
    steps = 0
    while not rem.is_zero():
        steps += 1
        if steps > limit:
            raise NotDivisible("elimination does not terminate")
        mr, cr = lead(rem)
        mq = mr / md
        f = be.pair(mq, md) if right else be.pair(md, mq)
        # (cq mq) * (cd md) = cq cd f mr, hence cq = cr / (cd f)
        inv = be.norm((pd * f).inverse())
        cq = be.norm_pl(cr * inv) * sd
        t = TorusElement(be, {mq: cq}, _clean=True)
        rem = rem - (star(t, d) if right else star(d, t))
        q_terms[mq] = q_terms.get(mq, ParamLaurent()) + cq
    return TorusElement(be, q_terms)


def exact_divide_right(x: TorusElement, d: TorusElement) -> TorusElement:
    """q with ``q * d == x``."""
    x._same(d)
    if d.is_zero():
        raise NotDivisible("division by zero")
    if d.is_monomial():
        return star(x, inverse_monomial(d))
    try:
        return _divide(x, d, True, True)
    except NotDivisible:
        return _divide(x, d, True, False)


def exact_divide_left(x: TorusElement, d: TorusElement) -> TorusElement:
    """q with ``d * q == x``."""
    x._same(d)
    if d.is_zero():
        raise NotDivisible("division by zero")
    if d.is_monomial():
        return star(inverse_monomial(d), x)
    try:
        return _divide(x, d, False, True)
    except NotDivisible:
        return _divide(x, d, False, False)


def truncate(x: TorusElement, allowed: Iterable) -> TorusElement:
    allowed = set(allowed)
    return TorusElement(x.backend, {m: c for m, c in x.terms.items() if all(v in allowed for v in m.exps)}, _clean=True)


def a_monomial(backend: CartanBackend, i: int, r: int) -> TorusElement:
    return backend.A(i, r)


def commutative_product(*xs: TorusElement) -> TorusElement:
    """Product with all parameters ignored, coefficients multiplied.

    This is the classical product of the underlying Laurent polynomials
    and is only used to expand explicit formulas with coefficient 1.
    """
    be = xs[0].backend
    out = {MONO_ONE: ParamLaurent.const(1)}
    for x in xs:
        nxt: dict = {}
        for m1, c1 in out.items():
            for m2, c2 in x.terms.items():
                m = m1 * m2
                nxt[m] = nxt.get(m, ParamLaurent()) + c1 * c2
        out = nxt
    return TorusElement(be, out)


def dominant_monomials(x: TorusElement) -> list:
    return [m for m in x.monomials() if all(e >= 0 for _, e in m.items)]


def weight(m: Monomial, cartan: CartanData) -> tuple:
    """Weight in the basis of fundamental weights."""
    w = [0] * cartan.n
    for (i, _), e in m.items:
        w[i - 1] += e
    return tuple(w)


def nakajima_leq(m: Monomial, m2: Monomial, cartan: CartanData) -> bool:
    """True iff m2 m^{-1} is a product of A-monomials with nonnegative powers."""
    q = dict((m2 / m).items)
    if not q:
        return True
    top = max(r for (_, r) in q)
    while q:
        (i, r0) = min(q, key=lambda v: (v[1], v[0]))
        e = q[(i, r0)]
        if e < 0:
            return False
        di = cartan.sym(i)
        if r0 + 2 * di > top:
            return False
        for v, f in a_support(cartan, i, r0 + di).items():
            q[v] = q.get(v, 0) - e * f
            if q[v] == 0:
                del q[v]
    return True


def substitute(x: TorusElement, target: Backend, images: Mapping, params: Mapping[int, ParamMonomial]) -> TorusElement:
    """Push an element of a finite torus forward along X[k] -> images[k].

    Images must be single commutative monomials (coefficient 1) whose
    quasi-commutation matches ``t_a -> params[a]``; commutative monomials
    then map to commutative monomials.
    """
    out = {}
    for m, c in x.terms.items():
        tm = MONO_ONE
        for k, e in m.items:
            (im, ic), = images[k].terms.items()
            if not ic.is_one():
                raise ValueError("images must have coefficient 1")
            tm = tm * im ** e
        tc: dict = {}
        for p, k in c.terms.items():
            q = ONE
            for a, v in p.e.finite:
                q = q * params[a] ** Fraction(v, 2)
            tc[q] = tc.get(q, 0) + k
        out[tm] = out.get(tm, ParamLaurent()) + ParamLaurent(tc)
    return TorusElement(target, out)
