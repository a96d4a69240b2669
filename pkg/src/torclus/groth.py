"""Toroidal Grothendieck ring constructions and the identity corpora."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .cartan import CartanData, a_support, cartan_data, n_raw
from .cluster import ToroidalSeed
from .params import ONE, ExpSeq, ParamLaurent, ParamMonomial, QuotientContext
from .torus import (
    MONO_ONE, CartanBackend, Monomial, TorusElement, star, star_all, truncate,
)


class NotIDominant(ValueError):
    pass


class NotThin(ValueError):
    pass


class NotBipartite(ValueError):
    pass


class UnknownLabel(ValueError):
    pass


class NoSolution(ValueError):
    pass


class AmbiguousSupport(ValueError):
    pass


# parameter helpers

def tmono(**kw) -> ParamMonomial:
    """``tmono(m2=1, z0=-2, p2=1)`` is t_{-2} t_0^{-2} t_2; values may be Fractions."""
    exps = {}
    for k, v in kw.items():
        sign = -1 if k[0] == "m" else 1
        exps[sign * int(k[1:])] = v
    return ParamMonomial.from_exponents(exps)


def tpow(seq: ExpSeq, num: int = 1, den: int = 1) -> ParamMonomial:
    """prod_a t_a^{num * N_a / den} for a raw integer sequence N."""
    s = seq.scale(2 * num)
    if den != 1:
        s = _divide_seq(s, den)
    return ParamMonomial(s)


def _divide_seq(s: ExpSeq, den: int) -> ExpSeq:
    out = s
    while den % 2 == 0:
        out = out.halve()
        den //= 2
    if den != 1:
        raise ValueError("only powers of two are supported as denominators")
    return out


def n_param(data: CartanData, i, p, j, s, num=1, den=1) -> ParamMonomial:
    """prod_a t_a^{num N_a(i,p;j,s) / den}."""
    return tpow(n_raw(data, i, p, j, s), num, den)


# height functions and category profiles

@dataclass(frozen=True)
class HeightFunction:
    values: tuple

    @classmethod
    def of(cls, xi) -> "HeightFunction":
        if isinstance(xi, dict):
            xi = tuple(xi[k] for k in sorted(xi))
        return cls(tuple(xi))

    def __getitem__(self, i: int) -> int:
        return self.values[i - 1]

    def is_bipartite(self, data: CartanData) -> bool:
        if any(v not in (0, 1) for v in self.values):
            return False
        return all(self[i] != self[j] for i, j in data.edges)

    def is_consistent(self, data: CartanData) -> bool:
        return all(abs(self[i] - self[j]) == 1 for i, j in data.edges)


def default_bipartite(data: CartanData) -> HeightFunction:
    """Two-colouring of the Dynkin diagram with node 1 at height 0."""
    col = {1: 0}
    stack = [1]
    while stack:
        i = stack.pop()
        for j in data.neighbors(i):
            if j not in col:
                col[j] = 1 - col[i]
                stack.append(j)
    return HeightFunction.of(col)


@dataclass
class CategoryProfile:
    name: str
    cartan: CartanData
    xi: HeightFunction
    generators: frozenset
    ctx: QuotientContext
    keep: frozenset | None = None
    _backend: CartanBackend | None = field(default=None, repr=False)

    @property
    def backend(self) -> CartanBackend:
        if self._backend is None:
            self._backend = CartanBackend(self.cartan, self.ctx, self.keep)
        return self._backend

    def truncate(self, x: TorusElement) -> TorusElement:
        return truncate(x, self.generators)


def profile(name: str, label: str | None = None, xi=None) -> CategoryProfile:
    name = name.upper()
    if name == "C_Z":
        data = cartan_data(label or "A1")
        xi = HeightFunction.of(xi) if xi is not None else default_bipartite(data)
        return CategoryProfile(name, data, xi, frozenset(), QuotientContext.standard())
    if name == "C1":
        data = cartan_data(label or "A2")
        xi = HeightFunction.of(xi) if xi is not None else default_bipartite(data)
        if not xi.is_bipartite(data):
            raise NotBipartite(str(xi.values))
        gens = frozenset((i, xi[i] + d) for i in data.nodes for d in (0, 2))
        return CategoryProfile(name, data, xi, gens, QuotientContext.none(), frozenset({-2, 0}))
    if name == "C1_OB":
        data = cartan_data(label or "A2")
        if data.kind != "A":
            raise UnknownLabel("C1_OB is tabled for type A only")
        xi = HeightFunction.of(tuple(data.nodes))
        gens = frozenset((i, i + d) for i in data.nodes for d in (-1, 1))
        return CategoryProfile(name, data, xi, gens, QuotientContext.standard())
    if name == "CQ_EXAMPLE":
        data = cartan_data("A2")
        gens = frozenset({(1, 0), (1, 2), (2, 1)})
        return CategoryProfile(name, data, HeightFunction((0, 1)), gens, QuotientContext.standard())
    if name == "B2_QFLAT":
        data = cartan_data("B2")
        gens = frozenset({(1, 0), (1, 2), (1, 4), (2, 1), (2, 3), (2, 5)})
        return CategoryProfile(name, data, HeightFunction((0, 1)), gens, QuotientContext.custom([B2_RELATION]))
    raise UnknownLabel(name)


B2_RELATION = tmono(m4=Fraction(1, 2), m2=Fraction(-1, 2), p2=Fraction(-1, 2), p4=Fraction(1, 2))


# E-blocks

def _generator(be: CartanBackend, i: int, r: int) -> TorusElement:
    d = be.cartan.sym(i)
    y = Monomial.make({(i, r): 1})
    a = Monomial.make(a_support(be.cartan, i, r + d)).inverse()
    return TorusElement(be, {y: 1, y * a: 1})


def e_block(be: CartanBackend, i: int, m: Monomial) -> TorusElement:
    """Ordered product over ascending r of generator powers and the other Y_{j,r}."""
    for (j, r), e in m.items:
        if j == i and e < 0:
            raise NotIDominant(f"negative power of Y[{j},{r}]")
    by_r: dict = {}
    for (j, r), e in m.items:
        by_r.setdefault(r, []).append((j, e))
    out = be.one()
    for r in sorted(by_r):
        for j, e in sorted(by_r[r]):
            if j == i:
                g = _generator(be, i, r)
                for _ in range(e):
                    out = star(out, g)
            else:
                out = star(out, be.mono({(j, r): e}))
    return out


def e_block_defect(be: CartanBackend, i: int, r: int, k: int) -> TorusElement:
    """G_r * G_{r+2k} - t^{alpha(k)} G_{r+2k} * G_r for the block generators G."""
    g1, g2 = _generator(be, i, r), _generator(be, i, r + 2 * k)
    alpha = be.norm(n_param(be.cartan, i, r, i, r + 2 * k))
    return star(g1, g2) - star(g2, g1).scale(alpha)


def e_block_defect_expected(be: CartanBackend, i: int, r: int, k: int) -> TorusElement:
    """The two-term closed form of ``e_block_defect``."""
    data = be.cartan
    y1 = be.Y(i, r)
    y2 = be.Y(i, r + 2 * k)
    ya2 = TorusElement(be, {Monomial.make({(i, r + 2 * k): 1}) * Monomial.make(a_support(data, i, r + 2 * k + 1)).inverse(): 1})
    ya1 = TorusElement(be, {Monomial.make({(i, r): 1}) * Monomial.make(a_support(data, i, r + 1)).inverse(): 1})
    c1 = ParamLaurent.const(1) - ParamLaurent.mono(be.norm(tprod_int([(-2 * k - 2, 1), (-2 * k, -1), (2 * k, -1), (2 * k + 2, 1)])))
    c2 = ParamLaurent.const(1) - ParamLaurent.mono(be.norm(tprod_int([(-2 * k, 1), (-2 * k + 2, -1), (2 * k - 2, -1), (2 * k, 1)])))
    return star(y1, ya2).scale(c1) + star(ya1, y2).scale(c2)


def tprod_int(pairs) -> ParamMonomial:
    acc: dict = {}
    for a, e in pairs:
        acc[a] = acc.get(a, 0) + e
    return ParamMonomial.from_exponents({a: e for a, e in acc.items() if e})


def verify_e_block_quotient(label: str, i: int, r: int, k: int) -> bool:
    be = CartanBackend(label, QuotientContext.standard())
    d = e_block_defect(be, i, r, k)
    if k > 1:
        return d.is_zero()
    base = Monomial.make({(i, r): 1, (i, r + 2): 1}) * Monomial.make(a_support(be.cartan, i, r + 1)).inverse()
    for m in d.monomials():
        if not any(base ** p == m for p in range(0, 4)):
            return False
    return True


# q-characters of thin modules

def _strings(part: dict, step: int) -> list:
    """Split a dominant sl2 monomial {a: u} into strings in general position."""
    part = {a: u for a, u in part.items() if u}
    out = []
    while part:
        a = min(part)
        s = []
        b = a
        while part.get(b, 0) > 0:
            s.append(b)
            part[b] -= 1
            if part[b] == 0:
                del part[b]
            b += step
        out.append(s)
    return out


def _sl2_string_char(data: CartanData, j: int, string: list) -> list:
    """Monomial factors (as A-products) of the KR q-character along node j."""
    d = data.sym(j)
    factors = [MONO_ONE]
    acc = MONO_ONE
    for a in reversed(string):
        acc = acc * Monomial.make(a_support(data, j, a + d)).inverse()
        factors.append(acc)
    return factors


def q_character(data: CartanData, m0: Monomial, limit: int = 5000) -> dict:
    """Classical q-character of the simple module with highest monomial m0.

    Frenkel-Mukhin colouring algorithm, valid when no monomial other than
    the highest one is dominant (true for fundamental and KR modules).
    """
    coef = {m0: 1}
    colour: dict = {}
    depth_of = {m0: 0}
    frontier = [m0]
    seen = 0
    while frontier:
        frontier.sort(key=lambda m: m.sort_key())
        nxt = []
        for m in frontier:
            seen += 1
            if seen > limit:
                raise NotThin("q-character algorithm exceeded its budget")
            s = coef[m]
            for j in data.nodes:
                part = {r: e for (jj, r), e in m.items if jj == j}
                if any(e < 0 for e in part.values()):
                    continue
                extra = s - colour.get((m, j), 0)
                if extra <= 0:
                    continue
                factors = [MONO_ONE]
                for st in _strings(part, 2 * data.sym(j)):
                    fs = _sl2_string_char(data, j, st)
                    factors = [f * g for f in factors for g in fs]
                for f in factors:
                    if f.is_one():
                        continue
                    m2 = m * f
                    colour[(m2, j)] = colour.get((m2, j), 0) + extra
                    if m2 not in depth_of:
                        depth_of[m2] = depth_of[m] + 1
                        nxt.append(m2)
            # the coefficient of a new monomial is the largest colour count
        for m2 in nxt:
            coef[m2] = max(colour.get((m2, j), 0) for j in data.nodes)
        # colours may also increase on monomials found earlier in this round
        for (m2, j), c in list(colour.items()):
            if m2 in coef and c > coef[m2]:
                coef[m2] = c
        frontier = nxt
    return coef


def fundamental_class_thin(data: CartanData | str, i: int, r: int, be: CartanBackend | None = None) -> TorusElement:
    if isinstance(data, str):
        data = cartan_data(data)
    if data.kind not in ("A", "B"):
        raise NotThin(f"{data.label} fundamentals are not handled")
    if be is None:
        be = CartanBackend(data)
    chi = q_character(data, Monomial.make({(i, r): 1}))
    if any(c != 1 for c in chi.values()):
        raise NotThin(f"V_{i}(q^{r}) has multiplicities")
    return TorusElement(be, {m: 1 for m in chi})


def kr_monomial(i: int, k: int, r: int, step: int = 2) -> Monomial:
    return Monomial.make({(i, r + step * a): 1 for a in range(k)})


def kr_class_thin(be: CartanBackend, i: int, k: int, r: int) -> TorusElement:
    data = be.cartan
    if data.kind not in ("A", "B"):
        raise NotThin(data.label)
    chi = q_character(data, kr_monomial(i, k, r, 2 * data.sym(i)))
    if any(c != 1 for c in chi.values()):
        raise NotThin("KR module with multiplicities")
    return TorusElement(be, {m: 1 for m in chi})


def typeA_fundamental_oracle(n: int, i: int, r: int) -> set:
    """Monomials of V_i(q^r) in type A_n from single-column tableaux."""
    from itertools import combinations

    def box(k, a):
        e = {}
        if k - 1 >= 1:
            e[(k - 1, a + k)] = -1
        if k <= n:
            e[(k, a + k - 1)] = e.get((k, a + k - 1), 0) + 1
        return Monomial.make(e)

    out = set()
    for col in combinations(range(1, n + 2), i):
        m = MONO_ONE
        for l, b in enumerate(col, start=1):
            m = m * box(b, r + i - 2 * l + 1)
        out.add(m)
    return out


# truncated classes of C1

def truncated_class_C1(prof: CategoryProfile, label: tuple) -> TorusElement:
    """Truncated class for ``("top", i)``, ``("kr", i)`` or ``("bottom", i)``.

    These are L(Y_{i,xi_i+2}), L(Y_{i,xi_i}Y_{i,xi_i+2}) and L(Y_{i,xi_i}).
    """
    be = prof.backend
    data = prof.cartan
    kind, i = label
    x = prof.xi[i]
    if kind == "top":
        return be.Y(i, x + 2)
    if kind == "kr":
        return be.mono({(i, x): 1, (i, x + 2): 1})
    if kind != "bottom":
        raise UnknownLabel(str(label))
    y = Monomial.make({(i, x): 1})
    if x == 1:
        a = Monomial.make(a_support(data, i, 2)).inverse()
        return TorusElement(be, {y: 1, y * a: 1})
    terms = {y: 1}
    ai = Monomial.make(a_support(data, i, 1)).inverse()
    prods = [MONO_ONE]
    for j in data.neighbors(i):
        aj = Monomial.make(a_support(data, j, 2)).inverse()
        prods = [p * q for p in prods for q in (MONO_ONE, aj)]
    for p in prods:
        m = y * ai * p
        terms[m] = terms.get(m, 0) + 1
    return TorusElement(be, terms)


def minimal_affinization_C1(prof: CategoryProfile, i: int) -> TorusElement:
    be = prof.backend
    data = prof.cartan
    e = {(i, 0): 1}
    for j in data.neighbors(i):
        e[(j, 3)] = 1
    y = Monomial.make(e)
    a = Monomial.make(a_support(data, i, 1)).inverse()
    return TorusElement(be, {y: 1, y * a: 1})


def build_c1_seed(label: str, xi=None) -> tuple:
    """The C1 seed (profile, seed) with n exchangeable and n frozen variables."""
    prof = profile("C1", label, xi)
    data, x, be = prof.cartan, prof.xi, prof.backend
    n = data.n
    variables = [truncated_class_C1(prof, ("top", i)) for i in data.nodes]
    variables += [truncated_class_C1(prof, ("kr", i)) for i in data.nodes]
    verts = [(i, x[i] + 1) for i in data.nodes] + [(i, x[i] - 1) for i in data.nodes]
    B = [[0] * n for _ in range(2 * n)]
    for row, (i, r) in enumerate(verts):
        for col in range(n):
            j, s = verts[col]
            if (i == j and s == r + 2) or (data.adjacent(i, j) and s == r - 1):
                B[row][col] = 1
            elif (i == j and s == r - 2) or (data.adjacent(i, j) and s == r + 1):
                B[row][col] = -1
    return prof, ToroidalSeed.build(be, variables, B)


def c1_lambda(data: CartanData, xi: HeightFunction, a: int) -> list:
    """Lambda_a on the C1 vertex set from the three-case N-exponent formula."""
    from .cartan import n_exponent

    n = data.n

    def N(i, j, d):
        return n_exponent(data, a, i, 0, j, d)

    L = [[0] * (2 * n) for _ in range(2 * n)]
    for p, i in enumerate(data.nodes):
        for q, j in enumerate(data.nodes):
            d = xi[j] - xi[i]
            L[p][q] = N(i, j, d)
            L[p][n + q] = N(i, j, d - 2) + N(i, j, d)
            L[n + p][n + q] = 2 * N(i, j, d) + N(i, j, d - 2) + N(i, j, d + 2)
    for p in range(n):
        for q in range(n):
            L[n + q][p] = -L[p][n + q]
    return L


# sl2

def sl2_s() -> ParamMonomial:
    """The common value of t_{-2k}^{1/2} t_{2k}^{1/2} modulo the relations."""
    return tmono(m2=Fraction(1, 2), p2=Fraction(1, 2))


def sl2_backend() -> CartanBackend:
    return shared_backend("A1", QuotientContext.standard())


def kr_class_sl2(be: CartanBackend, k: int, p: int) -> TorusElement:
    """sum_{i=0}^k Y_p ... Y_{p+2(i-1)} Y_{p+2(i+1)}^{-1} ... Y_{p+2k}^{-1}."""
    if k == 0:
        return be.one()
    terms = {}
    for i in range(k + 1):
        e = {(1, p + 2 * a): 1 for a in range(i)}
        e.update({(1, p + 2 * a): -1 for a in range(i + 1, k + 1)})
        terms[Monomial.make(e)] = 1
    return TorusElement(be, terms)


def _pl(m: ParamMonomial) -> ParamLaurent:
    return ParamLaurent.mono(m)


def tsystem_sl2(k: int, p: int, be: CartanBackend | None = None) -> bool:
    be = be or sl2_backend()
    W = lambda kk, pp: kr_class_sl2(be, kk, pp)
    lhs = star(W(k, p), W(k, p + 2))
    c = be.norm(tmono(z0=-1) * sl2_s())
    rhs = star(W(k - 1, p + 2), W(k + 1, p)).scale(c) + be.one()
    return lhs == rhs


def kr_recursion_sl2(l: int, p: int, be: CartanBackend | None = None) -> bool:
    be = be or sl2_backend()
    W = lambda kk, pp: kr_class_sl2(be, kk, pp)
    u = tmono(z0=1) * sl2_s().inverse()
    a = l % 2
    inner = star(W(1, p), W(l - 1, p + 2)).scale(be.norm(u ** -a)) - (W(l - 2, p + 4) if l >= 2 else be.zero())
    return W(l, p) == inner.scale(be.norm(u))


def sl2_alpha(h: int) -> ParamMonomial:
    sg = 1 if h % 2 == 0 else -1
    return tmono(z0=sg) * sl2_s() ** (-sg)


def sl2_product_check(r: int, h: int, be: CartanBackend | None = None) -> bool:
    be = be or sl2_backend()
    V = lambda q: kr_class_sl2(be, 1, q)
    p1, p2 = 2 * r, 2 * r + 2 * h
    L = {Monomial.make({(1, p1): 1, (1, p2): 1}): 1,
         Monomial.make({(1, p1 + 2): -1, (1, p2 + 2): -1}): 1,
         Monomial.make({(1, p1): 1, (1, p2 + 2): -1}): 1}
    if h > 1:
        L[Monomial.make({(1, p1 + 2): -1, (1, p2): 1})] = 1
    rhs = TorusElement(be, L).scale(be.norm(sl2_alpha(h)))
    if h == 1:
        rhs = rhs + be.one()
    return star(V(p1), V(p2)) == rhs


def sl2_commutation_check(r: int, h: int, be: CartanBackend | None = None) -> bool:
    be = be or sl2_backend()
    V = lambda q: kr_class_sl2(be, 1, q)
    a, b = V(2 * r), V(2 * r + 2 * h)
    if h == 1:
        c = be.norm(tmono(z0=-2) * sl2_s() ** 2)
        return star(a, b) - star(b, a).scale(c) == be.one() - be.one().scale(c)
    return star(a, b) == star(b, a).scale(be.norm(sl2_alpha(h) ** 2))


def sl2_surjection_check(r: int, r2: int, be: CartanBackend | None = None) -> bool:
    """The one-parameter presentation relations after t -> t_0 s^{-1}."""
    be = be or sl2_backend()
    V = lambda q: kr_class_sl2(be, 1, q)
    t = tmono(z0=1) * sl2_s().inverse()
    a, b = V(2 * r), V(2 * r2)
    if r2 == r + 1:
        c = be.norm(t ** -2)
        return star(a, b) == star(b, a).scale(c) + be.one() - be.one().scale(c)
    if r2 > r + 1:
        sg = 1 if (r2 - r) % 2 == 0 else -1
        return star(a, b) == star(b, a).scale(be.norm(t ** (2 * sg)))
    raise ValueError("need r2 > r")


# reports

@dataclass
class Assertion:
    id: str
    ok: bool
    expected: str = ""
    actual: str = ""

    def as_dict(self) -> dict:
        d = {"id": self.id, "status": "pass" if self.ok else "fail"}
        if not self.ok:
            d["expected"], d["actual"] = self.expected, self.actual
        return d


@dataclass
class Report:
    name: str
    assertions: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(a.ok for a in self.assertions)

    def check(self, id: str, ok: bool, expected="", actual="") -> bool:
        ok = bool(ok)
        self.assertions.append(Assertion(id, ok, "" if ok else _text(expected), "" if ok else _text(actual)))
        return ok

    def equal(self, id: str, actual, expected) -> bool:
        return self.check(id, actual == expected, expected, actual)

    def merge(self, other: "Report", prefix: str = "") -> None:
        for a in other.assertions:
            self.assertions.append(Assertion(prefix + a.id, a.ok, a.expected, a.actual))

    def failures(self) -> list:
        return [a for a in self.assertions if not a.ok]

    def as_dict(self) -> dict:
        return {"name": self.name, "ok": self.ok, "assertions": [a.as_dict() for a in self.assertions]}

    def summary(self) -> str:
        n_ok = sum(a.ok for a in self.assertions)
        return f"{'PASS' if self.ok else 'FAIL'} {self.name} {n_ok}/{len(self.assertions)}"


def _text(x) -> str:
    from .textfmt import format_element

    if isinstance(x, TorusElement):
        return format_element(x)
    return str(x)


# generic helpers

def dominant_coefficients(x: TorusElement) -> dict:
    return {m: c for m, c in x.terms.items() if m.is_dominant()}


def has_unique_dominant(x: TorusElement) -> bool:
    dom = dominant_coefficients(x)
    return len(dom) == 1 and next(iter(dom.values())).is_one()


def normalize_dominant(x: TorusElement) -> TorusElement:
    """Rescale so that the highest dominant monomial has coefficient 1."""
    data = x.backend.cartan
    dom = list(dominant_coefficients(x))
    top = [m for m in dom if all(m == m2 or not _leq(m, m2, data) for m2 in dom)]
    if len(top) != 1:
        raise AmbiguousSupport("no unique highest dominant monomial")
    u = x.terms[top[0]].unit()
    if u is None or u[0] != 1:
        raise NoSolution("highest dominant coefficient is not a parameter monomial")
    return x.scale(u[1].inverse())


def _leq(m, m2, data):
    from .torus import nakajima_leq
    return nakajima_leq(m, m2, data)


def is_bar_invariant(x: TorusElement) -> bool:
    return x.bar() == x


def fit_identity(lhs: TorusElement, rhs_terms: list) -> list:
    """Coefficients c_j with lhs = sum_j c_j rhs_j, found from private monomials."""
    be = lhs.backend
    coeffs = []
    for j, r in enumerate(rhs_terms):
        others = set()
        for k, r2 in enumerate(rhs_terms):
            if k != j:
                others.update(r2.terms)
        private = [m for m in sorted(r.terms, key=lambda m: m.sort_key()) if m not in others]
        if not private:
            raise AmbiguousSupport(f"term {j} has no monomial of its own")
        m = private[0]
        u = r.terms[m].unit()
        if u is None or abs(u[0]) != 1:
            raise NoSolution(f"term {j} has a non-unit coefficient at its private monomial")
        c = lhs.coefficient(m) * ParamLaurent.mono(u[1].inverse(), u[0])
        coeffs.append(be.norm_pl(c))
    total = be.zero()
    for c, r in zip(coeffs, rhs_terms):
        total = total + r.scale(c)
    if total != lhs:
        raise NoSolution("the fitted combination does not reproduce the left side")
    return coeffs


# sl3 example in C_Q

_BACKENDS: dict = {}


def shared_backend(label: str, ctx: QuotientContext | None = None, keep=None) -> CartanBackend:
    """One backend per (type, quotient, projection) so that elements compare."""
    ctx = ctx or QuotientContext.none()
    key = (label, ctx.kind, ctx.relations, tuple(sorted(keep)) if keep else None)
    be = _BACKENDS.get(key)
    if be is None:
        be = _BACKENDS[key] = CartanBackend(label, ctx, keep)
    return be


def _sl3(ctx=None):
    be = shared_backend("A2", ctx)
    data = be.cartan
    V10 = fundamental_class_thin(data, 1, 0, be)
    V12 = fundamental_class_thin(data, 1, 2, be)
    V21 = fundamental_class_thin(data, 2, 1, be)
    return be, V10, V12, V21


def _sl3_products(be):
    data = be.cartan
    P = be.parse
    c = tmono(m4=Fraction(-1, 2), m2=Fraction(1, 2), p2=Fraction(1, 2), p4=Fraction(-1, 2))
    p = tmono(m2=Fraction(-1, 2), z0=1, p2=Fraction(-1, 2))
    pp = ParamLaurent.mono(p) + ParamLaurent.mono(p.inverse())
    V21 = fundamental_class_thin(data, 2, 1, be)
    prod1 = (P("Y[1,0] Y[1,2] + Y[2,3]^-1 Y[2,5]^-1 + Y[1,2]^-1 Y[1,4]^-1 Y[2,1] Y[2,3]")
             + P("Y[1,0] Y[1,4]^-1 Y[2,3] + Y[1,0] Y[2,5]^-1 + Y[1,2]^-1 Y[2,1] Y[2,5]^-1").scale(c)
             + V21.scale(p)).scale(n_param(data, 1, 0, 1, 2, 1, 2))
    prod2 = (P("Y[1,0] Y[2,1] + Y[1,0] Y[1,2] Y[2,3]^-1 + Y[1,2]^-1 Y[2,1]^2 + Y[1,2] Y[2,3]^-2"
               " + Y[1,2]^-1 Y[1,4]^-1 Y[2,1] + Y[1,4]^-1 Y[2,3]^-1")
             + P("Y[1,0] Y[1,4]^-1").scale(c)
             + P("Y[2,1] Y[2,3]^-1").scale(pp)).scale(n_param(data, 1, 0, 2, 1, 1, 2))
    prod3 = (P("Y[1,2] Y[2,1] + Y[1,2]^2 Y[2,3]^-1 + Y[1,4]^-1 Y[2,1] Y[2,3] + Y[1,4]^-2 Y[2,3]"
               " + Y[1,2] Y[2,3]^-1 Y[2,5]^-1 + Y[1,4]^-1 Y[2,5]^-1")
             + P("Y[2,1] Y[2,5]^-1").scale(c.inverse())
             + P("Y[1,2] Y[1,4]^-1").scale(pp)).scale(n_param(data, 1, 0, 2, 1, -1, 2))
    return prod1, prod2, prod3


def _sl3_commutator_rhs(be):
    data = be.cartan
    P = be.parse
    r1 = ParamLaurent.const(1) - ParamLaurent.mono(tmono(m4=1, m2=-1, p2=-1, p4=1))
    r1b = ParamLaurent.const(1) - ParamLaurent.mono(tmono(m4=-1, m2=1, p2=1, p4=-1))
    v = ParamLaurent.const(1) - ParamLaurent.mono(tmono(m2=1, z0=-2, p2=1))
    V21 = fundamental_class_thin(data, 2, 1, be)
    rest1 = (star(P("Y[1,0]"), P("Y[1,4]^-1 Y[2,3]")) + star(P("Y[1,0]"), P("Y[2,5]^-1"))
             + star(P("Y[1,2]^-1 Y[2,1]"), P("Y[2,5]^-1"))).scale(r1)
    dom1 = V21.scale(n_param(data, 1, 0, 2, 1, 1, 2)).scale(v)
    c2 = star(P("Y[1,0]"), P("Y[1,4]^-1")).scale(r1)
    c3 = star(P("Y[2,5]^-1"), P("Y[2,1]")).scale(r1b)
    return rest1, dom1, c2, c3


def _sl3_commutators(be, V10, V12, V21):
    data = be.cartan
    N12 = be.norm(n_param(data, 1, 0, 1, 2))
    N21 = be.norm(n_param(data, 1, 0, 2, 1))
    k1 = star(V10, V12) - star(V12, V10).scale(N12)
    k2 = star(V10, V21) - star(V21, V10).scale(N21)
    k3 = star(V12, V21) - star(V21, V12).scale(N21.inverse())
    return k1, k2, k3


def sl3_cq_corpus() -> Report:
    rep = Report("sl3-cq-products")
    be, V10, V12, V21 = _sl3()
    data = be.cartan
    P = be.parse
    rep.equal("fundamental/V1(1)", V10, P("Y[1,0] + Y[1,2]^-1 Y[2,1] + Y[2,3]^-1"))
    rep.equal("fundamental/V1(q2)", V12, P("Y[1,2] + Y[1,4]^-1 Y[2,3] + Y[2,5]^-1"))
    rep.equal("fundamental/V2(q)", V21, P("Y[2,1] + Y[1,2] Y[2,3]^-1 + Y[1,4]^-1"))
    tail = (8, (-3, 0, 3, 0, 0, 0))
    rep.equal("tail/N(1,0;1,2)", n_raw(data, 1, 0, 1, 2), ExpSeq.make({-2: 1, 0: -1, 2: -2, 4: 3}, tail))
    rep.equal("tail/N(1,0;2,1)", n_raw(data, 1, 0, 2, 1), ExpSeq.make({0: 1, 2: -3, 4: 3}, tail))
    d1, d2, d3 = _sl3_products(be)
    rep.equal("product/V1(1)*V1(q2)", star(V10, V12), d1)
    rep.equal("product/V1(1)*V2(q)", star(V10, V21), d2)
    rep.equal("product/V1(q2)*V2(q)", star(V12, V21), d3)
    k1, k2, k3 = _sl3_commutators(be, V10, V12, V21)
    rest1, dom1, c2, c3 = _sl3_commutator_rhs(be)
    rep.equal("commutator/V1(1),V1(q2)", k1, rest1 + dom1)
    rep.equal("commutator/V1(1),V2(q)", k2, c2)
    rep.equal("commutator/V1(q2),V2(q)", k3, c3)
    # in the quotient only the term carried by a dominant monomial survives
    bs, S10, S12, S21 = _sl3(QuotientContext.standard())
    q1, q2, q3 = _sl3_commutators(bs, S10, S12, S21)
    _, dom1s, _, _ = _sl3_commutator_rhs(bs)
    rep.equal("quotient/defect V1(1),V1(q2)", q1 - dom1s, bs.zero())
    rep.check("quotient/surviving term is nonzero", not dom1s.is_zero())
    rep.check("quotient/surviving term is a multiple of V2(q)", has_unique_dominant(S21) and set(dom1s.terms) == set(S21.terms))
    rep.equal("quotient/defect V1(1),V2(q)", q2, bs.zero())
    rep.equal("quotient/defect V1(q2),V2(q)", q3, bs.zero())
    return rep


def sl3_simple_classes() -> dict:
    """The three simple classes of the sl3 example, in the quotient torus."""
    bs, S10, S12, S21 = _sl3(QuotientContext.standard())
    data = bs.cartan
    p = tmono(m2=Fraction(-1, 2), z0=1, p2=Fraction(-1, 2))
    return {
        "L(Y10Y12)": star(S10, S12).scale(bs.norm(n_param(data, 1, 0, 1, 2, -1, 2))) - S21.scale(bs.norm(p)),
        "L(Y10Y21)": star(S10, S21).scale(bs.norm(n_param(data, 1, 0, 2, 1, -1, 2))),
        "L(Y12Y21)": star(S12, S21).scale(bs.norm(n_param(data, 1, 0, 2, 1, 1, 2))),
    }


def sl3_cq_simples() -> Report:
    rep = Report("sl3-cq-simples")
    bs = _sl3(QuotientContext.standard())[0]
    data = bs.cartan
    P = bs.parse
    p = tmono(m2=Fraction(-1, 2), z0=1, p2=Fraction(-1, 2))
    pp = ParamLaurent.mono(p) + ParamLaurent.mono(p.inverse())
    L = sl3_simple_classes()
    e2 = (P("Y[1,0] Y[2,1] + Y[1,0] Y[1,2] Y[2,3]^-1 + Y[1,2]^-1 Y[2,1]^2 + Y[1,2]^-1 Y[1,4]^-1 Y[2,1]"
            " + Y[1,2] Y[2,3]^-2 + Y[1,4]^-1 Y[2,3]^-1 + Y[1,0] Y[1,4]^-1")
          + P("Y[2,1] Y[2,3]^-1").scale(pp))
    e3 = (P("Y[1,2] Y[2,1] + Y[1,2]^2 Y[2,3]^-1 + Y[1,4]^-1 Y[2,1] Y[2,3] + Y[1,4]^-2 Y[2,3]"
            " + Y[1,2] Y[2,3]^-1 Y[2,5]^-1 + Y[1,4]^-1 Y[2,5]^-1 + Y[2,1] Y[2,5]^-1")
          + P("Y[1,2] Y[1,4]^-1").scale(pp))
    rep.equal("L(Y10Y21)", L["L(Y10Y21)"], e2)
    rep.equal("L(Y12Y21)", L["L(Y12Y21)"], e3)
    # L(Y10Y12) is the KR class: six monomials, all coefficient 1
    kr = TorusElement(bs, {m: 1 for m in q_character(data, kr_monomial(1, 2, 0))})
    rep.equal("L(Y10Y12)", L["L(Y10Y12)"], kr)
    for name, x in sorted(L.items()):
        rep.check(f"bar-invariant/{name}", is_bar_invariant(x))
        rep.check(f"unique-dominant/{name}", has_unique_dominant(x))
    return rep


# the two-parameter example

TWO_PARAM_L1 = [[0, 1, -1], [-1, 0, 0], [1, 0, 0]]
TWO_PARAM_L2 = [[0, 0, -1], [0, 0, 0], [1, 0, 0]]


def two_param_seed(specialize_t2: bool = False) -> ToroidalSeed:
    from .torus import FiniteBackend

    lam = {1: TWO_PARAM_L1} if specialize_t2 else {1: TWO_PARAM_L1, 2: TWO_PARAM_L2}
    be = FiniteBackend(3, lam)
    return ToroidalSeed.build(be, [be.gen(k) for k in (1, 2, 3)], [[0], [-1], [1]])


def _t(a, e=1) -> ParamMonomial:
    return ParamMonomial.t(a, e)


def _serre(X1, X1p, t1, t2):
    be = X1.backend
    c1 = (ParamLaurent.mono(t1 ** -2 * t2 ** -1) + 1) * ParamLaurent.mono(t1)
    r1 = star_all(X1, X1, X1p) - star_all(X1, X1p, X1).scale(c1) + star_all(X1p, X1, X1).scale(t2.inverse())
    c2 = (ParamLaurent.mono(t1 ** 2 * t2) + 1) * ParamLaurent.mono(t1.inverse())
    r2 = star_all(X1p, X1p, X1) - star_all(X1p, X1, X1p).scale(c2) + star_all(X1, X1p, X1p).scale(t2)
    return r1, r2


def two_param_serre_check() -> Report:
    from .cluster import check_compatibility, exchange_graph, lambda_matrices, mutate_seed

    rep = Report("a1-two-param-serre")
    seed = two_param_seed()
    be = seed.backend
    X1, X2, X3 = seed.variables
    t1, t2 = _t(1), _t(2)
    X1p = mutate_seed(seed, 0).variables[0]
    half = Fraction(1, 2)
    rep.equal("exchange/X1'*X1", star(X1p, X1), X2.scale(_t(1, -half)) + X3.scale((t1 * t2) ** half))
    rep.equal("exchange/X1*X1'", star(X1, X1p), X2.scale(_t(1, half)) + X3.scale((t1 * t2) ** -half))
    r1, r2 = _serre(X1, X1p, t1, t2)
    rep.equal("serre/first", r1, be.zero())
    rep.equal("serre/second", r2, be.zero())
    comp = check_compatibility(seed)
    lam = lambda_matrices(seed)
    B = [row[0] for row in seed.B]
    btl = {a: [sum(B[i] * L[i][j] for i in range(3)) for j in range(3)] for a, L in lam.items()}
    rep.check("compatibility/ok", comp.ok)
    rep.equal("compatibility/B^T Lambda_1", btl.get(1), [2, 0, 0])
    rep.equal("compatibility/B^T Lambda_2", btl.get(2), [1, 0, 0])
    g = exchange_graph(seed)
    rep.equal("graph/nodes", len(g.nodes), 2)
    rep.check("graph/finite", g.finite)
    s2 = mutate_seed(mutate_seed(seed, 0), 0)
    rep.check("mutation/involutive", s2 == seed)
    sp = two_param_seed(specialize_t2=True)
    Y1 = sp.variables[0]
    Y1p = mutate_seed(sp, 0).variables[0]
    r1, r2 = _serre(Y1, Y1p, t1, ONE)
    rep.equal("specialized/first", r1, sp.backend.zero())
    rep.equal("specialized/second", r2, sp.backend.zero())
    return rep


# sl2

def sl2_corpus(kmax: int = 6, ps=(0, 2, 4)) -> Report:
    rep = Report("sl2-tsystem")
    be = sl2_backend()
    P = be.parse
    rep.equal("fundamental/V(1)", kr_class_sl2(be, 1, 0), P("Y[1,0] + Y[1,2]^-1"))
    thin = fundamental_class_thin("A1", 1, 4, be)
    rep.equal("fundamental/thin V(q4)", thin, kr_class_sl2(be, 1, 4))
    for p in ps:
        for k in range(1, kmax + 1):
            rep.check(f"tsystem/k={k},p={p}", tsystem_sl2(k, p, be))
            rep.check(f"kr-class/k={k},p={p}", set(kr_class_sl2(be, k, p).terms) == set(q_character(be.cartan, kr_monomial(1, k, p))))
        for l in range(2, kmax + 1):
            rep.check(f"recursion/l={l},p={p}", kr_recursion_sl2(l, p, be))
    for r in (0, 1, -1):
        for h in range(1, 5):
            rep.check(f"product/r={r},h={h}", sl2_product_check(r, h, be))
            rep.check(f"commutation/r={r},h={h}", sl2_commutation_check(r, h, be))
            rep.check(f"surjection/r={r},h={h}", sl2_surjection_check(r, r + h, be))
    W = lambda k, p: kr_class_sl2(be, k, p)
    coeffs = fit_identity(star(W(2, 0), W(2, 2)), [star(W(1, 2), W(3, 0)), be.one()])
    rep.equal("fit/tsystem coefficients", coeffs, [ParamLaurent.mono(be.norm(tmono(z0=-1) * sl2_s())), ParamLaurent.const(1)])
    for k in (1, 2):
        rep.check(f"e-block/k={k}", verify_e_block_quotient("A1", 1, 0, k))
    return rep


# A-Y commutation

def ay_expected(i, r, j, s, standard: bool) -> ParamMonomial:
    if i != j:
        return ONE
    if standard:
        e = (1 if s - r == 1 else 0) - (1 if r - s == 1 else 0)
        return tmono(m2=1, z0=-2, p2=1) ** e
    return tprod_int([(r - s - 1, 1), (r - s + 1, -1), (s - r - 1, -1), (s - r + 1, 1)])


def ay_check(label: str, samples: int = 50, seed: int = 0) -> Report:
    import random

    from .torus import commutator_factor

    rep = Report(f"ay-commutation-{label}")
    data = cartan_data(label)
    rng = random.Random(seed)
    xi = default_bipartite(data)
    bs = CartanBackend(data, QuotientContext.standard())
    bn = CartanBackend(data)
    done = 0
    while done < samples:
        i, j = rng.choice(data.nodes), rng.choice(data.nodes)
        r = rng.randint(-6, 6)
        s = r + rng.choice([-3, -1, 1, 3, 5, -5, 7, -7])
        if (r - s + xi[i] - xi[j]) % 2 != 1:
            s += 1
        if (r - s + xi[i] - xi[j]) % 2 != 1:
            continue
        done += 1
        for be, std in ((bn, False), (bs, True)):
            got = commutator_factor(be.A(i, r), be.Y(j, s))
            tag = "standard" if std else "none"
            rep.equal(f"{tag}/A[{i},{r}],Y[{j},{s}]", got, be.norm(ay_expected(i, r, j, s, std)))
    return rep


# power products

def power_products(m: int):
    """(X1')^m * X1^m in the two-parameter seed, with the expected expansion."""
    from .cluster import mutate_seed

    seed = two_param_seed()
    be = seed.backend
    X1, X2, X3 = seed.variables
    X1p = mutate_seed(seed, 0).variables[0]
    lhs = star(_power(X1p, m), _power(X1, m))
    s = two_param_s()
    expected = be.zero()
    for j in range(m + 1):
        c = ParamLaurent.mono(s ** (-j * j)) * gaussian_binomial(m, j, s ** -2)
        expected = expected + be.mono({2: j, 3: m - j}).scale(c)
    return lhs, expected.scale(_t(1, Fraction(m * m, 2)) * _t(2, Fraction(m * m, 2)))


def two_param_s() -> ParamMonomial:
    return _t(1) * _t(2, Fraction(1, 2))


def _power(x, m):
    out = x.backend.one()
    for _ in range(m):
        out = star(out, x)
    return out


def gaussian_binomial(m: int, j: int, q: ParamMonomial) -> ParamLaurent:
    """[m choose j] in the variable q, via the Pascal recursion."""
    row = [ParamLaurent.const(1)]
    for n in range(1, m + 1):
        new = []
        for k in range(n + 1):
            left = row[k - 1] if k >= 1 else ParamLaurent()
            right = row[k] * ParamLaurent.mono(q ** k) if k < n else ParamLaurent()
            new.append(left + right)
        row = new
    return row[j]


SL3_POWER_TABLE = {
    2: {0: [0], 1: [-1, -3], 2: [-4]},
    3: {0: [0], 1: [-1, -3, -5], 2: [-4, -6, -8], 3: [-9]},
    4: {0: [0], 1: [-1, -3, -5, -7], 2: [-4, -6, -8, -8, -10, -12], 3: [-9, -11, -13, -15], 4: [-16]},
}


def power_products_check() -> Report:
    """Both the closed Gaussian form and the tabled s-polynomials, plus the
    Cartan realization of the same products in the sl3 quotient torus."""
    rep = Report("powers-kl")
    s = two_param_s()
    for m in (2, 3, 4):
        lhs, expected = power_products(m)
        rep.equal(f"gaussian/m={m}", lhs, expected)
        be = lhs.backend
        pref = _t(1, Fraction(m * m, 2)) * _t(2, Fraction(m * m, 2))
        table = be.zero()
        for j, pows in SL3_POWER_TABLE[m].items():
            c = ParamLaurent()
            for e in pows:
                c = c + ParamLaurent.mono(s ** e)
            table = table + be.mono({2: j, 3: m - j}).scale(c)
        rep.equal(f"table/m={m}", lhs, table.scale(pref))
    # the same identity inside the sl3 quotient torus
    bs = _sl3(QuotientContext.standard())[0]
    data = bs.cartan
    L = sl3_simple_classes()
    S10 = fundamental_class_thin(data, 1, 0, bs)
    S12 = fundamental_class_thin(data, 1, 2, bs)
    S21 = fundamental_class_thin(data, 2, 1, bs)
    t1 = n_param(data, 1, 0, 2, 1)
    t2 = (n_param(data, 1, 0, 1, 2) * n_param(data, 1, 0, 2, 1)).inverse()
    sc = bs.norm(t1 * t2 ** Fraction(1, 2))
    rep.equal("cartan/s", sc, bs.norm(tmono(m2=Fraction(-1, 2), z0=1, p2=Fraction(-1, 2))))
    X3 = L["L(Y10Y12)"]
    for m in (2, 3):
        lhs = star(_power(S12, m), _power(S10, m))
        exp = bs.zero()
        for j, pows in SL3_POWER_TABLE[m].items():
            c = ParamLaurent()
            for e in pows:
                c = c + ParamLaurent.mono(sc ** e)
            # X2 and X3 commute, so the monomial is an ordinary product
            exp = exp + star(_power(S21, j), _power(X3, m - j)).scale(c)
        pref = bs.norm((t1 * t2) ** Fraction(m * m, 2))
        rep.equal(f"cartan/m={m}", lhs, exp.scale(pref))
    return rep


# C1 seeds

def _c1_tsystem(prof: CategoryProfile, k: int):
    be, data = prof.backend, prof.cartan
    top = truncated_class_C1(prof, ("top", k))
    bot = truncated_class_C1(prof, ("bottom", k))
    kr = truncated_class_C1(prof, ("kr", k))
    c1 = be.norm(n_param(data, k, 0, k, 2, -1, 2))
    seq = ExpSeq()
    for i in data.neighbors(k):
        seq = seq + n_raw(data, i, 0, k, 1)
    c2 = be.norm(tpow(seq, -1, 2))
    nb = [truncated_class_C1(prof, ("bottom" if prof.xi[i] == 1 else "top", i)) for i in data.neighbors(k)]
    return top, bot, kr.scale(c1), star_all(*nb).scale(c2)


def _exchange_summands_bar_invariant(seed: ToroidalSeed, k: int) -> bool:
    from .cluster import exchange_terms
    from .torus import exact_divide_right

    y = seed.variables[k]
    for t in exchange_terms(seed, k):
        try:
            q = exact_divide_right(t, y)
        except ValueError:
            return False
        if not is_bar_invariant(q):
            return False
    return True


def verify_c1_theorem(label: str, xi=None, graph: bool = True) -> Report:
    from .cluster import (
        check_compatibility, classical_graph, classical_specialize, exchange_graph, mutate_seed, mutate_word,
    )

    prof, seed = build_c1_seed(label, xi)
    be, data, n = prof.backend, prof.cartan, prof.cartan.n
    rep = Report(f"c1-seed-{data.label}")
    comp = check_compatibility(seed)
    rep.check("compatibility/ok", comp.ok, "compatible", f"residues={comp.residues} signs={comp.sign_violations}")
    lam = {a: [[seed.Q[p][q].exponent(a) for q in range(2 * n)] for p in range(2 * n)] for a in (-2, 0)}
    for a in (-2, 0):
        rep.equal(f"lambda/{a}", lam[a], c1_lambda(data, prof.xi, a))
        btl = [[sum(seed.B[i][kk] * lam[a][i][j] for i in range(2 * n)) for j in range(2 * n)] for kk in range(n)]
        d = 1 if a == -2 else -2
        want = [[d if j == kk else 0 for j in range(2 * n)] for kk in range(n)]
        rep.equal(f"compatibility/B^T Lambda_{a}", btl, want)
    for k in data.nodes:
        x = prof.xi[k]
        top, bot, t1, t2 = _c1_tsystem(prof, k)
        rep.equal(f"tsystem/{k}", star(top, bot), t1 + t2)
        from .torus import exact_divide_left
        rep.check(f"tsystem-summands-bar/{k}", all(is_bar_invariant(exact_divide_left(t, top)) for t in (t1, t2)))
        for name in ("top", "kr", "bottom"):
            rep.check(f"unique-dominant/{name}/{k}", has_unique_dominant(truncated_class_C1(prof, (name, k))))
        if x == 1:
            rep.equal(f"mutation/{k}", mutate_seed(seed, k - 1).variables[k - 1], bot)
            rep.check(f"exchange-bar/{k}", _exchange_summands_bar_invariant(seed, k - 1))
        else:
            rep.equal(f"mutation/min-affinization/{k}", mutate_seed(seed, k - 1).variables[k - 1],
                      minimal_affinization_C1(prof, k))
            rep.check(f"exchange-bar/{k}", _exchange_summands_bar_invariant(seed, k - 1))
            word = [j - 1 for j in data.nodes if prof.xi[j] == 1]
            pre = mutate_word(seed, word)
            rep.equal(f"mutation/word/{k}", mutate_seed(pre, k - 1).variables[k - 1], bot)
            rep.check(f"exchange-bar/word/{k}", _exchange_summands_bar_invariant(pre, k - 1))
    if graph:
        g = exchange_graph(seed)
        rep.check("graph/finite", g.finite)
        rep.equal("graph/nodes-vs-classical", len(g.nodes), classical_graph(classical_specialize(seed)))
        expected = C1_GRAPH_SIZES.get(data.label)
        if expected is not None:
            rep.equal("graph/nodes", len(g.nodes), expected)
    return rep


# number of clusters of the principal part (finite type count)
C1_GRAPH_SIZES = {"A1": 2, "A2": 5, "A3": 14, "A4": 42, "D4": 50}


# C1^ob in type A2

C1OB_L1 = [[0, 1, 1, 0], [-1, 0, 1, 1], [-1, -1, 0, -1], [0, -1, 1, 0]]
C1OB_L2 = [[0, 0, 1, 0], [0, 0, 1, 1], [-1, -1, 0, -1], [0, -1, 1, 0]]
C1OB_B = [[0, 1], [-1, 0], [-1, 0], [1, -1]]


def c1ob_finite_seed() -> ToroidalSeed:
    from .torus import FiniteBackend

    be = FiniteBackend(4, {1: C1OB_L1, 2: C1OB_L2})
    return ToroidalSeed.build(be, [be.gen(k) for k in range(1, 5)], C1OB_B)


def c1ob_cartan_seed(ctx: QuotientContext | None = None) -> ToroidalSeed:
    be = shared_backend("A2", ctx or QuotientContext.standard())
    P = be.parse
    vars_ = [P("Y[1,2]"), P("Y[2,3]"), P("Y[1,0] Y[1,2]"), P("Y[2,1] Y[2,3]")]
    return ToroidalSeed.build(be, vars_, C1OB_B)


def c1ob_parameters(be) -> tuple:
    data = be.cartan
    t1 = n_param(data, 1, 0, 2, 1)
    t2 = (n_param(data, 1, 0, 1, 2) * n_param(data, 1, 0, 2, 1)).inverse()
    return be.norm(t1), be.norm(t2)


def c1ob_a2_corpus() -> Report:
    from .cluster import (
        check_compatibility, classical_graph, classical_specialize, exchange_graph, laurent_report, lambda_matrices,
        mutate_seed, mutate_word,
    )

    rep = Report("a2-c1ob-graph")
    half = Fraction(1, 2)
    seed = c1ob_finite_seed()
    X1, X2, X3, X4 = seed.variables
    t1, t2 = _t(1), _t(2)
    rep.check("compatibility/ok", check_compatibility(seed).ok)
    lam = lambda_matrices(seed)
    for a, d in ((1, 2), (2, 1)):
        btl = [[sum(C1OB_B[i][k] * lam[a][i][j] for i in range(4)) for j in range(4)] for k in range(2)]
        rep.equal(f"compatibility/B^T Lambda_{a}", btl, [[d, 0, 0, 0], [0, d, 0, 0]])
    S1 = mutate_seed(seed, 0)
    S2 = mutate_seed(seed, 1)
    S12 = mutate_seed(S1, 1)
    S21 = mutate_seed(S2, 0)
    S121 = mutate_seed(S12, 0)
    X1p, X2b = S1.variables[0], S2.variables[1]
    X2p, X1b = S12.variables[1], S21.variables[0]
    X1pp = S121.variables[0]
    be = seed.backend
    rep.equal("exchange/X1*X1'", star(X1, X1p), X4 + seed.commutative_monomial([0, 1, 1, 0]).scale(t1 * t2 ** half))
    rep.equal("exchange/X2*X2bullet", star(X2, X2b), X1.scale(t1 ** -half) + X4.scale((t1 * t2) ** half))
    rep.equal("exchange/X2*X2'", star(X2, X2p), be.one() + X1p.scale(t1 * t2 ** half))
    rep.equal("exchange/X1*X1bullet", star(X1, X1b), X2b.scale(t1 ** -half) + X3.scale((t1 * t2) ** half))
    rep.equal("exchange/X1'*X1''", star(X1p, X1pp), X3 + S12.commutative_monomial([0, 1, 0, 1]).scale(t1 * t2 ** half))
    rep.equal("identify/X2bullet=X1''", X2b, X1pp)
    rep.equal("identify/X1bullet=X2'", X1b, X2p)
    rep.check("identify/S121=S21 up to swap", S121.canonical().key() == S21.canonical().key())
    g = exchange_graph(seed)
    rep.equal("graph/nodes", len(g.nodes), 5)
    rep.equal("graph/edges", len(g.edges), 5)
    rep.check("graph/finite", g.finite)
    rep.equal("graph/classical", classical_graph(classical_specialize(seed)), 5)
    lr = laurent_report(seed, X1b)
    want = {(0, -1, 0, 0): ParamLaurent.const(1), (-1, -1, 0, 1): ParamLaurent.const(1), (-1, 0, 1, 0): ParamLaurent.const(1)}
    rep.equal("laurent/X1bullet", lr.terms, want)
    positive = []
    for s in g.nodes:
        for v in s.variables[:s.m]:
            positive.append(laurent_report(seed, v).positive)
    rep.check("laurent/positivity", all(positive))
    # Cartan realization inside the quotient torus
    cs = c1ob_cartan_seed()
    cb = cs.backend
    P = cb.parse
    c1, c2 = c1ob_parameters(cb)
    for i in range(4):
        for j in range(4):
            want = cb.norm((c1 ** C1OB_L1[i][j]) * (c2 ** C1OB_L2[i][j]))
            rep.equal(f"cartan/Q[{i + 1}][{j + 1}]", cs.Q[i][j], want)
    data = cb.cartan
    gens = profile("C1_OB", "A2").generators
    V10 = truncate(fundamental_class_thin(data, 1, 0, cb), gens)
    V21 = truncate(fundamental_class_thin(data, 2, 1, cb), gens)
    rep.equal("cartan/X1'", mutate_seed(cs, 0).variables[0], P("Y[1,0] Y[2,3] + Y[1,2]^-1 Y[2,1] Y[2,3]"))
    rep.equal("cartan/X2bullet", mutate_seed(cs, 1).variables[1], V21)
    rep.equal("cartan/X1bullet", mutate_word(cs, [1, 0]).variables[0], V10)
    rep.equal("cartan/V2(q) text", V21, P("Y[2,1] + Y[1,2] Y[2,3]^-1"))
    rep.equal("cartan/graph", len(exchange_graph(cs).nodes), 5)
    return rep


# B2 appendix

def b2_backend(ctx=None) -> CartanBackend:
    return shared_backend("B2", ctx if ctx is not None else QuotientContext.custom([B2_RELATION]))


B2_LAMBDA1 = [[0, 1, -1, 1, 0, -1], [-1, 0, 0, 1, 0, -1], [1, 0, 0, 1, 0, -1],
              [-1, -1, -1, 0, 0, 0], [0, 0, 0, 0, 0, 0], [1, 1, 1, 0, 0, 0]]
B2_LAMBDA2 = [[0, -1, 0, -2, -2, -1], [1, 0, 0, -1, -1, 0], [0, 0, 0, -1, -1, 0],
              [2, 1, 1, 0, -1, 0], [2, 1, 1, 1, 0, 1], [1, 0, 0, 0, -1, 0]]
B2_BT = [[0, -1, 1, 0, 0, 0], [1, 0, -1, -1, 1, 0], [-1, 1, 0, 0, -1, 1]]


def b2_classes(be: CartanBackend) -> dict:
    data = be.cartan
    gens = profile("B2_QFLAT").generators
    out = {}
    for i, r in ((1, 0), (1, 2), (1, 4), (2, 1), (2, 3), (2, 5)):
        out[(i, r)] = truncate(fundamental_class_thin(data, i, r, be), gens)
    return out


def b2_parameters(be) -> tuple:
    data = be.cartan
    t1 = n_param(data, 1, 0, 2, 1)
    t2 = n_param(data, 1, 0, 1, 2) * n_param(data, 1, 0, 2, 1)
    return be.norm(t1), be.norm(t2)


def b2_seed(be=None) -> ToroidalSeed:
    be = be or b2_backend()
    P = be.parse
    vars_ = [P("Y[2,5]"), P("Y[1,0] Y[2,5] + Y[1,2]^-1 Y[2,1] Y[2,5]"), P("Y[1,4]"),
             P("Y[2,1] Y[2,5]"), P("Y[1,0] Y[1,2] Y[1,4]"), P("Y[2,3]")]
    B = [[B2_BT[k][i] for k in range(3)] for i in range(6)]
    return ToroidalSeed.build(be, vars_, B)


def b2_corpus() -> Report:
    from .cluster import (
        check_compatibility, exchange_graph, classical_graph, classical_specialize, mutate_seed,
        principal_part, quiver_mutation_class,
    )
    from .torus import exact_divide_left

    rep = Report("b2-qflat")
    half = Fraction(1, 2)
    b0 = b2_backend(QuotientContext.none())
    data = b0.cartan
    P0 = b0.parse
    V = b2_classes(b0)
    table = {(1, 0): "Y[1,0] + Y[1,2]^-1 Y[2,1] + Y[2,5]^-1 Y[1,4]", (1, 2): "Y[1,2] + Y[1,4]^-1 Y[2,3]",
             (1, 4): "Y[1,4]", (2, 1): "Y[2,1] + Y[2,5]^-1 Y[1,2] Y[1,4]", (2, 3): "Y[2,3]", (2, 5): "Y[2,5]"}
    for key, text in sorted(table.items()):
        rep.equal(f"truncated/V{key[0]}(q^{key[1]})", V[key], P0(text))
    tail = lambda k: (14, (-k, 0, -k, 0, 0, 0, k, 0, k, 0, 0, 0))
    rep.equal("tail/N(1,0;1,2)", n_raw(data, 1, 0, 1, 2), ExpSeq.make({-2: 1, 0: -1, 4: -1, 8: 1, 10: 1}, tail(1)))
    rep.equal("tail/N(1,0;2,1)", n_raw(data, 1, 0, 2, 1), ExpSeq.make({0: 1, 2: -1, 4: -1, 8: 1, 10: 1}, tail(1)))
    rep.equal("tail/N(2,0;2,4)", n_raw(data, 2, 0, 2, 4),
              ExpSeq.make({-4: 1, -2: 1, 0: -1, 2: -2, 4: -2, 8: 3, 10: 3}, tail(3)))
    N12, N21, N24 = n_raw(data, 1, 0, 1, 2), n_raw(data, 1, 0, 2, 1), n_raw(data, 2, 0, 2, 4)
    cprod = tpow(N12.scale(2) - N24 + N21, 1, 2)
    prod = (P0("Y[1,0] Y[1,2] + Y[2,3] Y[2,5]^-1 + Y[1,2]^-1 Y[1,4]^-1 Y[2,1] Y[2,3]")
            + P0("Y[1,0] Y[1,4]^-1 Y[2,3]").scale(cprod)).scale(tpow(N12, 1, 2)) + V[(2, 1)].scale(tpow(N21, 1, 2))
    rep.equal("product/V1(1)*V1(q2)", star(V[(1, 0)], V[(1, 2)]), prod)
    comm = star(V[(1, 0)], V[(1, 2)]) - star(V[(1, 2)], V[(1, 0)]).scale(tpow(N12))
    d1 = (ParamLaurent.const(1) - ParamLaurent.mono(tmono(m2=1, z0=-2, p2=1))) * ParamLaurent.mono(tpow(N21, 1, 2))
    d2 = (ParamLaurent.const(1) - ParamLaurent.mono(tmono(m4=1, m2=-1, p2=-1, p4=1))) * \
        ParamLaurent.mono(tpow(N12.scale(3) - N24 + N21, 1, 2))
    rep.equal("commutator/V1(1),V1(q2)", comm, V[(2, 1)].scale(d1) + P0("Y[1,0] Y[1,4]^-1 Y[2,3]").scale(d2))
    # quotient torus
    be = b2_backend()
    P = be.parse
    W = b2_classes(be)
    commq = star(W[(1, 0)], W[(1, 2)]) - star(W[(1, 2)], W[(1, 0)]).scale(be.norm(tpow(N12)))
    rep.equal("quotient/defect", commq - W[(2, 1)].scale(be.norm_pl(d1)), be.zero())
    simples = {
        "L(Y10Y12)": ("Y[1,0] Y[1,2] + Y[1,2]^-1 Y[1,4]^-1 Y[2,1] Y[2,3] + Y[2,3] Y[2,5]^-1 + Y[1,0] Y[1,4]^-1 Y[2,3]",
                      star(W[(1, 0)], W[(1, 2)]) - W[(2, 1)].scale(be.norm(tpow(N21, 1, 2)))),
        "L(Y10Y14)": ("Y[1,0] Y[1,4] + Y[1,2]^-1 Y[1,4] Y[2,1] + Y[1,4]^2 Y[2,5]^-1", star(W[(1, 0)], W[(1, 4)])),
        "L(Y10Y21)": ("Y[1,0] Y[2,1] + Y[1,2]^-1 Y[2,1]^2 + Y[1,2] Y[1,4]^2 Y[2,5]^-2 + Y[1,0] Y[1,2] Y[1,4] Y[2,5]^-1",
                      star(W[(1, 0)], W[(2, 1)])),
    }
    pm = tpow(N12 - N21, 1, 2)
    for name, (text, raw) in sorted(simples.items()):
        want = P(text)
        if name == "L(Y10Y21)":
            want = want + P("Y[1,4] Y[2,1] Y[2,5]^-1").scale(ParamLaurent.mono(pm) + ParamLaurent.mono(pm.inverse()))
        got = normalize_dominant(raw)
        rep.equal(f"simple/{name}", got, want)
        rep.check(f"simple-bar/{name}", is_bar_invariant(got))
    # seed
    seed = b2_seed(be)
    t1, t2 = b2_parameters(be)
    for i in range(6):
        for j in range(6):
            rep.equal(f"seed/Q[{i + 1}][{j + 1}]", seed.Q[i][j], be.norm(t1 ** B2_LAMBDA1[i][j] * t2 ** B2_LAMBDA2[i][j]))
    comp = check_compatibility(seed)
    rep.check("compatibility/ok", comp.ok)
    rep.equal("compatibility/diagonal", comp.diagonal_in([t1, t2], be), [[2, -1]] * 3)
    rep.equal("remark/Lambda_0", [[seed.Q[i][j].exponent(0) for j in range(6)] for i in range(6)], B2_LAMBDA1)
    rep.equal("remark/Lambda_-2", [[seed.Q[i][j].exponent(-2) for j in range(6)] for i in range(6)], B2_LAMBDA2)
    X = seed.variables
    s1 = mutate_seed(seed, 0)
    rep.equal("mutation/1", s1.variables[0], W[(1, 0)])
    rep.equal("exchange/V2(q5)*V1(1)", star(W[(2, 5)], W[(1, 0)]),
              X[1].scale(t1 ** half * t2 ** -half) + X[2].scale(t1 ** -half))
    s2 = mutate_seed(seed, 1)
    X2p = s2.variables[1]
    rep.equal("mutation/2", X2p, P("Y[1,2] Y[1,4]"))
    rep.equal("exchange/X2*X2'", star(X[1], X2p),
              seed.commutative_monomial([1, 0, 0, 0, 1, 0]).scale(t1 ** -half)
              + seed.commutative_monomial([0, 0, 1, 1, 0, 0]).scale(t1 ** half * t2 ** -half))
    rep.equal("mutation/2 matrix", [[s2.B[i][k] for i in range(6)] for k in range(3)],
              [[0, 1, 0, -1, 0, 0], [-1, 0, 1, 1, -1, 0], [0, -1, 0, 0, 0, 1]])
    L2125 = P("Y[2,1] Y[2,5]")
    e1 = star(W[(2, 5)], W[(2, 1)])
    rep.equal("tsystem/V2(q5)*V2(q)", e1, L2125.scale(t1 ** half * t2 ** -1) + X2p.scale((t1 * t2) ** -half))
    e2 = star(W[(1, 4)], W[(1, 2)])
    rep.equal("tsystem/V1(q4)*V1(q2)", e2, X2p.scale(t1 ** half * t2 ** -half) + W[(2, 3)].scale(t1 ** -half))
    for name, lhs, left, terms in (
        ("V2(q)", e1, W[(2, 5)], (L2125.scale(t1 ** half * t2 ** -1), X2p.scale((t1 * t2) ** -half))),
        ("V1(q2)", e2, W[(1, 4)], (X2p.scale(t1 ** half * t2 ** -half), W[(2, 3)].scale(t1 ** -half))),
    ):
        rep.check(f"tsystem-bar/{name}", all(is_bar_invariant(exact_divide_left(t, left)) for t in terms))
    rep.equal("mutation/2,1", mutate_seed(s2, 0).variables[0], W[(2, 1)])
    rep.equal("mutation/2,3", mutate_seed(s2, 2).variables[2], W[(1, 2)])
    _, label = quiver_mutation_class(principal_part(seed))
    rep.equal("quiver/label", label, "A3")
    g = exchange_graph(seed)
    rep.equal("graph/nodes-vs-classical", len(g.nodes), classical_graph(classical_specialize(seed)))
    return rep
