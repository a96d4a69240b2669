"""Toroidal seeds, mutation and exchange graphs."""
from __future__ import annotations

import math
import os
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from .params import ONE, ExpSeq, ParamMonomial
from .torus import (
    MONO_ONE, Backend, Monomial, TorusElement, commutator_factor, exact_divide_right, star,
)


class OddExponent(ValueError):
    pass


class Truncated(RuntimeError):
    def __init__(self, msg, partial=None):
        super().__init__(msg)
        self.partial = partial


DEFAULT_MAX_NODES = 10000


def max_nodes_default() -> int:
    env = os.environ.get("TORCLUS_MAX_NODES")
    return int(env) if env else DEFAULT_MAX_NODES


def mutate_B(B: list, k: int) -> list:
    """Matrix mutation in direction ``k`` (0-based column) of an n x m matrix."""
    n, m = len(B), len(B[0]) if B else 0
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        for j in range(m):
            if i == k or j == k:
                out[i][j] = -B[i][j]
            else:
                a, b = B[i][k], B[k][j]
                if a > 0 and b > 0:
                    out[i][j] = B[i][j] + a * b
                elif a < 0 and b < 0:
                    out[i][j] = B[i][j] - a * b
                else:
                    out[i][j] = B[i][j]
    return out


def e_matrix(B: list, k: int) -> list:
    n = len(B)
    E = [[int(i == j) for j in range(n)] for i in range(n)]
    for i in range(n):
        E[i][k] = -1 if i == k else max(0, -B[i][k])
    return E


def mutate_Lambda(L: list, k: int, B: list) -> list:
    """E_k^T L E_k for an integer matrix L."""
    E = e_matrix(B, k)
    n = len(L)
    LE = [[sum(L[i][p] * E[p][j] for p in range(n)) for j in range(n)] for i in range(n)]
    return [[sum(E[p][i] * LE[p][j] for p in range(n)) for j in range(n)] for i in range(n)]


def mutate_Q(Q: list, k: int, B: list) -> list:
    """Multiplicative version of ``mutate_Lambda`` on commutator monomials."""
    E = e_matrix(B, k)
    n = len(Q)
    out = [[ONE] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            acc = ExpSeq()
            for p in range(n):
                if not E[p][i]:
                    continue
                for q in range(n):
                    if E[q][j]:
                        acc = acc + Q[p][q].e.scale(E[p][i] * E[q][j])
            out[i][j] = ParamMonomial(acc)
    return out


@dataclass(frozen=True, eq=False)
class ToroidalSeed:
    """Variables (first m exchangeable), exchange matrix (n x m) and the
    quasi-commutation monomials Q[i][j] with Y_i * Y_j = Q[i][j] Y_j * Y_i."""

    backend: Backend
    variables: tuple
    B: tuple
    Q: tuple

    @classmethod
    def build(cls, backend, variables, B, Q=None):
        variables = tuple(variables)
        B = tuple(tuple(r) for r in B)
        if Q is None:
            n = len(variables)
            Q = [[ONE] * n for _ in range(n)]
            for i in range(n):
                for j in range(i + 1, n):
                    c = commutator_factor(variables[i], variables[j])
                    Q[i][j] = c
                    Q[j][i] = backend.norm(c.inverse())
        Q = tuple(tuple(r) for r in Q)
        return cls(backend, variables, B, Q)

    @property
    def n(self) -> int:
        return len(self.variables)

    @property
    def m(self) -> int:
        return len(self.B[0]) if self.B else 0

    def texts(self) -> tuple:
        return tuple(str(v) for v in self.variables)

    def key(self):
        return (self.texts(), self.B)

    def __eq__(self, other):
        return isinstance(other, ToroidalSeed) and self.backend is other.backend and \
            self.variables == other.variables and self.B == other.B and self.Q == other.Q

    def __hash__(self):
        return hash(self.key())

    def commutative_monomial(self, exps: list) -> TorusElement:
        """Commutative monomial prod Y_i^{b_i} of the seed variables (b_i >= 0,
        or any sign for monomial variables)."""
        be = self.backend
        out = be.one()
        corr = ExpSeq()
        for i, b in enumerate(exps):
            if b == 0:
                continue
            y = self.variables[i]
            if b < 0:
                y = y ** -1
            for _ in range(abs(b)):
                out = star(out, y)
        for i in range(self.n):
            for j in range(i + 1, self.n):
                if exps[i] and exps[j]:
                    corr = corr + self.Q[j][i].e.scale(exps[i] * exps[j])
        try:
            c = ParamMonomial(corr.halve())
        except ValueError:
            raise OddExponent("commutative monomial correction is not integral") from None
        return out.scale(be.norm(c))

    def canonical(self) -> "ToroidalSeed":
        m = self.m
        order = sorted(range(m), key=lambda i: str(self.variables[i]))
        perm = order + list(range(m, self.n))
        if perm == list(range(self.n)):
            return self
        vars_ = [self.variables[p] for p in perm]
        B = [[self.B[perm[i]][order[j]] for j in range(m)] for i in range(self.n)]
        Q = [[self.Q[perm[i]][perm[j]] for j in range(self.n)] for i in range(self.n)]
        return ToroidalSeed(self.backend, tuple(vars_), tuple(tuple(r) for r in B), tuple(tuple(r) for r in Q))


@dataclass
class CompatibilityReport:
    ok: bool
    diagonal: list
    residues: list
    sign_violations: list

    def diagonal_in(self, basis: list, backend: Backend) -> list:
        """Exponent vectors of the diagonal entries in a parameter basis."""
        return [decompose(d, basis, backend) for d in self.diagonal]


def check_compatibility(seed: ToroidalSeed) -> CompatibilityReport:
    be = seed.backend
    n, m = seed.n, seed.m
    diag, residues = [], []
    for k in range(m):
        for j in range(n):
            acc = ExpSeq()
            for i in range(n):
                b = seed.B[i][k]
                if b:
                    acc = acc + seed.Q[i][j].e.scale(b)
            p = be.norm(ParamMonomial(acc))
            if j == k:
                diag.append(p)
            elif not p.is_one():
                residues.append((k, j, p))
    bad = []
    idx = set()
    for d in diag:
        idx.update(d.e.support_window())
    for a in sorted(idx):
        vals = [d.e.value(a) for d in diag]
        if any(v > 0 for v in vals) and any(v < 0 for v in vals):
            bad.append(a)
    return CompatibilityReport(not residues and not bad, diag, residues, bad)


def decompose(p: ParamMonomial, basis: list, backend: Backend | None = None) -> list:
    """Rational exponents x with p = prod basis_k^{x_k}; raises if impossible."""
    import sympy

    if backend is not None:
        p = backend.norm(p)
        basis = [backend.norm(b) for b in basis]
    seqs = [b.e for b in basis] + [p.e]
    lo = min([s.support_window().start for s in seqs if not s.is_zero()] or [0])
    hi = max([s.support_window().stop for s in seqs if not s.is_zero()] or [0])
    per = 1
    for s in seqs:
        if s.period:
            per = per * s.period // math.gcd(per, s.period)
    idx = range(lo, hi + per)
    A = sympy.Matrix([[b.e.value(a) for b in basis] for a in idx])
    y = sympy.Matrix([p.e.value(a) for a in idx])
    sol, params = A.gauss_jordan_solve(y)
    if params.shape[0]:
        sol = sol.subs({s: 0 for s in params})
    x = [Fraction(int(v.p), int(v.q)) for v in sol]
    check = ExpSeq()
    for b, c in zip(basis, x):
        if c.denominator != 1:
            raise ValueError("non-integral decomposition")
        check = check + b.e.scale(int(c))
    if check != p.e:
        raise ValueError("parameter monomial is not in the span of the basis")
    return [int(c) for c in x]


def lambda_matrices(seed: ToroidalSeed, basis: list | None = None) -> dict:
    """Integer matrices Lambda with Q[i][j] = prod_a t_a^{Lambda_a(i,j)}.

    With ``basis`` the exponents are taken with respect to those parameter
    monomials (keys 1..r); otherwise with respect to the t_a themselves.
    """
    n = seed.n
    if basis is None:
        idx = set()
        for row in seed.Q:
            for q in row:
                if q.e.tail is not None:
                    raise ValueError("infinite support, pass a basis")
                idx.update(a for a, _ in q.e.finite)
        out = {}
        for a in sorted(idx):
            out[a] = [[Fraction(seed.Q[i][j].e.value(a), 2) for j in range(n)] for i in range(n)]
            out[a] = [[int(x) for x in row] for row in out[a]]
        return out
    cols = [[decompose(seed.Q[i][j], basis, seed.backend) for j in range(n)] for i in range(n)]
    return {k + 1: [[cols[i][j][k] // 2 for j in range(n)] for i in range(n)] for k in range(len(basis))}


def mutation_uv(seed: ToroidalSeed, k: int):
    """(u, v) with Y_k' * Y_k = u M+ + v M-."""
    be = seed.backend
    up, um = ExpSeq(), ExpSeq()
    for i in range(seed.n):
        b = seed.B[i][k]
        if b > 0:
            up = up + seed.Q[k][i].e.scale(b)
        elif b < 0:
            um = um + seed.Q[k][i].e.scale(-b)
    try:
        u = ParamMonomial((-up).halve())
        v = ParamMonomial((-um).halve())
    except ValueError:
        raise OddExponent(f"cannot halve the commutator in direction {k}") from None
    return be.norm(u), be.norm(v)


def exchange_terms(seed: ToroidalSeed, k: int):
    """The two summands u M+ and v M- of the exchange relation."""
    b = [seed.B[i][k] for i in range(seed.n)]
    u, v = mutation_uv(seed, k)
    Mp = seed.commutative_monomial([max(x, 0) for x in b])
    Mm = seed.commutative_monomial([max(-x, 0) for x in b])
    return Mp.scale(u), Mm.scale(v)


def mutate_seed(seed: ToroidalSeed, k: int) -> ToroidalSeed:
    if not 0 <= k < seed.m:
        raise IndexError(f"direction {k} is not exchangeable")
    tp, tm = exchange_terms(seed, k)
    new = exact_divide_right(tp + tm, seed.variables[k])
    vars_ = list(seed.variables)
    vars_[k] = new
    Q = mutate_Q(seed.Q, k, seed.B)
    Q = [[seed.backend.norm(q) for q in row] for row in Q]
    B = mutate_B([list(r) for r in seed.B], k)
    return ToroidalSeed(seed.backend, tuple(vars_), tuple(tuple(r) for r in B), tuple(tuple(r) for r in Q))


def mutate_word(seed: ToroidalSeed, word) -> ToroidalSeed:
    for k in word:
        seed = mutate_seed(seed, k)
    return seed


@dataclass
class ExchangeGraph:
    nodes: list
    edges: list
    finite: bool
    index: dict = field(default_factory=dict)

    def summary(self) -> str:
        return f"nodes={len(self.nodes)} edges={len(self.edges)} finite={'true' if self.finite else 'false'}"

    def to_dot(self) -> str:
        lines = ["graph exchange {"]
        for i, s in enumerate(self.nodes):
            label = "\\n".join(str(v) for v in s.variables[:s.m])
            lines.append(f'  n{i} [label="{label}"];')
        for a, k, b in self.edges:
            lines.append(f'  n{a} -- n{b} [label="{k + 1}"];')
        lines.append("}")
        return "\n".join(lines)


def exchange_graph(seed: ToroidalSeed, max_nodes: int | None = None, on_seed=None) -> ExchangeGraph:
    """Breadth-first enumeration of seeds up to permutation of exchangeable variables."""
    if max_nodes is None:
        max_nodes = max_nodes_default()
    start = seed.canonical()
    nodes = [start]
    index = {start.key(): 0}
    edges: dict = {}
    queue = deque([0])
    while queue:
        a = queue.popleft()
        s = nodes[a]
        if on_seed is not None:
            on_seed(s)
        for k in range(s.m):
            t = mutate_seed(s, k).canonical()
            key = t.key()
            b = index.get(key)
            if b is None:
                if len(nodes) >= max_nodes:
                    raise Truncated(f"more than {max_nodes} seeds",
                                    ExchangeGraph(nodes, sorted(edges.values()), False, index))
                b = len(nodes)
                nodes.append(t)
                index[key] = b
                queue.append(b)
            edges.setdefault((min(a, b), max(a, b)), (a, k, b))
    return ExchangeGraph(nodes, sorted(edges.values()), True, index)


def initial_coordinates(seed: ToroidalSeed):
    """Integer matrix expressing Y-monomials in the initial variables.

    Returns a function ``Monomial -> tuple`` of exponents in the seed
    variables; the variables must be distinct monomials with coefficient 1
    spanning the same lattice as their support.
    """
    import sympy

    vars_ = []
    for v in seed.variables:
        if not v.is_monomial():
            raise ValueError("initial variables must be monomials")
        (mono, c), = v.terms.items()
        if not c.is_one():
            raise ValueError("initial variables must have coefficient 1")
        vars_.append(mono)
    support = sorted({w for mono in vars_ for w in mono.exps}, key=lambda w: (w[1], w[0]) if isinstance(w, tuple) else (w,))
    M = sympy.Matrix([[mono.degree(w) for mono in vars_] for w in support])
    if M.rank() != len(vars_):
        raise ValueError("initial variables are not independent")

    def coords(mono: Monomial) -> tuple:
        y = sympy.Matrix([mono.degree(w) for w in support])
        if any(w not in support for w in mono.exps):
            raise ValueError("monomial outside the initial torus")
        sol, params = M.gauss_jordan_solve(y)
        out = []
        for x in sol:
            if not x.is_integer:
                raise ValueError("monomial not in the lattice of the initial variables")
            out.append(int(x))
        return tuple(out)

    return coords


@dataclass
class LaurentReport:
    terms: dict
    positive: bool

    def text(self) -> str:
        parts = []
        for ex, c in sorted(self.terms.items()):
            mono = " ".join(f"X{i + 1}" + (f"^{e}" if e != 1 else "") for i, e in enumerate(ex) if e) or "1"
            parts.append(mono if c.is_one() else f"({c}) {mono}")
        return " + ".join(parts)


def laurent_report(initial: ToroidalSeed, variable: TorusElement) -> LaurentReport:
    """Laurent expansion of ``variable`` in the initial cluster variables."""
    coords = initial_coordinates(initial)
    terms = {}
    for mono, c in variable.terms.items():
        terms[coords(mono)] = c
    positive = all(c.is_positive() and all(k > 0 for k in c.terms.values()) for c in terms.values())
    return LaurentReport(terms, positive)


# classical oracle

@dataclass(frozen=True)
class ClassicalSeed:
    field: object
    variables: tuple
    B: tuple

    @property
    def m(self) -> int:
        return len(self.B[0]) if self.B else 0

    def key(self):
        m = self.m
        ex = sorted(range(m), key=lambda i: str(self.variables[i]))
        return (tuple(self.variables[i] for i in ex) + self.variables[m:],
                tuple(tuple(self.B[p][q] for q in ex) for p in ex + list(range(m, len(self.variables)))))


def _ambient_symbols(seed: ToroidalSeed) -> list:
    found = set()
    for v in seed.variables:
        for mono in v.terms:
            found.update(mono.exps)
    return sorted(found, key=lambda w: (w[1], w[0]) if isinstance(w, tuple) else (w,))


def classical_field(symbols: list):
    from sympy import ZZ
    from sympy.polys.fields import field

    names = ",".join(f"Y_{w[0]}_{w[1]}".replace("-", "m") if isinstance(w, tuple) else f"X{w}" for w in symbols)
    K, *gens = field(names, ZZ)
    return K, dict(zip(symbols, gens))


def classical_value(x: TorusElement, K, gens: dict):
    """The commutative Laurent polynomial obtained by setting every t_a = 1."""
    out = K.zero
    for mono, c in x.terms.items():
        term = K(c.at_one())
        for w, e in mono.exps.items():
            term = term * gens[w] ** e
        out = out + term
    return out


def classical_specialize(seed: ToroidalSeed, K=None, gens=None) -> ClassicalSeed:
    if K is None:
        K, gens = classical_field(_ambient_symbols(seed))
    vals = tuple(classical_value(v, K, gens) for v in seed.variables)
    return ClassicalSeed(K, vals, seed.B)


def classical_mutate(seed: ClassicalSeed, k: int) -> ClassicalSeed:
    K = seed.field
    plus, minus = K.one, K.one
    for i, x in enumerate(seed.variables):
        b = seed.B[i][k]
        if b > 0:
            plus = plus * x ** b
        elif b < 0:
            minus = minus * x ** (-b)
    vals = list(seed.variables)
    vals[k] = (plus + minus) / seed.variables[k]
    B = mutate_B([list(r) for r in seed.B], k)
    return ClassicalSeed(K, tuple(vals), tuple(tuple(r) for r in B))


def classical_graph(seed: ClassicalSeed, max_nodes: int | None = None) -> int:
    """Number of classical seeds up to permutation of exchangeable variables."""
    if max_nodes is None:
        max_nodes = max_nodes_default()
    seen = {seed.key()}
    queue = deque([seed])
    while queue:
        s = queue.popleft()
        for k in range(s.m):
            t = classical_mutate(s, k)
            key = t.key()
            if key not in seen:
                if len(seen) >= max_nodes:
                    raise Truncated(f"more than {max_nodes} classical seeds")
                seen.add(key)
                queue.append(t)
    return len(seen)


# quiver mutation classes

def _dynkin_label(B: list) -> str | None:
    n = len(B)
    adj = {i: set() for i in range(n)}
    for i in range(n):
        for j in range(n):
            if B[i][j]:
                if abs(B[i][j]) != 1 or B[j][i] != -B[i][j]:
                    return None
                adj[i].add(j)
    if sum(len(a) for a in adj.values()) != 2 * (n - 1):
        return None
    seen, stack = {0}, [0]
    while stack:
        for j in adj[stack.pop()]:
            if j not in seen:
                seen.add(j)
                stack.append(j)
    if len(seen) != n:
        return None
    deg = sorted(len(a) for a in adj.values())
    if n == 1 or deg[-1] <= 2:
        return f"A{n}"
    if deg[-1] > 3 or deg.count(3) != 1:
        return None
    c = next(i for i in range(n) if len(adj[i]) == 3)
    arms = []
    for j in adj[c]:
        length, prev, cur = 1, c, j
        while len(adj[cur]) == 2:
            prev, cur = cur, next(x for x in adj[cur] if x != prev)
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == arms[1] == 1:
        return f"D{n}"
    if arms[:2] == [1, 2] and arms[2] in (2, 3, 4):
        return f"E{n}"
    return None


def quiver_mutation_class(B: list, max_nodes: int | None = None):
    """Breadth-first search over mutations of a skew-symmetric matrix.

    Returns the set of matrices reached and the Dynkin label of the first
    Dynkin orientation found, or "UNKNOWN".
    """
    if max_nodes is None:
        max_nodes = max_nodes_default()
    n = len(B)
    for i in range(n):
        for j in range(n):
            if B[i][j] != -B[j][i]:
                raise ValueError("principal part is not skew-symmetric")
    start = tuple(tuple(r) for r in B)
    seen = {start}
    queue = deque([start])
    label = None
    while queue:
        cur = queue.popleft()
        if label is None:
            label = _dynkin_label([list(r) for r in cur])
        for k in range(n):
            nxt = tuple(tuple(r) for r in mutate_B([list(r) for r in cur], k))
            if nxt not in seen:
                if len(seen) >= max_nodes:
                    raise Truncated(f"more than {max_nodes} quivers")
                seen.add(nxt)
                queue.append(nxt)
    return seen, label or "UNKNOWN"


def principal_part(seed: ToroidalSeed) -> list:
    return [list(seed.B[i]) for i in range(seed.m)]
