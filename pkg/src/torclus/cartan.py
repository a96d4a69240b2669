"""Dynkin data, the quantized Cartan matrix and its inverse expansion.

C(z) has entries z^{d_i} + z^{-d_i} on the diagonal and the quantum
integer [C_ij]_{z^{d_i}} off it.  Its inverse is expanded as a power series
sum_{m>=1} Ct_ij(m) z^m whose coefficients are periodic in m.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache

from .params import ExpSeq


class UnknownType(ValueError):
    pass


_TYPE_RE = re.compile(r"^\s*([ABDE])_?(\d+)\s*$")


class CartanData:
    """Cartan matrix, symmetrizers and adjacency of a supported Dynkin type.

    Nodes are numbered 1..n.  Types A_n and D_n follow the usual chain
    numbering (the fork of D_n sits at node n-2), E_n uses Bourbaki's
    labels, and B2 uses C = [[2, -2], [-1, 2]] with d = (1, 2).
    """

    def __init__(self, label: str):
        m = _TYPE_RE.match(label)
        if not m:
            raise UnknownType(label)
        kind, n = m.group(1), int(m.group(2))
        self.kind, self.n = kind, n
        self.label = f"{kind}{n}"
        edges = []
        if kind == "A":
            if not 1 <= n <= 8:
                raise UnknownType(label)
            edges = [(i, i + 1) for i in range(1, n)]
            self.h = n + 1
        elif kind == "D":
            if not 4 <= n <= 8:
                raise UnknownType(label)
            edges = [(i, i + 1) for i in range(1, n - 1)] + [(n - 2, n)]
            self.h = 2 * n - 2
        elif kind == "E":
            if n not in (6, 7, 8):
                raise UnknownType(label)
            edges = [(1, 3), (3, 4), (4, 5), (2, 4)] + [(i, i + 1) for i in range(5, n)]
            self.h = {6: 12, 7: 18, 8: 30}[n]
        elif kind == "B":
            if n != 2:
                raise UnknownType(label)
            self.h = 4
        self.nodes = list(range(1, n + 1))
        if kind == "B":
            self.C = [[2, -2], [-1, 2]]
            self.d = [1, 2]
            self.period, self.antiperiod = 12, 6
        else:
            C = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
            for i, j in edges:
                C[i - 1][j - 1] = C[j - 1][i - 1] = -1
            self.C = C
            self.d = [1] * n
            self.period, self.antiperiod = 2 * self.h, None
        self.edges = edges
        self._series = None

    @property
    def simply_laced(self) -> bool:
        return self.kind != "B"

    def cartan(self, i: int, j: int) -> int:
        return self.C[i - 1][j - 1]

    def sym(self, i: int) -> int:
        return self.d[i - 1]

    def adjacent(self, i: int, j: int) -> bool:
        return i != j and self.C[i - 1][j - 1] != 0

    def neighbors(self, i: int) -> list:
        return [j for j in self.nodes if self.adjacent(i, j)]

    def __repr__(self):
        return f"CartanData({self.label})"

    # quantized Cartan matrix, as {power: coefficient} per entry
    def qcartan(self) -> list:
        n = self.n
        out = [[{} for _ in range(n)] for _ in range(n)]
        for i in range(n):
            di = self.d[i]
            for j in range(n):
                c = self.C[i][j]
                if i == j:
                    out[i][j] = {di: 1, -di: 1}
                elif c:
                    out[i][j] = _qint(c, di)
        return out

    def series(self, order: int | None = None) -> list:
        """Coefficient table ``T[m][i][j]`` of C(z)^{-1}, 0 <= m <= order."""
        if order is None:
            order = max(4 * self.h + 4, 2 * self.period + 2)
        if self._series is None or len(self._series) <= order:
            self._series = _invert_series(self, order)
        return self._series

    def ctilde(self, i: int, j: int, m: int) -> int:
        if m <= 0:
            return 0
        T = self.series()
        if m >= len(T):
            m = (m - 1) % self.period + 1
        return T[m][i - 1][j - 1]


def _qint(c: int, d: int) -> dict:
    # [c]_{z^d} for c < 0, as a Laurent polynomial in z
    k = -c
    out = {}
    for a in range(k):
        p = d * (k - 1 - 2 * a)
        out[p] = out.get(p, 0) - 1
    return out


def _invert_series(data: CartanData, order: int) -> list:
    # Multiplying row i of C(z) by z^{d_i} gives a polynomial matrix P(z)
    # with P(0) invertible over Z; then C^{-1} = P^{-1} diag(z^{d_j}).
    n = data.n
    q = data.qcartan()
    deg = 0
    P: dict = {}
    for i in range(n):
        for j in range(n):
            for p, c in q[i][j].items():
                e = p + data.d[i]
                if e < 0:
                    raise AssertionError("row scaling failed")
                P.setdefault(e, [[0] * n for _ in range(n)])[i][j] += c
                deg = max(deg, e)
    zero = [[Fraction(0)] * n for _ in range(n)]
    P0inv = _mat_inv([[Fraction(x) for x in row] for row in P.get(0, zero)])
    M = []
    for k in range(order + 1):
        acc = [[Fraction(0)] * n for _ in range(n)] if k else [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        for l in range(1, min(k, deg) + 1):
            if l in P:
                acc = _mat_sub(acc, _mat_mul(P[l], M[k - l]))
        M.append(_mat_mul(P0inv, acc))
    T = [[[0] * n for _ in range(n)] for _ in range(order + 1)]
    for k, Mk in enumerate(M):
        for i in range(n):
            for j in range(n):
                x = Mk[i][j]
                if x.denominator != 1:
                    raise AssertionError("non-integral inverse")
                m = k + data.d[j]
                if m <= order:
                    T[m][i][j] = int(x)
    return T


def _mat_mul(A, B):
    n, m, p = len(A), len(B), len(B[0])
    return [[sum(A[i][k] * B[k][j] for k in range(m)) for j in range(p)] for i in range(n)]


def _mat_sub(A, B):
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def _mat_inv(A):
    n = len(A)
    M = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(A)]
    for c in range(n):
        p = next(r for r in range(c, n) if M[r][c] != 0)
        M[c], M[p] = M[p], M[c]
        pv = M[c][c]
        M[c] = [x / pv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return [row[n:] for row in M]


@lru_cache(maxsize=None)
def cartan_data(label: str) -> CartanData:
    return CartanData(label)


def ctilde(data: CartanData, i: int, j: int, m: int) -> int:
    return data.ctilde(i, j, m)


def ctilde_typeA_closed(n: int, i: int, j: int, m: int) -> int:
    """Coefficient of z^m in the closed rational form of Ct_ij for A_n."""
    if m <= 0:
        return 0
    if i > j:
        i, j = j, i
    num = {}
    for a in range(i):
        p = i + j - 1 - 2 * a
        num[p] = num.get(p, 0) + 1
    for a in range(-n + j - 1, -n + i + j - 1):
        p = i + j - 1 - 2 * a
        num[p] = num.get(p, 0) - 1
    per = 2 * (n + 1)
    return sum(c for p, c in num.items() if m >= p and (m - p) % per == 0)


def n_exponent(data: CartanData, a: int, i: int, p: int, j: int, s: int) -> int:
    """Exponent of t_a in the quasi-commutation of Y_{i,p} and Y_{j,s}."""
    dj = data.sym(j)
    c = data.ctilde
    return (c(j, i, p - s - dj + a) - c(j, i, s - p - dj + a)
            - c(j, i, p - s + dj + a) + c(j, i, s - p + dj + a))


@lru_cache(maxsize=None)
def _n_raw(data: CartanData, i: int, j: int, diff: int) -> ExpSeq:
    # stored values are the integer exponents N_a(i,0;j,diff)
    dj = data.sym(j)
    w = abs(diff) + dj
    start = w + 1
    vals = {a: n_exponent(data, a, i, 0, j, diff) for a in range(-w - 1, start)}
    pat = tuple(n_exponent(data, start + k, i, 0, j, diff) for k in range(data.period))
    return ExpSeq.make(vals, (start, pat))


def n_raw(data: CartanData, i: int, p: int, j: int, s: int) -> ExpSeq:
    """Sequence a -> N_a(i,p;j,s) stored as plain integers.

    As a doubled sequence this is prod_a t_a^{N_a/2}, the factor appearing in
    ``Y_{i,p} * Y_{j,s} = t^{N/2} Y_{i,p}Y_{j,s}``.
    """
    return _n_raw(data, i, j, s - p)


def n_sequence(data: CartanData, i: int, p: int, j: int, s: int) -> ExpSeq:
    """prod_a t_a^{N_a(i,p;j,s)} in doubled storage."""
    return n_raw(data, i, p, j, s).scale(2)


def a_support(data: CartanData, i: int, r: int) -> dict:
    """Exponents of the A-monomial A_{i,r} as ``{(j, s): e}``."""
    di = data.sym(i)
    out = {(i, r - di): 1, (i, r + di): 1}
    for j in data.nodes:
        c = data.cartan(j, i)
        if j == i or c == 0:
            continue
        if c == -1:
            out[(j, r)] = out.get((j, r), 0) - 1
        elif c == -2:
            out[(j, r - 1)] = out.get((j, r - 1), 0) - 1
            out[(j, r + 1)] = out.get((j, r + 1), 0) - 1
        else:
            raise UnknownType(data.label)
    return out


def ay_sequence(data: CartanData, i: int, r: int, j: int, s: int) -> ExpSeq:
    """prod_a t_a^{N_a(i,r;j,s)} for the pair (A_{i,r}, Y_{j,s}), doubled."""
    total = ExpSeq()
    for (k, q), e in a_support(data, i, r).items():
        total = total + n_raw(data, k, q, j, s).scale(e)
    return total.scale(2)


def ay_closed(i: int, r: int, j: int, s: int) -> ExpSeq:
    """Closed form of ``ay_sequence`` for simply-laced types, doubled."""
    if i != j:
        return ExpSeq()
    sign = 1
    if r > s:
        r, s, sign = s, r, -1
    vals: dict = {}
    for a, e in ((r - s - 1, 1), (r - s + 1, -1), (s - r - 1, -1), (s - r + 1, 1)):
        vals[a] = vals.get(a, 0) + 2 * e * sign
    return ExpSeq.make(vals)
