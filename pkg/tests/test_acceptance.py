"""Acceptance criteria 1-9.

Each test carries a ``criterion`` marker; the terminal summary prints one
PASS/FAIL line per criterion.
"""
import itertools
from fractions import Fraction
from functools import lru_cache

import pytest
import sympy
from hypothesis import assume, given, strategies as st

from torclus import groth
from torclus.cartan import cartan_data, ctilde, ctilde_typeA_closed, n_sequence
from torclus.cluster import (
    check_compatibility, classical_field, classical_graph, classical_mutate, classical_specialize,
    classical_value, exchange_graph, lambda_matrices, laurent_report, mutate_seed, mutate_word,
    principal_part, quiver_mutation_class, _ambient_symbols,
)
from torclus.params import (
    ExpSeq, ParamLaurent, ParamMonomial, QuotientContext, pl_mul, pm_equal, standard_generator,
    standard_lattice_member,
)
from torclus.textfmt import parse_param_monomial
from torclus.torus import (
    FiniteBackend, Monomial, TorusElement, bar, commutator_factor, exact_divide_left, exact_divide_right, star,
)

H = Fraction(1, 2)
STD = QuotientContext.standard()


def series(text: str, top: int) -> list:
    """Coefficients of z^1..z^top from a signed sum like 'z - z^3 + z^5'."""
    out = [0] * top
    for (e,), c in sympy.Poly(sympy.sympify(text.replace("^", "**")), sympy.Symbol("z")).terms():
        out[e - 1] = int(c)
    return out


def assert_report(rep):
    assert rep.ok, "\n".join(f"{a.id}: expected {a.expected} got {a.actual}" for a in rep.assertions if not a.ok)


# 1. Cartan tables

@pytest.mark.criterion(1)
def test_sl2_series():
    d = cartan_data("A1")
    assert [ctilde(d, 1, 1, m) for m in range(1, 8)] == series("z - z^3 + z^5 - z^7", 7)


@pytest.mark.criterion(1)
def test_sl3_series():
    d = cartan_data("A2")
    for i, j, text in ((1, 1, "z - z^5 + z^7 - z^11"), (2, 2, "z - z^5 + z^7 - z^11"),
                       (1, 2, "z^2 - z^4 + z^8 - z^10"), (2, 1, "z^2 - z^4 + z^8 - z^10")):
        assert [ctilde(d, i, j, m) for m in range(1, 12)] == series(text, 11)


@pytest.mark.criterion(1)
def test_b2_series():
    d = cartan_data("B2")
    for i, j, text in ((1, 1, "z + z^5 - z^7 - z^11 + z^13 + z^17"), (2, 1, "z^3 - z^9 + z^15"),
                       (2, 2, "z^2 + z^4 - z^8 - z^10 + z^14 + z^16"),
                       (1, 2, "z^2 + z^4 - z^8 - z^10 + z^14 + z^16")):
        assert [ctilde(d, i, j, m) for m in range(1, 18)] == series(text, 17)
    for i in (1, 2):
        for j in (1, 2):
            for m in range(1, 30):
                assert ctilde(d, i, j, m + 6) == -ctilde(d, i, j, m)


@pytest.mark.criterion(1)
@pytest.mark.parametrize("label", ["A1", "A2", "A3", "A4", "D4"])
def test_ade_recursion_and_closed_form(label):
    d = cartan_data(label)
    for i in d.nodes:
        for j in d.nodes:
            assert ctilde(d, i, j, 1) == (1 if i == j else 0)
            for m in range(1, 4 * d.h + 1):
                nb = sum(ctilde(d, k, j, m) for k in d.neighbors(i))
                assert ctilde(d, i, j, m - 1) + ctilde(d, i, j, m + 1) == nb
                if d.kind == "A":
                    assert ctilde_typeA_closed(d.n, i, j, m) == ctilde(d, i, j, m)


# 2. sl3 C_Q corpus

@pytest.mark.criterion(2)
def test_sl3_infinite_tail_products():
    d = cartan_data("A2")
    # t_{-2} t_0^{-1} t_2^{-2} t_4^3 prod_{k>=1} t_{6k+2}^{-3} t_{6k+4}^3 and t_0 t_2^{-3} t_4^3 prod(...)
    want12 = parse_param_monomial("t[-2]^{1} t[0]^{-1} t[2]^{-2} t[4]^{3} *PER(8,6)[-3,0,3,0,0,0]")
    want21 = parse_param_monomial("t[0]^{1} t[2]^{-3} t[4]^{3} *PER(8,6)[-3,0,3,0,0,0]")
    assert ParamMonomial(n_sequence(d, 1, 0, 1, 2)) == want12
    assert ParamMonomial(n_sequence(d, 1, 0, 2, 1)) == want21


@pytest.mark.criterion(2)
def test_sl3_products_and_commutators():
    assert_report(groth.sl3_cq_corpus())


@pytest.mark.criterion(2)
def test_sl3_simple_classes():
    assert_report(groth.sl3_cq_simples())


# 3. two-parameter example

@pytest.mark.criterion(3)
def test_two_param_exchange():
    seed = groth.two_param_seed()
    X1, X2, X3 = seed.variables
    X1p = mutate_seed(seed, 0).variables[0]
    t1, t2 = ParamMonomial.t(1), ParamMonomial.t(2)
    assert star(X1p, X1) == X2.scale(t1 ** -H) + X3.scale((t1 * t2) ** H)


@pytest.mark.criterion(3)
def test_two_param_graph_and_compatibility():
    seed = groth.two_param_seed()
    assert len(exchange_graph(seed).nodes) == 2
    lam = lambda_matrices(seed)
    B = [r[0] for r in seed.B]
    assert [sum(B[i] * lam[1][i][j] for i in range(3)) for j in range(3)] == [2, 0, 0]
    assert [sum(B[i] * lam[2][i][j] for i in range(3)) for j in range(3)] == [1, 0, 0]


@pytest.mark.criterion(3)
def test_two_param_serre_corpus():
    rep = groth.two_param_serre_check()
    assert_report(rep)
    assert {"serre/first", "serre/second"} <= {a.id for a in rep.assertions}


# 4. C1^ob in type A2

@pytest.mark.criterion(4)
def test_c1ob_graph():
    g = exchange_graph(groth.c1ob_finite_seed())
    assert (len(g.nodes), len(g.edges), g.finite) == (5, 5, True)


@pytest.mark.criterion(4)
def test_c1ob_laurent_expansion_and_positivity():
    seed = groth.c1ob_finite_seed()
    X1b = mutate_word(seed, [1, 0]).variables[0]
    rep = laurent_report(seed, X1b)
    assert rep.terms == {(0, -1, 0, 0): ParamLaurent.const(1), (-1, -1, 0, 1): ParamLaurent.const(1),
                         (-1, 0, 1, 0): ParamLaurent.const(1)}
    for s in exchange_graph(seed).nodes:
        for v in s.variables:
            assert laurent_report(seed, v).positive


@pytest.mark.criterion(4)
def test_c1ob_corpus():
    assert_report(groth.c1ob_a2_corpus())


# 5. C1 seeds

@pytest.mark.criterion(5)
@pytest.mark.parametrize("label", ["A2", "A3", "D4"])
def test_c1_compatibility_blocks(label):
    prof, seed = groth.build_c1_seed(label)
    n = prof.cartan.n
    lam = lambda_matrices(seed)
    for a, scale in ((0, -2), (-2, 1)):
        L = lam.get(a)
        BtL = [[sum(seed.B[i][k] * L[i][j] for i in range(2 * n)) for j in range(2 * n)] for k in range(n)]
        want = [[scale if j == k else 0 for j in range(2 * n)] for k in range(n)]
        assert BtL == want, a
    assert set(lam) <= {-2, 0}


@pytest.mark.criterion(5)
@pytest.mark.parametrize("label", ["A2", "A3", "D4"])
def test_c1_corpus(label):
    rep = groth.verify_c1_theorem(label)
    assert_report(rep)
    ids = {a.id for a in rep.assertions}
    assert {"graph/nodes-vs-classical", "tsystem/1", "tsystem/2"} <= ids


@pytest.mark.criterion(5)
@pytest.mark.parametrize("label,count", [("A2", 5), ("A3", 14), ("D4", 50)])
def test_c1_graph_counts(label, count):
    seed = groth.build_c1_seed(label)[1]
    assert len(exchange_graph(seed).nodes) == count
    assert classical_graph(classical_specialize(seed)) == count


# 6. sl2

@pytest.mark.criterion(6)
def test_sl2_corpus():
    rep = groth.sl2_corpus()
    assert_report(rep)
    ids = {a.id for a in rep.assertions}
    assert {f"tsystem/k={k},p=0" for k in range(1, 7)} <= ids
    assert any(i.startswith("surjection/") for i in ids)
    assert any(i.startswith("commutation/") for i in ids)


@pytest.mark.criterion(6)
def test_sl2_relations_directly():
    for p in (-4, 0, 2, 6):
        for k in range(1, 7):
            assert groth.tsystem_sl2(k, p)
        for l in range(2, 7):
            assert groth.kr_recursion_sl2(l, p)
    for r in (-1, 0, 1, 2):
        for h in (1, 2, 3):
            assert groth.sl2_product_check(r, h)
            assert groth.sl2_commutation_check(r, h)
            assert groth.sl2_surjection_check(r, r + h)


# 7. A-Y commutation and power products

@pytest.mark.criterion(7)
@pytest.mark.parametrize("label", ["A2", "A3"])
def test_ay_sweep(label):
    rep = groth.ay_check(label, samples=50)
    assert_report(rep)
    assert sum(a.id.startswith("standard/") for a in rep.assertions) == 50


@pytest.mark.criterion(7)
@pytest.mark.parametrize("label", ["A2", "A3"])
def test_ay_are_powers_of_one_monomial(label):
    be = groth.shared_backend(label, STD)
    xi = groth.default_bipartite(be.cartan)
    base = be.norm(groth.tmono(m2=1, z0=-2, p2=1))
    for i in be.cartan.nodes:
        for j in be.cartan.nodes:
            for r in range(-3, 4):
                for s in range(-3, 6):
                    # only pairs on the bipartite lattice
                    if (r - s + xi[i] - xi[j]) % 2 != 1:
                        continue
                    c = commutator_factor(be.A(i, r), be.Y(j, s))
                    assert any(c == be.norm(base ** e) for e in (-1, 0, 1))


@pytest.mark.criterion(7)
def test_power_products():
    rep = groth.power_products_check()
    assert_report(rep)
    assert {"table/m=2", "table/m=3", "table/m=4"} <= {a.id for a in rep.assertions}


# 8. B2

@pytest.mark.criterion(8)
def test_b2_corpus():
    assert_report(groth.b2_corpus())


@pytest.mark.criterion(8)
def test_b2_compatibility_in_reparametrization():
    seed = groth.b2_seed()
    t1, t2 = groth.b2_parameters(seed.backend)
    rep = check_compatibility(seed)
    assert rep.ok
    assert rep.diagonal_in([t1, t2], seed.backend) == [[2, -1]] * seed.m


@pytest.mark.criterion(8)
def test_b2_principal_quiver():
    assert quiver_mutation_class(principal_part(groth.b2_seed()))[1] == "A3"


# 9. property suites

@st.composite
def skew(draw, n):
    L = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            L[i][j] = draw(st.integers(-2, 2))
            L[j][i] = -L[i][j]
    return L


@st.composite
def param_monomials(draw, indices):
    exps = draw(st.dictionaries(st.sampled_from(indices), st.integers(-3, 3), max_size=3))
    return ParamMonomial.from_exponents({a: Fraction(e, 2) for a, e in exps.items()})


@st.composite
def coefficients(draw, indices):
    c = ParamLaurent.const(0)
    for _ in range(draw(st.integers(1, 2))):
        c = c + ParamLaurent.mono(draw(param_monomials(indices)), draw(st.sampled_from([-2, -1, 1, 2])))
    return c


@st.composite
def finite_tori(draw):
    n = 3
    return FiniteBackend(n, {1: draw(skew(n)), 2: draw(skew(n))})


@st.composite
def elements(draw, be, variables, indices, max_terms=3, units=False):
    terms = {}
    for _ in range(draw(st.integers(1, max_terms))):
        exps = draw(st.dictionaries(st.sampled_from(variables), st.integers(-2, 2), max_size=3))
        if units:
            c = ParamLaurent.mono(draw(param_monomials(indices)), draw(st.sampled_from([-1, 1])))
        else:
            c = draw(coefficients(indices))
        terms[Monomial.make(exps)] = c
    return TorusElement(be, terms)


A2_STD = groth.shared_backend("A2", STD)
A2_VARS = [(i, r) for i in (1, 2) for r in range(0, 6)]
A2_PARAMS = list(range(-4, 5))


@st.composite
def finite_triples(draw):
    be = draw(finite_tori())
    return tuple(draw(elements(be, [1, 2, 3], [1, 2])) for _ in range(3))


@st.composite
def a2_triples(draw):
    return tuple(draw(elements(A2_STD, A2_VARS, A2_PARAMS, 2)) for _ in range(3))


@pytest.mark.criterion(9)
@given(finite_triples())
def test_prop_star_associative_finite(xyz):
    x, y, z = xyz
    assert star(star(x, y), z) == star(x, star(y, z))


@pytest.mark.criterion(9)
@given(a2_triples())
def test_prop_star_associative_a2_quotient(xyz):
    x, y, z = xyz
    assert star(star(x, y), z) == star(x, star(y, z))


@pytest.mark.criterion(9)
@given(finite_triples())
def test_prop_bar_anti_multiplicative_finite(xyz):
    x, y, _ = xyz
    assert bar(star(x, y)) == star(bar(y), bar(x))
    assert bar(bar(x)) == x


@pytest.mark.criterion(9)
@given(a2_triples())
def test_prop_bar_anti_multiplicative_a2(xyz):
    x, y, _ = xyz
    assert bar(star(x, y)) == star(bar(y), bar(x))
    assert bar(bar(x)) == x


SEEDS = {
    "two-param": groth.two_param_seed(),
    "c1ob": groth.c1ob_finite_seed(),
    "b2": groth.b2_seed(),
    "c1-A2": groth.build_c1_seed("A2")[1],
    "c1-A3": groth.build_c1_seed("A3")[1],
}


@st.composite
def seed_words(draw, names=tuple(SEEDS)):
    name = draw(st.sampled_from(sorted(names)))
    m = SEEDS[name].m
    word = draw(st.lists(st.integers(0, m - 1), max_size=5))
    return name, word, draw(st.integers(0, m - 1))


@pytest.mark.criterion(9)
@given(seed_words())
def test_prop_mutation_involutive_and_compatible(case):
    name, word, k = case
    s = mutate_word(SEEDS[name], word)
    assert mutate_seed(mutate_seed(s, k), k) == s
    assert check_compatibility(mutate_seed(s, k)).ok


@pytest.mark.criterion(9)
@pytest.mark.parametrize("name", sorted(SEEDS))
def test_every_enumerated_seed_is_compatible_and_involutive(name):
    for s in exchange_graph(SEEDS[name]).nodes:
        assert check_compatibility(s).ok
        for k in range(s.m):
            assert mutate_seed(mutate_seed(s, k), k) == s


@st.composite
def lattice_vectors(draw, kmax=5):
    v = ExpSeq()
    for k in range(1, kmax + 1):
        v = v + standard_generator(k).scale(draw(st.integers(-2, 2)))
    return ParamMonomial(v)


@pytest.mark.criterion(9)
@given(param_monomials(list(range(-8, 9))), lattice_vectors(), param_monomials(list(range(-8, 9))))
def test_prop_quotient_congruence(a, r, c):
    b = a * r
    assert pm_equal(a, b, STD)
    assert pm_equal(a * c, b * c, STD)
    assert STD.reduce(a * c) == STD.reduce(STD.reduce(a) * c)
    la, lb = ParamLaurent.mono(a) + 1, ParamLaurent.mono(b) + 1
    assert pl_mul(la, ParamLaurent.mono(c), STD).reduce(STD) == pl_mul(lb, ParamLaurent.mono(c), STD).reduce(STD)


def _window(K):
    return list(range(-2 * K - 2, 2 * K + 3))


def _vector(seq: ExpSeq, K):
    return tuple(seq.value(a) for a in _window(K))


@lru_cache(maxsize=None)
def _box(K):
    """Every combination of the first K generators with coefficients in [-2K-3, 2K+3]."""
    gens = [_vector(standard_generator(k), K) for k in range(1, K + 1)]
    bound = 2 * K + 3
    out = set()
    for cs in itertools.product(range(-bound, bound + 1), repeat=K):
        out.add(tuple(sum(c * g[p] for c, g in zip(cs, gens)) for p in range(len(gens[0]))))
    return out


def _rational_member(D: tuple, K) -> bool:
    """Solve sum c_k v_k = D over Q and ask for an integral solution."""
    gens = [_vector(standard_generator(k), K) for k in range(1, K + 1)]
    M = sympy.Matrix([list(col) for col in gens]).T
    try:
        sol, params = M.gauss_jordan_solve(sympy.Matrix(D))
    except ValueError:
        return False
    assert not params
    return all(x.is_integer for x in sol)


@st.composite
def window_differences(draw):
    K = draw(st.integers(1, 5))
    base = {}
    for k in range(1, K + 1):
        c = draw(st.integers(-2, 2))
        for a, v in standard_generator(k).finite:
            base[a] = base.get(a, 0) + c * v
    for a in draw(st.lists(st.sampled_from(_window(K)), max_size=2)):
        base[a] = base.get(a, 0) + draw(st.sampled_from([-1, 1]))
    return K, ExpSeq.make(base)


@pytest.mark.criterion(9)
@given(window_differences())
def test_prop_lattice_membership_brute_force(case):
    K, D = case
    got = standard_lattice_member(D)
    vec = _vector(D, K)
    assert got == _rational_member(vec, K)
    if K <= 4:
        assert got == (vec in _box(K))


@st.composite
def finite_pairs(draw):
    be = draw(finite_tori())
    x = draw(elements(be, [1, 2, 3], [1, 2]))
    # divisors with unit coefficients, so that lead terms are invertible
    y = draw(elements(be, [1, 2, 3], [1, 2], units=True))
    assume(not y.is_zero())
    return x, y


@pytest.mark.criterion(9)
@given(finite_pairs())
def test_prop_exact_division_round_trip(xy):
    x, y = xy
    assert exact_divide_right(star(x, y), y) == x
    assert exact_divide_left(star(y, x), y) == x


@st.composite
def a2_pairs(draw):
    x = draw(elements(A2_STD, A2_VARS, A2_PARAMS, 2))
    y = draw(elements(A2_STD, A2_VARS, A2_PARAMS, 2, units=True))
    assume(not y.is_zero())
    return x, y


@pytest.mark.criterion(9)
@given(a2_pairs())
def test_prop_exact_division_round_trip_a2(xy):
    x, y = xy
    assert exact_divide_right(star(x, y), y) == x
    assert exact_divide_left(star(y, x), y) == x


_CLASSICAL = {}


def _classical(name):
    if name not in _CLASSICAL:
        seed = SEEDS[name]
        K, gens = classical_field(_ambient_symbols(seed))
        _CLASSICAL[name] = (K, gens, classical_specialize(seed, K, gens))
    return _CLASSICAL[name]


@pytest.mark.criterion(9)
@given(seed_words(("two-param", "c1ob", "c1-A2", "b2")))
def test_prop_classical_specialization(case):
    name, word, k = case
    K, gens, c = _classical(name)
    s = SEEDS[name]
    for j in word + [k]:
        s, c = mutate_seed(s, j), classical_mutate(c, j)
    for v, w in zip(s.variables, c.variables):
        assert classical_value(v, K, gens) == w
