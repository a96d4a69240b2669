from fractions import Fraction

import pytest

from torclus.cartan import a_support, cartan_data
from torclus.groth import (
    NoSolution, NotBipartite, NotIDominant, NotThin, UnknownLabel, build_c1_seed, c1_lambda, e_block,
    e_block_defect, e_block_defect_expected, fit_identity, fundamental_class_thin, has_unique_dominant,
    is_bar_invariant, kr_class_sl2, kr_class_thin, kr_recursion_sl2, minimal_affinization_C1, profile,
    q_character, shared_backend, sl2_alpha, sl2_backend, sl2_s, sl3_simple_classes, tmono,
    truncated_class_C1, tsystem_sl2, typeA_fundamental_oracle, verify_c1_theorem, verify_e_block_quotient,
)
from torclus.cluster import mutate_seed
from torclus.params import ParamLaurent, QuotientContext
from torclus.torus import CartanBackend, Monomial, star

H = Fraction(1, 2)


# E-blocks

def test_single_generator_block():
    be = CartanBackend("A2")
    blk = e_block(be, 1, Monomial.make({(1, 3): 1}))
    assert blk == be.parse("Y[1,3] + Y[2,4] Y[1,5]^-1")


def test_sl2_block_of_two():
    be = CartanBackend("A1")
    blk = e_block(be, 1, Monomial.make({(1, 0): 1, (1, 2): 1}))
    assert len(blk.terms) == 4
    top = blk.coefficient({(1, 0): 1, (1, 2): 1})
    assert top.unit() is not None and top.unit()[0] == 1
    # (Y0 + Y2^-1)(Y2 + Y4^-1) at t = 1
    want = {Monomial.make({(1, 0): 1, (1, 2): 1}): 1, Monomial.make({(1, 0): 1, (1, 4): -1}): 1,
            Monomial.make({}): 1, Monomial.make({(1, 2): -1, (1, 4): -1}): 1}
    assert blk.at_one() == want


def test_block_needs_i_dominant_monomial():
    with pytest.raises(NotIDominant):
        e_block(CartanBackend("A1"), 1, Monomial.make({(1, 0): -1}))


@pytest.mark.parametrize("label,i", [("A1", 1), ("A2", 1), ("A2", 2), ("A3", 2)])
@pytest.mark.parametrize("k", [1, 2, 3])
def test_block_defect_closed_form(label, i, k):
    be = CartanBackend(label)
    assert e_block_defect(be, i, 0, k) == e_block_defect_expected(be, i, 0, k)


def test_block_defects_in_quotient():
    assert verify_e_block_quotient("A1", 1, 0, 2)
    assert verify_e_block_quotient("A1", 1, 4, 3)
    assert verify_e_block_quotient("A2", 1, 0, 1)
    assert verify_e_block_quotient("A3", 2, 1, 1)


def test_sl2_defect_vanishes_classically():
    be = CartanBackend("A1")
    assert e_block_defect(be, 1, 0, 1).at_one() == {}


# q-characters

def test_sl3_fundamental():
    be = CartanBackend("A2")
    assert fundamental_class_thin("A2", 1, 0, be) == be.parse("Y[1,0] + Y[1,2]^-1 Y[2,1] + Y[2,3]^-1")


def test_sl2_fundamentals():
    be = CartanBackend("A1")
    for r in range(-2, 3):
        assert fundamental_class_thin("A1", 1, 2 * r, be) == be.Y(1, 2 * r) + be.Y(1, 2 * r + 2) ** -1


def test_b2_truncated_fundamental():
    prof = profile("B2_QFLAT")
    be = prof.backend
    v = prof.truncate(fundamental_class_thin("B2", 2, 1, be))
    assert v == be.parse("Y[2,1] + Y[2,5]^-1 Y[1,2] Y[1,4]")


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_type_a_against_tableaux(n):
    data = cartan_data(f"A{n}")
    for i in data.nodes:
        for r in (0, 1, 5):
            chi = q_character(data, Monomial.make({(i, r): 1}))
            assert set(chi) == typeA_fundamental_oracle(n, i, r)
            assert set(chi.values()) == {1}


def test_b2_fundamental_dimensions():
    data = cartan_data("B2")
    # node 1 is short: spin module of dimension 4, vector module of dimension 5
    assert len(q_character(data, Monomial.make({(1, 0): 1}))) == 4
    assert len(q_character(data, Monomial.make({(2, 0): 1}))) == 5


def test_kr_characters_in_type_a():
    be = CartanBackend("A2")
    # W^{(1)}_2 has dimension 6, W^{(1)}_3 has dimension 10
    assert len(kr_class_thin(be, 1, 2, 0).terms) == 6
    assert len(kr_class_thin(be, 1, 3, 0).terms) == 10


def test_non_thin_types_are_refused():
    with pytest.raises(NotThin):
        fundamental_class_thin("D4", 2, 0)


# categories and truncations

def test_profiles():
    assert profile("C1", "A3").xi.values == (0, 1, 0)
    with pytest.raises(NotBipartite):
        profile("C1", "A2", (0, 0))
    with pytest.raises(UnknownLabel):
        profile("C7")
    with pytest.raises(UnknownLabel):
        profile("C1_OB", "D4")


def test_c1_top_classes():
    prof = profile("C1", "A3")
    for i in prof.cartan.nodes:
        assert truncated_class_C1(prof, ("top", i)) == prof.backend.Y(i, prof.xi[i] + 2)


def test_c1_bottom_at_height_one():
    prof = profile("C1", "A2", (0, 1))
    be = prof.backend
    want = be.parse("Y[2,1] + Y[1,2] Y[2,3]^-1")
    assert truncated_class_C1(prof, ("bottom", 2)) == want


@pytest.mark.parametrize("label,xi,node", [("A3", (1, 0, 1), 2), ("D4", (1, 0, 1, 1), 2), ("A2", (0, 1), 1)])
def test_c1_bottom_at_height_zero(label, xi, node):
    prof = profile("C1", label, xi)
    x = truncated_class_C1(prof, ("bottom", node))
    valence = len(prof.cartan.neighbors(node))
    assert len(x.terms) == 1 + 2 ** valence
    assert all(c.is_one() for c in x.terms.values())
    assert has_unique_dominant(x)


def test_c1_lambda_blocks():
    data = cartan_data("A2")
    prof = profile("C1", "A2")
    L0 = c1_lambda(data, prof.xi, 0)
    for i in range(4):
        for j in range(4):
            assert L0[i][j] == -L0[j][i]
    _, seed = build_c1_seed("A2")
    assert [[seed.Q[i][j].exponent(0) for j in range(4)] for i in range(4)] == L0


def test_c1_seed_row_order():
    prof, seed = build_c1_seed("A2")
    be = prof.backend
    assert seed.variables[:2] == (be.Y(1, 2), be.Y(2, 3))
    assert seed.variables[2:] == (be.mono({(1, 0): 1, (1, 2): 1}), be.mono({(2, 1): 1, (2, 3): 1}))


def test_minimal_affinization_in_a3():
    prof, seed = build_c1_seed("A3", (1, 0, 1))
    be = prof.backend
    got = mutate_seed(seed, 1).variables[1]
    assert got == be.parse("Y[2,0] Y[1,3] Y[3,3] + Y[1,1] Y[3,1] Y[2,2]^-1 Y[1,3] Y[3,3]")
    assert got == minimal_affinization_C1(prof, 2)


@pytest.mark.parametrize("label,xi", [("A2", None), ("A2", (1, 0)), ("A3", (1, 0, 1))])
def test_c1_theorem(label, xi):
    rep = verify_c1_theorem(label, xi, graph=False)
    assert rep.ok, rep.failures()


# sl2

def test_sl2_kr_classes():
    be = sl2_backend()
    assert kr_class_sl2(be, 0, 3) == be.one()
    assert kr_class_sl2(be, 1, 0) == be.parse("Y[1,0] + Y[1,2]^-1")
    assert kr_class_sl2(be, 2, 0) == be.parse("Y[1,0] Y[1,2] + Y[1,0] Y[1,4]^-1 + Y[1,2]^-1 Y[1,4]^-1")
    for k in range(1, 4):
        assert is_bar_invariant(kr_class_sl2(be, k, 2))


def test_sl2_tsystem_and_recursion():
    for p in (-2, 0, 6):
        for k in range(1, 5):
            assert tsystem_sl2(k, p)
        for l in range(2, 6):
            assert kr_recursion_sl2(l, p)


def test_sl2_alpha():
    assert sl2_alpha(1) == tmono(z0=-1) * sl2_s()
    assert sl2_alpha(2) == tmono(z0=1) * sl2_s().inverse()


def test_fit_identity_recovers_tsystem():
    be = sl2_backend()
    W = lambda k, p: kr_class_sl2(be, k, p)
    got = fit_identity(star(W(1, 0), W(1, 2)), [W(2, 0), be.one()])
    assert got == [ParamLaurent.mono(be.norm(tmono(z0=-1) * sl2_s())), ParamLaurent.const(1)]


def test_fit_identity_trivial_and_inconsistent():
    be = sl2_backend()
    x = kr_class_sl2(be, 1, 0)
    assert fit_identity(x, [x]) == [ParamLaurent.const(1)]
    with pytest.raises(NoSolution):
        fit_identity(x + be.Y(1, 8), [x])


# sl3 example

def test_sl3_mixed_coefficient():
    be = shared_backend("A2")
    v10 = fundamental_class_thin("A2", 1, 0, be)
    v21 = fundamental_class_thin("A2", 2, 1, be)
    from torclus.groth import n_param

    c = star(v10, v21).coefficient({(2, 1): 1, (2, 3): -1})
    p = tmono(m2=-H, z0=1, p2=-H)
    pref = n_param(be.cartan, 1, 0, 2, 1, 1, 2)
    assert c == (ParamLaurent.mono(p) + ParamLaurent.mono(p.inverse())) * ParamLaurent.mono(pref)


def test_sl3_commutator_display():
    from torclus.groth import n_param

    be = shared_backend("A2")
    v12 = fundamental_class_thin("A2", 1, 2, be)
    v21 = fundamental_class_thin("A2", 2, 1, be)
    n21 = n_param(be.cartan, 1, 0, 2, 1)
    lhs = star(v12, v21) - star(v21, v12).scale(n21.inverse())
    r = ParamLaurent.const(1) - ParamLaurent.mono(tmono(m4=-1, m2=1, p2=1, p4=-1))
    assert lhs == star(be.Y(2, 5) ** -1, be.Y(2, 1)).scale(r)


def test_sl3_simple_classes_are_bar_invariant():
    for name, x in sl3_simple_classes().items():
        assert is_bar_invariant(x), name
        assert has_unique_dominant(x), name


def test_a_support_of_b2_long_root():
    assert a_support(cartan_data("B2"), 1, 1) == {(1, 0): 1, (1, 2): 1, (2, 1): -1}


def test_quotient_profile_backends_are_shared():
    assert shared_backend("A2", QuotientContext.standard()) is shared_backend("A2", QuotientContext.standard())
