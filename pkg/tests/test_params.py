from fractions import Fraction

import pytest

from torclus.params import (
    DivergentSpecialization, ExpSeq, ONE, ParamLaurent, ParamMonomial, QuotientContext,
    pl_bar, pl_is_positive, pl_mul, pm_equal, pm_mul, pm_project, pm_specialize, standard_lattice_member,
)
from torclus.textfmt import ParseError, parse_param_laurent, parse_param_monomial

H = Fraction(1, 2)
STD = QuotientContext.standard()
NONE = QuotientContext.none()


def t(**kw):
    exps = {}
    for k, v in kw.items():
        exps[(-1 if k[0] == "m" else 1) * int(k[1:])] = v
    return ParamMonomial.from_exponents(exps)


def per(start, pattern):
    """Doubled tail from semantic exponents."""
    return ParamMonomial(ExpSeq.make({}, (start, tuple(2 * v for v in pattern))))


# ExpSeq storage

def test_doubled_storage():
    m = t(z0=H)
    assert m.e.finite == ((0, 1),)
    assert m.exponent(0) == H


def test_canonical_tail_is_minimal():
    a = ExpSeq.make({}, (4, (1, 2, 1, 2)))
    b = ExpSeq.make({4: 1, 5: 2}, (6, (1, 2)))
    assert a == b
    assert a.period == 2 and a.a_tail == 4


def test_canonical_form_of_zero():
    assert ExpSeq.make({3: 0}) == ExpSeq()
    assert ExpSeq.make({}, (5, (0, 0))).is_zero()
    assert ExpSeq().a_min == 0


def test_entries_below_tail_start_required():
    with pytest.raises(ValueError):
        ExpSeq.make({7: 1}, (5, (1,)))


def test_half_powers_must_be_half_integers():
    with pytest.raises(ValueError):
        ParamMonomial.from_exponents({0: Fraction(1, 3)})
    with pytest.raises(ValueError):
        t(z0=1) ** Fraction(1, 3)


# pm_mul

def test_half_times_half():
    assert pm_mul(t(z0=H), t(z0=H)) == t(z0=1)


def test_inverse_cancels():
    m = t(m2=3, z0=-H, p4=2) * per(8, (-3, 0, 3, 0, 0, 0))
    assert pm_mul(m, m.inverse()) == ONE


def test_tail_cancellation():
    a = per(8, (-3, 0, 3, 0, 0, 0))
    b = per(8, (3, 0, -3, 0, 0, 0))
    assert pm_mul(a, b) == ONE
    assert pm_mul(a, b).e.tail is None


def test_tails_of_different_periods_add():
    a = per(2, (1, 0))
    b = per(3, (0, 0, 1))
    c = pm_mul(a, b)
    for x in range(-2, 40):
        assert c.exponent(x) == a.exponent(x) + b.exponent(x)
    assert c.e.period == 6


# pm_equal

def test_s_collapses_across_k():
    assert pm_equal(t(m4=H, p4=H), t(m2=H, p2=H), STD)
    assert not pm_equal(t(m4=H, p4=H), t(m2=H, p2=H), NONE)


def test_relation_is_trivial_in_quotient():
    assert pm_equal(t(m4=1, m2=-1, p2=-1, p4=1), ONE, STD)


def test_t0_is_not_trivial():
    assert not pm_equal(t(z0=1), ONE, STD)


def test_lattice_membership_conditions():
    assert standard_lattice_member(t(m6=-H, m4=H, p4=H, p6=-H).e)
    assert not standard_lattice_member(t(m2=1).e)
    assert not standard_lattice_member(t(m1=1, p1=1).e)
    assert not standard_lattice_member(t(m4=1, p4=1).e)
    assert not standard_lattice_member(per(2, (1, 0)).e)


def test_standard_representative_avoids_deep_negative_indices():
    r = STD.reduce(t(m8=3, m4=-1, z0=1, p6=H))
    assert all(a >= -2 for a, _ in r.e.finite)
    assert pm_equal(r, t(m8=3, m4=-1, z0=1, p6=H), STD)


def test_custom_quotient():
    rel = t(m4=H, m2=-H, p2=-H, p4=H)
    ctx = QuotientContext.custom([rel])
    assert ctx.contains(rel ** 3)
    assert ctx.equal(t(m4=1), t(m2=1, p2=1, p4=-1))
    assert not ctx.contains(t(m4=1, m2=-1, p2=-1, p4=1) * t(z0=1))
    assert ctx.reduce(rel * t(z0=2)) == ctx.reduce(t(z0=2))


def test_custom_relations_need_finite_support():
    with pytest.raises(ValueError):
        QuotientContext.custom([per(2, (1,))])


# pl_mul and pl_bar

def test_pl_mul_difference_of_squares():
    one = ParamLaurent.const(1)
    x = ParamLaurent.mono(t(z0=1))
    assert pl_mul(one + x, one - x, NONE) == one - ParamLaurent.mono(t(z0=2))


def test_pl_mul_by_one():
    p = t(m2=-H, z0=1, p2=-H)
    x = ParamLaurent.mono(p) + ParamLaurent.mono(p.inverse())
    assert pl_mul(x, ParamLaurent.const(1), NONE) == x


def test_relation_kills_coefficients_in_quotient():
    c = ParamLaurent.const(1) - ParamLaurent.mono(t(m4=1, m2=-1, p2=-1, p4=1))
    x = ParamLaurent.mono(t(z0=3)) + 2
    assert pl_mul(c, x, STD).is_zero()
    assert not pl_mul(c, x, NONE).is_zero()


def test_bar_of_half_power():
    assert pl_bar(ParamLaurent.mono(t(z0=H))) == ParamLaurent.mono(t(z0=-H))


def test_symmetric_coefficient_is_bar_invariant():
    p = t(m2=-H, z0=1, p2=-H)
    x = ParamLaurent.mono(p) + ParamLaurent.mono(p.inverse())
    assert pl_bar(x) == x


# projection and specialization

def test_project_infinite_tail():
    m = t(m2=1, z0=-1, p2=-2, p4=3) * per(8, (-3, 0, 3, 0, 0, 0))
    assert pm_project(m, {-2, 0}) == t(m2=1, z0=-1)
    assert pm_project(ONE, {1, 2}) == ONE
    assert pm_project(m, set()) == ONE
    assert pm_project(m, {10, 12}) == t(p10=3) * t(p12=0)


def test_specialize_exponent_sum():
    assert pm_specialize(t(m2=1, z0=-2, p2=1), {-2: 1, 0: 1, 2: 1}) == 0


def test_specialize_to_t0():
    assert pm_specialize(t(m2=-H, z0=1, p2=-H), {0: 1}) == 1


def test_specialize_divergent():
    m = per(2, (1, 0))
    with pytest.raises(DivergentSpecialization):
        pm_specialize(m, {}, default=1)
    assert pm_specialize(m, {2: 1, 3: 5, 4: 1}) == 2


# positivity and units

def test_positivity():
    assert pl_is_positive(ParamLaurent.const(1) + ParamLaurent.mono(t(z0=1)))
    assert not pl_is_positive(ParamLaurent.const(1) - ParamLaurent.mono(t(z0=2)))


def test_unit():
    assert ParamLaurent.mono(t(z0=1), -1).unit() == (-1, t(z0=1))
    assert (ParamLaurent.const(1) + ParamLaurent.mono(t(z0=1))).unit() is None


# text

@pytest.mark.parametrize("text", [
    "t[-2]^{1/2} t[0]^{-1} t[2]^{1/2}",
    "t[-2]^{1} t[0]^{-1} t[2]^{-2} *PER(3,6)[0,3,0,0,0,-3]",
    "t[1]^{-1/2}",
])
def test_param_text_round_trip(text):
    m = parse_param_monomial(text)
    assert str(m) == text
    assert parse_param_monomial(str(m)) == m


def test_tail_start_is_minimized_in_text():
    m = parse_param_monomial("t[-2]^{1} t[0]^{-1} t[2]^{-2} t[4]^{3} *PER(8,6)[-3,0,3,0,0,0]")
    assert str(m) == "t[-2]^{1} t[0]^{-1} t[2]^{-2} *PER(3,6)[0,3,0,0,0,-3]"


def test_param_text_sums():
    x = parse_param_laurent("1 - t[0]^{2} + 2*t[1]^{1/2}")
    assert x.at_one() == 2
    assert parse_param_laurent(str(x)) == x


@pytest.mark.parametrize("bad", ["t[0]^{1/3}", "t[", "PER(2,3)[1,2]", "t[0] +"])
def test_param_text_errors(bad):
    with pytest.raises(ParseError):
        parse_param_monomial(bad)
