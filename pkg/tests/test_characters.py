"""Character evaluation, Weyl twisting and torus bookkeeping."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from heckezeta.characters import (admissible_character, admissible_assignment,
                                  cstar_value, cstar_weight,
                                  delta_half_on_cstar, eval_weight,
                                  generic_assignment, generic_character,
                                  make_char, v_ad, weyl_act_char)
from heckezeta.weyl import (Composition, WeylElement, all_elements,
                            beta_enumeration, canonical_reduced_word,
                            compositions, simple_root)


def test_eval_weight_examples():
    chi = generic_character(3)
    F = chi.field
    assert eval_weight((0, 0), chi) == F.one
    assert eval_weight((1, 1), chi) == F.var("x1") * F.var("x2")
    assert eval_weight((-1, 2), chi) == F.var("x1") ** -1 * F.var("x2") ** 2


def test_generic_numeric_pairing():
    # alpha_i pairs with the (n-i)-th exponent
    n, p = 3, 5
    s = [0.3, 0.7]
    assign = generic_assignment(n, p, s)
    assert abs(assign["x1"] - p ** s[1]) < 1e-12
    assert abs(assign["x2"] - p ** s[0]) < 1e-12


def test_weyl_act_identity_and_rank2():
    chi = generic_character(2)
    assert weyl_act_char(WeylElement.identity(2), chi).values == chi.values
    s = WeylElement.simple(2, 1)
    twisted = weyl_act_char(s, chi)
    assert twisted.value(1) == chi.field.var("x1") ** -1


def test_weyl_act_rank3_example():
    chi = generic_character(3)
    F = chi.field
    s1 = WeylElement.simple(3, 1)
    twisted = weyl_act_char(s1, chi)
    assert twisted.value(1) == F.var("x1") ** -1
    assert twisted.value(2) == F.var("x1") * F.var("x2")


perm3 = st.permutations([0, 1, 2]).map(lambda p: WeylElement(3, tuple(p)))
perm5 = st.permutations([0, 1, 2, 3, 4]).map(lambda p: WeylElement(5, tuple(p)))


@given(w=perm5, gamma=st.tuples(*[st.integers(-2, 2)] * 4))
@settings(max_examples=80, deadline=None)
def test_weight_character_compatibility(w, gamma):
    chi = generic_character(5)
    lhs = eval_weight(w.act_on_weight(gamma), chi)
    rhs = eval_weight(gamma, weyl_act_char(w, chi))
    assert lhs == rhs


@given(w1=perm3, w2=perm3, gamma=st.tuples(st.integers(-2, 2),
                                           st.integers(-2, 2)))
@settings(max_examples=50, deadline=None)
def test_twist_is_right_action(w1, w2, gamma):
    chi = generic_character(3)
    lhs = weyl_act_char(w1 * w2, chi)
    rhs = weyl_act_char(w2, weyl_act_char(w1, chi))
    assert eval_weight(gamma, lhs) == eval_weight(gamma, rhs)


def test_make_char_validation():
    assert make_char("generic", n=3).n == 3
    d = Composition((1, 2))
    chi = make_char("admissible", d=d)
    assert chi.value(1) == chi.field.var("y1")
    assert chi.value(2).is_one()
    with pytest.raises(ValueError):
        make_char("generic", n=3, s=[1.0])
    with pytest.raises(ValueError):
        make_char("admissible", d=d, s=[1.0, 2.0])
    with pytest.raises(ValueError):
        make_char("bogus", n=3)


def test_admissible_trivial_for_single_block():
    chi = make_char("admissible", d=Composition((4,)))
    assert all(v.is_one() for v in chi.values)


def test_admissible_boundary_values_have_vad_degree():
    for n in (3, 4, 5):
        for d in compositions(n):
            chi = admissible_character(d)
            word = canonical_reduced_word(d)
            for beta in beta_enumeration(word):
                value = eval_weight(beta, chi)
                (mono, coeff), = value.numerator_terms().items()
                assert coeff == 1 and not value.denominator_factors()
                assert sum(mono) == v_ad(beta, d) >= 1


def test_v_ad_examples():
    assert v_ad((1, 1), Composition((3,))) == 0
    assert v_ad((1, 1), Composition((1, 2))) == 1
    # long element at rank 3: twice the critical sum is 4
    d = Composition((1, 1, 1))
    word = canonical_reduced_word(d)
    betas = beta_enumeration(word)
    assert 2 * v_ad(betas[1], d) == 4


def test_admissible_assignment_magnitudes():
    d = Composition((1, 2, 1))
    assign = admissible_assignment(d, 2, [1.0 + 1j, 1.0])
    assert abs(abs(assign["y1"]) - 0.5) < 1e-12
    assert abs(assign["y2"] - 0.5) < 1e-12


def test_cstar_pairing():
    chi = generic_character(2)
    assert cstar_value((1,), chi) == chi.field.var("x1") ** -1
    chi3 = generic_character(3)
    F = chi3.field
    assert cstar_value((1, 2), chi3) == F.var("x1") ** -2 * F.var("x2") ** -1
    assert cstar_weight(3, (1, 0)) == (0, -1)


def test_delta_half():
    assert delta_half_on_cstar((0,), 5) == 1
    assert delta_half_on_cstar((1,), 2) == Fraction(1, 2)
    assert delta_half_on_cstar((1, 1), 3) == Fraction(1, 9)
    # multiplicativity in the valuation vector
    a, b = (1, 0, 2), (0, 3, 1)
    ab = tuple(x + y for x, y in zip(a, b))
    assert (delta_half_on_cstar(a, 3) * delta_half_on_cstar(b, 3)
            == delta_half_on_cstar(ab, 3))
