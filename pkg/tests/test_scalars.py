"""Field axioms and exact/numeric agreement for the scalar field."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from heckezeta.scalars import Scalar, ScalarField, SingularEvaluationError

F = ScalarField(("t", "x", "y"))
T, X, Y = F.var("t"), F.var("x"), F.var("y")


def small_scalars(draw):
    """A random Laurent rational function built from generators."""
    atoms = [F.one, F.const(draw(st.integers(-3, 3))), T, X, Y,
             X ** -1, T ** -1]
    expr = draw(st.sampled_from(atoms))
    for _ in range(draw(st.integers(0, 3))):
        op = draw(st.sampled_from(["+", "*", "-"]))
        other = draw(st.sampled_from(atoms))
        expr = {"+": expr + other, "*": expr * other,
                "-": expr - other}[op]
    return expr


scalar_strategy = st.composite(small_scalars)()


def test_basic_identities():
    assert (F.one - T) + T == F.one
    assert X * X ** -1 == F.one
    assert (F.one - T * X) / (F.one - X) == (F.one - T * X) / (F.one - X)
    c = (F.one - T) / (F.one - X)
    assert X * c + F.one == (F.one - T * X) / (F.one - X)
    assert c + T == (F.one - T * X) / (F.one - X)


def test_zero_and_one():
    assert F.zero.is_zero()
    assert F.one.is_one()
    assert (X - X).is_zero()
    assert (X / X).is_one()


def test_fraction_coefficients():
    h = F.const(Fraction(1, 2))
    assert h + h == F.one
    assert (h * X).eval_exact({"t": Fraction(0), "x": Fraction(4),
                               "y": Fraction(0)}) == 2


def test_division_and_inverse():
    a = (F.one - T) / (F.one - X)
    assert a * a.inverse() == F.one
    b = X + Y
    assert b * b.inverse() == F.one
    assert (a / a) == F.one
    with pytest.raises(ZeroDivisionError):
        F.zero.inverse()


def test_powers():
    assert X ** 0 == F.one
    assert X ** 3 == X * X * X
    assert X ** -2 == (X * X).inverse()
    c = (F.one - T) / (F.one - X)
    assert c ** 2 == c * c


def test_singular_evaluation():
    c = F.one / (F.one - X)
    with pytest.raises(SingularEvaluationError):
        c.eval({"t": 0.5, "x": 1.0, "y": 0.0})


def test_reduced_cancels_exact_factors():
    a = (F.one - X) * ((F.one - T) / (F.one - X))
    r = a.reduced()
    assert not r.den
    assert r == F.one - T


def test_subs_monomials():
    G = ScalarField(("t", "z"))
    c = (F.one - T) / (F.one - X * Y)
    out = c.subs(G, {"t": G.var("t"), "x": G.var("z"), "y": G.one})
    assert out == (G.one - G.var("t")) / (G.one - G.var("z"))


def test_as_univariate():
    p = T ** 2 - F.const(3) * T + F.one
    assert p.as_univariate("t") == {2: 1, 1: -3, 0: 1}
    with pytest.raises(ValueError):
        (T + X).as_univariate("t")


@given(a=scalar_strategy, b=scalar_strategy, c=scalar_strategy)
@settings(max_examples=60, deadline=None)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a - a == F.zero


@given(a=scalar_strategy)
@settings(max_examples=40, deadline=None)
def test_field_inverse(a):
    if not a.is_zero():
        assert a * a.inverse() == F.one


@given(a=scalar_strategy,
       tv=st.fractions(min_value=Fraction(1, 7), max_value=Fraction(1, 2),
                       max_denominator=11),
       xv=st.fractions(min_value=Fraction(1, 5), max_value=Fraction(3, 4),
                       max_denominator=13),
       yv=st.fractions(min_value=Fraction(1, 5), max_value=Fraction(3, 4),
                       max_denominator=13))
@settings(max_examples=50, deadline=None)
def test_numeric_matches_exact(a, tv, xv, yv):
    assign = {"t": tv, "x": xv, "y": yv}
    try:
        exact = a.eval_exact(assign)
    except SingularEvaluationError:
        return
    numeric = a.eval({k: float(v) for k, v in assign.items()})
    if exact == 0:
        assert abs(numeric) < 1e-9
    else:
        assert abs(numeric - complex(exact)) <= 1e-10 * abs(complex(exact)) + 1e-12
