import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st
from sympy import Poly, cancel, diff

from odeq import genus, genus_riemann_hurwitz, j_invariant, parse_equation, rational_parametrization
from odeq.curves import quadratic_model
from odeq.equation import T
from odeq.errors import (NoRationalPoint, ReducibleEquation, UnsupportedBranchLocus,
                         UnsupportedModel)
from odeq.fieldtower import INF, QQz, z

u = sympy.Symbol("u")


@pytest.mark.parametrize("text, g, method", [
    ("S^2 - (T^6 - 1)", 2, "hyperelliptic-normal-form"),
    ("S^2 - (T^3 + 1)", 1, "hyperelliptic-normal-form"),
    ("S - (T^3 + z)", 0, "linear-in-variable"),
    ("S^3 - T^2*(T - 1)", 0, "riemann-hurwitz"),
    ("S^3 - T*(T - 1)*(T + 1)*(T - 2)", 3, "riemann-hurwitz"),
])
def test_genus_fixtures(text, g, method):
    rep = genus(parse_equation(text))
    assert (rep.genus, rep.method) == (g, method)


def test_repeated_irrational_critical_values_are_unsupported():
    with pytest.raises(UnsupportedBranchLocus):
        genus(parse_equation("S^3 - T^4 - 1"))


def test_square_discriminant_is_reducible():
    with pytest.raises(ReducibleEquation):
        genus(parse_equation("S^2 - 2*T^2"))


@st.composite
def squarefree_polys(draw):
    d = draw(st.integers(3, 8))
    coeffs = draw(st.lists(st.integers(-3, 3), min_size=d, max_size=d))
    P = sum(c * T**k for k, c in enumerate(coeffs)) + draw(st.sampled_from([1, 2, -1])) * T**d
    if Poly(P, T).sqf_part().degree() != d:
        P = P * 0 + T**d - 1
    return d, P


@given(squarefree_polys())
def test_riemann_hurwitz_agrees_with_normal_form(data):
    d, P = data
    eq = parse_equation("S^2 - (" + sympy.sstr(P).replace("**", "^") + ")")
    assert genus(eq).genus == genus_riemann_hurwitz(eq).genus == (d - 1) // 2


def test_model_of_standard_equation(standard):
    m = quadratic_model(standard)
    assert m.genus == 2 and m.roots is not None
    assert sorted(QQz.to_sympy(r) for r in m.roots) == [1, 2, 3, 4, 5, 6]
    assert quadratic_model(parse_equation("S^2 - T*(T - 1)*(T - 2)*(T - 3)*(T - 4)")).roots[-1] is INF


def _check_parametrization(text):
    eq = parse_equation(text)
    par = rational_parametrization(eq)
    # the parametrization lies on the curve and u' = g is compatible with T' = S
    assert cancel(eq.f.subs({sympy.Symbol("S"): par.S_of, sympy.Symbol("T"): par.T_of}, simultaneous=True)) == 0
    assert cancel(diff(par.T_of, z) + diff(par.T_of, u) * par.g - par.S_of) == 0
    return par


@pytest.mark.parametrize("text", ["S - T^2 - z", "S^3 - T", "S^2 - T^2 - 1", "S^2 - T", "S^2 - z*T^2 + T"])
def test_rational_parametrization(text):
    _check_parametrization(text)


def test_riccati_parametrization_is_trivial():
    par = rational_parametrization(parse_equation("S - T^2 - z"))
    assert par.T_of == u and cancel(par.g - u**2 - z) == 0


def test_parametrization_rejects_positive_genus():
    with pytest.raises(UnsupportedModel):
        rational_parametrization(parse_equation("S^2 - T^3 - 1"))


def test_j_invariant():
    assert j_invariant(parse_equation("S^2 - (T^3 + 1)")) == 0
    assert j_invariant(parse_equation("S^2 - (T^3 + T)")) == 1728
    # the quartic T^4 - 1 is isomorphic to y^2 = x^3 + 4x over Q(i); j = 1728
    assert j_invariant(parse_equation("S^2 - (T^4 - 1)")) == 1728


def test_j_invariant_of_legendre_family():
    lam = sympy.Rational(3)
    j = j_invariant(parse_equation(f"S^2 - T*(T - 1)*(T - {lam})"))
    assert QQz.to_sympy(j) == 256 * (lam**2 - lam + 1) ** 3 / (lam**2 * (lam - 1) ** 2)


def test_quartic_without_rational_root():
    with pytest.raises(NoRationalPoint):
        j_invariant(parse_equation("S^2 - (T^4 + 1)"))
