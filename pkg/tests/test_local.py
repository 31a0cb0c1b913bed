import pytest
import sympy
from sympy import Rational

from odeq.equation import parse_equation
from odeq.errors import UnsupportedLocalForm
from odeq.fieldtower import INF, z
from odeq.local import X, puiseux_leading, ramification_indices

w, x = sympy.symbols("w x")


def _lead(leads, exponent):
    return [p for p in leads if p.exponent == exponent]


def test_cubic_equation_at_finite_point():
    leads = puiseux_leading(parse_equation("S - T^3 - z"), 0)
    (lead,) = _lead(leads, Rational(-1, 2))
    assert lead.constraint.as_expr() == 2 * X**2 + 1
    assert lead.branch_count == 1
    assert _lead(leads, 0)[0].holomorphic


def test_cubic_equation_at_infinity():
    leads = puiseux_leading(parse_equation("S - T^3 - z"), INF)
    assert [(p.exponent, p.constraint.as_expr()) for p in leads] == [(Rational(-1, 3), X**3 + 1)]


def test_leading_coefficient_solves_the_constraint():
    # y = c*(z - a)^(-1/2): y' = -c/2 (z-a)^(-3/2) balances y^3 iff 2c^2 + 1 = 0
    c = sympy.Symbol("c")
    tau = sympy.Symbol("tau", positive=True)
    y = c * tau ** Rational(-1, 2)
    lead_terms = sympy.simplify((sympy.diff(y, tau) - y**3) * tau ** Rational(3, 2))
    assert sympy.factor(lead_terms) == sympy.factor(-c * (2 * c**2 + 1) / 2)


def test_riccati_pole():
    leads = puiseux_leading(parse_equation("S - T^2"), 3)
    (lead,) = _lead(leads, -1)
    assert lead.constraint.as_expr() == X + 1


def test_every_point_sees_the_same_branch_type():
    eq = parse_equation("S - T^3 - z")
    for a in (-2, 1, 5):
        assert _lead(puiseux_leading(eq, a), Rational(-1, 2))


@pytest.mark.parametrize("F, at, expected", [
    (w**2 - (x - z) * (x + 1), z, [2]),
    (w**3 - (x - z), z, [3]),
    (w**2 - x**2 * (x + 1), 0, [1, 1]),
    (w**2 - x**3, 0, [2]),
    (w**3 - x**2, 0, [3]),
    (w**2 - x**5 + 1, INF, [2]),
    (w**2 - x**6 + 1, INF, [1, 1]),
])
def test_ramification_indices(F, at, expected):
    assert ramification_indices(F, at, w, x) == expected


def test_ramification_indices_sum_to_degree():
    F = w**4 - x**3 * (x - 1)
    for at in (0, 1, INF):
        assert sum(ramification_indices(F, at, w, x)) == 4


def test_inseparable_edge_is_unsupported():
    with pytest.raises(UnsupportedLocalForm):
        puiseux_leading(parse_equation("(S - T^2)^2 - z*T"), 1)
