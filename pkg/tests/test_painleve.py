import pytest

from odeq import parse_equation, pp_check, pp_equivalence_consistency, strict_equiv_hyper
from odeq.painleve import branched_witness
from odeq.verdicts import NOT_PP, PP, UNSUPPORTED, YES


@pytest.mark.parametrize("text, kind", [
    ("S - (T^2 + z)", PP),
    ("z*S - z^2*T^2 - z*T + 1", PP),
    ("S - (T^3 + z)", NOT_PP),
    ("S - T^3", NOT_PP),
    ("S^2 - (T^3 + 1)", PP),
    ("S^2 - 4*T^3 - T", PP),
    ("S^2 - T^4 + 1", PP),
    ("S^2 - (T-1)*(T-2)*(T-3)*(T-4)*(T-5)*(T-6)", NOT_PP),
    ("S^2 - (T^6 - 1)", NOT_PP),
])
def test_pp_fixtures(text, kind):
    assert pp_check(parse_equation(text)).kind == kind


def test_branched_witness_on_cubic():
    w = branched_witness(parse_equation("S - (T^3 + z)"))
    assert w is not None and w["exponent"] == "-1/2"
    assert branched_witness(parse_equation("S - T^2 - z")) is None


def test_nonconstant_weierstrass_is_unsupported():
    assert pp_check(parse_equation("S^2 - (T^3 + z*T)")).kind == UNSUPPORTED


def test_pp_agrees_along_strict_equivalence(standard, disguised):
    r = strict_equiv_hyper(standard, disguised)
    assert r.kind == YES
    assert pp_check(disguised).kind == NOT_PP
    assert pp_equivalence_consistency(standard, disguised, r.witness)


def test_pp_riccati_with_z_coefficient():
    assert pp_check(parse_equation("S + z*T^2 + 1")).kind == PP
