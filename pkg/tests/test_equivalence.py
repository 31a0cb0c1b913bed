import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from odeq import (Moebius, RootSet, autonomous_test_hyper, disguise, elliptic_necessary,
                  elliptic_semi_autonomous_necessary, hyperelliptic_model, lift_to_field_iso,
                  parse_equation, semi_autonomous_test, strict_equiv_hyper, transport_residuals,
                  transporter)
from odeq.equivalence import INCONCLUSIVE, OBSTRUCTION, FieldIso
from odeq.errors import DegenerateTuple
from odeq.fieldtower import INF, QQz, is_constant, ratfunc, z
from odeq.verdicts import NO, UNSUPPORTED, YES
from oracles import INFTY, brute_force_transporter

POOL = [0, 1, -1, 2, -2, 3, sympy.Rational(1, 2), sympy.Rational(-1, 2), sympy.Rational(1, 3), INF]


def _oracle_pts(R):
    return [INFTY if p is INF else sympy.Rational(p) for p in R]


def _as_bijection(A, R1):
    return tuple(INFTY if A(p) is INF else QQz.to_sympy(A(p)) for p in R1)


def equation_with_roots(roots, lead=""):
    return parse_equation(f"{lead}S^2 - " + "*".join(f"(T - ({r}))" for r in roots))


def test_semi_autonomous_examples():
    N = semi_autonomous_test(RootSet(tuple(k * z for k in range(1, 7))))
    assert N is not None
    assert all(is_constant(N(k * z)) for k in range(1, 7))
    assert semi_autonomous_test(RootSet((1, 2, 3, 4, 5, z))) is None
    assert semi_autonomous_test(RootSet((0, 1, INF, 2, 5))).is_identity()


def test_root_set_rejects_repeats():
    with pytest.raises(DegenerateTuple):
        RootSet((1, 2, 1))


@given(st.permutations([z, 2 * z, 3 * z, 4 * z, 5 * z, 6 * z]), st.permutations([1, 2, 3, 4, 5, z]))
def test_semi_autonomy_is_order_independent(good, bad):
    assert semi_autonomous_test(RootSet(tuple(good))) is not None
    assert semi_autonomous_test(RootSet(tuple(bad))) is None


@given(st.lists(st.sampled_from(POOL), min_size=3, max_size=6, unique=True), st.randoms(use_true_random=False))
def test_transporter_matches_brute_force(R1, rnd):
    R2 = list(R1)
    rnd.shuffle(R2)
    if rnd.random() < 0.5:
        R2[-1] = next(p for p in POOL if p not in R2) if len(R2) < len(POOL) else R2[-1]
    got = {_as_bijection(A, R1) for A in transporter(RootSet(tuple(R1)), RootSet(tuple(R2)))}
    assert got == brute_force_transporter(_oracle_pts(R1), _oracle_pts(R2))


def test_stabilizer_of_harmonic_quadruple():
    R = [0, 1, INF, -1]
    assert len(brute_force_transporter(_oracle_pts(R), _oracle_pts(R))) == 8
    assert len(transporter(RootSet(tuple(R)), RootSet(tuple(R)))) == 8


def test_transporter_cap():
    R = RootSet((0, 1, INF, -1))
    res = transporter(R, R, max_candidates=2)
    assert res.truncated and len(res) <= 2


def test_lift_of_scaling():
    M1 = hyperelliptic_model(equation_with_roots([f"{j}*z" for j in range(1, 7)]))
    M2 = hyperelliptic_model(equation_with_roots(range(1, 7)))
    A = Moebius.make(z, 0, 0, 1)
    plus, minus = lift_to_field_iso(A, M1, M2)
    assert QQz.to_sympy(plus.lam2) == z**6 and plus.lam_in_base
    assert minus.sign == -plus.sign
    assert lift_to_field_iso(Moebius.make(1, 1, 0, 1), M1, M2) is None


def test_field_iso_round_trip():
    iso = FieldIso(Moebius.make(z, 0, 0, 1), ratfunc(z**6), ratfunc(z**3), -1, 2)
    assert FieldIso.from_dict(iso.as_dict()) == iso


def test_disguise_is_strictly_equivalent(standard, disguised):
    for e1, e2 in ((standard, disguised), (disguised, standard)):
        r = strict_equiv_hyper(e1, e2)
        assert r.kind == YES
        assert transport_residuals(r.witness, hyperelliptic_model(e1), hyperelliptic_model(e2)) == (0, 0)


def test_reflexive(standard):
    r = strict_equiv_hyper(standard, standard)
    assert r.kind == YES
    assert r.witness.moebius.is_identity() and r.witness.sign == 1


def test_different_cross_ratios(standard):
    other = equation_with_roots([1, 2, 3, 4, 5, 7])
    assert strict_equiv_hyper(standard, other).kind == NO


def test_same_roots_different_scale(standard):
    # y^2 = 2*P vs y^2 = P: every lift fails the odd part
    assert strict_equiv_hyper(standard, equation_with_roots(range(1, 7), "1/2*")).kind == NO


def test_genus_mismatch(standard):
    assert strict_equiv_hyper(standard, equation_with_roots(range(1, 9))).kind == NO


def test_irrational_branch_points(standard):
    assert strict_equiv_hyper(standard, parse_equation("S^2 - (T^6 - 2)")).kind == UNSUPPORTED


@pytest.mark.parametrize("f1, f2", [(z, 1 / (z - 1)), (z + 1, 2 * z), (z**2 - 3, 1 / z)])
def test_disguises_are_mutually_equivalent(standard, f1, f2):
    e1, e2 = disguise(standard, "scaleT", f1), disguise(standard, "scaleT", f2)
    r12, r21 = strict_equiv_hyper(e1, e2), strict_equiv_hyper(e2, e1)
    assert r12.kind == r21.kind == YES


def test_non_autonomous_disguise_is_not_equivalent(standard):
    e = parse_equation("(S - z*T)^2 - (T-1)*(T-2)*(T-3)*(T-4)*(T-5)*(T-6)")
    assert strict_equiv_hyper(standard, e).kind == NO


def test_autonomous_test(standard, disguised):
    assert autonomous_test_hyper(standard).kind == YES
    assert autonomous_test_hyper(disguised).kind == YES
    assert autonomous_test_hyper(
        parse_equation("(S - z*T)^2 - (T-1)*(T-2)*(T-3)*(T-4)*(T-5)*(T-6)")).kind == NO
    assert autonomous_test_hyper(equation_with_roots([1, 2, 3, 4, 5, "z"])).kind == NO


def test_elliptic_checks():
    e1 = parse_equation("S^2 - (T^3 + 1)")
    e2 = parse_equation("S^2 - (T^3 + T)")
    assert elliptic_necessary(e1, e2).kind == OBSTRUCTION
    assert elliptic_necessary(e1, e1).kind == INCONCLUSIVE
    assert elliptic_semi_autonomous_necessary(parse_equation("S^2 - (T^3 + z*T + 1)")).kind == OBSTRUCTION
    assert elliptic_semi_autonomous_necessary(parse_equation("S^2 - (T^3 + z*T)")).kind == INCONCLUSIVE
