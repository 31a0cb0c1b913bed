"""Painlevé property by genus.

Genus 0: after a rational parametrization u' = g(u, z), PP holds iff g is a
polynomial of degree at most 2 in u (a Riccati equation).  Genus 1: PP is
recognised on the form a(z) y'^2 = b(z) C(y) with C over Q.  Genus >= 2:
PP iff the equation is strictly equivalent to y' = 0 on a constant curve.
"""

from __future__ import annotations

import sympy
from sympy import Poly, cancel, fraction

from .curves import genus, hyperelliptic_model, rational_parametrization
from .equation import S, T
from .equivalence import normalized_derivation, semi_autonomous_test
from .errors import (NotHyperellipticSupported, OdeqError, UnsupportedLocalForm,
                     UnsupportedModel)
from .fieldtower import z
from .local import puiseux_leading
from .verdicts import NOT_PP, PP, UNSUPPORTED, PPVerdict

u = sympy.Symbol("u")


def _generic_point(eq):
    """A small integer where no coefficient of f in S, T vanishes."""
    coeffs = [sympy.Poly(c, z) for c in Poly(eq.f, S, T).coeffs()]
    for k in range(0, 50):
        for z0 in (k, -k):
            if all(c.eval(z0) != 0 for c in coeffs):
                return sympy.Integer(z0)
    return None


def branched_witness(eq):
    """Leading data of a ramified local solution at a generic point, or None.

    At a point where no coefficient of f degenerates the Newton polygon is
    the same as at every other such point, so a ramified lead there is a
    movable branch point.
    """
    z0 = _generic_point(eq)
    if z0 is None:
        return None
    try:
        leads = puiseux_leading(eq, z0)
    except UnsupportedLocalForm:
        return None
    for lead in leads:
        if lead.exponent.q > 1:
            return {"kind": "branched local solution", "point": str(z0), **lead.as_dict()}
    return None


def _genus0(eq):
    try:
        param = rational_parametrization(eq)
    except UnsupportedModel as exc:
        return PPVerdict(UNSUPPORTED, {}, str(exc))
    g = cancel(param.g)
    num, den = fraction(g)
    cert = {"genus": 0, "u": str(u), "T": str(param.T_of), "g": str(g)}
    if not den.has(u) and Poly(num, u).degree() <= 2:
        coeffs = Poly(g, u).all_coeffs()[::-1] + [0, 0, 0]
        cert.update({"normal_form": "riccati",
                     "a0": str(coeffs[0]), "a1": str(coeffs[1]), "a2": str(coeffs[2])})
        return PPVerdict(PP, cert)
    if den.has(u):
        cert["obstruction"] = f"g has a pole in u at the roots of {den}"
    else:
        cert["obstruction"] = f"g has degree {Poly(num, u).degree()} > 2 in u"
    witness = branched_witness(eq)
    if witness:
        cert["witness"] = witness
    return PPVerdict(NOT_PP, cert)


def _weierstrass_match(eq):
    """(A, q, C) with f = A(z) S^2 - q(z) C(T) and C in Q[T], or None."""
    if eq.deg_S != 2:
        return None
    fs = Poly(eq.f, S)
    if len(fs.all_coeffs()) != 3:
        return None
    A, B, rest = fs.all_coeffs()
    if B != 0 or A.has(T):
        return None
    rt = Poly(rest, T)
    content = sympy.gcd_list(rt.coeffs())
    C = cancel(rt.as_expr() / content)
    if C.has(z):
        return None
    Cp = Poly(C, T)
    if Cp.degree() not in (3, 4) or Cp.gcd(Cp.diff()).degree() > 0:
        return None
    return A, -content, Cp


def _genus1(eq):
    match = _weierstrass_match(eq)
    if match is not None:
        A, q, C = match
        lc = C.LC()
        h = cancel(q * lc / A)
        return PPVerdict(PP, {"genus": 1, "normal_form": "weierstrass",
                              "h": str(h), "C": str((C.as_expr() / lc).expand())})
    witness = branched_witness(eq)
    if witness:
        return PPVerdict(NOT_PP, {"genus": 1, "witness": witness})
    return PPVerdict(UNSUPPORTED, {"genus": 1},
                     "no Weierstrass form over Q and no ramified lead found")


def _genus_high(eq, g):
    try:
        model = hyperelliptic_model(eq)
    except NotHyperellipticSupported as exc:
        return PPVerdict(UNSUPPORTED, {"genus": g}, str(exc))
    cert = {"genus": g, "P": str(model.P.as_expr())}
    if model.autonomous:
        cert["obstruction"] = "autonomous with D(x) != 0"
        return PPVerdict(NOT_PP, cert)
    if model.roots is None:
        return PPVerdict(UNSUPPORTED, cert, "branch points do not split over Q(z)")
    N = semi_autonomous_test(model.roots)
    if N is None:
        cert["obstruction"] = "not semi-autonomous"
        return PPVerdict(NOT_PP, cert)
    nd = normalized_derivation(model, N)
    cert["normalized"] = nd.as_dict()
    if nd.vanishes:
        cert["normal_form"] = "y' = 0 on a constant curve"
        return PPVerdict(PP, cert)
    cert["obstruction"] = "normalized derivation is nonzero"
    return PPVerdict(NOT_PP, cert)


def pp_check(eq):
    """Decide the Painlevé property of ``eq`` (PP, NotPP or Unsupported)."""
    g = genus(eq).genus
    if g == 0:
        return _genus0(eq)
    if g == 1:
        return _genus1(eq)
    return _genus_high(eq, g)


def pp_equivalence_consistency(e1, e2, witness=None):
    """True iff both equations get the same definite PP verdict."""
    try:
        v1, v2 = pp_check(e1), pp_check(e2)
    except OdeqError:
        return False
    return v1.definite and v2.definite and v1.kind == v2.kind
