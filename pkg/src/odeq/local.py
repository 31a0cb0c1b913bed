"""Newton-polygon analysis of local solutions and of plane-curve branches.

Only leading terms are computed: the exponent of a formal Puiseux solution
y = c*(z - a)**mu + ... and the polynomial constraining c.  The same
polygon machinery, iterated through rational multiple roots, yields the
ramification indices of a plane curve over a point of the base line.
"""

from __future__ import annotations

from dataclasses import dataclass

import sympy
from sympy import QQ, Poly, Rational

from .equation import S, T
from .errors import UnsupportedLocalForm
from .fieldtower import INF, QQz, rational_function_roots, ratfunc, z

X = sympy.Symbol("X")
_tau = sympy.Symbol("tau")


@dataclass(frozen=True)
class PuiseuxLead:
    """Leading data of local solutions: exponent, constraint on c, branch count."""

    exponent: Rational
    constraint: Poly
    branch_count: int

    @property
    def holomorphic(self):
        return self.exponent >= 0 and self.exponent.q == 1

    def as_dict(self):
        return {"exponent": str(self.exponent), "constraint": str(self.constraint.as_expr()),
                "branch_count": self.branch_count}


def _lower_hull(points):
    """Vertices of the lower convex hull, sorted by x."""
    pts = sorted(set(points))
    hull = []
    for p in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop hull[-1] if it lies on or above the segment hull[-2] -> p
            if (y2 - y1) * (p[0] - x1) >= (p[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        if hull and hull[-1][0] == p[0]:
            continue
        hull.append(p)
    return hull


def _local_ode_poly(eq, at):
    """f rewritten in the local variable tau at z = a (or tau = 1/z at infinity)."""
    f = eq.f
    if at is INF:
        expr = f.subs({S: -_tau**2 * S, z: 1 / _tau}, simultaneous=True)
        expr = sympy.expand(expr * _tau**eq.poly.degree(z))
    else:
        expr = sympy.expand(f.subs(z, at + _tau))
    return Poly(expr, S, T, _tau, domain=QQ)


def puiseux_leading(eq, at):
    """Leading exponents and coefficient constraints of local solutions at ``at``.

    ``at`` is a rational number or ``INF``.  Every lower Newton-polygon edge
    whose exponent is not a nonnegative integer gives one entry; at finite
    points where the equation stays regular, the family of holomorphic
    solutions is reported with exponent 0 and constraint 1.
    """
    if at is not INF:
        at = sympy.Rational(at)
    local = _local_ode_poly(eq, at)
    mu = sympy.Symbol("mu")

    lowest = {}
    for (i, j, k), c in local.terms():
        if (i, j) not in lowest or k < lowest[(i, j)][0]:
            lowest[(i, j)] = (k, c)
    weights = {}
    for (i, j), (k, c) in lowest.items():
        pt = (i + j, k - i)
        weights[pt] = weights.get(pt, 0) + c * mu**i
    hull = _lower_hull(list(weights))

    leads = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        expo = -Rational(y2 - y1, x2 - x1)
        on_edge = [(px, py) for (px, py) in weights
                   if x1 <= px <= x2 and (py - y1) * (x2 - x1) == (y2 - y1) * (px - x1)]
        if expo >= 0 and expo.q == 1:
            if expo > 0:
                leads.append(PuiseuxLead(expo, Poly(1, X, domain=QQ), x2 - x1))
            continue
        wl = sympy.sympify(weights[(x1, y1)]).subs(mu, expo)
        wr = sympy.sympify(weights[(x2, y2)]).subs(mu, expo)
        if wl == 0 or wr == 0:
            raise UnsupportedLocalForm(f"edge weight vanishes for exponent {expo}")
        char = sum(sympy.sympify(weights[p]).subs(mu, expo) * X**(p[0] - x1) for p in on_edge)
        Q = Poly(char, X, domain=QQ)
        if Q.gcd(Q.diff()).degree() > 0:
            raise UnsupportedLocalForm(f"inseparable edge polynomial {Q.as_expr()}")
        _, Q = Q.clear_denoms(convert=True)
        Q = Q.primitive()[1]
        if Q.LC() < 0:
            Q = -Q
        Q = Q.set_domain(QQ)
        leads.append(PuiseuxLead(expo, Q, Q.degree() // expo.q))

    if at is not INF:
        lc_S = Poly(eq.f, S).LC()
        if sympy.expand(lc_S.subs(z, at)) != 0:
            leads.append(PuiseuxLead(Rational(0), Poly(1, X, domain=QQ), eq.deg_S))
    leads.sort(key=lambda p: (p.exponent, str(p.constraint.as_expr())))
    return leads


# ---------------------------------------------------------------------------
# Ramification of plane curves


def _newton_edges(G, w):
    """Lower hull edges of G(w, tau) viewed as a polynomial in w over Q(z)[tau]."""
    pts = {}
    for (j, k), c in G.terms():
        if j not in pts or k < pts[j][0]:
            pts[j] = (k, c)
    hull = _lower_hull([(j, k) for j, (k, _) in pts.items()])
    edges = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        slope = Rational(y2 - y1, x2 - x1)
        coeffs = {j - x1: c for j, (k, c) in pts.items()
                  if x1 <= j <= x2 and (k - y1) * (x2 - x1) == (y2 - y1) * (j - x1)}
        edges.append((x1, y1, x2, -slope, coeffs))
    return edges, min(pts) if pts else 0


def _shift(G, w, gamma, lam):
    """tau**(-v) * G(tau**gamma * (lam + w), tau), cleared to a polynomial."""
    lift = -gamma * G.degree(w) if gamma < 0 else 0
    expr = sum(c * _tau**(k + gamma * j + lift) * (QQz.to_sympy(lam) + w)**j
               for (j, k), c in G.terms())
    out = Poly(sympy.expand(expr), w, _tau, domain=QQz)
    low = min(m[1] for m in out.monoms())
    return Poly(sympy.expand(out.as_expr() / _tau**low), w, _tau, domain=QQz)


def _cycles(G, w, positive_only=False):
    """Ramification indices of the Puiseux cycles of G(w, tau) = 0 at tau = 0."""
    edges, jmin = _newton_edges(G, w)
    out = []
    if jmin:
        if jmin > 1:
            raise UnsupportedLocalForm("repeated branch w = 0")
        out.append(1)
    for _, _, _, gamma, coeffs in edges:
        if positive_only and gamma <= 0:
            continue
        q = gamma.q
        psi = Poly(sum(c * X**(e // q) for e, c in coeffs.items()), X, domain=QQz)
        for part, mult in psi.sqf_list()[1]:
            if part.degree() <= 0:
                continue
            if mult == 1:
                out.extend([q] * part.degree())
                continue
            if q != 1:
                raise UnsupportedLocalForm("multiple root on a ramified edge")
            roots = rational_function_roots(part, X)
            if len(roots) != part.degree():
                raise UnsupportedLocalForm("multiple root outside Q(z)")
            for lam in roots:
                out.extend(_cycles(_shift(G, w, int(gamma), lam), w, positive_only=True))
    return out


def ramification_indices(F, at, w, x):
    """Ramification indices over x = ``at`` of the covering F(w, x) = 0 -> x.

    ``F`` is a polynomial in w and x with coefficients in Q(z); ``at`` is an
    element of Q(z) or ``INF``.  The indices sum to deg_w F.
    """
    Fp = Poly(F, w, x, domain=QQz)
    n = Fp.degree(w)
    if at is INF:
        expr = sympy.expand(Fp.as_expr().subs(x, 1 / _tau) * _tau**Fp.degree(x))
    else:
        expr = Fp.as_expr().subs(x, QQz.to_sympy(ratfunc(at)) + _tau)
    G = Poly(sympy.expand(expr), w, _tau, domain=QQz)
    indices = sorted(_cycles(G, w), reverse=True)
    if sum(indices) != n:
        raise UnsupportedLocalForm("branch bookkeeping failed")
    return indices
