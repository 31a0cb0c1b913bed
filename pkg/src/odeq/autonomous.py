"""Autonomous equations seen as a curve with a vector field.

An autonomous f(y', y) = 0 is the same datum as a pair (X, D): the curve
f(S, T) = 0 over Q together with the derivation D(T) = S.  Two models are
used here: genus 0 as D = h(v) d/dv on Q(v), and hyperelliptic as a pair
(Dx, Dy) on Q(x)[y]/(y^2 - P).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

import sympy
from sympy import QQ, Poly, cancel, fraction, sympify

from .curves import Genus0Param, HyperModel, genus, quadratic_model, rational_parametrization, x, y
from .equation import S, T, is_autonomous, make_equation
from .errors import (NonRationalSupport, NotAGenerator, NotHyperellipticSupported,
                     UnsupportedModel)
from .fieldtower import INF, check_degree, hermite_reduce, point_str, residues_all_zero, z
from .funcfield import FunctionField
from .moebius import Moebius, _pt
from .verdicts import EquivVerdict

v = sympy.Symbol("v")


# ---------------------------------------------------------------------------
# Pairs

@dataclass(frozen=True)
class Genus0Pair:
    """D = h(v) d/dv on Q(v)."""

    h: object

    def __post_init__(self):
        if cancel(sympify(self.h)) == 0:
            raise ValueError("the vector field must be nonzero")

    def derive(self, g):
        return cancel(sympy.diff(sympify(g), v) * self.h)

    def as_dict(self):
        return {"kind": "genus0", "h": str(self.h)}


@dataclass(frozen=True, eq=False)
class HyperPair:
    """D on Q(x)[y]/(y^2 - P), given by Dx and Dy with 2y*Dy = P'(x)*Dx."""

    P: Poly
    Dx: object
    Dy: object
    model: HyperModel | None = field(default=None, repr=False)

    def __post_init__(self):
        F = self.field
        Dx, Dy = F(self.Dx), F(self.Dy)
        if Dx.is_zero() and Dy.is_zero():
            raise ValueError("the derivation must be nonzero")
        if 2 * F.gen() * Dy != F(self.P.diff(x).as_expr()) * Dx:
            raise ValueError("Dx and Dy violate 2y*Dy = P'(x)*Dx")

    @cached_property
    def field(self):
        return FunctionField(y**2 - self.P.as_expr(), y, x)

    def derive(self, g):
        F = self.field
        return F.derive(F(g), F(self.Dy), F(self.Dx), dz=0)

    def as_dict(self):
        F = self.field
        return {"kind": "hyper", "P": str(self.P.as_expr()),
                "Dx": str(F(self.Dx).as_expr()), "Dy": str(F(self.Dy).as_expr())}


def extract_pair(eq):
    """The pair (X, D) of an autonomous equation in genus-0 or hyperelliptic form."""
    if not is_autonomous(eq):
        raise ValueError("equation depends on z")
    rep = genus(eq)
    if rep.genus == 0:
        param = rep.certificate if isinstance(rep.certificate, Genus0Param) else rational_parametrization(eq)
        h = cancel(sympify(param.g).subs(sympy.Symbol("u"), v))
        if h.has(z):
            raise UnsupportedModel("parametrization is not defined over Q")
        return Genus0Pair(h)
    if rep.method != "hyperelliptic-normal-form":
        raise NotHyperellipticSupported("f is not quadratic in S or T")
    model = quadratic_model(eq)
    P = Poly(model.P.as_expr(), x, domain=QQ)
    return HyperPair(P, model.Dx.as_expr(), model.Dy.as_expr(), model)


# ---------------------------------------------------------------------------
# From a pair back to an equation

def _num(expr):
    return fraction(cancel(sympify(expr)))[0]


def _pick_factor(R, vanishes):
    if R == 0:
        raise NotAGenerator("resultant vanishes identically")
    _, facs = sympy.factor_list(R, S, T)
    hits = [(f, m) for f, m in facs if f.has(S) and f.has(T) and vanishes(f)]
    if not hits:
        raise NotAGenerator("no factor of the resultant vanishes on (D(g), g)")
    f, m = hits[0]
    if m > 1:
        raise NotAGenerator("g and D(g) generate a proper subfield")
    return f


def make_autonomous(pair, g):
    """The irreducible G with G(D(g), g) = 0, as an equation G(S, T) = 0."""
    if isinstance(pair, Genus0Pair):
        g = cancel(sympify(g))
        dg = pair.derive(g)
        if dg == 0:
            raise NotAGenerator("D(g) = 0")
        gn, gd = fraction(g)
        dn, dd = fraction(dg)
        A = sympy.expand(T * gd - gn)
        B = sympy.expand(S * dd - dn)
        R = sympy.resultant(A, B, v)

        def vanishes(f):
            return cancel(f.subs({S: dg, T: g}, simultaneous=True)) == 0
    else:
        F = pair.field
        gel = F(g)
        dg = pair.derive(gel)
        if dg.is_zero():
            raise NotAGenerator("D(g) = 0")
        a1, b1 = _split(gel)
        a2, b2 = _split(dg)
        P = pair.P.as_expr()
        if b1 != 0:
            A = _num((T - a1) ** 2 - b1**2 * P)
            B = _num(b1 * (S - a2) - b2 * (T - a1))
        elif b2 != 0:
            A = _num(T - a1)
            B = _num((S - a2) ** 2 - b2**2 * P)
        else:
            raise NotAGenerator("g and D(g) lie in Q(x)")
        R = sympy.resultant(sympy.expand(A), sympy.expand(B), x)

        def vanishes(f):
            return F(f.subs({S: dg.as_expr(), T: gel.as_expr()}, simultaneous=True)).is_zero()
    check_degree(max(Poly(R, S, T).degree(S), Poly(R, S, T).degree(T)) if R != 0 else 0, "resultant")
    return make_equation(_pick_factor(sympy.expand(R), vanishes))


def _split(el):
    """(a, b) with el = a(x) + b(x)*y."""
    dom = el.field.domain
    cs = el.coeffs() + [dom.zero, dom.zero]
    return cancel(dom.to_sympy(cs[0])), cancel(dom.to_sympy(cs[1]))


# ---------------------------------------------------------------------------
# Disguises

def disguise_substitution(mode, factor):
    """(old T, old S) in terms of the new S, T for a disguise with factor phi."""
    phi = cancel(sympify(factor))
    if phi == 0:
        raise ValueError("factor must be nonzero")
    dphi = sympy.diff(phi, z)
    if mode == "scaleT":
        return cancel(T / phi), cancel((phi * S - dphi * T) / phi**2)
    if mode == "scaleS":
        return cancel(T / phi), cancel((S - dphi / phi * T) / phi)
    raise ValueError(f"unknown disguise mode {mode!r}")


def disguise(eq, mode, factor):
    """A strictly equivalent equation whose unknown is factor*y (scaleT) or factor*y' (scaleS)."""
    t_new, s_new = disguise_substitution(mode, factor)
    if mode == "scaleT":
        expr = eq.f.subs({S: s_new, T: t_new}, simultaneous=True)
        return make_equation(expr)
    if not is_autonomous(eq):
        raise ValueError("scaleS needs an autonomous equation")
    pair = extract_pair(eq)
    if isinstance(pair, Genus0Pair):
        param = rational_parametrization(eq)
        s_gen = cancel(sympify(param.S_of).subs(sympy.Symbol("u"), v))
    else:
        s_gen = pair.model.pull(S).as_expr()
    G = make_autonomous(pair, s_gen)
    expr = G.f.subs({S: s_new, T: t_new}, simultaneous=True)
    return make_equation(expr)


# ---------------------------------------------------------------------------
# Genus 0: divisors, conjugation, equivalence

@dataclass(frozen=True)
class VectorFieldDivisor:
    """Divisor of h(v) d/dv on P^1; finite points ascending, then INF."""

    points: tuple

    def as_dict(self):
        return [{"point": point_str(p), "order": k} for p, k in self.points]

    def orders(self):
        return sorted(k for _, k in self.points)

    def mapping(self):
        return dict(self.points)

    def degree(self):
        return sum(k for _, k in self.points)


def _linear_roots(poly):
    out = {}
    for fac, m in poly.factor_list()[1]:
        if fac.degree() > 1:
            raise NonRationalSupport(f"irreducible factor {fac.as_expr()} of degree {fac.degree()}")
        if fac.degree() == 1:
            a, b = fac.all_coeffs()
            out[sympy.Rational(-b, a)] = m
    return out


def vf_divisor(h):
    """Zeros and poles of h d/dv, with the chart w = 1/v at infinity."""
    h = cancel(sympify(h))
    if h == 0:
        raise ValueError("h must be nonzero")
    num, den = fraction(h)
    pn = Poly(num, v, domain=QQ)
    pd = Poly(den, v, domain=QQ)
    orders = dict(_linear_roots(pn))
    for p, m in _linear_roots(pd).items():
        orders[p] = orders.get(p, 0) - m
    at_inf = pd.degree() - pn.degree() + 2
    pts = sorted((p, k) for p, k in orders.items() if k)
    if at_inf:
        pts.append((INF, at_inf))
    return VectorFieldDivisor(tuple(pts))


def _homogenized(poly, p, q, K):
    n = poly.degree()
    return sum((K.from_sympy(c) * p**i * q ** (n - i) for (i,), c in poly.terms()), K.zero)


def conjugate_vf(m, h1, var=v):
    """Coefficient f2 of the conjugated field when y = m(u) and u' = h1(u).

    Chain rule at u = m^-1(y), written with w = (d*y - b)/(a - c*y):
    f2 = [a'(dy-b) + b'(a-cy) - y(c'(dy-b) + d'(a-cy))]/det + (a-cy)^2/det * h1(w).
    """
    K = QQ.frac_field(var, z)
    a, b, c, d = m.entries()
    da, db, dc, dd = (K.from_sympy(sympy.diff(e, z)) for e in (a, b, c, d))
    a, b, c, d = (K.from_sympy(e) for e in (a, b, c, d))
    Y = K.from_sympy(var)
    det = a * d - b * c
    p, q = d * Y - b, a - c * Y
    num, den = fraction(cancel(sympify(h1)))
    pn, pd = Poly(num, var), Poly(den, var)
    f1 = _homogenized(pn, p, q, K) / _homogenized(pd, p, q, K) * q ** (pd.degree() - pn.degree())
    f2 = (da * p + db * q - Y * (dc * p + dd * q)) / det + q**2 / det * f1
    return K.to_sympy(f2)


def _support_triples(div):
    return [p for p, _ in div.points]


def _free_point(avoid):
    k = 0
    while True:
        for cand in (sympy.Integer(k), sympy.Integer(-k)):
            if cand not in avoid:
                return cand
        k += 1


def _rational_lambda(k1, k2):
    """Nonzero rationals lam with lam*k1(y/lam) = k2, and whether irrational ones exist."""
    lam = sympy.Dummy("lam")
    lhs = cancel(lam * sympify(k1).subs(v, v / lam) - k2)
    num = fraction(lhs)[0]
    if num == 0:
        return [sympy.Integer(1)], False
    g = Poly(0, lam, domain=QQ)
    for c in Poly(num, v).coeffs():
        g = g.gcd(Poly(c, lam, domain=QQ))
    if g.is_zero:
        return [sympy.Integer(1)], False
    rest = g
    found = []
    for r in sympy.roots(g, filter="Q"):
        lin = Poly(lam - r, lam, domain=QQ)
        while rest.rem(lin).is_zero:
            rest = rest.exquo(lin)
        if r != 0:
            found.append(r)
    return sorted(found, key=lambda r: (abs(r), bool(r < 0))), rest.degree() > 0


def pair_equivalent_genus0(p1, p2):
    """Decide whether a constant Möbius map conjugates D1 into D2."""
    h1 = p1.h if isinstance(p1, Genus0Pair) else p1
    h2 = p2.h if isinstance(p2, Genus0Pair) else p2
    d1, d2 = vf_divisor(h1), vf_divisor(h2)
    if d1.orders() != d2.orders():
        return EquivVerdict.no("divisor orders differ",
                               divisor1=d1.as_dict(), divisor2=d2.as_dict())
    pts1, pts2 = _support_triples(d1), _support_triples(d2)
    ord1, ord2 = d1.mapping(), d2.mapping()

    if len(pts1) >= 3:
        src = tuple(pts1[:3])
        compatible = 0
        for dst in itertools.permutations(pts2, 3):
            if any(ord1[s] != ord2[t] for s, t in zip(src, dst)):
                continue
            psi = Moebius.from_points(src, dst)
            if {psi(p): k for p, k in d1.points} != {_pt(p): k for p, k in d2.points}:
                continue
            compatible += 1
            if cancel(conjugate_vf(psi, h1) - h2) == 0:
                return EquivVerdict.yes(psi, "divisor-preserving map conjugates the fields")
        return EquivVerdict.no("no divisor-preserving map conjugates the fields",
                               candidates=compatible)

    # at most two support points: normalize to 0 (and INF), then y = lam*u;
    # y = lam/u arises from the swapped assignment
    irrational = False
    for dst in itertools.permutations(pts2):
        if any(ord1[s] != ord2[t] for s, t in zip(pts1, dst)):
            continue
        N1, N2 = _normalizer(pts1), _normalizer(dst)
        lams, extra = _rational_lambda(conjugate_vf(N1, h1), conjugate_vf(N2, h2))
        irrational = irrational or extra
        for lam in lams:
            psi = N2.inverse() @ Moebius.make(lam, 0, 0, 1) @ N1
            if cancel(conjugate_vf(psi, h1) - h2) == 0:
                return EquivVerdict.yes(psi, "normalized stabilizer match")
    if irrational:
        return EquivVerdict.not_found("scaling constant is irrational")
    return EquivVerdict.no("no scaling of the normalized field matches")


def _normalizer(pts):
    """Constant Möbius map sending the support to 0 (and INF when two points)."""
    pts = list(pts)
    if len(pts) == 0:
        return Moebius.identity()
    if len(pts) == 1:
        a = pts[0]
        if a is INF:
            return Moebius.identity()
        return Moebius.make(0, 1, 1, -a)
    a, b = pts
    third = _free_point({a, b})
    return Moebius.from_points((a, third, b), (0, 1, INF))


# ---------------------------------------------------------------------------
# Algebraic solutions

def algebraic_solution_genus0(pair):
    """t in Q(v) with h dt/dv = 1, or None when 1/h has no rational antiderivative."""
    h = pair.h if isinstance(pair, Genus0Pair) else sympify(pair)
    part, rem = hermite_reduce(cancel(1 / h), v)
    if rem != 0 and not residues_all_zero(rem, v):
        return None
    return cancel(part)


@dataclass(frozen=True)
class HyperSolution:
    t: object
    certificate: dict

    def as_dict(self):
        return {"t": None if self.t is None else str(self.t), **self.certificate}


def _poly_x(expr):
    return Poly(expr, x, domain=QQ)


def _solve_odd_part(r2, P):
    """V in Q(x) with V' + V*P'/(2P) = r2, within the exact a priori bounds."""
    r2 = cancel(r2)
    n = P.degree()
    if r2 == 0:
        return sympy.Integer(0), {"denominator": "1", "numerator_degree_bound": -1}
    num, den = fraction(r2)
    pn, pd = _poly_x(num), _poly_x(den)
    c = Poly(1, x, domain=QQ)
    for fac, m in pd.sqf_list()[1]:
        c = c * fac ** (m - 1)
    delta = pn.degree() - pd.degree()
    k = delta + 1
    if n % 2 == 0:
        k = max(k, -n // 2)
    bound = c.degree() + k
    cert = {"denominator": str(c.as_expr()), "numerator_degree_bound": bound}
    if bound < 0:
        return None, cert
    coeffs = sympy.symbols(f"a0:{bound + 1}")
    N = sum(a * x**i for i, a in enumerate(coeffs))
    V = N / c.as_expr()
    Pe = P.as_expr()
    lhs = sympy.diff(V, x) + V * sympy.diff(Pe, x) / (2 * Pe) - r2
    numer = fraction(cancel(sympy.together(lhs)))[0]
    eqs = Poly(sympy.expand(numer), x).coeffs()
    sol = sympy.linsolve(eqs, coeffs)
    if not sol:
        return None, cert
    vals = next(iter(sol))
    subs = {a: (val.subs({b: 0 for b in coeffs}) if val.free_symbols else val)
            for a, val in zip(coeffs, vals)}
    return cancel(V.subs(subs)), cert


def algebraic_solution_hyper(pair, with_certificate=False):
    """t in Q(x)[y]/(y^2 - P) with D(t) = 1, or None if no such t exists."""
    F = pair.field
    inv = F(1) / F(pair.Dx) if not F(pair.Dx).is_zero() else None
    if inv is None:
        result = HyperSolution(None, {"reason": "D(x) = 0"})
        return result if with_certificate else None
    r1, r2 = _split(inv)
    part, rem = hermite_reduce(r1, x)
    cert = {"even_part": "rational" if rem == 0 else "logarithmic"}
    t = None
    if rem == 0:
        V, bounds = _solve_odd_part(r2, pair.P)
        cert.update(bounds)
        if V is not None:
            cand = F(part + V * y)
            if pair.derive(cand) == F(1):
                t = cand.as_expr()
    result = HyperSolution(t, cert)
    return result if with_certificate else t


# ---------------------------------------------------------------------------
# Infinitesimal automorphisms

def _monic_factor_choices(factors, bound):
    """Products of powers of the given (u, z)-polynomials with degrees <= bound."""
    u = sympy.Symbol("u")
    out = [sympy.Integer(1)]
    for f in factors:
        du = max(Poly(f, u, z).degree(u), 0)
        dz = max(Poly(f, u, z).degree(z), 0)
        nxt = []
        for base in out:
            bd = Poly(base, u, z)
            for e in range(bound + 1):
                if bd.degree(u) + e * du > bound or bd.degree(z) + e * dz > bound:
                    break
                nxt.append(sympy.expand(base * f**e))
        out = nxt
    return out


def infinitesimal_automorphisms(g, degree_bound):
    """Basis of the solutions h of h*g_u - g*h_u = h_z within the degree bound.

    h ranges over N/M where N has degree <= bound in u and in z and M runs
    through products of factors of den(g) and z-free factors of num(g).
    """
    u = sympy.Symbol("u")
    g = cancel(sympify(g))
    if g == 0:
        raise ValueError("g must be nonzero")
    gn, gd = fraction(g)
    factors = []
    for f, _ in sympy.factor_list(gd, u, z)[1]:
        if f.has(u) or f.has(z):
            factors.append(f)
    for f, _ in sympy.factor_list(gn, u, z)[1]:
        if f.has(u) and not f.has(z) and f not in factors:
            factors.append(f)
    gu = sympy.diff(g, u)
    B = degree_bound
    unknowns = [sympy.Symbol(f"n_{i}_{j}") for i in range(B + 1) for j in range(B + 1)]
    N = sum(c * u**i * z**j for c, (i, j) in zip(unknowns, itertools.product(range(B + 1), repeat=2)))
    found = []
    for M in _monic_factor_choices(factors, B):
        expr = (N * M * gu - g * (sympy.diff(N, u) * M - N * sympy.diff(M, u))
                - (sympy.diff(N, z) * M - N * sympy.diff(M, z)))
        numer = fraction(cancel(sympy.together(expr)))[0]
        if numer == 0:
            eqs = []
        else:
            eqs = Poly(sympy.expand(numer), u, z).coeffs()
        mat, _ = sympy.linear_eq_to_matrix(eqs, unknowns) if eqs else (sympy.zeros(0, len(unknowns)), None)
        null = mat.nullspace() if eqs else [sympy.eye(len(unknowns))[:, i] for i in range(len(unknowns))]
        for vec in null:
            h = cancel(sum(c * mon for c, mon in zip(vec, [u**i * z**j for i, j in itertools.product(range(B + 1), repeat=2)])) / M)
            if h != 0:
                found.append(h)
    return _span_basis(found, u)


def _span_basis(funcs, u):
    """A Q-basis of the span of rational functions in u and z."""
    if not funcs:
        return []
    den = sympy.lcm([fraction(f)[1] for f in funcs])
    polys = [Poly(cancel(f * den), u, z) for f in funcs]
    monoms = sorted({m for p in polys for m in p.monoms()})
    rows = sympy.Matrix([[p.coeff_monomial(m) for m in monoms] for p in polys])
    rref, pivots = rows.T.rref()
    return [cancel(funcs[i]) for i in pivots]


def in_span(h, basis, u=None):
    """True iff h is a Q-linear combination of ``basis``."""
    u = u or sympy.Symbol("u")
    if cancel(sympify(h)) == 0:
        return True
    return len(_span_basis(list(basis) + [h], u)) == len(_span_basis(list(basis), u))
