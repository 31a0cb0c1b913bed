"""Exact arithmetic kernel: Q, Q[x], Q(z) and the primitives built on them.

Elements of Q(z) are sympy ``FracElement`` values of the domain ``QQz``;
they are always stored in lowest terms, hash consistently and compare
exactly.  Polynomials are sympy ``Poly`` objects over ``QQ`` or ``QQz``.
Points of the projective line over Q(z) are ``QQz`` elements or ``INF``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import product

import sympy
from sympy import QQ, Poly, cancel, fraction, sympify

from .errors import ResourceLimit

z = sympy.Symbol("z")
QQz = QQ.frac_field(z)
_ZGEN = QQz.gens[0]
INF = sympy.oo


def max_degree():
    """Degree cap from ``ODEQ_MAX_DEGREE`` (None when unset)."""
    raw = os.environ.get("ODEQ_MAX_DEGREE")
    return int(raw) if raw else None


def check_degree(deg, what="polynomial"):
    cap = max_degree()
    if cap is not None and deg > cap:
        raise ResourceLimit(f"{what} degree {deg} exceeds ODEQ_MAX_DEGREE={cap}")


# ---------------------------------------------------------------------------
# Q(z)

def ratfunc(value):
    """Coerce an int, Rational, sympy expression or string to an element of Q(z)."""
    if isinstance(value, sympy.polys.fields.FracElement) and value.field == QQz.field:
        return value
    expr = sympify(value)
    if expr.free_symbols - {z}:
        raise ValueError(f"{expr} is not an element of Q(z)")
    return QQz.from_sympy(cancel(expr))


def to_expr(el):
    """Sympy expression ``num/den`` for an element of Q(z)."""
    if isinstance(el, sympy.Basic):
        return el
    return el.numer.as_expr() / el.denom.as_expr()


def num_den(el):
    """Numerator and monic denominator of ``el`` as Polys in z over QQ."""
    num = Poly(el.numer.as_expr(), z, domain=QQ)
    den = Poly(el.denom.as_expr(), z, domain=QQ)
    lc = den.LC()
    return num.quo_ground(lc), den.quo_ground(lc)


def dz(el):
    """Derivative d/dz of an element of Q(z)."""
    return el.diff(_ZGEN)


def is_constant(el):
    """True iff the element of Q(z) (or INF) does not depend on z."""
    if el is INF:
        return True
    return el.numer.degree() <= 0 and el.denom.degree() <= 0


def as_rational(el):
    """The sympy Rational equal to a constant element of Q(z)."""
    if not is_constant(el):
        raise ValueError(f"{to_expr(el)} depends on z")
    return sympy.Rational(to_expr(el))


def point_expr(p):
    return INF if p is INF else to_expr(p)


def point_str(p):
    return "oo" if p is INF else str(to_expr(p))


def parse_point(text):
    text = text.strip()
    if text in ("oo", "inf", "infinity", "∞"):
        return INF
    return ratfunc(text)


def coeff_domain(*exprs, exclude=()):
    """QQ when the expressions only involve ``exclude``, else QQ(other symbols)."""
    syms = set()
    for e in exprs:
        syms |= sympify(e).free_symbols
    others = sorted(syms - set(exclude), key=str)
    return QQ.frac_field(*others) if others else QQ


def qz_coeffs(poly):
    """Coefficients of a Poly over Q(z), lowest degree first, as Q(z) elements."""
    return [QQz.from_sympy(c) for c in poly.all_coeffs()[::-1]]


def poly_over_qz(expr, var):
    """Poly in ``var`` with coefficients in Q(z); ``expr`` must be polynomial in var."""
    if isinstance(expr, Poly):
        return expr.set_domain(QQz) if expr.gens == (var,) else Poly(expr.as_expr(), var, domain=QQz)
    return Poly(cancel(sympify(expr)), var, domain=QQz)


# ---------------------------------------------------------------------------
# Univariate primitives

@dataclass(frozen=True)
class Factorization:
    """``unit * prod(f**m for f, m in factors)`` with monic irreducible factors."""

    unit: object
    factors: tuple

    def expand(self):
        out = Poly(self.unit, *self.factors[0][0].gens, domain=self.factors[0][0].domain) if self.factors else None
        if out is None:
            return self.unit
        for f, m in self.factors:
            out = out * f**m
        return out


def _as_poly(a, var=None, domain=QQ):
    if isinstance(a, Poly):
        return a
    a = sympify(a)
    if var is None:
        syms = sorted(a.free_symbols, key=str)
        var = syms[0] if syms else z
    return Poly(a, var, domain=domain)


def gcd_poly(a, b, var=None):
    """Monic gcd of two univariate polynomials; gcd(0, 0) = 0."""
    if not isinstance(a, Poly) and isinstance(b, Poly):
        var = var or b.gen
    if not isinstance(b, Poly) and isinstance(a, Poly):
        var = var or a.gen
    pa = _as_poly(a, var, coeff_domain(a, b, exclude=[var]) if var is not None else QQ)
    pb = _as_poly(b, pa.gen, pa.domain)
    g = pa.gcd(pb)
    return g if g.is_zero else g.monic()


def resultant(a, b, var):
    """Res_var(a, b) as det of the Sylvester matrix with a's rows on top.

    Coefficients may lie in Q(z); the result is an element of Q(z).
    """
    pa = poly_over_qz(a, var)
    pb = poly_over_qz(b, var)
    if pa.degree() <= 0 and pb.degree() <= 0:
        raise ValueError("resultant needs a non-constant polynomial")
    return QQz.convert(pa.resultant(pb))


def factor_univariate_rationals(p, var=None):
    """Complete factorization of a nonzero polynomial over Q."""
    poly = _as_poly(p, var)
    if poly.is_zero:
        raise ValueError("cannot factor the zero polynomial")
    poly = poly.set_domain(QQ)
    unit, facs = poly.factor_list()
    out = []
    for f, m in facs:
        lc = f.LC()
        unit *= lc**m
        out.append((f.monic(), m))
    out.sort(key=lambda fm: (fm[0].degree(), [str(c) for c in fm[0].all_coeffs()]))
    return Factorization(unit=unit, factors=tuple(out))


def _monic_divisors(p):
    """All monic divisors over Q of a nonzero Poly in z."""
    fac = factor_univariate_rationals(p, z)
    divisors = []
    for exps in product(*[range(m + 1) for _, m in fac.factors]):
        d = Poly(1, z, domain=QQ)
        for (f, _), e in zip(fac.factors, exps):
            d = d * f**e
        divisors.append(d)
    return divisors


def _rational_roots(p):
    """Rational roots of a nonzero Poly over Q."""
    if p.degree() <= 0:
        return []
    fac = factor_univariate_rationals(p)
    return [-f.TC() for f, _ in fac.factors if f.degree() == 1]


def ratfunc_sort_key(el):
    return (el.numer.degree(), el.denom.degree(),
            [float(c) for c in Poly(el.numer.as_expr(), z).all_coeffs()],
            [float(c) for c in Poly(el.denom.as_expr(), z).all_coeffs()])


def rational_function_roots(P, var):
    """All roots of P(var) lying in Q(z), each listed once.

    Denominators are cleared so P lies in Q[z][var]; a root c*p/q with p, q
    monic and coprime has p dividing the trailing and q the leading
    coefficient, and the scalar c is fixed by a univariate condition over Q.
    """
    poly = poly_over_qz(P, var)
    if poly.is_zero:
        raise ValueError("P must be nonzero")
    coeffs = qz_coeffs(poly)
    den_lcm = Poly(1, z, domain=QQ)
    for c in coeffs:
        den_lcm = den_lcm.lcm(num_den(c)[1]) if not c == 0 else den_lcm
    zcoeffs = []
    for c in coeffs:
        n, d = num_den(c)
        zcoeffs.append(n * den_lcm.quo(d) if not c == 0 else Poly(0, z, domain=QQ))

    roots = []
    k = 0
    while zcoeffs[k].is_zero:
        k += 1
    if k:
        roots.append(QQz.zero)
    zcoeffs = zcoeffs[k:]
    n = len(zcoeffs) - 1
    if n == 0:
        return roots
    check_degree(max(c.degree() for c in zcoeffs), "root-search coefficient")

    c = sympy.Dummy("c")
    seen = set(roots)
    for p in _monic_divisors(zcoeffs[0]):
        for q in _monic_divisors(zcoeffs[-1]):
            if p.gcd(q).degree() > 0:
                continue
            pc = Poly(p.as_expr(), c, z, domain=QQ)
            qc = Poly(q.as_expr(), c, z, domain=QQ)
            cc = Poly(c, c, z, domain=QQ)
            total = Poly(0, c, z, domain=QQ)
            for i, a in enumerate(zcoeffs):
                if a.is_zero:
                    continue
                total += Poly(a.as_expr(), c, z, domain=QQ) * (cc * pc) ** i * qc ** (n - i)
            cond = None
            for zc in Poly(total.as_expr(), z).all_coeffs():
                pz = Poly(zc, c, domain=QQ)
                cond = pz if cond is None else cond.gcd(pz)
            if cond is None or cond.is_zero:
                continue
            for r in _rational_roots(cond):
                if r == 0:
                    continue
                root = QQz.from_sympy(cancel(r * p.as_expr() / q.as_expr()))
                if root not in seen:
                    seen.add(root)
                    roots.append(root)
    roots.sort(key=ratfunc_sort_key)
    return roots


# ---------------------------------------------------------------------------
# Integration of rational functions

def hermite_reduce(r, var):
    """Split r into d/dvar(rational part) + remainder.

    The remainder has a squarefree denominator and is proper.  Coefficients
    may involve other symbols, which are treated as constants.
    Returns sympy expressions ``(rational_part, remainder)``.
    """
    r = cancel(sympify(r))
    num, den = fraction(r)
    dom = coeff_domain(num, den, exclude=[var])
    A = Poly(num, var, domain=dom)
    D = Poly(den, var, domain=dom)
    if D.is_zero:
        raise ZeroDivisionError("denominator is zero")
    lc = D.LC()
    A, D = A.quo_ground(lc), D.monic()
    Q, A = A.div(D)
    g = Q.integrate().as_expr()

    _, sqf = D.sqf_list()
    for V, i in sorted(sqf, key=lambda t: t[1]):
        if i < 2 or V.degree() <= 0:
            continue
        U = D.exquo(V**i)
        dV = V.diff()
        s, _, h = (U * dV).gcdex(V)
        for j in range(i - 1, 0, -1):
            rhs = A.quo_ground(-j)
            B = (s.quo_ground(h.LC()) * rhs).rem(V)
            C = (rhs - B * U * dV).exquo(V)
            g += B.as_expr() / V.as_expr() ** j
            A = -j * C - U * B.diff()
        D = U * V
    Q, A = A.div(D)
    g += Q.integrate().as_expr()
    return cancel(g), cancel(A.as_expr() / D.as_expr())


def rothstein_trager(remainder, var):
    """Res_var(D, A - c*D') as a Poly in a fresh symbol c; its roots are the residues."""
    num, den = fraction(cancel(sympify(remainder)))
    dom = coeff_domain(num, den, exclude=[var])
    c = sympy.Dummy("c")
    A = Poly(num, var, domain=dom)
    D = Poly(den, var, domain=dom)
    if D.degree() <= 0:
        return Poly(1, c, domain=dom)
    Ac = Poly(A.as_expr() - c * D.diff().as_expr(), var, domain=dom[c])
    Dc = Poly(D.as_expr(), var, domain=Ac.domain)
    res = Dc.resultant(Ac)
    return Poly(sympify(res.as_expr() if isinstance(res, Poly) else Ac.domain.to_sympy(res)), c, domain=dom)


def residues_all_zero(remainder, var):
    """True iff the Hermite remainder has a rational antiderivative."""
    rt = rothstein_trager(remainder, var)
    if rt.is_zero:
        return False
    return len(rt.terms()) == 1 and (rt.degree() == 0 or rt.TC() == 0)
