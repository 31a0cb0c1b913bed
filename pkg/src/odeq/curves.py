"""Genus, degree-2 normal forms y^2 = P(x), rational parametrizations and j.

The curve attached to f is the smooth projective model of f(S, T) = 0 over
the algebraic closure of Q(z).  Three routes compute its genus:

* f linear in S or T: the function field is Q(z)(u), genus 0;
* f quadratic in S or T: complete the square and read the genus off the
  squarefree part of the discriminant;
* otherwise Riemann-Hurwitz for the projection (S, T) -> T, with local
  ramification from Newton-Puiseux at every Q(z)-rational critical value.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import sympy
from sympy import Poly, cancel

from .equation import S, T, apply_derivation, induced_derivation, is_autonomous
from .errors import (GenusTooSmall, NoRationalPoint, NotHyperellipticSupported,
                     ReducibleEquation, UnsupportedBranchLocus, UnsupportedModel)
from .fieldtower import INF, QQz, check_degree, point_str, qz_coeffs, rational_function_roots, z
from .funcfield import FunctionField
from .local import ramification_indices

x, y, u = sympy.symbols("x y u")


@dataclass(frozen=True, eq=False)
class HyperModel:
    """y^2 = P(x) over Q(z) with P squarefree, plus the change of variables.

    ``x_of``/``y_of`` give x, y in terms of S, T, z and ``S_of``/``T_of``
    the inverse substitution.  ``Dx`` and ``Dy`` are the transported
    derivation, elements of Q(z)(x)[y]/(y^2 - P).  ``roots`` lists the
    branch points in P^1(Q(z)) when P splits, with INF when deg P is odd.
    """

    P: Poly
    genus: int
    roots: tuple | None
    x_of: object
    y_of: object
    S_of: object
    T_of: object
    square_factor: Poly
    eq: object = field(default=None, repr=False)
    autonomous: bool = False

    @cached_property
    def field(self):
        return FunctionField(y**2 - self.P.as_expr(), y, x)

    @cached_property
    def Dx(self):
        if self.eq is None:
            raise ValueError("model carries no equation")
        der = induced_derivation(self.eq)
        if self.x_of == T:
            value = self.eq.field.gen()
        else:
            value = der.s_prime
        return self.pull(value)

    @cached_property
    def Dy(self):
        der = induced_derivation(self.eq)
        return self.pull(apply_derivation(self.y_of, der))

    def pull(self, el):
        """Transport an element of the equation's function field to the model."""
        expr = el.as_expr() if hasattr(el, "as_expr") else el
        return self.field(expr.subs({S: self.S_of, T: self.T_of}, simultaneous=True))

    def push(self, el):
        """Transport an element of the model field back to Q(z)(T)[S]/(f)."""
        expr = el.as_expr() if hasattr(el, "as_expr") else el
        return self.eq.field(expr.subs({x: self.x_of, y: self.y_of}, simultaneous=True))

    @property
    def dz(self):
        return 0 if self.autonomous else 1

    def derive(self, el):
        return self.field.derive(self.field(el), self.Dy, self.Dx, dz=self.dz)

    def as_dict(self):
        return {
            "P": str(self.P.as_expr()),
            "genus": self.genus,
            "roots": None if self.roots is None else [point_str(r) for r in self.roots],
            "x": str(self.x_of),
            "y": str(self.y_of),
            "Dx": str(self.Dx.as_expr()) if self.eq is not None else None,
            "Dy": str(self.Dy.as_expr()) if self.eq is not None else None,
        }


@dataclass(frozen=True)
class Genus0Param:
    """Rational parametrization T = T_of(u), S = S_of(u) with u' = g(u, z)."""

    T_of: object
    S_of: object
    g: object

    def as_dict(self):
        return {"u": str(u), "T": str(self.T_of), "S": str(self.S_of), "g": str(self.g)}


@dataclass(frozen=True)
class GenusReport:
    genus: int
    method: str
    certificate: object

    def as_dict(self):
        cert = self.certificate.as_dict() if hasattr(self.certificate, "as_dict") else self.certificate
        return {"genus": self.genus, "method": self.method, "certificate": cert}


# ---------------------------------------------------------------------------
# Degree-2 presentations

def _quadratic_variable(eq):
    if eq.deg_S == 2:
        return S, T
    if eq.deg_T == 2:
        return T, S
    return None, None


def quadratic_model(eq):
    """Complete the square in the variable f is quadratic in (S preferred)."""
    q, b = _quadratic_variable(eq)
    if q is None:
        raise UnsupportedModel("f is not quadratic in S or T")
    fq = Poly(eq.f, q)
    A, B, C = [c.as_expr() for c in fq.all_coeffs()]
    disc = Poly(sympy.expand((B**2 - 4 * A * C).subs(b, x)), x, domain=QQz)
    check_degree(disc.degree(), "discriminant")
    c0, parts = disc.sqf_list()
    P0 = Poly(1, x, domain=QQz)
    Qsq = Poly(1, x, domain=QQz)
    for p, m in parts:
        if m % 2:
            P0 = P0 * p
        Qsq = Qsq * p ** (m // 2)
    if P0.degree() <= 0:
        raise ReducibleEquation("f splits over the algebraic closure (discriminant is a square)")
    P = P0 * Poly(QQz.to_sympy(c0) / 4, x, domain=QQz)
    d = P.degree()
    genus = (d + 1) // 2 - 1
    roots = rational_function_roots(P, x)
    if len(roots) == d:
        roots = tuple(roots) + ((INF,) if d % 2 else ())
    else:
        roots = None
    Qb = Qsq.as_expr().subs(x, b)
    y_of = cancel((2 * A * q + B) / (2 * Qb))
    q_of = cancel(((2 * Qsq.as_expr() * y - B.subs(b, x)) / (2 * A.subs(b, x))))
    if q == S:
        S_of, T_of = q_of, x
    else:
        S_of, T_of = x, q_of
    return HyperModel(P=P, genus=genus, roots=roots, x_of=b, y_of=y_of, S_of=S_of, T_of=T_of,
                      square_factor=Qsq, eq=eq, autonomous=is_autonomous(eq))


def hyperelliptic_model(eq):
    """y^2 = P(x) of degree 2g+1 or 2g+2 with the derivation transported."""
    if _quadratic_variable(eq)[0] is None:
        rep = genus(eq)
        if rep.genus < 2:
            raise GenusTooSmall(f"genus {rep.genus} < 2")
        raise NotHyperellipticSupported("genus >= 2 but f is not quadratic in S or T")
    model = quadratic_model(eq)
    if model.genus < 2:
        raise GenusTooSmall(f"genus {model.genus} < 2")
    return model


# ---------------------------------------------------------------------------
# Genus

def genus_riemann_hurwitz(eq):
    """Genus from Riemann-Hurwitz for (S, T) -> T."""
    F = eq.f
    n = eq.deg_S
    fS = Poly(F, S)
    lc = Poly(fS.LC(), T, domain=QQz)
    disc = Poly(sympy.discriminant(F, S), T, domain=QQz)
    if disc.is_zero:
        raise ReducibleEquation("f has a repeated factor in S")
    points = []
    simple_elsewhere = 0
    for p, m in disc.sqf_list()[1]:
        if p.degree() <= 0:
            continue
        rts = rational_function_roots(p, T)
        if len(rts) < p.degree():
            if m > 1:
                raise UnsupportedBranchLocus("multiple critical value outside Q(z)")
            rest = p
            for r in rts:
                rest = rest.exquo(Poly(T - QQz.to_sympy(r), T, domain=QQz))
            if rest.gcd(lc).degree() > 0:
                raise UnsupportedBranchLocus("branch at infinity over a non-rational point")
            simple_elsewhere += rest.degree()
        points.extend(rts)
    if lc.degree() > 0:
        lrts = rational_function_roots(lc, T)
        if len(lrts) < len(set(lrts)) or len(lrts) < lc.sqf_part().degree():
            raise UnsupportedBranchLocus("leading coefficient vanishes outside Q(z)")
        points.extend(lrts)
    points = list(dict.fromkeys(points)) + [INF]
    table = []
    total = simple_elsewhere
    for pt in points:
        idx = ramification_indices(F, pt, S, T)
        table.append({"point": point_str(pt), "indices": idx})
        total += sum(e - 1 for e in idx)
    two_g = total - 2 * n + 2
    if two_g < 0 or two_g % 2:
        raise ReducibleEquation("Riemann-Hurwitz count is inconsistent; f is reducible over the closure")
    return GenusReport(two_g // 2, "riemann-hurwitz",
                       {"degree": n, "branches": table, "simple_non_rational": simple_elsewhere})


def genus(eq):
    """Genus of the curve of f, with the method used and a certificate."""
    if eq.deg_S == 1 or eq.deg_T == 1:
        return GenusReport(0, "linear-in-variable", rational_parametrization(eq))
    if eq.deg_S == 2 or eq.deg_T == 2:
        model = quadratic_model(eq)
        return GenusReport(model.genus, "hyperelliptic-normal-form", model)
    return genus_riemann_hurwitz(eq)


# ---------------------------------------------------------------------------
# Genus 0

def _sqrt_in_qz(value):
    """A square root of a Q(z) element inside Q(z), or None."""
    X = sympy.Symbol("X")
    rts = rational_function_roots(Poly(X**2 - QQz.to_sympy(value), X, domain=QQz), X)
    return rts[-1] if rts else None


def rational_parametrization(eq):
    """Parametrize a genus-0 curve by u and return u' = g(u, z)."""
    if eq.deg_S == 1:
        a, b = Poly(eq.f, S).all_coeffs()
        T_of, S_of = u, cancel((-b / a).subs(T, u))
        return Genus0Param(T_of, S_of, S_of)
    if eq.deg_T == 1:
        c, d = Poly(eq.f, T).all_coeffs()
        T_of = cancel((-d / c).subs(S, u))
        g = cancel((u - sympy.diff(T_of, z)) / sympy.diff(T_of, u))
        return Genus0Param(T_of, u, g)
    model = quadratic_model(eq)
    if model.genus != 0:
        raise UnsupportedModel(f"curve has genus {model.genus}")
    coeffs = qz_coeffs(model.P)
    if model.P.degree() == 1:
        p0, p1 = map(QQz.to_sympy, coeffs)
        x_u, y_u, u_xy = (u**2 - p0) / p1, u, y
    else:
        p0, p1, p2 = map(QQz.to_sympy, coeffs)
        rts = [r for r in (model.roots or ()) if r is not INF] or rational_function_roots(model.P, x)
        if rts:
            r = QQz.to_sympy(rts[0])
            r2 = cancel(-p1 / p2 - r)
            x_u, y_u, u_xy = (u**2 * r - p2 * r2) / (u**2 - p2), None, y / (x - r)
            y_u = u * (x_u - r)
        else:
            sq = _sqrt_in_qz(QQz.from_sympy(p2))
            if sq is None:
                raise UnsupportedModel("conic without a Q(z)-rational point")
            s = QQz.to_sympy(sq)
            x_u = (p0 - u**2) / (2 * u * s - p1)
            y_u, u_xy = s * x_u + u, y - s * x
    x_u, y_u = cancel(x_u), cancel(y_u)
    Du = model.field.derive(model.field(u_xy), model.Dy, model.Dx, dz=1 - is_autonomous(eq))
    g = cancel(Du.as_expr().subs({x: x_u, y: y_u}, simultaneous=True))
    T_of = cancel(model.T_of.subs({x: x_u, y: y_u}, simultaneous=True))
    S_of = cancel(model.S_of.subs({x: x_u, y: y_u}, simultaneous=True))
    return Genus0Param(T_of, S_of, g)


# ---------------------------------------------------------------------------
# Genus 1

def _cubic_j(coeffs):
    """j-invariant of w^2 = c0 + c1 x + c2 x^2 + c3 x^3 (coefficients in Q(z))."""
    c0, c1, c2, c3 = coeffs
    b1, c1m, d1 = c2 / c3, c1 / c3, c0 / c3
    A = c1m - b1**2 / 3
    B = d1 - b1 * c1m / 3 + 2 * b1**3 / 27
    den = 4 * A**3 + 27 * B**2
    return 1728 * 4 * A**3 / den


def j_invariant(eq):
    """j-invariant of a genus-1 curve presented as w^2 = cubic or quartic."""
    if _quadratic_variable(eq)[0] is None:
        raise UnsupportedModel("j-invariant needs a presentation quadratic in S or T")
    model = quadratic_model(eq)
    if model.genus != 1:
        raise UnsupportedModel(f"curve has genus {model.genus}, not 1")
    coeffs = qz_coeffs(model.P)
    if model.P.degree() == 3:
        return _cubic_j(coeffs)
    finite = [r for r in (model.roots or rational_function_roots(model.P, x)) if r is not INF]
    if not finite:
        raise NoRationalPoint("quartic without a Q(z)-rational branch point")
    r = QQz.to_sympy(finite[0])
    Xv = sympy.Symbol("X")
    cubic = Poly(sympy.expand(cancel(model.P.as_expr().subs(x, r + 1 / Xv) * Xv**4)), Xv, domain=QQz)
    return _cubic_j(qz_coeffs(cubic))
