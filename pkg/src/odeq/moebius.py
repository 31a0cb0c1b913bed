"""Möbius transformations of P^1 over Q(z) and the cross-ratio."""

from __future__ import annotations

from dataclasses import dataclass

import sympy
from sympy import Poly

from .errors import DegenerateTuple
from .fieldtower import INF, QQz, is_constant, point_str, ratfunc, to_expr, z


def _pt(p):
    return INF if p is INF or p == sympy.oo else ratfunc(p)


@dataclass(frozen=True)
class Moebius:
    """x -> (a*x + b)/(c*x + d) with entries in Q(z), first nonzero entry 1."""

    a: object
    b: object
    c: object
    d: object

    @classmethod
    def make(cls, a, b, c, d):
        a, b, c, d = (ratfunc(e) for e in (a, b, c, d))
        if a * d - b * c == 0:
            raise ValueError("singular Möbius matrix")
        lead = next(e for e in (a, b, c, d) if e != 0)
        return cls(a / lead, b / lead, c / lead, d / lead)

    @classmethod
    def identity(cls):
        return cls.make(1, 0, 0, 1)

    @classmethod
    def normalizer(cls, p, q, r):
        """The map sending p, q, r to 0, 1, INF."""
        p, q, r = _pt(p), _pt(q), _pt(r)
        if p == q or q == r or p == r:
            raise DegenerateTuple("points must be pairwise distinct")
        if p is INF:
            return cls.make(0, q - r, 1, -r)
        if q is INF:
            return cls.make(1, -p, 1, -r)
        if r is INF:
            return cls.make(1, -p, 0, q - p)
        return cls.make(q - r, -p * (q - r), q - p, -r * (q - p))

    @classmethod
    def from_points(cls, src, dst):
        """The unique map sending the triple ``src`` to the triple ``dst``."""
        return cls.normalizer(*dst).inverse() @ cls.normalizer(*src)

    def matrix(self):
        return ((self.a, self.b), (self.c, self.d))

    def det(self):
        return self.a * self.d - self.b * self.c

    def __matmul__(self, other):
        """Composition: (self @ other)(x) = self(other(x))."""
        a, b, c, d = self.a, self.b, self.c, self.d
        e, f, g, h = other.a, other.b, other.c, other.d
        return Moebius.make(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def inverse(self):
        return Moebius.make(self.d, -self.b, -self.c, self.a)

    def __call__(self, p):
        p = _pt(p)
        if p is INF:
            return INF if self.c == 0 else self.a / self.c
        den = self.c * p + self.d
        if den == 0:
            return INF
        return (self.a * p + self.b) / den

    def is_constant(self):
        return all(is_constant(e) for e in (self.a, self.b, self.c, self.d))

    def is_identity(self):
        return self.b == 0 and self.c == 0 and self.a == self.d

    def as_expr(self, var):
        a, b, c, d = (to_expr(e) for e in (self.a, self.b, self.c, self.d))
        return (a * var + b) / (c * var + d)

    def entries(self):
        return tuple(to_expr(e) for e in (self.a, self.b, self.c, self.d))

    def polynomial_entries(self):
        """Entries scaled to coprime polynomials in Z[z] (positive leading sign)."""
        exprs = [to_expr(e) for e in (self.a, self.b, self.c, self.d)]
        den = sympy.lcm([sympy.fraction(sympy.cancel(e))[1] for e in exprs])
        polys = [Poly(sympy.cancel(e * den), z, domain="QQ") for e in exprs]
        g = Poly(0, z, domain="QQ")
        for p in polys:
            g = g.gcd(p)
        polys = [p.exquo(g) for p in polys]
        coeffs = [c for p in polys for c in p.coeffs()]
        scale = sympy.ilcm(*[sympy.Rational(c).q for c in coeffs], 1)
        content = sympy.igcd(*[int(c * scale) for c in coeffs], 0)
        out = [QQz.from_sympy(sympy.expand(p.as_expr() * scale / content)) for p in polys]
        lead = next(p for p in polys if not p.is_zero)
        if lead.LC() < 0:
            out = [-e for e in out]
        return tuple(out)

    def as_dict(self):
        return {k: str(to_expr(v)) for k, v in zip("abcd", (self.a, self.b, self.c, self.d))}

    @classmethod
    def from_dict(cls, data):
        return cls.make(*(sympy.sympify(data[k], locals={"z": z}) for k in "abcd"))

    def __str__(self):
        return f"x -> {sympy.sstr(self.as_expr(sympy.Symbol('x')))}"


def cross_ratio(p, q, r, s):
    """Image of s under the map sending (p, q, r) to (0, 1, INF)."""
    return Moebius.normalizer(p, q, r)(s)


def points_str(points):
    return [point_str(p) for p in points]
