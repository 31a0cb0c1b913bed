"""Algebraic function fields Q(z)(u)[w]/(F(w, u)) with exact arithmetic.

Elements are kept as polynomials in ``w`` of degree < deg_w F whose
coefficients lie in Q(z, u); this normal form is unique, so equality is a
structural comparison.  Derivations are applied coefficient-wise with the
Leibniz rule and reduced modulo F.
"""

from __future__ import annotations

from sympy import QQ, Poly, cancel, fraction, sympify
from sympy.polys.polyerrors import NotInvertible

from .errors import NonInvertibleDenominator
from .fieldtower import z


class FunctionField:
    """The field Q(z)(u)[w]/(F) for F irreducible and of positive degree in w."""

    def __init__(self, F, w, u):
        self.w = w
        self.u = u
        self.domain = QQ.frac_field(z, u)
        self._zgen, self._ugen = self.domain.gens
        self.modulus = Poly(sympify(F), w, domain=self.domain)
        if self.modulus.degree() < 1:
            raise ValueError("defining polynomial must involve the algebraic variable")
        self.degree = self.modulus.degree()

    def __repr__(self):
        return f"FunctionField({self.modulus.as_expr()}, {self.w}, {self.u})"

    def __eq__(self, other):
        return (isinstance(other, FunctionField) and self.w == other.w and self.u == other.u
                and self.modulus == other.modulus)

    def __hash__(self):
        return hash((self.w, self.u, self.modulus))

    def _wrap(self, poly):
        return FFElement(self, poly.rem(self.modulus))

    def zero(self):
        return FFElement(self, Poly(0, self.w, domain=self.domain))

    def one(self):
        return self(1)

    def gen(self):
        return self(self.w)

    def base(self):
        return self(self.u)

    def __call__(self, expr):
        """Element from a sympy expression rational in w, u and z."""
        if isinstance(expr, FFElement):
            if expr.field == self:
                return expr
            expr = expr.as_expr()
        num, den = fraction(cancel(sympify(expr)))
        pn = Poly(num, self.w, domain=self.domain)
        pd = Poly(den, self.w, domain=self.domain)
        return self._wrap(pn) * self._wrap(pd).inverse()

    def from_coeffs(self, coeffs):
        """Element sum(c_i * w**i) for domain elements c_i (lowest first)."""
        poly = Poly.from_list(list(reversed(coeffs)) or [0], self.w, domain=self.domain)
        return self._wrap(poly)

    def derive(self, el, dw, du, dz=1):
        """Apply the derivation with D(w)=dw, D(u)=du, D(z)=dz to ``el``."""
        dw, du = self(dw), self(du)
        coeffs = el.coeffs()
        result = self.zero()
        for i, c in enumerate(coeffs):
            part = self.from_coeffs([c.diff(self._ugen)]) * du
            if dz:
                part = part + self.from_coeffs([c.diff(self._zgen) * dz])
            result = result + part * self.gen() ** i
            if i:
                result = result + self.from_coeffs([c * i]) * self.gen() ** (i - 1) * dw
        return result


class FFElement:
    """Immutable element of a :class:`FunctionField`."""

    __slots__ = ("field", "poly")

    def __init__(self, field, poly):
        self.field = field
        self.poly = poly

    def coeffs(self):
        """Coefficients in Q(z, u), lowest power of w first."""
        if self.poly.is_zero:
            return []
        return [self.field.domain.from_sympy(c) for c in self.poly.all_coeffs()[::-1]]

    def as_expr(self):
        return self.poly.as_expr()

    def is_zero(self):
        return self.poly.is_zero

    def _coerce(self, other):
        if isinstance(other, FFElement):
            return other
        return self.field(other)

    def __add__(self, other):
        other = self._coerce(other)
        return FFElement(self.field, self.poly + other.poly)

    __radd__ = __add__

    def __neg__(self):
        return FFElement(self.field, -self.poly)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        return self.field._wrap(self.poly * other.poly)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.field.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def inverse(self):
        if self.poly.is_zero:
            raise NonInvertibleDenominator("division by zero in the function field")
        if self.poly.degree() == 0:
            c = self.poly.LC()
            return FFElement(self.field, Poly(self.field.domain.one / self.field.domain.convert(c),
                                              self.field.w, domain=self.field.domain))
        try:
            inv = self.poly.invert(self.field.modulus)
        except NotInvertible as exc:
            raise NonInvertibleDenominator(str(exc)) from None
        return self.field._wrap(inv)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __eq__(self, other):
        if not isinstance(other, FFElement):
            other = self.field(other)
        return self.field == other.field and (self.poly - other.poly).is_zero

    def __hash__(self):
        return hash(self.poly)

    def __repr__(self):
        return f"FFElement({self.as_expr()})"

    def depends_on_z(self):
        return any(c.diff(self.field._zgen) != 0 for c in self.coeffs())
