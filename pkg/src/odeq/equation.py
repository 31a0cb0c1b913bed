"""First-order algebraic ODEs f(y', y, z) = 0 over Q(z).

``S`` stands for y' and ``T`` for y.  A :class:`DiffEq` holds f in a
canonical form: a primitive polynomial in Z[z][S, T] whose leading
coefficient in lex order (S > T > z) is positive.  Parsing validates the
standing assumptions: both variables present, squarefree, irreducible
over Q(z) and no specialization pattern suggesting reducibility over the
algebraic closure.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property

import sympy
from sympy import QQ, ZZ, Poly, cancel, fraction, sympify

from .errors import (DegenerateEquation, EquationSyntaxError, NotSquarefree,
                     ProbablyReducible, ReducibleEquation)
from .fieldtower import check_degree, z
from .funcfield import FunctionField

S, T = sympy.symbols("S T")


# ---------------------------------------------------------------------------
# Parsing

_SYMBOLS = {"S": S, "T": T, "z": z, "y'": S, "y′": S, "y": T}


def _tokenize(text):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("int", int(text[i:j]), i))
            i = j
        elif ch == "y" and i + 1 < n and text[i + 1] in "'′":
            tokens.append(("sym", S, i))
            i += 2
        elif ch in "STzy":
            tokens.append(("sym", _SYMBOLS[ch], i))
            i += 1
        elif ch in "+-*/^()":
            tokens.append((ch, ch, i))
            i += 1
        else:
            raise EquationSyntaxError(f"unexpected character {ch!r}", text, i)
    tokens.append(("end", None, n))
    return tokens


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def take(self, kind=None):
        tok = self.tokens[self.pos]
        if kind is not None and tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            raise EquationSyntaxError(f"expected {kind!r}, found {what}", self.text, tok[2])
        self.pos += 1
        return tok

    def parse(self):
        if self.peek()[0] == "end":
            raise EquationSyntaxError("empty equation", self.text, 0)
        value = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise EquationSyntaxError(f"unexpected {tok[1]!r}", self.text, tok[2])
        return value

    def expr(self):
        sign = 1
        if self.peek()[0] in "+-" and self.peek()[0] != "end":
            sign = -1 if self.take()[0] == "-" else 1
        value = sign * self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.factor()
        while self.peek()[0] == "*":
            self.take()
            value = value * self.factor()
        return value

    def factor(self):
        base = self.base()
        if self.peek()[0] == "^":
            self.take()
            exp = self.take("int")[1]
            return base**exp
        return base

    def base(self):
        tok = self.peek()
        if tok[0] == "sym":
            self.take()
            return tok[1]
        if tok[0] == "int":
            self.take()
            if self.peek()[0] == "/":
                self.take()
                den_tok = self.take("int")
                if den_tok[1] == 0:
                    raise EquationSyntaxError("zero denominator", self.text, den_tok[2])
                return sympy.Rational(tok[1], den_tok[1])
            return sympy.Integer(tok[1])
        if tok[0] == "(":
            self.take()
            value = self.expr()
            self.take(")")
            return value
        what = "end of input" if tok[0] == "end" else repr(tok[1])
        raise EquationSyntaxError(f"unexpected {what}", self.text, tok[2])


def strip_comments(text):
    """Drop '#' comments and join the remaining lines of an equation file."""
    lines = [line.split("#", 1)[0] for line in text.splitlines()]
    return " ".join(line.strip() for line in lines if line.strip())


# ---------------------------------------------------------------------------
# Canonical form and validation

def canonical_poly(expr):
    """Primitive Z[z][S, T] representative of f with positive lex-leading coefficient."""
    num, den = fraction(cancel(sympify(expr)))
    if den.free_symbols & {S, T}:
        raise ValueError("equation must be polynomial in S and T")
    if num == 0:
        raise DegenerateEquation("no S")
    P = Poly(num, S, T, domain=QQ[z])
    P = P.quo_ground(P.content())
    P = Poly(P.as_expr(), S, T, z, domain=QQ)
    _, P = P.clear_denoms(convert=True)
    P = P.set_domain(ZZ).primitive()[1]
    if P.LC() < 0:
        P = -P
    return P


def format_poly(P):
    """Render a Poly in S, T, z in the input grammar."""
    names = [str(g) for g in P.gens]
    parts = []
    for monom, coeff in P.terms():
        factors = []
        for name, e in zip(names, monom):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        mag = abs(coeff)
        if mag != 1 or not factors:
            factors.insert(0, str(sympy.Rational(mag)))
        body = "*".join(factors)
        if not parts:
            parts.append(("-" if coeff < 0 else "") + body)
        else:
            parts.append(("- " if coeff < 0 else "+ ") + body)
    return " ".join(parts) if parts else "0"


def _specialization_pattern(P, z0):
    sp = Poly(P.as_expr().subs(z, z0), S, T, domain=QQ)
    if sp.degree(S) != P.degree(S) or sp.degree(T) != P.degree(T):
        return None
    _, facs = sp.factor_list()
    return tuple(sorted((f.degree(S), f.degree(T), m) for f, m in facs))


def validate(P):
    """Raise unless P satisfies the standing assumptions on f."""
    if P.degree(S) < 1:
        raise DegenerateEquation("no S")
    if P.degree(T) < 1:
        raise DegenerateEquation("no T")
    check_degree(max(P.degree(S), P.degree(T), P.degree(z)), "equation")
    _, facs = P.factor_list()
    facs = [(f, m) for f, m in facs if f.degree(S) > 0 or f.degree(T) > 0]
    if any(m > 1 for _, m in facs):
        raise NotSquarefree("f has a repeated factor")
    if len(facs) > 1:
        for f, _ in facs:
            if f.degree(S) == 0 or f.degree(T) == 0:
                raise ReducibleEquation(f"f has a factor in one variable only: {f.as_expr()}")
        raise ReducibleEquation("f factors over Q(z)")
    if P.degree(z) > 0:
        rng = random.Random(format_poly(P))
        patterns = []
        for z0 in rng.sample(range(-60, 61), 20):
            pat = _specialization_pattern(P, z0)
            if pat is not None:
                patterns.append(pat)
            if len(patterns) == 3:
                break
        if len(patterns) == 3 and all(len(p) > 1 for p in patterns) and len(set(patterns)) == 1:
            raise ProbablyReducible("three specializations z = z0 factor the same way")


# ---------------------------------------------------------------------------
# Equations and derivations

@dataclass(frozen=True)
class DiffEq:
    """A validated equation f(S, T, z) = 0; construct with :func:`make_equation`."""

    poly: Poly

    @property
    def f(self):
        return self.poly.as_expr()

    @property
    def deg_S(self):
        return self.poly.degree(S)

    @property
    def deg_T(self):
        return self.poly.degree(T)

    @property
    def separant(self):
        return self.poly.diff(S)

    def text(self):
        return format_poly(self.poly)

    def __str__(self):
        return self.text()

    @cached_property
    def field(self):
        """Function field Q(z)(T)[S]/(f)."""
        return FunctionField(self.f, S, T)


def make_equation(expr, check=True):
    """Canonicalize and validate a sympy expression in S, T, z."""
    P = canonical_poly(expr)
    if check:
        validate(P)
    return DiffEq(P)


def parse_equation(text):
    """Parse an equation in the odeq grammar and validate it.

    >>> parse_equation("S - T^3 - z").text()
    'S - T^3 - z'
    """
    expr = _Parser(text).parse()
    if not sympify(expr).has(S):
        raise DegenerateEquation("no S")
    if not sympify(expr).has(T):
        raise DegenerateEquation("no T")
    return make_equation(expr)


def is_autonomous(eq):
    """True iff no coefficient of the canonical f depends on z."""
    return eq.poly.degree(z) <= 0


@dataclass(frozen=True)
class Derivation:
    """t' = s and s' = num/den on Q(z)(t)[s]/(f); ``s_prime`` is the reduced value."""

    eq: DiffEq
    num: Poly
    den: Poly

    @cached_property
    def s_prime(self):
        F = self.eq.field
        return F(self.num.as_expr()) / F(self.den.as_expr())

    @property
    def dz(self):
        return 0 if is_autonomous(self.eq) else 1


def induced_derivation(eq):
    P = eq.poly
    num = -(Poly(S, S, T, z) * P.diff(T) + P.diff(z))
    return Derivation(eq, num, P.diff(S))


def apply_derivation(expr, der):
    """D(expr) in Q(z)(t)[s]/(f), using t' = s, z' = 1 and the rule for s'."""
    if isinstance(der, DiffEq):
        der = induced_derivation(der)
    F = der.eq.field
    el = F(expr)
    return F.derive(el, der.s_prime, F.gen(), dz=1)
