"""Semi-autonomy and strict equivalence for hyperelliptic equations.

Everything is driven by the branch points R of y^2 = P(x).  An equation is
semi-autonomous when some Möbius map sends R into the constants, and two
equations are strictly equivalent when a Möbius map between their branch
sets lifts to a field isomorphism that carries one derivation to the other.
Genus 1 only gets the j-invariant as a necessary condition.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import sympy
from sympy import Poly, cancel

from .curves import HyperModel, _sqrt_in_qz, hyperelliptic_model, j_invariant, x
from .errors import DegenerateTuple
from .fieldtower import is_constant, point_str, ratfunc, to_expr, z
from .moebius import Moebius, _pt, cross_ratio
from .verdicts import EquivVerdict

__all__ = [
    "RootSet", "FieldIso", "cross_ratio", "semi_autonomous_test", "transporter",
    "lift_to_field_iso", "transport_residuals", "strict_equiv_hyper",
    "normalized_derivation", "autonomous_test_hyper", "EllipticCheck",
    "elliptic_necessary", "elliptic_semi_autonomous_necessary",
]


@dataclass(frozen=True)
class RootSet:
    """Pairwise distinct points of P^1(Q(z)), kept in the given order."""

    points: tuple

    def __post_init__(self):
        pts = tuple(_pt(p) for p in self.points)
        if len(set(pts)) != len(pts):
            raise DegenerateTuple("root set has repeated points")
        object.__setattr__(self, "points", pts)

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def as_list(self):
        return [point_str(p) for p in self.points]


def _points(R):
    return R.points if isinstance(R, RootSet) else RootSet(tuple(R)).points


# ---------------------------------------------------------------------------
# Semi-autonomy

def semi_autonomous_test(R):
    """The normalizer of the first three points if it sends all of R into Q, else None."""
    pts = _points(R)
    if len(pts) < 3:
        return Moebius.identity()
    N = Moebius.normalizer(*pts[:3])
    if all(is_constant(N(p)) for p in pts[3:]):
        return N
    return None


# ---------------------------------------------------------------------------
# Transporter

class Transporter(list):
    """List of Möbius maps with a flag telling whether the search was capped."""

    truncated = False


def transporter(R1, R2, max_candidates=None):
    """All Möbius maps A with A(R1) = R2 (entries in Q(z)).

    The first three points of R1 are sent to every ordered triple of R2;
    candidates are kept when they carry R1 onto R2 as sets.
    """
    R1, R2 = _points(R1), _points(R2)
    if len(R1) != len(R2):
        return Transporter()
    if len(R1) < 3:
        raise DegenerateTuple("transporter needs at least three points")
    target = set(R2)
    out = Transporter()
    tried = 0
    for dst in itertools.permutations(R2, 3):
        if max_candidates is not None and tried >= max_candidates:
            out.truncated = True
            break
        tried += 1
        A = Moebius.from_points(R1[:3], dst)
        if {A(p) for p in R1} == target and A not in out:
            out.append(A)
    return out


# ---------------------------------------------------------------------------
# Lifting to the function fields

@dataclass(frozen=True)
class FieldIso:
    """x1 = A(x2), y1 = sign * lam * y2 / (c*x2 + d)^(g+1), with lam^2 = lam2.

    (a, b, c, d) are the coprime polynomial entries of A.  ``lam`` is set
    when lam2 is a square in Q(z); otherwise lam lives in a quadratic
    extension and only lam2 is ever used.
    """

    moebius: Moebius
    lam2: object
    lam: object
    sign: int
    genus: int

    @property
    def lam_in_base(self):
        return self.lam is not None

    def negated(self):
        return FieldIso(self.moebius, self.lam2, self.lam, -self.sign, self.genus)

    def as_dict(self):
        return {
            "moebius": self.moebius.as_dict(),
            "lambda_squared": str(to_expr(self.lam2)),
            "lambda": None if self.lam is None else str(to_expr(self.lam)),
            "sign": self.sign,
            "genus": self.genus,
        }

    @classmethod
    def from_dict(cls, data):
        lam = data.get("lambda")
        return cls(Moebius.from_dict(data["moebius"]), ratfunc(data["lambda_squared"]),
                   None if lam is None else ratfunc(lam), int(data["sign"]), int(data["genus"]))


def _homogenized_pullback(P, A, g):
    """P(A(x)) * (c*x + d)^(2g+2) for the polynomial entries of A."""
    a, b, c, d = (to_expr(e) for e in A.polynomial_entries())
    expr = P.as_expr().subs(x, (a * x + b) / (c * x + d)) * (c * x + d) ** (2 * g + 2)
    return cancel(expr), (a, b, c, d)


def lift_to_field_iso(A, M1, M2):
    """The two lifts (+lam, -lam) of x1 = A(x2) to the function fields, or None.

    A must send the branch points of M2 onto those of M1.
    """
    g = M1.genus
    pulled, _ = _homogenized_pullback(M1.P, A, g)
    lam2 = cancel(pulled / M2.P.as_expr())
    if lam2.has(x) or lam2 == 0:
        return None
    lam2 = ratfunc(lam2)
    lam = _sqrt_in_qz(lam2)
    iso = FieldIso(A, lam2, lam, 1, g)
    return iso, iso.negated()


def _components(model):
    """D(x) = alpha(x) + beta(x)*y for a hyperelliptic model."""
    dom = model.field.domain
    cs = model.Dx.coeffs() + [dom.zero, dom.zero]
    return cancel(dom.to_sympy(cs[0])), cancel(dom.to_sympy(cs[1]))


def transport_residuals(iso, M1, M2):
    """Residuals of D2 = iso^-1 D1 iso on x; both are 0 iff the derivations match.

    With x1 = A(x2): the even part requires alpha1(A) = A_z + A' alpha2, the
    odd part lam*beta1(A) = A'*beta2*(c x + d)^(g+1) (squared when lam is
    not in Q(z)).
    """
    A = iso.moebius
    a, b, c, d = (to_expr(e) for e in A.polynomial_entries())
    Ax = (a * x + b) / (c * x + d)
    alpha1, beta1 = _components(M1)
    alpha2, beta2 = _components(M2)
    dA = sympy.diff(Ax, x)
    even = cancel(alpha1.subs(x, Ax) - sympy.diff(Ax, z) - dA * alpha2)
    weight = (c * x + d) ** (iso.genus + 1)
    if iso.lam is not None:
        lam = iso.sign * to_expr(iso.lam)
        odd = cancel(lam * beta1.subs(x, Ax) - dA * beta2 * weight)
    else:
        odd = cancel(to_expr(iso.lam2) * beta1.subs(x, Ax) ** 2 - (dA * beta2 * weight) ** 2)
    return even, odd


def _models(e1, e2):
    M1 = e1 if isinstance(e1, HyperModel) else hyperelliptic_model(e1)
    M2 = e2 if isinstance(e2, HyperModel) else hyperelliptic_model(e2)
    return M1, M2


def strict_equiv_hyper(e1, e2, max_candidates=None):
    """Decide strict equivalence of two genus >= 2 hyperelliptic equations."""
    M1, M2 = _models(e1, e2)
    if M1.genus != M2.genus:
        return EquivVerdict.no(f"genera differ ({M1.genus} vs {M2.genus})")
    if M1.roots is None or M2.roots is None:
        return EquivVerdict.unsupported("branch points do not split over Q(z)")
    maps = transporter(M2.roots, M1.roots, max_candidates=max_candidates)
    if not maps:
        if maps.truncated:
            return EquivVerdict.not_found("candidate cap reached", truncated=True)
        return EquivVerdict.no("no Möbius map carries one branch set onto the other")
    for A in maps:
        lifts = lift_to_field_iso(A, M1, M2)
        if lifts is None:
            continue
        for iso in lifts:
            if transport_residuals(iso, M1, M2) == (0, 0):
                return EquivVerdict.yes(iso, "derivations agree under the lifted map",
                                        candidates=len(maps), truncated=maps.truncated)
    if maps.truncated:
        return EquivVerdict.not_found("candidate cap reached", truncated=True)
    return EquivVerdict.no("no lift of a branch-set transporter carries D1 to D2",
                           candidates=len(maps))


# ---------------------------------------------------------------------------
# Autonomy

@dataclass(frozen=True)
class NormalizedDerivation:
    """D(x~) = alpha + beta * sqrt(kappa) * y~ on y~^2 = P0(x~), x~ = N(x)."""

    normalizer: Moebius
    P0: object
    kappa: object
    alpha: object
    beta2_kappa: object

    @property
    def autonomous(self):
        return not (_has_z(self.alpha) or _has_z(self.beta2_kappa))

    @property
    def vanishes(self):
        return self.alpha == 0 and self.beta2_kappa == 0

    def as_dict(self):
        return {
            "normalizer": self.normalizer.as_dict(),
            "P0": str(self.P0),
            "kappa": str(self.kappa),
            "Dx_even": str(self.alpha),
            "Dx_odd_squared": str(self.beta2_kappa),
        }


def _has_z(expr):
    return sympy.sympify(expr).has(z)


def normalized_derivation(model, N):
    """Rewrite D(N(x)) in the coordinates x~ = N(x), y~ with y~^2 = P0(x~)."""
    B = N.inverse()
    g = model.genus
    pulled, (a, b, c, d) = _homogenized_pullback(model.P, B, g)
    Pt = Poly(sympy.numer(pulled), x)
    den = sympy.denom(pulled)
    kappa = cancel(Pt.LC() / den)
    P0 = cancel(pulled / kappa)
    Nx = N.as_expr(x)
    DNx = model.derive(model.field(Nx))
    dom = model.field.domain
    cs = DNx.coeffs() + [dom.zero, dom.zero]
    even, odd = cancel(dom.to_sympy(cs[0])), cancel(dom.to_sympy(cs[1]))
    Bx = (a * x + b) / (c * x + d)
    alpha = cancel(even.subs(x, Bx))
    # y = sqrt(kappa) * y~ / (c x~ + d)^(g+1)
    beta = cancel(odd.subs(x, Bx) / (c * x + d) ** (g + 1))
    return NormalizedDerivation(N, P0, kappa, alpha, cancel(beta**2 * kappa))


def autonomous_test_hyper(e):
    """CertifiedYes iff e is strictly equivalent to an autonomous equation."""
    model = e if isinstance(e, HyperModel) else hyperelliptic_model(e)
    if model.autonomous:
        return EquivVerdict.yes(Moebius.identity(), "equation is already autonomous")
    if model.roots is None:
        return EquivVerdict.unsupported("branch points do not split over Q(z)")
    N = semi_autonomous_test(model.roots)
    if N is None:
        return EquivVerdict.no("not semi-autonomous: a cross-ratio of the branch points depends on z")
    nd = normalized_derivation(model, N)
    if nd.autonomous:
        return EquivVerdict.yes(N, "normalized derivation is free of z", normalized=nd.as_dict())
    return EquivVerdict.no("normalized derivation depends on z", normalized=nd.as_dict())


# ---------------------------------------------------------------------------
# Genus 1

OBSTRUCTION = "ObstructionFound"
INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class EllipticCheck:
    kind: str
    j: tuple
    reason: str = ""

    def as_dict(self):
        return {"verdict": self.kind, "j": [str(to_expr(v)) for v in self.j], "reason": self.reason}


def elliptic_necessary(e1, e2):
    """Different j-invariants rule out strict equivalence."""
    j1, j2 = j_invariant(e1), j_invariant(e2)
    if j1 != j2:
        return EllipticCheck(OBSTRUCTION, (j1, j2), "j-invariants differ")
    return EllipticCheck(INCONCLUSIVE, (j1, j2), "j-invariants agree")


def elliptic_semi_autonomous_necessary(e):
    """A j-invariant depending on z rules out semi-autonomy."""
    j = j_invariant(e)
    if not is_constant(j):
        return EllipticCheck(OBSTRUCTION, (j,), "j-invariant depends on z")
    return EllipticCheck(INCONCLUSIVE, (j,), "j-invariant is constant")
