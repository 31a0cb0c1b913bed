"""Classification of first-order algebraic ODEs f(y', y, z) = 0 over Q(z)."""

from .autonomous import (Genus0Pair, HyperPair, VectorFieldDivisor, algebraic_solution_genus0,
                         algebraic_solution_hyper, conjugate_vf, disguise, extract_pair,
                         infinitesimal_automorphisms, make_autonomous, pair_equivalent_genus0,
                         vf_divisor)
from .curves import (genus, genus_riemann_hurwitz, hyperelliptic_model, j_invariant,
                     rational_parametrization)
from .equation import (DiffEq, apply_derivation, induced_derivation, is_autonomous,
                       make_equation, parse_equation)
from .equivalence import (FieldIso, RootSet, autonomous_test_hyper, elliptic_necessary,
                          elliptic_semi_autonomous_necessary, lift_to_field_iso,
                          semi_autonomous_test, strict_equiv_hyper, transport_residuals,
                          transporter)
from .errors import OdeqError
from .local import puiseux_leading, ramification_indices
from .moebius import Moebius, cross_ratio
from .painleve import pp_check, pp_equivalence_consistency
from .verdicts import EquivVerdict, PPVerdict

__version__ = "0.1.0"

__all__ = [
    "DiffEq", "EquivVerdict", "FieldIso", "Genus0Pair", "HyperPair", "Moebius", "OdeqError",
    "PPVerdict", "RootSet", "VectorFieldDivisor", "algebraic_solution_genus0",
    "algebraic_solution_hyper", "apply_derivation", "autonomous_test_hyper", "conjugate_vf",
    "cross_ratio", "disguise", "elliptic_necessary", "elliptic_semi_autonomous_necessary",
    "extract_pair", "genus", "genus_riemann_hurwitz", "hyperelliptic_model",
    "induced_derivation", "infinitesimal_automorphisms", "is_autonomous", "j_invariant",
    "lift_to_field_iso", "make_autonomous", "make_equation", "pair_equivalent_genus0",
    "parse_equation", "pp_check", "pp_equivalence_consistency", "puiseux_leading",
    "ramification_indices", "rational_parametrization", "semi_autonomous_test",
    "strict_equiv_hyper", "transport_residuals", "transporter", "vf_divisor",
]
