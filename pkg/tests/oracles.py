"""Independent reference computations used by the tests."""

import itertools
from fractions import Fraction

INFTY = "inf"


def _hom(p):
    return (1, 0) if p == INFTY else (Fraction(p), 1)


def _bracket(p, q):
    return p[0] * q[1] - p[1] * q[0]


def cross_ratio_hom(p, q, r, s):
    """Cross-ratio from 2x2 determinants of homogeneous coordinates."""
    p, q, r, s = map(_hom, (p, q, r, s))
    num = _bracket(s, p) * _bracket(q, r)
    den = _bracket(s, r) * _bracket(q, p)
    return INFTY if den == 0 else Fraction(num) / den


def brute_force_transporter(R1, R2):
    """All bijections R1 -> R2 preserving every cross-ratio of ordered 4-subsets."""
    if len(R1) != len(R2):
        return set()
    quads = list(itertools.combinations(range(len(R1)), 4))
    out = set()
    for perm in itertools.permutations(R2):
        if all(cross_ratio_hom(*(R1[i] for i in qd)) == cross_ratio_hom(*(perm[i] for i in qd))
               for qd in quads):
            out.add(perm)
    return out
