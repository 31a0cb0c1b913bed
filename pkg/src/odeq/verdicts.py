"""Three-valued (plus Unsupported) answers returned by the decision procedures."""

from __future__ import annotations

from dataclasses import dataclass, field

YES = "CertifiedYes"
NO = "CertifiedNo"
NOT_FOUND = "NotFoundOverQ"
UNSUPPORTED = "Unsupported"


@dataclass(frozen=True)
class EquivVerdict:
    """Outcome of an equivalence or autonomy test.

    ``witness`` carries the certificate for a positive answer (a Möbius map,
    a field isomorphism, ...); ``reason`` explains the other outcomes.
    """

    kind: str
    witness: object = None
    reason: str = ""
    details: dict = field(default_factory=dict, compare=False)

    @classmethod
    def yes(cls, witness=None, reason="", **details):
        return cls(YES, witness, reason, details)

    @classmethod
    def no(cls, reason, **details):
        return cls(NO, None, reason, details)

    @classmethod
    def not_found(cls, reason, **details):
        return cls(NOT_FOUND, None, reason, details)

    @classmethod
    def unsupported(cls, reason, **details):
        return cls(UNSUPPORTED, None, reason, details)

    @property
    def definite(self):
        return self.kind in (YES, NO)

    def __str__(self):
        return self.kind if not self.reason else f"{self.kind}: {self.reason}"


PP = "PP"
NOT_PP = "NotPP"


@dataclass(frozen=True)
class PPVerdict:
    """Painlevé-property answer with a human-readable certificate."""

    kind: str
    certificate: dict = field(default_factory=dict)
    reason: str = ""

    @property
    def definite(self):
        return self.kind in (PP, NOT_PP)

    def __str__(self):
        return self.kind if not self.reason else f"{self.kind}: {self.reason}"
