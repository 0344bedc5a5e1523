"""Verdict objects returned by the checking functions."""

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class Verdict:
    """Outcome of a check.

    ``ok`` is the affirmative/negative answer.  ``witness`` carries the
    evidence for a negative answer (or the certificate for a positive one
    when the check produces one).  ``details`` holds anything else worth
    reporting.
    """

    ok: bool
    witness: Any = None
    details: dict = field(default_factory=dict)

    def __bool__(self):
        return self.ok

    @classmethod
    def yes(cls, witness=None, **details):
        return cls(True, witness, details)

    @classmethod
    def no(cls, witness=None, **details):
        return cls(False, witness, details)
