"""Three-valued answers for semi-decidable questions, plus resource limits."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

TRUE = "true"
FALSE = "false"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class Verdict:
    """Outcome of a bounded decision procedure.

    ``TRUE`` and ``FALSE`` carry evidence that can be re-checked; ``UNKNOWN``
    carries a resource report. Truth-testing an unknown verdict raises, so an
    exhausted budget can never be mistaken for a negative answer.
    """

    status: str
    payload: Any = None
    note: str = ""

    @classmethod
    def true(cls, witness=None, note=""):
        return cls(TRUE, witness, note)

    @classmethod
    def false(cls, counterexample=None, note=""):
        return cls(FALSE, counterexample, note)

    @classmethod
    def unknown(cls, report=None, note=""):
        return cls(UNKNOWN, report, note)

    @property
    def is_true(self) -> bool:
        return self.status == TRUE

    @property
    def is_false(self) -> bool:
        return self.status == FALSE

    @property
    def is_unknown(self) -> bool:
        return self.status == UNKNOWN

    @property
    def decisive(self) -> bool:
        return self.status != UNKNOWN

    def __bool__(self):
        if self.status == UNKNOWN:
            raise ValueError(f"verdict is unknown: {self.note or self.payload}")
        return self.status == TRUE

    def __str__(self):
        return self.status if not self.note else f"{self.status} ({self.note})"


@dataclass(frozen=True)
class Limits:
    """Explicit search budgets. Every bounded procedure reads one of these."""

    coset_limit: int = 50_000
    zigzag_bound: int = 12
    zigzag_nodes: int = 200_000
    functor_budget: int = 1_000_000
    rewrite_nodes: int = 50_000
    max_morphisms: int = 2_000
    extra: dict = field(default_factory=dict, compare=False)

    def as_dict(self):
        return {
            "coset_limit": self.coset_limit,
            "zigzag_bound": self.zigzag_bound,
            "zigzag_nodes": self.zigzag_nodes,
            "functor_budget": self.functor_budget,
            "rewrite_nodes": self.rewrite_nodes,
            "max_morphisms": self.max_morphisms,
        }


DEFAULT_LIMITS = Limits()
