"""Exception types and the law-check verdict shared by every module."""

from __future__ import annotations

from dataclasses import dataclass


class QmodError(Exception):
    """Base class for all errors raised by qmod."""


class InputError(QmodError):
    """Malformed or unresolvable input (bad tables, unknown ids, syntax)."""


class BoundaryError(InputError):
    """Two things that must share a boundary (or a base quantale) do not."""


class PreconditionError(InputError):
    def __init__(self, message: str, witness=None):
        super().__init__(message if witness is None else f"{message}: {witness!r}")
        self.witness = witness


@dataclass(frozen=True)
class Violation:
    law: str
    witness: tuple
    detail: str = ""

    def __str__(self) -> str:
        text = f"{self.law} violated at {self.witness!r}"
        return f"{text} ({self.detail})" if self.detail else text


@dataclass(frozen=True)
class Verdict:
    """Outcome of a law check: ok iff there are no violations.

    Truthy when the check passed, so ``assert check_x(...)`` reads naturally.
    """

    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    @property
    def first(self) -> Violation | None:
        return self.violations[0] if self.violations else None

    def laws(self) -> list[str]:
        return [v.law for v in self.violations]

    def __add__(self, other: Verdict) -> Verdict:
        return Verdict(self.violations + other.violations)

    def __str__(self) -> str:
        if self.ok:
            return "ok"
        return "; ".join(str(v) for v in self.violations)


OK = Verdict()


def fail(law: str, witness: tuple, detail: str = "") -> Verdict:
    return Verdict((Violation(law, witness, detail),))
