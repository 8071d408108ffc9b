"""Exception hierarchy for the verification engine.

Every failure mode that a caller might want to branch on gets its own
class.  Anything raised out of this package is an EngineError unless it
is a plain bug (TypeError, AssertionError, ...).
"""

from __future__ import annotations


class EngineError(Exception):
    """Base class for all engine-level failures."""


class DimensionMismatch(EngineError):
    """Vectors or lattices of incompatible dimensions were combined."""


class NonContainment(EngineError):
    """An index or quotient was requested for lattices without containment."""


class MembershipError(EngineError):
    """A vector expected to lie in a lattice does not."""


class EnumerationBound(EngineError):
    """An enumeration would exceed the configured work bound."""


class ZeroElement(EngineError):
    """A valuation or inverse was requested for the zero element."""


class AmbiguousValuation(EngineError):
    """Minimal-value terms may cancel; no valuation can be certified."""


class UnsupportedConfiguration(EngineError):
    """The input is outside the fragment this engine can certify."""


class NotDivisionCertified(EngineError):
    """A construction step required a division certificate that is absent."""


class ScenarioError(EngineError):
    """A scenario file failed to parse or validate.

    Carries the 1-based line number (and column when known) so the CLI
    can point at the offending input.
    """

    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.line = line
        self.col = col
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", col {col}" if col is not None else "") + ")"
        super().__init__(message + loc)
