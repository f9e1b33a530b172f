"""Exception types shared across the toolkit."""

from __future__ import annotations


class ChromcertError(Exception):
    """Base class for all toolkit-specific errors."""


class TemplateError(ChromcertError):
    """Malformed template: bad domains, improper pre-colouring, or colours
    outside the palette / vertex lists."""


class NotInextensibleError(ChromcertError):
    """The input graph admits a proper palette (or list) colouring, so the
    extraction hypothesis fails.  Carries the offending colouring."""

    def __init__(self, message: str, colouring: dict[int, int]):
        super().__init__(message)
        self.colouring = colouring


class ResourceLimitError(ChromcertError):
    """A solver budget (decision count or wall clock) was exhausted before a
    definite answer was reached.  Never conflated with UNSAT."""


class InternalContradiction(ChromcertError):
    """A construction that is provably impossible for a genuine witness
    succeeded anyway: the attached respecting colouring disproves the
    witness claim.  Reaching this on validated inputs is a bug; reaching it
    on deliberately corrupted witnesses is the expected negative-path
    behaviour."""

    def __init__(self, message: str, colouring: dict[int, int]):
        super().__init__(message)
        self.colouring = colouring
