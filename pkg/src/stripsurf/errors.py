"""Exception hierarchy shared across the package.

Every exception carries a stable ``code`` string used by the CLI to pick
exit codes and by tests to assert on failure modes.
"""

from __future__ import annotations


class StripSurfError(Exception):
    """Base class; ``code`` is a stable machine-readable identifier."""

    code = "ERROR"

    def __init__(self, message: str = ""):
        super().__init__(f"{self.code}: {message}" if message else self.code)


class InvalidSurfaceError(StripSurfError):
    code = "INVALID_SURFACE"


class UnknownStripError(StripSurfError):
    code = "UNKNOWN_STRIP"


class DegenerateIntervalError(StripSurfError):
    code = "DEGENERATE_INTERVAL"


class NotC2Error(StripSurfError):
    code = "NOT_C2"


class NotC1Error(StripSurfError):
    code = "NOT_C1"


class ComponentNotClosedError(StripSurfError):
    code = "COMPONENT_NOT_CLOSED"


class NotConnectedError(StripSurfError):
    code = "NOT_CONNECTED"


class NotReducedError(StripSurfError):
    code = "NOT_REDUCED"


class InvalidShadowError(StripSurfError):
    code = "INVALID_SHADOW"


class NotInIdentityComponentError(StripSurfError):
    code = "NOT_IN_H0"


class BadTimeParameterError(StripSurfError):
    code = "BAD_T"


class OutOfDomainError(StripSurfError):
    code = "OUT_OF_DOMAIN"
