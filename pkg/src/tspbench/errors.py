"""Exception hierarchy shared across the package.

Validation failures (rejected input, malformed files) are ValueError
subclasses and map to CLI exit code 1; execution failures (worker
crashes, protocol violations, cross-backend disagreement) map to exit
code 2.
"""


class ValidationError(ValueError):
    """Input rejected before any work started."""


class CapacityError(ValidationError):
    """Quantity exceeds the supported 128-bit permutation-index range."""


class ExecutionError(RuntimeError):
    """A backend failed while running: spawn failure, worker crash, clock fault."""


class ProtocolError(ExecutionError):
    """The coordinator/worker exchange violated the wire protocol."""


class CorrectnessError(ExecutionError):
    """A backend's answer disagreed with the serial baseline."""
