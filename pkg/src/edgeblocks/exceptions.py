"""Exception hierarchy shared by all modules."""


class EdgeBlocksError(Exception):
    """Base class for every error raised by this package."""


class GraphFormatError(EdgeBlocksError, ValueError):
    """A graph document or adjacency input is malformed."""


class DisconnectedGraphError(EdgeBlocksError, ValueError):
    """A decomposition entry point received a disconnected graph."""


class PreconditionError(EdgeBlocksError, ValueError):
    """An operation was called with arguments violating its precondition."""


class EnumerationCapExceeded(EdgeBlocksError):
    """Minimum-cut enumeration produced more separations than allowed."""

    def __init__(self, cap):
        super().__init__(f"more than {cap} minimum separations; raise the cap to continue")
        self.cap = cap


class OracleGuardExceeded(EdgeBlocksError, ValueError):
    """A brute-force routine was asked to run on a graph that is too large."""


class InvariantError(EdgeBlocksError, AssertionError):
    """An internal guarantee was violated. Always a bug; carries diagnostics."""

    def __init__(self, message, **context):
        detail = "; ".join(f"{k}={v!r}" for k, v in context.items())
        super().__init__(f"{message} ({detail})" if detail else message)
        self.context = context
