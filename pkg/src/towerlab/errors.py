from __future__ import annotations


class TowerlabError(Exception):
    """Base class for domain errors (the CLI maps these to exit status 1)."""


class InvalidGroupError(TowerlabError, ValueError):
    pass


class GroupSpecError(TowerlabError, ValueError):
    pass


class NotASubgroupError(TowerlabError, ValueError):
    pass


class OrderCapExceeded(TowerlabError):
    """Raised when a computation would exceed a configured size cap.

    ``partial`` carries whatever was computed before the cap was hit.
    """

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


class BudgetExceeded(TowerlabError):
    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


class PreconditionError(TowerlabError, ValueError):
    pass


class GraphError(TowerlabError, ValueError):
    pass
