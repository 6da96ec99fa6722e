"""Exception types shared by every structure in the package."""


class HeapError(Exception):
    """Base class for all errors raised by this package."""


class EmptyHeapError(HeapError, IndexError):
    """Raised by find/delete operations on an empty structure."""


class HeapDomainError(HeapError, ValueError):
    """A slot index or parameter lies outside the valid domain."""


class UnsupportedOperationError(HeapError, NotImplementedError):
    """The structure does not provide the requested operation."""


class ConfigurationError(HeapError, ValueError):
    """A workload, benchmark or verification run was configured incorrectly."""
