"""Typed errors shared across the package.

The CLI maps DomainError to exit code 2 (usage) and InconsistencyError to
exit code 3 (a mathematical identity that must hold failed to hold).  The
HTTP service maps them to 400/422 and 409 respectively.
"""


class PsiEhrhartError(Exception):
    """Base class for all package errors."""


class DomainError(PsiEhrhartError, ValueError):
    """Arguments outside an operation's documented domain."""


class ConstructionError(DomainError):
    """An invalid geometric object (e.g. a simplex crossing an excluded
    hyperplane transversally, or a degenerate simplex)."""


class UnboundedError(DomainError):
    """Lattice-point enumeration requested for an unbounded polyhedron."""


class InconsistencyError(PsiEhrhartError):
    """An internal cross-check failed; results cannot be trusted."""


class NotIntegerValuedError(InconsistencyError):
    """A polynomial expected to be integer-valued is not."""


class CacheError(PsiEhrhartError):
    """Base class for cache persistence problems."""


class CacheFormatError(CacheError):
    """Malformed cache line; carries the 1-based line number."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class CacheVersionError(CacheError):
    """Cache header missing or from an incompatible version."""


class CacheLockedError(CacheError):
    """Another process holds the write lock on the cache file."""
