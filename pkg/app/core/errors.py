"""
Error types for Quantum Double Verifier.

Axiom failures are never raised; they are report content. These exceptions
cover bad input and resource limits only.
"""


class VerifierError(ValueError):
    """Base class for all input and resource errors."""


class GroupTableError(VerifierError):
    """Malformed Cayley-table file or a table that is not a group."""


class SubgroupError(VerifierError):
    """A subgroup that does not meet a construction's requirements."""


class WindowError(VerifierError):
    """Lattice or factor window out of range or mismatched."""


class ResourceCapError(VerifierError):
    """Estimated object size exceeds a configured cap."""


class ConfigError(VerifierError):
    """Invalid run configuration."""


class HexagonError(VerifierError):
    """Twisting maps that fail the hexagon equation during a build."""

    def __init__(self, message, triple=None):
        super().__init__(message)
        self.triple = triple


class ReportWriteError(VerifierError):
    """Report could not be written to the requested path."""


class LabelSpaceError(VerifierError):
    """Elements from different label spaces combined in one computation."""
