"""Exception hierarchy shared across the package."""


class QuantumCurvesError(Exception):
    """Base class for all package errors."""


class DomainError(QuantumCurvesError):
    """Input is outside the mathematical domain of an operation (CLI exit 1)."""


class InternalInconsistencyError(QuantumCurvesError):
    """An exactness assertion failed: radical residue, inexact division,
    residue obstruction, or a violated structural invariant (CLI exit 2)."""
