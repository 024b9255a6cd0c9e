"""Error hierarchy shared by the model, solver, perturbation and analysis modules."""
from typing import Optional


class EllipseError(Exception):
    """Base class for every error raised by the ellipse package."""


class DomainError(EllipseError, ValueError):
    """A parameter lies outside the physical domain (xi <= -1, bad sizes)."""


class PreconditionError(EllipseError, ValueError):
    """An operation was called with arguments it does not accept."""


class NumericalFailure(EllipseError):
    """A numerical procedure failed. Records where it happened when known."""

    def __init__(self, message: str, size: Optional[int] = None, xi: Optional[float] = None):
        super().__init__(message)
        self.size = size
        self.xi = xi

    def __str__(self) -> str:
        context = []
        if self.size is not None:
            context.append(f"N={self.size}")
        if self.xi is not None:
            context.append(f"xi={self.xi!r}")
        base = super().__str__()
        return f"{base} ({', '.join(context)})" if context else base


class CholeskyFailure(NumericalFailure):
    """The overlap matrix is numerically indefinite."""


class RealityViolation(NumericalFailure):
    """A requested eigenvalue of the non-Hermitian projection has a significant imaginary part."""


class BiorthogonalityFailure(NumericalFailure):
    """Left and right eigenvectors are numerically orthogonal."""


class NonConvergenceError(NumericalFailure):
    """An adaptive procedure did not reach its tolerance."""
