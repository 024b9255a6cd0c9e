"""
Dimensionless models of a particle on an elliptical path.

Both Hamiltonians act as H psi = -(c2 psi'' + c1 psi') with c2 = 1/g and
g = 1 + xi cos^2(phi):

- PathNonHermitian: H = -g^{-1/2} d/dphi g^{-1/2} d/dphi, so c1 = -g'/(2 g^2).
  With A = g^{-1/2} d/dphi this is H = -A A.
- PathHermitian:    H = -d/dphi g^{-1} d/dphi, so c1 = -g'/g^2 (H = -A^dagger A).

The helpers taking cosine/sine values (`metric_values`, `coefficient_values`,
`basis_values`) only use ring arithmetic, so the same formulas serve numpy
arrays and mpmath scalars.
"""
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Any, Callable, List, Tuple

import numpy as np
from scipy import constants

import config
from ellipse.exceptions import DomainError, PreconditionError
from ellipse.schemas import PhysicalEllipse

logger = logging.getLogger(__name__)


class ModelKind(str, Enum):
    PATH_NON_HERMITIAN = "m1"
    PATH_HERMITIAN = "m2"

    @property
    def c1_factor(self) -> int:
        """Multiplier of xi*cos*sin/g^2 in c1."""
        return 1 if self is ModelKind.PATH_NON_HERMITIAN else 2

    @property
    def is_hermitian(self) -> bool:
        return self is ModelKind.PATH_HERMITIAN


class SymmetryClass(str, Enum):
    """Joint parity under phi -> -phi and phi -> phi + pi."""

    PP = "pp"
    PM = "pm"
    MP = "mp"
    MM = "mm"

    @property
    def reflection_parity(self) -> int:
        return 1 if self.value[0] == "p" else -1

    @property
    def translation_parity(self) -> int:
        return 1 if self.value[1] == "p" else -1

    @property
    def label(self) -> str:
        sign = {1: "+", -1: "-"}
        return f"({sign[self.reflection_parity]},{sign[self.translation_parity]})"

    @property
    def has_sine(self) -> bool:
        """Odd under reflection: the family carries a sin(phi) factor."""
        return self.reflection_parity == -1

    @property
    def cosine_offset(self) -> int:
        """Exponent of cos(phi) in the k = 0 member of the family."""
        return {SymmetryClass.PP: 0, SymmetryClass.PM: 1, SymmetryClass.MP: 1, SymmetryClass.MM: 0}[self]

    @property
    def order(self) -> int:
        """Tie-break rank (+,+) < (+,-) < (-,+) < (-,-)."""
        return list(SymmetryClass).index(self)

    @classmethod
    def from_parities(cls, reflection: int, translation: int) -> "SymmetryClass":
        for member in cls:
            if member.reflection_parity == reflection and member.translation_parity == translation:
                return member
        raise PreconditionError(f"Invalid parities ({reflection}, {translation})")


# D2 and C2v irreducible representation labels
_GROUP_LABELS = {
    SymmetryClass.PP: ("A", "A1"),
    SymmetryClass.MP: ("B1", "A2"),
    SymmetryClass.PM: ("B2", "B1"),
    SymmetryClass.MM: ("B3", "B2"),
}


@dataclass(frozen=True)
class CoefficientPair:
    """H psi = -(c2 psi'' + c1 psi') for one model at fixed xi."""
    model: ModelKind
    xi: float
    c2: Callable[[Any], Any]
    c1: Callable[[Any], Any]

    def apply(self, phi: Any, d1: Any, d2: Any) -> Any:
        """Value of H psi at phi given psi' and psi''."""
        return -(self.c2(phi) * d2 + self.c1(phi) * d1)


def validate_xi(xi: float) -> float:
    """Returns xi as float if it lies strictly inside the domain xi > -1."""
    xi = float(xi)
    if not math.isfinite(xi) or xi <= -1.0 + config.XI_GUARD:
        raise DomainError(f"Deformation xi={xi!r} outside the domain xi > -1")
    return xi


def metric_values(xi: Any, c: Any) -> Any:
    return 1 + xi * c * c


def coefficient_values(model: ModelKind, xi: Any, c: Any, s: Any) -> Tuple[Any, Any]:
    """(c2, c1) from cos(phi) and sin(phi) values."""
    g = metric_values(xi, c)
    c2 = 1 / g
    c1 = model.c1_factor * xi * c * s / (g * g)
    return c2, c1


def coefficient_xi_derivatives(model: ModelKind, xi: Any, c: Any, s: Any) -> Tuple[Any, Any]:
    """(dc2/dxi, dc1/dxi) from cos(phi) and sin(phi) values."""
    g = metric_values(xi, c)
    d_c2 = -(c * c) / (g * g)
    d_c1 = model.c1_factor * c * s * (1 - xi * c * c) / (g * g * g)
    return d_c2, d_c1


def _power(c: Any, exponent: int) -> Any:
    # Negative exponents only occur with a vanishing prefactor.
    return c ** exponent if exponent >= 0 else c * 0


def basis_values(cls: SymmetryClass, k: int, c: Any, s: Any) -> Tuple[Any, Any, Any]:
    """(f, f', f'') of the k-th family member from cos(phi) and sin(phi) values."""
    q = 2 * k + cls.cosine_offset
    if not cls.has_sine:
        f = _power(c, q)
        d1 = -q * _power(c, q - 1) * s
        d2 = q * (q - 1) * _power(c, q - 2) * s * s - q * f
    else:
        cq = _power(c, q)
        f = s * cq
        d1 = _power(c, q + 1) - q * s * s * _power(c, q - 1)
        d2 = -(3 * q + 1) * s * cq + q * (q - 1) * s * s * s * _power(c, q - 2)
    return f, d1, d2


def metric(phi: Any, xi: float) -> Any:
    """g(phi) = 1 + xi cos^2(phi)."""
    xi = validate_xi(xi)
    return metric_values(xi, np.cos(phi))


def coefficient_functions(model: ModelKind, xi: float) -> CoefficientPair:
    xi = validate_xi(xi)

    def c2(phi: Any) -> Any:
        return coefficient_values(model, xi, np.cos(phi), np.sin(phi))[0]

    def c1(phi: Any) -> Any:
        return coefficient_values(model, xi, np.cos(phi), np.sin(phi))[1]

    return CoefficientPair(model=model, xi=xi, c2=c2, c1=c1)


def basis_function(cls: SymmetryClass, k: int) -> Tuple[Callable[[Any], Any], Callable[[Any], Any], Callable[[Any], Any]]:
    """The k-th member of the class family with its first and second derivatives.

    (+,+): cos^{2k}, (+,-): cos^{2k+1}, (-,+): sin cos^{2k+1}, (-,-): sin cos^{2k}.
    """
    if k < 0:
        raise PreconditionError(f"Basis index must be non-negative, got {k}")

    def derivative(order: int) -> Callable[[Any], Any]:
        def evaluate(phi: Any) -> Any:
            return basis_values(cls, k, np.cos(phi), np.sin(phi))[order]
        return evaluate

    return derivative(0), derivative(1), derivative(2)


def unperturbed_levels(cls: SymmetryClass, count: int) -> List[int]:
    """Fourier indices n whose xi = 0 eigenfunctions belong to the class."""
    if count < 1:
        raise PreconditionError(f"count must be >= 1, got {count}")
    first = {SymmetryClass.PP: 0, SymmetryClass.PM: 1, SymmetryClass.MP: 2, SymmetryClass.MM: 1}[cls]
    return [first + 2 * i for i in range(count)]


def classes_for_level(n: int) -> List[SymmetryClass]:
    """Classes containing the unperturbed level n (two for n >= 1)."""
    if n < 0:
        raise PreconditionError(f"Level must be non-negative, got {n}")
    if n == 0:
        return [SymmetryClass.PP]
    if n % 2 == 0:
        return [SymmetryClass.PP, SymmetryClass.MP]
    return [SymmetryClass.PM, SymmetryClass.MM]


def level_position(cls: SymmetryClass, n: int) -> int:
    """Index of level n inside the class block, ascending."""
    levels = unperturbed_levels(cls, n // 2 + 1)
    if n not in levels:
        raise PreconditionError(f"Level n={n} does not belong to class {cls.label}")
    return levels.index(n)


def nondimensionalize(ellipse: PhysicalEllipse) -> Tuple[float, float]:
    """(xi, energy scale hbar^2/(2 m a^2)) of a physical ellipse in SI units."""
    xi = (ellipse.b ** 2 - ellipse.a ** 2) / ellipse.a ** 2
    energy_scale = constants.hbar ** 2 / (2.0 * ellipse.mass * ellipse.a ** 2)
    logger.debug(f"Nondimensionalized a={ellipse.a}, b={ellipse.b}, m={ellipse.mass}: xi={xi}, scale={energy_scale}")
    return xi, energy_scale


def physical_energy(dimensionless: float, ellipse: PhysicalEllipse) -> float:
    return nondimensionalize(ellipse)[1] * dimensionless


def group_labels(cls: SymmetryClass) -> Tuple[str, str]:
    """(D2 label, C2v label)."""
    return _GROUP_LABELS[cls]
