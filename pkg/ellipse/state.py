"""
Result containers passed between the matrix builder, the solvers, the
perturbation engine and the command-line front end.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, List, Literal, Optional, Tuple

from ellipse.model import ModelKind, SymmetryClass, group_labels, unperturbed_levels


@dataclass(frozen=True)
class RitzSystem:
    """The N x N matrices of the secular problem |H - W S| = 0.

    Entries are mpmath numbers carried at `precision` decimal digits.
    """
    model: ModelKind
    cls: SymmetryClass
    xi: float
    size: int
    h_matrix: Any
    s_matrix: Any
    precision: int
    node_count: int
    scalar_product: Literal["plain", "weighted"] = "plain"

    @property
    def is_symmetric_definite(self) -> bool:
        return self.model.is_hermitian or self.scalar_product == "weighted"


@dataclass
class Spectrum:
    model: ModelKind
    cls: SymmetryClass
    xi: float
    size: int
    eigenvalues: List[float]
    imag_residuals: List[float]
    condition_estimate: float

    @property
    def levels(self) -> List[int]:
        """Fourier index at xi = 0 of each returned eigenvalue."""
        return unperturbed_levels(self.cls, len(self.eigenvalues))


@dataclass
class Eigenpair:
    """Extended-precision eigenvalue with generalized right/left eigenvectors (basis coefficients)."""
    value: Any
    imag: Any
    right: Optional[List[Any]] = None
    left: Optional[List[Any]] = None


@dataclass
class ConvergenceTable:
    model: ModelKind
    cls: SymmetryClass
    xi: float
    rows: List[Tuple[int, List[float]]] = field(default_factory=list)


@dataclass
class MergedLevel:
    energy: float
    cls: SymmetryClass
    n: int
    level_index: int
    imag_residual: float = 0.0
    degenerate_with: Optional[SymmetryClass] = None

    @property
    def d2_label(self) -> str:
        return group_labels(self.cls)[0]

    @property
    def c2v_label(self) -> str:
        return group_labels(self.cls)[1]


@dataclass(frozen=True)
class RationalSeries:
    """E^(0..J) of one level in one class as exact fractions."""
    model: ModelKind
    cls: SymmetryClass
    level: int
    order: int
    coefficients: Tuple[Fraction, ...]

    def serialize(self) -> List[str]:
        return [str(c) for c in self.coefficients]


@dataclass(frozen=True)
class OperatorSeries:
    """xi-Taylor coefficients H^(0..J) of one block in the trigonometric basis.

    `indices` are the Fourier indices spanning the block; matrices[k][r][c]
    is the coefficient of basis function indices[r] in H^(k) applied to
    basis function indices[c].
    """
    model: ModelKind
    cls: SymmetryClass
    cutoff: int
    indices: Tuple[int, ...]
    matrices: Tuple[Tuple[Tuple[Fraction, ...], ...], ...]


@dataclass
class ScanRow:
    xi: float
    n: int
    cls: SymmetryClass
    energy: float
    pt_first_order: float
    pt_improved: float
    pt_series4: Optional[float] = None

    @property
    def d2_label(self) -> str:
        return group_labels(self.cls)[0]


@dataclass
class ScanGrid:
    model: ModelKind
    xi_values: List[float]
    size: int
    levels: int
    rows: List[ScanRow] = field(default_factory=list)


@dataclass
class CheckResult:
    suite: str
    name: str
    measured: float
    tolerance: float
    passed: bool
