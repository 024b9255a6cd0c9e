from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

import config


class PhysicalEllipse(BaseModel):
    a: float = Field(..., gt=0, description="Semi-axis along x, in metres.")
    b: float = Field(..., gt=0, description="Semi-axis along y, in metres.")
    mass: float = Field(..., gt=0, description="Particle mass, in kilograms.")


class Deformation(BaseModel):
    xi: float = Field(..., gt=-1.0 + config.XI_GUARD, allow_inf_nan=False, description="Dimensionless deformation (b^2 - a^2)/a^2 > -1.")


class SpectrumRecord(BaseModel):
    """One eigenvalue of a per-class or merged spectrum."""
    energy: float
    symmetry: str = Field(description="Class flag pp, pm, mp or mm.")
    d2_label: str
    c2v_label: str
    n: int = Field(description="Fourier index of the level at xi = 0.")
    level_index: int = Field(description="Position inside the class block, ascending.")
    imag_residual: float = 0.0
    degenerate_with: Optional[str] = Field(default=None, description="Class of the degenerate partner, if any.")


class ConvergenceRecord(BaseModel):
    size: int
    energies: List[float]


class SeriesRecord(BaseModel):
    order: int
    coefficient: str = Field(description="Exact rational as 'p/q'.")
    approximation: float


class ScanRecord(BaseModel):
    xi: float
    level_index: int
    symmetry: str
    d2_label: str
    energy: float
    pt_first_order: float
    pt_improved: float
    pt_series4: Optional[float] = None


class CheckRecord(BaseModel):
    suite: str
    name: str
    measured: float
    tolerance: float
    passed: bool


class OutputMeta(BaseModel):
    command: str
    model: Optional[str] = None
    xi: Optional[float] = None
    size: Optional[int] = None
    tolerances: Dict[str, float] = Field(default_factory=config.tolerances)
    version: str = config.APP_VERSION


class OutputEnvelope(BaseModel):
    meta: OutputMeta
    data: List[Dict[str, Any]] = Field(default_factory=list)
