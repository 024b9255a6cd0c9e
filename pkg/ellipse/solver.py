"""
Generalized eigenproblem |H - W S| = 0 for one symmetry block.

Both paths reduce with the Cholesky factor S = L L^T to A = L^-1 H L^-T.
Symmetric-definite systems (PathHermitian, or the weighted formulation of
PathNonHermitian) go through mpmath's tridiagonal eigsy; the plain
PathNonHermitian projection goes through mpmath's Hessenberg + shifted QR eig.
Each call copies the system into its own MPContext, so solves of one shared
RitzSystem never interfere.
"""
import logging
from typing import Any, List, NamedTuple, Tuple

from mpmath import MPContext

import config
from ellipse.exceptions import CholeskyFailure, NumericalFailure, PreconditionError, RealityViolation
from ellipse.matrices import build_system, working_context
from ellipse.model import ModelKind, SymmetryClass
from ellipse.state import ConvergenceTable, Eigenpair, MergedLevel, RitzSystem, Spectrum

logger = logging.getLogger(__name__)


class ConjectureRow(NamedTuple):
    n: int
    energy: float
    scaled_first: float
    relative_deviation: float


def _reduce(context: MPContext, system: RitzSystem) -> Tuple[Any, Any, Any]:
    """(A, L^-1, cond_1(S)) computed in `context`."""
    s_matrix = context.matrix(system.s_matrix)
    try:
        lower = context.cholesky(s_matrix)
    except ValueError as exc:
        raise CholeskyFailure(f"Overlap matrix of {system.cls.label} is not positive definite: {exc}", size=system.size, xi=system.xi) from exc
    inverse_lower = context.inverse(lower)
    reduced = inverse_lower * context.matrix(system.h_matrix) * inverse_lower.T
    condition = context.mnorm(s_matrix, 1) * context.mnorm(inverse_lower.T * inverse_lower, 1)
    return reduced, inverse_lower, condition


def _column(matrix: Any, index: int) -> List[Any]:
    return [matrix[row, index] for row in range(matrix.rows)]


def _real_unit(context: MPContext, vector: List[Any]) -> List[Any]:
    """Removes the arbitrary complex phase of an eigenvector and normalizes it."""
    pivot = max(vector, key=abs)
    scaled = [context.re(v / pivot) for v in vector]
    norm = context.sqrt(context.fsum(v * v for v in scaled))
    return [v / norm for v in scaled]


def _back_transform(context: MPContext, inverse_lower: Any, vector: List[Any]) -> List[Any]:
    """Basis coefficients x = L^-T z."""
    size = len(vector)
    return [context.fsum(inverse_lower[k, i] * vector[k] for k in range(i, size)) for i in range(size)]


def _symmetric_pairs(context: MPContext, reduced: Any, inverse_lower: Any, vectors: bool) -> List[Eigenpair]:
    symmetric = (reduced + reduced.T) / 2
    if not vectors:
        values = context.eigsy(symmetric, eigvals_only=True)
        pairs = [Eigenpair(value=values[i], imag=context.zero) for i in range(symmetric.rows)]
    else:
        values, basis = context.eigsy(symmetric)
        pairs = []
        for i in range(symmetric.rows):
            coefficients = _back_transform(context, inverse_lower, _real_unit(context, _column(basis, i)))
            pairs.append(Eigenpair(value=values[i], imag=context.zero, right=coefficients, left=coefficients))
    return sorted(pairs, key=lambda pair: pair.value)


def _general_pairs(context: MPContext, reduced: Any, inverse_lower: Any, vectors: bool) -> List[Eigenpair]:
    values, right = context.eig(reduced)
    pairs = []
    for i, value in enumerate(values):
        pair = Eigenpair(value=context.re(value), imag=abs(context.im(value)))
        if vectors:
            pair.right = _back_transform(context, inverse_lower, _real_unit(context, _column(right, i)))
        pairs.append(pair)
    pairs.sort(key=lambda pair: pair.value)
    if vectors:
        # Left eigenvectors: eigenvectors of A^T matched by eigenvalue proximity.
        left_values, left = context.eig(reduced.T)
        for pair in pairs:
            distances = [abs(context.re(v) - pair.value) + abs(context.im(v)) for v in left_values]
            best = min(range(len(distances)), key=distances.__getitem__)
            if distances[best] > config.EIGENVECTOR_MATCH_TOL:
                raise NumericalFailure(f"No left eigenvector within {config.EIGENVECTOR_MATCH_TOL} of W={context.nstr(pair.value, 12)}")
            pair.left = _back_transform(context, inverse_lower, _real_unit(context, _column(left, best)))
    return pairs


def _check_count(system: RitzSystem, count: int) -> None:
    if not 1 <= count <= system.size:
        raise PreconditionError(f"Requested {count} eigenvalues from a system of size {system.size}")


def eigenpairs(system: RitzSystem, count: int, vectors: bool = False) -> Tuple[List[Eigenpair], float]:
    """The `count` lowest eigenpairs at extended precision and cond_1(S).

    Right eigenvectors satisfy H x = W S x and left ones y^T H = W y^T S, both
    as coefficient vectors in the class basis.
    """
    _check_count(system, count)
    context = working_context(system.precision)
    reduced, inverse_lower, condition = _reduce(context, system)
    if system.is_symmetric_definite:
        pairs = _symmetric_pairs(context, reduced, inverse_lower, vectors)
    else:
        pairs = _general_pairs(context, reduced, inverse_lower, vectors)
    pairs = pairs[:count]
    for pair in pairs:
        tolerance = config.IMAG_TOL * max(1.0, abs(float(pair.value)))
        if pair.imag > tolerance:
            raise RealityViolation(
                f"{system.model.value} {system.cls.label} eigenvalue {context.nstr(pair.value, 12)} has |Im|={context.nstr(pair.imag, 5)} > {tolerance:.1e}",
                size=system.size,
                xi=system.xi,
            )
        if pair.imag > 0:
            logger.warning(
                f"{system.model.value} {system.cls.label} eigenvalue {context.nstr(pair.value, 12)}: dropped spurious |Im|={context.nstr(pair.imag, 5)}"
            )
    return pairs, float(condition)


def solve(system: RitzSystem, count: int) -> Spectrum:
    pairs, condition = eigenpairs(system, count)
    spectrum = Spectrum(
        model=system.model,
        cls=system.cls,
        xi=system.xi,
        size=system.size,
        eigenvalues=[float(pair.value) for pair in pairs],
        imag_residuals=[float(pair.imag) for pair in pairs],
        condition_estimate=condition,
    )
    logger.info(f"Solved {system.model.value} {system.cls.label} xi={system.xi} N={system.size}: {spectrum.eigenvalues}")
    if condition > 1e30:
        logger.warning(f"Overlap condition estimate {condition:.2e} at N={system.size}; consider a smaller basis")
    return spectrum


def solve_block(model: ModelKind, cls: SymmetryClass, xi: float, size: int, count: int) -> Spectrum:
    return solve(build_system(model, cls, xi, size), count)


def convergence_scan(model: ModelKind, cls: SymmetryClass, xi: float, n_min: int, n_max: int, count: int) -> ConvergenceTable:
    """One solve per basis size in [n_min, n_max]."""
    if n_min < count:
        raise PreconditionError(f"n_min={n_min} must be >= levels={count}")
    if n_max < n_min:
        raise PreconditionError(f"n_max={n_max} must be >= n_min={n_min}")
    table = ConvergenceTable(model=model, cls=cls, xi=xi)
    for size in range(n_min, n_max + 1):
        try:
            spectrum = solve_block(model, cls, xi, size, count)
        except NumericalFailure as exc:
            exc.size, exc.xi = size, xi
            logger.error(f"Convergence scan failed at N={size}: {exc}")
            raise
        table.rows.append((size, spectrum.eigenvalues))
    return table


def _pairing_tolerance(energy: float) -> float:
    return config.PAIRING_TOL * max(1.0, abs(energy))


def merge_levels(spectra: List[Spectrum]) -> List[MergedLevel]:
    """Sorts class spectra into one ascending list and marks degenerate pairs."""
    levels = []
    for spectrum in spectra:
        for index, (energy, n, imag) in enumerate(zip(spectrum.eigenvalues, spectrum.levels, spectrum.imag_residuals)):
            levels.append(MergedLevel(energy=energy, cls=spectrum.cls, n=n, level_index=index, imag_residual=imag))
    levels.sort(key=lambda level: (level.energy, level.cls.order))
    position = 0
    while position < len(levels) - 1:
        lower, upper = levels[position], levels[position + 1]
        if upper.energy - lower.energy <= _pairing_tolerance(upper.energy):
            if upper.cls.order < lower.cls.order:
                levels[position], levels[position + 1] = upper, lower
                lower, upper = upper, lower
            lower.degenerate_with, upper.degenerate_with = upper.cls, lower.cls
            position += 2
        else:
            position += 1
    return levels


def merged_spectrum(model: ModelKind, xi: float, size: int, count: int) -> List[MergedLevel]:
    """All four class spectra merged ascending with degenerate pairs annotated."""
    return merge_levels([solve_block(model, cls, xi, size, count) for cls in SymmetryClass])


def degenerate_pairs(levels: List[MergedLevel]) -> List[Tuple[MergedLevel, MergedLevel]]:
    return [(levels[i], levels[i + 1]) for i in range(len(levels) - 1) if levels[i].degenerate_with is levels[i + 1].cls and levels[i + 1].degenerate_with is levels[i].cls]


def conjecture_check(xi: float, size: int, max_n: int) -> List[ConjectureRow]:
    """|E_n - n^2 E_1| / E_n for n = 1..max_n of PathNonHermitian."""
    if max_n < 1:
        raise PreconditionError(f"max_n must be >= 1, got {max_n}")
    levels = merged_spectrum(ModelKind.PATH_NON_HERMITIAN, xi, size, max_n // 2 + 1)
    by_n = {}
    for level in levels:
        by_n.setdefault(level.n, level.energy)
    first = by_n[1]
    rows = []
    for n in range(1, max_n + 1):
        energy = by_n[n]
        scaled = n * n * first
        rows.append(ConjectureRow(n=n, energy=energy, scaled_first=scaled, relative_deviation=abs(energy - scaled) / abs(energy)))
    logger.info(f"Conjecture check xi={xi} N={size}: max deviation {max(r.relative_deviation for r in rows):.3e}")
    return rows

