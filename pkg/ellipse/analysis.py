"""
Cross-checks between the Ritz solver and the perturbation engine.

- Hellmann-Feynman slopes dE/dxi from left and right eigenvectors.
- The sqrt(g)-weighted symmetric formulation of PathNonHermitian, which
  must reproduce the plain non-symmetric spectrum.
- xi scans with the perturbative reference curves alongside.
"""
import logging
from typing import List, Sequence

import numpy as np
from mpmath import MPContext

import config
from ellipse.exceptions import BiorthogonalityFailure, NumericalFailure, PreconditionError
from ellipse.matrices import build_system, gram, node_count, node_tables, validate_size, working_context
from ellipse.model import (
    ModelKind,
    SymmetryClass,
    coefficient_xi_derivatives,
    level_position,
    unperturbed_levels,
    validate_xi,
)
from ellipse.perturbation import eigenvalue_series, evaluate_series, first_order_energy, improved_energy
from ellipse.solver import eigenpairs, solve, solve_block
from ellipse.state import RitzSystem, ScanGrid, ScanRow

logger = logging.getLogger(__name__)

# Levels whose order-4 PathHermitian series is attached to scan rows.
SERIES_LEVELS = (1, 2)
SERIES_ORDER = 4


def _bilinear(context: MPContext, left: Sequence, matrix, right: Sequence):
    left = [context.convert(value) for value in left]
    right = [context.convert(value) for value in right]
    size = len(right)
    return context.fsum(left[i] * context.convert(matrix[i, j]) * right[j] for i in range(size) for j in range(size))


def _derivative_matrix(context: MPContext, system: RitzSystem):
    """dH/dxi in the class basis."""
    tables = node_tables(context, system.cls, system.size, system.node_count)
    xi = context.mpf(system.xi)
    applied = [[None] * system.node_count for _ in range(system.size)]
    for node in range(system.node_count):
        d_c2, d_c1 = coefficient_xi_derivatives(system.model, xi, tables.cos[node], tables.sin[node])
        for k in range(system.size):
            applied[k][node] = -(d_c2 * tables.second[k][node] + d_c1 * tables.first[k][node])
    return gram(context, tables.values, applied, tables.weight)


def hft_derivative(model: ModelKind, cls: SymmetryClass, xi: float, level_index: int, size: int) -> float:
    """dE/dxi = y^T H' x / y^T S x for the level_index-th eigenvalue of the block."""
    if level_index < 0:
        raise PreconditionError(f"level_index must be >= 0, got {level_index}")
    system = build_system(model, cls, xi, size)
    pairs, _ = eigenpairs(system, level_index + 1, vectors=True)
    pair = pairs[level_index]
    context = working_context(system.precision)
    overlap = _bilinear(context, pair.left, system.s_matrix, pair.right)
    if abs(overlap) < config.BIORTHOGONALITY_TOL:
        raise BiorthogonalityFailure(
            f"Left/right overlap {context.nstr(overlap, 5)} below {config.BIORTHOGONALITY_TOL} for {cls.label} level {level_index}",
            size=size,
            xi=system.xi,
        )
    slope = _bilinear(context, pair.left, _derivative_matrix(context, system), pair.right) / overlap
    logger.info(f"HFT {model.value} {cls.label} level {level_index} xi={xi}: dE/dxi={context.nstr(slope, 12)}")
    return float(slope)


def weighted_system(cls: SymmetryClass, xi: float, size: int) -> RitzSystem:
    """PathNonHermitian projected with the scalar product weighted by sqrt(g).

    S_ij = integral of f_i f_j sqrt(g) and, after integrating by parts,
    H_ij = integral of f_i' f_j' / sqrt(g); both are symmetric.
    """
    xi = validate_xi(xi)
    validate_size(size)
    precision = config.working_precision(size)
    count = node_count(size, xi, precision)
    context = working_context(precision)
    tables = node_tables(context, cls, size, count)
    roots = [context.sqrt(1 + xi * c * c) for c in tables.cos]
    weighted_values = [[value * root for value, root in zip(row, roots)] for row in tables.values]
    weighted_first = [[value / root for value, root in zip(row, roots)] for row in tables.first]
    s_matrix = gram(context, tables.values, weighted_values, tables.weight)
    h_matrix = gram(context, tables.first, weighted_first, tables.weight)
    return RitzSystem(
        model=ModelKind.PATH_NON_HERMITIAN,
        cls=cls,
        xi=xi,
        size=size,
        h_matrix=h_matrix,
        s_matrix=s_matrix,
        precision=precision,
        node_count=count,
        scalar_product="weighted",
    )


def isospectral_check(xi: float, size: int, count: int) -> float:
    """Largest relative gap between the plain and weighted PathNonHermitian spectra."""
    worst = 0.0
    for cls in SymmetryClass:
        plain = solve_block(ModelKind.PATH_NON_HERMITIAN, cls, xi, size, count)
        weighted = solve(weighted_system(cls, xi, size), count)
        for a, b in zip(plain.eigenvalues, weighted.eigenvalues):
            if b > config.ZERO_MODE_TOL:
                worst = max(worst, abs(a - b) / b)
    logger.info(f"Isospectral check xi={xi} N={size} k={count}: max relative gap {worst:.3e}")
    return worst


def scan_grid(xi_min: float, xi_max: float, steps: int) -> List[float]:
    """`steps` uniformly spaced values from xi_min to xi_max inclusive."""
    xi_min, xi_max = validate_xi(xi_min), validate_xi(xi_max)
    if xi_max < xi_min:
        raise PreconditionError(f"xi_max={xi_max} must be >= xi_min={xi_min}")
    if steps < 1:
        raise PreconditionError(f"steps must be >= 1, got {steps}")
    if steps == 1:
        if xi_max != xi_min:
            raise PreconditionError("A single-step scan needs xi_min == xi_max")
        return [xi_min]
    return [float(value) for value in np.linspace(xi_min, xi_max, steps)]


def _scan_point(model: ModelKind, xi: float, size: int, levels: int) -> List[ScanRow]:
    rows = []
    for cls in SymmetryClass:
        wanted = [n for n in unperturbed_levels(cls, levels // 2 + 1) if 1 <= n <= levels]
        if not wanted:
            continue
        spectrum = solve_block(model, cls, xi, size, level_position(cls, wanted[-1]) + 1)
        for n in wanted:
            series4 = None
            if model.is_hermitian and n in SERIES_LEVELS:
                series4 = evaluate_series(eigenvalue_series(model, cls, n, SERIES_ORDER), xi)
            rows.append(
                ScanRow(
                    xi=xi,
                    n=n,
                    cls=cls,
                    energy=spectrum.eigenvalues[level_position(cls, n)],
                    pt_first_order=first_order_energy(n, xi),
                    pt_improved=improved_energy(n, xi),
                    pt_series4=series4,
                )
            )
    rows.sort(key=lambda row: (row.energy, row.cls.order))
    return rows


def scan(model: ModelKind, xi_min: float, xi_max: float, steps: int, size: int, levels: int) -> ScanGrid:
    """Class-labelled spectra of levels 1..levels with reference curves on a uniform xi grid."""
    if levels < 1:
        raise PreconditionError(f"levels must be >= 1, got {levels}")
    grid = ScanGrid(model=model, xi_values=scan_grid(xi_min, xi_max, steps), size=size, levels=levels)
    for xi in grid.xi_values:
        try:
            grid.rows.extend(_scan_point(model, xi, size, levels))
        except NumericalFailure as exc:
            exc.xi = xi
            logger.error(f"Scan failed at xi={xi}: {exc}")
            raise
    logger.info(f"Scanned {model.value} over {len(grid.xi_values)} points, {len(grid.rows)} rows")
    return grid


def truncation_errors(model: ModelKind, cls: SymmetryClass, level: int, order: int, xi_values: Sequence[float], size: int) -> List[float]:
    """|series_order(xi) - Ritz(xi)| at the solver's working precision."""
    position = level_position(cls, level)
    series = eigenvalue_series(model, cls, level, order)
    errors = []
    for xi in xi_values:
        system = build_system(model, cls, xi, size)
        pairs, _ = eigenpairs(system, position + 1)
        context = working_context(system.precision)
        x = context.mpf(system.xi)
        partial = context.zero
        for coefficient in reversed(series.coefficients):
            partial = partial * x + context.mpf(coefficient.numerator) / coefficient.denominator
        errors.append(float(abs(partial - context.convert(pairs[position].value))))
    logger.debug(f"Truncation errors {model.value} {cls.label} n={level} J={order}: {errors}")
    return errors
