"""
Invariant suites behind the `check` command.

Each suite returns CheckResult records; a suite passes iff every record does.
"""
import logging
from typing import Callable, Dict, List, Optional

import config
from ellipse.analysis import hft_derivative, isospectral_check
from ellipse.exceptions import PreconditionError
from ellipse.model import ModelKind, classes_for_level, level_position
from ellipse.perturbation import splitting_order
from ellipse.solver import conjecture_check, solve_block
from ellipse.state import CheckResult

logger = logging.getLogger(__name__)

SUITES = ("degeneracy", "conjecture", "hft", "isospectral", "splitting")

ISOSPECTRAL_XI = (-0.5, 0.5, 1.0, 2.0)
SPLITTING_EXPECTED = ((1, 4, 1), (2, 4, 2), (3, 4, 3), (4, 4, 4), (5, 4, None), (5, 5, 5))


def _level_energy(model: ModelKind, cls, n: int, xi: float, size: int) -> float:
    position = level_position(cls, n)
    return solve_block(model, cls, xi, size, position + 1).eigenvalues[position]


def degeneracy_suite(xi: Optional[float] = None, size: Optional[int] = None) -> List[CheckResult]:
    """PathNonHermitian levels 1..4 coincide across their two classes."""
    xi = 1.0 if xi is None else xi
    size = size or 16
    results = []
    for n in range(1, 5):
        first, second = (_level_energy(ModelKind.PATH_NON_HERMITIAN, cls, n, xi, size) for cls in classes_for_level(n))
        gap = abs(first - second) / abs(first)
        results.append(CheckResult("degeneracy", f"E_{n} pair at xi={xi}, N={size}", gap, config.SPECTRAL_RTOL, gap <= config.SPECTRAL_RTOL))
    return results


def conjecture_suite(xi: Optional[float] = None, size: Optional[int] = None) -> List[CheckResult]:
    """E_n = n^2 E_1 for n = 1..6 of PathNonHermitian."""
    xi = 1.0 if xi is None else xi
    size = size or 16
    return [
        CheckResult(
            "conjecture",
            f"|E_{row.n} - {row.n}^2 E_1|/E_{row.n} at xi={xi}, N={size}",
            row.relative_deviation,
            config.SPECTRAL_RTOL,
            row.relative_deviation <= config.SPECTRAL_RTOL,
        )
        for row in conjecture_check(xi, size, 6)
    ]


def _finite_difference(model: ModelKind, cls, n: int, xi: float, size: int) -> float:
    step = config.FD_STEP
    return (_level_energy(model, cls, n, xi + step, size) - _level_energy(model, cls, n, xi - step, size)) / (2 * step)


def hft_suite(xi: Optional[float] = None, size: Optional[int] = None) -> List[CheckResult]:
    """Hellmann-Feynman slopes.

    At xi = 0 they must equal -n^2/2 (PathHermitian from n = 2, where its
    level 1 already splits at first order); elsewhere they are compared with
    central finite differences of the solver.
    """
    xi = 0.0 if xi is None else xi
    size = size or config.DEFAULT_SIZE
    cases = [(ModelKind.PATH_NON_HERMITIAN, n) for n in range(1, 5)] + [(ModelKind.PATH_HERMITIAN, n) for n in range(2, 5)]
    results = []
    for model, n in cases:
        cls = classes_for_level(n)[0]
        slope = hft_derivative(model, cls, xi, level_position(cls, n), size)
        if xi == 0.0:
            error, tolerance = abs(slope + n * n / 2.0), config.HFT_SLOPE_ATOL
            name = f"{model.value} n={n} dE/dxi + n^2/2 at xi=0"
        else:
            reference = _finite_difference(model, cls, n, xi, size)
            error, tolerance = abs(slope - reference) / abs(reference), config.HFT_FD_RTOL
            name = f"{model.value} n={n} HFT vs finite difference at xi={xi}"
        results.append(CheckResult("hft", name, error, tolerance, error <= tolerance))
    return results


def isospectral_suite(xi: Optional[float] = None, size: Optional[int] = None) -> List[CheckResult]:
    """Plain and sqrt(g)-weighted PathNonHermitian spectra agree."""
    size = size or config.MODEL2_TABLE_SIZE
    xi_values = ISOSPECTRAL_XI if xi is None else (xi,)
    results = []
    for value in xi_values:
        gap = isospectral_check(value, size, 4)
        results.append(CheckResult("isospectral", f"plain vs weighted at xi={value}, N={size}", gap, config.SPECTRAL_RTOL, gap <= config.SPECTRAL_RTOL))
    return results


def splitting_suite(xi: Optional[float] = None, size: Optional[int] = None) -> List[CheckResult]:
    """PathHermitian level n splits at order n. Ignores xi and size."""
    results = []
    for n, order, expected in SPLITTING_EXPECTED:
        found = splitting_order(n, order)
        # Unsplit levels report order + 1 as a lower bound.
        measured = order + 1 if found is None else found
        label = f"> {order}" if expected is None else str(expected)
        results.append(CheckResult("splitting", f"n={n} split order through J={order} (expected {label})", float(measured), 0.0, found == expected))
    return results


_SUITES: Dict[str, Callable[..., List[CheckResult]]] = {
    "degeneracy": degeneracy_suite,
    "conjecture": conjecture_suite,
    "hft": hft_suite,
    "isospectral": isospectral_suite,
    "splitting": splitting_suite,
}


def run_suite(name: str, xi: Optional[float] = None, size: Optional[int] = None) -> List[CheckResult]:
    """Runs one named suite, or every suite for 'all'."""
    if name == "all":
        names = SUITES
    elif name in _SUITES:
        names = (name,)
    else:
        raise PreconditionError(f"Unknown check suite {name!r}; choose from {', '.join(SUITES)} or all")
    results = []
    for suite in names:
        outcome = _SUITES[suite](xi, size)
        failed = sum(not result.passed for result in outcome)
        logger.info(f"Suite {suite}: {len(outcome) - failed} passed, {failed} failed")
        results.extend(outcome)
    return results
