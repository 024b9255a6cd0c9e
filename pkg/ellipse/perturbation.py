"""
Exact Rayleigh-Schroedinger series in powers of xi.

Expanding 1/g and 1/g^2 about xi = 0 gives, for j >= 1,

    H^(j) psi = (-1)^(j+1) [cos^{2j} psi'' - a j sin cos^{2j-1} psi']

with a = 1 (PathNonHermitian) or 2 (PathHermitian) and H^(0) psi = -psi''.
Each block is represented in the trigonometric basis {1, cos n phi} or
{sin n phi} without the 1/sqrt(pi) normalization: the matrices are a diagonal
similarity transform of the orthonormal ones, so diagonals, zero patterns and
eigenvalue series coincide while every entry stays rational.
"""
import itertools
import logging
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

from ellipse.exceptions import DomainError, NumericalFailure, PreconditionError
from ellipse.model import ModelKind, SymmetryClass, classes_for_level, level_position, unperturbed_levels, validate_xi
from ellipse.state import OperatorSeries, RationalSeries
from ellipse.trig import COS, SIN, TrigPolynomial

logger = logging.getLogger(__name__)

# Leibniz expansion is factorial in the block size.
MAX_SECULAR_BLOCK = 6

Matrix = Tuple[Tuple[Fraction, ...], ...]


def default_cutoff(level: int, order: int) -> int:
    """Largest Fourier index needed for exact coefficients of `level` through `order`."""
    return level + 2 * order + 2


def block_indices(cls: SymmetryClass, cutoff: int) -> Tuple[int, ...]:
    """Fourier indices of the class block up to and including `cutoff`."""
    first = unperturbed_levels(cls, 1)[0]
    if cutoff < first:
        raise PreconditionError(f"Cutoff {cutoff} leaves the {cls.label} block empty")
    return tuple(range(first, cutoff + 1, 2))


def _basis_polynomial(cls: SymmetryClass, n: int) -> TrigPolynomial:
    return TrigPolynomial.sine(n) if cls.has_sine else TrigPolynomial.cosine(n)


@lru_cache(maxsize=None)
def _operator_factors(model: ModelKind, k: int) -> Tuple[TrigPolynomial, TrigPolynomial]:
    """Multipliers of psi'' and psi' in H^(k)."""
    if k == 0:
        return TrigPolynomial.constant(-1), TrigPolynomial()
    sign = 1 if k % 2 else -1
    second = COS.power(2 * k) * sign
    first = SIN * COS.power(2 * k - 1) * (-sign * model.c1_factor * k)
    return second, first


def apply_order(model: ModelKind, k: int, psi: TrigPolynomial) -> TrigPolynomial:
    """H^(k) psi."""
    second, first = _operator_factors(model, k)
    d1 = psi.derivative()
    return second * d1.derivative() + first * d1


def _validate_order(order: int) -> int:
    if order < 0:
        raise PreconditionError(f"Perturbation order must be >= 0, got {order}")
    return order


@lru_cache(maxsize=None)
def expand_operator(model: ModelKind, cls: SymmetryClass, order: int, cutoff: int) -> OperatorSeries:
    """H^(0..order) of one block as exact matrices over the Fourier indices <= cutoff."""
    _validate_order(order)
    indices = block_indices(cls, cutoff)
    kind = "sin" if cls.has_sine else "cos"
    matrices = []
    for k in range(order + 1):
        columns = [apply_order(model, k, _basis_polynomial(cls, n)) for n in indices]
        matrices.append(tuple(tuple(column.coefficient(kind, row) for column in columns) for row in indices))
    logger.debug(f"Expanded {model.value} {cls.label} through order {order} on indices {indices}")
    return OperatorSeries(model=model, cls=cls, cutoff=cutoff, indices=indices, matrices=tuple(matrices))


def _transpose(matrix: Matrix) -> Matrix:
    return tuple(zip(*matrix))


def _apply(matrix: Matrix, vector: Sequence[Fraction]) -> List[Fraction]:
    support = [c for c, value in enumerate(vector) if value]
    return [sum((row[c] * vector[c] for c in support), Fraction(0)) for row in matrix]


def _prepare(model: ModelKind, cls: SymmetryClass, level: int, order: int, cutoff: Optional[int]) -> Tuple[OperatorSeries, int]:
    _validate_order(order)
    level_position(cls, level)
    cutoff = default_cutoff(level, order) if cutoff is None else cutoff
    if cutoff < level:
        raise PreconditionError(f"Cutoff {cutoff} is below the level n={level}")
    operator = expand_operator(model, cls, order, cutoff)
    return operator, operator.indices.index(level)


@lru_cache(maxsize=None)
def eigenvalue_series(model: ModelKind, cls: SymmetryClass, level: int, order: int, cutoff: Optional[int] = None, adjoint: bool = False) -> RationalSeries:
    """E^(0..order) of the block level with unperturbed energy level^2.

    Non-degenerate recursion with intermediate normalization <p|psi> = 1,
    which does not need H^(k) to be symmetric. With `adjoint` the transposed
    matrices are used, i.e. the series of the adjoint operator. Coefficients
    are exact as long as cutoff >= level + 2 * order.
    """
    operator, p = _prepare(model, cls, level, order, cutoff)
    matrices = [_transpose(m) for m in operator.matrices] if adjoint else list(operator.matrices)
    size = len(operator.indices)
    unperturbed = [Fraction(n * n) for n in operator.indices]

    start = [Fraction(0)] * size
    start[p] = Fraction(1)
    corrections = [start]
    energies = [unperturbed[p]]
    for j in range(1, order + 1):
        images = [_apply(matrices[k], corrections[j - k]) for k in range(1, j + 1)]
        energies.append(sum((image[p] for image in images), Fraction(0)))
        if j == order:
            break
        correction = [Fraction(0)] * size
        for q in range(size):
            if q == p:
                continue
            total = sum((energies[k] * corrections[j - k][q] - images[k - 1][q] for k in range(1, j + 1)), Fraction(0))
            correction[q] = total / (unperturbed[q] - unperturbed[p])
        corrections.append(correction)

    series = RationalSeries(model=model, cls=cls, level=level, order=order, coefficients=tuple(energies))
    logger.info(f"{model.value} {cls.label} n={level} series: {series.serialize()}")
    return series


def _series_product(a: Sequence[Fraction], b: Sequence[Fraction], order: int) -> List[Fraction]:
    result = [Fraction(0)] * (order + 1)
    for i, x in enumerate(a[: order + 1]):
        if x:
            for j, y in enumerate(b[: order + 1 - i]):
                result[i + j] += x * y
    return result


def _parity(permutation: Tuple[int, ...]) -> int:
    inversions = sum(1 for i, j in itertools.combinations(range(len(permutation)), 2) if permutation[i] > permutation[j])
    return -1 if inversions % 2 else 1


def _determinant(entries: List[List[List[Fraction]]], order: int) -> List[Fraction]:
    """Leibniz determinant of a matrix of truncated xi-series."""
    size = len(entries)
    result = [Fraction(0)] * (order + 1)
    for permutation in itertools.permutations(range(size)):
        product = [Fraction(1)] + [Fraction(0)] * order
        for row, column in enumerate(permutation):
            product = _series_product(product, entries[row][column], order)
            if not any(product):
                break
        sign = _parity(permutation)
        result = [r + sign * t for r, t in zip(result, product)]
    return result


def secular_series(model: ModelKind, cls: SymmetryClass, level: int, order: int, cutoff: int) -> RationalSeries:
    """Series from order-by-order vanishing of det(H(xi) - E(xi)) on a truncated block.

    The xi^j coefficient of the determinant is affine in E^(j), so each
    coefficient follows from two evaluations of it.
    """
    operator, p = _prepare(model, cls, level, order, cutoff)
    size = len(operator.indices)
    if size > MAX_SECULAR_BLOCK:
        raise PreconditionError(f"Secular substitution supports blocks up to {MAX_SECULAR_BLOCK}, got {size}")

    def shifted(energy: List[Fraction], depth: int) -> List[List[List[Fraction]]]:
        entries = []
        for r in range(size):
            row = []
            for c in range(size):
                element = [operator.matrices[k][r][c] for k in range(depth + 1)]
                if r == c:
                    element = [e - energy[k] for k, e in enumerate(element)]
                row.append(element)
            entries.append(row)
        return entries

    energy = [Fraction(level * level)]
    for j in range(1, order + 1):
        at_zero = _determinant(shifted(energy + [Fraction(0)], j), j)[j]
        at_one = _determinant(shifted(energy + [Fraction(1)], j), j)[j]
        slope = at_one - at_zero
        if slope == 0:
            raise NumericalFailure(f"Secular coefficient at order {j} does not depend on E^({j})")
        energy.append(-at_zero / slope)
    return RationalSeries(model=model, cls=cls, level=level, order=order, coefficients=tuple(energy))


def evaluate_series(series: RationalSeries, xi: float) -> float:
    """Horner evaluation of the truncated series."""
    value = 0.0
    for coefficient in reversed(series.coefficients):
        value = value * xi + float(coefficient)
    return value


def first_order_energy(n: int, xi: float) -> float:
    return n * n * (1.0 - xi / 2.0)


def improved_energy(n: int, xi: float) -> float:
    """n^2 / sqrt(1 + xi); same slope at xi = 0 as the first-order estimate."""
    try:
        xi = validate_xi(xi)
    except DomainError:
        raise DomainError(f"Improved energy is singular for xi={xi} <= -1") from None
    return n * n / (1.0 + xi) ** 0.5


def _exponential_classes(n: int) -> Tuple[SymmetryClass, SymmetryClass]:
    """(cosine class, sine class) holding the unperturbed level n >= 1."""
    if n < 1:
        raise PreconditionError(f"Level must be >= 1, got {n}")
    if n % 2:
        return SymmetryClass.PM, SymmetryClass.MM
    return SymmetryClass.PP, SymmetryClass.MP


def exponential_pair_elements(model: ModelKind, n: int) -> Tuple[Fraction, Fraction]:
    """(<e^{in}|H^(1)|e^{in}>, <e^{-in}|H^(1)|e^{in}>) per unit norm.

    Built from the H^(1) diagonals a (cosine block) and b (sine block) at
    Fourier index n: the diagonal element is (a + b)/2 and the cross element
    (a - b)/2.
    """
    cosine_cls, sine_cls = _exponential_classes(n)
    diagonals = []
    for cls in (cosine_cls, sine_cls):
        operator = expand_operator(model, cls, 1, n + 2)
        position = operator.indices.index(n)
        diagonals.append(operator.matrices[1][position][position])
    a, b = diagonals
    return (a + b) / 2, (a - b) / 2


def splitting_order(n: int, order: int) -> Optional[int]:
    """First order at which the two PathHermitian series of level n differ.

    None means the level is not split through `order`.
    """
    if n < 1:
        raise PreconditionError(f"Splitting needs a level n >= 1, got {n}")
    if order < 1:
        raise PreconditionError(f"Splitting needs an order >= 1, got {order}")
    first, second = (eigenvalue_series(ModelKind.PATH_HERMITIAN, cls, n, order) for cls in classes_for_level(n))
    for j, (a, b) in enumerate(zip(first.coefficients, second.coefficients)):
        if a != b:
            logger.info(f"Level n={n} splits at order {j}: {a} vs {b}")
            return j
    logger.info(f"Level n={n} not split through order {order}")
    return None
