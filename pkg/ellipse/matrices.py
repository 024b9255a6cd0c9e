"""
Overlap and Hamiltonian matrix elements in the monomial class bases.

S is assembled from exact Wallis integrals; H from the periodic trapezoid
rule, which converges spectrally for the smooth 2pi-periodic integrands
involved. The Ritz assembly runs in mpmath at a precision that grows with N
because the monomial overlap matrix is severely ill-conditioned. Every
extended-precision computation owns a private MPContext; the global
`mpmath.mp` precision is never changed.
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, List, Optional

import numpy as np
from mpmath import MPContext

import config
from ellipse.exceptions import DomainError, NonConvergenceError, PreconditionError
from ellipse.model import (
    ModelKind,
    SymmetryClass,
    basis_values,
    coefficient_values,
    metric_values,
    validate_xi,
)
from ellipse.state import RitzSystem

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class QuadratureRule:
    """M equally spaced nodes 2 pi j / M with uniform weight 2 pi / M."""
    node_count: int

    def __post_init__(self):
        if self.node_count < 16 or self.node_count % 2:
            raise PreconditionError(f"Quadrature needs an even node count >= 16, got {self.node_count}")

    @property
    def nodes(self) -> np.ndarray:
        return 2.0 * np.pi * np.arange(self.node_count) / self.node_count

    @property
    def weight(self) -> float:
        return 2.0 * np.pi / self.node_count


@dataclass
class NodeTables:
    """Basis values and derivatives at the quadrature nodes, as numbers of the context that built them."""
    cos: List[Any]
    sin: List[Any]
    values: List[List[Any]]
    first: List[List[Any]]
    second: List[List[Any]]
    weight: Any


def working_context(precision: int) -> MPContext:
    """A fresh mpmath context at `precision` decimal digits, owned by one computation."""
    context = MPContext()
    context.dps = precision
    return context


def node_floor(size: int) -> int:
    return max(config.MIN_QUADRATURE_NODES, config.NODES_PER_BASIS_FUNCTION * size + config.NODE_OFFSET)


def _require_resolution(rule: QuadratureRule, i: int, j: int) -> None:
    if i < 0 or j < 0:
        raise PreconditionError(f"Basis indices must be non-negative, got ({i}, {j})")
    floor = node_floor(max(i, j) + 1)
    if rule.node_count < floor:
        raise PreconditionError(f"{rule.node_count} nodes cannot resolve basis index {max(i, j)}; need at least {floor}")


def node_count(size: int, xi: float, precision: Optional[int] = None) -> int:
    """Trapezoid node count for a size-N assembly at deformation xi.

    Never below the floor max(64, 8N + 32). When 1/g has a complex pole at
    distance y from the real axis (cosh 2y = |(2 + xi)/xi|), the count is
    raised so that exp(-y (M - 4N - 4)) drops below the working precision.
    A pole distance that rounds to zero (huge |xi|) goes straight to the cap.
    """
    floor = node_floor(size)
    if xi == 0.0:
        return floor
    precision = precision or config.working_precision(size)
    distance = 0.5 * math.acosh(abs((2.0 + xi) / xi))
    if distance > 0.0 and math.isfinite(distance):
        needed = 4 * size + 4 + math.ceil(precision * math.log(10.0) / distance)
        count = max(floor, needed + needed % 2)
    else:
        count = config.MAX_QUADRATURE_NODES + 1
    if count > config.MAX_QUADRATURE_NODES:
        logger.warning(f"Quadrature for xi={xi} wants {count} nodes; capped at {config.MAX_QUADRATURE_NODES}")
        count = config.MAX_QUADRATURE_NODES
    return count


def quadrature_rule(size: int, xi: float) -> QuadratureRule:
    return QuadratureRule(node_count(size, xi))


@lru_cache(maxsize=None)
def wallis(m: int) -> Fraction:
    """Integral of cos^{2m} over [0, 2 pi], as a multiple of pi."""
    return Fraction(2 * math.comb(2 * m, m), 4 ** m)


def overlap_fraction(cls: SymmetryClass, i: int, j: int) -> Fraction:
    """S_ij / pi, exact."""
    if i < 0 or j < 0:
        raise PreconditionError(f"Basis indices must be non-negative, got ({i}, {j})")
    m = i + j
    if cls is SymmetryClass.PP:
        return wallis(m)
    if cls is SymmetryClass.PM:
        return wallis(m + 1)
    if cls is SymmetryClass.MP:
        # sin^2 cos^{2m+2} = cos^{2m+2} - cos^{2m+4}
        return wallis(m + 1) - wallis(m + 2)
    return wallis(m) - wallis(m + 1)


def overlap_element(cls: SymmetryClass, i: int, j: int) -> float:
    return math.pi * float(overlap_fraction(cls, i, j))


def hamiltonian_element(model: ModelKind, cls: SymmetryClass, xi: float, i: int, j: int, rule: QuadratureRule) -> float:
    """Quadrature value of the integral of phi_i (-c2 phi_j'' - c1 phi_j'), in double precision."""
    xi = validate_xi(xi)
    _require_resolution(rule, i, j)
    phi = rule.nodes
    c, s = np.cos(phi), np.sin(phi)
    c2, c1 = coefficient_values(model, xi, c, s)
    f_i = basis_values(cls, i, c, s)[0]
    _, d1, d2 = basis_values(cls, j, c, s)
    return float(rule.weight * np.sum(f_i * -(c2 * d2 + c1 * d1)))


def by_parts_element(cls: SymmetryClass, xi: float, i: int, j: int, rule: QuadratureRule) -> float:
    """PathHermitian element in integrated-by-parts form: integral of phi_i' phi_j' / g."""
    xi = validate_xi(xi)
    _require_resolution(rule, i, j)
    phi = rule.nodes
    c, s = np.cos(phi), np.sin(phi)
    d_i = basis_values(cls, i, c, s)[1]
    d_j = basis_values(cls, j, c, s)[1]
    return float(rule.weight * np.sum(d_i * d_j / metric_values(xi, c)))


def node_tables(context: MPContext, cls: SymmetryClass, size: int, count: int) -> NodeTables:
    """Tabulates the first `size` family members at `count` nodes in `context`."""
    two_pi = 2 * context.pi
    cosines, sines = [], []
    values = [[None] * count for _ in range(size)]
    first = [[None] * count for _ in range(size)]
    second = [[None] * count for _ in range(size)]
    for node in range(count):
        phi = two_pi * node / count
        c, s = context.cos(phi), context.sin(phi)
        cosines.append(c)
        sines.append(s)
        for k in range(size):
            values[k][node], first[k][node], second[k][node] = basis_values(cls, k, c, s)
    return NodeTables(cos=cosines, sin=sines, values=values, first=first, second=second, weight=two_pi / count)


def gram(context: MPContext, left: List[List[Any]], right: List[List[Any]], weight: Any) -> Any:
    """Matrix of weight * sum_nodes left[i] * right[j]."""
    size = len(left)
    matrix = context.matrix(size, size)
    for i in range(size):
        for j in range(size):
            matrix[i, j] = weight * context.fdot(left[i], right[j])
    return matrix


def exact_overlap(context: MPContext, cls: SymmetryClass, size: int) -> Any:
    matrix = context.matrix(size, size)
    for i in range(size):
        for j in range(size):
            q = overlap_fraction(cls, i, j)
            matrix[i, j] = context.pi * context.mpf(q.numerator) / q.denominator
    return matrix


def validate_size(size: int) -> int:
    if size < 1:
        raise DomainError(f"Basis size must be >= 1, got {size}")
    if size > config.MAX_BASIS_SIZE:
        raise DomainError(f"Basis size {size} exceeds the cap {config.MAX_BASIS_SIZE}")
    return size


def build_system(model: ModelKind, cls: SymmetryClass, xi: float, size: int, nodes: Optional[int] = None) -> RitzSystem:
    """Assembles H (quadrature) and S (exact) for the first `size` members of the class family.

    `nodes` overrides the automatic trapezoid node count; it must be even and
    at least the resolution floor for `size`.
    """
    xi = validate_xi(xi)
    validate_size(size)
    precision = config.working_precision(size)
    if nodes is None:
        count = node_count(size, xi, precision)
    else:
        count = QuadratureRule(nodes).node_count
        if count < node_floor(size):
            raise PreconditionError(f"{count} nodes are below the floor {node_floor(size)} for N={size}")
    logger.debug(f"Building {model.value} {cls.label} system: xi={xi}, N={size}, M={count}, dps={precision}")
    context = working_context(precision)
    tables = node_tables(context, cls, size, count)
    xi_mp = context.mpf(xi)
    applied = [[None] * count for _ in range(size)]
    for node in range(count):
        c2, c1 = coefficient_values(model, xi_mp, tables.cos[node], tables.sin[node])
        for k in range(size):
            applied[k][node] = -(c2 * tables.second[k][node] + c1 * tables.first[k][node])
    h_matrix = gram(context, tables.values, applied, tables.weight)
    s_matrix = exact_overlap(context, cls, size)
    return RitzSystem(
        model=model,
        cls=cls,
        xi=xi,
        size=size,
        h_matrix=h_matrix,
        s_matrix=s_matrix,
        precision=precision,
        node_count=count,
    )


def _periodic_sum(m: int, p: int, xi: float, count: int) -> float:
    phi = 2.0 * np.pi * np.arange(count) / count
    c = np.cos(phi)
    return float(2.0 * np.pi / count * np.sum(c ** m / metric_values(xi, c) ** p))


def trig_rational_integral(m: int, p: int, xi: float) -> float:
    """Integral over [0, 2 pi] of cos^m (1 + xi cos^2)^{-p}, by trapezoid doubling."""
    if m < 0 or m % 2:
        raise PreconditionError(f"m must be a non-negative even integer, got {m}")
    if p not in (1, 2):
        raise PreconditionError(f"p must be 1 or 2, got {p}")
    xi = validate_xi(xi)
    count = config.INTEGRAL_START_NODES
    previous = _periodic_sum(m, p, xi, count)
    while count < config.INTEGRAL_MAX_NODES:
        count *= 2
        current = _periodic_sum(m, p, xi, count)
        if abs(current - previous) <= config.INTEGRAL_RTOL * abs(current):
            logger.debug(f"trig_rational_integral(m={m}, p={p}, xi={xi}) converged with M={count}")
            return current
        previous = current
    raise NonConvergenceError(f"Trapezoid doubling did not reach rtol={config.INTEGRAL_RTOL} for m={m}, p={p}", size=count, xi=xi)
