"""
Tests for the Hellmann-Feynman, isospectral and scan instruments.
"""
import numpy as np
import pytest

from ellipse.analysis import (
    hft_derivative,
    isospectral_check,
    scan,
    scan_grid,
    truncation_errors,
    weighted_system,
)
from ellipse.exceptions import DomainError, PreconditionError
from ellipse.model import ModelKind, SymmetryClass, classes_for_level, level_position
from ellipse.solver import solve, solve_block

M1, M2 = ModelKind.PATH_NON_HERMITIAN, ModelKind.PATH_HERMITIAN
PP, PM, MP, MM = SymmetryClass.PP, SymmetryClass.PM, SymmetryClass.MP, SymmetryClass.MM


def finite_difference(model, cls, index, xi, size=12, step=1e-4):
    plus = solve_block(model, cls, xi + step, size, index + 1).eigenvalues[index]
    minus = solve_block(model, cls, xi - step, size, index + 1).eigenvalues[index]
    return (plus - minus) / (2 * step)


class TestHellmannFeynman:
    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_model1_slope_at_origin(self, n):
        cls = classes_for_level(n)[0]
        slope = hft_derivative(M1, cls, 0.0, level_position(cls, n), 10)
        assert slope == pytest.approx(-n * n / 2, abs=1e-9)

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_model2_slope_at_origin(self, n):
        for cls in classes_for_level(n):
            slope = hft_derivative(M2, cls, 0.0, level_position(cls, n), 10)
            assert slope == pytest.approx(-n * n / 2, abs=1e-9), f"{cls.label} n={n}"

    def test_model2_first_level_slopes_split(self):
        assert hft_derivative(M2, MM, 0.0, 0, 8) == pytest.approx(-0.75, abs=1e-9)
        assert hft_derivative(M2, PM, 0.0, 0, 8) == pytest.approx(-0.25, abs=1e-9)

    @pytest.mark.parametrize("xi", [-0.4, 0.7, 2.0])
    def test_zero_mode_is_flat(self, xi):
        assert hft_derivative(M2, PP, xi, 0, 8) == pytest.approx(0.0, abs=1e-12)

    def test_model1_matches_finite_difference(self):
        slope = hft_derivative(M1, PM, 1.0, 0, 12)
        assert slope == pytest.approx(finite_difference(M1, PM, 0, 1.0), rel=1e-6)

    @pytest.mark.slow
    @pytest.mark.parametrize("model_kind", [M1, M2], ids=lambda m: m.value)
    def test_random_points_match_finite_differences(self, model_kind):
        rng = np.random.default_rng(20240601)
        classes = list(SymmetryClass)
        for _ in range(4):
            xi = float(rng.uniform(-0.5, 1.5))
            cls = classes[int(rng.integers(0, 4))]
            index = int(rng.integers(1 if cls is PP else 0, 3))
            slope = hft_derivative(model_kind, cls, xi, index, 8)
            reference = finite_difference(model_kind, cls, index, xi, size=8)
            assert slope == pytest.approx(reference, rel=1e-6), f"{cls.label} index={index} xi={xi}"

    def test_negative_level_rejected(self):
        with pytest.raises(PreconditionError):
            hft_derivative(M1, PP, 0.5, -1, 6)


class TestIsospectral:
    def test_weighted_system_is_symmetric_definite(self):
        system = weighted_system(PM, 1.0, 6)
        assert system.scalar_product == "weighted"
        assert system.is_symmetric_definite
        assert system.model is M1

    def test_weighted_formulation_reproduces_table(self, printed):
        spectrum = solve(weighted_system(PM, 1.0, 14), 4)
        for energy, entry in zip(spectrum.eigenvalues, ["0.6762823414", "6.086541072", "16.90705853", "33.13783472"]):
            assert printed(energy, entry)

    def test_circle_is_trivially_isospectral(self):
        assert isospectral_check(0.0, 8, 4) <= 1e-12

    @pytest.mark.parametrize("xi", [-0.5, 0.5, 1.0, 2.0])
    def test_plain_and_weighted_spectra_agree(self, xi):
        assert isospectral_check(xi, 14, 4) <= 1e-8


class TestScan:
    def test_grid_includes_endpoints(self):
        grid = scan_grid(-0.5, 0.5, 11)
        assert grid[0] == -0.5 and grid[-1] == 0.5
        assert len(grid) == 11
        assert grid[5] == pytest.approx(0.0, abs=1e-15)

    def test_grid_preconditions(self):
        with pytest.raises(PreconditionError):
            scan_grid(0.5, -0.5, 3)
        with pytest.raises(PreconditionError):
            scan_grid(-0.5, 0.5, 0)
        with pytest.raises(PreconditionError):
            scan_grid(-0.5, 0.5, 1)
        with pytest.raises(DomainError):
            scan_grid(-1.0, 0.5, 3)
        assert scan_grid(0.25, 0.25, 1) == [0.25]

    def test_model1_scan_rows(self):
        grid = scan(M1, -0.5, 0.5, 3, 12, 4)
        assert grid.xi_values == [-0.5, 0.0, 0.5]
        assert len(grid.rows) == 3 * 8, "levels 1..4, two classes each"
        assert grid.rows[0].xi == -0.5 and grid.rows[-1].xi == 0.5
        for row in (r for r in grid.rows if r.xi == 0.0):
            assert row.energy == pytest.approx(row.n ** 2, abs=1e-10)
            assert row.pt_first_order == row.pt_improved == row.n ** 2
            assert row.pt_series4 is None

    def test_rows_sorted_by_energy_within_each_point(self):
        grid = scan(M1, 0.5, 0.5, 1, 12, 4)
        energies = [row.energy for row in grid.rows]
        assert energies == sorted(energies)

    @pytest.mark.parametrize("xi", [-0.5, 0.5])
    def test_improved_curve_beats_first_order(self, xi):
        grid = scan(M1, xi, xi, 1, 12, 4)
        for row in grid.rows:
            if row.n in (3, 4):
                assert abs(row.pt_improved - row.energy) < abs(row.pt_first_order - row.energy)

    def test_model2_scan_shows_splitting(self):
        grid = scan(M2, -0.5, 0.5, 11, 14, 2)
        for xi in grid.xi_values:
            first = {row.cls: row.energy for row in grid.rows if row.xi == xi and row.n == 1}
            if abs(xi) > 1e-12:
                assert abs(first[MM] - first[PM]) > 0
        series_rows = [row for row in grid.rows if row.pt_series4 is not None]
        assert {row.n for row in series_rows} == {1, 2}

    def test_scan_is_deterministic(self):
        first = scan(M2, -0.2, 0.2, 3, 8, 2)
        second = scan(M2, -0.2, 0.2, 3, 8, 2)
        assert first.rows == second.rows


class TestTruncationOrderLaw:
    @pytest.mark.parametrize("order", [2, 4])
    def test_error_scales_with_next_power(self, order):
        xi_values = [1e-2, 1e-3, 1e-4]
        errors = truncation_errors(M1, PM, 1, order, xi_values, 12)
        scaled = [error / xi ** (order + 1) for error, xi in zip(errors, xi_values)]
        assert max(scaled) <= 2 * min(scaled)
        assert min(scaled) > 0
