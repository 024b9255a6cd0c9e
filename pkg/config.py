"""
Configuration module for numerical tolerances and run defaults.
"""
import logging
import os
from typing import Any, Dict

import toml

logger = logging.getLogger(__name__)

# --- Load settings from TOML file ---
DEFAULT_SETTINGS_FILE = os.path.join(os.path.dirname(os.path.abspath(__file__)), "settings.toml")

def load_toml_settings(settings_file: str = DEFAULT_SETTINGS_FILE) -> Dict[str, Any]:
    """Loads settings from a TOML file."""
    try:
        with open(settings_file, "r", encoding="utf-8") as f:
            return toml.load(f)
    except FileNotFoundError:
        logger.warning(f"Settings file '{settings_file}' not found. Using default values where applicable.")
        return {}
    except toml.TomlDecodeError:
        logger.warning(f"Could not decode TOML from '{settings_file}'. Check for syntax errors.")
        return {}

_toml_settings = load_toml_settings()

# --- General Settings ---
APP_NAME: str = _toml_settings.get("general", {}).get("app_name", "Elliptical Path Spectra")
APP_VERSION: str = _toml_settings.get("general", {}).get("version", "1.0.0")

# --- Quadrature Settings ---
MIN_QUADRATURE_NODES: int = _toml_settings.get("quadrature", {}).get("min_nodes", 64)
NODES_PER_BASIS_FUNCTION: int = _toml_settings.get("quadrature", {}).get("nodes_per_basis_function", 8)
NODE_OFFSET: int = _toml_settings.get("quadrature", {}).get("node_offset", 32)
MAX_QUADRATURE_NODES: int = _toml_settings.get("quadrature", {}).get("max_nodes", 16384)
INTEGRAL_START_NODES: int = _toml_settings.get("quadrature", {}).get("integral_start_nodes", 16)
INTEGRAL_RTOL: float = _toml_settings.get("quadrature", {}).get("integral_rtol", 1e-13)
INTEGRAL_MAX_NODES: int = _toml_settings.get("quadrature", {}).get("integral_max_nodes", 2 ** 16)

# --- Precision Settings ---
BASE_DIGITS: int = _toml_settings.get("precision", {}).get("base_digits", 24)
DIGITS_PER_BASIS_FUNCTION: int = _toml_settings.get("precision", {}).get("digits_per_basis_function", 2)

# --- Solver Settings ---
IMAG_TOL: float = _toml_settings.get("solver", {}).get("imag_tol", 1e-8)
PAIRING_TOL: float = _toml_settings.get("solver", {}).get("pairing_tol", 1e-8)
MAX_BASIS_SIZE: int = _toml_settings.get("solver", {}).get("max_basis_size", 24)
XI_GUARD: float = _toml_settings.get("solver", {}).get("xi_guard", 1e-12)
BIORTHOGONALITY_TOL: float = _toml_settings.get("solver", {}).get("biorthogonality_tol", 1e-10)
EIGENVECTOR_MATCH_TOL: float = _toml_settings.get("solver", {}).get("eigenvector_match_tol", 1e-9)
ZERO_MODE_TOL: float = _toml_settings.get("solver", {}).get("zero_mode_tol", 1e-10)

# --- Default run parameters ---
DEFAULT_SIZE: int = _toml_settings.get("defaults", {}).get("size", 12)
DEFAULT_LEVELS: int = _toml_settings.get("defaults", {}).get("levels", 4)
MODEL1_TABLE_SIZE: int = _toml_settings.get("defaults", {}).get("model1_table_size", 10)
MODEL2_TABLE_SIZE: int = _toml_settings.get("defaults", {}).get("model2_table_size", 14)

# --- Check Suite Settings ---
SPECTRAL_RTOL: float = _toml_settings.get("checks", {}).get("spectral_rtol", 1e-8)
HFT_SLOPE_ATOL: float = _toml_settings.get("checks", {}).get("hft_slope_atol", 1e-9)
HFT_FD_RTOL: float = _toml_settings.get("checks", {}).get("hft_fd_rtol", 1e-6)
FD_STEP: float = _toml_settings.get("checks", {}).get("fd_step", 1e-4)

# --- Output Settings ---
TEXT_DIGITS: int = _toml_settings.get("output", {}).get("text_digits", 10)
OUTPUT_DIR: str = _toml_settings.get("output", {}).get("output_dir", "runs")

# --- Logging Settings ---
LOG_LEVEL: str = _toml_settings.get("logging", {}).get("log_level", "WARNING")

def working_precision(size: int) -> int:
    """Decimal digits used for a Ritz system of dimension `size`."""
    return BASE_DIGITS + DIGITS_PER_BASIS_FUNCTION * size

def tolerances() -> Dict[str, float]:
    """Tolerances reported in JSON output metadata."""
    return {
        "imag_tol": IMAG_TOL,
        "pairing_tol": PAIRING_TOL,
        "zero_mode_tol": ZERO_MODE_TOL,
        "biorthogonality_tol": BIORTHOGONALITY_TOL,
        "spectral_rtol": SPECTRAL_RTOL,
        "hft_slope_atol": HFT_SLOPE_ATOL,
        "hft_fd_rtol": HFT_FD_RTOL,
    }
