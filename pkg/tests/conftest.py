"""
Configuration for pytest - shared fixtures and reference data.
"""
import sys
from fractions import Fraction as F
from pathlib import Path

import pytest

# Add the project root directory to the Python path
project_root = Path(__file__).parent.parent
if str(project_root) not in sys.path:
    sys.path.insert(0, str(project_root))

from ellipse.model import ModelKind, SymmetryClass  # noqa: E402

PP, PM, MP, MM = SymmetryClass.PP, SymmetryClass.PM, SymmetryClass.MP, SymmetryClass.MM

# PathNonHermitian, xi = 1, 4 levels per class, rows N = 5..10
MODEL1_TABLES = {
    PP: {
        5: ["0", "2.705129367", "10.82054064", "24.39391541"],
        6: ["0", "2.705129365", "10.82051747", "24.34655624"],
        7: ["0", "2.705129365", "10.82051746", "24.34616541"],
        8: ["0", "2.705129365", "10.82051746", "24.34616429"],
        9: ["0", "2.705129365", "10.82051746", "24.34616429"],
        10: ["0", "2.705129365", "10.82051746", "24.34616429"],
    },
    PM: {
        5: ["0.6762823414", "6.086541072", "16.9071682", "33.23425983"],
        6: ["0.6762823414", "6.086541072", "16.90705871", "33.13897689"],
        7: ["0.6762823414", "6.086541072", "16.90705853", "33.13783974"],
        8: ["0.6762823414", "6.086541072", "16.90705853", "33.13783474"],
        9: ["0.6762823414", "6.086541072", "16.90705853", "33.13783472"],
        10: ["0.6762823414", "6.086541072", "16.90705853", "33.13783472"],
    },
    MP: {
        5: ["2.705129365", "10.82051747", "24.34655624", "43.45817399"],
        6: ["2.705129365", "10.82051746", "24.34616541", "43.28492974"],
        7: ["2.705129365", "10.82051746", "24.34616429", "43.28208765"],
        8: ["2.705129365", "10.82051746", "24.34616429", "43.2820699"],
        9: ["2.705129365", "10.82051746", "24.34616429", "43.28206985"],
        10: ["2.705129365", "10.82051746", "24.34616429", "43.28206985"],
    },
}
# (-,-) coincides with (+,-) row for row
MODEL1_TABLES[MM] = MODEL1_TABLES[PM]

# PathHermitian, xi = 1, N = 14
MODEL2_TABLE = {
    PP: ["0", "2.642467139", "10.81697747", "24.35498746", "43.29263030"],
    MP: ["2.79431927", "10.84750548", "24.35945236", "43.29320664"],
    PM: ["0.7959412608", "6.135514729", "16.92430649", "33.14957349"],
    MM: ["0.5700037793", "6.062735007", "16.91237359", "33.1479519"],
}

MODEL1_SERIES = {
    1: [F(1), F(-1, 2), F(9, 32), F(-11, 64), F(917, 8192)],
    2: [F(4), F(-2), F(9, 8), F(-11, 16), F(917, 2048)],
    3: [F(9), F(-9, 2), F(81, 32), F(-99, 64), F(8253, 8192)],
    4: [F(16), F(-8), F(9, 2), F(-11, 4), F(917, 512)],
    5: [F(25), F(-25, 2), F(225, 32), F(-275, 64), F(22925, 8192)],
    6: [F(36), F(-18), F(81, 8), F(-99, 16), F(8253, 2048)],
}

MODEL2_SERIES = {
    (MM, 1): [F(1), F(-3, 4), F(71, 128), F(-1655, 4096), F(113807, 393216)],
    (PM, 1): [F(1), F(-1, 4), F(7, 128), F(-41, 4096), F(527, 393216)],
    (PP, 2): [F(4), F(-2), F(11, 12), F(-3, 8), F(1781, 13824)],
    (MP, 2): [F(4), F(-2), F(17, 12), F(-9, 8), F(12533, 13824)],
    (MM, 3): [F(9), F(-9, 2), F(657, 256), F(-7281, 4096), F(7505613, 5242880)],
    (PM, 3): [F(9), F(-9, 2), F(657, 256), F(-5823, 4096), F(3773133, 5242880)],
    (PP, 4): [F(16), F(-8), F(68, 15), F(-14, 5), F(5878, 3375)],
    (MP, 4): [F(16), F(-8), F(68, 15), F(-14, 5), F(6628, 3375)],
    (MM, 5): [F(25), F(-25, 2), F(5425, 768), F(-2225, 512), F(566374475, 198180864)],
    (PM, 5): [F(25), F(-25, 2), F(5425, 768), F(-2225, 512), F(566374475, 198180864)],
}


def matches_printed(value: float, printed: str) -> bool:
    """True if value agrees with a table entry to within one unit of its last printed digit."""
    decimals = len(printed.split(".")[1]) if "." in printed else 10
    return abs(value - float(printed)) <= 1.01 * 10.0 ** (-decimals)


@pytest.fixture
def model1_tables():
    return MODEL1_TABLES


@pytest.fixture
def model2_table():
    return MODEL2_TABLE


@pytest.fixture
def model1_series():
    return MODEL1_SERIES


@pytest.fixture
def model2_series():
    return MODEL2_SERIES


@pytest.fixture
def printed():
    """Comparison against printed table entries."""
    return matches_printed


@pytest.fixture(params=list(ModelKind), ids=lambda m: m.value)
def model(request):
    return request.param


@pytest.fixture(params=list(SymmetryClass), ids=lambda c: c.value)
def symmetry_class(request):
    return request.param
