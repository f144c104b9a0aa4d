from __future__ import annotations

import json

import pytest

from resint import data_path
from resint.bipoly import Field, RingSpec
from resint.en import LinearMatrixY
from resint.oracle import IdealSpec
from resint.rees import PresentationMatrix, build_model

# hand-entered golden matrices (n=3, p=5 banded example; 2x2 generic example)
BANDED_PHI = [["y1", "y2", "y3", "y4"], ["y2", "y3", "y4", "y5"], ["y3", "y4", "y5", "0"]]
BANDED_PRESENTATION = [
    ["x1", "0", "0", "0"],
    ["x2", "x1", "0", "0"],
    ["x3", "x2", "x1", "0"],
    ["0", "x3", "x2", "x1"],
    ["0", "0", "x3", "x2"],
]
SMALL_PHI = [["y1", "y3"], ["y2", "y4"]]

ACCEPTANCE_LINES: list[str] = []


def matrix(ring, rows):
    return [[ring.parse(s) for s in r] for r in rows]


@pytest.fixture
def ring35():
    return RingSpec(3, 5)


@pytest.fixture
def ring24():
    return RingSpec(2, 4)


@pytest.fixture
def banded_phi(ring35):
    return LinearMatrixY(ring35, matrix(ring35, BANDED_PHI))


@pytest.fixture
def small_phi(ring24):
    return LinearMatrixY(ring24, matrix(ring24, SMALL_PHI))


@pytest.fixture
def banded_presentation(ring35):
    return PresentationMatrix(ring35, matrix(ring35, BANDED_PRESENTATION))


@pytest.fixture(scope="session")
def banded_model():
    ring = RingSpec(3, 5)
    return build_model(PresentationMatrix(ring, matrix(ring, BANDED_PRESENTATION)))


def load_ideal(name: str, field: Field | None = None) -> IdealSpec:
    return IdealSpec.from_json(json.loads(data_path(name).read_text()), field)


@pytest.fixture
def banded_ideal():
    return load_ideal("banded_ideal.json")


@pytest.fixture
def small_ideal():
    return load_ideal("generic2x2_ideal.json")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
