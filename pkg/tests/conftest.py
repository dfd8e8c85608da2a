from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

from deeproc import ScoreDataset, build_curve

DATA_DIR = Path(__file__).parent / "data"
FIXTURE_CSV = DATA_DIR / "fixture.csv"

# Hand-enumerated values for pos={0.9, 0.8, 0.4}, neg={0.7, 0.3, 0.2}.
F = Fraction
FIXTURE_POINTS = [(0, 0), (0, F(1, 3)), (0, F(2, 3)), (F(1, 3), F(2, 3)), (F(1, 3), 1), (F(2, 3), 1), (1, 1)]
FIXTURE_AUC = F(8, 9)


def fixture_dataset() -> ScoreDataset:
    return ScoreDataset.from_classes([0.9, 0.8, 0.4], [0.7, 0.3, 0.2])


def random_dataset(rng: np.random.Generator, n: int | None = None, prevalence: float | None = None,
                   ties: bool | None = None) -> ScoreDataset:
    """Random binormal-ish dataset, optionally with heavy ties (scores rounded to a coarse grid)."""
    n = int(rng.integers(50, 501)) if n is None else n
    prevalence = float(rng.uniform(0.1, 0.9)) if prevalence is None else prevalence
    ties = bool(rng.integers(0, 2)) if ties is None else ties
    n_pos = min(max(1, int(round(n * prevalence))), n - 1)
    labels = np.zeros(n, bool)
    labels[:n_pos] = True
    rng.shuffle(labels)
    scores = rng.normal(0.0, 1.0, n) + labels * rng.uniform(-0.5, 2.5)
    if ties:
        scores = np.round(scores * rng.integers(1, 6)) / 4.0
    return ScoreDataset(labels, scores)


@pytest.fixture
def fixture_data():
    return fixture_dataset()


@pytest.fixture
def fixture_curve(fixture_data):
    return build_curve(fixture_data)


@pytest.fixture
def perfect_data():
    return ScoreDataset.from_classes([1.0], [0.0])


@pytest.fixture
def perfect_curve(perfect_data):
    return build_curve(perfect_data)


@pytest.fixture
def tied_data():
    return ScoreDataset.from_classes([0.5], [0.5])


@pytest.fixture
def diagonal_curve(tied_data):
    return build_curve(tied_data)


_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def criterion(request):
    """Record one PASS/FAIL line for an acceptance criterion and assert it."""

    def _check(label: str, ok: bool, detail: str) -> None:
        line = f"[{'PASS' if ok else 'FAIL'}] {label}: {detail}"
        print(line)
        _ACCEPTANCE_LINES.append(line)
        assert ok, line

    return _check


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
