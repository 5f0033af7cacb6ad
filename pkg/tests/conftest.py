import numpy as np
import pytest

from umcheck.schur import BlaschkeProduct, Constant, NegatedMobius, TaylorSchur, random_blaschke

P_GRID = (0.3, 0.5, 0.7, 0.9)
LAMBDA_GRID = (0.1, 0.5, 0.9)


def family():
    """One member of every Schur variant."""
    return [
        Constant(-1.0),
        Constant(0.3 + 0.4j),
        NegatedMobius(0.5),
        NegatedMobius(-0.5),
        NegatedMobius(0.0),
        random_blaschke(3, 42),
        BlaschkeProduct(0.7, (0.5j, -0.3 + 0.2j)),
        TaylorSchur((0.1, -0.2j, 0.3, 0.15)),
    ]


@pytest.fixture
def rng():
    return np.random.default_rng(20261019)


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def verdict():
    """Record one PASS/FAIL line per acceptance criterion, printed at session end."""

    def record(tag: str, ok: bool, detail: str) -> bool:
        ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] {tag}: {detail}")
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
