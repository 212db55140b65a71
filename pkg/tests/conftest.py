from __future__ import annotations

from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from prolex import Registry

settings.register_profile(
    "default",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture
def registry() -> Registry:
    return Registry()


@pytest.fixture(scope="session")
def samples_dir() -> Path:
    return DATA_DIR / "samples"


@pytest.fixture(scope="session")
def synthetic_dir() -> Path:
    return DATA_DIR / "synthetic"


@pytest.fixture(scope="session")
def all_conll_paths(samples_dir: Path, synthetic_dir: Path) -> list[Path]:
    paths = sorted(samples_dir.glob("*.conll")) + sorted(synthetic_dir.glob("*.conll"))
    assert paths, "bundled CoNLL fixtures missing"
    return paths


# -- acceptance summary ---------------------------------------------------------
#
# Every test in test_acceptance.py is one acceptance criterion; echo a
# dedicated PASS/FAIL line per criterion in the terminal summary so the
# outcome of each is visible at a glance.

_acceptance_outcomes: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.when == "call":
        _acceptance_outcomes[name] = "PASS" if report.passed else "FAIL"
    elif report.when == "setup":
        if report.skipped:
            _acceptance_outcomes[name] = "SKIP"
        elif report.failed:
            _acceptance_outcomes[name] = "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in sorted(_acceptance_outcomes.items()):
        terminalreporter.write_line(f"{outcome}  {name}")
