from pathlib import Path

import pytest
from hypothesis import strategies as st

from pscfkit.prefs import Profile, count_weak_orders, parse_profile, unrank_weak_order

FIXTURES = Path(__file__).parent / "fixtures"


def load(name: str) -> Profile:
    return parse_profile((FIXTURES / f"{name}.txt").read_text())


@pytest.fixture
def example1():
    return load("example1")


@pytest.fixture
def dichotomous():
    return load("dichotomous")


@pytest.fixture
def rsd_profile():
    return load("rsd")


@pytest.fixture
def manipulation():
    return load("manipulation")


@pytest.fixture
def minority():
    return load("minority")


@pytest.fixture
def example2():
    return load("example2")


@pytest.fixture
def uniformity():
    return load("uniformity")


@st.composite
def profiles(draw, max_n=5, max_m=5, min_n=1, min_m=1):
    n = draw(st.integers(min_n, max_n))
    m = draw(st.integers(min_m, max_m))
    idx = st.integers(0, count_weak_orders(m) - 1)
    return Profile(tuple(unrank_weak_order(m, draw(idx)) for _ in range(n)))


# --- acceptance summary -----------------------------------------------------

_acceptance: dict[int, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    for key, value in report.user_properties:
        if key == "criterion":
            num, title = value
            prev = _acceptance.get(num)
            outcome = "PASS" if report.outcome == "passed" else "FAIL"
            if prev is None or prev[0] == "PASS":
                _acceptance[num] = (outcome, title)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_acceptance):
        outcome, title = _acceptance[num]
        terminalreporter.write_line(f"[{outcome}] criterion {num:>2}: {title}")
