from __future__ import annotations

import functools

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# criterion number -> (passed, line); filled by test_acceptance, printed at session end
ACCEPTANCE_LINES: dict[int, tuple[bool, str]] = {}


@functools.lru_cache(maxsize=None)
def classified(rank: int, bound: int = 8):
    from supermodular.classify import classify_supermodular

    return classify_supermodular(rank, bound)


@functools.lru_cache(maxsize=None)
def selfdual_families(bound: int):
    from supermodular.classify import enumerate_selfdual_rank6_quotients

    return enumerate_selfdual_rank6_quotients(bound)


@pytest.fixture(scope="session")
def rank4_records():
    return classified(4)


@pytest.fixture(scope="session")
def rank6_records():
    return classified(6)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        ok, line = ACCEPTANCE_LINES[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {line}")
