import os

import pytest
from hypothesis import settings

import mzvkit
from mzvkit.numerics import MZVCache, set_default_cache

settings.register_profile("repo", max_examples=60, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "repo"))

# criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE = {}


@pytest.fixture(autouse=True, scope="session")
def _memory_cache():
    # never touch a user cache directory from the test run
    set_default_cache(MZVCache())
    yield
    set_default_cache(None)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    terminalreporter.write_line(f"kernel backend: {mzvkit.BACKEND}")
    for num in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[num]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {detail}")
