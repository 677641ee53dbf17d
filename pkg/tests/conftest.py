import random
from itertools import combinations

import pytest

from enclaveless.graph import build_graph


def random_graph(rng: random.Random, n: int, p: float = 0.5):
    return build_graph(n, [e for e in combinations(range(n), 2) if rng.random() < p])


@pytest.fixture
def rng():
    return random.Random(12345)


# Acceptance criteria record one line each; the summary prints them together.
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
