import random

import pytest

from itertower.algebra import Poly

ACCEPTANCE_LINES: dict[int, str] = {}


def record(number: int, ok: bool, title: str, detail: str = "") -> None:
    line = f"{'PASS' if ok else 'FAIL'}  criterion {number:2d}  {title}"
    if detail:
        line += f"  [{detail}]"
    ACCEPTANCE_LINES[number] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])


def random_poly(rng: random.Random, deg: int, lo: int = -5, hi: int = 5, monic: bool = False) -> Poly:
    coeffs = [rng.randint(lo, hi) for _ in range(deg)]
    lead = 1 if monic else rng.choice([c for c in range(lo, hi + 1) if c])
    return Poly(coeffs + [lead])


@pytest.fixture
def rng():
    return random.Random(20240611)
