from __future__ import annotations

import random

import pytest

from rlalg.rootlocus import TransferFunction, decompose_root_locus
from rlalg.univariate import poly_gcd

# one line per acceptance criterion, printed in the terminal summary
CRITERIA: dict[int, tuple[str, str]] = {}


def record(number: int, ok: bool, detail: str) -> None:
    CRITERIA[number] = ("PASS" if ok else "FAIL", detail)


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        status, detail = CRITERIA[n]
        terminalreporter.write_line(f"criterion {n:2d}: {status}  {detail}")


@pytest.fixture(scope="session")
def circle_case():
    return decompose_root_locus(TransferFunction([1, 1], [1, 0, 0]))


@pytest.fixture(scope="session")
def cubic_case():
    return decompose_root_locus(TransferFunction([1, 1], [1, 4, 0, 0]))


def random_transfer_functions(count: int, seed: int = 2024, max_degree: int = 4) -> list[TransferFunction]:
    """Seeded coprime TFs: monic integer den of degree 1..max_degree, num of degree <= deg den."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        dd = rng.randint(1, max_degree)
        den = [1] + [rng.randint(-5, 5) for _ in range(dd)]
        nd = rng.randint(0, dd)
        num = [rng.choice([c for c in range(-5, 6) if c])] + [rng.randint(-5, 5) for _ in range(nd)]
        if len(poly_gcd(num, den)) > 1:
            continue
        out.append(TransferFunction(num, den))
    return out
