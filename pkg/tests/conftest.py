import random
from fractions import Fraction

import pytest

from floerbars import GradedBarcode
from floerbars.exact import INF

F = Fraction


def bc(*triples) -> GradedBarcode:
    """Barcode from ``(left, right[, degree])`` tuples; ``None`` for an infinite right end."""
    out = []
    for t in triples:
        left, right, *deg = t
        out.append((F(left), INF if right is None else F(right), deg[0] if deg else 0))
    return GradedBarcode.of(*out)


@pytest.fixture
def rng():
    return random.Random(20240611)


ACCEPTANCE: dict[int, tuple[str, str, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        status, title, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"[{status}] criterion {number}: {title} ({detail})")
