from __future__ import annotations

import random
import sys
from fractions import Fraction

import pytest
from hypothesis import settings

from hermtaylor.subdivision import Mask

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

H = Fraction(1, 2)


def worked_mask() -> Mask:
    return Mask(1, 0, [[[1, 0], [0, H]], [[1, H], [0, H]]])


@pytest.fixture
def W() -> Mask:
    return worked_mask()


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240611)


def rand_q(rng: random.Random, span: int = 5) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, 4))


def rand_matrix(rng: random.Random, n: int, span: int = 3) -> list[list[Fraction]]:
    return [[rand_q(rng, span) for _ in range(n)] for _ in range(n)]


def rand_mask(rng: random.Random, d: int, length: int | None = None) -> Mask:
    length = length or rng.randint(1, 4)
    return Mask(d, rng.randint(-3, 2), [rand_matrix(rng, d + 1) for _ in range(length)])


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
