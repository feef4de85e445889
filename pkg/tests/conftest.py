"""Shared test helpers: a seeded random-map generator and fixture access."""

import re
import random
from fractions import Fraction

import pytest

from rotlab.plmap import PLCircleMap


def random_circle_map(rng: random.Random, max_pieces: int = 4, max_den: int = 20) -> PLCircleMap:
    """A random PL circle homeomorphism with at most max_pieces pieces.

    Breakpoints and lift values are drawn from the grid of fractions with
    denominator <= max_den, so every generated map has small rational data.
    The lift is built from strictly increasing values, which forces all
    slopes positive and the result degree one.
    """
    n_pieces = rng.randint(1, max_pieces)
    grid = sorted(
        {Fraction(p, q) for q in range(1, max_den + 1) for p in range(0, q)}
    )
    interior = [x for x in grid if 0 < x < 1]
    lefts = [Fraction(0)] + sorted(rng.sample(interior, n_pieces - 1))
    w0 = rng.choice(grid)
    # strictly increasing lift values at the breakpoints and at 1
    offsets = sorted(rng.sample(interior, n_pieces - 1)) if n_pieces > 1 else []
    values = [w0] + [w0 + off for off in offsets] + [w0 + 1]
    pieces = []
    for i in range(n_pieces):
        right = lefts[i + 1] if i + 1 < n_pieces else Fraction(1)
        slope = (values[i + 1] - values[i]) / (right - lefts[i])
        pieces.append((lefts[i], slope, values[i]))
    return PLCircleMap.from_lift(pieces)


def random_fixed_point_free_map(rng: random.Random, **kwargs) -> PLCircleMap:
    for _ in range(1000):
        f = random_circle_map(rng, **kwargs)
        if not f.has_fixed_point():
            return f
    raise AssertionError("could not sample a fixed-point-free map")


@pytest.fixture
def rng():
    return random.Random(20260826)


def pytest_terminal_summary(terminalreporter):
    """One PASS/FAIL line per acceptance criterion at the end of the run."""
    from test_acceptance import CRITERIA

    status = {}
    for key in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(key, []):
            m = re.search(r"test_criterion_(\d+)", getattr(rep, "nodeid", ""))
            if m and getattr(rep, "when", "call") == "call":
                status[int(m.group(1))] = "PASS" if rep.passed else "FAIL"
    for number in sorted(status):
        label = CRITERIA.get(number, "")
        terminalreporter.write_line(
            f"ACCEPTANCE {number}: {status[number]} - {label}"
        )
