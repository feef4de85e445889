"""Built-in example maps used throughout the test suite and the CLI."""
from __future__ import annotations

from fractions import Fraction as F

from .plmap import PLCircleMap, PLIntervalMap, make_circle_map, make_interval_map


def sqrt2_map() -> PLCircleMap:
    """Three-piece circle map with slopes 3/2, 2/3, 1 whose rotation number
    is sqrt(2) - 1; fixed point of the square of the renormalization step."""
    return make_circle_map(
        [
            (F(0), F(3, 2), F(3, 8)),
            (F(1, 4), F(2, 3), F(3, 4)),
            (F(5, 8), F(1), F(0)),
        ]
    )


def sqrt2_map_renormalized() -> PLCircleMap:
    """The image of sqrt2_map under one renormalization step."""
    return make_circle_map(
        [
            (F(0), F(2, 3), F(4, 9)),
            (F(1, 3), F(3, 2), F(2, 3)),
            (F(5, 9), F(1), F(0)),
        ]
    )


def obstruction_g() -> PLIntervalMap:
    """Four-piece interval homeomorphism, half of the built-in obstruction
    pair; slopes are powers of 3/2."""
    return make_interval_map(
        [
            (F(0), F(3, 2), F(0)),
            (F(1, 3), F(2, 3), F(1, 2)),
            (F(11, 24), F(1), F(7, 12)),
            (F(5, 8), F(2, 3), F(3, 4)),
        ]
    )


def obstruction_h() -> PLIntervalMap:
    """Five-piece interval homeomorphism, the other half of the built-in
    obstruction pair."""
    return make_interval_map(
        [
            (F(0), F(27, 8), F(0)),
            (F(1, 54), F(9, 4), F(1, 16)),
            (F(1, 4), F(1), F(7, 12)),
            (F(7, 12), F(16, 81), F(11, 12)),
            (F(95, 96), F(8, 27), F(323, 324)),
        ]
    )


OBSTRUCTION_SEED = F(1, 4)

# CLI fixture registry: name -> () -> PLCircleMap
CIRCLE_FIXTURES = {
    "theorem-main": sqrt2_map,
}
