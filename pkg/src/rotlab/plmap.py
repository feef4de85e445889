"""Piecewise-linear circle and interval homeomorphisms with rational data.

Circle maps are stored as a canonical lift: pieces (left, slope, lift value
at left) on [0, 1) with the normalization F(0) in [0, 1), continuity, and
F(1) = F(0) + 1.  Equality of canonical piece lists is equality of maps.
"""
from __future__ import annotations

import json
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from math import floor

from .arith import format_rational, parse_rational


class MapValidationError(ValueError):
    """Base class for map construction failures."""


class NonpositiveSlope(MapValidationError):
    pass


class NonMonotone(MapValidationError):
    pass


class DiscontinuousCircleMap(MapValidationError):
    pass


class NotBijective(MapValidationError):
    pass


class BadRational(MapValidationError):
    pass


class EndpointNotFixed(MapValidationError):
    pass


class Discontinuous(MapValidationError):
    pass


Piece = tuple[Fraction, Fraction, Fraction]  # (left, slope, value_at_left)


def _as_fraction(x, what: str) -> Fraction:
    try:
        return Fraction(x)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise BadRational(f"bad rational for {what}: {x!r}") from exc


def _merge_equal_slopes(pieces: list[Piece]) -> tuple[Piece, ...]:
    out: list[Piece] = []
    for piece in pieces:
        if out and out[-1][1] == piece[1]:
            continue  # continuity makes the piece redundant
        out.append(piece)
    return tuple(out)


@dataclass(frozen=True)
class PLCircleMap:
    """Orientation-preserving PL homeomorphism of the circle [0, 1)."""

    pieces: tuple[Piece, ...]  # canonical lift pieces

    # -- construction ------------------------------------------------------

    @staticmethod
    def from_lift(pieces) -> "PLCircleMap":
        """Build from lift pieces (left, slope, lift value at left); the lift
        values are shifted by a common integer so F(0) lands in [0, 1), and
        adjacent equal-slope pieces are merged."""
        pieces = [(Fraction(t), Fraction(s), Fraction(v)) for t, s, v in pieces]
        if not pieces or pieces[0][0] != 0:
            raise NonMonotone("first piece must start at 0")
        lefts = [p[0] for p in pieces]
        if any(not 0 <= t < 1 for t in lefts) or any(
            a >= b for a, b in zip(lefts, lefts[1:])
        ):
            raise NonMonotone("piece left endpoints must increase strictly in [0,1)")
        if any(p[1] <= 0 for p in pieces):
            raise NonpositiveSlope("slopes must be positive")
        shift = floor(pieces[0][2])
        pieces = [(t, s, v - shift) for t, s, v in pieces]
        # continuity of the lift
        for i in range(len(pieces) - 1):
            t, s, v = pieces[i]
            t2 = pieces[i + 1][0]
            if pieces[i + 1][2] != v + s * (t2 - t):
                raise DiscontinuousCircleMap("lift pieces do not join continuously")
        t, s, v = pieces[-1]
        end = v + s * (1 - t)
        if end != pieces[0][2] + 1:
            if (end - pieces[0][2]).denominator == 1:
                raise NotBijective(f"lift spans degree {end - pieces[0][2]}, not 1")
            raise DiscontinuousCircleMap("lift does not close up over one period")
        return PLCircleMap(_merge_equal_slopes(pieces))

    # -- basic queries ------------------------------------------------------

    @property
    def lefts(self) -> list[Fraction]:
        return [p[0] for p in self.pieces]

    @property
    def value_at_zero(self) -> Fraction:
        return self.pieces[0][2]

    def _piece_at(self, t: Fraction) -> Piece:
        i = bisect_right(self.lefts, t) - 1
        return self.pieces[i]

    def evaluate_lift(self, t) -> Fraction:
        """Lift value F(t) for any rational t; F(t + 1) = F(t) + 1."""
        t = Fraction(t)
        n = floor(t)
        frac = t - n
        left, slope, value = self._piece_at(frac)
        return value + slope * (frac - left) + n

    def evaluate(self, t) -> Fraction:
        """Circle value f(t) in [0, 1) for t in [0, 1)."""
        t = Fraction(t)
        if not 0 <= t < 1:
            raise ValueError("argument must lie in [0, 1)")
        y = self.evaluate_lift(t)
        return y - floor(y)

    def lift_preimage(self, y) -> Fraction:
        """Solve F(t) = y exactly; works for any rational y."""
        y = Fraction(y)
        v0 = self.value_at_zero
        n = floor(y - v0)  # shift so y - n lands in [F(0), F(0) + 1)
        y0 = y - n
        boundaries = [p[2] for p in self.pieces]
        i = bisect_right(boundaries, y0) - 1
        left, slope, value = self.pieces[i]
        return left + (y0 - value) / slope + n

    def mod1_pieces(self) -> list[Piece]:
        """Pieces of the circle map as a function into [0, 1): lift pieces
        split at the point where the lift crosses an integer."""
        out: list[Piece] = []
        v0 = self.value_at_zero
        n = len(self.pieces)
        for i, (left, slope, value) in enumerate(self.pieces):
            right = self.pieces[i + 1][0] if i + 1 < n else Fraction(1)
            end = value + slope * (right - left)
            if v0 > 0 and value < 1 < end:
                cut = left + (1 - value) / slope
                out.append((left, slope, value))
                out.append((cut, slope, Fraction(0)))
            else:
                out.append((left, slope, value - 1 if value >= 1 else value))
        return out

    # -- algebra -------------------------------------------------------------

    def inverse(self) -> "PLCircleMap":
        """Exact inverse circle map."""
        mod1: list[Piece] = []
        n = len(self.pieces)
        for i, (left, slope, value) in enumerate(self.pieces):
            right = self.pieces[i + 1][0] if i + 1 < n else Fraction(1)
            end = value + slope * (right - left)
            inv_slope = 1 / slope
            if end <= 1:
                mod1.append((value, inv_slope, left))
            elif value >= 1:
                mod1.append((value - 1, inv_slope, left))
            else:  # straddles 1: split the image interval there
                mod1.append((value, inv_slope, left))
                mod1.append((Fraction(0), inv_slope, left + (1 - value) / slope))
        mod1.sort(key=lambda p: p[0])
        return make_circle_map(mod1)

    def compose(self, other: "PLCircleMap") -> "PLCircleMap":
        """t -> self(other(t)), exact and canonical."""
        w0 = other.value_at_zero
        cuts = {Fraction(0), *other.lefts}
        for c in self.lefts:
            k = -floor(c - w0)  # unique integer with c + k in [w0, w0 + 1)
            t = other.lift_preimage(c + k)
            t -= floor(t)
            cuts.add(t)
        cuts = sorted(cuts)
        values = [self.evaluate_lift(other.evaluate_lift(t)) for t in cuts]
        values.append(values[0] + 1)
        bounds = cuts + [Fraction(1)]
        pieces = []
        for i, t in enumerate(cuts):
            slope = (values[i + 1] - values[i]) / (bounds[i + 1] - t)
            pieces.append((t, slope, values[i]))
        return PLCircleMap.from_lift(pieces)

    # -- structure -----------------------------------------------------------

    def breakpoints(self) -> tuple[Fraction, ...]:
        """Points in (0, 1) where the map into [0, 1) fails to be locally
        affine: slope changes of the lift plus the wrap point, if interior."""
        pts = set(self.lefts[1:])
        v0 = self.value_at_zero
        if v0 > 0:
            wrap = self.lift_preimage(1)
            if 0 < wrap < 1:
                pts.add(wrap)
        return tuple(sorted(pts))

    def slope_discontinuities(self) -> int:
        """Circle points (0 included) where the one-sided slopes differ."""
        count = len(self.pieces) - 1  # canonical form: interior lefts all break
        if self.pieces[-1][1] != self.pieces[0][1]:
            count += 1
        return count

    def slopes(self) -> tuple[Fraction, ...]:
        return tuple(p[1] for p in self.pieces)

    def fixed_points(self) -> list[tuple[Fraction, Fraction]]:
        """Maximal components of {f(t) = t}, as closed arcs (lo, hi) with
        lo in [0, 1) and lo <= hi <= lo + 1; (0, 1) denotes the whole circle."""
        comps: list[tuple[Fraction, Fraction]] = []
        n = len(self.pieces)
        for i, (left, slope, value) in enumerate(self.pieces):
            right = self.pieces[i + 1][0] if i + 1 < n else Fraction(1)
            for k in (0, 1):
                if slope == 1:
                    if value - left == k:
                        comps.append((left, right))
                else:
                    t = left + (k - (value - left)) / (slope - 1)
                    if left <= t <= right:
                        comps.append((t, t))
        if not comps:
            return []
        comps.sort()
        merged = [comps[0]]
        for lo, hi in comps[1:]:
            if lo <= merged[-1][1]:
                merged[-1] = (merged[-1][0], max(merged[-1][1], hi))
            else:
                merged.append((lo, hi))
        if merged == [(Fraction(0), Fraction(1))]:
            return [(Fraction(0), Fraction(1))]  # whole circle
        # glue across the wrap point 1 ~ 0
        if merged[-1][1] == 1:
            lo1, _ = merged.pop()
            if merged and merged[0][0] == 0:
                _, hi0 = merged.pop(0)
                merged.append((lo1, hi0 + 1))
            else:
                merged.append((lo1, Fraction(1)))
            # a component reduced to the single point 1 is the point 0
            if merged[-1][0] == 1:
                merged = [(merged[-1][0] - 1, merged[-1][1] - 1)] + merged[:-1]
        return merged

    def has_fixed_point(self) -> bool:
        return bool(self.fixed_points())

    # -- serialization --------------------------------------------------------

    def to_json(self) -> dict:
        pieces = []
        for left, slope, value in self.pieces:
            pieces.append(
                {
                    "left": format_rational(left),
                    "slope": format_rational(slope),
                    "value_at_left": format_rational(value - floor(value)),
                }
            )
        return {"kind": "circle", "pieces": pieces}

    def __str__(self):
        bits = ", ".join(
            f"({format_rational(t)}, {format_rational(s)}, {format_rational(v)})"
            for t, s, v in self.pieces
        )
        return f"PLCircleMap[{bits}]"


def make_circle_map(mod1_pieces) -> PLCircleMap:
    """Build a circle map from mod-1 pieces (left, slope, value_at_left),
    inferring the integer shifts of the lift and validating bijectivity."""
    pieces = [
        (
            _as_fraction(t, "left"),
            _as_fraction(s, "slope"),
            _as_fraction(v, "value_at_left"),
        )
        for t, s, v in mod1_pieces
    ]
    if not pieces:
        raise NonMonotone("need at least one piece")
    if pieces[0][0] != 0:
        raise NonMonotone("first piece must start at 0")
    lefts = [p[0] for p in pieces]
    if any(not 0 <= t < 1 for t in lefts) or any(
        a >= b for a, b in zip(lefts, lefts[1:])
    ):
        raise NonMonotone("piece left endpoints must increase strictly in [0,1)")
    if any(p[1] <= 0 for p in pieces):
        raise NonpositiveSlope("slopes must be positive")
    if any(not 0 <= p[2] < 1 for p in pieces):
        raise BadRational("mod-1 values must lie in [0, 1)")
    lift: list[Piece] = [pieces[0]]
    for i in range(1, len(pieces)):
        t_prev, s_prev, v_prev = lift[-1]
        t, s, v = pieces[i]
        reach = v_prev + s_prev * (t - t_prev)
        if (reach - v).denominator != 1:
            raise DiscontinuousCircleMap(
                f"no integer lift shift joins piece {i} continuously"
            )
        lift.append((t, s, reach))
    t, s, v = lift[-1]
    end = v + s * (1 - t)
    degree = end - lift[0][2]
    if degree != 1:
        if degree.denominator == 1:
            raise NotBijective(f"lift spans degree {degree}, not 1")
        raise DiscontinuousCircleMap("lift does not close up over one period")
    return PLCircleMap(_merge_equal_slopes(lift))


def identity_map() -> PLCircleMap:
    return make_circle_map([(Fraction(0), Fraction(1), Fraction(0))])


def rotation(theta) -> PLCircleMap:
    """The rigid rotation by theta in [0, 1)."""
    theta = Fraction(theta)
    if not 0 <= theta < 1:
        raise ValueError("rotation angle must lie in [0, 1)")
    return PLCircleMap.from_lift([(Fraction(0), Fraction(1), theta)])


def family_fq(q) -> PLCircleMap:
    """The involution exchanging [0, 1/(q+1)) and [1/(q+1), 1) with slopes
    q and 1/q."""
    q = Fraction(q)
    if q <= 0:
        raise ValueError("q must be positive")
    cut = 1 / (q + 1)
    return make_circle_map([(Fraction(0), q, cut), (cut, 1 / q, Fraction(0))])


def family_fqr(q, r) -> PLCircleMap:
    """rotation(r) composed with family_fq(q)."""
    return rotation(r).compose(family_fq(q))


@dataclass(frozen=True)
class BoshernitzanMap:
    map: PLCircleMap
    k1: Fraction  # slope of the first piece
    k2: Fraction  # slope of the second piece


def family_boshernitzan(a, b) -> BoshernitzanMap:
    """Two-piece map with pieces of slope k1 = (1-b)/a on [0, a) and
    k2 = b/(1-a) on [a, 1); defined for 0 < a, b with a + b < 1."""
    a, b = Fraction(a), Fraction(b)
    if not (0 < a and 0 < b and a + b < 1):
        raise ValueError("need 0 < a, 0 < b, and a + b < 1")
    k1 = (1 - b) / a
    k2 = b / (1 - a)
    m = make_circle_map([(Fraction(0), k1, b), (a, k2, Fraction(0))])
    return BoshernitzanMap(m, k1, k2)


def rescale_from_interval(pieces, a, b) -> PLCircleMap:
    """Conjugate a PL bijection of [a, b) (pieces with values in [a, b))
    by the affine chart u(t) = (t - a)/(b - a) into a circle map on [0, 1)."""
    a, b = Fraction(a), Fraction(b)
    if not a < b:
        raise ValueError("need a < b")
    width = b - a
    scaled = [
        ((Fraction(t) - a) / width, Fraction(s), (Fraction(v) - a) / width)
        for t, s, v in pieces
    ]
    return make_circle_map(scaled)


# -- interval homeomorphisms ---------------------------------------------------


@dataclass(frozen=True)
class PLIntervalMap:
    """Orientation-preserving PL homeomorphism of [0, 1] fixing 0 and 1."""

    pieces: tuple[Piece, ...]

    @property
    def lefts(self) -> list[Fraction]:
        return [p[0] for p in self.pieces]

    def evaluate(self, t) -> Fraction:
        t = Fraction(t)
        if not 0 <= t <= 1:
            raise ValueError("argument must lie in [0, 1]")
        if t == 1:
            return Fraction(1)
        i = bisect_right(self.lefts, t) - 1
        left, slope, value = self.pieces[i]
        return value + slope * (t - left)

    def inverse(self) -> "PLIntervalMap":
        reflected = [(v, 1 / s, t) for t, s, v in self.pieces]
        return make_interval_map(reflected)

    def compose(self, other: "PLIntervalMap") -> "PLIntervalMap":
        """t -> self(other(t))."""
        inv = other.inverse()
        cuts = {Fraction(0), *other.lefts}
        cuts.update(inv.evaluate(c) for c in self.lefts)
        cuts.discard(Fraction(1))
        cuts = sorted(cuts)
        bounds = cuts + [Fraction(1)]
        values = [self.evaluate(other.evaluate(t)) for t in bounds]
        pieces = []
        for i, t in enumerate(cuts):
            slope = (values[i + 1] - values[i]) / (bounds[i + 1] - t)
            pieces.append((t, slope, values[i]))
        return make_interval_map(pieces)

    def to_json(self) -> dict:
        return {
            "kind": "interval",
            "pieces": [
                {
                    "left": format_rational(t),
                    "slope": format_rational(s),
                    "value_at_left": format_rational(v),
                }
                for t, s, v in self.pieces
            ],
        }


def make_interval_map(pieces) -> PLIntervalMap:
    """Validate and canonicalize an interval homeomorphism of [0, 1]."""
    pieces = [
        (
            _as_fraction(t, "left"),
            _as_fraction(s, "slope"),
            _as_fraction(v, "value_at_left"),
        )
        for t, s, v in pieces
    ]
    if not pieces or pieces[0][0] != 0:
        raise NonMonotone("first piece must start at 0")
    lefts = [p[0] for p in pieces]
    if any(not 0 <= t < 1 for t in lefts) or any(
        a >= b for a, b in zip(lefts, lefts[1:])
    ):
        raise NonMonotone("piece left endpoints must increase strictly in [0,1)")
    if any(p[1] <= 0 for p in pieces):
        raise NonpositiveSlope("slopes must be positive")
    if pieces[0][2] != 0:
        raise EndpointNotFixed("F(0) must be 0")
    for i in range(len(pieces) - 1):
        t, s, v = pieces[i]
        t2, _, v2 = pieces[i + 1]
        if v2 != v + s * (t2 - t):
            raise Discontinuous(f"pieces {i} and {i + 1} do not join continuously")
    t, s, v = pieces[-1]
    if v + s * (1 - t) != 1:
        raise EndpointNotFixed("F(1) must be 1")
    return PLIntervalMap(_merge_equal_slopes(pieces))


def interval_identity() -> PLIntervalMap:
    return make_interval_map([(Fraction(0), Fraction(1), Fraction(0))])


# -- JSON interchange -----------------------------------------------------------


def map_from_json(doc):
    """Parse the interchange format {"kind": "circle"|"interval",
    "pieces": [{"left": "p/q", "slope": "p/q", "value_at_left": "p/q"}, ...]}."""
    if isinstance(doc, str):
        doc = json.loads(doc)
    kind = doc.get("kind")
    try:
        pieces = [
            (
                parse_rational(p["left"]),
                parse_rational(p["slope"]),
                parse_rational(p["value_at_left"]),
            )
            for p in doc["pieces"]
        ]
    except (KeyError, TypeError) as exc:
        raise BadRational(f"malformed pieces: {exc}") from exc
    except ValueError as exc:
        raise BadRational(str(exc)) from exc
    if kind == "circle":
        return make_circle_map(pieces)
    if kind == "interval":
        return make_interval_map(pieces)
    raise MapValidationError(f"unknown map kind: {kind!r}")
