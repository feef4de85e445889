"""Return-map circle homeomorphisms built from pairs of interval maps.

Given interval homeomorphisms g, h and a seed s with
s < g(s) < h(s) < g(h(s)) = h(g(s)), the map
gamma(t) = h^{-l(t)}(g(t)) with minimal l(t) >= 0 landing in [s, h(s)) is a
circle homeomorphism of [s, h(s)); the pair certifies non-embeddability
when its rotation number is irrational.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import QuadraticIrrational
from .plmap import PLCircleMap, PLIntervalMap, make_interval_map, rescale_from_interval
from .renorm import (
    DEFAULT_BIT_BUDGET,
    BudgetExceeded,
    InternalAssertion,
    RenormTrace,
    RotationNumber,
    rotation_number_exact,
)
from . import fixtures

__all__ = [
    "ObstructionInput",
    "ObstructionVerdict",
    "PreconditionFailed",
    "CommutationFailed",
    "make_interval_map",
    "obstruction_input",
    "gamma_map",
    "is_f_obstruction",
    "builtin_pair",
]


class PreconditionFailed(ValueError):
    """The ordering chain s < g(s) < h(s) < g(h(s)) fails."""


class CommutationFailed(ValueError):
    """g(h(s)) != h(g(s))."""


@dataclass(frozen=True)
class ObstructionInput:
    g: PLIntervalMap
    h: PLIntervalMap
    s: Fraction


def obstruction_input(g: PLIntervalMap, h: PLIntervalMap, s) -> ObstructionInput:
    """Validate the standing hypothesis at the seed point s."""
    s = Fraction(s)
    if not 0 < s < 1:
        raise PreconditionFailed("seed must lie in (0, 1)")
    gs, hs = g.evaluate(s), h.evaluate(s)
    ghs, hgs = g.evaluate(hs), h.evaluate(gs)
    if ghs != hgs:
        raise CommutationFailed(f"g(h(s)) = {ghs} != {hgs} = h(g(s))")
    if not s < gs < hs < ghs:
        raise PreconditionFailed(f"chain fails: s={s}, g(s)={gs}, h(s)={hs}, g(h(s))={ghs}")
    return ObstructionInput(g, h, s)


@dataclass(frozen=True)
class GammaMap:
    domain: tuple[Fraction, Fraction]  # [s, h(s))
    pieces: tuple  # (left, slope, value_at_left) on the domain
    circle: PLCircleMap  # rescaled to [0, 1)


def gamma_map(inp: ObstructionInput, budget: int = 10**7) -> GammaMap:
    """Compute gamma by interval propagation: apply g once across [s, h(s)),
    then push segments through h^{-1} until each image lands in [s, h(s)).
    Unlike renormalization, zero applications of h^{-1} are allowed."""
    g, h, s = inp.g, inp.h, inp.s
    hs = h.evaluate(s)
    hinv = h.inverse()
    hp = hinv.pieces
    h_lefts = [p[0] for p in hp]

    # seed: [s, hs) split at g's breakpoints, carrying g's affine pieces
    work = []
    g_pieces = g.pieces
    for i, (left, slope, value) in enumerate(g_pieces):
        right = g_pieces[i + 1][0] if i + 1 < len(g_pieces) else Fraction(1)
        lo, hi = max(s, left), min(hs, right)
        if lo < hi:
            work.append((lo, hi, slope, value + slope * (lo - left) - slope * lo))

    retired = []
    steps = 0
    while work:
        lo, hi, a, b = work.pop()
        y_lo, y_hi = a * lo + b, a * hi + b
        if s <= y_lo and y_hi <= hs:
            retired.append((lo, hi, a, b))
            continue
        if y_lo < s < y_hi:
            cut = (s - b) / a
            work.append((lo, cut, a, b))
            work.append((cut, hi, a, b))
            continue
        if y_lo < hs < y_hi:
            cut = (hs - b) / a
            work.append((lo, cut, a, b))
            work.append((cut, hi, a, b))
            continue
        steps += 1
        if steps > budget:
            raise BudgetExceeded(f"orbit budget {budget} exhausted")
        for i, (h_left, h_slope, h_val) in enumerate(hp):
            h_right = h_lefts[i + 1] if i + 1 < len(hp) else Fraction(1)
            seg_lo, seg_hi = max(y_lo, h_left), min(y_hi, h_right)
            if seg_lo >= seg_hi:
                continue
            t1, t2 = (seg_lo - b) / a, (seg_hi - b) / a
            a2 = h_slope * a
            b2 = h_slope * (b - h_left) + h_val
            work.append((t1, t2, a2, b2))

    retired.sort(key=lambda seg: seg[0])
    images = sorted((a * lo + b, a * hi + b) for lo, hi, a, b in retired)
    edge = s
    for y_lo, y_hi in images:
        if y_lo != edge:
            raise InternalAssertion("gamma images do not tile [s, h(s))")
        edge = y_hi
    if edge != hs:
        raise InternalAssertion("gamma images do not tile [s, h(s))")

    pieces = tuple((lo, a, a * lo + b) for lo, hi, a, b in retired)
    circle = rescale_from_interval(pieces, s, hs)
    return GammaMap(domain=(s, hs), pieces=pieces, circle=circle)


@dataclass(frozen=True)
class ObstructionVerdict:
    kind: str  # "obstruction" | "not_established" | "undetermined"
    rotation: RotationNumber
    gamma: GammaMap
    trace: RenormTrace

    def to_json(self) -> dict:
        from .arith import format_rational

        return {
            "verdict": self.kind,
            "rotation_number": self.rotation.to_json(),
            "gamma": {
                "domain": [
                    format_rational(self.domain_lo),
                    format_rational(self.domain_hi),
                ],
                "pieces": [
                    {
                        "left": format_rational(t),
                        "slope": format_rational(sl),
                        "value_at_left": format_rational(v),
                    }
                    for t, sl, v in self.gamma.pieces
                ],
                "rescaled": self.gamma.circle.to_json(),
            },
        }

    @property
    def domain_lo(self):
        return self.gamma.domain[0]

    @property
    def domain_hi(self):
        return self.gamma.domain[1]


def is_f_obstruction(
    inp: ObstructionInput,
    max_stages: int = 1000,
    orbit_budget: int = 10**7,
    bit_budget: int = DEFAULT_BIT_BUDGET,
) -> ObstructionVerdict:
    """Classify the pair by the exact rotation number of the rescaled gamma."""
    gm = gamma_map(inp, budget=orbit_budget)
    rot, _cf, trace = rotation_number_exact(
        gm.circle,
        max_stages=max_stages,
        orbit_budget=orbit_budget,
        bit_budget=bit_budget,
    )
    if rot.kind == "quadratic":
        assert isinstance(rot.value, QuadraticIrrational)
        kind = "obstruction"
    elif rot.kind == "rational":
        kind = "not_established"
    else:
        kind = "undetermined"
    return ObstructionVerdict(kind=kind, rotation=rot, gamma=gm, trace=trace)


def builtin_pair() -> ObstructionInput:
    """The built-in obstruction pair with seed 1/4 (fixture name "paper-gh")."""
    return obstruction_input(
        fixtures.obstruction_g(), fixtures.obstruction_h(), fixtures.OBSTRUCTION_SEED
    )
