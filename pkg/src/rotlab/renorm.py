"""Renormalization of PL circle maps and exact rotation numbers.

One step replaces a fixed-point-free map f by the rescaled first-return map
of f^{-1} on [0, f(0)).  Iterating either terminates (a stage acquires a
fixed point: rational rotation number), revisits a canonical form (cycle:
quadratic irrational), or runs out of budget (undetermined).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import floor

from .arith import (
    ContinuedFraction,
    QuadraticIrrational,
    cf_value,
    continued_fraction,
    format_rational,
)
from .plmap import PLCircleMap, identity_map, rescale_from_interval


class BudgetExceeded(Exception):
    """Raised when an orbit budget runs out inside a single step."""


class InternalAssertion(AssertionError):
    """A structural guarantee of the return-map construction failed."""


def map_bit_size(f: PLCircleMap) -> int:
    """Largest numerator/denominator bit size among the map's rationals."""
    worst = 1
    for piece in f.pieces:
        for x in piece:
            worst = max(worst, abs(x.numerator).bit_length(), x.denominator.bit_length())
    return worst


@dataclass(frozen=True)
class ReturnData:
    """One renormalization step of a fixed-point-free map."""

    r: Fraction  # f(0)
    m: int  # return time of 0
    s: Fraction  # f^m(r); return time is m on [0, s), m + 1 on [s, r)
    return_map: tuple  # pieces (left, slope, value_at_left) of the first-return map on [0, r)
    fstar: PLCircleMap  # the return map rescaled to [0, 1)
    steps_used: int


def return_time_zero(f: PLCircleMap, budget: int = 10**7) -> int:
    """Minimal m > 0 with f^{-m}(0) in [0, f(0)), by the exact backward
    orbit of 0."""
    r = f.evaluate(0)
    if f.has_fixed_point():
        raise ValueError("map has a fixed point")
    g = f.inverse()
    x = Fraction(0)
    for k in range(1, budget + 1):
        x = g.evaluate(x)
        if x < r:
            return k
    raise BudgetExceeded(f"no return of 0 within {budget} backward steps")


def first_return(f: PLCircleMap, budget: int = 10**7) -> ReturnData:
    """First-return data of f^{-1} on [0, r), r = f(0), by exact interval
    propagation: segments of [0, r) are pushed through f^{-1}, split at the
    breakpoints of f^{-1} and at r, and retire on first landing in [0, r)."""
    if f.has_fixed_point():
        raise ValueError("map has a fixed point")
    r = f.evaluate(0)
    g = f.inverse()
    gp = g.mod1_pieces()
    g_lefts = [p[0] for p in gp]

    # work items: (lo, hi, ell, a, b) with f^{-ell}(t) = a t + b on [lo, hi)
    work = [(Fraction(0), r, 0, Fraction(1), Fraction(0))]
    retired = []
    steps = 0
    while work:
        lo, hi, ell, a, b = work.pop()
        if ell > 0:
            y_lo, y_hi = a * lo + b, a * hi + b
            if y_hi <= r:
                retired.append((lo, hi, ell, a, b))
                continue
            if y_lo < r:
                cut = (r - b) / a
                work.append((lo, cut, ell, a, b))
                work.append((cut, hi, ell, a, b))
                continue
        # apply g on the image, split at g's piece boundaries
        steps += 1
        if steps > budget:
            raise BudgetExceeded(f"orbit budget {budget} exhausted")
        y_lo, y_hi = a * lo + b, a * hi + b
        for i, (g_left, g_slope, g_val) in enumerate(gp):
            g_right = g_lefts[i + 1] if i + 1 < len(gp) else Fraction(1)
            seg_lo, seg_hi = max(y_lo, g_left), min(y_hi, g_right)
            if seg_lo >= seg_hi:
                continue
            t1, t2 = (seg_lo - b) / a, (seg_hi - b) / a
            a2 = g_slope * a
            b2 = g_slope * (b - g_left) + g_val
            work.append((t1, t2, ell + 1, a2, b2))

    retired.sort(key=lambda seg: seg[0])
    # domain segments tile [0, r) by construction; verify the images do too
    images = sorted((a * lo + b, a * hi + b) for lo, hi, _, a, b in retired)
    edge = Fraction(0)
    for y_lo, y_hi in images:
        if y_lo != edge:
            raise InternalAssertion("retired images do not tile [0, r)")
        edge = y_hi
    if edge != r:
        raise InternalAssertion("retired images do not tile [0, r)")

    times = sorted({seg[2] for seg in retired})
    m = times[0]
    if times not in ([m], [m, m + 1]):
        raise InternalAssertion(f"return times {times} not contained in {{m, m+1}}")
    if retired[0][2] != m:
        raise InternalAssertion("return time of 0 is not the minimum")

    # crossover must sit exactly at s = f^m(r)
    s = r
    for _ in range(m):
        s = f.evaluate(s)
    boundary = r
    for lo, _hi, ell, _, _ in retired:
        if ell == m + 1:
            boundary = lo
            break
    for lo, _hi, ell, _, _ in retired:
        if (ell == m) != (lo < boundary):
            raise InternalAssertion("return-time regions are not an exact split")
    if boundary != s:
        raise InternalAssertion("crossover does not sit at f^m(r)")
    if s == 0:
        raise InternalAssertion("split point s = 0 cannot occur")

    pieces = tuple((lo, a, a * lo + b) for lo, hi, _, a, b in retired)
    fstar = rescale_from_interval(pieces, Fraction(0), r)
    return ReturnData(r=r, m=m, s=s, return_map=pieces, fstar=fstar, steps_used=steps)


def renormalize(f: PLCircleMap, budget: int = 10**7) -> PLCircleMap:
    """Identity if f has a fixed point, else the rescaled first-return map."""
    if f.has_fixed_point():
        return identity_map()
    return first_return(f, budget).fstar


def final_period(prev: ReturnData, gk: PLCircleMap) -> int:
    """Period of f's periodic points, read off a fixed point of gk =
    prev.fstar: p = prev.m if the fixed point pulls back into [0, prev.s),
    else prev.m + 1."""
    comps = gk.fixed_points()
    if not comps:
        raise ValueError("gk has no fixed point")
    periods = set()
    for lo, hi in comps:
        mid = (lo + hi) / 2
        mid -= floor(mid)
        rt = prev.r * mid
        periods.add(prev.m if rt < prev.s else prev.m + 1)
    if len(periods) != 1:
        raise InternalAssertion(f"fixed-point components disagree on the period: {periods}")
    return periods.pop()


@dataclass(frozen=True)
class StageRecord:
    map: PLCircleMap
    m: int | None  # return time at this stage; None at a fixed-point stage
    max_bits: int

    @property
    def piece_count(self) -> int:
        return len(self.map.pieces)


@dataclass(frozen=True)
class Terminated:
    stage: int
    final_period: int | None  # None only when the input itself has a fixed point

    kind = "terminated"


@dataclass(frozen=True)
class Cycle:
    first_index: int
    repeat_index: int

    kind = "cycle"

    @property
    def length(self) -> int:
        return self.repeat_index - self.first_index


@dataclass(frozen=True)
class Budget:
    reason: str

    kind = "budget"


@dataclass(frozen=True)
class RenormTrace:
    stages: tuple[StageRecord, ...]
    quotients: tuple[int, ...]
    outcome: Terminated | Cycle | Budget

    def slope_range(self) -> tuple[Fraction, Fraction]:
        """Min and max slope over all recorded stages."""
        slopes = [s for rec in self.stages for s in rec.map.slopes()]
        return min(slopes), max(slopes)

    def cycle_slopes(self) -> tuple[Fraction, ...]:
        """The (finite) set of slopes appearing within a detected cycle."""
        if not isinstance(self.outcome, Cycle):
            raise ValueError("no cycle detected")
        out = set()
        for rec in self.stages[self.outcome.first_index : self.outcome.repeat_index]:
            out.update(rec.map.slopes())
        return tuple(sorted(out))

    def to_json(self) -> dict:
        if isinstance(self.outcome, Terminated):
            outcome = {
                "kind": "terminated",
                "stage": self.outcome.stage,
                "final_period": self.outcome.final_period,
            }
        elif isinstance(self.outcome, Cycle):
            outcome = {
                "kind": "cycle",
                "first_index": self.outcome.first_index,
                "repeat_index": self.outcome.repeat_index,
            }
        else:
            outcome = {"kind": "budget", "reason": self.outcome.reason}
        lo, hi = self.slope_range()
        return {
            "outcome": outcome,
            "quotients": list(self.quotients),
            "stages": [
                {"pieces": rec.piece_count, "m": rec.m, "max_bits": rec.max_bits}
                for rec in self.stages
            ],
            "slope_range": [format_rational(lo), format_rational(hi)],
        }


DEFAULT_BIT_BUDGET = 100_000


def renorm_trace(
    f: PLCircleMap,
    max_stages: int = 1000,
    orbit_budget: int = 10**7,
    bit_budget: int = DEFAULT_BIT_BUDGET,
) -> RenormTrace:
    """Iterate the renormalization step with exact cycle detection.

    Stops at the first fixed-point stage (Terminated), the first repeat of a
    canonical form (Cycle), or when a budget runs out (Budget); budget
    exhaustion is an outcome, not an error.  Besides the stage and orbit
    budgets there is a bit budget: stage maps whose rationals exceed it stop
    the iteration (representations can grow exponentially across stages when
    the trace neither terminates nor cycles).
    """
    stages: list[StageRecord] = []
    quotients: list[int] = []
    returns: list[ReturnData] = []
    seen: dict = {}
    g = f
    k = 0
    while True:
        key = g.pieces
        if key in seen:
            outcome = Cycle(seen[key], k)
            break
        seen[key] = k
        if g.has_fixed_point():
            period = final_period(returns[-1], g) if returns else None
            stages.append(StageRecord(g, None, map_bit_size(g)))
            outcome = Terminated(k, period)
            break
        if k >= max_stages:
            outcome = Budget(f"stage budget {max_stages} exhausted")
            break
        if map_bit_size(g) > bit_budget:
            outcome = Budget(f"bit budget {bit_budget} exhausted at stage {k}")
            break
        try:
            rd = first_return(g, orbit_budget)
        except BudgetExceeded as exc:
            outcome = Budget(str(exc))
            break
        stages.append(StageRecord(g, rd.m, map_bit_size(g)))
        quotients.append(rd.m)
        returns.append(rd)
        g = rd.fstar
        k += 1
    return RenormTrace(tuple(stages), tuple(quotients), outcome)


@dataclass(frozen=True)
class RotationNumber:
    """Tagged exact rotation number."""

    kind: str  # "rational" | "quadratic" | "undetermined"
    value: Fraction | QuadraticIrrational | None
    partial_cf: tuple[int, ...] = ()
    estimate_low: Fraction | None = None
    estimate_high: Fraction | None = None

    def to_json(self) -> dict:
        if self.kind == "rational":
            return {"kind": "rational", "value": format_rational(self.value)}
        if self.kind == "quadratic":
            return {"kind": "quadratic", **self.value.to_json()}
        return {
            "kind": "undetermined",
            "partial_cf": list(self.partial_cf),
            "estimate_low": format_rational(self.estimate_low),
            "estimate_high": format_rational(self.estimate_high),
        }


def rotation_number_estimate(f: PLCircleMap, n: int) -> tuple[Fraction, Fraction]:
    """Exact orbit estimate F^n(0)/n with the classical error bound 1/n."""
    if n < 1:
        raise ValueError("need n >= 1")
    x = Fraction(0)
    for _ in range(n):
        x = f.evaluate_lift(x)
    return x / n, Fraction(1, n)


def rotation_number_exact(
    f: PLCircleMap,
    max_stages: int = 1000,
    orbit_budget: int = 10**7,
    bit_budget: int = DEFAULT_BIT_BUDGET,
    estimate_iters: int = 10**4,
) -> tuple[RotationNumber, ContinuedFraction | None, RenormTrace]:
    """Exact rotation number via the renormalization trace.

    Terminated traces yield a finite continued fraction (the last recorded
    quotient replaced by the final period); cycles yield an eventually
    periodic one and a quadratic irrational; budget exhaustion yields the
    verified leading quotients plus an orbit-estimate interval.
    """
    trace = renorm_trace(
        f, max_stages=max_stages, orbit_budget=orbit_budget, bit_budget=bit_budget
    )
    out = trace.outcome
    if isinstance(out, Terminated):
        if out.stage == 0:
            return RotationNumber("rational", Fraction(0)), continued_fraction([]), trace
        terms = list(trace.quotients)
        terms[-1] = out.final_period
        cf = continued_fraction(terms)
        return RotationNumber("rational", cf_value(cf)), cf, trace
    if isinstance(out, Cycle):
        cf = continued_fraction(
            trace.quotients[: out.first_index],
            trace.quotients[out.first_index : out.repeat_index],
        )
        value = cf_value(cf)
        if not isinstance(value, QuadraticIrrational):
            raise InternalAssertion("periodic expansion produced a rational value")
        return RotationNumber("quadratic", value), cf, trace
    est, err = rotation_number_estimate(f, estimate_iters)
    low, high = max(Fraction(0), est - err), min(Fraction(1), est + err)
    return (
        RotationNumber(
            "undetermined",
            None,
            partial_cf=trace.quotients,
            estimate_low=low,
            estimate_high=high,
        ),
        None,
        trace,
    )
