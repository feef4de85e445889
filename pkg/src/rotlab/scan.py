"""Deterministic parameter sweep over the two-parameter map family.

Grid points are processed independently (optionally in parallel); records
are buffered and sorted by (q, r) before emission, so the CSV is identical
for any worker count.
"""
from __future__ import annotations

import csv
import io
import time
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from multiprocessing import Pool

from .arith import format_rational
from .plmap import family_fqr
from .renorm import DEFAULT_BIT_BUDGET, rotation_number_exact

CSV_COLUMNS = [
    "q",
    "r",
    "kind",
    "value",
    "cf_preperiod",
    "cf_period",
    "stages",
    "max_bits",
    "elapsed_ms",
]


def enumerate_fractions(max_den: int, open_unit: bool = True) -> list[Fraction]:
    """All reduced fractions with denominator <= max_den, ascending; in
    (0, 1) when open_unit, else [0, 1)."""
    if max_den < 1:
        raise ValueError("max_den must be >= 1")
    out = {Fraction(p, q) for q in range(2, max_den + 1) for p in range(1, q) if gcd(p, q) == 1}
    if not open_unit:
        out.add(Fraction(0))
    return sorted(out)


@dataclass(frozen=True)
class ScanRecord:
    q: Fraction
    r: Fraction
    kind: str  # rational | quadratic | undetermined
    value: str
    cf_preperiod: tuple[int, ...]
    cf_period: tuple[int, ...]
    stages: int
    max_bits: int
    elapsed_ms: int

    def csv_row(self) -> list[str]:
        return [
            format_rational(self.q),
            format_rational(self.r),
            self.kind,
            self.value,
            " ".join(map(str, self.cf_preperiod)),
            " ".join(map(str, self.cf_period)),
            str(self.stages),
            str(self.max_bits),
            str(self.elapsed_ms),
        ]


@dataclass(frozen=True)
class ScanSummary:
    q: Fraction
    counts: dict
    has_irrational: bool
    period_parts: frozenset  # canonical cyclic words (minimal rotation)

    def to_json(self) -> dict:
        return {
            "q": format_rational(self.q),
            "counts": dict(self.counts),
            "has_irrational": self.has_irrational,
            "period_parts": sorted(list(p) for p in self.period_parts),
        }


def cyclic_canonical(word) -> tuple[int, ...]:
    """Lexicographically least rotation of a cyclic word."""
    word = tuple(word)
    if not word:
        return word
    return min(word[i:] + word[:i] for i in range(len(word)))


def _compute_point(args) -> ScanRecord:
    q, r, max_stages, orbit_budget, bit_budget, timing = args
    start = time.monotonic()
    try:
        f = family_fqr(q, r)
        rot, cf, trace = rotation_number_exact(
            f, max_stages=max_stages, orbit_budget=orbit_budget, bit_budget=bit_budget
        )
        if rot.kind == "rational":
            value = format_rational(rot.value)
            pre, per = cf.preperiod, cf.period
        elif rot.kind == "quadratic":
            value = str(rot.value)
            pre, per = cf.preperiod, cf.period
        else:
            value = f"[{format_rational(rot.estimate_low)},{format_rational(rot.estimate_high)}]"
            pre, per = rot.partial_cf, ()
        stages = len(trace.stages)
        max_bits = max((rec.max_bits for rec in trace.stages), default=1)
        kind = rot.kind
    except Exception as exc:  # a failing point must not abort the sweep
        kind, value, pre, per, stages, max_bits = "undetermined", f"error:{exc}", (), (), 0, 0
    elapsed = int((time.monotonic() - start) * 1000) if timing else 0
    return ScanRecord(q, r, kind, value, tuple(pre), tuple(per), stages, max_bits, elapsed)


def scan(
    q_max_den: int,
    r_max_den: int,
    max_stages: int = 1000,
    orbit_budget: int = 10**7,
    bit_budget: int = DEFAULT_BIT_BUDGET,
    jobs: int = 1,
    timing: bool = True,
    qs=None,
    rs=None,
) -> tuple[list[ScanRecord], list[ScanSummary]]:
    """Compute rotation numbers over the (q, r) grid.

    The grid defaults to all reduced fractions in (0, 1) with the given
    denominator bounds; explicit qs/rs override it.  Output is sorted by
    (q, r) regardless of execution order; per-point failures are recorded
    as undetermined.
    """
    if jobs < 1:
        raise ValueError("jobs must be >= 1")
    qs = list(qs) if qs is not None else enumerate_fractions(q_max_den)
    rs = list(rs) if rs is not None else enumerate_fractions(r_max_den)
    tasks = [(q, r, max_stages, orbit_budget, bit_budget, timing) for q in qs for r in rs]
    if jobs == 1:
        records = [_compute_point(t) for t in tasks]
    else:
        with Pool(jobs) as pool:
            records = list(pool.imap_unordered(_compute_point, tasks, chunksize=16))
    records.sort(key=lambda rec: (rec.q, rec.r))
    return records, summarize(records)


def summarize(records) -> list[ScanSummary]:
    """Per-q aggregates, in ascending q order."""
    by_q: dict[Fraction, list[ScanRecord]] = {}
    for rec in records:
        by_q.setdefault(rec.q, []).append(rec)
    out = []
    for q in sorted(by_q):
        recs = by_q[q]
        counts: dict[str, int] = {}
        parts = set()
        for rec in recs:
            counts[rec.kind] = counts.get(rec.kind, 0) + 1
            if rec.kind == "quadratic":
                parts.add(cyclic_canonical(rec.cf_period))
        out.append(
            ScanSummary(
                q=q,
                counts=counts,
                has_irrational=counts.get("quadratic", 0) > 0,
                period_parts=frozenset(parts),
            )
        )
    return out


def write_csv(records, fp) -> None:
    writer = csv.writer(fp, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for rec in records:
        writer.writerow(rec.csv_row())


def csv_text(records) -> str:
    buf = io.StringIO()
    write_csv(records, buf)
    return buf.getvalue()


def records_json(records) -> list[dict]:
    return [
        {
            "q": format_rational(rec.q),
            "r": format_rational(rec.r),
            "kind": rec.kind,
            "value": rec.value,
            "cf_preperiod": list(rec.cf_preperiod),
            "cf_period": list(rec.cf_period),
            "stages": rec.stages,
            "max_bits": rec.max_bits,
            "elapsed_ms": rec.elapsed_ms,
        }
        for rec in records
    ]
