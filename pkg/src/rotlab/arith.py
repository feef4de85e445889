"""Exact number algebra: rationals, quadratic irrationals, continued fractions.

All values are immutable and all arithmetic is exact.  Rationals are
`fractions.Fraction`; quadratic irrationals are kept in a unique canonical
form (a + b*sqrt(d))/c so that structural equality decides value equality.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from sympy import factorint

Rational = Fraction


def parse_rational(text: str) -> Fraction:
    """Parse "p/q" or "n" into an exact Fraction."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"malformed rational: {text!r}") from exc


def format_rational(x: Fraction) -> str:
    """Render as "p/q", or "n" when the value is an integer."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def _squarefree_split(n: int) -> tuple[int, int]:
    """Return (s, d) with n = s*s*d and d squarefree (n >= 1)."""
    if n < 1:
        raise ValueError("need a positive integer")
    s, d = 1, 1
    for p, e in factorint(n).items():
        s *= p ** (e // 2)
        if e % 2:
            d *= p
    return s, d


def _sign_a_plus_b_sqrt_d(a: int, b: int, d: int) -> int:
    """Exact sign of a + b*sqrt(d), d >= 2 squarefree (so never zero unless a=b=0)."""
    if b == 0:
        return (a > 0) - (a < 0)
    if a == 0:
        return (b > 0) - (b < 0)
    if a > 0 and b > 0:
        return 1
    if a < 0 and b < 0:
        return -1
    # mixed signs: compare a^2 with b^2 d on the dominant side
    lhs, rhs = a * a, b * b * d
    if a > 0:  # b < 0: positive iff a^2 > b^2 d
        return 1 if lhs > rhs else -1 if lhs < rhs else 0
    # a < 0, b > 0: positive iff b^2 d > a^2
    return 1 if rhs > lhs else -1 if rhs < lhs else 0


@dataclass(frozen=True)
class QuadraticIrrational:
    """(a + b*sqrt(d))/c in canonical form: d squarefree >= 2, b != 0,
    c > 0, gcd(a, b, c) = 1.  Use :func:`make_quadratic` to construct."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.d < 2 or self.b == 0 or self.c <= 0:
            raise ValueError("not in canonical quadratic-irrational form")
        if gcd(gcd(abs(self.a), abs(self.b)), self.c) != 1:
            raise ValueError("not reduced")

    def compare_rational(self, x) -> int:
        """Exact sign of self - x for rational x; never 0 (self is irrational)."""
        x = Fraction(x)
        p, q = x.numerator, x.denominator
        # (a + b sqrt d)/c - p/q has the sign of (aq - pc) + (bq) sqrt d
        return _sign_a_plus_b_sqrt_d(self.a * q - p * self.c, self.b * q, self.d)

    def __lt__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.compare_rational(other) < 0
        if isinstance(other, QuadraticIrrational):
            if other.d == self.d:
                s = _sign_a_plus_b_sqrt_d(
                    self.a * other.c - other.a * self.c,
                    self.b * other.c - other.b * self.c,
                    self.d,
                )
                return s < 0
            # distinct squarefree d: the values lie in different quadratic
            # fields, hence differ, so bisection finds a separating rational
            bound = max(
                (abs(x.a) + abs(x.b) * x.d) // x.c + 1 for x in (self, other)
            )
            lo, hi = Fraction(-bound), Fraction(bound)
            while True:
                mid = (lo + hi) / 2
                s_self, s_other = self.compare_rational(mid), other.compare_rational(mid)
                if s_self != s_other:
                    return s_self < 0
                if s_self < 0:
                    hi = mid
                else:
                    lo = mid
        return NotImplemented

    def __gt__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.compare_rational(other) > 0
        if isinstance(other, QuadraticIrrational):
            return other.__lt__(self)
        return NotImplemented

    def __le__(self, other):
        return self == other or self.__lt__(other)

    def __ge__(self, other):
        return self == other or self.__gt__(other)

    def reciprocal(self) -> "QuadraticIrrational":
        """1/x, exact; stays over the same sqrt(d)."""
        a, b, c, d = self.a, self.b, self.c, self.d
        norm = a * a - b * b * d  # nonzero: x is irrational
        return make_quadratic(c * a, -c * b, norm, d)

    def add_rational(self, x) -> "QuadraticIrrational":
        x = Fraction(x)
        p, q = x.numerator, x.denominator
        return make_quadratic(self.a * q + p * self.c, self.b * q, self.c * q, self.d)

    def rational_minus(self, x) -> "QuadraticIrrational":
        """x - self for rational x."""
        x = Fraction(x)
        p, q = x.numerator, x.denominator
        return make_quadratic(p * self.c - self.a * q, -self.b * q, self.c * q, self.d)

    def to_json(self) -> dict:
        return {"a": self.a, "b": self.b, "c": self.c, "d": self.d}

    def __str__(self):
        return f"({self.a}+{self.b}*sqrt({self.d}))/{self.c}"


def make_quadratic(a: int, b: int, c: int, d: int):
    """Canonicalize (a + b*sqrt(d))/c.  Returns a Fraction when the value
    collapses to a rational (b = 0 or d a perfect square)."""
    if c == 0:
        raise ZeroDivisionError("zero denominator")
    if d < 0:
        raise ValueError("negative radicand")
    s, d0 = _squarefree_split(d) if d > 0 else (0, 1)
    b *= s
    if b == 0 or d0 == 1:
        return Fraction(a + b, c)
    if c < 0:
        a, b, c = -a, -b, -c
    g = gcd(gcd(abs(a), abs(b)), c)
    return QuadraticIrrational(a // g, b // g, c // g, d0)


def one_minus(x):
    """1 - x for a Fraction or QuadraticIrrational."""
    if isinstance(x, QuadraticIrrational):
        return x.rational_minus(1)
    return 1 - Fraction(x)


@dataclass(frozen=True)
class MoebiusTransform:
    """Integer matrix (a, b; c, d) acting as x -> (a x + b)/(c x + d)."""

    a: int
    b: int
    c: int
    d: int

    def __matmul__(self, other: "MoebiusTransform") -> "MoebiusTransform":
        return MoebiusTransform(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def apply(self, x: Fraction) -> Fraction:
        x = Fraction(x)
        return (self.a * x + self.b) / (self.c * x + self.d)

    def det(self) -> int:
        return self.a * self.d - self.b * self.c


def _step_matrix(m: int) -> MoebiusTransform:
    # x -> 1/(m + x)
    return MoebiusTransform(0, 1, 1, m)


def period_matrix(period) -> MoebiusTransform:
    """Fold x -> 1/(m + x) over one period; the first term is outermost."""
    terms = list(period)
    if not terms:
        raise ValueError("empty period")
    if any(m < 1 for m in terms):
        raise ValueError("partial quotients must be >= 1")
    out = _step_matrix(terms[0])
    for m in terms[1:]:
        out = out @ _step_matrix(m)
    return out


def solve_periodic(period) -> QuadraticIrrational:
    """The unique root in (0, 1) of the purely periodic fixed-point equation
    x = M(x), M = period_matrix(period)."""
    mat = period_matrix(period)
    a_, b_, c_, d_ = mat.a, mat.b, mat.c, mat.d
    # c x^2 + (d - a) x - b = 0
    disc = (d_ - a_) * (d_ - a_) + 4 * b_ * c_
    if disc <= 0:
        raise AssertionError("nonpositive discriminant for a positive period")
    roots = [make_quadratic(a_ - d_, sgn, 2 * c_, disc) for sgn in (1, -1)]
    in_unit = [
        x
        for x in roots
        if isinstance(x, QuadraticIrrational) and x > 0 and x < 1
    ]
    if len(in_unit) != 1:
        raise AssertionError(
            f"expected exactly one root in (0,1) for period {tuple(period)}"
        )
    return in_unit[0]


def backsubstitute(m: int, x):
    """1/(m + x) for rational x in [0,1) or quadratic irrational x in (0,1)."""
    if m < 1:
        raise ValueError("m must be >= 1")
    if isinstance(x, QuadraticIrrational):
        return x.add_rational(m).reciprocal()
    return 1 / (m + Fraction(x))


def _primitive_root(word: tuple) -> tuple:
    n = len(word)
    for k in range(1, n + 1):
        if n % k == 0 and word == word[:k] * (n // k):
            return word[:k]
    return word


@dataclass(frozen=True)
class ContinuedFraction:
    """Continued fraction [0; a1, a2, ...] of a value in [0, 1).

    Finite expansions have an empty period; eventually periodic ones carry a
    primitive period and a minimal preperiod.  Use :func:`continued_fraction`
    to construct (it canonicalizes).
    """

    preperiod: tuple[int, ...]
    period: tuple[int, ...] = ()

    @property
    def kind(self) -> str:
        return "eventually_periodic" if self.period else "finite"

    @property
    def terms_after_zero(self) -> int:
        """Number of partial quotients after the leading 0 (finite CFs only)."""
        if self.period:
            raise ValueError("infinite expansion")
        return len(self.preperiod)

    def to_json(self) -> dict:
        return {"preperiod": list(self.preperiod), "period": list(self.period)}

    def __str__(self):
        pre = ",".join(map(str, self.preperiod))
        if not self.period:
            return f"[0;{pre}]" if pre else "[0;]"
        per = ",".join(map(str, self.period))
        return f"[0;{pre}{',' if pre else ''}({per})]"


def continued_fraction(preperiod, period=()) -> ContinuedFraction:
    """Canonicalize and build a ContinuedFraction.

    Finite: trailing 1 merged ([..., m, 1] -> [..., m+1]); value 1 rejected.
    Eventually periodic: period reduced to its primitive root, then the
    preperiod is shortened while its tail aligns with the period.
    """
    pre = list(preperiod)
    per = list(period)
    if any(m < 1 for m in pre) or any(m < 1 for m in per):
        raise ValueError("partial quotients must be >= 1")
    if not per:
        while len(pre) >= 2 and pre[-1] == 1:
            pre.pop()
            pre[-1] += 1
        if pre == [1]:
            raise ValueError("value 1 is outside [0, 1)")
        return ContinuedFraction(tuple(pre))
    per = list(_primitive_root(tuple(per)))
    while pre and pre[-1] == per[-1]:
        pre.pop()
        per = [per[-1]] + per[:-1]
    return ContinuedFraction(tuple(pre), tuple(per))


def rational_cf(x) -> ContinuedFraction:
    """Finite continued fraction of a rational x in [0, 1), by the Euclidean
    algorithm."""
    x = Fraction(x)
    if not 0 <= x < 1:
        raise ValueError("value must lie in [0, 1)")
    terms = []
    p, q = x.numerator, x.denominator
    while p:
        a, rem = divmod(q, p)
        terms.append(a)
        q, p = p, rem
    return continued_fraction(terms)


def cf_value(cf: ContinuedFraction):
    """Exact value: Fraction for finite CFs, QuadraticIrrational otherwise."""
    if not cf.period:
        x = Fraction(0)
        for m in reversed(cf.preperiod):
            x = 1 / (m + x)
        return x
    x = solve_periodic(cf.period)
    for m in reversed(cf.preperiod):
        x = backsubstitute(m, x)
    return x
