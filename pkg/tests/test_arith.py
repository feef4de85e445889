import random
from fractions import Fraction

import mpmath
import pytest

from rotlab.arith import (
    ContinuedFraction,
    MoebiusTransform,
    QuadraticIrrational,
    backsubstitute,
    cf_value,
    continued_fraction,
    format_rational,
    make_quadratic,
    one_minus,
    parse_rational,
    period_matrix,
    rational_cf,
    solve_periodic,
    _sign_a_plus_b_sqrt_d,
    _squarefree_split,
)

SQRT2_MINUS_1 = make_quadratic(-1, 1, 1, 2)
GOLDEN = make_quadratic(-1, 1, 2, 5)  # (sqrt 5 - 1)/2


def test_parse_rational():
    assert parse_rational("3/8") == Fraction(3, 8)
    assert parse_rational("-2/6") == Fraction(-1, 3)
    assert parse_rational("7") == Fraction(7)
    with pytest.raises(ValueError):
        parse_rational("1/0")
    with pytest.raises(ValueError):
        parse_rational("x")


def test_format_rational():
    assert format_rational(Fraction(3, 8)) == "3/8"
    assert format_rational(Fraction(4)) == "4"
    assert format_rational(Fraction(-1, 3)) == "-1/3"


def test_parse_format_round_trip():
    rng = random.Random(7)
    for _ in range(500):
        x = Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 10**6))
        assert parse_rational(format_rational(x)) == x


def test_squarefree_split():
    assert _squarefree_split(1) == (1, 1)
    assert _squarefree_split(2) == (1, 2)
    assert _squarefree_split(12) == (2, 3)
    assert _squarefree_split(18) == (3, 2)
    assert _squarefree_split(49) == (7, 1)


def test_sign_a_plus_b_sqrt_d():
    assert _sign_a_plus_b_sqrt_d(0, 1, 2) == 1
    assert _sign_a_plus_b_sqrt_d(-1, 1, 2) == 1  # sqrt 2 > 1
    assert _sign_a_plus_b_sqrt_d(-2, 1, 2) == -1  # sqrt 2 < 2
    assert _sign_a_plus_b_sqrt_d(-7, 5, 2) == 1  # 5 sqrt 2 = 7.07...
    assert _sign_a_plus_b_sqrt_d(3, -2, 2) == 1  # 2 sqrt 2 = 2.82...
    assert _sign_a_plus_b_sqrt_d(2, -1, 4) == 0  # sqrt 4 = 2 exactly


def test_make_quadratic_canonical():
    x = make_quadratic(-2, 2, 2, 2)
    assert (x.a, x.b, x.c, x.d) == (-1, 1, 1, 2)
    y = make_quadratic(1, 1, -1, 2)  # negative denominator is normalized
    assert y.c > 0 and y == make_quadratic(-1, -1, 1, 2)
    z = make_quadratic(0, 1, 2, 8)  # sqrt 8 = 2 sqrt 2
    assert (z.a, z.b, z.c, z.d) == (0, 1, 1, 2)


def test_make_quadratic_collapses_to_fraction():
    assert make_quadratic(1, 2, 3, 4) == Fraction(5, 3)  # sqrt 4 = 2
    assert make_quadratic(1, 1, 2, 9) == Fraction(2)


def test_quadratic_str_matches_interface_format():
    assert str(SQRT2_MINUS_1) == "(-1+1*sqrt(2))/1"
    assert str(GOLDEN) == "(-1+1*sqrt(5))/2"


def test_quadratic_to_json():
    assert SQRT2_MINUS_1.to_json() == {"a": -1, "b": 1, "c": 1, "d": 2}


def test_compare_rational():
    # sqrt 2 - 1 = 0.41421...
    assert SQRT2_MINUS_1.compare_rational(Fraction(2, 5)) == 1
    assert SQRT2_MINUS_1.compare_rational(Fraction(1, 2)) == -1
    assert SQRT2_MINUS_1 > Fraction(41, 100)
    assert SQRT2_MINUS_1 < Fraction(42, 100)
    assert Fraction(2, 5) < SQRT2_MINUS_1


def test_quadratic_ordering():
    assert SQRT2_MINUS_1 < GOLDEN
    assert GOLDEN > SQRT2_MINUS_1
    assert SQRT2_MINUS_1 <= SQRT2_MINUS_1
    assert GOLDEN >= GOLDEN
    assert not SQRT2_MINUS_1 < SQRT2_MINUS_1


def test_comparisons_against_high_precision_floats():
    """Exact comparisons agree with 200-digit numerics on random inputs."""
    mpmath.mp.dps = 200
    rng = random.Random(11)
    for _ in range(2000):
        a = rng.randint(-50, 50)
        b = rng.choice([i for i in range(-20, 21) if i])
        c = rng.randint(1, 30)
        d = rng.choice([2, 3, 5, 6, 7, 10, 11, 13])
        x = make_quadratic(a, b, c, d)
        assert isinstance(x, QuadraticIrrational)
        p = Fraction(rng.randint(-200, 200), rng.randint(1, 200))
        approx = (mpmath.mpf(x.a) + x.b * mpmath.sqrt(x.d)) / x.c
        expected = int(mpmath.sign(approx - mpmath.mpf(p.numerator) / p.denominator))
        assert x.compare_rational(p) == expected


def test_reciprocal_and_shifts():
    x = SQRT2_MINUS_1
    # 1/(sqrt 2 - 1) = sqrt 2 + 1
    assert x.reciprocal() == make_quadratic(1, 1, 1, 2)
    assert x.add_rational(Fraction(1)) == make_quadratic(0, 1, 1, 2)
    assert x.rational_minus(Fraction(1)) == make_quadratic(2, -1, 1, 2)
    assert one_minus(x) == make_quadratic(2, -1, 1, 2)
    assert one_minus(Fraction(1, 3)) == Fraction(2, 3)


def test_moebius_compose_and_det():
    m1 = MoebiusTransform(1, 2, 3, 4)
    m2 = MoebiusTransform(0, 1, 1, 2)
    m = m1 @ m2
    x = Fraction(1, 5)
    assert m.apply(x) == m1.apply(m2.apply(x))
    assert MoebiusTransform(0, 1, 1, 3).det() == -1


def test_period_matrix():
    m = period_matrix((2,))
    assert (m.a, m.b, m.c, m.d) == (0, 1, 1, 2)
    # first term is outermost: x -> 1/(1 + 1/(2 + x))
    m12 = period_matrix((1, 2))
    assert m12.apply(Fraction(0)) == Fraction(2, 3)


def test_solve_periodic():
    assert solve_periodic((2,)) == SQRT2_MINUS_1
    assert solve_periodic((1,)) == GOLDEN
    assert solve_periodic((1, 2)) == make_quadratic(-1, 1, 1, 3)


def test_solve_periodic_is_a_fixed_point():
    rng = random.Random(3)
    mpmath.mp.dps = 60
    for _ in range(200):
        period = tuple(rng.randint(1, 9) for _ in range(rng.randint(1, 5)))
        x = solve_periodic(period)
        assert Fraction(0) < x < Fraction(1)
        approx = (mpmath.mpf(x.a) + x.b * mpmath.sqrt(x.d)) / x.c
        y = approx
        for m in reversed(period):
            y = 1 / (m + y)
        assert abs(y - approx) < mpmath.mpf(10) ** -40


def test_backsubstitute():
    assert backsubstitute(2, Fraction(1, 2)) == Fraction(2, 5)
    assert backsubstitute(2, SQRT2_MINUS_1) == make_quadratic(-2, 2, 2, 2)


def test_continued_fraction_canonicalization():
    # trailing 1 merges into the previous term
    assert continued_fraction([2, 1]) == continued_fraction([3])
    # period words reduce to their primitive root
    assert continued_fraction([], [2, 2]) == continued_fraction([], [2])
    # preperiod terms matching the period tail are absorbed
    assert continued_fraction([2], [2]) == continued_fraction([], [2])
    assert continued_fraction([1, 2, 2], [1, 2]) == continued_fraction([1, 2], [2, 1])


def test_continued_fraction_rejects_value_one():
    with pytest.raises(ValueError):
        continued_fraction([1])


def test_continued_fraction_kinds():
    assert continued_fraction([2, 3]).kind == "finite"
    assert continued_fraction([], [2]).kind == "eventually_periodic"
    assert continued_fraction([]).kind == "finite"
    assert continued_fraction([2, 3]).terms_after_zero == 2


def test_cf_str_and_json():
    cf = continued_fraction([1], [2, 3])
    assert cf.to_json() == {"preperiod": [1], "period": [2, 3]}
    assert "0;" in str(cf)


def test_rational_cf_examples():
    assert rational_cf(Fraction(0)) == continued_fraction([])
    assert rational_cf(Fraction(1, 3)) == continued_fraction([3])
    assert rational_cf(Fraction(2, 5)) == continued_fraction([2, 2])
    assert rational_cf(Fraction(5, 24)) == continued_fraction([4, 1, 4])


def test_rational_cf_round_trip_exhaustive():
    for q in range(1, 400):
        for p in range(0, q):
            x = Fraction(p, q)
            if x.denominator != q:
                continue
            cf = rational_cf(x)
            assert cf.kind == "finite"
            assert cf_value(cf) == x
            # canonical finite expansions never end in 1 (except none at all)
            if cf.preperiod:
                assert cf.preperiod[-1] != 1 or len(cf.preperiod) == 1


def test_cf_value_periodic():
    assert cf_value(continued_fraction([], [2])) == SQRT2_MINUS_1
    assert cf_value(continued_fraction([], [1])) == GOLDEN
    # [0; 2, (2)] = 1/(2 + sqrt 2 - 1) = 1/(1 + sqrt 2) = sqrt 2 - 1... shifted
    val = cf_value(continued_fraction([2], [2]))
    assert val == cf_value(continued_fraction([], [2]))


def test_cf_value_mixed_preperiod():
    x = cf_value(continued_fraction([1], [2]))
    # 1/(1 + (sqrt 2 - 1)) = 1/sqrt 2 = sqrt 2 / 2
    assert x == make_quadratic(0, 1, 2, 2)
