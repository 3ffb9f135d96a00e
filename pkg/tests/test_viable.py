from fractions import Fraction

import pytest

from smallcancel.viable import constant, corrected_example, icbrt, literal_example, parse_table


@pytest.mark.parametrize("n", [0, 1, 7, 8, 26, 27, 28, 999, 1000, 6119, 10**18, 10**18 - 1])
def test_icbrt(n):
    m = icbrt(n)
    assert m**3 <= n < (m + 1) ** 3


def test_corrected_example_values():
    f = corrected_example()
    assert f(100) == 6
    assert f(2197) == 6  # cbrt = 13 -> 6
    assert f(3375) == 7  # cbrt = 15 -> 7
    assert f(6119) == 9
    assert f.problems(range(1, 20000, 37)) == []


def test_corrected_ratio_bound_is_a_lower_bound():
    f = corrected_example()
    for n0 in (14, 500, 6119, 12000):
        b = f.min_ratio_from(n0)
        assert all(Fraction(n) / f(n) >= b for n in range(n0, n0 + 3000))


def test_literal_example_grows_like_half_n():
    f = literal_example()
    assert f(6119) == -(-(6119**3) // (2 * 6120**2))
    assert f(6119) > 3000


def test_constant_and_table():
    assert constant()(10**9) == 6
    t = parse_table("10:6 100:7 1000:15/2")
    assert (t(1), t(10), t(99), t(100), t(5000)) == (6, 6, 6, 7, Fraction(15, 2))
    assert t.min_ratio_from(100) == Fraction(100, 7)
    with pytest.raises(ValueError):
        parse_table("10")
