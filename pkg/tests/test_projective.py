import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kummer_strata.projective import ProjPoint, count_degree_d, count_p1, points_p1, totient_table
from kummer_strata.region import CountSample, fit_exponent

GRID = [round(10 ** (1 + 3 * k / 12)) for k in range(13)]


def brute_p1(B):
    """Distinct rationals a/b plus infinity, by reducing every pair in the box."""
    seen = set()
    for a in range(-B, B + 1):
        for b in range(-B, B + 1):
            if (a, b) == (0, 0):
                continue
            seen.add(None if b == 0 else Fraction(a, b))
    return len(seen)


def test_examples():
    assert count_p1(1) == 4
    assert count_p1(2) == 8
    assert set(points_p1(1)) == {ProjPoint(1, 0), ProjPoint(0, 1), ProjPoint(1, 1), ProjPoint(-1, 1)}


@pytest.mark.parametrize("B", range(1, 31))
def test_brute_force(B):
    assert count_p1(B) == brute_p1(B) == len(list(points_p1(B)))


def test_invariants():
    counts = [count_p1(B) for B in range(1, 1001)]
    assert counts == sorted(counts)
    assert all(c % 4 == 0 for c in counts)


def test_totient_table():
    phi = totient_table(30)
    assert phi[1:13] == [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]
    assert all(phi[n] == sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1) for n in range(1, 31))


def test_errors():
    with pytest.raises(ValueError):
        count_p1(0)
    with pytest.raises(ValueError):
        count_degree_d(4, 0)


class TestProjPoint:
    @given(st.integers(-50, 50), st.integers(-50, 50))
    def test_canonical(self, a, b):
        if a == 0 and b == 0:
            with pytest.raises(ValueError):
                ProjPoint.canonical(a, b)
            return
        p = ProjPoint.canonical(a, b)
        assert p == ProjPoint.canonical(-3 * a, -3 * b)
        assert math.gcd(p.a, p.b) == 1 and (p.b > 0 or (p.b == 0 and p.a == 1))
        assert p.height == max(abs(a), abs(b)) // math.gcd(a, b)

    def test_rejects_non_canonical(self):
        for a, b in ((2, 4), (1, -1), (-1, 0), (0, 0)):
            with pytest.raises(ValueError):
                ProjPoint(a, b)


class TestDegreeD:
    def test_examples(self):
        assert count_degree_d(4, 2) == 8
        assert all(count_degree_d(B, 1) == count_p1(B) for B in range(1, 50))
        assert count_degree_d(3, 2) == count_p1(1)

    @pytest.mark.parametrize("B,d,k", [(2, 1, 3), (3, 2, 2), (5, 3, 2), (10, 2, 3)])
    def test_composition(self, B, d, k):
        # B^d is a perfect power, so floor((B^d)^k)^(1/(dk)) lands exactly on B
        assert count_degree_d((B ** d) ** k, d * k) == count_degree_d(B ** d, d) == count_p1(B)


class TestExponents:
    def test_p1_slope(self):
        fit = fit_exponent([CountSample(B, count_p1(B)) for B in GRID])
        assert fit.slope == pytest.approx(2.0, abs=0.05)

    @pytest.mark.parametrize("d", [1, 2, 3])
    def test_degree_slope(self, d):
        fit = fit_exponent([CountSample(B ** d, count_degree_d(B ** d, d)) for B in GRID])
        assert fit.slope == pytest.approx(2 / d, abs=0.05)

    def test_density(self):
        assert count_p1(10 ** 4) / 10 ** 8 == pytest.approx(12 / math.pi ** 2, rel=0.02)
