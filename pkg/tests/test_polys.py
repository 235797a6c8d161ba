import random
from fractions import Fraction

import pytest

from palfac.polys import (
    NoRealRootError,
    Polynomial,
    cauchy_bound,
    divides,
    exact_div,
    factor_int_poly,
    gcd,
    largest_real_root,
    real_root_count,
    squarefree_decomposition,
)

P = Polynomial
X = P([0, 1])


class TestArithmetic:
    def test_trim_and_degree(self):
        assert P([1, 2, 0, 0]).coeffs == (1, 2)
        assert P([]).degree == -1
        assert P([5]).degree == 0
        assert P([0, 0, 3]).degree == 2

    def test_ring_ops(self):
        a = P([1, 2, 3])
        b = P([-1, 1])
        assert a + b == P([0, 3, 3])
        assert a - a == P([])
        assert a * b == P([-1, -1, -1, 3])
        assert (b ** 3) == P([-1, 3, -3, 1])
        assert 2 * b == P([-2, 2])

    def test_evaluation_exact(self):
        p = P([-1, 0, 1])
        assert p(3) == 8
        assert p(Fraction(1, 2)) == Fraction(-3, 4)

    def test_exact_div_and_remainder(self):
        a = (X - P([3])) * (X + P([5]))
        assert exact_div(a, X - P([3])) == X + P([5])
        with pytest.raises(ValueError):
            exact_div(a, X - P([1]))
        assert divides(X + P([5]), a)
        assert not divides(X + P([4]), a)

    def test_gcd_primitive_positive(self):
        a = (X - P([1])) * (X - P([2])) * 6
        b = (X - P([1])) * (X + P([7])) * -4
        assert gcd(a, b) == X - P([1])

    def test_content_and_primitive(self):
        p = P([-6, 0, -9])
        assert p.content() == -3
        assert p.primitive() == P([2, 0, 3])

    def test_x_multiplicity(self):
        assert P([0, 0, 0, 2, 1]).x_multiplicity() == 3
        assert P([1, 1]).x_multiplicity() == 0
        assert P([0, 0, 1]).shift_down(2) == P([1])
        with pytest.raises(ValueError):
            P([0, 1, 1]).shift_down(2)

    def test_str_round(self):
        assert str(P([-1, -1, 0, 0, 0, 0, 0, 1])) == "X^7 - X - 1"
        assert str(P([])) == "0"


class TestSquarefree:
    def test_decomposition_multiplicities(self):
        p = (X - P([1])) ** 3 * (X + P([2])) ** 2 * (X - P([5]))
        parts = dict()
        for q, m in squarefree_decomposition(p):
            parts[m] = q
        assert parts[3] == X - P([1])
        assert parts[2] == X + P([2])
        assert parts[1] == X - P([5])

    def test_squarefree_input_passthrough(self):
        p = P([-1, -1, 0, 0, 1])
        assert squarefree_decomposition(p) == [(p, 1)]


class TestFactorization:
    def test_difference_of_squares(self):
        assert factor_int_poly(P([-1, 0, 1])) == [
            (P([-1, 1]), 1),
            (P([1, 1]), 1),
        ]

    def test_irreducible_quartic(self):
        p = P([-1, -1, 0, 0, 1])
        assert factor_int_poly(p) == [(p, 1)]

    @pytest.mark.parametrize("coeffs", [
        [-1, -1, 0, 0, 0, 0, 0, 1],      # X^7 - X - 1
        [-1, 0, -1, 0, 0, 0, 0, 0, 1],   # X^8 - X^2 - 1
        [-1, 0, -1, 1],                  # X^3 - X^2 - 1
    ])
    def test_known_irreducibles(self, coeffs):
        p = P(coeffs)
        assert factor_int_poly(p) == [(p, 1)]

    def test_product_of_the_two_trinomials(self):
        p7 = P([-1, -1, 0, 0, 0, 0, 0, 1])
        p8 = P([-1, 0, -1, 0, 0, 0, 0, 0, 1])
        got = factor_int_poly(p7 * p8)
        assert got == [(p7, 1), (p8, 1)]

    def test_x_power_extracted(self):
        p = P([0, 0, 0, -1, 0, 0, 0, 0, 0, 1])  # X^3 (X^6 - 1)
        got = dict()
        for q, m in factor_int_poly(p):
            got[q] = m
        assert got[X] == 3
        assert got[X - P([1])] == 1
        assert got[X + P([1])] == 1
        assert got[P([1, 1, 1])] == 1
        assert got[P([1, -1, 1])] == 1

    def test_multiplicities_preserved(self):
        p = (X - P([2])) ** 4 * (P([1, 1, 1])) ** 2
        got = factor_int_poly(p)
        assert (X - P([2]), 4) in got
        assert (P([1, 1, 1]), 2) in got

    def test_content_dropped_but_recoverable(self):
        p = 12 * (X - P([1])) * (X + P([1]))
        got = factor_int_poly(p)
        back = P([p.content()])
        for q, m in got:
            back = back * q ** m
        assert back == p

    def test_random_products_round_trip(self):
        rng = random.Random(20210)
        for _ in range(25):
            prod = P([rng.choice([1, -1, 2, 3])])
            for _ in range(rng.randrange(1, 4)):
                deg = rng.randrange(1, 5)
                coeffs = [rng.randrange(-5, 6) for _ in range(deg)]
                coeffs.append(rng.choice([-2, -1, 1, 1, 2]))
                prod = prod * P(coeffs)
            if prod.degree < 1:
                continue
            back = P([prod.content()])
            for q, m in factor_int_poly(prod):
                assert q.lead > 0
                assert q.content() == 1
                back = back * q ** m
            assert back == prod

    def test_degree_limit(self):
        with pytest.raises(ValueError):
            factor_int_poly(X ** 129 - P([1]))

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            factor_int_poly(P([]))


class TestRealRoots:
    def test_linear_exact(self):
        r = largest_real_root(P([-2, 1]))
        assert r.lo == r.hi == 2
        r = largest_real_root(P([3, 2]))
        assert r.lo == Fraction(-3, 2)

    def test_plastic_number(self):
        r = largest_real_root(P([-1, 0, -1, 1]))
        assert r.width <= Fraction(1, 10 ** 12)
        assert abs(float(r) - 1.4655712318767682) < 1e-11

    def test_degree_seven_trinomial(self):
        r = largest_real_root(P([-1, -1, 0, 0, 0, 0, 0, 1]))
        assert r.width <= Fraction(1, 10 ** 12)
        assert abs(float(r) - 1.1127756842787055) < 1e-11

    def test_interval_straddles_sign_change(self):
        p = P([-1, -1, 0, 0, 0, 0, 0, 1])
        r = largest_real_root(p)
        assert p(r.lo) * p(r.hi) <= 0

    def test_largest_of_several(self):
        p = (X - P([1])) * (X + P([4])) * (X - P([3]))
        r = largest_real_root(p)
        assert r.contains(3) or abs(float(r) - 3) < 1e-11

    def test_no_real_root(self):
        with pytest.raises(NoRealRootError):
            largest_real_root(P([1, 0, 1]))
        with pytest.raises(NoRealRootError):
            largest_real_root(P([7]))

    def test_zero_root_via_x_factor(self):
        # X^2 (X^2 + 1): only real root is 0
        r = largest_real_root(P([0, 0, 1, 0, 1]))
        assert r.lo == r.hi == 0
        # X (X - 5): largest is 5
        r = largest_real_root(P([0, -5, 1]))
        assert float(r) == pytest.approx(5, abs=1e-11)

    def test_root_counts(self):
        assert real_root_count(P([-1, 0, 1])) == 2
        assert real_root_count(P([1, 0, 1])) == 0
        assert real_root_count(P([1, -2, 1])) == 1
        assert real_root_count(P([0, -1, 0, 1])) == 3

    def test_cauchy_bound_dominates(self):
        p = P([-10, 3, 1])
        b = cauchy_bound(p)
        roots = [-5, 2]
        assert all(abs(r) < b for r in roots)

    def test_tolerance_parameter(self):
        r = largest_real_root(P([-2, 0, 1]), tolerance=Fraction(1, 10 ** 20))
        assert r.width <= Fraction(1, 10 ** 20)
        assert abs(float(r) - 2 ** 0.5) < 1e-15
