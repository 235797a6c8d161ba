import random

import pytest

from palfac.automaton import Dfa, minimize
from palfac.construct import (
    MaxDistinct,
    MaxLen,
    MaxLenByParity,
    build_direct,
)
from palfac.oracle import brute_count
from palfac.polys import Polynomial
from palfac.recur import (
    CountingSystem,
    InconclusiveError,
    asymptotic_fit,
    dominant_root,
    factor_int_poly,
    lda,
    matrix_min_poly,
    minimal_recurrence,
    sequence,
    transfer_matrix,
    window_apply,
)

P = Polynomial
X = P([0, 1])
XP = Polynomial.x_power


def build(spec):
    return minimize(build_direct(spec))


def fib_times_6(n):
    a, b = 0, 1
    for _ in range(n + 1):
        a, b = b, a + b
    return 6 * a


class TestTransferMatrix:
    def test_one_state_all_accepting(self):
        cs = transfer_matrix(Dfa([[0, 0]], 0, [0]))
        assert cs.M == [[2]]
        assert sequence(cs, 6) == [1, 2, 4, 8, 16, 32, 64]

    def test_row_sums_and_nonnegativity(self):
        for spec in (MaxDistinct(2, 8), MaxLen(3, 2), MaxLenByParity(2, 2, 5)):
            d = build(spec)
            cs = transfer_matrix(d)
            k = d.alphabet_size
            for row in cs.M:
                assert sum(row) == k
                assert all(x >= 0 for x in row)

    def test_dead_state_included(self):
        d = build(MaxLen(2, 2))
        cs = transfer_matrix(d)
        assert cs.size == d.state_count
        assert sum(cs.w) == len(d.accepting)

    def test_start_vector(self):
        d = build(MaxDistinct(2, 8))
        cs = transfer_matrix(d)
        assert sum(cs.v) == 1
        assert cs.v[d.start] == 1

    def test_malformed_rows_rejected(self):
        with pytest.raises(ValueError):
            CountingSystem([((0, 2),)], [1, 0], [1])
        with pytest.raises(ValueError):
            CountingSystem([((3, 1),)], [1], [1])


class TestSequence:
    def test_first_term_reflects_start_acceptance(self):
        accepting = transfer_matrix(Dfa([[0, 0]], 0, [0]))
        rejecting = transfer_matrix(Dfa([[0, 0]], 0, []))
        assert sequence(accepting, 0) == [1]
        assert sequence(rejecting, 3) == [0, 0, 0, 0]

    def test_ternary_five_palindromes(self):
        cs = transfer_matrix(build(MaxDistinct(3, 5)))
        assert sequence(cs, 8) == [1, 3, 9, 27, 81, 42, 54, 66, 78]

    def test_fibonacci_scaled(self):
        cs = transfer_matrix(build(MaxLen(3, 2)))
        a = sequence(cs, 40)
        assert all(a[n] == fib_times_6(n) for n in range(3, 41))

    def test_powers_of_two_tail(self):
        cs = transfer_matrix(build(MaxLen(4, 1)))
        a = sequence(cs, 30)
        assert all(a[n] == 3 * 2 ** n for n in range(2, 31))

    def test_matches_oracle_small(self):
        for spec, n_max in ((MaxDistinct(2, 9), 12), (MaxLen(3, 2), 9),
                            (MaxLenByParity(2, 2, 5), 12)):
            cs = transfer_matrix(build_direct(spec))
            a = sequence(cs, n_max)
            for n in range(n_max + 1):
                assert a[n] == brute_count(spec, n).count

    def test_negative_rejected(self):
        cs = transfer_matrix(Dfa([[0, 0]], 0, [0]))
        with pytest.raises(ValueError):
            sequence(cs, -1)


class TestWindowApply:
    def test_geometric(self):
        a = [2 ** n for n in range(10)]
        q = P([-2, 1])
        assert all(window_apply(q, a, i) == 0 for i in range(9))

    def test_arithmetic(self):
        assert window_apply(P([-1, 1]), [1, 2, 3], 0) == 1

    def test_fibonacci_annihilated(self):
        a = [fib_times_6(n) for n in range(30)]
        q = P([-1, -1, 1])
        assert all(window_apply(q, a, i) == 0 for i in range(28))

    def test_out_of_range(self):
        a = [1, 2, 3]
        with pytest.raises(ValueError):
            window_apply(P([-2, 1]), a, 2)
        with pytest.raises(ValueError):
            window_apply(P([-2, 1]), a, -1)


class TestMatrixMinPoly:
    def test_scalar(self):
        assert matrix_min_poly(transfer_matrix(Dfa([[0, 0]], 0, [0]))) == P([-2, 1])

    def test_nilpotent_and_jordan(self):
        assert matrix_min_poly([[0, 1], [0, 0]]) == P([0, 0, 1])
        assert matrix_min_poly([[1, 1], [0, 1]]) == P([1, -2, 1])
        assert matrix_min_poly([[5, 0], [0, 5]]) == P([-5, 1])

    def test_ternary_short_palindrome_system(self):
        cs = transfer_matrix(build(MaxLen(3, 2)))
        expect = (XP(3) * P([-3, 1]) * P([-1, -1, 1]) * P([1, 2, 2, 1, 1]))
        assert matrix_min_poly(cs) == expect

    def test_even_odd_length_system(self):
        cs = transfer_matrix(build(MaxLenByParity(2, 2, 5)))
        expect = XP(6) * P([-2, 1]) * P([-1, 0, -1, 0, 0, 0, 0, 0, 0, 0, 1])
        assert matrix_min_poly(cs) == expect

    def test_seed_deterministic(self):
        cs = transfer_matrix(build(MaxDistinct(3, 5)))
        assert matrix_min_poly(cs, seed=1) == matrix_min_poly(cs, seed=99)

    def test_annihilates_sequence_everywhere(self):
        cs = transfer_matrix(build(MaxDistinct(3, 5)))
        mp = matrix_min_poly(cs)
        a = sequence(cs, 60)
        assert all(window_apply(mp, a, i) == 0 for i in range(61 - mp.degree))

    def test_size_guard(self):
        rows = tuple(((i, 1),) for i in range(4001))
        with pytest.raises(ValueError):
            matrix_min_poly(CountingSystem(rows, [1] + [0] * 4000, [1] * 4001))


class TestLda:
    def test_already_minimal(self):
        a = [2 ** n for n in range(20)]
        assert lda(P([-2, 1]), a) == (P([-2, 1]), 0)

    def test_ternary_five_palindromes(self):
        cs = transfer_matrix(build(MaxDistinct(3, 5)))
        a = sequence(cs, 60)
        mp = matrix_min_poly(cs)
        q, n0 = lda(mp, a)
        assert q == P([-1, -1, 0, 0, 1])
        assert n0 == 5

    def test_longest_even_odd_caps(self):
        cs = transfer_matrix(build(MaxLen(2, 5)))
        a = sequence(cs, 120)
        q, n0 = lda(matrix_min_poly(cs), a)
        assert q == P([-1, -2, -2, -2, -3, 0, 0, 0, 0, 0, 1])
        assert n0 == 10

    def test_output_divides_min_poly(self):
        from palfac.polys import divides

        for spec in (MaxDistinct(3, 5), MaxLen(3, 2), MaxLenByParity(3, 0, 3)):
            cs = transfer_matrix(build(spec))
            a = sequence(cs, 80)
            mp = matrix_min_poly(cs)
            q, n0 = lda(mp, a)
            assert divides(q, mp)
            assert q.lead > 0 and q.content() == 1
            assert n0 >= 0

    def test_rejects_non_annihilator(self):
        a = [2 ** n for n in range(20)]
        with pytest.raises(ValueError):
            lda(P([-3, 1]), a)

    def test_rejects_short_sequence(self):
        a = [2 ** n for n in range(6)]
        with pytest.raises(ValueError):
            lda(P([-2, 1]) * P([-1, 1]) * P([1, 1]) * P([1, 0, 1]), a)


class TestMinimalRecurrence:
    def test_geometric(self):
        assert minimal_recurrence([2 ** n for n in range(16)]) == (P([-2, 1]), 0)

    def test_no_even_ternary_palindromes(self):
        cs = transfer_matrix(build(MaxLenByParity(3, 0, 3)))
        a = sequence(cs, 60)
        q, n0 = minimal_recurrence(a)
        assert q == P([-1, 0, -1, 1])
        assert n0 <= 4
        # r(n) = r(n-1) + r(n-3) holds from 7 on
        assert all(a[n] == a[n - 1] + a[n - 3] for n in range(7, 61))

    def test_agrees_with_factor_stripping(self):
        for spec, n_terms in ((MaxDistinct(3, 5), 80), (MaxLen(3, 2), 60),
                              (MaxLen(2, 5), 120), (MaxLenByParity(2, 2, 5), 80)):
            cs = transfer_matrix(build(spec))
            a = sequence(cs, n_terms)
            route_a = lda(matrix_min_poly(cs), a)
            route_b = minimal_recurrence(a)
            assert route_a == route_b

    def test_eventually_zero(self):
        q, n0 = minimal_recurrence([5, 3, 0, 0, 0, 0, 0, 0, 0, 0])
        assert q == P([1])
        assert n0 == 2

    def test_random_recurrences_recovered(self):
        rng = random.Random(90125)
        for _ in range(20):
            deg = rng.randrange(1, 5)
            coeffs = [rng.randrange(-3, 4) for _ in range(deg)] + [1]
            while coeffs[0] == 0:
                coeffs[0] = rng.randrange(-3, 4)
            q = P(coeffs)
            a = [rng.randrange(-5, 6) for _ in range(deg)]
            for n in range(deg, 40):
                a.append(-sum(coeffs[j] * a[n - deg + j] for j in range(deg)))
            got, n0 = minimal_recurrence(a)
            assert got.degree <= deg
            assert all(window_apply(got, a, i) == 0
                       for i in range(n0, 40 - got.degree))

    def test_inconclusive_on_random_noise(self):
        rng = random.Random(7)
        a = [rng.randrange(1, 10 ** 6) for _ in range(24)]
        with pytest.raises(InconclusiveError):
            minimal_recurrence(a)

    def test_too_short(self):
        with pytest.raises(InconclusiveError):
            minimal_recurrence([1, 2])


class TestAsymptoticFit:
    def test_exact_geometric(self):
        fit = asymptotic_fit([3 * 2 ** n for n in range(40)], 2.0)
        assert fit.c == 3.0
        assert fit.drift == 0.0
        assert fit.converged

    def test_single_root_with_deflation(self):
        cs = transfer_matrix(build(MaxDistinct(3, 5)))
        a = sequence(cs, 120)
        q = P([-1, -1, 0, 0, 1])
        fit = asymptotic_fit(a, dominant_root(q), annihilator=q)
        assert fit.converged
        assert abs(fit.c - 16.07007) / 16.07007 < 0.01

    def test_plus_minus_pair(self):
        cs = transfer_matrix(build(MaxLenByParity(2, 2, 5)))
        a = sequence(cs, 400)
        q = P([-1, 0, -1, 0, 0, 0, 0, 0, 0, 0, 1])
        fit = asymptotic_fit(a, dominant_root(q), annihilator=q, split_parity=True)
        assert fit.converged
        assert fit.c is None
        assert abs(fit.c1 - 15.991809) / 15.991809 < 0.01
        assert abs(abs(fit.c2) - 0.023895) / 0.023895 < 0.10

    def test_alpha_validation(self):
        with pytest.raises(ValueError):
            asymptotic_fit([1] * 40, 0.9)

    def test_non_convergence_reported_not_raised(self):
        # alternating contamination as strong as the main term
        a = [int(2 ** n + (-2) ** n) + 1 for n in range(60)]
        fit = asymptotic_fit(a, 2.0)
        assert not fit.converged
        assert fit.drift > 0.02


class TestDominantRootReexport:
    def test_certified_interval(self):
        r = dominant_root(P([-1, -1, 0, 0, 1]))
        assert abs(float(r) - 1.2207440846) < 1e-9
        assert r.width <= 10 ** -12 or r.lo == r.hi
