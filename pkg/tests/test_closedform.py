from fractions import Fraction
from itertools import product
from math import factorial

import pytest

from m0n.closedform import (
    _convolution_by_enumeration,
    _convolution_by_series,
    asymptotic_ratio,
    closed_form_betti,
    lambert_coeffs,
    lambert_convolution_check,
    normalized_w_convergence,
    q_polynomials,
    ulc_ratio,
    ulc_threshold_probe,
)
from m0n.expfun import decompose_alpha
from m0n.moduli import betti
from m0n.polycore import Poly

F = Fraction


# rk H^2, H^4, H^6 of M_{0,n} in closed form, as published
def h2(n):
    return F(2 ** n, 2) - F(n * n - n + 2, 2)


def h4(n):
    return F(3 ** n, 2) - F(n * n + 3 * n + 4, 8) * 2 ** n + F(3 * n**4 - 10 * n**3 + 33 * n**2 - 26 * n + 12, 24)


def h6(n):
    return (F(2, 3) * 4 ** n - F((n + 4) * (n + 3), 12) * 3 ** n
            + F(3 * n**4 + 14 * n**3 + 57 * n**2 + 118 * n + 96, 192) * 2 ** n
            - F(n**6 - 7 * n**5 + 35 * n**4 - 77 * n**3 + 120 * n**2 - 72 * n + 32, 48))


@pytest.fixture(scope="module")
def decs(alphas):
    return {k: decompose_alpha(alphas[k], k) for k in range(1, 9)}


class TestClosedForm:
    def test_examples(self, decs):
        assert closed_form_betti(decs[1], 7) == 42 == h2(7)
        assert closed_form_betti(decs[2], 7) == 127 == h4(7)
        assert closed_form_betti(decs[3], 9) == 7723 == h6(9)

    def test_published_formulas(self, decs):
        for n in range(3, 40):
            assert closed_form_betti(decs[1], n) == h2(n)
            assert closed_form_betti(decs[2], n) == h4(n)
            assert closed_form_betti(decs[3], n) == h6(n)

    def test_against_recursion(self, decs, cache):
        for k in range(1, 9):
            for n in range(3, 31):
                assert closed_form_betti(decs[k], n) == betti(cache, k, n)


class TestQPolynomials:
    def test_k1(self, decs):
        fam = q_polynomials(decs[1])
        assert fam.q == [Poly([1, F(-1, 2), F(1, 2)])]
        assert fam.leading_constant == F(1, 2)

    def test_k2_coefficient_of_2n(self, decs):
        assert q_polynomials(decs[2]).q[0] == Poly([F(4, 8), F(3, 8), F(1, 8)])

    def test_k3_coefficient_of_3n(self, decs):
        # (n+4)(n+3)/12
        assert q_polynomials(decs[3]).q[0] == Poly([12, 7, 1]).scale(F(1, 12))

    def test_k2_constant_term_polynomial(self, decs):
        assert q_polynomials(decs[2]).q[1] == Poly([12, -26, 33, -10, 3]).scale(F(1, 24))

    def test_invariants(self, decs, cache):
        for k in range(1, 7):
            fam = q_polynomials(decs[k])
            for m, q in enumerate(fam.q, start=1):
                assert q.degree == 2 * m and q.lead > 0
            for n in range(3, 20):
                assert fam.betti(n) == betti(cache, k, n)


class TestLambert:
    def test_first_coefficients(self):
        w = lambert_coeffs(4)
        assert w.coeffs[1:4] == [1, -1, F(3, 2)]
        assert w.coeffs[4] == F(-64, 24) == F(-8, 3)

    def test_functional_identity(self):
        lambert_coeffs(12)

    def test_convolution_small(self):
        assert lambert_convolution_check(1)
        assert _convolution_by_enumeration(1) == 1
        assert lambert_convolution_check(2)
        assert _convolution_by_enumeration(2) == 3

    def test_convolution_k10(self):
        assert lambert_convolution_check(10)

    def test_two_routes_agree(self):
        for k in range(1, 10):
            assert _convolution_by_enumeration(k) == _convolution_by_series(k)

    def test_beyond_enumeration_limit(self):
        assert all(lambert_convolution_check(k) for k in range(13, 21))

    def test_enumeration_oracle_brute(self):
        # compositions counted by an unrelated loop over all tuples
        k = 4
        tw = lambda j: F((j + 1) ** j, factorial(j + 1))
        total = F(0)
        for ell in range(1, k + 1):
            for js in product(range(k + 1), repeat=ell + 1):
                if sum(js) == k - ell:
                    term = F(1)
                    for j in js:
                        term *= tw(j)
                    total += term
        assert total == F(k * (k + 1) ** k, factorial(k + 1))


class TestAsymptotics:
    def test_k0(self, cache):
        assert all(asymptotic_ratio(0, n, cache) == 1 for n in range(3, 30))

    def test_k1_n20(self, cache):
        r = asymptotic_ratio(1, 20, cache)
        assert r == F(2 * (2 ** 19 - 191), 2 ** 20)
        assert abs(r - 1) < F(4, 10**4)

    def test_k2_n40(self, cache):
        r = asymptotic_ratio(2, 40, cache)
        assert r == h4(40) * 6 / 3 ** 41
        assert abs(r - 1) < F(1, 10**4)

    def test_error_bound(self, alphas, cache):
        for k in range(1, 6):
            fam = q_polynomials(decompose_alpha(alphas[k], k))
            C = 2 * fam.q[0].lead / fam.leading_constant
            for n in range(2 * k + 3, 70):
                err = abs(asymptotic_ratio(k, n, cache) - 1)
                assert err <= C * n * n * F(k, k + 1) ** n

    def test_eventually_monotone(self, cache):
        for k in range(1, 5):
            errs = [abs(asymptotic_ratio(k, n, cache) - 1) for n in range(8 * k, 80)]
            assert all(a > b for a, b in zip(errs, errs[1:]))


class TestNormalizedW:
    def test_k0(self, cache):
        assert normalized_w_convergence(0, 17, cache) == 1 == lambert_coeffs(1).coeffs[1]

    def test_k1_n25(self, cache):
        v = normalized_w_convergence(1, 25, cache)
        assert v == -h2(25) / 2 ** 24
        assert abs(abs(v) - 1) < F(1, 10**4)

    def test_k2_n30(self, cache):
        v = normalized_w_convergence(2, 30, cache)
        assert v == h4(30) / 3 ** 29
        assert abs(v - F(3, 2)) < F(2, 10**3)

    def test_signs_match_w(self, cache):
        w = lambert_coeffs(6).coeffs
        for k in range(5):
            v = normalized_w_convergence(k, 60, cache)
            assert (v > 0) == (w[k + 1] > 0)

    def test_precondition(self, cache):
        with pytest.raises(ValueError):
            normalized_w_convergence(3, 5, cache)


class TestULCProbe:
    def test_i1(self, cache):
        rep = ulc_threshold_probe(1, 60, cache)
        assert rep.threshold == 5
        assert rep.first_hold == 5
        assert rep.holds_from_threshold

    def test_i2(self, cache):
        rep = ulc_threshold_probe(2, 60, cache)
        assert rep.threshold == 6 and rep.holds_from_threshold

    def test_ratio_growth(self, cache):
        rep = ulc_threshold_probe(1, 60, cache)
        assert rep.increasing_from == 7
        ns = sorted(rep.ratios)
        assert all(rep.ratios[a] < rep.ratios[b] for a, b in zip(ns[4:], ns[5:]))

    def test_ratio_is_the_ulc_quotient(self, cache):
        for n in range(6, 20):
            r = ulc_ratio(cache, 1, n)
            d = n - 3
            a = [betti(cache, i, n) for i in range(3)]
            assert r == F(a[1], d) ** 2 / (F(a[0], 1) * F(a[2], d * (d - 1) // 2))

    def test_ratio_beats_geometric_factor(self, cache):
        # the ratio outgrows ((k+1)^2/(k(k+2)))^n times a fixed constant
        for k in (1, 2):
            base = F((k + 1) ** 2, k * (k + 2))
            r40 = ulc_ratio(cache, k, 40)
            r80 = ulc_ratio(cache, k, 80)
            assert r80 / r40 > base ** 40 / 2
