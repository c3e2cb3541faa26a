"""Cantor carrier: isometries on cylinder steps, the measure transform and
its exact zero set, the exponential spectrum, and the word identities."""

import cmath
import math
import random
from fractions import Fraction

import pytest

from cuntz_bases.cantor import (
    CantorStep,
    LambdaPoint,
    bessel_sum,
    cantor_s_adjoint,
    cantor_s_apply,
    coefficient_table,
    exp_coefficient,
    gram_exponentials,
    indicator_relation_check,
    lambda_set,
    mu_hat,
    mu_hat_is_zero,
    verify_lambda_partition,
)
from cuntz_bases.dyadic import MultiIndex
from cuntz_bases.operators import INTERVAL_REP, verify_cuntz


class TestCylinderSteps:
    def test_constant_fixed_by_first_isometry(self):
        chi = CantorStep.ones()
        assert cantor_s_apply(0, chi) == chi

    def test_adjoint_difference(self):
        assert cantor_s_adjoint(1, CantorStep(1, [1, -1])) == CantorStep(0, [1])

    def test_cell_left_endpoints(self):
        f = CantorStep(2, [1, 0, 0, 0])
        # cells in endpoint order: 00, 01, 10, 11
        assert [f.cell_left(i) for i in range(4)] == [
            Fraction(0), Fraction(1, 8), Fraction(1, 2), Fraction(5, 8)]

    def test_cuntz_relations_exact_on_indicators(self):
        vectors = [CantorStep.indicator_cell(MultiIndex(tuple((i >> (3 - m)) & 1 for m in range(4))))
                   for i in range(16)]
        report = verify_cuntz(INTERVAL_REP, vectors, tol=0.0)
        assert report.passed and report.max_violation == 0.0

    def test_mass_and_diameter_scaling(self):
        # each subdivision quarters the diameter and halves the mass,
        # matching the square-root scaling of the underlying measure
        for k in range(5):
            assert CantorStep.cell_mass(k + 1) / CantorStep.cell_mass(k) == Fraction(1, 2)
            assert CantorStep.cell_diameter(k + 1) / CantorStep.cell_diameter(k) == Fraction(1, 4)


class TestMuHat:
    def test_at_zero(self):
        assert mu_hat(0.0) == 1.0

    def test_first_zero(self):
        assert abs(mu_hat(1)) < 1e-12

    def test_value_at_two_against_riemann_sum(self):
        # independent oracle: level-8 Riemann sum over cylinder cells
        k = 8
        chi = CantorStep(k, [1] * (1 << k))
        total = 0.0 + 0.0j
        for i in range(1 << k):
            total += cmath.exp(2j * math.pi * 2 * float(chi.cell_left(i)))
        total /= 1 << k
        value = mu_hat(2)
        assert abs(value) == pytest.approx(abs(total), abs=1e-6)
        assert abs(value) == pytest.approx(
            math.prod(abs(math.cos(math.pi * 4.0 ** (-m))) for m in range(1, 30)),
            abs=1e-10)

    def test_functional_equation(self):
        rng = random.Random(83)
        for _ in range(200):
            lam = rng.uniform(-100, 100)
            lhs = mu_hat(lam)
            rhs = 0.5 * (1 + cmath.exp(1j * math.pi * lam)) * mu_hat(lam / 4)
            assert abs(lhs - rhs) < 1e-9

    def test_zero_predicate(self):
        assert mu_hat_is_zero(1)
        assert not mu_hat_is_zero(0)
        assert not mu_hat_is_zero(2)
        assert mu_hat_is_zero(-12)
        assert not mu_hat_is_zero(8)

    def test_predicate_matches_numeric(self):
        for delta in range(-1000, 1001):
            numeric = abs(mu_hat(delta)) < 1e-8
            assert numeric == mu_hat_is_zero(delta), delta


class TestSpectrum:
    def test_small_sets(self):
        assert [pt.value for pt in lambda_set(0)] == [0]
        assert [pt.value for pt in lambda_set(2)] == [0, 1, 4, 5]
        assert [pt.value for pt in lambda_set(3)] == [0, 1, 4, 5, 16, 17, 20, 21]

    def test_digits_reconstruct_value(self):
        for pt in lambda_set(4):
            assert sum(d * 4 ** i for i, d in enumerate(pt.digits)) == pt.value

    def test_bad_value_rejected(self):
        with pytest.raises(ValueError):
            LambdaPoint.from_value(2)

    def test_gram_small(self):
        for p in (0, 2, 4):
            assert gram_exponentials(p).passed

    def test_gram_pair_count(self):
        report = gram_exponentials(6)
        assert report.checked == (64 * 63) // 2

    def test_gram_threads_match(self):
        assert gram_exponentials(6, threads=4).passed


class TestExpCoefficients:
    def test_constant_at_zero(self):
        assert exp_coefficient(0, CantorStep.ones()) == pytest.approx(1.0)

    def test_constant_at_one_vanishes(self):
        assert abs(exp_coefficient(1, CantorStep.ones())) < 1e-12

    def test_against_direct_cell_formula(self):
        # independent oracle: expand the defining integral cell by cell at a
        # deeper level than the step itself
        f = CantorStep(1, [3, -2])
        lam = 5
        k = 6
        refined = f.refine(k)
        total = 0.0 + 0.0j
        for i, c in enumerate(refined.coeffs):
            t = refined.cell_left(i)
            total += float(c) * cmath.exp(-2j * math.pi * lam * float(t))
        total *= mu_hat(lam * 4.0 ** (-k)).conjugate() / (1 << k)
        assert exp_coefficient(lam, f) == pytest.approx(total, abs=1e-10)

    def test_scaling_relation(self):
        # composing with the first isometry multiplies the frequency by 4
        rng = random.Random(89)
        f = CantorStep(2, [rng.randint(-3, 3) for _ in range(4)])
        g = cantor_s_apply(0, f)
        for lam in (0, 1, 5, 17):
            assert exp_coefficient(4 * lam, g) == pytest.approx(
                exp_coefficient(lam, f), abs=1e-8)

    def test_bessel_sums_monotone_bounded(self):
        f = CantorStep(1, [1, 0])  # indicator of the first-level cell
        norm_sq = float(f.norm_sq())  # 1/2
        sums = [2 * bessel_sum(f, p) for p in range(2, 9)]
        for a, b in zip(sums, sums[1:]):
            assert b >= a - 1e-12
        assert all(s <= 2 * norm_sq + 1e-10 for s in sums)

    def test_coefficient_table_json_ready(self):
        import json

        rows = coefficient_table(CantorStep(1, [1, 0]), 2)
        assert [r["lambda"] for r in rows] == [0, 1, 4, 5]
        assert rows[0]["re"] == pytest.approx(0.5)
        json.dumps(rows)  # must be serializable as-is


class TestWordIdentities:
    def test_single_letter_expansions(self):
        assert indicator_relation_check(MultiIndex((0,))).passed
        assert indicator_relation_check(MultiIndex((1,))).passed

    def test_two_letter_expansion_by_hand(self):
        # 1/4 [S00 - S01 + S10 - S11] chi equals the (0,1) cell indicator
        report = indicator_relation_check(MultiIndex((0, 1)))
        assert report.passed and report.max_violation == 0.0

    def test_all_words_to_length_four(self):
        for length in range(5):
            for mask in range(1 << length):
                word = MultiIndex(tuple((mask >> m) & 1 for m in range(length)))
                assert indicator_relation_check(word).passed

    def test_partition_small(self):
        assert verify_lambda_partition(2).passed
        assert verify_lambda_partition(3).passed

    def test_partition_p8(self):
        report = verify_lambda_partition(8)
        assert report.passed and report.checked == 255
