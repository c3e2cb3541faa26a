"""Isometry pair on steps and hybrids, word composition, relation checks."""

import random
from fractions import Fraction

import numpy as np
import pytest

from cuntz_bases.dyadic import DyadicStep, MultiIndex
from cuntz_bases.operators import (
    GeneralRepN,
    INTERVAL_REP,
    IntervalRep2,
    NAdicStep,
    adjoint_word,
    apply_word,
    s_adjoint,
    s_apply,
    verify_cuntz,
    verify_unitary_matrix,
)
from cuntz_bases.trig import HybridFunction, hybrid_inner, make_sine


def random_step(rng, level):
    return DyadicStep(level, [Fraction(rng.randint(-9, 9), rng.randint(1, 5))
                              for _ in range(1 << level)])


class TestStepOperators:
    def test_apply_constant_fixed(self):
        c = DyadicStep(0, [5])
        assert s_apply(0, c) == c

    def test_apply_flip(self):
        assert s_apply(1, DyadicStep(0, [1])).coeffs == (1, -1)
        assert s_apply(1, DyadicStep(1, [1, -1])).coeffs == (1, -1, -1, 1)

    def test_adjoint_kills_antisymmetric(self):
        assert s_adjoint(0, DyadicStep(1, [1, -1])).is_zero()

    def test_adjoint_difference(self):
        assert s_adjoint(1, DyadicStep(1, [1, -1])) == DyadicStep(0, [1])

    def test_adjoint_level_zero(self):
        c = DyadicStep(0, [7])
        assert s_adjoint(0, c) == c
        assert s_adjoint(1, c).is_zero()

    def test_isometry_exact(self):
        rng = random.Random(5)
        for _ in range(10):
            f = random_step(rng, 4)
            for j in (0, 1):
                assert s_apply(j, f).norm_sq() == f.norm_sq()

    def test_orthogonal_ranges_exact(self):
        rng = random.Random(6)
        for _ in range(10):
            f, g = random_step(rng, 3), random_step(rng, 4)
            assert s_apply(0, f).inner(s_apply(1, g)) == 0

    def test_kernel_is_reflection_condition(self):
        # level-4 basis split: antisymmetric pairs are killed, symmetric are not
        k = 4
        half = 1 << (k - 1)
        for i in range(half):
            anti = DyadicStep.indicator(k, i) - DyadicStep.indicator(k, i + half)
            sym = DyadicStep.indicator(k, i) + DyadicStep.indicator(k, i + half)
            assert s_adjoint(0, anti).is_zero()
            assert not s_adjoint(0, sym).is_zero()


class TestWords:
    def test_word_composition(self):
        phi0 = DyadicStep.ones()
        out = apply_word(MultiIndex((1, 1)), phi0)
        assert out.coeffs == (1, -1, -1, 1)

    def test_empty_word_identity(self):
        f = DyadicStep(2, [1, 2, 3, 4])
        assert apply_word(MultiIndex(()), f) == f

    def test_adjoint_inverts_apply(self):
        rng = random.Random(9)
        for _ in range(20):
            word = MultiIndex(tuple(rng.randint(0, 1) for _ in range(rng.randint(0, 5))))
            f = random_step(rng, 3)
            assert adjoint_word(word, apply_word(word, f)) == f

    def test_rightmost_letter_acts_first(self):
        f = DyadicStep.ones()
        # S_0 S_1: first flip, then duplicate
        out = apply_word(MultiIndex((0, 1)), f)
        assert out == s_apply(0, s_apply(1, f))


class TestCuntzRelations:
    def test_interval_rep_exact_on_indicators(self):
        vectors = [DyadicStep.indicator(3, i) for i in range(8)]
        report = verify_cuntz(INTERVAL_REP, vectors, tol=0.0)
        assert report.passed and report.max_violation == 0.0

    def test_general_rep3_random(self):
        rep = GeneralRepN(3)
        rng = np.random.default_rng(42)
        vectors = [rep.random_step(2, rng) for _ in range(100)]
        report = verify_cuntz(rep, vectors, tol=1e-12)
        assert report.passed

    def test_partition_of_unity_on_hybrid(self):
        rep = IntervalRep2()
        f = make_sine(1) + HybridFunction.from_step(DyadicStep.ones())
        total = rep.apply(0, rep.adjoint(0, f)) + rep.apply(1, rep.adjoint(1, f))
        diff = total - f
        assert hybrid_inner(diff, diff) < 1e-20

    def test_hybrid_isometry(self):
        f = make_sine(3) + make_sine(1).scale(2)
        for j in (0, 1):
            g = INTERVAL_REP.apply(j, f)
            assert hybrid_inner(g, g) == pytest.approx(hybrid_inner(f, f), abs=1e-10)

    def test_failure_reported_not_raised(self):
        class Broken(IntervalRep2):
            def adjoint(self, j, f):
                return super().adjoint(0, f)

        report = verify_cuntz(Broken(), [DyadicStep.indicator(2, 1)], tol=0.0)
        assert not report.passed
        assert report.witness is not None

    def test_general_rep_matches_interval_on_reals(self):
        rep2 = GeneralRepN(2)
        rng = random.Random(12)
        f = random_step(rng, 3)
        nf = NAdicStep(2, 3, [float(c) for c in f.coeffs])
        for j in (0, 1):
            exact = s_apply(j, f)
            approx = rep2.apply(j, nf)
            gap = max(abs(complex(float(a)) - b) for a, b in zip(exact.coeffs, approx.coeffs))
            assert gap < 1e-14


class TestUnitaryMatrix:
    def test_n2_exact(self):
        report = verify_unitary_matrix(2, [0.3], tol=0.0)
        assert report.passed and report.max_violation == 0.0

    def test_n4_random_points(self):
        rng = np.random.default_rng(1)
        report = verify_unitary_matrix(4, rng.random(50), tol=1e-12)
        assert report.passed

    def test_n2_all_dyadic_level4(self):
        xs = [i / 16 for i in range(16)]
        assert verify_unitary_matrix(2, xs, tol=0.0).passed

    def test_n3_unimodular_filters(self):
        rep = GeneralRepN(3)
        for x in (0.1, 0.5, 0.9):
            for j in range(3):
                assert abs(abs(rep.filter_value(j, x)) - 1.0) < 1e-15


class TestGeneralProjections:
    def test_orthogonal_idempotents_sum_to_identity(self):
        rep = GeneralRepN(4)
        rng = np.random.default_rng(7)
        f = rep.random_step(1, rng)
        projections = [rep.apply(k, rep.adjoint(k, f)) for k in range(4)]
        total = projections[0]
        for p in projections[1:]:
            k = max(total.level, p.level)
            total = NAdicStep(4, k, total.refine(k).coeffs + p.refine(k).coeffs)
        assert (total - f).norm_sq() < 1e-24
        # mutual orthogonality of the projected pieces
        for a in range(4):
            for b in range(a + 1, 4):
                assert abs(projections[a].inner(projections[b])) < 1e-12
