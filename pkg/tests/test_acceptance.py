"""Acceptance suite: every exit criterion at its stated tolerance.

Each test prints one PASS/FAIL line so a verbose run reads as a checklist.
Tolerances are pinned here and nowhere else; "exact" means equality of
exact arithmetic, not a small float.
"""

import math
import random
from fractions import Fraction

import numpy as np

from cuntz_bases.basis import (
    WalshSystem,
    gram_identity_gap,
    greedy_generators,
    verify_decomposition,
    walsh_word,
)
from cuntz_bases.cantor import (
    CantorStep,
    bessel_sum,
    gram_exponentials,
    indicator_relation_check,
    mu_hat,
    verify_lambda_partition,
)
from cuntz_bases.cli import main
from cuntz_bases.dyadic import DyadicStep, MultiIndex, parse_rational
from cuntz_bases.entropy import entropy, verify_entropy_recursion
from cuntz_bases.operators import (
    GeneralRepN,
    INTERVAL_REP,
    apply_word,
    s_adjoint_hybrid,
    s_apply_hybrid,
    verify_cuntz,
)
from cuntz_bases.trig import hybrid_inner, hybrid_norm_sq, make_sine


def report(number, description, ok):
    print(f"{'PASS' if ok else 'FAIL'} criterion-{number}: {description}")
    return ok


class TestCriterion1Relations:
    def test_relation_algebra(self):
        interval = verify_cuntz(
            INTERVAL_REP, [DyadicStep.indicator(6, i) for i in range(64)], tol=0.0)
        cantor = verify_cuntz(
            INTERVAL_REP,
            [CantorStep.indicator_cell(MultiIndex(tuple((i >> m) & 1 for m in range(6))))
             for i in range(64)],
            tol=0.0)
        general_ok = True
        for n in (3, 4):
            rep = GeneralRepN(n)
            rng = np.random.default_rng(2024 + n)
            vectors = [rep.random_step(2, rng) for _ in range(100)]
            general_ok &= verify_cuntz(rep, vectors, tol=1e-12).passed
        ok = (interval.passed and interval.max_violation == 0.0
              and cantor.passed and cantor.max_violation == 0.0 and general_ok)
        assert report(1, "relation algebra: exact on level-6 indicators "
                         "(interval and Cantor), 1e-12 for 3 and 4 branches", ok)


class TestCriterion2WalshBasis:
    def test_gram_and_two_paths(self):
        system = WalshSystem()
        vectors = [system.walsh(n) for n in range(1024)]
        gap, _ = gram_identity_gap(vectors)
        one = DyadicStep.ones()
        mismatches = sum(
            1 for n in range(4096)
            if system.walsh(n) != apply_word(walsh_word(n), one))
        ok = gap == 0.0 and mismatches == 0
        assert report(2, "square-wave system: 1024-vector Gram is the identity "
                         "exactly; recursion equals word path for n < 4096", ok)


class TestCriterion3EmittedWaveforms:
    @staticmethod
    def eval_recursive(n, x):
        # independent pointwise oracle for the defining two-term recursion
        if n == 0:
            return 1
        half, bit = divmod(n, 2)
        if x < Fraction(1, 2):
            return TestCriterion3EmittedWaveforms.eval_recursive(half, 2 * x)
        value = TestCriterion3EmittedWaveforms.eval_recursive(half, 2 * x - 1)
        return -value if bit else value

    def test_emitted_files_match_oracle(self, tmp_path):
        out = tmp_path / "waves"
        assert main(["walsh", "--range", "0..31", "--output", str(out)]) == 0
        ok = True
        for n in range(32):
            rows = (out / f"walsh_{n:04d}.csv").read_text().strip().splitlines()[1:]
            for row in rows:
                x_text, v_text = row.split(",")
                x = Fraction(parse_rational(x_text))
                value = parse_rational(v_text)
                if value != self.eval_recursive(n, x):
                    ok = False
        assert report(3, "emitted waveform files for n < 32 match the "
                         "pointwise recursion oracle exactly", ok)


class TestCriterion4SineGenerators:
    def test_kernel_and_cross_terms(self):
        ok = True
        for n in range(1, 100, 2):
            if math.sqrt(max(hybrid_norm_sq(s_adjoint_hybrid(0, make_sine(n))), 0.0)) >= 1e-10:
                ok = False
        for n in range(2, 99, 2):
            if math.sqrt(hybrid_norm_sq(s_adjoint_hybrid(0, make_sine(n)))) <= 0.1:
                ok = False
        worst = 0.0
        for n in range(1, 21):
            vec = s_apply_hybrid(1, make_sine(n))
            for k in range(5):
                for m in range(1, 21):
                    worst = max(worst, abs(hybrid_inner(make_sine(m), vec)))
                if k < 4:
                    vec = s_apply_hybrid(0, vec)
        ok = ok and worst < 1e-10
        assert report(4, "sine family: odd sines in the adjoint kernel (<1e-10), "
                         "even ones far from it (>0.1), cross terms <1e-10", ok)


class TestCriterion5GeneratorCover:
    def test_first_generators_and_bijection(self):
        cover = greedy_generators(12)
        first = [g.digits for g in cover.generators[:4]]
        ok = first == [(), (1, 1), (1, 1, 0), (1, 0, 1)]
        counts = {}
        for digits, (k, j) in cover.coverage.items():
            counts[len(digits)] = counts.get(len(digits), 0) + 1
            if k.digits + j.digits != digits or k.weight > 1:
                ok = False
        ok = ok and all(counts.get(length, 0) == 1 << length for length in range(13))
        ok = ok and len(cover.coverage) == (1 << 13) - 1
        assert report(5, "greedy cover: first generators (), (1,1), (1,1,0), "
                         "(1,0,1); bijection on all words of length <= 12", ok)


class TestCriterion6Decomposition:
    def test_every_level_to_ten(self):
        cover = greedy_generators(9)
        ok = True
        for level in range(1, 11):
            r = verify_decomposition(cover, level)
            if not (r.passed and r.max_violation == 0.0):
                ok = False
        assert report(6, "depth-bounded completeness: 2^k orthonormal vectors "
                         "with exact identity Gram for every k <= 10", ok)


class TestCriterion7EntropyRecursion:
    def test_chain_rule_and_even_pair(self):
        rng = random.Random(300)
        worst = 0.0
        for _ in range(100):
            while True:
                f = DyadicStep(6, [rng.randint(-5, 5) for _ in range(64)])
                if not f.normalize().is_zero():
                    break
            for k in (1, 2, 3, 4):
                worst = max(worst, verify_entropy_recursion(f, k, tol=1e-12).max_violation)
        pair = DyadicStep(1, [2, 0])  # walsh(0) + walsh(1), normalized internally
        pair_gap = abs(entropy(pair, 1) - math.log(2))
        ok = worst < 1e-12 and pair_gap < 1e-12
        assert report(7, "entropy chain rule holds to 1e-12 on 100 random "
                         "level-6 steps (k <= 4); even pair gives ln 2", ok)


class TestCriterion8CantorSpectrum:
    def test_orthogonality_transform_bessel(self):
        gram = gram_exponentials(8)
        ok = gram.passed and gram.checked == (256 * 255) // 2
        rng = random.Random(301)
        worst = 0.0
        for _ in range(1000):
            lam = rng.uniform(-100, 100)
            factor = 0.5 * (1 + complex(math.cos(math.pi * lam), math.sin(math.pi * lam)))
            worst = max(worst, abs(mu_hat(lam) - factor * mu_hat(lam / 4)))
        ok = ok and worst < 1e-9
        cell = CantorStep(1, [1, 0])
        sums = [2 * bessel_sum(cell, p) for p in range(2, 9)]
        ok = ok and all(b >= a - 1e-12 for a, b in zip(sums, sums[1:]))
        ok = ok and all(s <= 1.0 + 1e-10 for s in sums)
        assert report(8, "spectrum: 32640 exact orthogonality pairs at p=8; "
                         "transform functional equation to 1e-9; Bessel sums "
                         "nondecreasing and bounded by the norm", ok)


class TestCriterion9IndicatorExpansion:
    def test_all_words_to_six(self):
        ok = True
        count = 0
        for length in range(1, 7):
            for mask in range(1 << length):
                word = MultiIndex(tuple((mask >> m) & 1 for m in range(length)))
                r = indicator_relation_check(word)
                count += 1
                if not (r.passed and r.max_violation == 0.0):
                    ok = False
        ok = ok and count == 126
        assert report(9, "cylinder indicator expansion with constant 2^-|J| "
                         "exact for all 126 words of length <= 6", ok)


class TestCriterion10SpectrumPartition:
    def test_odd_orbits(self):
        ok = all(verify_lambda_partition(p).passed for p in range(1, 9))
        assert report(10, "nonzero spectrum points split exactly into odd-times-"
                          "powers-of-four orbits for every p <= 8", ok)
