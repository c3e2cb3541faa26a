"""The pair of subdivision isometries, their adjoints, and relation checks.

On step functions the two operators are pure coefficient combinatorics:

    S0: (a_0..a_m) -> (a_0..a_m, a_0..a_m)          one level deeper
    S1: (a_0..a_m) -> (a_0..a_m, -a_0..-a_m)

and the adjoints average/difference the two halves one level up.  The same
rules drive the general case of N branches, where the k-th branch block is
twisted by the unit root exp(2i pi jk / N); that carrier uses complex floats
because the roots are irrational for N not in {1, 2, 4}.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from typing import Iterable, Sequence, Union

import numpy as np

from .dyadic import StepFunction, as_word
from .reporting import VerificationReport
from .trig import HybridFunction, average_halves, compose_doubling, hybrid_inner

_HALF = Fraction(1, 2)

Vector = Union[StepFunction, HybridFunction]


def s_apply(j: int, f: StepFunction) -> StepFunction:
    """Apply isometry j in {0,1} to a step function (exact, level + 1)."""
    if j not in (0, 1):
        raise ValueError("branch index must be 0 or 1")
    a = f.coeffs
    second = a if j == 0 else tuple(-c for c in a)
    return type(f)(f.level + 1, a + second)


def s_adjoint(j: int, f: StepFunction) -> StepFunction:
    """Apply the adjoint of isometry j (exact, level - 1)."""
    if j not in (0, 1):
        raise ValueError("branch index must be 0 or 1")
    if f.level == 0:
        c = f.coeffs[0]
        return type(f)(0, (c if j == 0 else 0,))
    half = len(f.coeffs) // 2
    sign = 1 if j == 0 else -1
    return type(f)(f.level - 1,
                   tuple(_HALF * (x + sign * y)
                         for x, y in zip(f.coeffs[:half], f.coeffs[half:])))


def s_apply_hybrid(j: int, f: HybridFunction) -> HybridFunction:
    if j not in (0, 1):
        raise ValueError("branch index must be 0 or 1")
    return compose_doubling(f, 1 if j == 0 else -1)


def s_adjoint_hybrid(j: int, f: HybridFunction) -> HybridFunction:
    if j not in (0, 1):
        raise ValueError("branch index must be 0 or 1")
    return average_halves(f, 1 if j == 0 else -1)


class IntervalRep2:
    """The fixed two-branch representation on [0,1): halving maps tau_0, tau_1
    and the doubling map, acting exactly on steps and symbolically on hybrids.

    The same coefficient rules serve every carrier indexed by binary words,
    so step subclasses (e.g. Cantor cylinder steps) work unchanged.
    """

    N = 2

    def apply(self, j: int, f: Vector) -> Vector:
        if isinstance(f, HybridFunction):
            return s_apply_hybrid(j, f)
        return s_apply(j, f)

    def adjoint(self, j: int, f: Vector) -> Vector:
        if isinstance(f, HybridFunction):
            return s_adjoint_hybrid(j, f)
        return s_adjoint(j, f)

    def inner(self, f: Vector, g: Vector):
        if isinstance(f, HybridFunction) or isinstance(g, HybridFunction):
            return hybrid_inner(f, g)
        return f.inner(g)

    def norm_sq(self, f: Vector):
        return self.inner(f, f)

    def is_zero(self, f: Vector, tol: float = 0.0) -> bool:
        if isinstance(f, HybridFunction):
            if f.is_zero():
                return True
            return hybrid_inner(f, f) <= tol * tol
        if tol == 0.0:
            return f.is_zero()
        return float(f.norm_sq()) <= tol * tol


INTERVAL_REP = IntervalRep2()


def apply_word(word, f: Vector, rep=INTERVAL_REP) -> Vector:
    """S_{j1} S_{j2} ... S_{jk} f: the rightmost letter acts first."""
    word = as_word(word)
    for j in reversed(word.digits):
        f = rep.apply(j, f)
    return f


def adjoint_word(word, f: Vector, rep=INTERVAL_REP) -> Vector:
    """(S_{j1} ... S_{jk})* f = S_{jk}* ... S_{j1}* f."""
    word = as_word(word)
    for j in word.digits:
        f = rep.adjoint(j, f)
    return f


# ---------------------------------------------------------------------------
# General number of branches (complex float carrier)
# ---------------------------------------------------------------------------

class NAdicStep:
    """Step function on the N^level cells of the base-N coding, complex coeffs."""

    __slots__ = ("base", "level", "coeffs")

    def __init__(self, base: int, level: int, coeffs):
        if base < 2:
            raise ValueError("base must be at least 2")
        coeffs = np.asarray(coeffs, dtype=np.complex128)
        if coeffs.shape != (base ** level,):
            raise ValueError(f"expected {base ** level} coefficients")
        self.base = base
        self.level = level
        self.coeffs = coeffs

    def refine(self, target_level: int) -> "NAdicStep":
        if target_level < self.level:
            raise ValueError("refine cannot reduce the level (lossy)")
        reps = self.base ** (target_level - self.level)
        return NAdicStep(self.base, target_level, np.repeat(self.coeffs, reps))

    def inner(self, other: "NAdicStep") -> complex:
        if other.base != self.base:
            raise ValueError("base mismatch")
        k = max(self.level, other.level)
        a = self.refine(k).coeffs
        b = other.refine(k).coeffs
        return complex(np.vdot(a, b) / self.base ** k)

    def norm_sq(self) -> float:
        return float(self.inner(self).real)

    def __sub__(self, other: "NAdicStep") -> "NAdicStep":
        k = max(self.level, other.level)
        return NAdicStep(self.base, k, self.refine(k).coeffs - other.refine(k).coeffs)

    def __add__(self, other: "NAdicStep") -> "NAdicStep":
        k = max(self.level, other.level)
        return NAdicStep(self.base, k, self.refine(k).coeffs + other.refine(k).coeffs)


class GeneralRepN:
    """N-branch representation: branch block k of S_j f is exp(2i pi jk/N) f."""

    _QUARTER_TURNS = {0: 1.0 + 0.0j, 1: 1.0j, 2: -1.0 + 0.0j, 3: -1.0j}

    def __init__(self, n: int):
        if n < 2:
            raise ValueError("need at least two branches")
        self.N = n
        # quarter-turn roots are exact units; keep them exact so the N = 2
        # and N = 4 representations carry no float noise of their own
        roots = []
        for k in range(n):
            quarter, rem = divmod(4 * k, n)
            if rem == 0:
                roots.append(self._QUARTER_TURNS[quarter % 4])
            else:
                roots.append(cmath.exp(2j * cmath.pi * k / n))
        self._roots = np.array(roots, dtype=np.complex128)

    def filter_value(self, j: int, x: float) -> complex:
        """m_j at the point x in [0,1): the unit root of x's branch cell."""
        branch = int(self.N * x)
        if not 0 <= branch < self.N:
            raise ValueError("x must lie in [0, 1)")
        return complex(self._roots[(j * branch) % self.N])

    def apply(self, j: int, f: NAdicStep) -> NAdicStep:
        blocks = [self._roots[(j * k) % self.N] * f.coeffs for k in range(self.N)]
        return NAdicStep(self.N, f.level + 1, np.concatenate(blocks))

    def adjoint(self, j: int, f: NAdicStep) -> NAdicStep:
        if f.level == 0:
            value = f.coeffs[0] if j == 0 else 0.0
            return NAdicStep(self.N, 0, [value])
        blocks = f.coeffs.reshape(self.N, -1)
        phases = np.conj(self._roots[(j * np.arange(self.N)) % self.N])
        return NAdicStep(self.N, f.level - 1, phases @ blocks / self.N)

    def inner(self, f: NAdicStep, g: NAdicStep) -> complex:
        return f.inner(g)

    def norm_sq(self, f: NAdicStep) -> float:
        return f.norm_sq()

    def random_step(self, level: int, rng) -> NAdicStep:
        shape = self.N ** level
        return NAdicStep(self.N, level,
                         rng.standard_normal(shape) + 1j * rng.standard_normal(shape))


# ---------------------------------------------------------------------------
# Relation checks
# ---------------------------------------------------------------------------

def _residual_norm(rep, f, g) -> float:
    """Norm of f - g for any carrier the rep understands."""
    if isinstance(f, HybridFunction) or isinstance(g, HybridFunction):
        if isinstance(f, StepFunction):
            f = HybridFunction.from_step(f)
        if isinstance(g, StepFunction):
            g = HybridFunction.from_step(g)
        diff = f - g
        return float(max(hybrid_inner(diff, diff), 0.0)) ** 0.5
    diff = f - g
    return float(rep.norm_sq(diff)) ** 0.5


def _zero_like(rep, f):
    if isinstance(f, HybridFunction):
        return HybridFunction.zero()
    if isinstance(f, NAdicStep):
        return NAdicStep(f.base, 0, [0.0])
    return type(f)(0, (0,))


def verify_cuntz(rep, test_vectors: Iterable, tol: float = 0.0) -> VerificationReport:
    """Check S_j* S_k = delta_jk and sum_k S_k S_k* = identity on test vectors.

    Exact carriers may pass ``tol=0.0``; a failure is reported (with a
    witness), never raised.
    """
    worst = 0.0
    witness = None
    checked = 0
    n = rep.N
    for idx, f in enumerate(test_vectors):
        for k in range(n):
            sk = rep.apply(k, f)
            for j in range(n):
                got = rep.adjoint(j, sk)
                want = f if j == k else _zero_like(rep, f)
                gap = _residual_norm(rep, got, want)
                checked += 1
                if gap > worst:
                    worst, witness = gap, f"S_{j}* S_{k} on vector {idx}"
        total = None
        for k in range(n):
            piece = rep.apply(k, rep.adjoint(k, f))
            total = piece if total is None else total + piece
        gap = _residual_norm(rep, total, f)
        checked += 1
        if gap > worst:
            worst, witness = gap, f"sum_k S_k S_k* on vector {idx}"
    passed = worst <= tol
    return VerificationReport("cuntz-relations", passed, worst, tol,
                              None if passed else witness, checked)


def verify_unitary_matrix(n: int, x_samples: Sequence[float], tol: float = 1e-12) -> VerificationReport:
    """Check that the branch filter matrix U(x) is unitary at each sample.

    U(x)[j,k] = m_j(tau_k(x)) / sqrt(N); unitarity is tested as
    M M^H = N * I with the unscaled matrix M, which keeps the N = 2 and
    N = 4 cases exact in floating point (entries are exact units).
    """
    rep = GeneralRepN(n)
    worst = 0.0
    witness = None
    checked = 0
    for x in x_samples:
        m = np.empty((n, n), dtype=np.complex128)
        for k in range(n):
            y = (x + k) / n
            for j in range(n):
                m[j, k] = rep.filter_value(j, y)
        gap = float(np.abs(m @ m.conj().T - n * np.eye(n)).max()) / n
        checked += 1
        if gap > worst:
            worst, witness = gap, f"x = {x}"
    passed = worst <= tol
    return VerificationReport(f"unitary-filter-matrix-N{n}", passed, worst, tol,
                              None if passed else witness, checked)
