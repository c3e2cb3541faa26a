"""Recursive basis generation and decomposition on the unit interval.

The square-wave family is generated by the pair of subdivision isometries
from the constant function: even indices duplicate, odd indices duplicate
with a sign flip.  On top of it sit the word-level tools: a greedy cover
that factors every binary word as (weight <= 1 prefix) * (generator), the
search for the first non-orthogonal operator word of a seed function, and
depth-bounded orthonormal frames grown from a seed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

from .dyadic import (
    DyadicStep,
    MultiIndex,
    Scalar,
    as_rational,
    as_word,
    enumerate_words,
)
from .operators import INTERVAL_REP, apply_word, s_apply
from .reporting import VerificationReport


class WalshSystem:
    """Memoized generator of the square-wave basis steps.

    The cache is an insert-only map of deterministic values, so concurrent
    readers and writers need no coordination (recomputation races are
    benign).
    """

    def __init__(self):
        self._cache: dict[int, DyadicStep] = {0: DyadicStep.ones()}

    def walsh(self, n: int) -> DyadicStep:
        if n < 0:
            raise ValueError("index must be nonnegative")
        cached = self._cache.get(n)
        if cached is not None:
            return cached
        half, bit = divmod(n, 2)
        value = s_apply(bit, self.walsh(half))
        self._cache[n] = value
        return value

    def clear(self) -> None:
        self._cache = {0: DyadicStep.ones()}


_SYSTEM = WalshSystem()


def walsh(n: int) -> DyadicStep:
    """n-th square-wave basis step (level = bit length of n, values +-1)."""
    return _SYSTEM.walsh(n)


def walsh_word(n: int) -> MultiIndex:
    """The operator word that produces walsh(n) from the constant function."""
    digits = []
    while n:
        n, d = divmod(n, 2)
        digits.append(d)
    return MultiIndex(tuple(digits))


# ---------------------------------------------------------------------------
# Exact transform (recursive butterfly, cross-checked against the Gram
# definition in the test suite)
# ---------------------------------------------------------------------------

def _expand(coeffs: Sequence[Scalar]) -> list[Scalar]:
    if len(coeffs) == 1:
        return [coeffs[0]]
    half = len(coeffs) // 2
    lo, hi = coeffs[:half], coeffs[half:]
    even = _expand([(x + y) for x, y in zip(lo, hi)])
    odd = _expand([(x - y) for x, y in zip(lo, hi)])
    out = []
    for e, o in zip(even, odd):
        out.append(as_rational(Fraction(e, 2)))
        out.append(as_rational(Fraction(o, 2)))
    return out


def _synthesize(coeffs: Sequence[Scalar]) -> list[Scalar]:
    if len(coeffs) == 1:
        return [coeffs[0]]
    even = _synthesize([2 * c for c in coeffs[0::2]])
    odd = _synthesize([2 * c for c in coeffs[1::2]])
    lo = [as_rational(Fraction(u + v, 2)) for u, v in zip(even, odd)]
    hi = [as_rational(Fraction(u - v, 2)) for u, v in zip(even, odd)]
    return lo + hi


def walsh_expand(f: DyadicStep, level: Optional[int] = None) -> list[Scalar]:
    """Exact coefficients of f against the square-wave system.

    ``coeffs[n]`` is the inner product with walsh(n); by orthonormality the
    expansion is exact and satisfies Parseval with equality.  ``level``
    (default: the minimal level of f) sets the table size 2**level.
    """
    f = f.normalize()
    if level is None:
        level = f.level
    return _expand(f.refine(level).coeffs)


def walsh_synthesize(coeffs: Sequence) -> DyadicStep:
    """Inverse of :func:`walsh_expand`; input length must be a power of two."""
    coeffs = [as_rational(c) for c in coeffs]
    if len(coeffs) & (len(coeffs) - 1) or not coeffs:
        raise ValueError("coefficient table length must be a power of two")
    return DyadicStep((len(coeffs) - 1).bit_length(), _synthesize(coeffs))


def ingest_signal(samples: Sequence, level: int) -> DyadicStep:
    """Turn 2**level samples into an exact step, one sample per cell.

    Decimal strings and floats are rationalized from their decimal notation
    verbatim ("0.1" becomes 1/10, never the binary float).
    """
    if len(samples) != 1 << level:
        raise ValueError(f"expected {1 << level} samples, got {len(samples)}")
    coeffs = []
    for s in samples:
        if isinstance(s, float):
            s = repr(s)
        coeffs.append(as_rational(s))
    return DyadicStep(level, coeffs)


# ---------------------------------------------------------------------------
# Greedy generator cover
# ---------------------------------------------------------------------------

def _weight_one_words(max_len: int) -> Iterable[MultiIndex]:
    """Words of weight <= 1 and length <= max_len, in (length, code) order."""
    for length in range(max_len + 1):
        yield MultiIndex((0,) * length)
        for pos in range(length):
            digits = [0] * length
            digits[pos] = 1
            yield MultiIndex(tuple(digits))


class CoverCollisionError(ValueError):
    """A word received two factorizations; the orthogonal cover is broken."""


@dataclass(frozen=True)
class GeneratorCover:
    """Factorization of every binary word (up to a length bound) as K * J
    with K of weight <= 1 and J one of the chosen generator words."""

    max_word_len: int
    generators: tuple[MultiIndex, ...]
    coverage: dict[tuple[int, ...], tuple[MultiIndex, MultiIndex]] = field(hash=False)

    def factor(self, word) -> tuple[MultiIndex, MultiIndex]:
        return self.coverage[as_word(word).digits]

    def words(self) -> Iterable[MultiIndex]:
        return (MultiIndex(d) for d in self.coverage)

    def generator_basis_index(self, gen: MultiIndex) -> int:
        """Index n of the basis step produced by applying the generator word
        to the first seed (the word with a single trailing flip appended)."""
        return gen.code + (1 << len(gen))


def greedy_generators(max_word_len: int) -> GeneratorCover:
    """Scan words in (length, code) order, promoting uncovered words to
    generators and marking every weight <= 1 left-extension as covered.

    Raises :class:`CoverCollisionError` if any word would be covered twice;
    that this never happens is exactly the index-level orthogonality of the
    resulting subspace decomposition.
    """
    if max_word_len < 0:
        raise ValueError("max_word_len must be nonnegative")
    coverage: dict[tuple[int, ...], tuple[MultiIndex, MultiIndex]] = {}
    generators: list[MultiIndex] = []
    for u in enumerate_words(max_word_len):
        if u.digits in coverage:
            continue
        generators.append(u)
        for k in _weight_one_words(max_word_len - len(u)):
            w = k.digits + u.digits
            if w in coverage:
                raise CoverCollisionError(
                    f"word {w} covered by both {coverage[w]} and ({k}, {u})")
            coverage[w] = (k, u)
    return GeneratorCover(max_word_len, tuple(generators), coverage)


# ---------------------------------------------------------------------------
# Seed analysis: first non-orthogonal word, frames, orthogonality
# ---------------------------------------------------------------------------

def compute_K(psi, rep=INTERVAL_REP, max_depth: int = 6, tol: float = 0.0) -> Optional[MultiIndex]:
    """First word K (in (length, code) order) at which the family S_J psi
    stops being orthogonal: some earlier J has <S_J psi | S_K psi> != 0
    while all pairs strictly before K vanish.

    Returns None when no such word exists up to ``max_depth`` (the seed then
    generates an orthogonal family as far as the scan can see).  The seed
    must satisfy S_0* psi = 0; violations raise ValueError.  ``tol = 0``
    demands exact zeros (appropriate for step seeds).
    """
    norm_sq = abs(float(rep.norm_sq(psi)))
    if norm_sq == 0.0:
        raise ValueError("seed must be nonzero")
    threshold = tol * norm_sq if tol > 0 else 0.0
    kernel_gap = abs(float(rep.norm_sq(rep.adjoint(0, psi))))
    if kernel_gap > threshold:
        raise ValueError(
            f"seed not in the kernel of the first adjoint (residual {kernel_gap:.3e})")
    prior: list[tuple[MultiIndex, object]] = []
    for k_word in enumerate_words(max_depth):
        vec = apply_word(k_word, psi, rep)
        hit = None
        for j_word, other in prior:
            value = abs(float(rep.inner(other, vec)))
            if value > threshold:
                hit = j_word
                break
        if hit is not None:
            return k_word
        prior.append((k_word, vec))
    return None


@dataclass(frozen=True)
class SubspaceFrame:
    """Vectors S_0^m S_J psi spanning the subspace grown from one seed."""

    generator: object
    K: Optional[MultiIndex]
    words: tuple[MultiIndex, ...]
    vectors: tuple

    def max_pairwise_inner(self, rep=INTERVAL_REP) -> float:
        worst = 0.0
        for i in range(len(self.vectors)):
            for j in range(i + 1, len(self.vectors)):
                worst = max(worst, abs(float(rep.inner(self.vectors[i], self.vectors[j]))))
        return worst


def build_frame(psi, K: Optional[MultiIndex], depth: int, rep=INTERVAL_REP) -> SubspaceFrame:
    """Enumerate the frame words for a seed, bounded by ``depth``.

    With ``K`` given, words are 0^m J for J strictly below K in the
    (length, code) order (m and |J| each bounded by depth); duplicates such
    as 0^m and 0^(m-1)(0) collapse.  With ``K = None`` the words are every
    word of weight <= 1 up to the depth.
    """
    seen: dict[tuple[int, ...], MultiIndex] = {}
    if K is None:
        for w in enumerate_words(depth):
            if w.weight <= 1:
                seen.setdefault(w.digits, w)
    else:
        below = [j for j in enumerate_words(max(len(K.digits), depth)) if j < K]
        for m in range(depth + 1):
            prefix = (0,) * m
            for j in below:
                if len(j.digits) > depth:
                    continue
                w = prefix + j.digits
                seen.setdefault(w, MultiIndex(w))
    words = tuple(sorted(seen.values(), key=lambda w: w.sort_key))
    vectors = tuple(apply_word(w, psi, rep) for w in words)
    return SubspaceFrame(psi, K, words, vectors)


def frames_orthogonal(frame_a: SubspaceFrame, frame_b: SubspaceFrame,
                      tol: float = 1e-10, rep=INTERVAL_REP) -> bool:
    """True when every cross inner product between the frames is below tol."""
    for u in frame_a.vectors:
        for v in frame_b.vectors:
            if abs(float(rep.inner(u, v))) >= tol:
                return False
    return True


# ---------------------------------------------------------------------------
# Exact Gram checks and the level-k completeness certificate
# ---------------------------------------------------------------------------

def gram_identity_gap(vectors: Sequence[DyadicStep]) -> tuple[float, Optional[str]]:
    """Largest |<v_i, v_j> - delta_ij| over all pairs, exactly.

    All basis vectors here are +-1-valued integer steps, so after refining
    to the common level the Gram matrix is an integer matrix computed in
    float64; every product and partial sum is an integer below 2**53, hence
    the matmul is exact and the comparison against the identity is too.
    """
    k = max(v.level for v in vectors)
    if k > 22:
        raise ValueError("level too large for the exact integer Gram path")
    mat = np.empty((len(vectors), 1 << k), dtype=np.float64)
    for row, v in enumerate(vectors):
        mat[row] = np.repeat(np.array(v.coeffs, dtype=np.float64), 1 << (k - v.level))
    gram = (mat @ mat.T) / (1 << k)
    gap = np.abs(gram - np.eye(len(vectors)))
    worst = float(gap.max())
    if worst == 0.0:
        return 0.0, None
    i, j = np.unravel_index(int(gap.argmax()), gap.shape)
    return worst, f"vectors {i} and {j}"


def verify_decomposition(cover: GeneratorCover, level: int) -> VerificationReport:
    """Certify that the covered words below ``level``, applied to the first
    seed and joined with the constant, give exactly 2**level orthonormal steps.

    This is the depth-``level`` completeness certificate: Gram = identity
    exactly, and the count matches the dimension of the level-k step space.
    """
    if cover.max_word_len < level - 1:
        raise ValueError("cover is too shallow for the requested level")
    psi = walsh(1)
    vectors = [DyadicStep.ones()]
    for digits in sorted(cover.coverage, key=lambda d: MultiIndex(d).sort_key):
        if len(digits) < level:
            vectors.append(apply_word(MultiIndex(digits), psi))
    name = f"square-wave-decomposition-level-{level}"
    if len(vectors) != 1 << level:
        return VerificationReport(name, False, float("inf"), 0.0,
                                  f"expected {1 << level} vectors, got {len(vectors)}",
                                  len(vectors))
    worst, witness = gram_identity_gap(vectors)
    return VerificationReport(name, worst == 0.0, worst, 0.0, witness,
                              len(vectors) * (len(vectors) + 1) // 2)
