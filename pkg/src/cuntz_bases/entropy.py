"""Projection masses, entropy numbers, and best-basis selection.

Each word J of branch digits carries the projection P_J = S_J S_J*, and
since S_J is an isometry the mass ||P_J f||^2 equals ||S_J* f||^2, which is
what the implementation computes: walking the binary tree of adjoint states
g_(J.i) = S_i* g_J.  Appending a digit on the right splits a node's mass
between its two children:

    word ()        g = f                 mass 1
    word (0)       g = S_0* f            mass p0
    word (0,1)     g = S_1* S_0* f       one of the two children of (0)

so mass(J) = mass(J+(0,)) + mass(J+(1,)) at every node, and each level's
masses form a probability distribution whose Shannon entropy is the level's
entropy number.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .dyadic import MultiIndex
from .operators import INTERVAL_REP
from .reporting import VerificationReport

# below this, a mass is an exact zero for the 0*ln(0) = 0 convention
ZERO_MASS = 1e-15


def _nlogn(mass) -> float:
    if mass <= ZERO_MASS:
        return 0.0
    mass = float(mass)
    return -mass * math.log(mass) + 0.0  # + 0.0 normalizes -0.0 away


def _mass_tree(f, depth: int, rep) -> dict[tuple[int, ...], object]:
    """Normalized masses ||S_J* f||^2 / ||f||^2 for all |J| <= depth.

    Masses stay exact rationals on exact carriers (the adjoints and norms
    are exact there) and are floats on trig hybrids.
    """
    total = rep.norm_sq(f)
    if total <= 0.0:
        raise ValueError("cannot analyze the zero function")
    if isinstance(total, int):
        total = Fraction(total)

    def mass_of(g):
        value = rep.norm_sq(g)
        if isinstance(value, int):
            value = Fraction(value)
        return value / total

    masses: dict[tuple[int, ...], object] = {(): mass_of(f)}
    frontier = {(): f}
    for _ in range(depth):
        next_frontier = {}
        for word, g in frontier.items():
            for digit in (0, 1):
                child = rep.adjoint(digit, g)
                key = word + (digit,)
                masses[key] = mass_of(child)
                next_frontier[key] = child
        frontier = next_frontier
    return masses


def projection_masses(f, k: int, rep=INTERVAL_REP) -> dict[MultiIndex, object]:
    """Masses ||P_J f||^2 for all words of length k (normalizing f first).

    Values are exact rationals for step inputs, floats for hybrids.
    """
    if k < 0:
        raise ValueError("depth must be nonnegative")
    masses = _mass_tree(f, k, rep)
    return {MultiIndex(w): m for w, m in masses.items() if len(w) == k}


def entropy(f, k: int, rep=INTERVAL_REP) -> float:
    """Entropy number of the depth-k projection masses (natural log)."""
    return sum(_nlogn(m) for m in projection_masses(f, k, rep).values())


def onb_entropy(coefficients: Sequence, tol: float = 1e-10) -> float:
    """Entropy of expansion coefficients against an orthonormal basis.

    The squared moduli must sum to one (within tol): entropy measures how
    spread the expansion is, so it is only meaningful for a unit vector.
    """
    weights = [abs(complex(c)) ** 2 for c in coefficients]
    total = sum(weights)
    if abs(total - 1.0) > tol:
        raise ValueError(f"coefficients not normalized: sum of squares = {total}")
    return sum(_nlogn(w) for w in weights)


def verify_entropy_recursion(f, k: int, rep=INTERVAL_REP,
                             tol: float = 1e-12) -> VerificationReport:
    """Check the chain rule for entropy numbers:

        eps_{k+1}(f) = eps_1(f) + sum_i ||S_i* f||^2 eps_k(S_i* f / ||S_i* f||)

    Branches of zero mass contribute zero.  (The conditional entropy on
    branch i is that of the adjoint state S_i* f; projecting back up with
    S_i only pads the mass tree with zeros one level down.)
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    lhs = entropy(f, k + 1, rep)
    rhs = entropy(f, 1, rep)
    total = float(rep.norm_sq(f))
    for digit in (0, 1):
        g = rep.adjoint(digit, f)
        mass = float(rep.norm_sq(g)) / total
        if mass > ZERO_MASS:
            rhs += mass * entropy(g, k, rep)
    gap = abs(lhs - rhs)
    return VerificationReport(f"entropy-chain-rule-k{k}", gap < tol, gap, tol,
                              None if gap < tol else f"lhs={lhs!r} rhs={rhs!r}", 1)


# ---------------------------------------------------------------------------
# The subdivision tree and best-basis search
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EntropyTree:
    """All masses of the subdivision tree to a fixed depth, plus the
    per-level entropy numbers and the minimizing leaf antichain."""

    depth: int
    masses: dict[tuple[int, ...], float]
    level_entropy: tuple[float, ...]
    best_leaves: tuple[MultiIndex, ...]
    best_cost: float

    def mass(self, word) -> float:
        word = tuple(word.digits) if isinstance(word, MultiIndex) else tuple(word)
        return self.masses[word]

    def rows(self):
        """(word, mass, entropy term) rows in (length, code) order."""
        keys = sorted(self.masses, key=lambda w: MultiIndex(w).sort_key)
        best = {w.digits for w in self.best_leaves}
        for key in keys:
            m = self.masses[key]
            yield MultiIndex(key), m, _nlogn(m), key in best

    def to_json(self) -> dict:
        return {
            "depth": self.depth,
            "nodes": [{"word": str(w), "mass": float(m), "entropy": e, "bestLeaf": b}
                      for w, m, e, b in self.rows()],
            "levelEntropy": list(self.level_entropy),
            "bestCost": self.best_cost,
        }


def build_entropy_tree(f, depth: int, rep=INTERVAL_REP) -> EntropyTree:
    if depth < 1:
        raise ValueError("depth must be at least one")
    masses = _mass_tree(f, depth, rep)
    levels = tuple(
        sum(_nlogn(m) for w, m in masses.items() if len(w) == k)
        for k in range(1, depth + 1))
    leaves, cost = _best_antichain(masses, (), depth)
    return EntropyTree(depth, masses, levels,
                       tuple(MultiIndex(w) for w in leaves), cost)


def _best_antichain(masses, word, depth_left) -> tuple[list[tuple[int, ...]], float]:
    keep_cost = _nlogn(masses[word])
    if depth_left == 0 or masses[word] <= ZERO_MASS:
        return [word], keep_cost
    left, cl = _best_antichain(masses, word + (0,), depth_left - 1)
    right, cr = _best_antichain(masses, word + (1,), depth_left - 1)
    if keep_cost <= cl + cr:
        return [word], keep_cost
    return left + right, cl + cr


def best_basis(f, max_depth: int, rep=INTERVAL_REP) -> tuple[tuple[MultiIndex, ...], float]:
    """Leaf antichain of the subdivision tree minimizing total entropy.

    The cost of an antichain is the entropy of its mass distribution; the
    split-vs-keep dynamic program is optimal because the cost is additive
    over leaves.  Ties prefer the shallower node.  Entropy is subadditive
    under merging cells, so a merge never costs more than its parts: on
    exact inputs the search certifies the returned cost against every
    refinement (in particular cost <= every uniform-depth entropy number),
    with coarse antichains favored.
    """
    tree = build_entropy_tree(f, max(max_depth, 1), rep) if max_depth >= 1 else None
    if max_depth < 1:
        return (MultiIndex(()),), 0.0
    return tree.best_leaves, tree.best_cost
