#!/usr/bin/env python3
"""Entropy over the subdivision tree and the best-basis search.

Each binary word J carries the projection onto its branch subspace; the
squared projection masses at depth k form a probability distribution and
their Shannon entropy measures how spread the signal is at that depth.
The best basis is the leaf antichain minimizing total entropy.
"""

import math

from cuntz_bases import (
    best_basis,
    build_entropy_tree,
    entropy,
    ingest_signal,
    onb_entropy,
    s_apply,
    walsh,
    walsh_expand,
)

# a signal that is smooth on the left half and oscillating on the right
signal = ingest_signal([4, 4, 4, 4, 3, -3, 3, -3], 3)
tree = build_entropy_tree(signal, 3)

print("Masses down the subdivision tree (word '' is the root):")
for word, mass, _term, best in tree.rows():
    marker = "  <- best-basis leaf" if best else ""
    print(f"  {str(word) or '(root)':7s} mass = {str(mass):8s}{marker}")

print()
print("Per-level entropy numbers versus the best antichain:")
for k, eps in enumerate(tree.level_entropy, start=1):
    print(f"  uniform depth {k}: {eps:.6f}")
leaves, cost = best_basis(signal, 3)
print(f"  best basis cost: {cost:.6f} at leaves {[str(w) or '(root)' for w in leaves]}")
print("  (merging cells never increases this cost, so ties collapse upward)")

print()
print("Entropy depends on the basis chosen, not just the signal:")
mix = walsh(0) + walsh(1)  # equal two-term mixture
coeffs = walsh_expand(mix)
norm = math.sqrt(float(mix.norm_sq()))
print(f"  in the square-wave basis: {onb_entropy([float(c) / norm for c in coeffs]):.6f} (= ln 2)")
print(f"  in a rotated basis:       {onb_entropy([1.0, 0.0]):.6f}")

print()
print("A signal supported on one branch just shifts the tree one level:")
g = ingest_signal([2, -1, 0, 3], 2)
f = s_apply(0, g)
for k in (1, 2):
    print(f"  entropy(branch signal, {k + 1}) = {entropy(f, k + 1):.9f}"
          f"  == entropy(original, {k}) = {entropy(g, k):.9f}")
