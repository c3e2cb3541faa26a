#!/usr/bin/env python3
"""The scale-4 Cantor measure: transform zeros and the exponential spectrum.

The measure's transform is an infinite product that vanishes at an integer
exactly when the integer is a power of four times an odd number.  The
spectrum of exponentials {sum j_i 4^i : j_i in {0,1}} is orthonormal
because every difference of two distinct spectrum points has that form.
"""

from cuntz_bases import (
    CantorStep,
    bessel_sum,
    exp_coefficient,
    gram_exponentials,
    indicator_relation_check,
    lambda_set,
    mu_hat,
    mu_hat_is_zero,
    verify_lambda_partition,
)

print("Spectrum points with at most three base-4 digits:")
print(" ", [pt.value for pt in lambda_set(3)])

print()
print("Transform values and the exact zero predicate:")
for lam in (0, 1, 2, 4, 5, 12):
    value = mu_hat(lam)
    print(f"  mu_hat({lam:2d}) = {value.real:+.6f}{value.imag:+.6f}i"
          f"   exact zero: {mu_hat_is_zero(lam)}")

print()
print("Orthogonality certificates (pure integer arithmetic):")
gram = gram_exponentials(8)
print(f"  {gram.relation}: passed={gram.passed} over {gram.checked} pairs")
partition = verify_lambda_partition(8)
print(f"  {partition.relation}: passed={partition.passed} over {partition.checked} points")

print()
print("Cylinder indicators expand exactly through the isometry monomials:")
for word in [(0,), (1,), (0, 1), (1, 1, 0)]:
    report = indicator_relation_check(word)
    print(f"  word {word}: exact={report.passed}")

print()
print("Coefficients against the spectrum, and growing Bessel sums:")
cell = CantorStep(1, [1, 0])  # indicator of the left cell, squared norm 1/2
for lam in (0, 1, 4, 5):
    c = exp_coefficient(lam, cell)
    print(f"  <e_{lam}, cell> = {c.real:+.6f}{c.imag:+.6f}i")
sums = [2 * bessel_sum(cell, p) for p in range(2, 9)]
print("  normalized Bessel sums, p = 2..8 (nondecreasing, bounded by 1):")
print("   ", " ".join(f"{s:.6f}" for s in sums))
