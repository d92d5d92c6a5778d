"""Walkthrough: the Lubich coefficient families and their two computation paths.

Run from the repository root after ``pip install -e .``:

    python demos/01_coefficient_families.py
"""

import numpy as np

from wsld import (
    generating_polynomial,
    grunwald_coeffs,
    lubich_coeffs,
    lubich_coeffs_oracle,
    root_factorization,
)

print("Generating polynomials (exact rationals)")
print("----------------------------------------")
for nu in range(1, 6):
    poly = ", ".join(str(c) for c in generating_polynomial(nu))
    print(f"  nu={nu}:  {poly}")
print()

print("The nu=1 series is the classic Grunwald binomial sequence: for")
print("integer alpha it terminates exactly.")
print(f"  alpha=1: {grunwald_coeffs(1.0, 4)}")
print(f"  alpha=2: {grunwald_coeffs(2.0, 4)}")
print(f"  alpha=1.5: {np.round(grunwald_coeffs(1.5, 6), 6)}")
print()

print("Fractional alpha, higher nu: the Miller recurrence evaluates the")
print("series of the alpha-th power of the polynomial in O(nu*K) time.")
l = lubich_coeffs(5, 1.8, 10)
print(f"  nu=5, alpha=1.8, first terms: {np.round(l, 6)}")
print(f"  l_0 equals p_0^alpha = (137/60)^1.8 = {(137 / 60) ** 1.8:.6f}")
print()

print("Closed-form root factorizations (Shengjin / Ferrari)")
print("----------------------------------------------------")
for nu in (3, 4, 5):
    rf = root_factorization(nu)
    roots = ", ".join(f"{r:.6f}" for r in rf.roots)
    print(f"  nu={nu}: leading {rf.leading}, roots {roots}")
    print(f"        re-expansion error {rf.reconstruction_error():.2e}")
print()

print("Cross-validation of the two paths at K = 64")
print("-------------------------------------------")
print("   nu  alpha      max |recurrence - oracle|")
for nu in (2, 3, 4, 5):
    for alpha in (-0.5, 1.5):
        a = lubich_coeffs(nu, alpha, 64)
        b = lubich_coeffs_oracle(nu, alpha, 64)
        print(f"   {nu}   {alpha:+.1f}        {np.abs(a - b).max():.2e}")
print()

print("Partial sums of the series tend to zero (the symbol vanishes at 1):")
l = lubich_coeffs(4, 1.5, 10_000)
partial = np.cumsum(l)
for k in (10, 100, 1000, 10_000):
    print(f"  sum up to k={k:>6}: {partial[k]:+.3e}")
