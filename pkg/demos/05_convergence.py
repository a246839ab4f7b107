"""Ensemble frequencies converge, exactly.

Prepare N copies of a state, count how many land in each cell of an
observable, and weigh the count vectors whose frequency profile strays more
than epsilon from the squared amplitudes.  Rational amplitudes keep the
whole computation in exact arithmetic.
"""

from fractions import Fraction

import numpy as np

import ctkit as ct

qubit = ct.quantum_substrate("qubit", 2)
X = ct.variable(qubit, [
    (0, ct.extensional_attribute(qubit, [ct.basis_state(2, 0)])),
    (1, ct.extensional_attribute(qubit, [ct.basis_state(2, 1)])),
])
plus = ct.normalized([1, 1])
eps = Fraction(1, 50)

# One row of the story: ten copies of |+>, threshold 1/50.
row = ct.deviant_weight((np.sqrt(0.5), np.sqrt(0.5)), 10, eps)
print(f"N=10 deviant weight: {row.render_exact()} = {row.approx}")

# The sweep drives the weight down; every value stays an exact rational.
report = ct.verify_E1_E2(plus, X, [10, 20, 50, 100, 200], eps)
for n, r in zip([10, 20, 50, 100, 200], report.rows):
    print(f"  N={n:3d}  weight={float(r.approx):.6f}")
print("monotone:", report.monotone, " final below bound:", report.final_ok)

# A partition of unity spreads one preparation over the observable's cells.
partition = ct.partition_of_unity(plus, X)
print("partition items:", [(label, f"{v:.3f}") for label, v in partition.items])
print("weights sum to one:", abs(sum(v for _, v in partition.items) - 1.0) < 1e-12)

# States with the same partition are indistinguishable by X alone; the
# class key makes that an equality of tuples.
minus = ct.normalized([1, -1])
print("class_key(|+>) == class_key(|->):",
      ct.class_key(plus, X) == ct.class_key(minus, X))
print("class_key(|+>) == class_key(|0>):",
      ct.class_key(plus, X) == ct.class_key(ct.basis_state(2, 0), X))
