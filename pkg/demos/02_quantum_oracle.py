"""The quantum possibility oracle at work.

Feasibility of a quantum task reduces to a question about Gram matrices:
can some assignment of outputs reproduce every input overlap?  With side
effects the overlaps may shrink into an ancilla, never grow.
"""

import numpy as np

import ctkit as ct

qubit = ct.quantum_substrate("qubit", 2)
model = ct.QuantumModel(qubit)

zero = ct.basis_state(2, 0)
one = ct.basis_state(2, 1)
plus = ct.normalized([1, 1])


def held(state):
    return ct.extensional_attribute(qubit, [state])


# Permuting an orthonormal family is a unitary, hence possible.
flip = ct.task(qubit, [(held(zero), held(one)), (held(one), held(zero))])
print("basis flip:", ct.is_task_possible(flip, model).status)

# Cloning two orthogonal states is fine; the copier is a unitary on the pair.
pair = ct.compose_substrates(qubit, qubit)
clone_basis = ct.task(
    pair,
    [
        (ct.product_attribute(held(zero), held(zero)), ct.product_attribute(held(zero), held(zero))),
        (ct.product_attribute(held(one), held(zero)), ct.product_attribute(held(one), held(one))),
    ],
)
print("clone {|0>,|1>}:", ct.is_task_possible(clone_basis, model).status)

# Cloning {|0>,|+>} would shrink the visible overlap from 1/sqrt(2) to 1/2,
# and no unit garbage vector can make up a ratio above one.
clone_skew = ct.task(
    pair,
    [
        (ct.product_attribute(held(zero), held(zero)), ct.product_attribute(held(zero), held(zero))),
        (ct.product_attribute(held(plus), held(zero)), ct.product_attribute(held(plus), held(plus))),
    ],
    side_effects=True,
)
verdict = ct.is_task_possible(clone_skew, model)
print("clone {|0>,|+>}:", verdict.status)
print("  certificate:", verdict.certificate)

# Visible overlap may grow when side effects are allowed: a garbage
# register with overlap below one carries the difference.
nearly = ct.normalized([1, 0.001])
grow = ct.task(qubit, [(held(zero), held(zero)), (held(plus), held(nearly))],
               side_effects=True)
print("grow overlap (with ancilla):", ct.is_task_possible(grow, model).status)

# The same map without side effects must preserve the Gram matrix exactly.
strict = ct.task(qubit, [(held(zero), held(zero)), (held(plus), held(nearly))])
verdict = ct.is_task_possible(strict, model)
print("grow overlap (strict):", verdict.status)
print("  certificate:", verdict.certificate)
