"""From information variables to superinformation.

The predicate ladder: computation variable, information variable,
distinguishable, measurable, observable.  A pair of information observables
whose union supports no information task at all is a superinformation pair;
classical substrates never produce one.
"""

import ctkit as ct

qubit = ct.quantum_substrate("qubit", 2)
model = ct.QuantumModel(qubit)


def held(state):
    return ct.extensional_attribute(qubit, [state])


X = ct.variable(qubit, [(0, held(ct.basis_state(2, 0))), (1, held(ct.basis_state(2, 1)))])
Y = ct.variable(qubit, [("+", held(ct.normalized([1, 1]))), ("-", held(ct.normalized([1, -1])))])

for name, v in [("X", X), ("Y", Y)]:
    print(f"{name}: information={ct.is_information_variable(v, model).verdict}"
          f" observable={ct.is_observable(v, model).verdict}")

# The union X u Y mixes non-orthogonal members, so it cannot support
# cloning; that failure is exactly what makes the pair superinformation.
pair = ct.detect_superinformation(X, Y, model)
print("superinformation(X, Y):", pair.verdict)

# A classical bit has plenty of information variables but every union of
# them is again an information variable, so the detector always refuses.
bit = ct.classical_substrate("bit", [0, 1])
bmodel = ct.ClassicalModel(bit)
B = ct.variable(bit, [(0, ct.extensional_attribute(bit, [0])),
                      (1, ct.extensional_attribute(bit, [1]))])
F = ct.variable(bit, [(0, ct.extensional_attribute(bit, [1])),
                      (1, ct.extensional_attribute(bit, [0]))])
print("superinformation(B, F):", ct.detect_superinformation(B, F, bmodel).verdict)

# The complement construction: bar of an attribute collects everything that
# is distinguishable from it.
z = held(ct.basis_state(2, 0))
print("bar({|0>}) is a subspace:", ct.bar(z, model).is_subspace)
print("bar(bar({|0>})) == span {|0>}:",
      ct.attribute_equal(ct.bar(ct.bar(z, model), model), ct.span_closure(z)))
