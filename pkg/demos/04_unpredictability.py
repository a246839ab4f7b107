"""Why a superposition admits no predictor.

Take the computational observable X and a preparation y that is unsharp in
it.  Adjoin y to the restriction of X over its support; the resulting
variable Z can be neither cloned nor predicted, and the certificate records
which feasibility argument closes each door.
"""

import ctkit as ct

qubit = ct.quantum_substrate("qubit", 2)
model = ct.QuantumModel(qubit)

X = ct.variable(qubit, [
    (0, ct.extensional_attribute(qubit, [ct.basis_state(2, 0)])),
    (1, ct.extensional_attribute(qubit, [ct.basis_state(2, 1)])),
])
y = ct.extensional_attribute(qubit, [ct.normalized([1, 1])])

cert = ct.unpredictability_certificate(X, y, model)
print("members of Z:", sorted(cert.z.labels, key=str))
print("cloning possible:", cert.cloning_possible)
for receptive, verdict in cert.cloning.items():
    print(f"  receptive {receptive!r}: {verdict.status}")
print("predictor exists:", cert.predictor.exists)
print("refutation branch:", cert.predictor.certificate["branch"])
print("unpredictable:", cert.unpredictable)

# Against a sharp family the predictor is easy: measure, look up, announce.
Z_sharp = ct.variable(qubit, [
    (0, ct.extensional_attribute(qubit, [ct.basis_state(2, 0)])),
    (1, ct.extensional_attribute(qubit, [ct.basis_state(2, 1)])),
])
problem = ct.PredictorProblem(x=X, z=Z_sharp, measurer=ct.build_measurer(X))
verdict = ct.predictor_feasible(problem, model)
print("sharp-family predictor exists:", verdict.exists)
print("predictions:", verdict.predictions)
outcomes = ct.replay_predictor(problem, verdict.predictions)
print("replayed comparisons:", {k: v.verdict for k, v in outcomes.items()})
