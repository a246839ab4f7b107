"""Games of chance and the derived value of an unsharp holding.

A game pairs a payoff-labelled observable with the attribute the player
holds.  Values compose additively, shift with the stakes, flip under
reflection, and for m-of-n games the rewrite derivation reproduces the
direct expectation step by checked step.
"""

import ctkit as ct

qubit = ct.quantum_substrate("qubit", 2)

payoffs = ct.variable(qubit, [
    (0, ct.extensional_attribute(qubit, [ct.basis_state(2, 0)])),
    (1, ct.extensional_attribute(qubit, [ct.basis_state(2, 1)])),
])
holding = ct.extensional_attribute(qubit, [ct.normalized([1, 1])])
game = ct.make_game(payoffs, holding)
print("value of the balanced game:", ct.game_value(game))

# Transforms act on the payoff labels; the value follows along.
print("shift by 3:", ct.game_value(ct.transform_game(game, "shift", k=3)))
print("reflection:", ct.game_value(ct.transform_game(game, "reflection")))

# Exact arithmetic when weights and payoffs are rational.
from fractions import Fraction

print("exact 1/3 vs 2/3 at stakes 10/-2:",
      ct.exact_game_value([Fraction(1, 3), Fraction(2, 3)], [10, -2]))

# The derivation engine rebuilds the same number through its rule chain,
# checking each rewrite semantically as it goes.
trace = ct.derive_value_mn(1, 3, (10, -2))
print(ct.render_trace(trace))
print("derived value:", trace.final_value)

# The decision-support checklist: a conjugate pair of observables plus the
# entangled preparation that squares the account.
model = ct.QuantumModel(qubit)
Y = ct.variable(qubit, [
    ("+", ct.extensional_attribute(qubit, [ct.normalized([1, 1])])),
    ("-", ct.extensional_attribute(qubit, [ct.normalized([1, -1])])),
])
support = ct.check_decision_support(model, payoffs, Y)
for name, ok, _ in support.checks:
    print(f"  {name}: {'pass' if ok else 'fail'}")
print("decision-support:", support.passed)
