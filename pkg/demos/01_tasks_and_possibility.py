"""Tasks over a classical substrate: what is possible, and at what price.

A task names a set of input -> output transformations on attributes.  The
backend either exhibits a constructor for it or proves there is none; every
POSSIBLE verdict ships a witness you can replay.
"""

import ctkit as ct

light = ct.classical_substrate("traffic-light", ["red", "amber", "green", "off"])
model = ct.ClassicalModel(light)


def only(label):
    return ct.extensional_attribute(light, [label])


lit = ct.extensional_attribute(light, ["red", "amber", "green"])

# A permutation is always possible: just relabel.
swap = ct.task(light, [(only("red"), only("green")), (only("green"), only("red"))])
verdict = ct.is_task_possible(swap, model)
print("swap red/green:", verdict.status)
print("  witness map:", verdict.witness["assignment"])

# Collapsing three lit colours onto red is not injective, so no
# side-effect-free constructor exists.
collapse = ct.task(light, [(lit, only("red"))])
verdict = ct.is_task_possible(collapse, model)
print("collapse lit -> red:", verdict.status)
print("  certificate:", verdict.certificate)

# Allow side effects and the collapse goes through: the constructor writes
# what it erased onto an ancilla.
reset = ct.task(light, [(lit, only("red"))], side_effects=True)
verdict = ct.is_task_possible(reset, model)
print("reset with side effects:", verdict.status)
print("  ancilla labels used:", verdict.witness["ancilla_states"])

# Replaying a witness re-runs the constructor on every declared input.
print("replay confirms:", ct.replay_witness(reset, model, verdict))
