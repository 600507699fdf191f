"""
Dempster's combination versus the extended Jeffrey rule
=======================================================

Two bodies of evidence with two focal elements each.  Both rules end up on
the same three focal elements, with different weights.  When the prior is
certain of A1 the Jeffrey-like rule refuses to update.
"""

from beliefupdate import ConditioningUndefined, Frame, MassFunction, dempster_combine, jeffrey_ds_update

frame = Frame(tuple("abcde"))
A1, B1 = frame.subset(["a", "b"]), frame.subset(["b", "c", "d", "e"])
A2, B2 = frame.subset(["c", "d"]), frame.subset(["a", "b", "c", "e"])


def show(title, m):
    print(title)
    for s, w in sorted(m.items(), key=lambda x: x[0].names()):
        print(f"   m({s}) = {w:.4f}")


alpha, beta = 0.6, 0.5
m1 = MassFunction(frame, {A1: alpha, B1: 1 - alpha})
m2 = MassFunction(frame, {A2: beta, B2: 1 - beta})
print(f"conflict between the sources: {m1.conflict(m2):.2f}")
show("Dempster's rule:", dempster_combine(m1, m2))
show("extended Jeffrey rule (m1 updated by m2):", jeffrey_ds_update(m1, m2))

# swapping the roles changes the Jeffrey-like result but not Dempster's
show("extended Jeffrey rule (m2 updated by m1):", jeffrey_ds_update(m2, m1))

# sweep beta with a certain prior: Dempster stays certain, Jeffrey refuses
certain = MassFunction.categorical(A1)
for beta in (0.1, 0.5, 0.9, 0.99):
    m2 = MassFunction(frame, {A2: beta, B2: 1 - beta})
    combined = dempster_combine(certain, m2)
    try:
        jeffrey_ds_update(certain, m2)
        verdict = "applies"
    except ConditioningUndefined as exc:
        verdict = f"undefined ({exc.reason})"
    print(f"beta={beta:<5} Dempster: m({A1 & B2}) = {combined[A1 & B2]:.2f}   Jeffrey: {verdict}")
