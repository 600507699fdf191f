"""
Spohn's rule versus the possibilistic rule
==========================================

Ranks translate to possibilities through exp(-kappa).  Spohn's
(A, n)-conditionalization is then a Jeffrey-like update on a two-cell
partition, and the two rules can be compared on the same observation.
"""

import math

from beliefupdate import Frame, Ocf, ocf_conditionalize, ocf_to_possibility, spohn_observation
from beliefupdate.ocf import compare_rules

frame = Frame(("w1", "w2", "w3", "w4", "w5"))
kappa = Ocf.from_mapping(frame, {"w1": 0, "w2": 1, "w3": 2, "w4": 4, "w5": 6})
A = frame.subset(["w3", "w4", "w5"])

print("shift n   ranks after (A, n)-conditionalization   max possibility outside A")
for n in (0, 1, 2, 5, 10):
    post = ocf_conditionalize(kappa, A, n)
    outside = max(ocf_to_possibility(post).values[i] for i in (~A).indices())
    print(f"{n:>7}   {str(post.ranks):<39} {outside:.2e}")


def table(rep):
    print(f"{'':>4}{'prior':>8}{'obs':>8}{'spohn':>8}{'poss':>8}")
    for lab, row in zip(frame.labels, zip(rep.prior.values, rep.observation.values,
                                          rep.spohn.values, rep.possibilistic.values)):
        print(f"{lab:>4}" + "".join(f"{x:>8.3f}" for x in row))
    print("flags:", ", ".join(k for k, v in rep.flags.items() if v) or "none")


# an observation that is stronger on A and weaker elsewhere
print("\nobservation: A fully possible, not-A possible to degree e^-2")
table(compare_rules(kappa, spohn_observation(frame, [(A, 1.0), (~A, math.exp(-2))])))

# a weak observation: the possibilistic rule keeps the prior, Spohn's does not
print("\nweak observation: not-A possible to degree 0.9")
table(compare_rules(kappa, spohn_observation(frame, [(~A, 1.0), (A, 0.9)])))
