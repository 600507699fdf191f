"""
Upper and lower conditional probabilities
==========================================

A mass function stands for the set of probability measures between Bel and
Pl.  Conditioning every member and taking the envelope gives closed-form
bounds; an exhaustive enumeration over selection functions agrees with them.
Dempster conditioning and geometric conditioning land inside the envelope.
"""

import numpy as np

from beliefupdate import Frame, MassFunction, bel_conditional, condition, dempster_condition, geometric_condition
from beliefupdate.evidence import CredalOracle

frame = Frame(("a", "b", "c", "d"))
m = MassFunction(frame, {
    frame.subset(["a"]): 0.2,
    frame.subset(["a", "b"]): 0.3,
    frame.subset(["b", "c"]): 0.25,
    frame.subset(["c", "d"]): 0.15,
    frame.full: 0.1,
})
given = frame.subset(["a", "b", "c"])
env = condition(m, given, "upper")
oracle = CredalOracle(m)
dem = dempster_condition(m, given)
geo = geometric_condition(m, given)
print(f"{len(oracle.points)} distinct extreme points enumerated")
print(f"{'event':<10}{'lower':>8}{'Bel_D':>8}{'Bel_g':>8}{'Pl_D':>8}{'upper':>8}   oracle (inf, sup)")
for labels in (["a"], ["b"], ["c"], ["a", "b"], ["b", "c"]):
    b = frame.subset(labels)
    sup, inf = oracle.bounds(b, given)
    row = (env.lower(b), bel_conditional(m, b, given), geo.belief(b), dem.plausibility(b), env.upper(b))
    print(f"{str(b):<10}" + "".join(f"{x:>8.3f}" for x in row) + f"   ({inf:.3f}, {sup:.3f})")

# the envelope widens as evidence gets vaguer: discount m towards ignorance
for eps in np.linspace(0, 1, 5):
    focal = {s: (1 - eps) * w for s, w in m.items()}
    focal[frame.full] = focal.get(frame.full, 0.0) + eps
    v = condition(MassFunction(frame, focal), given, "upper")
    b = frame.subset(["a"])
    print(f"discount {eps:.2f}: P(a | a,b,c) in [{v.lower(b):.3f}, {v.upper(b):.3f}]")
