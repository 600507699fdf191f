"""
Checking that the rules coincide where they should
===================================================

Each built-in check draws seeded random instances from a constrained family,
runs two rules that are expected to agree, and reports the worst deviation.
A deliberately wrong pairing shows what a failure report looks like.
"""

from beliefupdate.compare import CoincidenceSpec, Family, run_coincidence, run_suite

for rep in run_suite(seed=0):
    print(rep.summary())

bad = CoincidenceSpec("dempster-vs-jeffrey-with-conflict", "dempster_combine", "jeffrey_ds_update",
                      Family("conditionable-pair"), count=100)
rep = run_coincidence(bad, seed=0)
print()
print(rep.summary())
print("first witness:", rep.witness["instance"])
