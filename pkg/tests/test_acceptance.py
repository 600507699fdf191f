"""Acceptance criteria, one test each.

Every test records a single ``PASS``/``FAIL`` line; pytest prints them in an
"acceptance criteria" section at the end of the run.
"""

from __future__ import annotations

import itertools
import json
import math
import sys
import warnings

import numpy as np
import pytest

from beliefupdate import (
    ConditioningUndefined,
    Frame,
    KindMismatch,
    MassFunction,
    NotOnRankGrid,
    Ocf,
    PossibilityDistribution,
    ProbabilityMeasure,
    TotalConflict,
    UnnormalizedResult,
    WeightedPartition,
    bayes_condition,
    bel_conditional,
    condition,
    dempster_combine,
    dempster_condition,
    enumerate_subsets,
    geometric_condition,
    jeffrey_ds_update,
    jeffrey_update,
    ocf_conditionalize,
    ocf_to_possibility,
    poss_combine,
    poss_condition,
    poss_jeffrey_update,
    poss_update_crisp_with_doubt,
    possibility_to_ocf,
    spohn_observation,
    spohn_partition_update,
)
from beliefupdate.compare import (
    BUILTIN_SUITE,
    FIGURE1,
    CoincidenceSpec,
    Family,
    generate_instances,
    make_frame,
    random_mass,
    random_ocf,
    random_partition,
    random_possibility,
    random_probability,
    random_subset,
    run_coincidence,
)
from beliefupdate.documents import loads
from beliefupdate.evidence import CredalOracle
from beliefupdate.pipeline import pipeline_from_dict, run_pipeline

GRID = [round(0.1 * i, 1) for i in range(1, 10)]
RESULTS: dict[int, str] = {}


def report(number: int, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'} criterion {number:>2}: {detail}"
    RESULTS[number] = line
    print(line)  # shown with -s; the conftest terminal summary prints all lines in any case
    assert ok, line


def suite_run(name, **overrides):
    spec = BUILTIN_SUITE[name]
    if overrides:
        spec = CoincidenceSpec(**{**spec.__dict__, **overrides})
    return run_coincidence(spec, seed=0)


# 1 ----------------------------------------------------------------------------------


def test_criterion_01_worked_example_grid():
    f = Frame(tuple("abcde"))
    a1, b1, a2, b2 = (f.subset(list(s)) for s in ("ab", "bcde", "cd", "abce"))
    assert not a1 & a2 and all(x & y for x, y in ((a1, b1), (a1, b2), (b1, b2), (a2, b1), (a2, b2)))
    worst = 0.0
    same_focals = True
    for alpha, beta in itertools.product(GRID, GRID):
        m1 = MassFunction(f, {a1: alpha, b1: 1 - alpha})
        m2 = MassFunction(f, {a2: beta, b2: 1 - beta})
        k = 1 - alpha * beta
        want_c = {a1 & b2: alpha * (1 - beta) / k, b1 & a2: (1 - alpha) * beta / k, b1 & b2: (1 - alpha) * (1 - beta) / k}
        want_j = {b1 & a2: beta, a1 & b2: alpha * (1 - beta), b1 & b2: (1 - alpha) * (1 - beta)}
        got_c, got_j = dict(dempster_combine(m1, m2).items()), dict(jeffrey_ds_update(m1, m2).items())
        same_focals &= set(got_c) == set(want_c) == set(got_j) == set(want_j)
        for got, want in ((got_c, want_c), (got_j, want_j)):
            worst = max(worst, max(abs(got.get(s, math.inf) - v) for s, v in want.items()))
    report(1, same_focals and worst < 1e-9,
           f"81 (alpha, beta) grid points, identical focal sets={same_focals}, max deviation {worst:.2e}")


# 2, 3 -------------------------------------------------------------------------------


@pytest.fixture(scope="module")
def credal_instances():
    fam = Family("credal", frame_sizes=(3, 5), focal_count=6)
    return generate_instances(fam, seed=0, count=200)


def test_criterion_02_credal_oracle(credal_instances):
    worst, checked = 0.0, 0
    sizes = set()
    for inst in credal_instances:
        m = inst["m1"]
        sizes.add(m.frame.size)
        assert len(m) <= 6
        oracle = CredalOracle(m)
        events = list(enumerate_subsets(m.frame))
        for given in events:
            val = condition(m, given, "upper")
            for query in events:
                if not val.is_defined(query):
                    continue
                sup, inf = oracle.bounds(query, given)
                worst = max(worst, abs(val.upper(query) - sup), abs(val.lower(query) - inf))
                checked += 1
    report(2, worst < 1e-9 and sizes == {3, 4, 5},
           f"200 mass functions, |frame| in {sorted(sizes)}, {checked} (A, B) pairs, max deviation {worst:.2e}")


def test_criterion_03_conditional_ordering(credal_instances):
    violations, checked = 0, 0
    for inst in credal_instances:
        m = inst["m1"]
        events = list(enumerate_subsets(m.frame))
        for given in events:
            if m.plausibility(given) <= 1e-9 or m.belief(~given) >= 1 - 1e-9:
                continue
            val = condition(m, given, "upper")
            for query in events:
                if not val.is_defined(query):
                    continue
                upper, lower = val(query)
                pl = m.plausibility(query & given) / m.plausibility(given)
                bel = bel_conditional(m, query, given)
                checked += 1
                if not (upper >= pl - 1e-12 and pl >= bel - 1e-12 and bel >= lower - 1e-12):
                    violations += 1
    report(3, violations == 0 and checked > 0,
           f"P* >= Pl(.|B) >= Bel(.|B) >= P_* on {checked} defined cases, {violations} violations")


# 4 ----------------------------------------------------------------------------------


def test_criterion_04_figure1_suite():
    reports = [suite_run(n) for n in FIGURE1]
    ok = all(r.passed and len(r.deviations) == 200 and r.max_deviation < 1e-9 for r in reports)
    detail = ", ".join(f"{r.spec} {r.max_deviation:.1e}" for r in reports)
    report(4, ok, f"200 instances each: {detail}")


# 5 ----------------------------------------------------------------------------------


def test_criterion_05_cox_product():
    reports = [suite_run("cox-dempster"), suite_run("cox-geometric")]
    ok = all(r.passed and r.max_deviation < 1e-9 for r in reports)
    report(5, ok, "Pl(A&B) = Pl(A|B) Pl(B), Bel(A&B) = Bel_g(A|B) Bel(B): "
           + ", ".join(f"max deviation {r.max_deviation:.1e}" for r in reports))


# 6 ----------------------------------------------------------------------------------


def test_criterion_06_possibilistic_forms():
    r = suite_run("possibilistic-compact-vs-sup")
    sizes = {i["frame"].size for i in generate_instances(BUILTIN_SUITE[r.spec].family, 0, 500)}
    ok = r.passed and len(r.deviations) == 500 and r.max_deviation < 1e-12 and max(sizes) <= 8
    report(6, ok, f"compact vs level-cut sup form, 500 pairs, |frame| <= {max(sizes)}, "
           f"max deviation {r.max_deviation:.1e}")


# 7 ----------------------------------------------------------------------------------


def test_criterion_07_qualitative_laws():
    names = ["possibilistic-weaker-observation", "possibilistic-overlapping-cores",
             "possibilistic-stronger-observation", "spohn-stronger-observation"]
    reports = [suite_run(n) for n in names]
    violations = sum(sum(d > 1e-9 for d in r.deviations) for r in reports)
    ok = violations == 0 and all(len(r.deviations) == 500 for r in reports)
    report(7, ok, f"(a) pi2>=pi1 keeps pi1, (b) overlapping cores give min, (c) pi2<=pi1 gives pi2 "
           f"for both rules; 4 x 500 instances, {violations} violations")


# 8 ----------------------------------------------------------------------------------


def test_criterion_08_crisp_with_doubt():
    r = suite_run("crisp-with-doubt")
    worst = 0.0
    for inst in generate_instances(BUILTIN_SUITE["crisp-with-doubt"].family, 0, 200):
        nb = ~inst["B"]
        if not nb:
            continue
        post = poss_update_crisp_with_doubt(inst["pi1"], inst["B"], inst["doubt"])
        worst = max(worst, abs(post.possibility(nb) - min(inst["doubt"], inst["pi1"].possibility(nb))))
    ok = r.passed and r.max_deviation < 1e-12 and worst < 1e-12
    report(8, ok, f"closed form vs Jeffrey-like update on 200 (pi1, B, lambda), max deviation "
           f"{r.max_deviation:.1e}; Pi(~B) = min(lambda, Pi1(~B)) max deviation {worst:.1e}")


# 9 ----------------------------------------------------------------------------------


def test_criterion_09_ocf_two_paths():
    a = suite_run("ocf-two-path")
    b = suite_run("ocf-a-part")
    ok = a.passed and a.metric == "relative" and a.max_deviation < 1e-9 and b.passed and b.max_deviation < 1e-12
    report(9, ok, f"conditionalize-then-translate vs two-cell Spohn update, max relative deviation "
           f"{a.max_deviation:.1e}; A-part translation vs possibilistic conditioning {b.max_deviation:.1e}")


# 10 ---------------------------------------------------------------------------------


def test_criterion_10_limit():
    f = Frame(("a", "b", "c", "d"))
    k = Ocf.from_mapping(f, {"a": 2, "b": 0, "c": 1, "d": 4})
    a = f.subset(["c", "d"])
    ladder = [0, 1, 2, 5, 10, 50]
    outside = [max(ocf_to_possibility(ocf_conditionalize(k, a, n)).values[i] for i in (~a).indices())
               for n in ladder]
    monotone = all(x > y for x, y in zip(outside, outside[1:]))
    bound = outside[-1] <= math.exp(-49)
    report(10, monotone and bound, f"max posterior possibility outside A over n={ladder}: "
           + ", ".join(f"{x:.3g}" for x in outside))


# 11 ---------------------------------------------------------------------------------


def _check_mass(m: MassFunction) -> None:
    assert abs(sum(v for _, v in m.items()) - 1.0) <= 1e-9
    assert all(s and v > 0 for s, v in m.items())
    for b in enumerate_subsets(m.frame):
        assert abs(m.belief(b) - (1.0 - m.plausibility(~b))) <= 1e-12
        assert m.belief(b) <= m.plausibility(b) + 1e-12


def _check_possibility(d: PossibilityDistribution) -> None:
    assert abs(max(d.values) - 1.0) <= 1e-9
    events = list(enumerate_subsets(d.frame))
    for x in events:
        assert abs(d.necessity(x) - (1.0 - d.possibility(~x))) <= 1e-12
    for x, y in itertools.islice(itertools.combinations(events, 2), 60):
        assert d.possibility(x | y) == max(d.possibility(x), d.possibility(y))


def _check_ocf(k: Ocf) -> None:
    assert all(isinstance(r, int) and r >= 0 for r in k.ranks)
    assert min(k.ranks) == 0
    for x in enumerate_subsets(k.frame):
        if x:
            assert k.rank(x) == min(k.ranks[i] for i in x.indices())


def test_criterion_11_structural_invariants():
    rng = np.random.default_rng(11)
    cases = 0
    for _ in range(100):
        f = make_frame(int(rng.integers(1, 6)))
        cap = min(4, 2 ** f.size - 1)
        m1 = random_mass(rng, f, int(rng.integers(1, cap + 1)))
        m2 = random_mass(rng, f, int(rng.integers(1, cap + 1)))
        a = random_subset(rng, f)
        p = random_probability(rng, f)
        d1, d2 = random_possibility(rng, f), random_possibility(rng, f)
        k = random_ocf(rng, f)
        outputs = [m1, m2, MassFunction.from_probability(p)]
        if m1.plausibility(a) > 1e-9:
            outputs.append(dempster_condition(m1, a))
        if m1.belief(a) > 1e-9:
            outputs.append(geometric_condition(m1, a))
        if m1.conflict(m2) < 1 - 1e-9:
            outputs.append(dempster_combine(m1, m2))
        if all(m1.plausibility(x) > 1e-9 for x in m2.focal_elements()):
            outputs.append(jeffrey_ds_update(m1, m2))
        for m in outputs:
            _check_mass(m)
        cases += len(outputs)
        poss_out = [d1, d2]
        if d1.possibility(a) > 1e-9:
            poss_out.append(poss_condition(d1, a))
        if max(min(x, y) for x, y in zip(d1.values, d2.values)) > 1e-9:
            poss_out.append(poss_combine(d1, d2, "min"))
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", UnnormalizedResult)
                upd = poss_jeffrey_update(d1, d2)
            if upd.is_normalized:
                poss_out.append(upd)
        poss_out.append(ocf_to_possibility(k))
        if all(x > 0 for x in d1.values):
            poss_out.append(spohn_partition_update(d1, random_partition(rng, f, "max")))
        for d in poss_out:
            _check_possibility(d)
        cases += len(poss_out)
        ocf_out = [k]
        if a and ~a:
            ocf_out.append(ocf_conditionalize(k, a, int(rng.integers(0, 10))))
        ocf_out.append(possibility_to_ocf(ocf_to_possibility(k)))
        for o in ocf_out:
            _check_ocf(o)
        cases += len(ocf_out)
        # probability constructor and rule outputs
        probs = [p]
        if p.prob(a) > 1e-9:
            probs.append(bayes_condition(p, a))
        obs = random_partition(rng, f, "sum")
        if all(p.prob(c) > 1e-9 for c, w in obs if w > 1e-9):
            probs.append(jeffrey_update(p, obs))
        for q in probs:
            assert abs(sum(q.weights) - 1) <= 1e-9 and min(q.weights) >= 0
        cases += len(probs)
    report(11, cases >= 1000, f"{cases} random objects (100 draws) checked over constructors and rule outputs, 0 violations")


# 12 ---------------------------------------------------------------------------------


def _raises(exc_type, fn) -> bool:
    try:
        fn()
    except exc_type:
        return True
    except Exception:  # wrong error type
        return False
    return False


def test_criterion_12_error_paths():
    f = Frame(("a", "b", "c"))
    S = lambda *xs: f.subset(list(xs))  # noqa: E731
    point = MassFunction.categorical(S("a"))
    sharp = PossibilityDistribution.from_mapping(f, {"a": 1.0})
    e = Frame(tuple("abcde"))
    m1 = MassFunction(e, {e.subset(["a", "b"]): 1.0})
    m2 = MassFunction(e, {e.subset(["c", "d"]): 0.5, e.subset(list("abce")): 0.5})
    ocf_doc = loads(json.dumps({"format_version": 1, "kind": "ocf", "frame": ["a", "b", "c"],
                                "ocf": {"a": 0, "b": 1, "c": 3}}))
    cases = {
        "ConditioningUndefined: Bayes on a null event": (ConditioningUndefined, lambda: bayes_condition(
            ProbabilityMeasure.from_mapping(f, {"a": 1.0, "b": 0.0, "c": 0.0}), S("b"))),
        "ConditioningUndefined: Jeffrey cell with zero prior": (ConditioningUndefined, lambda: jeffrey_update(
            ProbabilityMeasure.from_mapping(f, {"a": 1.0, "b": 0.0, "c": 0.0}),
            WeightedPartition.of(f, [(["a"], 0.5), (["b", "c"], 0.5)]))),
        "ConditioningUndefined: Dempster with Pl(A)=0": (ConditioningUndefined,
                                                         lambda: dempster_condition(point, S("b", "c"))),
        "ConditioningUndefined: geometric with Bel(A)=0": (ConditioningUndefined,
                                                           lambda: geometric_condition(point, S("b"))),
        "ConditioningUndefined: upper bound with zero denominator": (ConditioningUndefined,
                                                                    lambda: condition(point, S("b", "c"), "upper").upper(S("b"))),
        "ConditioningUndefined: closed-form Bel with Bel(~A)=1": (ConditioningUndefined,
                                                                 lambda: bel_conditional(point, S("b"), S("b", "c"))),
        "ConditioningUndefined: extended Jeffrey, alpha=1 example": (ConditioningUndefined,
                                                                    lambda: jeffrey_ds_update(m1, m2)),
        "ConditioningUndefined: pipeline step aborts": (ConditioningUndefined, lambda: run_pipeline(
            loads(json.dumps({"format_version": 1, "kind": "mass", "frame": list("abcde"),
                              "mass": [{"subset": ["a", "b"], "mass": 1}]})),
            pipeline_from_dict({"kind": "pipeline", "steps": [{"op": "jeffrey_ds_update", "obs": {
                "format_version": 1, "kind": "mass", "frame": list("abcde"),
                "mass": [{"subset": ["c", "d"], "mass": 0.5}, {"subset": list("abce"), "mass": 0.5}]}}]}))),
        "ConditioningUndefined: possibilistic on Pi(B)=0": (ConditioningUndefined,
                                                           lambda: poss_condition(sharp, S("b", "c"))),
        "ConditioningUndefined: crisp-with-doubt on Pi(B)=0": (ConditioningUndefined,
                                                              lambda: poss_update_crisp_with_doubt(sharp, S("b"), 0.3)),
        "ConditioningUndefined: Spohn cell with Pi1=0": (ConditioningUndefined, lambda: spohn_partition_update(
            sharp, spohn_observation(f, [(["a"], 0.5), (["b", "c"], 1.0)]))),
        "TotalConflict: Dempster combination": (TotalConflict, lambda: dempster_combine(
            point, MassFunction.categorical(S("b", "c")))),
        "TotalConflict: possibilistic combination": (TotalConflict, lambda: poss_combine(
            sharp, PossibilityDistribution.indicator(S("b", "c")))),
        "TotalConflict: Jeffrey-like update": (TotalConflict, lambda: poss_jeffrey_update(
            sharp, PossibilityDistribution.indicator(S("b", "c")))),
        "NotOnRankGrid: pi(b)=0.5": (NotOnRankGrid, lambda: possibility_to_ocf(
            PossibilityDistribution.from_mapping(f, {"a": 1.0, "b": 0.5, "c": math.exp(-2)}))),
        "KindMismatch: pipeline step on wrong state": (KindMismatch, lambda: run_pipeline(
            ocf_doc, pipeline_from_dict({"kind": "pipeline", "steps": [{"op": "poss_condition", "on": ["a"]}]}))),
        "KindMismatch: coincidence check with different outputs": (KindMismatch, lambda: run_coincidence(
            CoincidenceSpec("x", "dempster_combine", "poss_jeffrey", Family("mass-pair")))),
    }
    failed = [name for name, (exc, fn) in cases.items() if not _raises(exc, fn)]
    report(12, not failed, f"{len(cases) - len(failed)}/{len(cases)} error cases raise the expected error"
           + (f"; missing: {failed}" if failed else ""))


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
