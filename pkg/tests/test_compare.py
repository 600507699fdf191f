import pytest

from beliefupdate import (
    GeneratorConstraintUnsatisfiable,
    KindMismatch,
    UnknownRule,
    compare,
)
from beliefupdate.compare import (
    BUILTIN_SUITE,
    FIGURE1,
    CoincidenceSpec,
    Family,
    generate_instances,
    run_coincidence,
    run_suite,
)


def test_generator_is_reproducible():
    a = generate_instances(Family("possibility-pair", (4, 4)), seed=7, count=200)
    b = generate_instances(Family("possibility-pair", (4, 4)), seed=7, count=200)
    assert len(a) == 200
    assert [i["pi1"] for i in a] == [i["pi1"] for i in b]
    for inst in a:
        assert inst["frame"].size == 4
        assert max(inst["pi1"].values) == 1.0 and max(inst["pi2"].values) == 1.0


def test_bayesian_family():
    for inst in generate_instances("bayesian-partition", seed=1, count=50):
        assert all(len(s) == 1 for s in inst["m1"].focal_elements())


def test_dominance_family():
    for inst in generate_instances("observation-dominates", seed=2, count=100):
        assert all(y >= x for x, y in zip(inst["pi1"].values, inst["pi2"].values))


def test_unsatisfiable_family(monkeypatch):
    monkeypatch.setattr(compare, "MAX_REJECTIONS", 50)
    # the credal family only admits frames of at most five elements
    with pytest.raises(GeneratorConstraintUnsatisfiable):
        generate_instances(Family("credal", frame_sizes=(6, 6)), seed=0, count=5)


def test_unknown_rule_and_family():
    with pytest.raises(UnknownRule):
        run_coincidence(CoincidenceSpec("x", "no_such_rule", "dempster_combine", Family("mass-pair")))
    with pytest.raises(UnknownRule):
        generate_instances("no-such-family", seed=0)
    with pytest.raises(UnknownRule):
        run_suite(["no-such-suite"])


def test_kind_mismatch():
    with pytest.raises(KindMismatch):
        run_coincidence(CoincidenceSpec("x", "dempster_combine", "poss_jeffrey", Family("mass-pair")))
    with pytest.raises(KindMismatch):
        run_coincidence(CoincidenceSpec("x", "dempster_condition", "dempster_combine", Family("mass-pair")))


def test_report_is_deterministic():
    spec = BUILTIN_SUITE["no-conflict"]
    a, b = run_coincidence(spec, seed=5), run_coincidence(spec, seed=5)
    assert a.as_dict() == b.as_dict()
    assert a.passed and len(a.deviations) == 200


def test_failing_spec_has_witness():
    # Dempster combination and the extended Jeffrey rule differ once there is conflict
    spec = CoincidenceSpec("conflict", "dempster_combine", "jeffrey_ds_update", Family("conditionable-pair"), count=50)
    rep = run_coincidence(spec, seed=0)
    assert not rep.passed
    assert rep.witness is not None and rep.witness["deviation"] > spec.tolerance
    assert "FAIL" in rep.summary()


def test_figure1_suite_is_registered():
    assert set(FIGURE1) <= set(BUILTIN_SUITE)
    for r in run_suite(list(FIGURE1), seed=11):
        assert r.passed, r.summary()
