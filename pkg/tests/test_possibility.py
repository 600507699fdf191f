import math
import warnings

import pytest
from hypothesis import given
from hypothesis import strategies as st
from strategies import frame_and, possibilities, subsets

from beliefupdate import (
    ConditioningUndefined,
    ConjunctionOp,
    Frame,
    FrameMismatch,
    PossibilityDistribution,
    TotalConflict,
    UnnormalizedResult,
    ValidationError,
    WeightedSource,
    WeightNormalization,
    enumerate_subsets,
    level_cut,
    poss_combine,
    poss_condition,
    poss_jeffrey_update,
    poss_jeffrey_update_sup,
    poss_update_crisp_with_doubt,
    weighted_max_aggregate,
)
from beliefupdate.possibility import (
    doubt_observation,
    jeffrey_conditional_necessity,
    jeffrey_conditional_possibility,
    level_cuts,
)


def S(frame, members):
    return frame.subset(list(members))


def P(frame, **values):
    return PossibilityDistribution.from_mapping(frame, values)


@pytest.fixture
def pi1(abc):
    return P(abc, a=1.0, b=0.5, c=0.2)


def test_measures(abc, pi1):
    assert pi1.possibility(S(abc, "bc")) == 0.5
    assert pi1.necessity(S(abc, "a")) == pytest.approx(0.5)
    assert pi1.possibility(abc.full) == 1.0
    assert pi1.possibility(abc.empty) == 0.0


def test_crisp_limit(abc):
    d = PossibilityDistribution.indicator(S(abc, "ab"))
    for a in enumerate_subsets(abc):
        assert d.possibility(a) == (1.0 if a & S(abc, "ab") else 0.0)
        assert d.necessity(a) == (1.0 if S(abc, "ab") <= a else 0.0)


def test_validation(abc):
    with pytest.raises(ValidationError, match="possibility normalization"):
        PossibilityDistribution(abc, (0.8, 0.5, 0.2))
    with pytest.raises(ValidationError, match="possibility range"):
        PossibilityDistribution(abc, (1.0, 1.5, 0.2))
    with pytest.raises(ValidationError):
        PossibilityDistribution(abc, (1.0, 0.5))


def test_level_cuts(abc, pi1):
    assert level_cut(pi1, 0.5).set == S(abc, "ab")
    assert [lc.alpha for lc in level_cuts(pi1)] == [1.0, 0.5, 0.2]
    with pytest.raises(ValueError):
        level_cut(pi1, 0.0)
    assert pi1.core() == S(abc, "a") and pi1.support() == abc.full


def test_conditioning(abc, pi1):
    assert poss_condition(pi1, S(abc, "bc")).values == pytest.approx((0.0, 1.0, 0.4))
    assert poss_condition(pi1, abc.full) == pi1
    assert poss_condition(pi1, S(abc, "ab")).values == pytest.approx((1.0, 0.5, 0.0))


def test_conditioning_on_impossible_event(abc):
    d = P(abc, a=1.0, b=0.0, c=0.0)
    with pytest.raises(ConditioningUndefined):
        poss_condition(d, S(abc, "bc"))


def test_combination(abc, pi1):
    b = S(abc, "bc")
    got = poss_combine(pi1, PossibilityDistribution.indicator(b), "min")
    assert got.values == pytest.approx(poss_condition(pi1, b).values)
    for op in ConjunctionOp:
        assert poss_combine(pi1, PossibilityDistribution.vacuous(abc), op).values == pytest.approx(pi1.values)
    with pytest.raises(TotalConflict):
        poss_combine(P(abc, a=1.0), P(abc, b=1.0, c=0.4))


def test_product_and_lukasiewicz_combination(abc, pi1):
    pi2 = P(abc, a=0.6, b=1.0, c=0.5)
    assert poss_combine(pi1, pi2, "product").values == pytest.approx((1.0, 0.5 / 0.6, 0.1 / 0.6))
    # Lukasiewicz: max(0, x + y - 1) = (0.6, 0.5, 0); height 0.6
    assert poss_combine(pi1, pi2, "lukasiewicz").values == pytest.approx((1.0, 0.5 / 0.6, 0.0))


def test_weighted_max(abc):
    f = Frame(("a", "b"))
    p1 = PossibilityDistribution.from_mapping(f, {"a": 1.0, "b": 0.0})
    p2 = PossibilityDistribution.from_mapping(f, {"a": 0.0, "b": 1.0})
    assert weighted_max_aggregate([(p1, 1.0), (p2, 0.5)], "min").values == (1.0, 0.5)
    assert weighted_max_aggregate([WeightedSource(p1, 1.0)]) == p1
    assert weighted_max_aggregate([(p1, 1.0), (p1, 1.0)]) == p1
    with pytest.raises(WeightNormalization):
        weighted_max_aggregate([(p1, 0.7), (p2, 0.5)])


def test_jeffrey_like_hand_example(abc, pi1):
    pi2 = P(abc, a=0.3, b=1.0, c=1.0)
    assert poss_jeffrey_update(pi1, pi2).values == pytest.approx((0.3, 1.0, 0.4))
    assert poss_jeffrey_update_sup(pi1, pi2).values == pytest.approx((0.3, 1.0, 0.4))


def test_jeffrey_like_qualitative_laws(abc, pi1):
    weaker = P(abc, a=1.0, b=0.7, c=0.9)
    assert poss_jeffrey_update(pi1, weaker) == pi1
    overlapping = P(abc, a=1.0, b=0.2, c=0.6)
    assert poss_jeffrey_update(pi1, overlapping).values == pytest.approx((1.0, 0.2, 0.2))


def test_jeffrey_like_product(abc, pi1):
    pi2 = P(abc, a=0.3, b=1.0, c=1.0)
    assert poss_jeffrey_update(pi1, pi2, "product").values == pytest.approx((0.3, 1.0, 0.4))
    with pytest.raises(ValueError):
        poss_jeffrey_update(pi1, pi2, "lukasiewicz")


def test_jeffrey_like_subnormal_warns(abc):
    d1 = P(abc, a=1.0, b=0.5, c=0.0)
    d2 = P(abc, a=0.2, b=0.4, c=1.0)
    with pytest.warns(UnnormalizedResult):
        out = poss_jeffrey_update(d1, d2)
    assert out.values == pytest.approx((0.2, 0.4, 0.0))
    assert not out.is_normalized


def test_jeffrey_like_total_conflict(abc):
    with pytest.raises(TotalConflict):
        poss_jeffrey_update(P(abc, a=1.0), P(abc, b=1.0, c=0.3))


def test_crisp_with_doubt_example(abc):
    d1 = P(abc, a=0.4, b=1.0, c=0.6)
    got = poss_update_crisp_with_doubt(d1, S(abc, "a"), 0.5)
    assert got.values == pytest.approx((1.0, 0.5, 0.5))
    assert poss_jeffrey_update(d1, doubt_observation(S(abc, "a"), 0.5)).values == pytest.approx(got.values)


def test_crisp_with_doubt_limits(abc, pi1):
    b = S(abc, "bc")
    assert poss_update_crisp_with_doubt(pi1, b, 0.0) == poss_condition(pi1, b)
    assert poss_update_crisp_with_doubt(pi1, b, 1.0) == pi1
    assert poss_jeffrey_update(pi1, doubt_observation(b, 1.0)) == pi1
    with pytest.raises(ConditioningUndefined):
        poss_update_crisp_with_doubt(P(abc, a=1.0), b, 0.3)


def test_frame_mismatch(abc, pi1):
    with pytest.raises(FrameMismatch):
        poss_jeffrey_update(pi1, PossibilityDistribution.vacuous(Frame(("x", "y", "z"))))


# --- properties -----------------------------------------------------------------------


@given(frame_and(possibilities, lambda f: subsets(f), lambda f: subsets(f)))
def test_maxitivity_and_duality(args):
    f, d, a, b = args
    assert d.possibility(a | b) == max(d.possibility(a), d.possibility(b))
    assert d.necessity(a & b) == pytest.approx(min(d.necessity(a), d.necessity(b)))
    assert d.necessity(a) == pytest.approx(1 - d.possibility(~a))
    assert d.necessity(a) <= d.possibility(a) or not a
    assert max(d.possibility(a), d.possibility(~a)) == 1.0


@given(frame_and(possibilities, lambda f: st.lists(st.floats(0.01, 1.0), min_size=2, max_size=2)))
def test_cuts_are_nested(args):
    f, d, (x, y) = args
    lo, hi = sorted((x, y))
    assert level_cut(d, hi).set <= level_cut(d, lo).set


def _pair(f, d1, d2):
    return any(x > 1e-9 and y > 1e-9 for x, y in zip(d1.values, d2.values))


@given(frame_and(possibilities, possibilities, max_size=7))
def test_jeffrey_like_forms_agree_and_are_maxitive(args):
    f, d1, d2 = args
    if not _pair(f, d1, d2):
        with pytest.raises(TotalConflict):
            poss_jeffrey_update(d1, d2)
        return
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", UnnormalizedResult)
        compact = poss_jeffrey_update(d1, d2)
        sup = poss_jeffrey_update_sup(d1, d2)
    assert compact.values == pytest.approx(sup.values, abs=1e-12)
    assert all(0.0 <= x <= y + 1e-12 for x, y in zip(compact.values, d2.values))
    if f.size <= 5:
        for a in enumerate_subsets(f):
            assert compact.possibility(a) == pytest.approx(jeffrey_conditional_possibility(d1, d2, a), abs=1e-12)
            if compact.is_normalized:
                assert 1 - compact.possibility(~a) == pytest.approx(
                    jeffrey_conditional_necessity(d1, d2, a), abs=1e-12)


@given(frame_and(possibilities, lambda f: subsets(f, nonempty=True)), st.floats(0.0, 0.999))
def test_crisp_with_doubt_property(args, lam):
    f, d1, b = args
    if d1.possibility(b) <= 1e-9:
        return
    got = poss_update_crisp_with_doubt(d1, b, lam)
    assert got.values == pytest.approx(poss_jeffrey_update(d1, doubt_observation(b, lam)).values, abs=1e-12)
    if ~b:
        assert got.possibility(~b) == pytest.approx(min(lam, d1.possibility(~b)), abs=1e-12)


@given(frame_and(possibilities, possibilities), st.sampled_from(list(ConjunctionOp)))
def test_combination_is_normalized_and_symmetric(args, op):
    f, d1, d2 = args
    try:
        out = poss_combine(d1, d2, op)
    except TotalConflict:
        assert max(op(x, y) for x, y in zip(d1.values, d2.values)) <= 1e-9
        return
    assert math.isclose(max(out.values), 1.0)
    assert out.values == pytest.approx(poss_combine(d2, d1, op).values)
