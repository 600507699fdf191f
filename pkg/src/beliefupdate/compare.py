"""Cross-rule coincidence checks over seeded random instance families.

A :class:`CoincidenceSpec` names two registered rules and an instance family.
:func:`run_coincidence` draws the instances, evaluates both rules on each one
and reports the largest deviation.  Each rule maps an instance to a flat
``{key: value}`` dict, and a key present on only one side counts as an
infinite deviation.

Instances are plain dicts.  The fields used are ``frame``, ``m1``, ``m2``,
``p``, ``p2``, ``obs``, ``pi1``, ``pi2``, ``kappa``, ``A``, ``B``, ``n``,
``doubt`` and ``pairs``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import asdict, dataclass, field
from typing import Any, Callable

import numpy as np

from . import evidence as ev
from . import ocf as oc
from . import possibility as po
from .errors import (
    GeneratorConstraintUnsatisfiable,
    KindMismatch,
    UnknownRule,
    UnnormalizedResult,
    UpdateError,
)
from .frame import Frame, Subset, enumerate_subsets, subsets_of
from .probability import EPS, ProbabilityMeasure, WeightedPartition, jeffrey_update

MAX_REJECTIONS = 10**5

Instance = dict

# --- random building blocks -------------------------------------------------------


class _Reject(Exception):
    pass


def make_frame(size: int) -> Frame:
    return Frame(tuple(f"w{i}" for i in range(size)))


def random_subset(rng: np.random.Generator, frame: Frame, p: float = 0.5, nonempty: bool = True) -> Subset:
    while True:
        bits = 0
        for i, keep in enumerate(rng.random(frame.size) < p):
            if keep:
                bits |= 1 << i
        if bits or not nonempty:
            return Subset(frame, bits)


def random_mass(rng, frame: Frame, focal_count: int, p: float = 0.5) -> ev.MassFunction:
    if focal_count > (1 << frame.size) - 1:
        raise _Reject
    focal: set[int] = set()
    for _ in range(50 * focal_count):
        focal.add(random_subset(rng, frame, p).bits)
        if len(focal) == focal_count:
            break
    else:
        raise _Reject
    masses = rng.dirichlet(np.ones(focal_count))
    return ev.MassFunction(frame, {Subset(frame, b): float(w) for b, w in zip(sorted(focal), masses)})


def random_probability(rng, frame: Frame) -> ProbabilityMeasure:
    w = rng.dirichlet(np.ones(frame.size))
    w = w / w.sum()
    return ProbabilityMeasure(frame, tuple(float(x) for x in w))


def random_partition(rng, frame: Frame, mode: str = "sum") -> WeightedPartition:
    k = int(rng.integers(1, frame.size + 1))
    labels = rng.integers(0, k, size=frame.size)
    cells = []
    for c in range(k):
        bits = 0
        for i in np.flatnonzero(labels == c):
            bits |= 1 << int(i)
        if bits:
            cells.append(Subset(frame, bits))
    if mode == "sum":
        w = rng.dirichlet(np.ones(len(cells)))
        w = w / w.sum()
    else:
        w = rng.random(len(cells))
        w[int(rng.integers(len(cells)))] = 1.0
    return WeightedPartition(frame, tuple(zip(cells, (float(x) for x in w))), mode)


def random_values(rng, size: int) -> np.ndarray:
    v = rng.random(size)
    if rng.random() < 0.5:
        # coarse grid: produces ties and shared level cuts
        v = np.round(v * 4) / 4
    return v


def random_possibility(rng, frame: Frame) -> po.PossibilityDistribution:
    v = random_values(rng, frame.size)
    v[int(rng.integers(frame.size))] = 1.0
    return po.PossibilityDistribution(frame, tuple(float(x) for x in v))


def random_ocf(rng, frame: Frame, max_rank: int = 6) -> oc.Ocf:
    r = rng.integers(0, max_rank + 1, size=frame.size)
    r[int(rng.integers(frame.size))] = 0
    return oc.Ocf(frame, tuple(int(x) for x in r))


# --- families -----------------------------------------------------------------------


@dataclass(frozen=True)
class Family:
    """Instance generator description.

    ``frame_sizes`` is an inclusive ``(lo, hi)`` range; ``focal_count`` caps
    the number of focal elements of generated mass functions.
    """

    name: str
    frame_sizes: tuple[int, int] = (3, 5)
    focal_count: int = 4


def _size(rng, fam: Family) -> Frame:
    lo, hi = fam.frame_sizes
    return make_frame(int(rng.integers(lo, hi + 1)))


def _focals(rng, fam: Family) -> int:
    return int(rng.integers(1, fam.focal_count + 1))


def _gen_mass_pair(rng, fam):
    f = _size(rng, fam)
    m1 = random_mass(rng, f, _focals(rng, fam))
    m2 = random_mass(rng, f, _focals(rng, fam))
    return {"frame": f, "m1": m1, "m2": m2}


def _chk_conditionable(inst):
    return all(inst["m1"].plausibility(a) > EPS for a in inst["m2"].focal_elements())


def _gen_categorical(rng, fam):
    f = _size(rng, fam)
    m1 = random_mass(rng, f, _focals(rng, fam))
    a = random_subset(rng, f)
    return {"frame": f, "m1": m1, "A": a, "m2": ev.MassFunction.categorical(a)}


def _chk_categorical(inst):
    return inst["m1"].plausibility(inst["A"]) > EPS and len(inst["m2"]) == 1


def _gen_bayes_partition(rng, fam):
    f = _size(rng, fam)
    p = random_probability(rng, f)
    obs = random_partition(rng, f, "sum")
    return {"frame": f, "p": p, "m1": ev.MassFunction.from_probability(p), "obs": obs,
            "m2": ev.MassFunction.from_partition(obs)}


def _chk_bayes_partition(inst):
    return (inst["m1"].is_bayesian() and all(inst["p"].prob(c) > EPS for c, _ in inst["obs"]))


def _gen_no_conflict(rng, fam):
    f = _size(rng, fam)
    m1 = random_mass(rng, f, _focals(rng, fam), p=0.75)
    m2 = random_mass(rng, f, _focals(rng, fam), p=0.75)
    return {"frame": f, "m1": m1, "m2": m2}


def _chk_no_conflict(inst):
    return inst["m1"].conflict(inst["m2"]) == 0.0


def _gen_singleton_partition(rng, fam):
    f = _size(rng, fam)
    p = random_probability(rng, f)
    p2 = random_probability(rng, f)
    return {"frame": f, "p": p, "p2": p2, "obs": WeightedPartition.singletons(f, p2.weights)}


def _chk_singleton_partition(inst):
    return all(len(c) == 1 for c, _ in inst["obs"]) and all(x > EPS for x in inst["p"].weights)


def _gen_mass(rng, fam):
    f = _size(rng, fam)
    return {"frame": f, "m1": random_mass(rng, f, _focals(rng, fam))}


def _gen_credal(rng, fam):
    inst = _gen_mass(rng, fam)
    m, f = inst["m1"], inst["frame"]
    pairs = []
    for given in enumerate_subsets(f):
        val = ev.IntervalValuation(m, given)
        for query in subsets_of(given):
            if val.is_defined(query):
                pairs.append((query, given))
    if not pairs:
        raise _Reject
    inst["pairs"] = pairs
    return inst


def _chk_credal(inst):
    return inst["frame"].size <= 5 and len(inst["m1"]) <= 6


def _gen_poss_pair(rng, fam):
    f = _size(rng, fam)
    return {"frame": f, "pi1": random_possibility(rng, f), "pi2": random_possibility(rng, f)}


def _chk_poss_pair(inst):
    v1, v2 = inst["pi1"].values, inst["pi2"].values
    return any(x > EPS and y > EPS for x, y in zip(v1, v2))


def _gen_dominating(rng, fam):
    f = _size(rng, fam)
    pi1 = random_possibility(rng, f)
    v = np.maximum(np.asarray(pi1.values), random_values(rng, f.size))
    return {"frame": f, "pi1": pi1, "pi2": po.PossibilityDistribution(f, tuple(float(x) for x in v))}


def _chk_dominating(inst):
    return all(y >= x for x, y in zip(inst["pi1"].values, inst["pi2"].values))


def _gen_dominated(rng, fam):
    f = _size(rng, fam)
    pi1 = random_possibility(rng, f)
    v = np.minimum(np.asarray(pi1.values), random_values(rng, f.size))
    core = [i for i, x in enumerate(pi1.values) if x == 1.0]
    v[core[int(rng.integers(len(core)))]] = 1.0
    return {"frame": f, "pi1": pi1, "pi2": po.PossibilityDistribution(f, tuple(float(x) for x in v))}


def _chk_dominated(inst):
    return all(y <= x for x, y in zip(inst["pi1"].values, inst["pi2"].values))


def _gen_overlapping_cores(rng, fam):
    f = _size(rng, fam)
    v1, v2 = random_values(rng, f.size), random_values(rng, f.size)
    i = int(rng.integers(f.size))
    v1[i] = v2[i] = 1.0
    return {"frame": f, "pi1": po.PossibilityDistribution(f, tuple(float(x) for x in v1)),
            "pi2": po.PossibilityDistribution(f, tuple(float(x) for x in v2))}


def _chk_overlapping_cores(inst):
    return bool(inst["pi1"].core(0.0) & inst["pi2"].core(0.0))


def _gen_poss_crisp(rng, fam):
    f = _size(rng, fam)
    pi1 = random_possibility(rng, f)
    b = random_subset(rng, f)
    return {"frame": f, "pi1": pi1, "B": b, "doubt": float(rng.random())}


def _chk_poss_crisp(inst):
    return inst["pi1"].possibility(inst["B"]) > EPS and 0.0 <= inst["doubt"] < 1.0


def _gen_ocf_shift(rng, fam):
    f = _size(rng, fam)
    k = random_ocf(rng, f)
    a = random_subset(rng, f)
    return {"frame": f, "kappa": k, "A": a, "n": int(rng.integers(0, 21))}


def _chk_ocf_shift(inst):
    return bool(inst["A"]) and bool(~inst["A"]) and 0 <= inst["n"] <= 20


def _gen_ocf_subset(rng, fam):
    f = _size(rng, fam)
    return {"frame": f, "kappa": random_ocf(rng, f), "A": random_subset(rng, f)}


@dataclass(frozen=True)
class _FamilyDef:
    generate: Callable[[np.random.Generator, Family], Instance]
    check: Callable[[Instance], bool]
    provides: frozenset


def _fd(gen, chk, fields):
    return _FamilyDef(gen, chk, frozenset(fields.split()))


FAMILIES: dict[str, _FamilyDef] = {
    "mass-pair": _fd(_gen_mass_pair, lambda i: True, "frame m1 m2"),
    "conditionable-pair": _fd(_gen_mass_pair, _chk_conditionable, "frame m1 m2"),
    "categorical-evidence": _fd(_gen_categorical, _chk_categorical, "frame m1 m2 A"),
    "bayesian-partition": _fd(_gen_bayes_partition, _chk_bayes_partition, "frame p m1 m2 obs"),
    "no-conflict": _fd(_gen_no_conflict, _chk_no_conflict, "frame m1 m2"),
    "singleton-partition": _fd(_gen_singleton_partition, _chk_singleton_partition, "frame p p2 obs"),
    "mass": _fd(_gen_mass, lambda i: True, "frame m1"),
    "credal": _fd(_gen_credal, _chk_credal, "frame m1 pairs"),
    "possibility-pair": _fd(_gen_poss_pair, _chk_poss_pair, "frame pi1 pi2"),
    "observation-dominates": _fd(_gen_dominating, _chk_dominating, "frame pi1 pi2"),
    "observation-dominated": _fd(_gen_dominated, _chk_dominated, "frame pi1 pi2"),
    "overlapping-cores": _fd(_gen_overlapping_cores, _chk_overlapping_cores, "frame pi1 pi2"),
    "possibility-crisp": _fd(_gen_poss_crisp, _chk_poss_crisp, "frame pi1 B doubt"),
    "ocf-shift": _fd(_gen_ocf_shift, _chk_ocf_shift, "frame kappa A n"),
    "ocf-subset": _fd(_gen_ocf_subset, lambda i: bool(i["A"]), "frame kappa A"),
}


def generate_instances(family: Family | str, seed: int, count: int = 200) -> list[Instance]:
    """Draw ``count`` reproducible instances satisfying the family's constraint.

    Candidates are re-checked after generation; a family that rejects
    ``MAX_REJECTIONS`` candidates in a row raises GeneratorConstraintUnsatisfiable.
    """
    fam = Family(family) if isinstance(family, str) else family
    try:
        fd = FAMILIES[fam.name]
    except KeyError:
        raise UnknownRule(f"unknown instance family {fam.name!r}") from None
    rng = np.random.default_rng(seed)
    out = []
    rejected = 0
    while len(out) < count:
        try:
            inst = fd.generate(rng, fam)
            if not fd.check(inst):
                raise _Reject
        except _Reject:
            rejected += 1
            if rejected >= MAX_REJECTIONS:
                raise GeneratorConstraintUnsatisfiable(
                    f"family {fam.name!r}: {MAX_REJECTIONS} consecutive candidates rejected") from None
            continue
        rejected = 0
        out.append(inst)
    return out


# --- rules --------------------------------------------------------------------------


def _mass_out(m: ev.MassFunction) -> dict:
    return {b: v for b, v in m._focal.items()}


def _prob_out(p: ProbabilityMeasure) -> dict:
    return {1 << i: w for i, w in enumerate(p.weights) if w > EPS}


def _dist_out(d: po.PossibilityDistribution) -> dict:
    return dict(enumerate(d.values))


def _all_events(f: Frame):
    return list(enumerate_subsets(f))


def _r_mixture_pl(inst):
    m1, m2 = inst["m1"], inst["m2"]
    out = {}
    for b in _all_events(inst["frame"]):
        out[b.bits] = math.fsum(w * ev.dempster_conditional_plausibility(m1, b, a) for a, w in m2.items())
    return out


def _r_jeffrey_ds_pl(inst):
    post = ev.jeffrey_ds_update(inst["m1"], inst["m2"])
    return {b.bits: post.plausibility(b) for b in _all_events(inst["frame"])}


def _r_upper_lower(inst):
    out = {}
    for q, g in inst["pairs"]:
        up, lo = ev.IntervalValuation(inst["m1"], g)(q)
        out[(q.bits, g.bits, "sup")] = up
        out[(q.bits, g.bits, "inf")] = lo
    return out


def _r_credal(inst):
    oracle = ev.CredalOracle(inst["m1"])
    out = {}
    for q, g in inst["pairs"]:
        up, lo = oracle.bounds(q, g)
        out[(q.bits, g.bits, "sup")] = up
        out[(q.bits, g.bits, "inf")] = lo
    return out


def _event_pairs(inst, admissible):
    evs = _all_events(inst["frame"])
    return [(a, b) for a in evs for b in evs if admissible(b)]


def _r_pl_intersection(inst):
    m = inst["m1"]
    return {(a.bits, b.bits): m.plausibility(a & b) for a, b in _event_pairs(inst, lambda b: m.plausibility(b) > EPS)}


def _r_pl_product(inst):
    m = inst["m1"]
    return {(a.bits, b.bits): ev.dempster_conditional_plausibility(m, a, b) * m.plausibility(b)
            for a, b in _event_pairs(inst, lambda b: m.plausibility(b) > EPS)}


def _r_bel_intersection(inst):
    m = inst["m1"]
    return {(a.bits, b.bits): m.belief(a & b) for a, b in _event_pairs(inst, lambda b: m.belief(b) > EPS)}


def _r_bel_geometric_product(inst):
    m = inst["m1"]
    return {(a.bits, b.bits): ev.geometric_conditional_belief(m, a, b) * m.belief(b)
            for a, b in _event_pairs(inst, lambda b: m.belief(b) > EPS)}


def _r_bel_closed_form(inst):
    m = inst["m1"]
    return {(b.bits, a.bits): ev.bel_conditional(m, b, a)
            for b, a in _event_pairs(inst, lambda a: m.plausibility(a) > EPS)}


def _r_bel_dempster(inst):
    m = inst["m1"]
    out = {}
    cache = {}
    for b, a in _event_pairs(inst, lambda a: m.plausibility(a) > EPS):
        if a.bits not in cache:
            cache[a.bits] = ev.dempster_condition(m, a)
        out[(b.bits, a.bits)] = cache[a.bits].belief(b)
    return out


def _r_poss_necessity_levels(inst):
    return {a.bits: po.jeffrey_conditional_necessity(inst["pi1"], inst["pi2"], a) for a in _all_events(inst["frame"])}


def _quiet(fn):
    # subnormal results are legitimate here; the warning is noise
    def wrapped(*args):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", UnnormalizedResult)
            return fn(*args)
    return wrapped


@_quiet
def _r_poss_necessity_dual(inst):
    post = po.poss_jeffrey_update(inst["pi1"], inst["pi2"])
    return {a.bits: post.necessity(a) for a in _all_events(inst["frame"])}


def _spohn_two_cell(inst):
    a, n = inst["A"], inst["n"]
    obs = WeightedPartition(a.frame, ((a, 1.0), (~a, math.exp(-n))), "max")
    return _dist_out(oc.spohn_partition_update(inst["kappa"], obs))


def _poss_condition_translated(inst):
    d = po.poss_condition(oc.ocf_to_possibility(inst["kappa"]), inst["A"])
    return {i: d.values[i] for i in inst["A"].indices()} | {i: 0.0 for i in (~inst["A"]).indices()}


def _a_part_translated(inst):
    part = oc.ocf_a_part(inst["kappa"], inst["A"])
    f = inst["frame"]
    return {f.index(k): math.exp(-r) for k, r in part.items()} | {i: 0.0 for i in (~inst["A"]).indices()}


@dataclass(frozen=True)
class Rule:
    needs: frozenset
    kind: str
    fn: Callable[[Instance], dict]


def _rule(needs, kind, fn):
    return Rule(frozenset(needs.split()), kind, fn)


RULES: dict[str, Rule] = {
    "dempster_combine": _rule("m1 m2", "mass", lambda i: _mass_out(ev.dempster_combine(i["m1"], i["m2"]))),
    "dempster_condition": _rule("m1 A", "mass", lambda i: _mass_out(ev.dempster_condition(i["m1"], i["A"]))),
    "jeffrey_ds_update": _rule("m1 m2", "mass", lambda i: _mass_out(ev.jeffrey_ds_update(i["m1"], i["m2"]))),
    "jeffrey_update": _rule("p obs", "mass", lambda i: _prob_out(jeffrey_update(i["p"], i["obs"]))),
    "substitution": _rule("p2", "mass", lambda i: _prob_out(i["p2"])),
    "jeffrey_ds_plausibility": _rule("frame m1 m2", "set-function", _r_jeffrey_ds_pl),
    "mixture_plausibility": _rule("frame m1 m2", "set-function", _r_mixture_pl),
    "upper_lower": _rule("m1 pairs", "interval", _r_upper_lower),
    "credal_oracle": _rule("m1 pairs", "interval", _r_credal),
    "pl_intersection": _rule("frame m1", "pair-function", _r_pl_intersection),
    "pl_dempster_product": _rule("frame m1", "pair-function", _r_pl_product),
    "bel_intersection": _rule("frame m1", "pair-function", _r_bel_intersection),
    "bel_geometric_product": _rule("frame m1", "pair-function", _r_bel_geometric_product),
    "bel_conditional_closed_form": _rule("frame m1", "pair-function", _r_bel_closed_form),
    "bel_dempster_conditioned": _rule("frame m1", "pair-function", _r_bel_dempster),
    "poss_jeffrey": _rule("pi1 pi2", "distribution",
                          _quiet(lambda i: _dist_out(po.poss_jeffrey_update(i["pi1"], i["pi2"])))),
    "poss_jeffrey_sup": _rule("pi1 pi2", "distribution",
                              _quiet(lambda i: _dist_out(po.poss_jeffrey_update_sup(i["pi1"], i["pi2"])))),
    "prior": _rule("pi1", "distribution", lambda i: _dist_out(i["pi1"])),
    "observation": _rule("pi2", "distribution", lambda i: _dist_out(i["pi2"])),
    "pointwise_min": _rule("pi1 pi2", "distribution",
                           lambda i: dict(enumerate(min(x, y) for x, y in zip(i["pi1"].values, i["pi2"].values)))),
    "spohn_singleton": _rule("pi1 pi2", "distribution", lambda i: _dist_out(oc.spohn_partition_update(
        i["pi1"], WeightedPartition.singletons(i["frame"], i["pi2"].values, "max")))),
    "jeffrey_necessity_levels": _rule("frame pi1 pi2", "set-function", _r_poss_necessity_levels),
    "jeffrey_necessity_dual": _rule("frame pi1 pi2", "set-function", _r_poss_necessity_dual),
    "poss_combine_min_crisp": _rule("pi1 B", "distribution", lambda i: _dist_out(po.poss_combine(
        i["pi1"], po.PossibilityDistribution.indicator(i["B"]), po.ConjunctionOp.MIN))),
    "poss_condition": _rule("pi1 B", "distribution", lambda i: _dist_out(po.poss_condition(i["pi1"], i["B"]))),
    "crisp_with_doubt": _rule("pi1 B doubt", "distribution", lambda i: _dist_out(
        po.poss_update_crisp_with_doubt(i["pi1"], i["B"], i["doubt"]))),
    "poss_jeffrey_doubt": _rule("pi1 B doubt", "distribution", _quiet(lambda i: _dist_out(
        po.poss_jeffrey_update(i["pi1"], po.doubt_observation(i["B"], i["doubt"]))))),
    "ocf_conditionalize_translated": _rule("kappa A n", "distribution", lambda i: _dist_out(
        oc.ocf_to_possibility(oc.ocf_conditionalize(i["kappa"], i["A"], i["n"])))),
    "spohn_two_cell": _rule("kappa A n", "distribution", _spohn_two_cell),
    "ocf_a_part_translated": _rule("frame kappa A", "distribution", _a_part_translated),
    "poss_condition_translated": _rule("frame kappa A", "distribution", _poss_condition_translated),
}


# --- specs and reports ----------------------------------------------------------------


@dataclass(frozen=True)
class CoincidenceSpec:
    name: str
    rule_a: str
    rule_b: str
    family: Family
    count: int = 200
    tolerance: float = 1e-9
    metric: str = "absolute"
    description: str = ""


@dataclass
class ComparisonReport:
    spec: str
    rule_a: str
    rule_b: str
    family: str
    seed: int
    tolerance: float
    metric: str
    deviations: list[float]
    max_deviation: float
    passed: bool
    witness: dict | None = None
    flags: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        d = asdict(self)
        d["instances"] = len(self.deviations)
        return d

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"{status} {self.spec}: {self.rule_a} vs {self.rule_b} on {self.family} "
                f"({len(self.deviations)} instances, max {self.metric} deviation {self.max_deviation:.3g}, "
                f"tolerance {self.tolerance:g})")


def _deviation(a: dict, b: dict, metric: str) -> float:
    worst = 0.0
    for key in a.keys() | b.keys():
        if key not in a or key not in b:
            return math.inf
        x, y = a[key], b[key]
        d = abs(x - y)
        if metric == "relative":
            scale = max(abs(x), abs(y))
            d = d / scale if scale > 0 else 0.0
        worst = max(worst, d)
    return worst


def describe_instance(inst: Instance) -> dict:
    """JSON-friendly rendering of an instance (used for failure witnesses)."""
    out: dict[str, Any] = {}
    for k, v in inst.items():
        if isinstance(v, Frame):
            out[k] = list(v.labels)
        elif isinstance(v, Subset):
            out[k] = v.names()
        elif isinstance(v, ev.MassFunction):
            out[k] = [{"subset": s.names(), "mass": w} for s, w in v.items()]
        elif isinstance(v, (ProbabilityMeasure, po.PossibilityDistribution, oc.Ocf)):
            out[k] = v.as_dict()
        elif isinstance(v, WeightedPartition):
            out[k] = [{"cells": c.names(), "weight": w} for c, w in v]
        elif k == "pairs":
            out[k] = len(v)
        else:
            out[k] = v
    return out


def run_coincidence(spec: CoincidenceSpec, seed: int = 0) -> ComparisonReport:
    """Evaluate both rules of ``spec`` on its instance family and report the max deviation."""
    try:
        ra, rb = RULES[spec.rule_a], RULES[spec.rule_b]
    except KeyError as exc:
        raise UnknownRule(f"unknown rule {exc.args[0]!r}") from None
    if ra.kind != rb.kind:
        raise KindMismatch(f"{spec.rule_a} yields a {ra.kind}, {spec.rule_b} yields a {rb.kind}")
    fd = FAMILIES.get(spec.family.name)
    if fd is None:
        raise UnknownRule(f"unknown instance family {spec.family.name!r}")
    missing = (ra.needs | rb.needs) - fd.provides
    if missing:
        raise KindMismatch(f"family {spec.family.name!r} does not provide {sorted(missing)}")
    instances = generate_instances(spec.family, seed, spec.count)
    deviations = []
    witness = None
    for idx, inst in enumerate(instances):
        try:
            d = _deviation(ra.fn(inst), rb.fn(inst), spec.metric)
        except UpdateError as exc:
            d = math.inf
            if witness is None:
                witness = {"index": idx, "error": f"{type(exc).__name__}: {exc}",
                           "instance": describe_instance(inst)}
        deviations.append(d)
        if d > spec.tolerance and witness is None:
            witness = {"index": idx, "deviation": d, "instance": describe_instance(inst)}
    worst = max(deviations, default=0.0)
    return ComparisonReport(spec.name, spec.rule_a, spec.rule_b, spec.family.name, seed, spec.tolerance,
                            spec.metric, deviations, worst, worst <= spec.tolerance, witness)


def _spec(name, a, b, family, count=200, tol=1e-9, metric="absolute", description="", **fam):
    return CoincidenceSpec(name, a, b, Family(family, **fam), count, tol, metric, description)


BUILTIN_SUITE: dict[str, CoincidenceSpec] = {s.name: s for s in [
    _spec("combination-categorical", "dempster_combine", "dempster_condition", "categorical-evidence",
          description="combining with categorical evidence is Dempster conditioning"),
    _spec("jeffrey-reduction", "jeffrey_ds_update", "jeffrey_update", "bayesian-partition",
          description="Bayesian prior and partition observation reduce the extended rule to Jeffrey's rule"),
    _spec("no-conflict", "dempster_combine", "jeffrey_ds_update", "no-conflict",
          description="without conflict, combination and the extended Jeffrey rule coincide"),
    _spec("substitution", "jeffrey_update", "substitution", "singleton-partition",
          description="Jeffrey's rule on the singleton partition substitutes the observation"),
    _spec("convex-combination", "jeffrey_ds_plausibility", "mixture_plausibility", "conditionable-pair",
          description="the updated plausibility is the m2-weighted mixture of conditional plausibilities"),
    _spec("credal-upper-lower", "upper_lower", "credal_oracle", "credal", focal_count=6,
          description="closed-form upper/lower conditionals equal the exhaustive credal bounds"),
    _spec("cox-dempster", "pl_intersection", "pl_dempster_product", "mass",
          description="Pl(A&B) = Pl(A|B) Pl(B)"),
    _spec("cox-geometric", "bel_intersection", "bel_geometric_product", "mass",
          description="Bel(A&B) = Bel_g(A|B) Bel(B)"),
    _spec("belief-conditional", "bel_conditional_closed_form", "bel_dempster_conditioned", "mass",
          description="closed-form conditional belief equals the belief of the Dempster-conditioned mass"),
    _spec("possibilistic-compact-vs-sup", "poss_jeffrey", "poss_jeffrey_sup", "possibility-pair",
          count=500, tol=1e-12, frame_sizes=(1, 8)),
    _spec("possibilistic-necessity-duality", "jeffrey_necessity_dual", "jeffrey_necessity_levels",
          "possibility-pair", tol=1e-12, frame_sizes=(1, 6)),
    _spec("possibilistic-weaker-observation", "poss_jeffrey", "prior", "observation-dominates",
          count=500, frame_sizes=(1, 8)),
    _spec("possibilistic-overlapping-cores", "poss_jeffrey", "pointwise_min", "overlapping-cores",
          count=500, frame_sizes=(1, 8)),
    _spec("possibilistic-stronger-observation", "poss_jeffrey", "observation", "observation-dominated",
          count=500, frame_sizes=(1, 8)),
    _spec("spohn-stronger-observation", "spohn_singleton", "observation", "observation-dominated",
          count=500, frame_sizes=(1, 8)),
    _spec("possibilistic-combination-crisp", "poss_combine_min_crisp", "poss_condition", "possibility-crisp",
          frame_sizes=(1, 8)),
    _spec("crisp-with-doubt", "crisp_with_doubt", "poss_jeffrey_doubt", "possibility-crisp",
          tol=1e-12, frame_sizes=(1, 8)),
    _spec("ocf-two-path", "ocf_conditionalize_translated", "spohn_two_cell", "ocf-shift",
          metric="relative", frame_sizes=(2, 8)),
    _spec("ocf-a-part", "ocf_a_part_translated", "poss_condition_translated", "ocf-subset",
          tol=1e-12, frame_sizes=(1, 8)),
]}

FIGURE1 = ("combination-categorical", "jeffrey-reduction", "no-conflict", "substitution")


def run_suite(names=None, seed: int = 0) -> list[ComparisonReport]:
    """Run built-in specs (all of them by default) in registration order."""
    if names is None:
        names = list(BUILTIN_SUITE)
    elif isinstance(names, str):
        names = [names]
    reports = []
    for n in names:
        if n not in BUILTIN_SUITE:
            raise UnknownRule(f"unknown coincidence suite {n!r}")
        reports.append(run_coincidence(BUILTIN_SUITE[n], seed))
    return reports
