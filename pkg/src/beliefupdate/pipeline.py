"""Ordered update pipelines over knowledge documents.

A pipeline document lists steps; each step names a registered operation and
its parameters::

    {"format_version": 1, "kind": "pipeline",
     "steps": [{"op": "ocf_conditionalize", "on": ["b", "c"], "shift": 2},
               {"op": "ocf_to_possibility"}]}

Observations are given inline (``"obs": {...document...}``) or by path
(``"obs_file": "obs.json"``, relative to the pipeline file).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable

from . import evidence as ev
from . import ocf as oc
from . import possibility as po
from .documents import KnowledgeDocument, from_dict, load, parse_json
from .errors import (
    FrameMismatch,
    KindMismatch,
    ParseError,
    UnknownRule,
    UpdateError,
    WeightNormalization,
)
from .probability import EPS, WeightedPartition, bayes_condition, jeffrey_update


@dataclass
class PipelineDocument:
    steps: list[dict]
    base_dir: Path = field(default_factory=Path.cwd)


def load_pipeline(path: str | Path) -> PipelineDocument:
    path = Path(path)
    return pipeline_from_dict(parse_json(path.read_text(encoding="utf-8")), path.parent)


def pipeline_from_dict(data: Any, base_dir: Path | None = None) -> PipelineDocument:
    if not isinstance(data, dict) or data.get("kind") != "pipeline":
        raise ParseError("a pipeline document needs kind 'pipeline'", field="kind")
    steps = data.get("steps")
    if not isinstance(steps, list):
        raise ParseError("steps must be a list", field="steps")
    for i, step in enumerate(steps):
        if not isinstance(step, dict) or "op" not in step:
            raise ParseError("each step needs an 'op'", field=f"steps[{i}]")
        if step["op"] not in OPERATIONS:
            raise UnknownRule(f"step {i}: unknown operation {step['op']!r}")
    return PipelineDocument(steps, base_dir or Path.cwd())


# --- step helpers -------------------------------------------------------------------


def _require(doc: KnowledgeDocument, *kinds: str, op: str) -> None:
    if doc.kind not in kinds:
        raise KindMismatch(f"{op} needs a {' or '.join(kinds)} state, got {doc.kind}")


def _event(doc: KnowledgeDocument, step: dict):
    if "on" not in step:
        raise ParseError("missing event", field="on")
    on = step["on"]
    return doc.frame.subset([on] if isinstance(on, str) else on)


def _observation(step: dict, base_dir: Path, eps: float) -> KnowledgeDocument:
    if "obs" in step:
        obs = from_dict(step["obs"], eps)
    elif "obs_file" in step:
        obs = load(base_dir / step["obs_file"], eps)
    else:
        raise ParseError("missing observation ('obs' or 'obs_file')", field="obs")
    return obs


def _same_frame(doc, obs):
    if doc.frame != obs.frame:
        raise FrameMismatch("observation frame differs from the state frame")


def _as_partition(obs: KnowledgeDocument, mode: str) -> WeightedPartition:
    if obs.kind == "partition":
        if obs.value.mode != mode:
            raise WeightNormalization(f"observation partition must use '{mode}' normalization")
        return obs.value
    if mode == "sum" and obs.kind == "probability":
        return WeightedPartition.singletons(obs.frame, obs.value.weights, "sum")
    if mode == "max" and obs.kind == "possibility":
        return WeightedPartition.singletons(obs.frame, obs.value.values, "max")
    raise KindMismatch(f"cannot read a {obs.kind} document as a partition observation")


def _as_mass_observation(obs: KnowledgeDocument) -> ev.MassFunction:
    if obs.kind == "mass":
        return obs.value
    if obs.kind == "partition" and obs.value.mode == "sum":
        return ev.MassFunction.from_partition(obs.value)
    if obs.kind == "probability":
        return ev.MassFunction.from_probability(obs.value)
    raise KindMismatch(f"cannot read a {obs.kind} document as a body of evidence")


def _as_possibility_observation(obs: KnowledgeDocument) -> po.PossibilityDistribution:
    if obs.kind == "possibility":
        return obs.value
    if obs.kind == "partition" and obs.value.mode == "max":
        return oc.step_distribution(obs.value)
    if obs.kind == "ocf":
        return oc.ocf_to_possibility(obs.value)
    raise KindMismatch(f"cannot read a {obs.kind} document as a possibilistic observation")


# --- operations ---------------------------------------------------------------------


def _op_condition(doc, step, base_dir, eps):
    rule = step.get("rule")
    a = _event(doc, step)
    if doc.kind == "probability" and rule in (None, "bayes", "dempster"):
        return bayes_condition(doc.value, a, eps)
    if doc.kind == "mass" and rule in (None, "dempster", "geometric"):
        return ev.condition(doc.value, a, rule or "dempster", eps)
    if doc.kind == "possibility" and rule in (None, "possibilistic"):
        return po.poss_condition(doc.value, a, eps)
    if doc.kind == "ocf" and rule in (None, "ocf"):
        return oc.ocf_conditionalize(doc.value, a, int(step.get("shift", 0)))
    raise KindMismatch(f"rule {rule!r} does not apply to a {doc.kind} state")


def _op_bayes(doc, step, base_dir, eps):
    _require(doc, "probability", op="bayes_condition")
    return bayes_condition(doc.value, _event(doc, step), eps)


def _op_jeffrey(doc, step, base_dir, eps):
    _require(doc, "probability", op="jeffrey_update")
    obs = _observation(step, base_dir, eps)
    _same_frame(doc, obs)
    return jeffrey_update(doc.value, _as_partition(obs, "sum"), eps)


def _mass_rule(name, rule):
    def op(doc, step, base_dir, eps):
        _require(doc, "mass", op=name)
        return ev.condition(doc.value, _event(doc, step), rule, eps)
    return op


def _op_dempster_combine(doc, step, base_dir, eps):
    _require(doc, "mass", "probability", op="dempster_combine")
    obs = _observation(step, base_dir, eps)
    _same_frame(doc, obs)
    prior = doc.value if doc.kind == "mass" else ev.MassFunction.from_probability(doc.value)
    return ev.dempster_combine(prior, _as_mass_observation(obs), eps)


def _op_jeffrey_ds(doc, step, base_dir, eps):
    _require(doc, "mass", "probability", op="jeffrey_ds_update")
    obs = _observation(step, base_dir, eps)
    _same_frame(doc, obs)
    prior = doc.value if doc.kind == "mass" else ev.MassFunction.from_probability(doc.value)
    return ev.jeffrey_ds_update(prior, _as_mass_observation(obs), step.get("rule", "dempster"), eps)


def _op_poss_condition(doc, step, base_dir, eps):
    _require(doc, "possibility", op="poss_condition")
    return po.poss_condition(doc.value, _event(doc, step), eps)


def _op_poss_combine(doc, step, base_dir, eps):
    _require(doc, "possibility", op="poss_combine")
    obs = _observation(step, base_dir, eps)
    _same_frame(doc, obs)
    return po.poss_combine(doc.value, _as_possibility_observation(obs), step.get("conjunction", "min"), eps)


def _op_poss_jeffrey(doc, step, base_dir, eps):
    _require(doc, "possibility", op="poss_jeffrey_update")
    obs = _observation(step, base_dir, eps)
    _same_frame(doc, obs)
    return po.poss_jeffrey_update(doc.value, _as_possibility_observation(obs), step.get("conjunction", "min"), eps)


def _op_crisp_doubt(doc, step, base_dir, eps):
    _require(doc, "possibility", op="poss_update_crisp_with_doubt")
    if "lambda" not in step:
        raise ParseError("missing doubt level", field="lambda")
    return po.poss_update_crisp_with_doubt(doc.value, _event(doc, step), float(step["lambda"]), eps)


def _op_ocf_conditionalize(doc, step, base_dir, eps):
    _require(doc, "ocf", op="ocf_conditionalize")
    if "shift" not in step:
        raise ParseError("missing shift", field="shift")
    return oc.ocf_conditionalize(doc.value, _event(doc, step), int(step["shift"]))


def _op_to_possibility(doc, step, base_dir, eps):
    _require(doc, "ocf", "possibility", op="ocf_to_possibility")
    return doc.value if doc.kind == "possibility" else oc.ocf_to_possibility(doc.value)


def _op_to_ocf(doc, step, base_dir, eps):
    _require(doc, "possibility", "ocf", op="possibility_to_ocf")
    return doc.value if doc.kind == "ocf" else oc.possibility_to_ocf(doc.value, eps=eps)


def _op_spohn(doc, step, base_dir, eps):
    _require(doc, "ocf", "possibility", op="spohn_partition_update")
    obs = _observation(step, base_dir, eps)
    _same_frame(doc, obs)
    return oc.spohn_partition_update(doc.value, _as_partition(obs, "max"), eps)


Operation = Callable[[KnowledgeDocument, dict, Path, float], Any]

OPERATIONS: dict[str, Operation] = {
    "condition": _op_condition,
    "bayes_condition": _op_bayes,
    "jeffrey_update": _op_jeffrey,
    "dempster_condition": _mass_rule("dempster_condition", "dempster"),
    "geometric_condition": _mass_rule("geometric_condition", "geometric"),
    "dempster_combine": _op_dempster_combine,
    "jeffrey_ds_update": _op_jeffrey_ds,
    "poss_condition": _op_poss_condition,
    "poss_combine": _op_poss_combine,
    "poss_jeffrey_update": _op_poss_jeffrey,
    "poss_update_crisp_with_doubt": _op_crisp_doubt,
    "ocf_conditionalize": _op_ocf_conditionalize,
    "ocf_to_possibility": _op_to_possibility,
    "possibility_to_ocf": _op_to_ocf,
    "spohn_partition_update": _op_spohn,
}


def summarize(doc: KnowledgeDocument) -> dict:
    v = doc.value
    if doc.kind == "mass":
        return {"focal_elements": len(v), "largest_mass": max(w for _, w in v.items()),
                "bayesian": v.is_bayesian()}
    if doc.kind == "probability":
        ws = [w for w in v.weights if w > 0]
        return {"support": len(ws), "entropy": -math.fsum(w * math.log(w) for w in ws)}
    if doc.kind == "possibility":
        return {"height": max(v.values), "core": v.core().names(), "support": v.support().names()}
    if doc.kind == "ocf":
        return {"max_rank": max(v.ranks), "rank_zero": [k for k, r in v.as_dict().items() if r == 0]}
    return {}


def apply_step(doc: KnowledgeDocument, step: dict, base_dir: Path | None = None,
               eps: float = EPS) -> tuple[KnowledgeDocument, list[str]]:
    """Apply one step; returns the new document and any warnings raised."""
    try:
        op = OPERATIONS[step["op"]]
    except KeyError:
        raise UnknownRule(f"unknown operation {step.get('op')!r}") from None
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        value = op(doc, step, base_dir or Path.cwd(), eps)
    msgs = [f"{w.category.__name__}: {w.message}" for w in caught]
    return KnowledgeDocument.wrap(value), msgs


def run_pipeline(prior: KnowledgeDocument, pipeline: PipelineDocument,
                 eps: float = EPS) -> tuple[KnowledgeDocument, list[dict]]:
    """Apply every step in order.

    Returns the posterior document (its metadata carries all warnings) and a
    per-step log.  A failing step re-raises its error with ``step`` set to the
    step index.
    """
    doc = prior
    log = []
    all_warnings = []
    for i, step in enumerate(pipeline.steps):
        try:
            doc, msgs = apply_step(doc, step, pipeline.base_dir, eps)
        except UpdateError as exc:
            exc.step = i
            exc.args = (f"step {i} ({step.get('op')}): {exc}",)
            raise
        params = {k: v for k, v in step.items() if k not in ("op", "obs")}
        log.append({"step": i, "op": step["op"], "params": params, "warnings": msgs, "summary": summarize(doc)})
        all_warnings.extend(f"step {i}: {m}" for m in msgs)
    if all_warnings:
        doc.metadata["warnings"] = all_warnings
    return doc, log
