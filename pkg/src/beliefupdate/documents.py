"""JSON knowledge documents: one schema for every calculus, keyed by ``kind``.

Example mass document::

    {
      "format_version": 1,
      "kind": "mass",
      "frame": ["a", "b", "c"],
      "mass": [{"subset": ["a", "b"], "mass": 0.6}, {"subset": ["c"], "mass": 0.4}]
    }

Other kinds carry ``"probability"``, ``"possibility"`` or ``"ocf"`` as an
element -> value mapping, or ``"partition"`` as
``{"normalization": "sum" | "max", "cells": [{"cells": [...], "weight": w}]}``.

A possibility document whose height is below 1 must say so with
``"metadata": {"subnormal": true}``.

Numbers are read as decimals, so normalization is checked exactly as written
(within the tolerance) before conversion to floats.  Canonical output sorts
element names and writes at most 12 significant digits.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from decimal import Decimal
from pathlib import Path
from typing import Any, Union

from .errors import ParseError, ValidationError, WeightNormalization
from .evidence import MassFunction
from .frame import Frame
from .ocf import Ocf
from .possibility import PossibilityDistribution
from .probability import EPS, ProbabilityMeasure, WeightedPartition

FORMAT_VERSION = 1
KINDS = ("probability", "mass", "possibility", "ocf", "partition")

Payload = Union[ProbabilityMeasure, MassFunction, PossibilityDistribution, Ocf, WeightedPartition]


@dataclass
class KnowledgeDocument:
    kind: str
    frame: Frame
    value: Payload
    metadata: dict = field(default_factory=dict)

    @classmethod
    def wrap(cls, value: Payload, metadata: dict | None = None) -> KnowledgeDocument:
        return cls(kind_of(value), value.frame, value, dict(metadata or {}))


def kind_of(value: Any) -> str:
    for kind, typ in (("probability", ProbabilityMeasure), ("mass", MassFunction),
                      ("possibility", PossibilityDistribution), ("ocf", Ocf), ("partition", WeightedPartition)):
        if isinstance(value, typ):
            return kind
    raise TypeError(f"no document kind for {type(value).__name__}")


# --- reading ----------------------------------------------------------------------


def _num(x: Any, where: str) -> Decimal:
    if isinstance(x, bool) or not isinstance(x, (int, float, Decimal)):
        raise ParseError(f"expected a number, got {x!r}", field=where)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ParseError(f"expected a finite number, got {x!r}", field=where)
        return Decimal(repr(x))  # dicts built in Python rather than parsed from text
    return Decimal(x)


def _names(x: Any, where: str) -> list[str]:
    if not isinstance(x, list) or not all(isinstance(n, str) for n in x):
        raise ParseError("expected a list of element names", field=where)
    return x


def _mapping(x: Any, where: str) -> dict:
    if not isinstance(x, dict):
        raise ParseError("expected an element -> value mapping", field=where)
    return x


def _within(total: Decimal, target: int, eps: float) -> bool:
    return abs(total - target) <= Decimal(repr(eps))


def _scale(total: float) -> float:
    """Divisor that brings a total back to 1, or 1 when it is already within EPS.

    Values are kept exactly as written whenever possible, so that loading a
    canonical document and saving it again reproduces it bit for bit.
    """
    return total if abs(total - 1.0) > EPS else 1.0


def from_dict(data: Any, eps: float = EPS) -> KnowledgeDocument:
    """Validate a parsed JSON object and build the typed document."""
    if not isinstance(data, dict):
        raise ParseError("a document must be a JSON object")
    version = data.get("format_version", FORMAT_VERSION)
    if version != FORMAT_VERSION:
        raise ParseError(f"unsupported format_version {version!r}", field="format_version")
    kind = data.get("kind")
    if kind not in KINDS:
        raise ParseError(f"kind must be one of {', '.join(KINDS)}, got {kind!r}", field="kind")
    present = [k for k in KINDS if k in data]
    if present != [kind]:
        raise ParseError(f"a {kind} document must carry exactly the {kind!r} payload, found {present}", field=kind)
    try:
        frame = Frame(tuple(_names(data.get("frame"), "frame")))
    except ValidationError as exc:
        raise ValidationError(exc.invariant, str(exc), field="frame") from None
    body = data[kind]
    meta = data.get("metadata", {})
    if not isinstance(meta, dict):
        raise ParseError("metadata must be an object", field="metadata")
    try:
        if kind == "possibility":
            value = _build_possibility(frame, body, eps, subnormal=meta.get("subnormal") is True)
        else:
            value = _BUILDERS[kind](frame, body, eps)
    except ValidationError as exc:
        if exc.field is None:
            exc.field = kind
            exc.args = (f"{kind}: {exc.args[0]}",)
        raise
    return KnowledgeDocument(kind, frame, value, _plain(meta))


def _build_probability(frame, body, eps):
    body = _mapping(body, "probability")
    vals = {name: _num(v, f"probability.{name}") for name, v in body.items()}
    total = sum(vals.values(), Decimal(0))
    if any(v < 0 for v in vals.values()):
        raise ValidationError("probability non-negativity", field="probability")
    if not _within(total, 1, eps):
        raise ValidationError("probability normalization", f"weights sum to {total}", field="probability")
    fl = {k: float(v) for k, v in vals.items()}
    s = _scale(math.fsum(fl.values()))
    return ProbabilityMeasure.from_mapping(frame, {k: v / s for k, v in fl.items()})


def _build_mass(frame, body, eps):
    if not isinstance(body, list):
        raise ParseError("expected a list of {subset, mass} records", field="mass")
    recs = []
    for i, rec in enumerate(body):
        if not isinstance(rec, dict) or set(rec) != {"subset", "mass"}:
            raise ParseError("each record needs exactly 'subset' and 'mass'", field=f"mass[{i}]")
        recs.append((_names(rec["subset"], f"mass[{i}].subset"), _num(rec["mass"], f"mass[{i}].mass")))
    if any(v < 0 for _, v in recs):
        raise ValidationError("mass non-negativity", field="mass")
    total = sum((v for _, v in recs), Decimal(0))
    if not _within(total, 1, eps):
        raise ValidationError("mass normalization", f"masses sum to {total}", field="mass")
    s = _scale(math.fsum(float(v) for _, v in recs))
    focal: dict = {}
    for names, v in recs:
        sub = frame.subset(names)
        focal[sub] = focal.get(sub, 0.0) + float(v) / s
    return MassFunction(frame, focal)


def _build_possibility(frame, body, eps, subnormal=False):
    """``subnormal`` (set from metadata) admits the output of a Jeffrey-like update
    whose height fell below 1; values are then kept as written."""
    body = _mapping(body, "possibility")
    vals = {name: _num(v, f"possibility.{name}") for name, v in body.items()}
    if any(v < 0 or v > 1 for v in vals.values()):
        raise ValidationError("possibility range", "values must lie in [0, 1]", field="possibility")
    top = max(vals.values(), default=Decimal(0))
    if subnormal:
        return PossibilityDistribution.from_mapping(frame, {k: float(v) for k, v in vals.items()},
                                                    require_normalized=False)
    if not _within(top, 1, eps):
        raise ValidationError("possibility normalization", f"largest value is {top}", field="possibility")
    top = _scale(float(top))
    return PossibilityDistribution.from_mapping(frame, {k: min(1.0, float(v) / top) for k, v in vals.items()})


def _build_ocf(frame, body, eps):
    body = _mapping(body, "ocf")
    for name, v in body.items():
        if isinstance(v, bool) or not isinstance(v, int):
            raise ValidationError("ocf integrality", f"rank of {name!r} is {v!r}", field=f"ocf.{name}")
    return Ocf.from_mapping(frame, body)


def _build_partition(frame, body, eps):
    if not isinstance(body, dict) or "cells" not in body:
        raise ParseError("expected {normalization, cells}", field="partition")
    mode = body.get("normalization", "sum")
    cells = body["cells"]
    if not isinstance(cells, list):
        raise ParseError("cells must be a list", field="partition.cells")
    parsed = []
    for i, c in enumerate(cells):
        if not isinstance(c, dict) or set(c) != {"cells", "weight"}:
            raise ParseError("each cell needs exactly 'cells' and 'weight'", field=f"partition.cells[{i}]")
        parsed.append((_names(c["cells"], f"partition.cells[{i}].cells"), _num(c["weight"], f"partition.cells[{i}].weight")))
    ws = [w for _, w in parsed]
    if mode == "sum" and not _within(sum(ws, Decimal(0)), 1, eps):
        raise WeightNormalization(f"cell weights sum to {sum(ws, Decimal(0))}")
    if mode == "max" and ws and not _within(max(ws), 1, eps):
        raise WeightNormalization(f"largest cell weight is {max(ws)}")
    fl = [float(w) for w in ws]
    scale = _scale(math.fsum(fl) if mode == "sum" else max(fl, default=1.0))
    return WeightedPartition.of(frame, [(names, min(1.0, w / scale)) for (names, _), w in zip(parsed, fl)], mode)


_BUILDERS = {
    "probability": _build_probability,
    "mass": _build_mass,
    "possibility": _build_possibility,
    "ocf": _build_ocf,
    "partition": _build_partition,
}


def _plain(x):
    """Decimals from the parser back to floats (metadata is free-form)."""
    if isinstance(x, Decimal):
        return float(x)
    if isinstance(x, dict):
        return {k: _plain(v) for k, v in x.items()}
    if isinstance(x, list):
        return [_plain(v) for v in x]
    return x


def parse_json(text: str) -> Any:
    try:
        return json.loads(text, parse_float=Decimal)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno) from None


def loads(text: str, eps: float = EPS) -> KnowledgeDocument:
    return from_dict(parse_json(text), eps)


def load(path: str | Path, eps: float = EPS) -> KnowledgeDocument:
    return loads(Path(path).read_text(encoding="utf-8"), eps)


# --- writing ----------------------------------------------------------------------


def canonical_number(x: float) -> float:
    """Round to 12 significant digits (idempotent)."""
    return float(f"{float(x):.12g}")


def to_dict(doc: KnowledgeDocument) -> dict:
    v = doc.value
    out: dict[str, Any] = {"format_version": FORMAT_VERSION, "kind": doc.kind, "frame": list(doc.frame.labels)}
    if doc.kind == "mass":
        recs = [{"subset": s.names(), "mass": canonical_number(w)} for s, w in v.items()]
        out["mass"] = sorted(recs, key=lambda r: (len(r["subset"]), r["subset"]))
    elif doc.kind == "ocf":
        out["ocf"] = {k: int(r) for k, r in sorted(v.as_dict().items())}
    elif doc.kind == "partition":
        cells = [{"cells": c.names(), "weight": canonical_number(w)} for c, w in v]
        out["partition"] = {"normalization": v.mode, "cells": sorted(cells, key=lambda c: c["cells"])}
    else:
        out[doc.kind] = {k: canonical_number(x) for k, x in sorted(v.as_dict().items())}
    meta = dict(doc.metadata)
    if doc.kind == "possibility" and not v.is_normalized:
        meta["subnormal"] = True
    if meta:
        out["metadata"] = meta
    return out


def dumps(doc: KnowledgeDocument) -> str:
    return json.dumps(to_dict(doc), indent=2, sort_keys=True) + "\n"


def save(doc: KnowledgeDocument, path: str | Path) -> None:
    Path(path).write_text(dumps(doc), encoding="utf-8")
