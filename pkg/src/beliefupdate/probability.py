"""Bayes' rule and Jeffrey's rule on finite frames."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import (
    ConditioningOnNull,
    FrameMismatch,
    ValidationError,
    WeightNormalization,
)
from .frame import Frame, Subset

EPS = 1e-9


@dataclass(frozen=True)
class ProbabilityMeasure:
    """A probability distribution over the elements of a frame."""

    frame: Frame
    weights: tuple[float, ...]

    def __post_init__(self):
        w = tuple(float(x) for x in self.weights)
        object.__setattr__(self, "weights", w)
        if len(w) != self.frame.size:
            raise ValidationError("probability arity", f"expected {self.frame.size} weights, got {len(w)}")
        if any(not math.isfinite(x) or x < 0 for x in w):
            raise ValidationError("probability non-negativity", "weights must be finite and >= 0")
        if abs(math.fsum(w) - 1.0) > EPS:
            raise ValidationError("probability normalization", f"weights sum to {math.fsum(w)!r}")

    @classmethod
    def from_mapping(cls, frame: Frame, weights: Mapping[str, float]) -> ProbabilityMeasure:
        w = [0.0] * frame.size
        for name, value in weights.items():
            w[frame.index(name)] = float(value)
        return cls(frame, tuple(w))

    @classmethod
    def uniform(cls, frame: Frame) -> ProbabilityMeasure:
        return cls(frame, (1.0 / frame.size,) * frame.size)

    def prob(self, a: Subset) -> float:
        if a.frame != self.frame:
            raise FrameMismatch("event and measure live on different frames")
        return math.fsum(self.weights[i] for i in a.indices())

    __call__ = prob

    def as_dict(self) -> dict[str, float]:
        return dict(zip(self.frame.labels, self.weights))


@dataclass(frozen=True)
class WeightedPartition:
    """A partition of the frame with a weight on each cell.

    ``mode="sum"`` requires the weights to add up to 1 (probabilistic use);
    ``mode="max"`` requires the largest weight to be 1 (possibilistic use).
    """

    frame: Frame
    cells: tuple[tuple[Subset, float], ...]
    mode: str = "sum"

    def __post_init__(self):
        cells = tuple((s, float(w)) for s, w in self.cells)
        object.__setattr__(self, "cells", cells)
        if self.mode not in ("sum", "max"):
            raise ValidationError("partition mode", f"unknown normalization mode {self.mode!r}")
        if not cells:
            raise ValidationError("partition cover", "a partition needs at least one cell")
        seen = 0
        for s, w in cells:
            if s.frame != self.frame:
                raise FrameMismatch("partition cell outside the frame")
            if not s:
                raise ValidationError("partition cells", "cells must be non-empty")
            if seen & s.bits:
                raise ValidationError("partition disjointness", f"cell {s} overlaps an earlier cell")
            seen |= s.bits
            if not (0.0 <= w <= 1.0) or math.isnan(w):
                raise ValidationError("partition weights", f"weight {w!r} of cell {s} is outside [0, 1]")
        if seen != self.frame.full.bits:
            raise ValidationError("partition cover", "cells do not cover the frame")
        ws = [w for _, w in cells]
        if self.mode == "sum" and abs(math.fsum(ws) - 1.0) > EPS:
            raise WeightNormalization(f"cell weights sum to {math.fsum(ws)!r}, expected 1")
        if self.mode == "max" and abs(max(ws) - 1.0) > EPS:
            raise WeightNormalization(f"largest cell weight is {max(ws)!r}, expected 1")

    @classmethod
    def of(cls, frame: Frame, cells: Iterable[tuple[Iterable[str] | Subset, float]], mode: str = "sum"):
        built = []
        for members, w in cells:
            s = members if isinstance(members, Subset) else frame.subset(members)
            built.append((s, w))
        return cls(frame, tuple(built), mode)

    @classmethod
    def singletons(cls, frame: Frame, weights: Iterable[float], mode: str = "sum"):
        return cls(frame, tuple(zip(frame.singletons(), weights)), mode)

    def __iter__(self):
        return iter(self.cells)

    def __len__(self):
        return len(self.cells)


def bayes_condition(p: ProbabilityMeasure, a: Subset, eps: float = EPS) -> ProbabilityMeasure:
    """Return ``P(. | A)``; raises ConditioningOnNull when ``P(A) <= eps``."""
    pa = p.prob(a)
    if pa <= eps:
        raise ConditioningOnNull("P(A) is zero", a)
    w = [0.0] * p.frame.size
    for i in a.indices():
        w[i] = p.weights[i] / pa
    return ProbabilityMeasure(p.frame, tuple(w))


def jeffrey_update(p: ProbabilityMeasure, obs: WeightedPartition, eps: float = EPS) -> ProbabilityMeasure:
    """Jeffrey's rule: ``P'(B) = sum_i alpha_i * P(B | A_i)``.

    Cells with weight <= eps contribute nothing, even when ``P(A_i) = 0``.
    """
    if obs.frame != p.frame:
        raise FrameMismatch("observation and prior live on different frames")
    if obs.mode != "sum":
        raise WeightNormalization("Jeffrey's rule needs a partition whose weights sum to 1")
    w = [0.0] * p.frame.size
    for cell, alpha in obs:
        if alpha <= eps:
            continue
        pa = p.prob(cell)
        if pa <= eps:
            raise ConditioningOnNull(f"P(A_i) is zero for a cell with weight {alpha}", cell)
        for i in cell.indices():
            w[i] += alpha * p.weights[i] / pa
    total = math.fsum(w)
    return ProbabilityMeasure(p.frame, tuple(x / total for x in w))
