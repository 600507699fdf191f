"""Possibility distributions, their conditioning and Jeffrey-like updating.

All sup/inf over level-cut thresholds are computed exactly over the finite
set of distinct values a distribution takes on its frame.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import (
    ConditioningUndefined,
    FrameMismatch,
    TotalConflict,
    UnnormalizedResult,
    ValidationError,
    WeightNormalization,
)
from .frame import Frame, Subset
from .probability import EPS


@dataclass(frozen=True)
class PossibilityDistribution:
    """A map from frame elements to [0, 1].

    Normalization (some element has possibility 1) is enforced unless
    ``require_normalized=False``, which only the Jeffrey-like update uses to
    return a subnormal result.
    """

    frame: Frame
    values: tuple[float, ...]
    require_normalized: bool = True

    def __post_init__(self):
        v = tuple(float(x) for x in self.values)
        object.__setattr__(self, "values", v)
        if len(v) != self.frame.size:
            raise ValidationError("possibility arity", f"expected {self.frame.size} values, got {len(v)}")
        for x in v:
            if math.isnan(x) or x < 0.0 or x > 1.0 + EPS:
                raise ValidationError("possibility range", f"value {x!r} is outside [0, 1]")
        if self.require_normalized and abs(max(v) - 1.0) > EPS:
            raise ValidationError("possibility normalization", f"largest value is {max(v)!r}, expected 1")

    @classmethod
    def from_mapping(cls, frame: Frame, values: Mapping[str, float], **kw) -> PossibilityDistribution:
        v = [0.0] * frame.size
        for name, x in values.items():
            v[frame.index(name)] = float(x)
        return cls(frame, tuple(v), **kw)

    @classmethod
    def indicator(cls, s: Subset) -> PossibilityDistribution:
        """The crisp distribution of a non-empty set."""
        if not s:
            raise ValidationError("possibility normalization", "indicator of the empty set")
        bits = s.bits
        return cls(s.frame, tuple(1.0 if bits >> i & 1 else 0.0 for i in range(s.frame.size)))

    @classmethod
    def vacuous(cls, frame: Frame) -> PossibilityDistribution:
        return cls(frame, (1.0,) * frame.size)

    @property
    def is_normalized(self) -> bool:
        return abs(max(self.values) - 1.0) <= EPS

    def __getitem__(self, label: str) -> float:
        return self.values[self.frame.index(label)]

    def as_dict(self) -> dict[str, float]:
        return dict(zip(self.frame.labels, self.values))

    def _idx(self, a: Subset) -> list[int]:
        if a.frame != self.frame:
            raise FrameMismatch("event and distribution live on different frames")
        return a.indices()

    def possibility(self, a: Subset) -> float:
        return max((self.values[i] for i in self._idx(a)), default=0.0)

    def necessity(self, a: Subset) -> float:
        return 1.0 - self.possibility(~a)

    def core(self, eps: float = EPS) -> Subset:
        return self._where(lambda x: x >= 1.0 - eps)

    def support(self, eps: float = EPS) -> Subset:
        return self._where(lambda x: x > eps)

    def _where(self, pred) -> Subset:
        bits = 0
        for i, x in enumerate(self.values):
            if pred(x):
                bits |= 1 << i
        return Subset(self.frame, bits)

    def levels(self) -> list[float]:
        """Distinct positive values, in decreasing order."""
        return sorted({x for x in self.values if x > 0.0}, reverse=True)

    def cut(self, alpha: float) -> Subset:
        """The alpha-level cut ``{w : pi(w) >= alpha}``."""
        return self._where(lambda x: x >= alpha)


def possibility_of(d: PossibilityDistribution, a: Subset) -> float:
    return d.possibility(a)


def necessity_of(d: PossibilityDistribution, a: Subset) -> float:
    return d.necessity(a)


@dataclass(frozen=True)
class LevelCut:
    source: PossibilityDistribution
    alpha: float
    set: Subset


def level_cut(d: PossibilityDistribution, alpha: float) -> LevelCut:
    if not 0.0 < alpha <= 1.0:
        raise ValueError(f"alpha must lie in (0, 1], got {alpha!r}")
    return LevelCut(d, alpha, d.cut(alpha))


def level_cuts(d: PossibilityDistribution) -> list[LevelCut]:
    """One cut per distinct positive value, largest threshold first."""
    return [LevelCut(d, a, d.cut(a)) for a in d.levels()]


class ConjunctionOp(enum.Enum):
    MIN = "min"
    PRODUCT = "product"
    LUKASIEWICZ = "lukasiewicz"

    def __call__(self, a: float, b: float) -> float:
        if self is ConjunctionOp.MIN:
            return min(a, b)
        if self is ConjunctionOp.PRODUCT:
            return a * b
        return max(0.0, a + b - 1.0)


def poss_condition(d: PossibilityDistribution, b: Subset, eps: float = EPS) -> PossibilityDistribution:
    """``pi(w | B) = pi(w) / Pi(B)`` on B, 0 elsewhere."""
    idx = d._idx(b)
    pb = d.possibility(b)
    if pb <= eps:
        raise ConditioningUndefined("Pi(B) is zero", b)
    v = [0.0] * d.frame.size
    for i in idx:
        v[i] = d.values[i] / pb
    return PossibilityDistribution(d.frame, tuple(v))


def conditional_possibility(d: PossibilityDistribution, a: Subset, b: Subset, eps: float = EPS) -> float:
    """``Pi(A | B) = Pi(A & B) / Pi(B)``."""
    pb = d.possibility(b)
    if pb <= eps:
        raise ConditioningUndefined("Pi(B) is zero", b)
    return d.possibility(a & b) / pb


def poss_combine(d1: PossibilityDistribution, d2: PossibilityDistribution,
                 op: ConjunctionOp | str = ConjunctionOp.MIN, eps: float = EPS) -> PossibilityDistribution:
    """Symmetric combination ``pi1 * pi2`` renormalized by its height."""
    op = ConjunctionOp(op)
    if d1.frame != d2.frame:
        raise FrameMismatch("distributions live on different frames")
    joint = [op(x, y) for x, y in zip(d1.values, d2.values)]
    h = max(joint)
    if h <= eps:
        raise TotalConflict("the conjunction of the two distributions is identically zero")
    return PossibilityDistribution(d1.frame, tuple(x / h for x in joint))


@dataclass(frozen=True)
class WeightedSource:
    dist: PossibilityDistribution
    weight: float


def weighted_max_aggregate(sources: Sequence[WeightedSource] | Iterable[tuple[PossibilityDistribution, float]],
                           op: ConjunctionOp | str = ConjunctionOp.MIN, eps: float = EPS) -> PossibilityDistribution:
    """Pointwise ``max_j op(lambda_j, pi_j(w))``; the weights must peak at 1."""
    op = ConjunctionOp(op)
    srcs = [s if isinstance(s, WeightedSource) else WeightedSource(*s) for s in sources]
    if not srcs:
        raise ValueError("no sources to aggregate")
    frame = srcs[0].dist.frame
    for s in srcs:
        if s.dist.frame != frame:
            raise FrameMismatch("sources live on different frames")
        if not 0.0 <= s.weight <= 1.0:
            raise WeightNormalization(f"importance weight {s.weight!r} is outside [0, 1]")
    if abs(max(s.weight for s in srcs) - 1.0) > eps:
        raise WeightNormalization("the largest importance weight must be 1")
    out = [max(op(s.weight, s.dist.values[i]) for s in srcs) for i in range(frame.size)]
    return PossibilityDistribution(frame, tuple(out))


# --- Jeffrey-like updating ---------------------------------------------------------


def _check_pair(d1: PossibilityDistribution, d2: PossibilityDistribution, eps: float) -> None:
    if d1.frame != d2.frame:
        raise FrameMismatch("prior and observation live on different frames")
    if not any(x > eps and y > eps for x, y in zip(d1.values, d2.values)):
        raise TotalConflict("no state is possible under both the prior and the observation")


def _ratio(num: float, den: float) -> float:
    # 0/0 only arises for a state that is impossible a priori
    return num / den if den > 0.0 else 0.0


def poss_jeffrey_update(d1: PossibilityDistribution, d2: PossibilityDistribution,
                        op: ConjunctionOp | str = ConjunctionOp.MIN, eps: float = EPS) -> PossibilityDistribution:
    """Update ``d1`` by the uncertain observation ``d2``.

    Each state's value is ``pi2(w)`` combined (min by default, or product)
    with ``pi1(w) / Pi1(cut)``, where ``cut`` is the level cut of ``pi2`` at
    ``pi2(w)``.  If no core element of ``pi2`` is possible under ``pi1`` the
    result is subnormal; it is returned as is with an UnnormalizedResult
    warning.
    """
    op = ConjunctionOp(op)
    if op is ConjunctionOp.LUKASIEWICZ:
        raise ValueError("the Jeffrey-like update supports the min and product combinations only")
    _check_pair(d1, d2, eps)
    v1, v2 = d1.values, d2.values
    out = []
    for i in range(d1.frame.size):
        level = v2[i]
        if level <= 0.0:
            out.append(0.0)
            continue
        pi_cut = max(x for x, y in zip(v1, v2) if y >= level)
        out.append(op(level, _ratio(v1[i], pi_cut)))
    return _finish(d1.frame, out, d1, d2, eps)


def poss_jeffrey_update_sup(d1: PossibilityDistribution, d2: PossibilityDistribution,
                            eps: float = EPS) -> PossibilityDistribution:
    """The same update as a sup over level cuts.

    ``sup_alpha min(alpha, pi1(w) / Pi1(B_alpha), [w in B_alpha])`` with alpha
    ranging over the distinct positive values of ``pi2``.
    """
    _check_pair(d1, d2, eps)
    v1 = d1.values
    cuts = level_cuts(d2)
    out = []
    for i in range(d1.frame.size):
        best = 0.0
        for lc in cuts:
            member = 1.0 if lc.set.bits >> i & 1 else 0.0
            term = min(lc.alpha, _ratio(v1[i], d1.possibility(lc.set)), member)
            best = max(best, term)
        out.append(best)
    return _finish(d1.frame, out, d1, d2, eps)


def _finish(frame, out, d1, d2, eps) -> PossibilityDistribution:
    normal = any(y >= 1.0 - eps and x > eps for x, y in zip(d1.values, d2.values))
    if not normal:
        warnings.warn(UnnormalizedResult("the core of the observation misses the support of the prior; "
                                         f"updated height is {max(out):.6g}"), stacklevel=3)
    return PossibilityDistribution(frame, tuple(out), require_normalized=normal)


def jeffrey_conditional_possibility(d1: PossibilityDistribution, d2: PossibilityDistribution,
                                    a: Subset, eps: float = EPS) -> float:
    """``sup_alpha min(alpha, Pi1(A | B_alpha))`` over the distinct levels of ``pi2``.

    Cuts with ``Pi1(B_alpha) = 0`` contribute nothing.
    """
    _check_pair(d1, d2, eps)
    best = 0.0
    for lc in level_cuts(d2):
        pb = d1.possibility(lc.set)
        if pb <= 0.0:
            continue
        best = max(best, min(lc.alpha, d1.possibility(a & lc.set) / pb))
    return best


def jeffrey_conditional_necessity(d1: PossibilityDistribution, d2: PossibilityDistribution,
                                  a: Subset, eps: float = EPS) -> float:
    """``inf_alpha max(1 - alpha, N1(A | B_alpha))`` over the distinct levels of ``pi2``."""
    _check_pair(d1, d2, eps)
    worst = 1.0
    for lc in level_cuts(d2):
        pb = d1.possibility(lc.set)
        if pb <= 0.0:
            continue
        n_cond = 1.0 - d1.possibility(~a & lc.set) / pb
        worst = min(worst, max(1.0 - lc.alpha, n_cond))
    return worst


def poss_update_crisp_with_doubt(d1: PossibilityDistribution, b: Subset, doubt: float,
                                 eps: float = EPS) -> PossibilityDistribution:
    """Update by "B holds, but outside B remains possible to degree ``doubt``".

    Closed form ``max(min(pi1 / Pi1(B), [w in B]), min(doubt, pi1))``.  With
    ``doubt == 1`` the observation is vacuous and ``d1`` is returned.
    """
    if not 0.0 <= doubt <= 1.0:
        raise ValueError(f"doubt level must lie in [0, 1], got {doubt!r}")
    idx = d1._idx(b)
    pb = d1.possibility(b)
    if pb <= eps:
        raise ConditioningUndefined("Pi1(B) is zero", b)
    if doubt >= 1.0:
        return d1
    inside = set(idx)
    out = []
    for i, x in enumerate(d1.values):
        conditioned = x / pb if i in inside else 0.0
        out.append(max(conditioned, min(doubt, x)))
    return PossibilityDistribution(d1.frame, tuple(out))


def doubt_observation(b: Subset, doubt: float) -> PossibilityDistribution:
    """``pi2 = max(indicator(B), doubt)``."""
    bits = b.bits
    return PossibilityDistribution(b.frame, tuple(1.0 if bits >> i & 1 else doubt for i in range(b.frame.size)))
