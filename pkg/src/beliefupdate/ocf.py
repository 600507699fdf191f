"""Spohn's ordinal conditional functions (integer ranks) on a finite frame.

Ranks translate to possibilities through ``pi(w) = exp(-kappa(w))``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

from .errors import (
    ConditioningUndefined,
    DegenerateComplement,
    EmptySet,
    FrameMismatch,
    NotOnRankGrid,
    ValidationError,
    WeightNormalization,
    ZeroPossibility,
)
from .frame import Frame, Subset
from .possibility import PossibilityDistribution, poss_jeffrey_update
from .probability import EPS, WeightedPartition

RANK_CAP = 10**6


@dataclass(frozen=True)
class Ocf:
    """Ranks ``kappa(w)`` in {0, 1, ..., RANK_CAP}, with minimum rank 0."""

    frame: Frame
    ranks: tuple[int, ...]

    def __post_init__(self):
        r = tuple(self.ranks)
        if len(r) != self.frame.size:
            raise ValidationError("ocf arity", f"expected {self.frame.size} ranks, got {len(r)}")
        for k in r:
            if isinstance(k, bool) or not isinstance(k, int):
                raise ValidationError("ocf integrality", f"rank {k!r} is not an integer")
            if not 0 <= k <= RANK_CAP:
                raise ValidationError("ocf range", f"rank {k} is outside [0, {RANK_CAP}]")
        if min(r) != 0:
            raise ValidationError("ocf normalization", "some element must have rank 0")
        object.__setattr__(self, "ranks", r)

    @classmethod
    def from_mapping(cls, frame: Frame, ranks: Mapping[str, int]) -> Ocf:
        r = [None] * frame.size
        for name, k in ranks.items():
            r[frame.index(name)] = k
        missing = [frame.labels[i] for i, k in enumerate(r) if k is None]
        if missing:
            raise ValidationError("ocf arity", f"no rank given for {missing}")
        return cls(frame, tuple(r))

    def __getitem__(self, label: str) -> int:
        return self.ranks[self.frame.index(label)]

    def as_dict(self) -> dict[str, int]:
        return dict(zip(self.frame.labels, self.ranks))

    def rank(self, a: Subset) -> int:
        if a.frame != self.frame:
            raise FrameMismatch("event and OCF live on different frames")
        if not a:
            raise EmptySet("the rank of the empty set is undefined")
        return min(self.ranks[i] for i in a.indices())

    def is_constant_on(self, partition: WeightedPartition) -> bool:
        """True when ranks are constant inside every cell."""
        return all(len({self.ranks[i] for i in cell.indices()}) == 1 for cell, _ in partition)


def ocf_rank(k: Ocf, a: Subset) -> int:
    return k.rank(a)


def ocf_a_part(k: Ocf, a: Subset) -> dict[str, int]:
    """The A-part ``kappa(w) - kappa(A)`` for ``w`` in A."""
    base = k.rank(a)
    labels = k.frame.labels
    return {labels[i]: k.ranks[i] - base for i in a.indices()}


def ocf_conditionalize(k: Ocf, a: Subset, n: int) -> Ocf:
    """(A, n)-conditionalization: the A-part on A, ``n`` plus the not-A part on not-A."""
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise ValidationError("shift", f"n must be a natural number, got {n!r}")
    if not a:
        raise EmptySet("cannot conditionalize on the empty set")
    not_a = ~a
    if not not_a:
        raise DegenerateComplement("A is the whole frame; use ocf_a_part instead")
    ka, kna = k.rank(a), k.rank(not_a)
    bits = a.bits
    ranks = tuple(r - ka if bits >> i & 1 else n + r - kna for i, r in enumerate(k.ranks))
    return Ocf(k.frame, ranks)


def ocf_to_possibility(k: Ocf) -> PossibilityDistribution:
    return PossibilityDistribution(k.frame, tuple(math.exp(-r) for r in k.ranks))


def possibility_to_ocf(d: PossibilityDistribution, tol: float = 1e-6, eps: float = EPS) -> Ocf:
    """Inverse translation; every value must be ``exp(-k)`` up to ``tol`` in log scale."""
    ranks = []
    for label, x in zip(d.frame.labels, d.values):
        if x <= eps:
            raise ZeroPossibility(f"{label!r} has possibility {x!r}; only positive values have a rank")
        r = -math.log(x)
        k = round(r)
        if abs(r - k) > tol or k < 0:
            raise NotOnRankGrid(label, x)
        ranks.append(int(k))
    return Ocf(d.frame, tuple(ranks))


def spohn_observation(frame: Frame, cells) -> WeightedPartition:
    """A partition observation with weights ``alpha_i = Pi2(A_i)`` (largest weight 1)."""
    return WeightedPartition.of(frame, cells, mode="max")


def _as_possibility(prior: Ocf | PossibilityDistribution) -> PossibilityDistribution:
    return ocf_to_possibility(prior) if isinstance(prior, Ocf) else prior


def spohn_partition_update(prior: Ocf | PossibilityDistribution, obs: WeightedPartition,
                           eps: float = EPS) -> PossibilityDistribution:
    """Spohn's rule on a partition: ``alpha_i * pi1(w) / Pi1(A_i)`` for ``w`` in ``A_i``."""
    pi1 = _as_possibility(prior)
    if obs.frame != pi1.frame:
        raise FrameMismatch("observation and prior live on different frames")
    if obs.mode != "max":
        raise WeightNormalization("Spohn's rule needs a partition whose largest weight is 1")
    out = [0.0] * pi1.frame.size
    for cell, alpha in obs:
        if alpha <= eps:
            continue
        pc = pi1.possibility(cell)
        if pc <= eps:
            raise ConditioningUndefined(f"Pi1(A_i) is zero for a cell with weight {alpha}", cell)
        for i in cell.indices():
            out[i] = alpha * pi1.values[i] / pc
    return PossibilityDistribution(pi1.frame, tuple(out))


def step_distribution(obs: WeightedPartition) -> PossibilityDistribution:
    """``pi2(w) = alpha_i`` for ``w`` in ``A_i``."""
    v = [0.0] * obs.frame.size
    for cell, alpha in obs:
        for i in cell.indices():
            v[i] = alpha
    return PossibilityDistribution(obs.frame, tuple(v))


@dataclass(frozen=True)
class RuleComparison:
    """Side-by-side outcome of Spohn's rule and the possibilistic Jeffrey-like rule."""

    prior: PossibilityDistribution
    observation: PossibilityDistribution
    spohn: PossibilityDistribution
    possibilistic: PossibilityDistribution
    difference: tuple[float, ...]
    flags: dict = field(default_factory=dict)

    @property
    def divergence(self) -> float:
        return max(abs(x) for x in self.difference)

    def as_dict(self) -> dict:
        labels = self.prior.frame.labels
        return {
            "frame": list(labels),
            "prior": self.prior.as_dict(),
            "observation": self.observation.as_dict(),
            "spohn": self.spohn.as_dict(),
            "possibilistic": self.possibilistic.as_dict(),
            "difference": dict(zip(labels, self.difference)),
            "divergence": self.divergence,
            "flags": dict(self.flags),
        }


def compare_rules(prior: Ocf | PossibilityDistribution, obs: WeightedPartition,
                  eps: float = EPS) -> RuleComparison:
    """Run both updating rules on the same partition observation and flag the known cases.

    The observation distribution ``pi2`` is the step function of the partition
    weights.  Flags:

    * ``observation_dominates``: ``pi2 >= pi1`` (the possibilistic rule should keep ``pi1``)
    * ``observation_dominated``: ``pi2 <= pi1`` (both rules should return ``pi2``)
    * ``cores_overlap``: the possibilistic result should be ``min(pi1, pi2)``
    * ``possibilistic_keeps_prior``, ``spohn_returns_observation``: observed outcomes
    """
    pi1 = _as_possibility(prior)
    pi2 = step_distribution(obs)
    spohn = spohn_partition_update(pi1, obs, eps)
    poss = poss_jeffrey_update(pi1, pi2, eps=eps)
    diff = tuple(s - p for s, p in zip(spohn.values, poss.values))

    def close(u, v):
        return all(abs(x - y) <= eps for x, y in zip(u, v))

    flags = {
        "observation_dominates": all(y >= x - eps for x, y in zip(pi1.values, pi2.values)),
        "observation_dominated": all(y <= x + eps for x, y in zip(pi1.values, pi2.values)),
        "cores_overlap": bool(pi1.core(eps) & pi2.core(eps)),
        "possibilistic_keeps_prior": close(poss.values, pi1.values),
        "spohn_returns_observation": close(spohn.values, pi2.values),
        "rules_agree": close(spohn.values, poss.values),
    }
    return RuleComparison(pi1, pi2, spohn, poss, diff, flags)
