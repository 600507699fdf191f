"""Dempster-Shafer mass functions, their conditioning rules and updates.

Mass functions are stored sparsely as a map from focal subsets to masses.
Belief and plausibility are evaluated by iterating the focal elements.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .errors import (
    ConditioningUndefined,
    FrameMismatch,
    FrameTooLarge,
    NoFeasibleSelection,
    TotalConflict,
    ValidationError,
)
from .frame import ENUMERATION_CAP, Frame, Subset
from .probability import EPS, ProbabilityMeasure, WeightedPartition


class MassFunction:
    """A normalized basic probability assignment over a frame.

    Zero masses are dropped on construction; the empty set may not carry mass.
    Instances are immutable and hashable.
    """

    __slots__ = ("frame", "_focal", "_hash")

    def __init__(self, frame: Frame, focal: Mapping[Subset | Iterable[str], float], *, eps: float = EPS):
        acc: dict[int, float] = {}
        for key, value in focal.items():
            s = key if isinstance(key, Subset) else frame.subset(key)
            if s.frame != frame:
                raise FrameMismatch("focal element outside the frame")
            value = float(value)
            if not math.isfinite(value) or value < 0:
                raise ValidationError("mass non-negativity", f"mass {value!r} on {s}")
            if value == 0:
                continue
            if not s:
                raise ValidationError("empty focal element", "m(empty set) must be 0")
            acc[s.bits] = acc.get(s.bits, 0.0) + value
        total = math.fsum(acc.values())
        if abs(total - 1.0) > eps:
            raise ValidationError("mass normalization", f"masses sum to {total!r}")
        self.frame = frame
        self._focal = {bits: v for bits, v in sorted(acc.items())}
        self._hash = None

    @classmethod
    def _normalized(cls, frame: Frame, raw: Mapping[int, float], eps: float = EPS) -> MassFunction:
        """Build from raw bit-keyed masses: drop the empty set, prune masses below eps, renormalize."""
        kept = {b: v for b, v in raw.items() if b and v > eps}
        total = math.fsum(kept.values())
        if total <= 0:
            raise ConditioningUndefined("no mass survives the transfer")
        m = cls.__new__(cls)
        m.frame = frame
        m._focal = {b: v / total for b, v in sorted(kept.items())}
        m._hash = None
        return m

    @classmethod
    def vacuous(cls, frame: Frame) -> MassFunction:
        return cls(frame, {frame.full: 1.0})

    @classmethod
    def categorical(cls, a: Subset) -> MassFunction:
        return cls(a.frame, {a: 1.0})

    @classmethod
    def from_probability(cls, p: ProbabilityMeasure) -> MassFunction:
        return cls(p.frame, {s: w for s, w in zip(p.frame.singletons(), p.weights)})

    @classmethod
    def from_partition(cls, obs: WeightedPartition) -> MassFunction:
        return cls(obs.frame, {s: w for s, w in obs.cells})

    # mapping-like access
    def items(self):
        return [(Subset(self.frame, b), v) for b, v in self._focal.items()]

    def focal_elements(self) -> list[Subset]:
        return [Subset(self.frame, b) for b in self._focal]

    def __getitem__(self, key: Subset | Iterable[str]) -> float:
        s = key if isinstance(key, Subset) else self.frame.subset(key)
        return self._focal.get(s.bits, 0.0)

    def __len__(self):
        return len(self._focal)

    def __iter__(self):
        return iter(self.focal_elements())

    def __eq__(self, other):
        if not isinstance(other, MassFunction):
            return NotImplemented
        return self.frame == other.frame and self._focal == other._focal

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.frame, tuple(self._focal.items())))
        return self._hash

    def __repr__(self):
        body = ", ".join(f"{Subset(self.frame, b)}: {v:.6g}" for b, v in self._focal.items())
        return f"MassFunction({{{body}}})"

    def as_dict(self) -> dict[tuple[str, ...], float]:
        """Focal elements keyed by their sorted member names."""
        return {tuple(s.names()): v for s, v in self.items()}

    def is_bayesian(self) -> bool:
        return all(b & (b - 1) == 0 for b in self._focal)

    def to_probability(self) -> ProbabilityMeasure:
        if not self.is_bayesian():
            raise ValidationError("bayesian mass", "focal elements are not all singletons")
        w = [0.0] * self.frame.size
        for b, v in self._focal.items():
            w[b.bit_length() - 1] = v
        return ProbabilityMeasure(self.frame, tuple(w))

    def _bits(self, s: Subset) -> int:
        if s.frame != self.frame:
            raise FrameMismatch("event and mass function live on different frames")
        return s.bits

    def belief(self, b: Subset) -> float:
        bits = self._bits(b)
        return math.fsum(v for f, v in self._focal.items() if f & ~bits == 0)

    def plausibility(self, b: Subset) -> float:
        bits = self._bits(b)
        return math.fsum(v for f, v in self._focal.items() if f & bits)

    def conflict(self, other: MassFunction) -> float:
        """Total mass product on pairs of disjoint focal elements."""
        if other.frame != self.frame:
            raise FrameMismatch("mass functions live on different frames")
        return math.fsum(v1 * v2 for f1, v1 in self._focal.items() for f2, v2 in other._focal.items() if not f1 & f2)


def belief(m: MassFunction, b: Subset) -> float:
    return m.belief(b)


def plausibility(m: MassFunction, b: Subset) -> float:
    return m.plausibility(b)


class ConditioningRule(enum.Enum):
    DEMPSTER = "dempster"
    GEOMETRIC = "geometric"
    UPPER = "upper"
    LOWER = "lower"


@dataclass(frozen=True)
class IntervalValuation:
    """Upper and lower conditional probabilities ``P*(. | A)``, ``P_*(. | A)``.

    Each bound is ``Pl(X) / (Pl(X) + Bel(Y))`` resp. ``Bel(X) / (Bel(X) + Pl(Y))``
    with ``X = B & A`` and ``Y = ~B & A``; a bound is undefined when its
    denominator is below ``eps``.
    """

    mass: MassFunction
    given: Subset
    eps: float = EPS

    def upper(self, b: Subset) -> float:
        x, y = b & self.given, ~b & self.given
        pl_x = self.mass.plausibility(x)
        den = pl_x + self.mass.belief(y)
        if den <= self.eps:
            raise ConditioningUndefined("Pl(A&B) + Bel(~A&B) is zero", b)
        return pl_x / den

    def lower(self, b: Subset) -> float:
        x, y = b & self.given, ~b & self.given
        bel_x = self.mass.belief(x)
        den = bel_x + self.mass.plausibility(y)
        if den <= self.eps:
            raise ConditioningUndefined("Bel(A&B) + Pl(~A&B) is zero", b)
        return bel_x / den

    def __call__(self, b: Subset) -> tuple[float, float]:
        return self.upper(b), self.lower(b)

    def is_defined(self, b: Subset) -> bool:
        try:
            self(b)
        except ConditioningUndefined:
            return False
        return True


def dempster_condition(m: MassFunction, a: Subset, eps: float = EPS) -> MassFunction:
    """Transfer every focal mass to its intersection with ``a`` and renormalize."""
    bits = m._bits(a)
    if m.plausibility(a) <= eps:
        raise ConditioningUndefined("Pl(A) is zero", a)
    raw: dict[int, float] = {}
    for f, v in m._focal.items():
        g = f & bits
        if g:
            raw[g] = raw.get(g, 0.0) + v
    return MassFunction._normalized(m.frame, raw, eps)


def geometric_condition(m: MassFunction, a: Subset, eps: float = EPS) -> MassFunction:
    """Keep only the focal elements inside ``a`` and renormalize."""
    bits = m._bits(a)
    if m.belief(a) <= eps:
        raise ConditioningUndefined("Bel(A) is zero", a)
    return MassFunction._normalized(m.frame, {f: v for f, v in m._focal.items() if f & ~bits == 0}, eps)


def condition(m: MassFunction, a: Subset, rule: ConditioningRule | str = ConditioningRule.DEMPSTER,
              eps: float = EPS) -> MassFunction | IntervalValuation:
    """Condition ``m`` on the event ``a`` with the selected rule.

    Dempster and geometric conditioning return a new MassFunction; the upper
    and lower rules return an IntervalValuation (whose ``upper``/``lower``
    raise ConditioningUndefined per query when a denominator vanishes).
    """
    rule = ConditioningRule(rule)
    if rule is ConditioningRule.DEMPSTER:
        return dempster_condition(m, a, eps)
    if rule is ConditioningRule.GEOMETRIC:
        return geometric_condition(m, a, eps)
    m._bits(a)
    return IntervalValuation(m, a, eps)


def dempster_conditional_plausibility(m: MassFunction, b: Subset, a: Subset, eps: float = EPS) -> float:
    """``Pl(B | A) = Pl(A & B) / Pl(A)``."""
    pl_a = m.plausibility(a)
    if pl_a <= eps:
        raise ConditioningUndefined("Pl(A) is zero", a)
    return m.plausibility(a & b) / pl_a


def geometric_conditional_belief(m: MassFunction, b: Subset, a: Subset, eps: float = EPS) -> float:
    """``Bel_g(B | A) = Bel(A & B) / Bel(A)``."""
    bel_a = m.belief(a)
    if bel_a <= eps:
        raise ConditioningUndefined("Bel(A) is zero", a)
    return m.belief(a & b) / bel_a


def bel_conditional(m: MassFunction, b: Subset, a: Subset, eps: float = EPS) -> float:
    """Dempster-conditional belief ``(Bel(B or ~A) - Bel(~A)) / (1 - Bel(~A))``.

    Written in terms of the unconditioned belief function; equals
    ``1 - Pl(~B | A)``.
    """
    not_a = ~a
    bel_na = m.belief(not_a)
    if bel_na >= 1.0 - eps:
        raise ConditioningUndefined("Bel(~A) is one", a)
    return (m.belief(b | not_a) - bel_na) / (1.0 - bel_na)


def dempster_combine(m1: MassFunction, m2: MassFunction, eps: float = EPS) -> MassFunction:
    """Dempster's rule of combination (normalized conjunctive rule)."""
    if m1.frame != m2.frame:
        raise FrameMismatch("mass functions live on different frames")
    raw: dict[int, float] = {}
    conflict = 0.0
    for f1, v1 in m1._focal.items():
        for f2, v2 in m2._focal.items():
            g = f1 & f2
            if g:
                raw[g] = raw.get(g, 0.0) + v1 * v2
            else:
                conflict += v1 * v2
    if conflict >= 1.0 - eps:
        raise TotalConflict(f"conflict mass {conflict!r} leaves nothing to normalize")
    return MassFunction._normalized(m1.frame, raw, eps)


def jeffrey_ds_update(m1: MassFunction, m2: MassFunction,
                      rule: ConditioningRule | str = ConditioningRule.DEMPSTER,
                      eps: float = EPS) -> MassFunction:
    """Jeffrey-like update of ``m1`` by the uncertain observation ``m2``.

    Returns ``sum_A m2(A) * m1(. | A)`` where the conditional is Dempster's
    (default) or the geometric one.  Every focal element of ``m2`` must be
    conditionable: ``Pl1(A) > eps`` for Dempster, ``Bel1(A) > eps`` for the
    geometric variant.
    """
    rule = ConditioningRule(rule)
    if m1.frame != m2.frame:
        raise FrameMismatch("prior and observation live on different frames")
    if rule is ConditioningRule.DEMPSTER:
        cond = dempster_condition
    elif rule is ConditioningRule.GEOMETRIC:
        cond = geometric_condition
    else:
        raise ValueError(f"rule {rule.value!r} does not yield a mass function")
    raw: dict[int, float] = {}
    for a, w in m2.items():
        try:
            post = cond(m1, a, eps)
        except ConditioningUndefined as exc:
            raise ConditioningUndefined(f"observation focal element cannot be conditioned on: {exc.reason}", a) from None
        for f, v in post._focal.items():
            raw[f] = raw.get(f, 0.0) + w * v
    return MassFunction._normalized(m1.frame, raw, eps)


def mixture(weighted: Iterable[tuple[float, MassFunction]], eps: float = EPS) -> MassFunction:
    """Convex combination ``sum_i alpha_i * m_i`` of mass functions."""
    weighted = list(weighted)
    frame = weighted[0][1].frame
    raw: dict[int, float] = {}
    for alpha, m in weighted:
        if m.frame != frame:
            raise FrameMismatch("mass functions live on different frames")
        for f, v in m._focal.items():
            raw[f] = raw.get(f, 0.0) + alpha * v
    return MassFunction._normalized(frame, raw, eps)


# --- credal oracle -------------------------------------------------------------


class CredalOracle:
    """Exhaustive upper/lower conditional probabilities of a mass function.

    Enumerates every selection function that sends each focal element's
    whole mass to one of its members.  These probability measures include
    every extreme point of the credal set ``{P : Bel <= P <= Pl}``, so the
    sup and inf of the (quasi-linear) ratio ``P(B & A) / P(A)`` over them are
    the sup and inf over the whole credal set.
    """

    def __init__(self, m: MassFunction, cap: int = ENUMERATION_CAP):
        if m.frame.size > cap:
            raise FrameTooLarge(f"frame has {m.frame.size} elements, enumeration cap is {cap}")
        self.mass = m
        n = m.frame.size
        rows = []
        items = list(m._focal.items())
        choices = [Subset(m.frame, f).indices() for f, _ in items]
        for pick in itertools.product(*choices):
            row = [0.0] * n
            for (_, v), i in zip(items, pick):
                row[i] += v
            rows.append(row)
        # distinct extreme points only; rows are exact sums of the same floats
        self.points = np.unique(np.asarray(rows, dtype=float), axis=0)

    def _event_prob(self, s: Subset) -> np.ndarray:
        if s.frame != self.mass.frame:
            raise FrameMismatch("event and mass function live on different frames")
        idx = s.indices()
        if not idx:
            return np.zeros(len(self.points))
        return self.points[:, idx].sum(axis=1)

    def bounds(self, query: Subset, given: Subset, eps: float = EPS) -> tuple[float, float]:
        """Return ``(sup, inf)`` of ``P(query | given)`` over the credal set."""
        p_given = self._event_prob(given)
        feasible = p_given > eps
        if not feasible.any():
            raise NoFeasibleSelection(f"every selection gives P({given}) = 0")
        ratio = self._event_prob(query & given)[feasible] / p_given[feasible]
        return float(ratio.max()), float(ratio.min())


def credal_oracle(m: MassFunction, query: Subset, given: Subset, eps: float = EPS) -> tuple[float, float]:
    """Brute-force ``(sup, inf)`` of ``P(query | given)`` over ``P`` dominating ``Bel``."""
    return CredalOracle(m).bounds(query, given, eps)
