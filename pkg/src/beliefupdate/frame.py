"""Finite frames of discernment and their exact subset algebra.

Subsets are bit-encoded against the frame's label order: element ``i`` of
the frame is bit ``1 << i``.  Python integers are arbitrary precision, so a
single ``int`` covers frames of any size.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator

from .errors import FrameMismatch, FrameTooLarge, UnknownElement, ValidationError

ENUMERATION_CAP = 20


@dataclass(frozen=True)
class Frame:
    """An ordered, finite set of distinct element labels."""

    labels: tuple[str, ...]

    def __post_init__(self):
        labels = tuple(self.labels)
        object.__setattr__(self, "labels", labels)
        if not labels:
            raise ValidationError("frame size", "a frame needs at least one element")
        for lab in labels:
            if not isinstance(lab, str) or not lab:
                raise ValidationError("frame labels", f"labels must be non-empty strings, got {lab!r}")
        if len(set(labels)) != len(labels):
            raise ValidationError("frame labels", "labels must be pairwise distinct")

    @property
    def size(self) -> int:
        return len(self.labels)

    def __len__(self) -> int:
        return len(self.labels)

    def __iter__(self) -> Iterator[str]:
        return iter(self.labels)

    @cached_property
    def _index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownElement(label) from None

    def subset(self, members: Iterable[str]) -> Subset:
        if isinstance(members, str):
            members = [members]
        bits = 0
        for name in members:
            bits |= 1 << self.index(name)
        return Subset(self, bits)

    def singleton(self, label: str) -> Subset:
        return Subset(self, 1 << self.index(label))

    def singletons(self) -> list[Subset]:
        return [Subset(self, 1 << i) for i in range(self.size)]

    @property
    def full(self) -> Subset:
        return Subset(self, (1 << self.size) - 1)

    @property
    def empty(self) -> Subset:
        return Subset(self, 0)

    def __repr__(self):
        return f"Frame({list(self.labels)!r})"


@dataclass(frozen=True)
class Subset:
    """A subset of a frame, stored as a membership bitmask."""

    frame: Frame = field(repr=False)
    bits: int

    def __post_init__(self):
        if self.bits < 0 or self.bits >> self.frame.size:
            raise ValidationError("subset bits", f"bitmask {self.bits:#x} exceeds frame size {self.frame.size}")

    def _check(self, other: Subset) -> None:
        if self.frame is not other.frame and self.frame != other.frame:
            raise FrameMismatch(f"{self.frame!r} vs {other.frame!r}")

    # Boolean algebra
    def __and__(self, other: Subset) -> Subset:
        self._check(other)
        return Subset(self.frame, self.bits & other.bits)

    def __or__(self, other: Subset) -> Subset:
        self._check(other)
        return Subset(self.frame, self.bits | other.bits)

    def __sub__(self, other: Subset) -> Subset:
        self._check(other)
        return Subset(self.frame, self.bits & ~other.bits)

    def __invert__(self) -> Subset:
        return Subset(self.frame, ((1 << self.frame.size) - 1) & ~self.bits)

    def __le__(self, other: Subset) -> bool:
        self._check(other)
        return self.bits & ~other.bits == 0

    def __ge__(self, other: Subset) -> bool:
        return other <= self

    def __lt__(self, other: Subset) -> bool:
        return self <= other and self.bits != other.bits

    def __gt__(self, other: Subset) -> bool:
        return other < self

    def isdisjoint(self, other: Subset) -> bool:
        self._check(other)
        return self.bits & other.bits == 0

    def __bool__(self) -> bool:
        return self.bits != 0

    def __len__(self) -> int:
        return bin(self.bits).count("1")

    def __contains__(self, label: str) -> bool:
        return bool(self.bits >> self.frame.index(label) & 1)

    def indices(self) -> list[int]:
        b, i, out = self.bits, 0, []
        while b:
            if b & 1:
                out.append(i)
            b >>= 1
            i += 1
        return out

    def __iter__(self) -> Iterator[str]:
        labels = self.frame.labels
        return (labels[i] for i in self.indices())

    def names(self) -> list[str]:
        """Member labels, sorted by name (the canonical serialized form)."""
        return sorted(self)

    def __str__(self):
        return "{" + ",".join(self) + "}"

    def __repr__(self):
        return f"Subset({str(self)})"


def subset_of(frame: Frame, members: Iterable[str]) -> Subset:
    return frame.subset(members)


def complement(a: Subset) -> Subset:
    return ~a


def intersect(a: Subset, b: Subset) -> Subset:
    return a & b


def union(a: Subset, b: Subset) -> Subset:
    return a | b


def is_subset(a: Subset, b: Subset) -> bool:
    return a <= b


def is_empty(a: Subset) -> bool:
    return a.bits == 0


def enumerate_subsets(frame: Frame, cap: int = ENUMERATION_CAP) -> Iterator[Subset]:
    """Yield all ``2**size`` subsets of ``frame`` in bitmask order."""
    if frame.size > cap:
        raise FrameTooLarge(f"frame has {frame.size} elements, enumeration cap is {cap}")
    for bits in range(1 << frame.size):
        yield Subset(frame, bits)


def subsets_of(s: Subset) -> Iterator[Subset]:
    """Yield every subset of ``s`` (including the empty set and ``s``)."""
    sub = s.bits
    while True:
        yield Subset(s.frame, sub)
        if sub == 0:
            return
        sub = (sub - 1) & s.bits
