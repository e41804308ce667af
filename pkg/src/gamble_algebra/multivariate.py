"""Product possibility spaces and cylinder questions.

Worlds of a variable system are encoded row-major mixed radix over the
variable domains, so world w has coordinate (w // stride_i) % size_i for
variable i; examples elsewhere depend on this encoding and it is fixed.
Cylinder partitions commute pairwise, which makes every extraction operator
composition collapse to the meet.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import prod
from typing import Iterable, Sequence

from .algebra import extract
from .desirability import PhiElement, phi_equal
from .spaces import (
    Partition,
    PossibilitySpace,
    commutes,
    cond_independent,
    meet,
    partition,
)


class ConsistencyError(RuntimeError):
    """Two formulations that must agree disagreed: an implementation bug."""


@dataclass(frozen=True)
class VariableSystem:
    domains: tuple[int, ...]
    space: PossibilitySpace = field(init=False)
    _cylinders: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not self.domains or any(d < 1 for d in self.domains):
            raise ValueError("every variable needs at least one value")
        object.__setattr__(self, "space", PossibilitySpace(prod(self.domains)))
        object.__setattr__(self, "_cylinders", {})
        # eager cylinder cache: all reads after construction are pure
        for mask in range(1 << len(self.domains)):
            s = frozenset(
                i for i in range(len(self.domains)) if mask >> i & 1
            )
            self._cylinders[s] = self._build_cylinder(s)

    def _coords(self, world: int) -> tuple[int, ...]:
        out = []
        rest = world
        for size in reversed(self.domains):
            out.append(rest % size)
            rest //= size
        return tuple(reversed(out))

    def _build_cylinder(self, s: frozenset) -> Partition:
        groups: dict[tuple[int, ...], list[int]] = {}
        for w in self.space.worlds():
            coords = self._coords(w)
            key = tuple(coords[i] for i in sorted(s))
            groups.setdefault(key, []).append(w)
        return partition(self.space, groups.values())


def variable_system(domains: Iterable[int]) -> VariableSystem:
    return VariableSystem(tuple(domains))


def cylinder(sys: VariableSystem, s: Iterable[int]) -> Partition:
    """The partition grouping worlds that agree on the given variables."""
    sset = frozenset(s)
    for i in sset:
        if not 0 <= i < len(sys.domains):
            raise ValueError(f"variable {i} out of range")
    return sys._cylinders[sset]


def subset_ci(
    sys: VariableSystem, s: Iterable[int], t: Iterable[int], r: Iterable[int]
) -> bool:
    """Conditional independence of variable subsets, checked two ways.

    The subset identity (S u R) n (T u R) = R and the partition-level
    predicate must agree; a disagreement means a bug and raises.
    """
    ss, tt, rr = frozenset(s), frozenset(t), frozenset(r)
    by_sets = (ss | rr) & (tt | rr) == rr
    by_parts = cond_independent(
        [cylinder(sys, ss), cylinder(sys, tt)], cylinder(sys, rr)
    )
    if by_sets != by_parts:
        raise ConsistencyError(
            f"subset identity says {by_sets}, partitions say {by_parts} "
            f"for S={sorted(ss)} T={sorted(tt)} R={sorted(rr)}"
        )
    return by_sets


def commuting_extract_compose(
    x: Partition, y: Partition, p: PhiElement
) -> PhiElement:
    """Extraction at the meet, asserted equal to both composition orders.

    Only defined for commuting questions; that is what collapses the
    composition of extractions to a single extraction.
    """
    if not commutes(x, y):
        raise ValueError("the questions do not commute")
    at_meet = extract(meet(x, y), p)
    xy = extract(y, extract(x, p))
    yx = extract(x, extract(y, p))
    if not (phi_equal(at_meet, xy) and phi_equal(at_meet, yx)):
        raise ConsistencyError("extraction compositions disagree with the meet")
    return at_meet
