"""Natural extension, the closure operator, and the Phi carrier.

Phi consists of the coherent sets of desirable gambles plus one Top element
standing for the whole gamble space (the contradictory information).  A
coherent element is carried by a finitely generated pointed cone whose
generators always include the unit indicators, so that the always-desirable
nonnegative gambles are materialised; the represented set is the cone minus
the origin.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .cones import (
    ConeV,
    Gamble,
    cone_intersect,
    dd_convert,
    member_h,
    unit_indicator,
)
from .linalg import idot, rank_of, to_primitive
from .spaces import PossibilitySpace, SpaceMismatch


@dataclass(frozen=True)
class PhiElement:
    space: PossibilitySpace
    cone: ConeV | None  # None encodes Top, the contradictory element

    @property
    def is_top(self) -> bool:
        return self.cone is None


def phi_top(space: PossibilitySpace) -> PhiElement:
    return PhiElement(space, None)


def _canonical_gamble(g: Gamble) -> Gamble:
    return Gamble(g.space, tuple(Fraction(v) for v in to_primitive(g.values)))


def _coherent_from_generators(
    space: PossibilitySpace, gens: Iterable[Gamble]
) -> PhiElement | None:
    """Coherent element from generators plus units, or None when contradictory.

    Generators are direction-normalised and pruned to the extreme rays,
    giving one canonical cone per represented set: the cone is pointed (the
    zero test passed) and full-dimensional (it holds the unit indicators),
    so a generator is extreme exactly when its tight facets have rank
    size-1, and the extreme rays are the unique minimal generating set.
    The canonical form is still never used to decide inequality.
    """
    units = [unit_indicator(space, w) for w in space.worlds()]
    pool: list[Gamble] = []
    seen = set()
    for g in list(gens) + units:
        cg = _canonical_gamble(g)
        if cg.values not in seen:
            seen.add(cg.values)
            pool.append(cg)
    cone = ConeV(space, tuple(pool))
    h = dd_convert(cone)
    assert not h.equalities, "a cone holding every unit indicator is full-dimensional"
    facets = [tuple(int(v) for v in row) for row in h.inequalities]
    if rank_of(facets) < space.size:
        # the dual is not full-dimensional, so the cone holds a line f, -f,
        # and the origin is the nontrivial combination f + (-f): contradiction
        return None
    need = space.size - 1
    kept = []
    for g in pool:
        vals = tuple(int(v) for v in g.values)
        tight = [a for a in facets if idot(a, vals) == 0]
        if rank_of(tight) == need:
            kept.append(g)
    kept.sort(key=lambda g: g.values)
    out = ConeV(space, tuple(kept))
    object.__setattr__(out, "_hform", h)
    return PhiElement(space, out)


def natural_extension(
    space: PossibilitySpace, gambles: Sequence[Gamble]
) -> PhiElement:
    """Smallest candidate coherent extension of a set of gambles.

    Builds the cone on the given gambles plus all unit indicators and
    returns Top exactly when the origin is a nontrivial combination of it.
    Zero gambles in the input are rejected as a caller bug.
    """
    for g in gambles:
        if g.space != space:
            raise SpaceMismatch("gamble on a different space")
        if g.is_zero():
            raise ValueError("the zero gamble cannot be asserted desirable")
    built = _coherent_from_generators(space, gambles)
    return phi_top(space) if built is None else built


def closure(space: PossibilitySpace, gambles: Sequence[Gamble]) -> PhiElement:
    """The smallest element of Phi containing the given gambles.

    Unlike natural_extension this absorbs the zero gamble: no coherent set
    contains it, so its presence forces Top.
    """
    kept = []
    for g in gambles:
        if g.space != space:
            raise SpaceMismatch("gamble on a different space")
        if g.is_zero():
            return phi_top(space)
        kept.append(g)
    return natural_extension(space, kept)


def phi_unit(space: PossibilitySpace) -> PhiElement:
    """The vacuous element: just the nonnegative nonzero gambles."""
    return natural_extension(space, [])


def phi_member(f: Gamble, p: PhiElement) -> bool:
    """Membership of a gamble in the represented set of gambles."""
    if f.space != p.space:
        raise SpaceMismatch("gamble and element live on different spaces")
    if p.is_top:
        return True
    if f.is_zero():
        return False
    return member_h(f, dd_convert(p.cone))


def phi_leq(a: PhiElement, b: PhiElement) -> bool:
    """Information order: set inclusion of the represented sets."""
    if a.space != b.space:
        raise SpaceMismatch("elements live on different spaces")
    if b.is_top:
        return True
    if a.is_top:
        return False
    h = dd_convert(b.cone)
    return all(member_h(g, h) for g in a.cone.generators)


def phi_equal(a: PhiElement, b: PhiElement) -> bool:
    """Semantic equality: mutual inclusion."""
    if a.is_top or b.is_top:
        return a.is_top and b.is_top
    if a.cone.generators == b.cone.generators:
        return True
    return phi_leq(a, b) and phi_leq(b, a)


def phi_meet(ps: Sequence[PhiElement]) -> PhiElement:
    """Intersection, the lattice meet of Phi.

    Top entries drop out; the intersection of coherent sets is coherent
    because it still holds the unit indicators and sits inside a coherent
    set.
    """
    if not ps:
        raise ValueError("meet of an empty family")
    space = ps[0].space
    coherent = []
    for p in ps:
        if p.space != space:
            raise SpaceMismatch("elements live on different spaces")
        if not p.is_top:
            coherent.append(p)
    if not coherent:
        return phi_top(space)
    cone = coherent[0].cone
    for p in coherent[1:]:
        cone = cone_intersect(cone, p.cone)
    out = _coherent_from_generators(space, cone.generators)
    assert out is not None, "intersection of coherent sets stayed coherent"
    return out


def generators_without_units(p: PhiElement) -> list[Gamble]:
    """Canonical generators with the unit indicators filtered out."""
    if p.is_top:
        raise ValueError("Top has no generator form")
    units = {unit_indicator(p.space, w).values for w in p.space.worlds()}
    return [g for g in p.cone.generators if g.values not in units]
