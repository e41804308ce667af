"""Exact rational gambles and finitely generated convex cones.

A ConeV is the set of all nonnegative combinations of its generators; the
origin's membership is tracked separately by callers (see zero_nontrivial).
A ConeH is the closed cone cut out by rational inequalities a.f >= 0 and
equalities b.f = 0.  Conversion between the two forms is exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .linalg import IVec, dd_cone, feasible_nonneg, to_primitive
from .spaces import Partition, PossibilitySpace, SpaceMismatch


@dataclass(frozen=True)
class Gamble:
    space: PossibilitySpace
    values: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.values) != self.space.size:
            raise ValueError("gamble length does not match the space")

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.values)

    def __add__(self, other: "Gamble") -> "Gamble":
        _same_space(self, other)
        return Gamble(self.space, tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: "Gamble") -> "Gamble":
        return self + (-other)

    def __neg__(self) -> "Gamble":
        return Gamble(self.space, tuple(-v for v in self.values))

    def __rmul__(self, scalar) -> "Gamble":
        c = Fraction(scalar)
        return Gamble(self.space, tuple(c * v for v in self.values))


def gamble(space: PossibilitySpace, values: Iterable) -> Gamble:
    return Gamble(space, tuple(Fraction(v) for v in values))


def unit_indicator(space: PossibilitySpace, world: int) -> Gamble:
    if not 0 <= world < space.size:
        raise ValueError("world outside the space")
    return Gamble(space, tuple(Fraction(1 if w == world else 0) for w in space.worlds()))


def constant(space: PossibilitySpace, value) -> Gamble:
    return Gamble(space, tuple(Fraction(value) for _ in space.worlds()))


def _same_space(a, b) -> None:
    if a.space != b.space:
        raise SpaceMismatch("operands live on different possibility spaces")


@dataclass(frozen=True)
class ConeV:
    space: PossibilitySpace
    generators: tuple[Gamble, ...]

    def __post_init__(self):
        seen = set()
        unique = []
        for g in self.generators:
            if g.space != self.space:
                raise SpaceMismatch("generator on a different space")
            if g.is_zero():
                raise ValueError("the zero gamble cannot be a generator")
            if g.values not in seen:
                seen.add(g.values)
                unique.append(g)
        object.__setattr__(self, "generators", tuple(unique))
        object.__setattr__(self, "_hform", None)


@dataclass(frozen=True)
class ConeH:
    space: PossibilitySpace
    inequalities: tuple[tuple[Fraction, ...], ...]
    equalities: tuple[tuple[Fraction, ...], ...]


@dataclass(frozen=True)
class MeasurableSubspace:
    partition: Partition
    basis: tuple[Gamble, ...] = field(init=False)

    def __post_init__(self):
        sp = self.partition.space
        basis = tuple(
            Gamble(sp, tuple(Fraction(1 if w in b else 0) for w in sp.worlds()))
            for b in self.partition.blocks
        )
        object.__setattr__(self, "basis", basis)

    @property
    def space(self) -> PossibilitySpace:
        return self.partition.space


def measurable_subspace(x: Partition) -> MeasurableSubspace:
    return MeasurableSubspace(x)


def is_measurable(f: Gamble, x: Partition) -> bool:
    """True iff f is constant on every block of x."""
    if f.space != x.space:
        raise SpaceMismatch("gamble and partition live on different spaces")
    for b in x.blocks:
        v = f.values[b[0]]
        if any(f.values[w] != v for w in b[1:]):
            return False
    return True


def _gen_rows(c: ConeV) -> list[IVec]:
    return [to_primitive(g.values) for g in c.generators]


def dd_convert(c: ConeV) -> ConeH:
    """Facet form of a generated cone, via double description on the dual.

    The dual of cone(G) is {a : a.g >= 0 for g in G}; its extreme rays are
    the facet normals of cone(G) and its lineality spans the normals of the
    implicit equalities.  The conversion result is cached on the cone.
    """
    cached = getattr(c, "_hform", None)
    if cached is not None:
        return cached
    n = c.space.size
    lin, rays = dd_cone(_gen_rows(c), [], n)
    h = ConeH(
        c.space,
        tuple(tuple(Fraction(v) for v in r) for r in rays),
        tuple(tuple(Fraction(v) for v in l) for l in lin),
    )
    object.__setattr__(c, "_hform", h)
    return h


def dd_convert_back(h: ConeH) -> ConeV:
    """Generator form of a facet-described cone.

    Lineality directions come back as opposite generator pairs, so the
    result again stands for the set of nonnegative combinations.
    """
    n = h.space.size
    lin, rays = dd_cone(h.inequalities, h.equalities, n)
    gens = [Gamble(h.space, tuple(Fraction(v) for v in r)) for r in rays]
    for l in lin:
        gens.append(Gamble(h.space, tuple(Fraction(v) for v in l)))
        gens.append(Gamble(h.space, tuple(Fraction(-v) for v in l)))
    gens.sort(key=lambda g: g.values)
    return ConeV(h.space, tuple(gens))


def member_h(f: Gamble, h: ConeH) -> bool:
    """Membership in a facet-form cone: check every constraint."""
    _same_space(f, h)
    for a in h.inequalities:
        if sum(ai * fi for ai, fi in zip(a, f.values)) < 0:
            return False
    for b in h.equalities:
        if sum(bi * fi for bi, fi in zip(b, f.values)) != 0:
            return False
    return True


def cone_member(f: Gamble, c: ConeV) -> bool:
    """True iff f is a nonnegative combination of the generators.

    Decided by exact rational linear feasibility (phase-I simplex); the
    f = 0 exclusion is the caller's business.
    """
    _same_space(f, c)
    if not c.generators:
        return f.is_zero()
    rows = [
        [g.values[w] for g in c.generators] for w in c.space.worlds()
    ]
    return feasible_nonneg(rows, list(f.values)) is not None


def zero_nontrivial(c: ConeV) -> bool:
    """True iff the origin is a nontrivial positive combination of generators."""
    if not c.generators:
        return False
    rows = [
        [g.values[w] for g in c.generators] for w in c.space.worlds()
    ]
    rows.append([Fraction(1)] * len(c.generators))
    rhs = [Fraction(0)] * c.space.size + [Fraction(1)]
    return feasible_nonneg(rows, rhs) is not None


def cone_intersect(a: ConeV, b: ConeV) -> ConeV:
    """V-form of the intersection: concatenate the facet systems, convert back."""
    _same_space(a, b)
    ha, hb = dd_convert(a), dd_convert(b)
    h = ConeH(
        a.space,
        ha.inequalities + hb.inequalities,
        ha.equalities + hb.equalities,
    )
    return dd_convert_back(h)


def _block_equalities(x: Partition) -> list[tuple[Fraction, ...]]:
    n = x.space.size
    rows = []
    for b in x.blocks:
        for w, w2 in zip(b, b[1:]):
            row = [Fraction(0)] * n
            row[w] = Fraction(1)
            row[w2] = Fraction(-1)
            rows.append(tuple(row))
    return rows


def intersect_subspace(c: ConeV, m: MeasurableSubspace) -> ConeV:
    """V-form of the cone cut down to the gambles measurable for m's partition."""
    _same_space(c, m)
    eqs = _block_equalities(m.partition)
    if not eqs:
        # every world is its own block, the subspace is everything
        return c
    h = dd_convert(c)
    cut = ConeH(c.space, h.inequalities, h.equalities + tuple(eqs))
    return dd_convert_back(cut)
