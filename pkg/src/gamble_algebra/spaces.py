"""Finite possibility spaces and partitions-as-questions.

Worlds are dense integer indices 0..size-1.  Partitions store canonically
ordered blocks so structural equality coincides with mathematical equality,
and every predicate below is decidable by plain enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence


class SpaceMismatch(ValueError):
    """Raised when operands refer to different possibility spaces."""


@dataclass(frozen=True)
class PossibilitySpace:
    size: int

    def __post_init__(self):
        if self.size < 1:
            raise ValueError("a possibility space needs at least one world")

    def worlds(self) -> range:
        return range(self.size)


@dataclass(frozen=True)
class Partition:
    space: PossibilitySpace
    blocks: tuple[tuple[int, ...], ...]

    def block_of(self, world: int) -> tuple[int, ...]:
        for b in self.blocks:
            if world in b:
                return b
        raise ValueError(f"world {world} not covered")

    def block_index(self, world: int) -> int:
        for i, b in enumerate(self.blocks):
            if world in b:
                return i
        raise ValueError(f"world {world} not covered")


def partition(space: PossibilitySpace, blocks: Iterable[Iterable[int]]) -> Partition:
    """Build a partition, canonicalising and validating the blocks.

    Blocks are sorted internally and ordered by smallest element; they must
    be disjoint, nonempty and cover the whole space.
    """
    canon = tuple(sorted(tuple(sorted(set(b))) for b in blocks))
    seen: set[int] = set()
    for b in canon:
        if not b:
            raise ValueError("empty block")
        for w in b:
            if w < 0 or w >= space.size:
                raise ValueError(f"world {w} outside the space")
            if w in seen:
                raise ValueError(f"world {w} in two blocks")
            seen.add(w)
    if len(seen) != space.size:
        raise ValueError("blocks do not cover the space")
    return Partition(space, canon)


def bottom(space: PossibilitySpace) -> Partition:
    """The coarsest question: one block with every world."""
    return Partition(space, (tuple(space.worlds()),))


def top(space: PossibilitySpace) -> Partition:
    """The finest question: every world its own block."""
    return Partition(space, tuple((w,) for w in space.worlds()))


def _require_same_space(*parts: Partition) -> PossibilitySpace:
    sp = parts[0].space
    for p in parts[1:]:
        if p.space != sp:
            raise SpaceMismatch("partitions answer questions about different spaces")
    return sp


def _labels(p: Partition) -> list[int]:
    lab = [0] * p.space.size
    for i, b in enumerate(p.blocks):
        for w in b:
            lab[w] = i
    return lab


def leq(x: Partition, y: Partition) -> bool:
    """True iff y is finer than x: every block of y sits inside a block of x."""
    _require_same_space(x, y)
    lx = _labels(x)
    for b in y.blocks:
        first = lx[b[0]]
        if any(lx[w] != first for w in b[1:]):
            return False
    return True


def join(x: Partition, y: Partition) -> Partition:
    """Least common refinement: the nonempty pairwise block intersections."""
    _require_same_space(x, y)
    lx, ly = _labels(x), _labels(y)
    groups: dict[tuple[int, int], list[int]] = {}
    for w in x.space.worlds():
        groups.setdefault((lx[w], ly[w]), []).append(w)
    return partition(x.space, groups.values())


def meet(x: Partition, y: Partition) -> Partition:
    """Finest common coarsening: connected components of the two relations.

    Union-find closure over the links supplied by the blocks of both
    partitions; this is the general partition-lattice meet.
    """
    sp = _require_same_space(x, y)
    parent = list(sp.worlds())

    def find(w: int) -> int:
        while parent[w] != w:
            parent[w] = parent[parent[w]]
            w = parent[w]
        return w

    def union(a: int, b: int) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    for p in (x, y):
        for b in p.blocks:
            for w in b[1:]:
                union(b[0], w)
    groups: dict[int, list[int]] = {}
    for w in sp.worlds():
        groups.setdefault(find(w), []).append(w)
    return partition(sp, groups.values())


@dataclass(frozen=True)
class Relation:
    """A binary relation on worlds, as a dense boolean matrix."""

    space: PossibilitySpace
    matrix: tuple[tuple[bool, ...], ...]

    def holds(self, a: int, b: int) -> bool:
        return self.matrix[a][b]

    def is_symmetric(self) -> bool:
        n = self.space.size
        return all(self.matrix[a][b] == self.matrix[b][a] for a in range(n) for b in range(n))

    def classes(self) -> tuple[tuple[int, ...], ...]:
        """Equivalence classes, assuming the relation is one."""
        seen: set[int] = set()
        out = []
        for w in self.space.worlds():
            if w in seen:
                continue
            cls = tuple(v for v in self.space.worlds() if self.matrix[w][v])
            seen.update(cls)
            out.append(cls)
        return tuple(sorted(out))


def relation_of(p: Partition) -> Relation:
    """The equivalence relation whose classes are the partition's blocks."""
    lab = _labels(p)
    n = p.space.size
    rows = tuple(
        tuple(lab[a] == lab[b] for b in range(n)) for a in range(n)
    )
    return Relation(p.space, rows)


def star_product(x: Partition, y: Partition) -> Relation:
    """The composed relation: (w, w') such that w ~x w'' ~y w' for some w''."""
    sp = _require_same_space(x, y)
    lx, ly = _labels(x), _labels(y)
    n = sp.size
    rows = []
    for a in range(n):
        row = [False] * n
        for mid in range(n):
            if lx[a] == lx[mid]:
                for b in range(n):
                    if ly[mid] == ly[b]:
                        row[b] = True
        rows.append(tuple(row))
    return Relation(sp, tuple(rows))


def commutes(x: Partition, y: Partition) -> bool:
    """True iff the two star products agree, i.e. the product is an equivalence."""
    _require_same_space(x, y)
    return star_product(x, y).matrix == star_product(y, x).matrix


def _block_masks(p: Partition) -> list[int]:
    out = []
    for b in p.blocks:
        m = 0
        for w in b:
            m |= 1 << w
        out.append(m)
    return out


def independent(ps: Sequence[Partition]) -> bool:
    """True iff every tuple of blocks, one per partition, intersects."""
    if len(ps) < 2:
        raise ValueError("independence needs at least two partitions")
    _require_same_space(*ps)
    masks = [_block_masks(p) for p in ps]
    for combo in product(*masks):
        inter = -1
        for m in combo:
            inter &= m
        if inter == 0:
            return False
    return True


def cond_independent(ps: Sequence[Partition], given: Partition) -> bool:
    """Conditional logical independence of ps given a partition.

    Uses the block-intersection characterisation: inside every block B of
    `given`, any choice of blocks that each meet B must have a common point
    in B.
    """
    if not ps:
        raise ValueError("need at least one partition")
    _require_same_space(*ps, given)
    masks = [_block_masks(p) for p in ps]
    for bmask in _block_masks(given):
        compat = [[m for m in pm if m & bmask] for pm in masks]
        for combo in product(*compat):
            inter = bmask
            for m in combo:
                inter &= m
            if inter == 0:
                return False
    return True
