"""Maximal coherent sets as lexicographic probability chains.

A chain of probability mass functions with jointly trivial kernel decides
membership by the lexicographic sign of the expectation vector, which gives
a coherent set that is maximal: of every nonzero gamble, exactly one of f
and -f is a member.  The family built here is sufficient for all the
separation and local-atom constructions; no completeness claim is made.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import desirability
from .cones import Gamble, unit_indicator
from .desirability import PhiElement, phi_member
from .linalg import IVec, dd_cone, rank_of, to_primitive
from .spaces import Partition, PossibilitySpace, SpaceMismatch


class NotMaximal(ValueError):
    """The chain's common kernel is nontrivial, so membership is not total."""


@dataclass(frozen=True)
class MaximalSet:
    space: PossibilitySpace
    chain: tuple[tuple[Fraction, ...], ...]


def _check_pmf(space: PossibilitySpace, row: Sequence[Fraction]) -> tuple[Fraction, ...]:
    vals = tuple(Fraction(v) for v in row)
    if len(vals) != space.size:
        raise ValueError("mass function length does not match the space")
    if any(v < 0 for v in vals):
        raise ValueError("negative probability mass")
    if sum(vals) != 1:
        raise ValueError("masses do not sum to one")
    return vals


def lex_new(space: PossibilitySpace, chain: Sequence[Sequence]) -> MaximalSet:
    """Build a maximal set from a chain of mass functions.

    Requires the expectation functionals to have full rank: otherwise some
    nonzero gamble has every expectation zero and neither it nor its
    negation would be a member.
    """
    rows = tuple(_check_pmf(space, r) for r in chain)
    if rank_of([to_primitive(r) for r in rows]) != space.size:
        raise NotMaximal("the chain's expectation functionals are rank deficient")
    return MaximalSet(space, rows)


def expectations(m: MaximalSet, f: Gamble) -> tuple[Fraction, ...]:
    if f.space != m.space:
        raise SpaceMismatch("gamble and maximal set live on different spaces")
    return tuple(
        sum(p * v for p, v in zip(row, f.values)) for row in m.chain
    )


def _lex_positive(vec: Sequence[Fraction]) -> bool:
    for v in vec:
        if v != 0:
            return v > 0
    return False


def lex_member(f: Gamble, m: MaximalSet) -> bool:
    """f is desired iff it is nonzero and its expectation vector is lex-positive."""
    if f.space != m.space:
        raise SpaceMismatch("gamble and maximal set live on different spaces")
    if f.is_zero():
        return False
    return _lex_positive(expectations(m, f))


def dominates(m: MaximalSet, p: PhiElement) -> bool:
    """True iff the coherent element is included in the maximal set."""
    if p.is_top:
        raise ValueError("the contradictory element is below no atom")
    if p.space != m.space:
        raise SpaceMismatch("element and maximal set live on different spaces")
    return all(lex_member(g, m) for g in p.cone.generators)


def separating_superset(p: PhiElement, f: Gamble) -> PhiElement:
    """A coherent superset of p that still excludes f: close over -f.

    Coherence and the exclusion both reduce to f not being in p; they are
    asserted at runtime in debug mode.
    """
    if p.is_top:
        raise ValueError("Top cannot be separated from anything")
    if f.is_zero():
        raise ValueError("the zero gamble is excluded from every coherent set")
    if phi_member(f, p):
        raise ValueError("the gamble is already a member")
    out = desirability.closure(p.space, list(p.cone.generators) + [-f])
    assert not out.is_top, "adjoining -f cannot create a contradiction here"
    assert not phi_member(f, out), "f stays excluded after adjoining -f"
    return out


def _ray_candidates(gens: Sequence[Gamble], space: PossibilitySpace) -> list[IVec]:
    """Extreme rays of {l : l.g >= 0 for all g}, all nonnegative vectors."""
    rows = [to_primitive(g.values) for g in gens]
    rows += [to_primitive(unit_indicator(space, w).values) for w in space.worlds()]
    lin, rays = dd_cone(rows, [], space.size)
    assert not lin, "the dual of a full-dimensional cone is pointed"
    return rays


def _normalize_pmf(ray: IVec) -> tuple[Fraction, ...]:
    s = sum(ray)
    return tuple(Fraction(v, s) for v in ray)


def extend_to_maximal(p: PhiElement, f: Gamble) -> MaximalSet:
    """A maximal set above p that excludes f, built functional by functional.

    The first mass function is a separating functional (nonnegative on the
    cone, negative on f); it exists exactly because f lies outside the
    closed cone.  Later stages work inside the common kernel of what has
    been chosen so far: they stay nonnegative on the generators still
    unseen, so every generator's first nonzero expectation is positive, and
    each stage raises the rank by one until the kernel is trivial.  Ties
    are broken by taking the lexicographically smallest extreme ray of each
    stage's feasible cone, so the construction is deterministic.
    """
    if p.is_top:
        raise ValueError("Top cannot be extended")
    if f.is_zero():
        raise ValueError("the zero gamble needs no separation")
    if phi_member(f, p):
        raise ValueError("the gamble is already a member")
    space = p.space
    n = space.size
    gens = list(p.cone.generators)

    rays = _ray_candidates(gens, space)
    sep = [r for r in rays if sum(Fraction(a) * v for a, v in zip(r, f.values)) < 0]
    if not sep:
        raise ValueError("no separating functional: the gamble is a member")
    chain: list[tuple[Fraction, ...]] = [_normalize_pmf(min(sep))]
    chosen_rows: list[IVec] = [to_primitive(chain[0])]

    while rank_of(chosen_rows) < n:
        remaining = [
            g
            for g in gens
            if all(
                sum(q * v for q, v in zip(row, g.values)) == 0 for row in chain
            )
        ]
        rays = _ray_candidates(remaining, space)
        fresh = [
            r for r in rays if rank_of(chosen_rows + [r]) > rank_of(chosen_rows)
        ]
        assert fresh, "a full-dimensional cone always leaves the current span"
        pick = min(fresh)
        chain.append(_normalize_pmf(pick))
        chosen_rows.append(pick)

    out = MaximalSet(space, tuple(chain))
    assert dominates(out, p)
    assert not lex_member(f, out)
    return out


def marginal_chain(m: MaximalSet, x: Partition) -> tuple[tuple[Fraction, ...], ...]:
    """Each chain row summed per block of x: mass functions on the blocks."""
    return tuple(
        tuple(sum(row[w] for w in b) for b in x.blocks) for row in m.chain
    )


def blockwise_min(g: Gamble, x: Partition) -> Gamble:
    """The largest x-measurable gamble below g: per block, the minimum."""
    if g.space != x.space:
        raise SpaceMismatch("gamble and partition live on different spaces")
    vals = list(g.values)
    for b in x.blocks:
        lo = min(vals[w] for w in b)
        for w in b:
            vals[w] = lo
    return Gamble(g.space, tuple(vals))


def local_atom_member(g: Gamble, x: Partition, m: MaximalSet) -> bool:
    """Membership of g in the extraction of the maximal set at question x.

    The extracted set consists of sums h + p with h a measurable member and
    p nonnegative.  The blockwise minimum of g dominates every measurable
    gamble below g, so g decomposes that way iff the blockwise minimum is
    itself a member; adding the componentwise-nonnegative expectations of
    the leftover nonnegative part cannot break lexicographic positivity.
    Membership of the measurable minimum reduces to lexicographic
    positivity under the chain's per-block marginals.
    """
    if g.space != m.space or g.space != x.space:
        raise SpaceMismatch("operands live on different spaces")
    if not g.is_zero() and all(v >= 0 for v in g.values):
        return True  # always-desirable gambles stay members
    star = blockwise_min(g, x)
    if star.is_zero():
        return False
    return _lex_positive(expectations(m, star))
