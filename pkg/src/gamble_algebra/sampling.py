"""Seeded random generators for spaces, partitions, gambles and elements.

Every suite and the command line draw their randomness through here with an
explicit random.Random, so runs are reproducible from a seed alone.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .algebra import QuestionSet, extract
from .cones import Gamble, gamble
from .desirability import PhiElement, natural_extension
from .labeled import LabeledPiece
from .spaces import Partition, PossibilitySpace, partition


def rand_fraction(rng: random.Random, max_num: int = 4, max_den: int = 8) -> Fraction:
    return Fraction(rng.randint(-max_num, max_num), rng.randint(1, max_den))


def rand_gamble(
    rng: random.Random,
    space: PossibilitySpace,
    max_num: int = 4,
    max_den: int = 8,
) -> Gamble:
    return gamble(space, [rand_fraction(rng, max_num, max_den) for _ in space.worlds()])


def rand_nonzero_gamble(rng: random.Random, space: PossibilitySpace, **kw) -> Gamble:
    while True:
        g = rand_gamble(rng, space, **kw)
        if not g.is_zero():
            return g


def rand_partition(rng: random.Random, space: PossibilitySpace) -> Partition:
    nblocks = rng.randint(1, space.size)
    labels = [rng.randrange(nblocks) for _ in space.worlds()]
    groups: dict[int, list[int]] = {}
    for w, lab in zip(space.worlds(), labels):
        groups.setdefault(lab, []).append(w)
    return partition(space, groups.values())


def rand_coherent(
    rng: random.Random,
    space: PossibilitySpace,
    max_gens: int = 4,
    max_num: int = 4,
    max_den: int = 8,
) -> PhiElement:
    """A random coherent element: retry until the extension avoids the origin."""
    while True:
        k = rng.randint(0, max_gens)
        gens = [
            rand_nonzero_gamble(rng, space, max_num=max_num, max_den=max_den)
            for _ in range(k)
        ]
        built = natural_extension(space, gens)
        if not built.is_top:
            return built


def rand_member(rng: random.Random, p: PhiElement, max_num: int = 3) -> Gamble:
    """A random member of a coherent element: a nonneg combination of generators."""
    if p.is_top:
        raise ValueError("Top has no generator form")
    gens = p.cone.generators
    while True:
        coeffs = [Fraction(rng.randint(0, max_num), rng.randint(1, 4)) for _ in gens]
        if not any(coeffs):
            continue
        out = gamble(p.space, [0] * p.space.size)
        for c, g in zip(coeffs, gens):
            if c:
                out = out + c * g
        if not out.is_zero():
            return out


def rand_measurable_gamble(
    rng: random.Random, x: Partition, max_num: int = 4, max_den: int = 8
) -> Gamble:
    vals = [Fraction(0)] * x.space.size
    for b in x.blocks:
        v = rand_fraction(rng, max_num, max_den)
        for w in b:
            vals[w] = v
    return Gamble(x.space, tuple(vals))


def rand_supported_element(
    rng: random.Random, x: Partition, max_gens: int = 3
) -> PhiElement:
    """A random coherent element with support x: close x-measurable gambles."""
    space = x.space
    while True:
        k = rng.randint(0, max_gens)
        gens = []
        for _ in range(k):
            g = rand_measurable_gamble(rng, x)
            if not g.is_zero():
                gens.append(g)
        built = natural_extension(space, gens)
        if not built.is_top:
            return built


def rand_supported_piece(rng: random.Random, q: QuestionSet) -> LabeledPiece:
    x = q.partitions[rng.randrange(len(q.partitions))]
    return LabeledPiece(rand_supported_element(rng, x), x)


def rand_pmf(rng: random.Random, space: PossibilitySpace) -> tuple[Fraction, ...]:
    weights = [Fraction(rng.randint(0, 6)) for _ in space.worlds()]
    if not any(weights):
        weights[rng.randrange(space.size)] = Fraction(1)
    total = sum(weights)
    return tuple(w / total for w in weights)
