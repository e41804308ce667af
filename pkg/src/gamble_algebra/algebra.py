"""The domain-free operations on Phi: combination, extraction, supports.

Also houses the executable law suite: every algebraic law the carrier is
supposed to satisfy is run against a corpus of elements and a question set,
producing one replayable record per checked instance.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import desirability
from .cones import ConeV, Gamble, unit_indicator
from .desirability import (
    PhiElement,
    phi_equal,
    phi_leq,
    phi_meet,
    phi_top,
    phi_unit,
)
from .linalg import dd_cone
from .spaces import (
    Partition,
    PossibilitySpace,
    SpaceMismatch,
    cond_independent,
    join,
    leq,
    top,
)


@dataclass(frozen=True)
class QuestionSet:
    space: PossibilitySpace
    partitions: tuple[Partition, ...]
    contains_top: bool


def question_set(space: PossibilitySpace, partitions: Sequence[Partition]) -> QuestionSet:
    """Validate and build a join-closed set of questions."""
    parts: list[Partition] = []
    for p in partitions:
        if p.space != space:
            raise SpaceMismatch("partition on a different space")
        if p not in parts:
            parts.append(p)
    if not parts:
        raise ValueError("a question set needs at least one partition")
    for a in parts:
        for b in parts:
            if join(a, b) not in parts:
                raise ValueError(
                    f"not join-closed: {a.blocks} v {b.blocks} missing"
                )
    return QuestionSet(space, tuple(parts), top(space) in parts)


def combine(a: PhiElement, b: PhiElement) -> PhiElement:
    """Aggregation: the closure of the union, the join in information order."""
    if a.space != b.space:
        raise SpaceMismatch("elements live on different spaces")
    if a.is_top or b.is_top:
        return phi_top(a.space)
    gens = list(a.cone.generators) + list(b.cone.generators)
    return desirability.closure(a.space, gens)


def _measurable_cut(p: PhiElement, x: Partition):
    """Block-space generators of the element's x-measurable part.

    The cut consists of the measurable gambles f with f = u + sum of
    generator multiples for some nonnegative u, which is the projection of
    the cone {(t, lam) : B t - G lam >= 0 pointwise, lam >= 0} onto the
    block coordinates t.  Running double description in that small space
    sidesteps the ambient dual entirely.
    """
    space = p.space
    unit_vals = {unit_indicator(space, w).values for w in space.worlds()}
    gens = [g for g in p.cone.generators if g.values not in unit_vals]
    b = len(x.blocks)
    k = len(gens)
    world_block = [x.block_index(w) for w in space.worlds()]
    rows = []
    for w in space.worlds():
        row = [Fraction(0)] * (b + k)
        row[world_block[w]] = Fraction(1)
        for j, g in enumerate(gens):
            row[b + j] = -g.values[w]
        rows.append(row)
    for j in range(k):
        row = [Fraction(0)] * (b + k)
        row[b + j] = Fraction(1)
        rows.append(row)
    lin, rays = dd_cone(rows, [], b + k)
    assert not lin, "the cut projection cone is pointed"
    block_vecs = sorted({r[:b] for r in rays if any(r[:b])})
    return block_vecs, world_block


def extract(x: Partition, p: PhiElement) -> PhiElement:
    """Filter the information bearing on question x.

    Cuts the cone down to the x-measurable gambles and closes again; the
    result of extracting from a coherent element is always coherent.  The
    closure's canonical form is assembled from the block-space canonical
    form of the cut: block units correspond to worlds of singleton blocks,
    unit indicators within larger blocks are always extreme, and any other
    extreme ray of the result is the lift of an extreme ray of the
    block-space cone.
    """
    if x.space != p.space:
        raise SpaceMismatch("partition and element live on different spaces")
    if p.is_top:
        return p
    if all(len(b) == 1 for b in x.blocks):
        return p  # the finest question is measurable for everything
    memo = getattr(p, "_extract_memo", None)
    if memo is None:
        memo = {}
        object.__setattr__(p, "_extract_memo", memo)
    if x in memo:
        return memo[x]

    space = p.space
    block_vecs, world_block = _measurable_cut(p, x)
    block_space = PossibilitySpace(len(x.blocks))
    block_gens = [
        Gamble(block_space, tuple(Fraction(v) for v in vec)) for vec in block_vecs
    ]
    blk = desirability._coherent_from_generators(block_space, block_gens)
    assert blk is not None, "extraction of a coherent element stayed coherent"

    block_units = {
        unit_indicator(block_space, i).values for i in block_space.worlds()
    }
    out_gens = []
    for g in blk.cone.generators:
        if g.values in block_units:
            i = next(j for j, v in enumerate(g.values) if v != 0)
            if len(x.blocks[i]) == 1:
                out_gens.append(unit_indicator(space, x.blocks[i][0]))
        else:
            out_gens.append(
                Gamble(space, tuple(g.values[world_block[w]] for w in space.worlds()))
            )
    for w in space.worlds():
        if len(x.blocks[world_block[w]]) > 1:
            out_gens.append(unit_indicator(space, w))
    out_gens.sort(key=lambda g: g.values)
    out = PhiElement(space, ConeV(space, tuple(out_gens)))
    memo[x] = out
    return out


def is_support(x: Partition, p: PhiElement) -> bool:
    """True iff extraction at x leaves the element unchanged."""
    return phi_equal(extract(x, p), p)


@dataclass(frozen=True)
class LawRecord:
    law: str
    witness: dict
    passed: bool

    def to_json(self) -> str:
        return json.dumps(
            {"law": self.law, "witness": self.witness, "pass": self.passed}
        )


@dataclass
class Report:
    records: list[LawRecord]

    @property
    def failures(self) -> list["LawRecord"]:
        return [r for r in self.records if not r.passed]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json_lines(self) -> str:
        return "\n".join(r.to_json() for r in self.records)


def _phi_json(p: PhiElement) -> dict:
    if p.is_top:
        return {"kind": "top"}
    gens = desirability.generators_without_units(p)
    return {
        "kind": "coherent",
        "generators": [[str(v) for v in g.values] for g in gens],
    }


def axiom_suite(
    q: QuestionSet,
    corpus: Sequence[PhiElement],
    *,
    seed: int = 0,
    samples: int | None = None,
) -> Report:
    """Run every law of the algebra over a corpus of elements.

    Checks quantified over corpus tuples are subsampled deterministically
    from the given seed; checks quantified over questions run over all
    members (or all pairs/triples) of the question set.  Failures become
    records carrying the offending operands, never exceptions.
    """
    for p in corpus:
        if p.space != q.space:
            raise SpaceMismatch("corpus element on a different space")
    rng = random.Random(seed)
    n = len(corpus)
    if samples is None:
        samples = max(20, n)
    records: list[LawRecord] = []
    unit = phi_unit(q.space)
    null = phi_top(q.space)
    parts = q.partitions

    def rec(law: str, witness: dict, check, operands: dict | None = None):
        """Evaluate one check; a raised exception is a failing record too."""
        try:
            passed = bool(check())
            error = None
        except Exception as e:  # noqa: BLE001 - failures are records, not errors
            passed = False
            error = f"{type(e).__name__}: {e}"
        if not passed:
            extra = {}
            for name, val in (operands or {}).items():
                extra[name] = _phi_json(val) if isinstance(val, PhiElement) else val
            if error:
                extra["error"] = error
            if extra:
                witness = dict(witness, **extra)
        records.append(LawRecord(law, witness, passed))

    def pick() -> tuple[int, PhiElement]:
        i = rng.randrange(n)
        return i, corpus[i]

    # --- semigroup laws ------------------------------------------------
    for t in range(samples):
        i, a = pick()
        j, b = pick()
        k, c = pick()
        rec(
            "semigroup-associative",
            {"corpus": [i, j, k]},
            lambda a=a, b=b, c=c: phi_equal(
                combine(combine(a, b), c), combine(a, combine(b, c))
            ),
            {"a": a, "b": b, "c": c},
        )
    for t in range(samples):
        i, a = pick()
        j, b = pick()
        rec(
            "semigroup-commutative",
            {"corpus": [i, j]},
            lambda a=a, b=b: phi_equal(combine(a, b), combine(b, a)),
            {"a": a, "b": b},
        )
    for i, a in enumerate(corpus):
        rec(
            "semigroup-idempotent",
            {"corpus": [i]},
            lambda a=a: phi_equal(combine(a, a), a),
            {"a": a},
        )
        rec(
            "unit-neutral",
            {"corpus": [i]},
            lambda a=a: phi_equal(combine(a, unit), a),
            {"a": a},
        )
        rec("null-absorbs", {"corpus": [i]}, lambda a=a: combine(a, null).is_top)

    # --- quasi-separoid on the question set ----------------------------
    def ci(x: Partition, y: Partition, z: Partition) -> bool:
        return cond_independent([x, y], z)

    for ix, x in enumerate(parts):
        for iy, y in enumerate(parts):
            rec("separoid-C1", {"q": [ix, iy]}, lambda x=x, y=y: ci(x, y, y))
            for iz, z in enumerate(parts):
                w = {"q": [ix, iy, iz]}
                holds = ci(x, y, z)
                rec(
                    "separoid-C2",
                    w,
                    lambda x=x, y=y, z=z, h=holds: (not h) or ci(y, x, z),
                )
                rec(
                    "separoid-C4",
                    w,
                    lambda x=x, y=y, z=z, h=holds: (not h) or ci(x, join(y, z), z),
                )
                if holds:
                    for iy2, y2 in enumerate(parts):
                        if leq(y2, y):
                            rec(
                                "separoid-C3",
                                {"q": [ix, iy, iz, iy2]},
                                lambda x=x, y2=y2, z=z: ci(x, y2, z),
                            )

    # --- existential quantifier (the three extraction laws) ------------
    per_q = max(2, samples // max(1, len(parts)))
    for ix, x in enumerate(parts):
        rec("quantifier-null", {"q": [ix]}, lambda x=x: extract(x, null).is_top)
        for t in range(per_q):
            i, d = pick()
            j, d2 = pick()
            rec(
                "quantifier-absorb",
                {"q": [ix], "corpus": [i]},
                lambda x=x, d=d: phi_equal(combine(extract(x, d), d), d),
                {"d": d},
            )
            rec(
                "quantifier-exchange",
                {"q": [ix], "corpus": [i, j]},
                lambda x=x, d=d, d2=d2: phi_equal(
                    extract(x, combine(extract(x, d), d2)),
                    combine(extract(x, d), extract(x, d2)),
                ),
                {"d1": d, "d2": d2},
            )

    # --- extraction under conditional independence ---------------------
    for ix, x in enumerate(parts):
        for iy, y in enumerate(parts):
            for iz, z in enumerate(parts):
                if not ci(join(x, z), join(y, z), z):
                    continue
                w = {"q": [ix, iy, iz]}
                yz = join(y, z)
                for t in range(2):
                    i, d0 = pick()
                    d = extract(x, d0)  # x is a support of d by construction
                    rec(
                        "extraction-axiom",
                        dict(w, corpus=[i]),
                        lambda yz=yz, z=z, d=d: phi_equal(
                            extract(yz, d), extract(yz, extract(z, d))
                        ),
                        {"d": d},
                    )
                    # the two parts of the generalised independence theorem
                    if ci(x, y, z):
                        rec(
                            "cond-indep-transport",
                            dict(w, corpus=[i]),
                            lambda y=y, z=z, d=d: phi_equal(
                                extract(y, d), extract(y, extract(z, d))
                            ),
                            {"d": d},
                        )
                        j, e0 = pick()
                        e = extract(y, e0)
                        rec(
                            "cond-indep-combination",
                            dict(w, corpus=[i, j]),
                            lambda z=z, d=d, e=e: phi_equal(
                                extract(z, combine(d, e)),
                                combine(extract(z, d), extract(z, e)),
                            ),
                            {"d1": d, "d2": e},
                        )

    # --- supports -------------------------------------------------------
    for ix, x in enumerate(parts):
        for t in range(2):
            i, d0 = pick()
            d = extract(x, d0)
            rec(
                "support-of-extraction",
                {"q": [ix], "corpus": [i]},
                lambda x=x, d=d: is_support(x, d),
                {"d": d},
            )
            for iy, y in enumerate(parts):
                if leq(x, y):
                    rec(
                        "support-upward",
                        {"q": [ix, iy], "corpus": [i]},
                        lambda y=y, d=d: is_support(y, d),
                        {"d": d},
                    )
    for i, d in enumerate(corpus):
        if q.contains_top:
            rec(
                "support-exists",
                {"corpus": [i]},
                lambda d=d: is_support(top(q.space), d),
            )
        else:
            rec(
                "support-exists",
                {"corpus": [i]},
                lambda d=d: any(is_support(x, d) for x in parts),
            )

    # --- the eight elementary support facts -----------------------------
    for ix, x in enumerate(parts):
        rec(
            "lemma-unit-fixed",
            {"q": [ix]},
            lambda x=x: phi_equal(extract(x, unit), unit),
        )
        rec("lemma-null-iff", {"q": [ix]}, lambda x=x: extract(x, null).is_top)
        for t in range(2):
            i, d = pick()
            rec(
                "lemma-null-iff",
                {"q": [ix], "corpus": [i]},
                lambda x=x, d=d: extract(x, d).is_top == d.is_top,
                {"d": d},
            )
        for iy, y in enumerate(parts):
            if not leq(x, y):
                continue
            w = {"q": [ix, iy]}
            for t in range(2):
                i, d = pick()
                rec(
                    "lemma-monotone-question",
                    dict(w, corpus=[i]),
                    lambda x=x, y=y, d=d: phi_leq(extract(x, d), extract(y, d)),
                    {"d": d},
                )
                rec(
                    "lemma-coarse-then-fine",
                    dict(w, corpus=[i]),
                    lambda x=x, y=y, d=d: phi_equal(
                        extract(y, extract(x, d)), extract(x, d)
                    ),
                    {"d": d},
                )
                rec(
                    "lemma-fine-then-coarse",
                    dict(w, corpus=[i]),
                    lambda x=x, y=y, d=d: phi_equal(
                        extract(x, extract(y, d)), extract(x, d)
                    ),
                    {"d": d},
                )
        for t in range(2):
            i, a0 = pick()
            j, b0 = pick()
            rec(
                "lemma-common-support",
                {"q": [ix], "corpus": [i, j]},
                lambda x=x, a0=a0, b0=b0: is_support(
                    x, combine(extract(x, a0), extract(x, b0))
                ),
                {"d1": a0, "d2": b0},
            )
    for ix, x in enumerate(parts):
        for iy, y in enumerate(parts):
            for t in range(2):
                i, a0 = pick()
                j, b0 = pick()
                d1, d2 = extract(x, a0), extract(y, b0)
                xy = join(x, y)
                rec(
                    "lemma-join-support",
                    {"q": [ix, iy], "corpus": [i, j]},
                    lambda xy=xy, d1=d1, d2=d2: is_support(xy, combine(d1, d2))
                    and phi_equal(
                        combine(d1, d2),
                        combine(extract(xy, d1), extract(xy, d2)),
                    ),
                    {"d1": d1, "d2": d2},
                )

    # --- extraction commutes with intersection --------------------------
    for t in range(samples // 2):
        size = rng.choice([2, 3])
        idx = [rng.randrange(n) for _ in range(size)]
        fam = [corpus[i] for i in idx]
        ix = rng.randrange(len(parts))
        x = parts[ix]
        rec(
            "extraction-meets",
            {"q": [ix], "corpus": idx},
            lambda x=x, fam=fam: phi_equal(
                extract(x, phi_meet(fam)),
                phi_meet([extract(x, d) for d in fam]),
            ),
        )

    return Report(records)
