import random
from fractions import Fraction

import pytest

from gamble_algebra import (
    ConeH,
    ConeV,
    PossibilitySpace,
    SpaceMismatch,
    bottom,
    cone_intersect,
    cone_member,
    dd_convert,
    dd_convert_back,
    gamble,
    intersect_subspace,
    is_measurable,
    leq,
    measurable_subspace,
    meet,
    partition,
    top,
    unit_indicator,
    zero_nontrivial,
)
from gamble_algebra.cones import member_h
from gamble_algebra.sampling import rand_gamble, rand_partition

from oracles import brute_cone_member, brute_zero_nontrivial

SP2 = PossibilitySpace(2)


def cone(space, *gens):
    return ConeV(space, tuple(gamble(space, g) for g in gens))


WEDGE = cone(SP2, [1, -1], [1, 0], [0, 1])


def ineq_set(h):
    return {tuple(row) for row in h.inequalities}


class TestConeConstruction:
    def test_zero_generator_rejected(self):
        with pytest.raises(ValueError):
            cone(SP2, [0, 0])

    def test_duplicates_removed(self):
        c = cone(SP2, [1, 0], [1, 0], [0, 1])
        assert len(c.generators) == 2


class TestDoubleDescription:
    def test_orthant_round(self):
        h = dd_convert(cone(SP2, [1, 0], [0, 1]))
        assert ineq_set(h) == {(1, 0), (0, 1)}
        assert h.equalities == ()

    def test_wedge_facets(self):
        h = dd_convert(WEDGE)
        assert ineq_set(h) == {(1, 0), (1, 1)}

    def test_zero_cone(self):
        h = dd_convert(ConeV(SP2, ()))
        assert h.inequalities == ()
        assert {tuple(e) for e in h.equalities} == {(1, 0), (0, 1)}
        back = dd_convert_back(h)
        assert back.generators == ()

    def test_halfplane_has_lineality_pair(self):
        h = ConeH(SP2, ((Fraction(1), Fraction(0)),), ())
        back = dd_convert_back(h)
        vals = {tuple(int(v) for v in g.values) for g in back.generators}
        assert (0, 1) in vals and (0, -1) in vals and (1, 0) in vals

    def test_round_trip_on_random_cones(self):
        rng = random.Random(9)
        for trial in range(200):
            size = rng.randint(1, 5)
            space = PossibilitySpace(size)
            gens = []
            for _ in range(rng.randint(0, 8)):
                g = rand_gamble(rng, space)
                if not g.is_zero():
                    gens.append(g)
            c = ConeV(space, tuple(gens))
            h = dd_convert(c)
            back = dd_convert_back(h)
            # original generators satisfy the produced constraints
            for g in c.generators:
                assert member_h(g, h)
            # the two generator sets describe the same point set
            for g in back.generators:
                assert cone_member(g, c) or not c.generators
            for g in c.generators:
                assert cone_member(g, back)
            # random nonneg combinations are members both ways
            for _ in range(3):
                if not c.generators:
                    break
                coeffs = [Fraction(rng.randint(0, 3), rng.randint(1, 3)) for _ in c.generators]
                mix = gamble(space, [0] * size)
                for cf, g in zip(coeffs, c.generators):
                    mix = mix + cf * g
                assert member_h(mix, h)
                assert cone_member(mix, back)


class TestMembership:
    def test_wedge_member(self):
        assert cone_member(gamble(SP2, [2, -1]), WEDGE)

    def test_wedge_nonmember(self):
        assert not cone_member(gamble(SP2, [-1, -1]), WEDGE)

    def test_generators_belong(self):
        for g in WEDGE.generators:
            assert cone_member(g, WEDGE)

    def test_empty_cone_holds_only_zero(self):
        empty = ConeV(SP2, ())
        assert cone_member(gamble(SP2, [0, 0]), empty)
        assert not cone_member(gamble(SP2, [1, 0]), empty)

    def test_mismatched_space(self):
        with pytest.raises(SpaceMismatch):
            cone_member(gamble(PossibilitySpace(3), [1, 0, 0]), WEDGE)


class TestZeroNontrivial:
    def test_opposite_pair(self):
        assert zero_nontrivial(cone(SP2, [1, -1], [-1, 1]))

    def test_wedge_is_pointed(self):
        assert not zero_nontrivial(WEDGE)

    def test_empty(self):
        assert not zero_nontrivial(ConeV(SP2, ()))


class TestIntersection:
    def test_orthant_self(self):
        orth = cone(SP2, [1, 0], [0, 1])
        got = cone_intersect(orth, orth)
        assert {tuple(int(v) for v in g.values) for g in got.generators} == {
            (1, 0),
            (0, 1),
        }

    def test_two_wedges_make_the_orthant(self):
        other = cone(SP2, [-1, 1], [1, 0], [0, 1])
        got = cone_intersect(WEDGE, other)
        assert {tuple(int(v) for v in g.values) for g in got.generators} == {
            (1, 0),
            (0, 1),
        }

    def test_zero_cone_absorbs(self):
        got = cone_intersect(WEDGE, ConeV(SP2, ()))
        assert got.generators == ()

    def test_intersection_members_in_both(self):
        rng = random.Random(17)
        for _ in range(40):
            size = rng.randint(2, 4)
            space = PossibilitySpace(size)
            a = ConeV(
                space,
                tuple(
                    g
                    for g in (rand_gamble(rng, space) for _ in range(rng.randint(1, 5)))
                    if not g.is_zero()
                ),
            )
            b = ConeV(
                space,
                tuple(
                    g
                    for g in (rand_gamble(rng, space) for _ in range(rng.randint(1, 5)))
                    if not g.is_zero()
                ),
            )
            inter = cone_intersect(a, b)
            for g in inter.generators:
                assert cone_member(g, a)
                assert cone_member(g, b)


class TestMeasurableSubspace:
    def test_wedge_cut_to_constants(self):
        cut = intersect_subspace(WEDGE, measurable_subspace(bottom(SP2)))
        assert [tuple(int(v) for v in g.values) for g in cut.generators] == [(1, 1)]

    def test_top_subspace_is_everything(self):
        orth = cone(SP2, [1, 0], [0, 1])
        assert intersect_subspace(orth, measurable_subspace(top(SP2))) is orth

    def test_zero_cone_stays_zero(self):
        cut = intersect_subspace(
            ConeV(SP2, ()), measurable_subspace(bottom(SP2))
        )
        assert cut.generators == ()

    def test_cut_members_in_cone_and_subspace(self):
        rng = random.Random(31)
        for _ in range(30):
            size = rng.randint(2, 5)
            space = PossibilitySpace(size)
            gens = [
                g
                for g in (rand_gamble(rng, space) for _ in range(rng.randint(1, 6)))
                if not g.is_zero()
            ]
            c = ConeV(space, tuple(gens))
            x = rand_partition(rng, space)
            cut = intersect_subspace(c, measurable_subspace(x))
            for g in cut.generators:
                assert cone_member(g, c)
                assert is_measurable(g, x)
            # the cut is the largest such cone: measurable members stay inside
            for g in c.generators:
                if is_measurable(g, x):
                    assert cone_member(g, cut)

    def test_is_measurable_examples(self):
        sp4 = PossibilitySpace(4)
        x = partition(sp4, [[0, 1], [2, 3]])
        assert is_measurable(gamble(sp4, [1, 1, -1, -1]), x)
        assert not is_measurable(gamble(sp4, [1, 0, 0, 0]), x)
        assert is_measurable(gamble(sp4, [1, 0, 0, 0]), top(sp4))

    def test_subspace_inclusion_matches_question_order(self):
        rng = random.Random(13)
        space = PossibilitySpace(5)
        for _ in range(60):
            x, y = rand_partition(rng, space), rand_partition(rng, space)
            included = all(
                is_measurable(b, y) for b in measurable_subspace(x).basis
            )
            assert included == leq(x, y)

    def test_subspace_intersection_is_the_meet_subspace(self):
        # measurable for both questions means measurable for their meet,
        # commuting or not; the 3-world pair shows strictness lives at the
        # relation level, not here
        rng = random.Random(37)
        space = PossibilitySpace(5)
        for _ in range(40):
            x, y = rand_partition(rng, space), rand_partition(rng, space)
            m = meet(x, y)
            for _ in range(5):
                g = rand_gamble(rng, space)
                both = is_measurable(g, x) and is_measurable(g, y)
                assert both == is_measurable(g, m)


class TestOracleAgreement:
    def test_member_agrees_with_brute_force(self):
        rng = random.Random(5)
        for _ in range(150):
            size = rng.randint(1, 3)
            space = PossibilitySpace(size)
            gens = [
                g
                for g in (rand_gamble(rng, space, max_num=2, max_den=2) for _ in range(rng.randint(1, 3)))
                if not g.is_zero()
            ]
            if not gens:
                continue
            c = ConeV(space, tuple(gens))
            f = rand_gamble(rng, space, max_num=2, max_den=2)
            expect = brute_cone_member(f.values, [g.values for g in gens])
            assert cone_member(f, c) == expect

    def test_zero_agrees_with_brute_force(self):
        rng = random.Random(6)
        for _ in range(150):
            size = rng.randint(1, 3)
            space = PossibilitySpace(size)
            gens = [
                g
                for g in (rand_gamble(rng, space, max_num=2, max_den=2) for _ in range(rng.randint(1, 3)))
                if not g.is_zero()
            ]
            if not gens:
                continue
            c = ConeV(space, tuple(gens))
            expect = brute_zero_nontrivial([g.values for g in gens])
            assert zero_nontrivial(c) == expect
