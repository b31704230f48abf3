import random
from collections import Counter

import pytest

from stripsurf.dsl import parse_surface, serialize_surface
from stripsurf.errors import InvalidSurfaceError
from stripsurf.leaves import LeafKind, classify_leaves, is_reduced, sigma_set
from stripsurf.model import (
    GluingSign,
    IntervalRef,
    ModelStrip,
    Side,
    make_surface,
)
from surfgen import random_surface


def ref(strip, side, index=0):
    return IntervalRef(strip, Side.from_name(side), index)


def cylinder_surface():
    return make_surface(
        [ModelStrip.make("A", bottom=[(-2, 2)], top=[(-2, 2)])],
        [(ref("A", "top"), ref("A", "bottom"), GluingSign.PRESERVING)],
    )


def c2_pair_surface():
    return make_surface(
        [ModelStrip.make("A", top=[(-1, 1)]), ModelStrip.make("B", bottom=[(-1, 1)])],
        [(ref("A", "top"), ref("B", "bottom"), GluingSign.PRESERVING)],
    )


def special_surface():
    # A.top has two intervals, so the gluing of A.top[0] is special (c3)
    # and A.top[1] stays a boundary leaf.
    return make_surface(
        [
            ModelStrip.make("A", top=[(-1, 1), (3, 5)]),
            ModelStrip.make("B", bottom=[(0, 4)]),
        ],
        [(ref("A", "top", 0), ref("B", "bottom", 0), GluingSign.PRESERVING)],
    )


def kinds(surface):
    return Counter(r.kind for r in classify_leaves(surface))


class TestClassifyLeaves:
    def test_cylinder_presentation(self):
        assert kinds(cylinder_surface()) == {LeafKind.INTERNAL: 1, LeafKind.GLUED_C1: 1}

    def test_two_full_sides_give_c2(self):
        assert kinds(c2_pair_surface()) == {LeafKind.INTERNAL: 2, LeafKind.GLUED_C2: 1}

    def test_non_unique_side_gives_c3_and_boundary(self):
        records = classify_leaves(special_surface())
        by_kind = {r.kind: r for r in records}
        assert kinds(special_surface()) == {
            LeafKind.INTERNAL: 2,
            LeafKind.GLUED_C3: 1,
            LeafKind.BOUNDARY: 1,
        }
        assert by_kind[LeafKind.BOUNDARY].members == ref("A", "top", 1)
        assert by_kind[LeafKind.GLUED_C3].members == (ref("A", "top", 0), ref("B", "bottom", 0))

    def test_invalid_surface_rejected(self):
        bad = make_surface(
            [ModelStrip.make("A", top=[(0, 1)])],
            [(ref("A", "top"), ref("A", "top"), GluingSign.PRESERVING)],
        )
        with pytest.raises(InvalidSurfaceError):
            classify_leaves(bad)

    def test_partition_counts(self):
        rng = random.Random(17)
        for _ in range(50):
            surface = random_surface(rng, max_strips=8)
            records = classify_leaves(surface)
            glued = surface.glued_refs()
            n_boundary = sum(1 for r in surface.interval_refs() if r not in glued)
            assert len(records) == len(surface.strips) + n_boundary + len(surface.gluings)
            covered = []
            for r in records:
                if r.kind is LeafKind.BOUNDARY:
                    covered.append(r.members)
                elif r.kind is not LeafKind.INTERNAL:
                    covered.extend(r.members)
            assert sorted(covered, key=lambda x: x.sort_key) == list(surface.interval_refs())
            assert len(set(rec.leaf_id for rec in records)) == len(records)

    def test_c1_members_lie_on_opposite_sides(self):
        rng = random.Random(19)
        for _ in range(80):
            surface = random_surface(rng, max_strips=6)
            for r in classify_leaves(surface):
                if r.kind is LeafKind.GLUED_C1:
                    src, dst = r.members
                    assert src.strip_id == dst.strip_id
                    assert src.side is not dst.side


class TestSigmaSet:
    def test_cylinder_sigma_empty(self):
        assert sigma_set(cylinder_surface()).leaf_ids == frozenset()

    def test_special_surface_sigma(self):
        surface = special_surface()
        records = {r.kind: r for r in classify_leaves(surface)}
        expected = {records[LeafKind.GLUED_C3].leaf_id, records[LeafKind.BOUNDARY].leaf_id}
        assert sigma_set(surface).leaf_ids == frozenset(expected)

    def test_no_intervals_sigma_empty(self):
        surface = make_surface([ModelStrip.make("A")])
        assert sigma_set(surface).leaf_ids == frozenset()


class TestIsReduced:
    def test_lone_strip_reduced(self):
        assert is_reduced(make_surface([ModelStrip.make("A", top=[(0, 1)])]))

    def test_cylinder_not_reduced(self):
        assert not is_reduced(cylinder_surface())

    def test_c3_surface_reduced(self):
        assert is_reduced(special_surface())


def test_leaf_ids_stable_under_round_trip():
    rng = random.Random(29)
    for _ in range(25):
        surface = parse_surface(serialize_surface(random_surface(rng, max_strips=6)))
        again = parse_surface(serialize_surface(surface))
        ids = lambda s: sorted(r.leaf_id for r in classify_leaves(s))
        assert ids(surface) == ids(again)
