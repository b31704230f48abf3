import random

import pytest

from stripsurf.errors import (
    InvalidShadowError,
    NotConnectedError,
    NotInIdentityComponentError,
    NotReducedError,
)
from stripsurf.homeo import (
    FHomeoShadow,
    IntervalMapEntry,
    StripSample,
    StripSymmetry,
    check_identity_component,
    compose_shadows,
    identity_shadow,
    invert_shadow,
    isotopy_witness,
    shadow_from_obj,
    shadow_to_obj,
    validate_shadow,
)
from stripsurf.model import (
    GluingSign,
    IntervalRef,
    ModelStrip,
    Side,
    make_surface,
)
from stripsurf.numeric import PLMonotoneMap
from stripsurf.reduction import Verdict, reduce
from shadowgen import (
    direct_abc_filter,
    enumerate_valid_shadows,
    enumerate_valid_shadows_naive,
    shadow_key,
)
from surfgen import random_surface


def ref(strip, side, index=0):
    return IntervalRef(strip, Side.from_name(side), index)


P, R = GluingSign.PRESERVING, GluingSign.REVERSING


def boundary_only_surface():
    return make_surface([ModelStrip.make("A", bottom=[(4, 5)], top=[(0, 1)])])


def swap_symmetric_surface():
    """Two strips joined along their tops by two special leaves; swapping
    the strips maps each glued pair onto itself."""
    return make_surface(
        [
            ModelStrip.make("A", top=[(0, 1), (2, 3)]),
            ModelStrip.make("B", top=[(0, 1), (2, 3)]),
        ],
        [
            (ref("A", "top", 0), ref("B", "top", 0), P),
            (ref("A", "top", 1), ref("B", "top", 1), P),
        ],
    )


def vertical_symmetric_surface():
    return make_surface(
        [ModelStrip.make("A", bottom=[(0, 1), (2, 3)], top=[(0, 1), (2, 3)])],
        [
            (ref("A", "top", 0), ref("A", "bottom", 0), P),
            (ref("A", "top", 1), ref("A", "bottom", 1), P),
        ],
    )


def boundary_and_special_surface():
    return make_surface(
        [ModelStrip.make("A", bottom=[(0, 4)], top=[(0, 1), (2, 3)])],
        [(ref("A", "top", 0), ref("A", "bottom", 0), P)],
    )


def same_side_self_gluing_surface(sign=P):
    return make_surface(
        [ModelStrip.make("A", top=[(0, 1), (2, 3)])],
        [(ref("A", "top", 0), ref("A", "top", 1), sign)],
    )


class TestValidateShadow:
    def test_identity_shadow_valid(self):
        rng = random.Random(5)
        for _ in range(25):
            surface = random_surface(rng, max_strips=5)
            assert validate_shadow(surface, identity_shadow(surface)).ok

    def test_boundary_to_glued_rejected(self):
        surface = boundary_and_special_surface()
        shadow = FHomeoShadow(
            (StripSymmetry("A", "A"),),
            (
                IntervalMapEntry(ref("A", "top", 0), ref("A", "top", 1)),
                IntervalMapEntry(ref("A", "top", 1), ref("A", "top", 0)),
                IntervalMapEntry(ref("A", "bottom", 0), ref("A", "bottom", 0)),
            ),
        )
        codes = {i.code for i in validate_shadow(surface, shadow).issues}
        assert "LEAFKIND_MISMATCH" in codes

    def test_side_parity_against_y_flip(self):
        surface = boundary_only_surface()
        shadow = FHomeoShadow(
            (StripSymmetry("A", "A", y_flip=True),),
            (
                IntervalMapEntry(ref("A", "top", 0), ref("A", "top", 0)),
                IntervalMapEntry(ref("A", "bottom", 0), ref("A", "bottom", 0)),
            ),
        )
        codes = {i.code for i in validate_shadow(surface, shadow).issues}
        assert codes == {"SIDE_PARITY"}

    def test_y_flip_exchanging_sides_valid(self):
        surface = boundary_only_surface()
        shadow = FHomeoShadow(
            (StripSymmetry("A", "A", y_flip=True),),
            (
                IntervalMapEntry(ref("A", "top", 0), ref("A", "bottom", 0)),
                IntervalMapEntry(ref("A", "bottom", 0), ref("A", "top", 0)),
            ),
        )
        assert validate_shadow(surface, shadow).ok

    def test_equivariance_sign_checked(self):
        surface = vertical_symmetric_surface()
        entries = []
        for side in ("top", "bottom"):
            for i in (0, 1):
                orient = R if (side, i) == ("top", 0) else P
                entries.append(IntervalMapEntry(ref("A", side, i), ref("A", side, i), orient))
        shadow = FHomeoShadow((StripSymmetry("A", "A"),), tuple(entries))
        codes = {i.code for i in validate_shadow(surface, shadow).issues}
        assert codes == {"EQUIVARIANCE"}

    def test_non_permutation_rejected(self):
        surface = swap_symmetric_surface()
        shadow = FHomeoShadow(
            (StripSymmetry("A", "A"), StripSymmetry("B", "A")),
            identity_shadow(surface).interval_map,
        )
        codes = {i.code for i in validate_shadow(surface, shadow).issues}
        assert "NOT_PERMUTATION" in codes

    def test_json_round_trip(self):
        surface = swap_symmetric_surface()
        shadow = identity_shadow(surface)
        assert shadow_from_obj(shadow_to_obj(shadow)) == shadow
        with pytest.raises(InvalidShadowError):
            shadow_from_obj({"strip_map": [{"src": "A"}], "interval_map": []})


def swap_shadow(surface):
    """A <-> B with matching interval entries, all orientation-preserving."""
    entries = []
    for src_strip, dst_strip in (("A", "B"), ("B", "A")):
        for i in (0, 1):
            entries.append(
                IntervalMapEntry(ref(src_strip, "top", i), ref(dst_strip, "top", i), P)
            )
    return FHomeoShadow(
        (StripSymmetry("A", "B"), StripSymmetry("B", "A")),
        tuple(entries),
    )


def vertical_flip_shadow(surface):
    entries = []
    for i in (0, 1):
        entries.append(IntervalMapEntry(ref("A", "top", i), ref("A", "bottom", i), P))
        entries.append(IntervalMapEntry(ref("A", "bottom", i), ref("A", "top", i), P))
    return FHomeoShadow((StripSymmetry("A", "A", y_flip=True),), tuple(entries))


class TestCheckIdentityComponent:
    def test_identity_accepted_everywhere(self):
        rng = random.Random(7)
        accepted = 0
        for _ in range(60):
            surface = random_surface(rng, max_strips=6)
            for comp in reduce(surface).components:
                if comp.verdict is Verdict.REDUCED:
                    verdict = check_identity_component(comp.surface, identity_shadow(comp.surface))
                    assert verdict.in_H0 and not verdict.failures
                    accepted += 1
        assert accepted > 20

    def test_strip_swap_fails_exactly_condition_a(self):
        surface = swap_symmetric_surface()
        verdict = check_identity_component(surface, swap_shadow(surface))
        assert not verdict.in_H0
        assert {cond for cond, _ in verdict.failures} == {"A"}

    def test_y_flip_fails_exactly_condition_b(self):
        surface = vertical_symmetric_surface()
        verdict = check_identity_component(surface, vertical_flip_shadow(surface))
        assert not verdict.in_H0
        assert {cond for cond, _ in verdict.failures} == {"B"}

    def test_orientation_reversal_fails_exactly_condition_c(self):
        surface = boundary_and_special_surface()
        entries = []
        for entry in identity_shadow(surface).interval_map:
            orient = R if entry.source == ref("A", "top", 1) else P
            entries.append(IntervalMapEntry(entry.source, entry.target, orient))
        shadow = FHomeoShadow((StripSymmetry("A", "A"),), tuple(entries))
        verdict = check_identity_component(surface, shadow)
        assert not verdict.in_H0
        assert {cond for cond, _ in verdict.failures} == {"C"}
        assert verdict.failures[0][1] == "A.top[1]"

    def test_moved_sigma_leaf_fails_condition_c(self):
        surface = boundary_only_surface()
        # x_flip plus reversed boundary entries: B fails, and the leaves
        # stay fixed but reversed, so C fails too.
        shadow = FHomeoShadow(
            (StripSymmetry("A", "A", x_flip=True),),
            tuple(
                IntervalMapEntry(e.source, e.target, R)
                for e in identity_shadow(surface).interval_map
            ),
        )
        verdict = check_identity_component(surface, shadow)
        assert {cond for cond, _ in verdict.failures} == {"B", "C"}

    def test_non_reduced_rejected(self):
        surface = make_surface(
            [ModelStrip.make("A", bottom=[(-2, 2)], top=[(-2, 2)])],
            [(ref("A", "top"), ref("A", "bottom"), P)],
        )
        with pytest.raises(NotReducedError):
            check_identity_component(surface, identity_shadow(surface))

    def test_disconnected_rejected(self):
        surface = make_surface([ModelStrip.make("A"), ModelStrip.make("B")])
        with pytest.raises(NotConnectedError):
            check_identity_component(surface, identity_shadow(surface))

    def test_invalid_shadow_rejected(self):
        surface = boundary_only_surface()
        shadow = FHomeoShadow(
            (StripSymmetry("A", "A", y_flip=True),),
            identity_shadow(surface).interval_map,
        )
        with pytest.raises(InvalidShadowError):
            check_identity_component(surface, shadow)

    def test_same_side_pair_swap_accepted(self):
        # a same-side special pair can be exchanged by an increasing map;
        # the leaf maps to itself preserving orientation
        surface = same_side_self_gluing_surface(P)
        shadow = FHomeoShadow(
            (StripSymmetry("A", "A"),),
            (
                IntervalMapEntry(ref("A", "top", 0), ref("A", "top", 1), P),
                IntervalMapEntry(ref("A", "top", 1), ref("A", "top", 0), P),
            ),
        )
        assert validate_shadow(surface, shadow).ok
        assert check_identity_component(surface, shadow).in_H0


SMALL_SURFACES = [
    boundary_only_surface(),
    swap_symmetric_surface(),
    vertical_symmetric_surface(),
    boundary_and_special_surface(),
    same_side_self_gluing_surface(P),
    same_side_self_gluing_surface(R),
    make_surface([ModelStrip.make("A", top=[(0, 1)])]),
    make_surface(
        [ModelStrip.make("A", top=[(0, 1), (2, 3)]), ModelStrip.make("B", bottom=[(0, 2)])],
        [(ref("A", "top", 0), ref("B", "bottom", 0), R)],
    ),
]


class TestExhaustiveAgreement:
    @pytest.mark.parametrize("idx", range(len(SMALL_SURFACES)))
    def test_checker_matches_enumeration_filter(self, idx):
        surface = SMALL_SURFACES[idx]
        shadows = enumerate_valid_shadows(surface)
        assert shadows, "enumeration must at least contain the identity"
        for shadow in shadows:
            expected = direct_abc_filter(surface, shadow)
            assert check_identity_component(surface, shadow).in_H0 == expected

    def test_enumeration_contains_identity(self):
        for surface in SMALL_SURFACES:
            assert identity_shadow(surface) in enumerate_valid_shadows(surface)

    @pytest.mark.parametrize("idx", [0, 3, 4])
    def test_pruned_enumeration_matches_naive(self, idx):
        surface = SMALL_SURFACES[idx]
        pruned = {shadow_key(s) for s in enumerate_valid_shadows(surface)}
        naive = {shadow_key(s) for s in enumerate_valid_shadows_naive(surface)}
        assert pruned == naive


class TestGroupClosure:
    def test_composition_and_inverse_of_accepted(self):
        surface = same_side_self_gluing_surface(P)
        accepted = [
            s for s in enumerate_valid_shadows(surface)
            if check_identity_component(surface, s).in_H0
        ]
        assert len(accepted) >= 2  # identity plus the pair swap
        for f in accepted:
            inv = invert_shadow(surface, f)
            assert check_identity_component(surface, inv).in_H0
            for g in accepted:
                comp = compose_shadows(surface, f, g)
                assert check_identity_component(surface, comp).in_H0

    def test_composition_of_valid_is_valid(self):
        surface = vertical_symmetric_surface()
        shadows = enumerate_valid_shadows(surface)
        rng = random.Random(3)
        for _ in range(50):
            f, g = rng.choice(shadows), rng.choice(shadows)
            comp = compose_shadows(surface, f, g)
            assert validate_shadow(surface, comp).ok
            assert validate_shadow(surface, invert_shadow(surface, f)).ok


class TestIsotopyWitness:
    def samples(self, surface, lam=None, mu=None):
        lam = lam or PLMonotoneMap.identity()
        mu = mu or PLMonotoneMap(((-1.0, -1.0), (1.0, 1.0)))
        return {sid: StripSample(lam, mu) for sid in surface.strips}

    def test_identity_samples_give_constant_stages(self):
        surface = boundary_only_surface()
        witness = isotopy_witness(surface, identity_shadow(surface), self.samples(surface))
        for t in (0.0, 0.5, 1.0):
            # PL evaluation of the identity rounds once, hence the epsilon
            s1 = witness.stage1("A", (0.3, -0.2), t)
            s2 = witness.stage2("A", (0.3, -0.2), t)
            assert s1 == pytest.approx((0.3, -0.2), abs=1e-15)
            assert s2 == pytest.approx((0.3, -0.2), abs=1e-15)

    def test_stage1_straightens_mu(self):
        surface = boundary_only_surface()
        cubic_like = PLMonotoneMap(((-1, -1), (-0.5, -0.125), (0, 0), (0.5, 0.125), (1, 1)))
        witness = isotopy_witness(
            surface, identity_shadow(surface), self.samples(surface, mu=cubic_like)
        )
        x, y = 0.7, 0.5
        assert witness.stage1("A", (x, y), 0.0) == (x, cubic_like(y))  # the sampled map
        assert witness.stage1("A", (x, y), 1.0) == (x, y)  # mu deformed to identity

    def test_stage2_ends_at_identity(self):
        surface = boundary_only_surface()
        lam = PLMonotoneMap(((0.0, 0.0), (1.0, 2.0)))
        witness = isotopy_witness(surface, identity_shadow(surface), self.samples(surface, lam=lam))
        for x in (-2.0, 0.0, 0.4, 3.0):
            got = witness.stage2("A", (x, 0.1), 1.0)
            assert abs(got[0] - x) <= 1e-12 and got[1] == 0.1
        # stage-2 start point equals the stage-1 end point (lambda, y)
        assert witness.stage2("A", (0.4, 0.1), 0.0) == (lam(0.4), 0.1)

    def test_rejected_shadow_raises(self):
        surface = vertical_symmetric_surface()
        with pytest.raises(NotInIdentityComponentError):
            isotopy_witness(surface, vertical_flip_shadow(surface), self.samples(surface))

    def test_mu_must_fix_endpoints(self):
        surface = boundary_only_surface()
        bad_mu = PLMonotoneMap(((-1.0, -0.5), (1.0, 1.0)))
        with pytest.raises(ValueError):
            isotopy_witness(
                surface, identity_shadow(surface), self.samples(surface, mu=bad_mu)
            )

    def test_witness_describes_stages(self):
        surface = boundary_only_surface()
        witness = isotopy_witness(surface, identity_shadow(surface), self.samples(surface))
        desc = witness.describe()
        assert desc["stages"] == [
            "deform_mu_to_identity",
            "contract_lambda_straight_line",
        ]
