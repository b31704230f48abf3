"""Discrete shadows of foliation-preserving homeomorphisms.

Any leaf-preserving homeomorphism lifts on each strip to a map of the
form (x, y) -> (lambda(x, y), mu(y)).  Its *shadow* is the finite data
left after forgetting the function bodies: a permutation of strips with
two flip flags (whether mu and lambda(., y) are decreasing) and an
orientation-signed bijection of the boundary intervals.  Membership in
the identity component of the homeomorphism group of the foliation
depends only on this shadow, via three conditions:

  A. every strip maps to itself;
  B. no flip flags are set;
  C. every invariant-set leaf (boundary or c3) maps to itself preserving
     its orientation (induced by increasing x in interval coordinates).

For shadows that pass, a two-stage isotopy witness to the identity can
be evaluated pointwise through :mod:`stripsurf.numeric`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Mapping

from .errors import (
    InvalidShadowError,
    InvalidSurfaceError,
    NotConnectedError,
    NotInIdentityComponentError,
    NotReducedError,
)
from .leaves import LeafKind, classify_leaves
from .model import (
    Diagnostics,
    GluingSign,
    IntervalRef,
    Issue,
    StrippedSurface,
    strip_components,
    validate_surface,
)
from .numeric import PLMonotoneMap, contraction_isotopy, q_deformation_isotopy


@dataclass(frozen=True)
class StripSymmetry:
    source: str
    target: str
    y_flip: bool = False  # mu decreasing
    x_flip: bool = False  # lambda(., y) decreasing


@dataclass(frozen=True)
class IntervalMapEntry:
    source: IntervalRef
    target: IntervalRef
    orientation: GluingSign = GluingSign.PRESERVING


@dataclass(frozen=True)
class FHomeoShadow:
    strip_map: tuple[StripSymmetry, ...]
    interval_map: tuple[IntervalMapEntry, ...]

    @cached_property
    def strip_by_source(self) -> Mapping[str, StripSymmetry]:
        return {s.source: s for s in self.strip_map}

    @cached_property
    def entry_by_source(self) -> Mapping[IntervalRef, IntervalMapEntry]:
        return {e.source: e for e in self.interval_map}


@dataclass(frozen=True)
class H0Verdict:
    """Outcome of the identity-component test; ``failures`` holds
    (condition, witness reference) pairs for conditions A, B, C."""

    in_H0: bool
    failures: tuple[tuple[str, str], ...]


def identity_shadow(surface: StrippedSurface) -> FHomeoShadow:
    return FHomeoShadow(
        strip_map=tuple(StripSymmetry(sid, sid) for sid in sorted(surface.strips)),
        interval_map=tuple(IntervalMapEntry(ref, ref) for ref in surface.interval_refs()),
    )


def _sign_value(sign: GluingSign) -> int:
    return 1 if sign is GluingSign.PRESERVING else -1


def validate_shadow(surface: StrippedSurface, shadow: FHomeoShadow) -> Diagnostics:
    """Well-formedness of a shadow over a valid surface.

    Checks: the strip map is a permutation; the interval map is a
    bijection of all intervals compatible with the strip permutation;
    sides match up to the strip's y_flip; boundary intervals map to
    boundary intervals and glued pairs onto glued pairs with the composed
    orientation sign.
    """
    if not validate_surface(surface).ok:
        raise InvalidSurfaceError("shadow validation needs a valid surface")
    issues: list[Issue] = []

    sources = [s.source for s in shadow.strip_map]
    targets = [s.target for s in shadow.strip_map]
    strip_ids = sorted(surface.strips)
    if sorted(sources) != strip_ids or len(set(sources)) != len(sources):
        issues.append(Issue("STRIP_MAP_DOMAIN", "strip map must have one entry per strip"))
    if sorted(targets) != strip_ids:
        issues.append(Issue("NOT_PERMUTATION", "strip targets must be a permutation of strip ids"))
    if issues:
        return Diagnostics.from_issues(issues)

    all_refs = list(surface.interval_refs())
    entry_sources = [e.source for e in shadow.interval_map]
    entry_targets = [e.target for e in shadow.interval_map]
    if sorted(entry_sources, key=lambda r: r.sort_key) != all_refs or len(set(entry_sources)) != len(entry_sources):
        issues.append(Issue("INTERVAL_MAP_DOMAIN", "interval map must cover every interval once"))
    if sorted(entry_targets, key=lambda r: r.sort_key) != all_refs:
        issues.append(Issue("NOT_BIJECTION", "interval targets must be a bijection onto the intervals"))
    if issues:
        return Diagnostics.from_issues(issues)

    glued = surface.glued_refs()
    for e in shadow.interval_map:
        sym = shadow.strip_by_source[e.source.strip_id]
        if e.target.strip_id != sym.target:
            issues.append(
                Issue("STRIP_MISMATCH", f"{e.source} must land on strip {sym.target}", str(e.source))
            )
        expected_side = e.source.side.opposite if sym.y_flip else e.source.side
        if e.target.side is not expected_side:
            issues.append(
                Issue("SIDE_PARITY", f"{e.source} -> {e.target} contradicts y_flip={sym.y_flip}", str(e.source))
            )
        if (e.source in glued) != (e.target in glued):
            issues.append(
                Issue("LEAFKIND_MISMATCH", f"{e.source} -> {e.target} mixes boundary and glued intervals", str(e.source))
            )
    if issues:
        return Diagnostics.from_issues(issues)

    for g in surface.gluings:
        e_src = shadow.entry_by_source[g.src]
        e_dst = shadow.entry_by_source[g.dst]
        g_src_image = surface.gluing_of(e_src.target)
        g_dst_image = surface.gluing_of(e_dst.target)
        if g_src_image is None or g_src_image is not g_dst_image:
            issues.append(
                Issue("GLUING_SPLIT", f"images of pair {g.id} are not a glued pair", g.id)
            )
            continue
        expected = _sign_value(g.sign) * _sign_value(e_src.orientation) * _sign_value(e_dst.orientation)
        if _sign_value(g_src_image.sign) != expected:
            issues.append(
                Issue("EQUIVARIANCE", f"pair {g.id} maps to {g_src_image.id} with inconsistent signs", g.id)
            )
    return Diagnostics.from_issues(issues)


def _sigma_leaf_action(surface: StrippedSurface, shadow: FHomeoShadow, record) -> tuple[bool, int]:
    """(mapped to itself?, orientation action) for a boundary or c3 leaf."""
    if record.kind is LeafKind.BOUNDARY:
        entry = shadow.entry_by_source[record.members]
        return entry.target == record.members, _sign_value(entry.orientation)
    src, dst = record.members
    gluing = surface.gluing_of(src)
    e_src = shadow.entry_by_source[src]
    e_dst = shadow.entry_by_source[dst]
    if {e_src.target, e_dst.target} != {src, dst}:
        return False, 1
    if e_src.target == src:
        return True, _sign_value(e_src.orientation)
    # the pair maps to itself with its two members exchanged; conjugate
    # through the gluing map to express the action in source coordinates
    return True, _sign_value(gluing.sign) * _sign_value(e_src.orientation)


def check_identity_component(surface: StrippedSurface, shadow: FHomeoShadow) -> H0Verdict:
    """Decide membership in the identity component on a connected reduced
    surface by testing conditions A, B, C on the shadow."""
    if not validate_surface(surface).ok:
        raise InvalidSurfaceError("identity-component test needs a valid surface")
    if len(strip_components(surface)) != 1:
        raise NotConnectedError("identity-component test needs a connected surface")
    records = classify_leaves(surface)
    if any(r.kind in (LeafKind.GLUED_C1, LeafKind.GLUED_C2) for r in records):
        raise NotReducedError("identity-component test needs a reduced surface")
    diag = validate_shadow(surface, shadow)
    if not diag.ok:
        raise InvalidShadowError("; ".join(i.code for i in diag.issues))

    failures: list[tuple[str, str]] = []
    for sym in shadow.strip_map:
        if sym.target != sym.source:
            failures.append(("A", sym.source))
    for sym in shadow.strip_map:
        if sym.y_flip or sym.x_flip:
            failures.append(("B", sym.source))
    for record in records:
        if record.kind not in (LeafKind.BOUNDARY, LeafKind.GLUED_C3):
            continue
        fixed, action = _sigma_leaf_action(surface, shadow, record)
        if not fixed or action != 1:
            failures.append(("C", record.leaf_id))
    return H0Verdict(in_H0=not failures, failures=tuple(failures))


def compose_shadows(surface: StrippedSurface, outer: FHomeoShadow, inner: FHomeoShadow) -> FHomeoShadow:
    """Shadow of the composition outer o inner."""
    strip_map = []
    for sym in inner.strip_map:
        after = outer.strip_by_source[sym.target]
        strip_map.append(
            StripSymmetry(
                sym.source,
                after.target,
                y_flip=sym.y_flip != after.y_flip,
                x_flip=sym.x_flip != after.x_flip,
            )
        )
    interval_map = []
    for e in inner.interval_map:
        after = outer.entry_by_source[e.target]
        interval_map.append(
            IntervalMapEntry(e.source, after.target, e.orientation.compose(after.orientation))
        )
    return FHomeoShadow(tuple(strip_map), tuple(interval_map))


def invert_shadow(surface: StrippedSurface, shadow: FHomeoShadow) -> FHomeoShadow:
    strip_map = tuple(
        StripSymmetry(s.target, s.source, y_flip=s.y_flip, x_flip=s.x_flip)
        for s in shadow.strip_map
    )
    interval_map = tuple(
        IntervalMapEntry(e.target, e.source, e.orientation) for e in shadow.interval_map
    )
    return FHomeoShadow(strip_map, interval_map)


# -- isotopy witnesses -----------------------------------------------------


@dataclass(frozen=True)
class StripSample:
    """Sampled lift of a homeomorphism on one strip, as monotone
    piecewise-linear data for lambda (x-direction) and mu (y-direction)."""

    lam: PLMonotoneMap
    mu: PLMonotoneMap


@dataclass(frozen=True)
class IsotopyWitness:
    """Two-stage isotopy from the sampled homeomorphism to the identity.

    Stage 1 deforms mu to the identity while lambda stays frozen; stage 2
    contracts lambda to the identity along straight lines.  Pointwise
    evaluation is delegated to :mod:`stripsurf.numeric`.
    """

    stage_names = ("deform_mu_to_identity", "contract_lambda_straight_line")

    samples: Mapping[str, StripSample]

    def stage1(self, strip_id: str, point: tuple[float, float], t: float) -> tuple[float, float]:
        sample = self.samples[strip_id]
        return q_deformation_isotopy(sample.lam, sample.mu, point, t)

    def stage2(self, strip_id: str, point: tuple[float, float], t: float) -> tuple[float, float]:
        return contraction_isotopy(self.samples[strip_id].lam, point, t)

    def describe(self) -> dict:
        return {
            "stages": list(self.stage_names),
            "strips": sorted(self.samples),
        }


def isotopy_witness(
    surface: StrippedSurface,
    shadow: FHomeoShadow,
    samples: Mapping[str, StripSample],
) -> IsotopyWitness:
    """Build the stage-1/stage-2 witness for an accepted shadow.

    ``samples`` supplies per-strip increasing PL maps for lambda and mu;
    mu must fix the endpoints -1 and 1.
    """
    verdict = check_identity_component(surface, shadow)
    if not verdict.in_H0:
        raise NotInIdentityComponentError(
            ", ".join(f"{cond}:{ref}" for cond, ref in verdict.failures)
        )
    missing = set(surface.strips) - set(samples)
    if missing:
        raise ValueError(f"samples missing for strips: {sorted(missing)}")
    for sid, sample in samples.items():
        if getattr(sample.lam, "decreasing", False) or getattr(sample.mu, "decreasing", False):
            raise ValueError(f"samples for {sid} must be increasing to match a flip-free shadow")
        if sample.mu(-1.0) != -1.0 or sample.mu(1.0) != 1.0:
            raise ValueError(f"mu sample for {sid} must fix the endpoints -1 and 1")
    return IsotopyWitness(samples=dict(samples))


# -- JSON interchange ------------------------------------------------------


def shadow_to_obj(shadow: FHomeoShadow) -> dict:
    return {
        "strip_map": [
            {"src": s.source, "dst": s.target, "y_flip": s.y_flip, "x_flip": s.x_flip}
            for s in shadow.strip_map
        ],
        "interval_map": [
            {"src": str(e.source), "dst": str(e.target), "orient": e.orientation.value}
            for e in shadow.interval_map
        ],
    }


def shadow_from_obj(obj: dict) -> FHomeoShadow:
    try:
        strip_map = tuple(
            StripSymmetry(
                entry["src"], entry["dst"],
                y_flip=bool(entry.get("y_flip", False)),
                x_flip=bool(entry.get("x_flip", False)),
            )
            for entry in obj["strip_map"]
        )
        interval_map = tuple(
            IntervalMapEntry(
                IntervalRef.parse(entry["src"]),
                IntervalRef.parse(entry["dst"]),
                GluingSign.from_char(entry.get("orient", "+")),
            )
            for entry in obj["interval_map"]
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidShadowError(f"malformed shadow object: {exc}") from exc
    return FHomeoShadow(strip_map, interval_map)


def verdict_to_obj(verdict: H0Verdict) -> dict:
    return {
        "in_H0": verdict.in_H0,
        "failures": [{"condition": cond, "witness": ref} for cond, ref in verdict.failures],
    }
