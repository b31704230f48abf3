"""Rewriting stripped surfaces to reduced normal form.

Strips carrying c1/c2 leaves form a graph in which every vertex has
degree 1 or 2, so its components are finite paths, loops, or cycles.
Path edges are eliminated by merging the two strips across the glued
leaf (the leaf becomes internal); cycles merge down to a single strip
with a self-gluing, whose orientation sign then decides cylinder vs
Moebius band.  Every merge strictly decreases the gluing count, so the
rewriting terminates in at most (initial gluing count) steps.

Merging is normalised by strip flips (both F-homeomorphisms of a single
strip) to the single pattern "top of P glued to bottom of Q by an
orientation-preserving map", which keeps one merge body instead of eight
sign/side cases.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping

from .errors import (
    ComponentNotClosedError,
    InvalidSurfaceError,
    NotC1Error,
    NotC2Error,
    NotConnectedError,
)
from .leaves import LeafKind, classify_leaves
from .model import (
    Gluing,
    GluingSign,
    IntervalRef,
    ModelStrip,
    Side,
    StrippedSurface,
    affine_gluing_map,
    strip_components,
    validate_surface,
)


class FlipAxis(Enum):
    VERTICAL = "vertical"  # swap the two boundary sides, x untouched
    HORIZONTAL = "horizontal"  # x -> -x


class Verdict(Enum):
    CYLINDER = "cylinder"
    MOEBIUS = "moebius"
    REDUCED = "reduced"


class ShapeKind(Enum):
    PATH = "path"
    LOOP = "loop"
    CYCLE = "cycle"


@dataclass(frozen=True)
class ComponentShape:
    kind: ShapeKind
    edges: int


@dataclass(frozen=True)
class GraphEdge:
    leaf_id: str
    ends: tuple[str, str]  # loop edges have both ends equal

    @property
    def is_loop(self) -> bool:
        return self.ends[0] == self.ends[1]


@dataclass(frozen=True)
class ReductionGraph:
    """Strips incident to c1/c2 leaves, joined by those leaves."""

    vertices: frozenset[str]
    edges: tuple[GraphEdge, ...]

    def degree(self, vertex: str) -> int:
        return sum((2 if e.is_loop else 1) for e in self.edges if vertex in e.ends)

    def components(self) -> list[frozenset[str]]:
        parent = {v: v for v in self.vertices}

        def find(x: str) -> str:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in self.edges:
            ra, rb = find(e.ends[0]), find(e.ends[1])
            if ra != rb:
                parent[ra] = rb
        groups: dict[str, set[str]] = {}
        for v in self.vertices:
            groups.setdefault(find(v), set()).add(v)
        return sorted((frozenset(g) for g in groups.values()), key=min)


@dataclass(frozen=True)
class RewriteStep:
    op: str  # "merge" | "close_loop"
    leaf_id: str
    verdict: Verdict | None = None


@dataclass(frozen=True)
class ComponentReduction:
    strip_ids: tuple[str, ...]  # strips of the original component
    verdict: Verdict
    surface: StrippedSurface | None  # populated for Verdict.REDUCED
    trace: tuple[RewriteStep, ...]


@dataclass(frozen=True)
class ReductionOutcome:
    components: tuple[ComponentReduction, ...]

    @property
    def trace(self) -> tuple[RewriteStep, ...]:
        return tuple(step for comp in self.components for step in comp.trace)


def _require_valid(surface: StrippedSurface) -> None:
    diag = validate_surface(surface)
    if not diag.ok:
        raise InvalidSurfaceError("; ".join(i.code for i in diag.issues))


def build_graph(surface: StrippedSurface) -> ReductionGraph:
    """Vertices: strips carrying c1/c2 leaves; edges: those leaves."""
    _require_valid(surface)
    edges: list[GraphEdge] = []
    vertices: set[str] = set()
    for record in classify_leaves(surface):
        if record.kind in (LeafKind.GLUED_C1, LeafKind.GLUED_C2):
            src, dst = record.members
            edges.append(GraphEdge(record.leaf_id, (src.strip_id, dst.strip_id)))
            vertices.update((src.strip_id, dst.strip_id))
    return ReductionGraph(frozenset(vertices), tuple(edges))


def classify_component(graph: ReductionGraph, component: Iterable[str]) -> ComponentShape:
    """Shape by degree counting: loop, cycle (all degree 2), or path."""
    vertices = set(component)
    edges = [e for e in graph.edges if e.ends[0] in vertices]
    if any(e.is_loop for e in edges):
        return ComponentShape(ShapeKind.LOOP, 1)
    if all(graph.degree(v) == 2 for v in vertices):
        return ComponentShape(ShapeKind.CYCLE, len(edges))
    return ComponentShape(ShapeKind.PATH, len(edges))


def _remap_surface(
    surface: StrippedSurface,
    new_strips: Mapping[str, ModelStrip],
    remap_ref,
    sign_toggle=None,
    drop_gluing: str | None = None,
) -> StrippedSurface:
    """Rebuild gluings and provenance through a per-endpoint ref remap.

    ``sign_toggle(ref) -> bool`` marks endpoints whose local x-orientation
    was reversed; a gluing's sign flips once per reversed endpoint, so a
    gluing with both endpoints on a flipped strip keeps its sign.
    """
    gluings = []
    for g in surface.gluings:
        if g.id == drop_gluing:
            continue
        sign = g.sign
        if sign_toggle is not None:
            for ref in (g.src, g.dst):
                if sign_toggle(ref):
                    sign = sign.flipped
        gluings.append(Gluing(g.id, remap_ref(g.src), remap_ref(g.dst), sign))
    provenance = {}
    for ref, leaf_id in surface.provenance.items():
        new_ref = remap_ref(ref)
        if new_ref is not None:
            provenance[new_ref] = leaf_id
    return StrippedSurface(strips=dict(new_strips), gluings=tuple(gluings), provenance=provenance)


def flip_strip(surface: StrippedSurface, strip_id: str, axis: FlipAxis) -> StrippedSurface:
    """Apply an F-homeomorphism of one strip: side swap or x -> -x.

    Vertical keeps endpoints and signs, swapping the two side lists.
    Horizontal maps each interval (a,b) to (-b,-a), reverses each side's
    order, and flips the sign of every incident gluing endpoint.  The
    multiset of leaf kinds is unchanged either way.
    """
    strip = surface.strip(strip_id)
    if axis is FlipAxis.VERTICAL:
        new_strip = ModelStrip(strip_id, bottom=strip.top, top=strip.bottom)

        def remap(ref: IntervalRef) -> IntervalRef:
            if ref.strip_id != strip_id:
                return ref
            return IntervalRef(strip_id, ref.side.opposite, ref.index)

        new_strips = dict(surface.strips)
        new_strips[strip_id] = new_strip
        return _remap_surface(surface, new_strips, remap)

    def negate(side: tuple) -> tuple:
        return tuple((-b, -a) for a, b in reversed(side))

    new_strip = ModelStrip(strip_id, bottom=negate(strip.bottom), top=negate(strip.top))
    counts = {side: len(strip.side_intervals(side)) for side in Side}

    def remap(ref: IntervalRef) -> IntervalRef:
        if ref.strip_id != strip_id:
            return ref
        return IntervalRef(strip_id, ref.side, counts[ref.side] - 1 - ref.index)

    def toggles(ref: IntervalRef) -> bool:
        return ref.strip_id == strip_id

    new_strips = dict(surface.strips)
    new_strips[strip_id] = new_strip
    return _remap_surface(surface, new_strips, remap, sign_toggle=toggles)


def _leaf_kind(surface: StrippedSurface, leaf_id: str) -> LeafKind | None:
    for record in classify_leaves(surface):
        if record.leaf_id == leaf_id:
            return record.kind
    return None


def merge_along(surface: StrippedSurface, leaf_id: str) -> StrippedSurface:
    """Replace the two strips joined by a c2 leaf with a single strip.

    After flip normalisation the gluing maps the unique top interval of P
    onto the unique bottom interval of Q by an increasing affine map phi.
    The merged strip keeps P's id and bottom coordinates; Q's top
    intervals are transported through the affine extension of phi^-1,
    which preserves their order, their leaf ids, and the signs of all
    remaining gluings.
    """
    if _leaf_kind(surface, leaf_id) is not LeafKind.GLUED_C2:
        raise NotC2Error(leaf_id)

    current = surface
    g = current.gluing_by_id(leaf_id)
    if g.src.side is Side.MINUS:
        current = flip_strip(current, g.src.strip_id, FlipAxis.VERTICAL)
        g = current.gluing_by_id(leaf_id)
    if g.dst.side is Side.PLUS:
        current = flip_strip(current, g.dst.strip_id, FlipAxis.VERTICAL)
        g = current.gluing_by_id(leaf_id)
    if g.sign is GluingSign.REVERSING:
        current = flip_strip(current, g.dst.strip_id, FlipAxis.HORIZONTAL)
        g = current.gluing_by_id(leaf_id)

    lower_id, upper_id = g.src.strip_id, g.dst.strip_id
    lower, upper = current.strip(lower_id), current.strip(upper_id)
    phi = affine_gluing_map(current.interval(g.src), current.interval(g.dst), g.sign)
    phi_inv = phi.inverse()

    merged = ModelStrip(
        lower_id,
        bottom=lower.bottom,
        top=tuple((phi_inv(a), phi_inv(b)) for a, b in upper.top),
    )

    def remap(ref: IntervalRef) -> IntervalRef | None:
        if ref in (g.src, g.dst):
            return None  # consumed by the merge
        if ref.strip_id == upper_id:
            # only top intervals survive on the upper strip
            return IntervalRef(lower_id, Side.PLUS, ref.index)
        return ref

    new_strips = dict(current.strips)
    del new_strips[upper_id]
    new_strips[lower_id] = merged
    return _remap_surface(current, new_strips, remap, drop_gluing=g.id)


def close_loop_classify(surface: StrippedSurface, leaf_id: str) -> Verdict:
    """Decide cylinder vs Moebius band for a single-strip c1 component.

    The component of a c1 leaf is necessarily the one strip closed onto
    itself by the one gluing; an orientation-preserving identification
    yields the cylinder, a reversing one the Moebius band.
    """
    kind = _leaf_kind(surface, leaf_id)
    if kind is None or kind is not LeafKind.GLUED_C1:
        raise NotC1Error(leaf_id)
    g = surface.gluing_by_id(leaf_id)
    strip_id = g.src.strip_id
    for other in surface.gluings:
        if other.id != g.id and strip_id in (other.src.strip_id, other.dst.strip_id):
            raise ComponentNotClosedError(f"{strip_id} touched by gluing {other.id}")
    return Verdict.CYLINDER if g.sign is GluingSign.PRESERVING else Verdict.MOEBIUS


def _restrict(surface: StrippedSurface, strip_ids: frozenset[str]) -> StrippedSurface:
    strips = {sid: surface.strips[sid] for sid in strip_ids}
    gluings = tuple(g for g in surface.gluings if g.src.strip_id in strip_ids)
    provenance = {r: v for r, v in surface.provenance.items() if r.strip_id in strip_ids}
    return StrippedSurface(strips=strips, gluings=gluings, provenance=provenance)


def _reduce_component(component: StrippedSurface, rng: random.Random | None) -> tuple[Verdict, StrippedSurface | None, tuple[RewriteStep, ...]]:
    trace: list[RewriteStep] = []
    current = component
    while True:
        c2_ids = sorted(
            r.leaf_id for r in classify_leaves(current) if r.kind is LeafKind.GLUED_C2
        )
        if not c2_ids:
            break
        leaf_id = rng.choice(c2_ids) if rng is not None else c2_ids[0]
        current = merge_along(current, leaf_id)
        trace.append(RewriteStep("merge", leaf_id))
    c1_ids = [r.leaf_id for r in classify_leaves(current) if r.kind is LeafKind.GLUED_C1]
    if c1_ids:
        verdict = close_loop_classify(current, c1_ids[0])
        trace.append(RewriteStep("close_loop", c1_ids[0], verdict))
        return verdict, None, tuple(trace)
    return Verdict.REDUCED, current, tuple(trace)


def reduce(surface: StrippedSurface, *, rng: random.Random | None = None) -> ReductionOutcome:
    """Rewrite every component to a reduced surface or classify it C/M.

    ``rng`` randomises the merge order (the per-component verdicts, strip
    counts, and leaf-kind multisets are order-independent); by default
    leaves are merged in sorted leaf-id order.
    """
    _require_valid(surface)
    results = []
    for component in strip_components(surface):
        verdict, reduced_surface, trace = _reduce_component(_restrict(surface, component), rng)
        results.append(
            ComponentReduction(tuple(sorted(component)), verdict, reduced_surface, trace)
        )
    return ReductionOutcome(tuple(results))


def gluing_parity(gluing: Gluing) -> int:
    """1 when the identification forces an orientation flip between strips.

    With strips carrying the plane's standard orientation, a top-to-bottom
    orientation-preserving gluing is orientation-compatible; changing
    either the sign or the side relation toggles compatibility.
    """
    same_side = gluing.src.side is gluing.dst.side
    reversing = gluing.sign is GluingSign.REVERSING
    return int(reversing != same_side)


def orientable(surface: StrippedSurface) -> bool:
    """Union-find with parity over the strip adjacency graph."""
    _require_valid(surface)
    components = strip_components(surface)
    if len(components) != 1:
        raise NotConnectedError(f"{len(components)} components")

    parent: dict[str, str] = {sid: sid for sid in surface.strips}
    parity: dict[str, int] = {sid: 0 for sid in surface.strips}

    def find_with_parity(x: str) -> tuple[str, int]:
        p = 0
        while parent[x] != x:
            p ^= parity[x]
            x = parent[x]
        return x, p

    for g in surface.gluings:
        want = gluing_parity(g)
        ra, pa = find_with_parity(g.src.strip_id)
        rb, pb = find_with_parity(g.dst.strip_id)
        if ra == rb:
            if pa ^ pb != want:
                return False
        else:
            parent[ra] = rb
            parity[ra] = pa ^ pb ^ want
    return True
