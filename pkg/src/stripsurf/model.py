"""Exact-arithmetic domain model for stripped surfaces.

A *model strip* is the open band R x (-1,1) together with finitely many
open finite intervals on each boundary line y = +-1 whose closures are
pairwise disjoint.  A *stripped surface* is a family of model strips with
some pairs of boundary intervals identified by affine maps.  All interval
endpoints are rationals (`fractions.Fraction`), so the whole combinatorial
layer is exact; floating point only appears in :mod:`stripsurf.numeric`.

All values here are immutable after construction.  Constructors are
permissive (you can build an invalid surface in memory); validity is
checked by :func:`validate_strip` / :func:`validate_surface`, which report
problems in a :class:`Diagnostics` value instead of raising.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .errors import DegenerateIntervalError, UnknownStripError

#: Exact rational scalar; always stored in lowest terms with positive
#: denominator (guaranteed by Fraction itself).
Rational = Fraction

RationalLike = Union[Rational, int, str]


def rational(value: RationalLike) -> Rational:
    """Coerce ints and 'p/q' strings to an exact rational."""
    return Fraction(value)


class Side(Enum):
    """Which boundary line of a strip an interval lives on."""

    MINUS = "bottom"
    PLUS = "top"

    @property
    def opposite(self) -> "Side":
        return Side.PLUS if self is Side.MINUS else Side.MINUS

    @property
    def sort_key(self) -> int:
        return 0 if self is Side.MINUS else 1

    @classmethod
    def from_name(cls, name: str) -> "Side":
        for side in cls:
            if side.value == name:
                return side
        raise ValueError(f"unknown side name: {name!r}")


class GluingSign(Enum):
    """Orientation behaviour of an affine identification."""

    PRESERVING = "+"
    REVERSING = "-"

    @property
    def flipped(self) -> "GluingSign":
        return GluingSign.REVERSING if self is GluingSign.PRESERVING else GluingSign.PRESERVING

    def compose(self, other: "GluingSign") -> "GluingSign":
        return self if other is GluingSign.PRESERVING else self.flipped

    @classmethod
    def from_char(cls, char: str) -> "GluingSign":
        if char == "+":
            return cls.PRESERVING
        if char in ("-", "−"):
            return cls.REVERSING
        raise ValueError(f"unknown sign: {char!r}")


@dataclass(frozen=True)
class IntervalRef:
    """Positional reference to a boundary interval: strip, side, index."""

    strip_id: str
    side: Side
    index: int

    def __str__(self) -> str:
        return f"{self.strip_id}.{self.side.value}[{self.index}]"

    @property
    def sort_key(self) -> tuple[str, int, int]:
        return (self.strip_id, self.side.sort_key, self.index)

    @classmethod
    def parse(cls, text: str) -> "IntervalRef":
        """Parse the canonical 'STRIP.side[i]' form."""
        head, _, tail = text.partition(".")
        side_name, _, idx = tail.partition("[")
        if not head or not idx.endswith("]"):
            raise ValueError(f"bad interval reference: {text!r}")
        return cls(head, Side.from_name(side_name), int(idx[:-1]))


@dataclass(frozen=True)
class BoundaryInterval:
    """A resolved boundary interval: reference plus exact endpoints."""

    strip_id: str
    side: Side
    index: int
    a: Rational
    b: Rational

    @property
    def ref(self) -> IntervalRef:
        return IntervalRef(self.strip_id, self.side, self.index)


@dataclass(frozen=True)
class ModelStrip:
    """R x (-1,1) plus the interval lists on each boundary line.

    ``bottom`` and ``top`` hold (a, b) endpoint pairs, expected to be
    sorted with pairwise disjoint closures (checked by validate_strip).
    """

    id: str
    bottom: tuple[tuple[Rational, Rational], ...] = ()
    top: tuple[tuple[Rational, Rational], ...] = ()

    @classmethod
    def make(
        cls,
        id: str,
        bottom: Iterable[tuple[RationalLike, RationalLike]] = (),
        top: Iterable[tuple[RationalLike, RationalLike]] = (),
    ) -> "ModelStrip":
        coerce = lambda pairs: tuple((rational(a), rational(b)) for a, b in pairs)
        return cls(id, coerce(bottom), coerce(top))

    def side_intervals(self, side: Side) -> tuple[tuple[Rational, Rational], ...]:
        return self.bottom if side is Side.MINUS else self.top

    def interval_refs(self) -> Iterator[IntervalRef]:
        for side in (Side.MINUS, Side.PLUS):
            for i in range(len(self.side_intervals(side))):
                yield IntervalRef(self.id, side, i)


@dataclass(frozen=True)
class Gluing:
    """An identification src -> dst of two boundary intervals.

    ``src`` plays the role of the domain of the affine map and ``dst`` its
    image; ``id`` is a stable leaf identifier that survives rewrites.
    """

    id: str
    src: IntervalRef
    dst: IntervalRef
    sign: GluingSign


@dataclass(frozen=True)
class AffineMap:
    """t -> slope*t + intercept with exact rational coefficients."""

    slope: Rational
    intercept: Rational

    def __call__(self, t: RationalLike) -> Rational:
        return self.slope * rational(t) + self.intercept

    def inverse(self) -> "AffineMap":
        return AffineMap(1 / self.slope, -self.intercept / self.slope)

    def compose(self, inner: "AffineMap") -> "AffineMap":
        """self after inner."""
        return AffineMap(self.slope * inner.slope, self.slope * inner.intercept + self.intercept)

    @property
    def sign(self) -> GluingSign:
        return GluingSign.PRESERVING if self.slope > 0 else GluingSign.REVERSING


@dataclass(frozen=True)
class Issue:
    code: str
    message: str
    ref: str | None = None


@dataclass(frozen=True)
class Diagnostics:
    """Validation outcome; ``ok`` holds exactly when ``issues`` is empty."""

    ok: bool
    issues: tuple[Issue, ...]

    @classmethod
    def from_issues(cls, issues: Sequence[Issue]) -> "Diagnostics":
        return cls(ok=not issues, issues=tuple(issues))


@dataclass(frozen=True, eq=False)
class StrippedSurface:
    """Strips indexed by id plus the gluings identifying interval pairs.

    ``provenance`` maps every interval reference to a stable leaf id that
    survives rewrites (reduction renames strips and transports endpoints,
    but leaf identity is preserved through this map and the gluing ids).
    """

    strips: Mapping[str, ModelStrip]
    gluings: tuple[Gluing, ...]
    provenance: Mapping[IntervalRef, str]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StrippedSurface):
            return NotImplemented
        return (
            dict(self.strips) == dict(other.strips)
            and self.gluings == other.gluings
            and dict(self.provenance) == dict(other.provenance)
        )

    # -- lookups ---------------------------------------------------------

    def strip(self, strip_id: str) -> ModelStrip:
        try:
            return self.strips[strip_id]
        except KeyError:
            raise UnknownStripError(strip_id) from None

    def has_interval(self, ref: IntervalRef) -> bool:
        strip = self.strips.get(ref.strip_id)
        if strip is None:
            return False
        return 0 <= ref.index < len(strip.side_intervals(ref.side))

    def interval(self, ref: IntervalRef) -> BoundaryInterval:
        strip = self.strip(ref.strip_id)
        a, b = strip.side_intervals(ref.side)[ref.index]
        return BoundaryInterval(ref.strip_id, ref.side, ref.index, a, b)

    def interval_refs(self) -> Iterator[IntervalRef]:
        for sid in sorted(self.strips):
            yield from self.strips[sid].interval_refs()

    @cached_property
    def gluing_by_ref(self) -> Mapping[IntervalRef, Gluing]:
        """First gluing touching each ref (validity makes this unique)."""
        table: dict[IntervalRef, Gluing] = {}
        for g in self.gluings:
            table.setdefault(g.src, g)
            table.setdefault(g.dst, g)
        return table

    def gluing_of(self, ref: IntervalRef) -> Gluing | None:
        return self.gluing_by_ref.get(ref)

    def gluing_by_id(self, leaf_id: str) -> Gluing | None:
        for g in self.gluings:
            if g.id == leaf_id:
                return g
        return None

    def glued_refs(self) -> set[IntervalRef]:
        return {r for g in self.gluings for r in (g.src, g.dst)}

    def boundary_refs(self) -> list[IntervalRef]:
        glued = self.glued_refs()
        return [r for r in self.interval_refs() if r not in glued]

    def is_unique_on_side(self, ref: IntervalRef) -> bool:
        return len(self.strip(ref.strip_id).side_intervals(ref.side)) == 1

    def affine_map_of(self, gluing: Gluing) -> AffineMap:
        return affine_gluing_map(self.interval(gluing.src), self.interval(gluing.dst), gluing.sign)


def make_surface(
    strips: Iterable[ModelStrip],
    gluings: Iterable[Gluing | tuple[IntervalRef, IntervalRef, GluingSign]] = (),
    provenance: Mapping[IntervalRef, str] | None = None,
) -> StrippedSurface:
    """Assemble a surface, filling in default gluing ids and provenance.

    Default leaf ids are derived from the creation-time references
    ('A.top[0]' for intervals, 'A.top[0]~B.bottom[0]' for gluings), which
    makes them stable under serialisation of freshly built surfaces.
    """
    strip_map = {s.id: s for s in strips}
    glist: list[Gluing] = []
    for g in gluings:
        if isinstance(g, Gluing):
            glist.append(g)
        else:
            src, dst, sign = g
            glist.append(Gluing(f"{src}~{dst}", src, dst, sign))
    if provenance is None:
        provenance = {}
    prov = dict(provenance)
    for sid in strip_map:
        for ref in strip_map[sid].interval_refs():
            prov.setdefault(ref, str(ref))
    return StrippedSurface(strips=strip_map, gluings=tuple(glist), provenance=prov)


# -- operations -----------------------------------------------------------


def validate_strip(strip: ModelStrip) -> Diagnostics:
    """Check interval lists: each a < b, sorted, closures disjoint."""
    issues: list[Issue] = []
    for side in (Side.MINUS, Side.PLUS):
        intervals = strip.side_intervals(side)
        for i, (a, b) in enumerate(intervals):
            ref = str(IntervalRef(strip.id, side, i))
            if a >= b:
                issues.append(Issue("EMPTY_INTERVAL", f"interval {ref} has a >= b", ref))
        for i in range(len(intervals) - 1):
            b_i = intervals[i][1]
            a_next = intervals[i + 1][0]
            ref = str(IntervalRef(strip.id, side, i))
            if b_i == a_next:
                issues.append(
                    Issue("CLOSURES_TOUCH", f"closures of {ref} and its successor share {b_i}", ref)
                )
            elif b_i > a_next:
                issues.append(
                    Issue("OVERLAP", f"{ref} overlaps or is out of order with its successor", ref)
                )
    return Diagnostics.from_issues(issues)


def validate_surface(surface: StrippedSurface) -> Diagnostics:
    """Check all strips, reference resolution, and gluing disjointness.

    Each boundary interval may appear in at most one gluing in total
    (reusing an interval would identify three germs at a point, producing
    a non-manifold quotient).
    """
    issues: list[Issue] = []
    for sid in sorted(surface.strips):
        issues.extend(validate_strip(surface.strips[sid]).issues)
    seen: dict[IntervalRef, str] = {}
    for g in surface.gluings:
        for ref in (g.src, g.dst):
            if not surface.has_interval(ref):
                issues.append(Issue("UNKNOWN_REF", f"gluing {g.id} references missing {ref}", str(ref)))
        if g.src == g.dst:
            issues.append(Issue("SELF_PAIR", f"gluing {g.id} identifies {g.src} with itself", str(g.src)))
        for ref in (g.src, g.dst):
            if ref in seen and seen[ref] != g.id:
                issues.append(
                    Issue("INTERVAL_REUSED", f"{ref} already used by gluing {seen[ref]}", str(ref))
                )
            else:
                seen[ref] = g.id
    return Diagnostics.from_issues(issues)


def affine_gluing_map(src: BoundaryInterval, dst: BoundaryInterval, sign: GluingSign) -> AffineMap:
    """The unique affine homeomorphism (a,b) -> (c,d) with the given sign.

    Orientation-preserving: t -> (d-c)/(b-a) * (t-a) + c.
    Orientation-reversing:  t -> (c-d)/(b-a) * (t-a) + d.
    """
    a, b = src.a, src.b
    c, d = dst.a, dst.b
    if a == b or c == d:
        raise DegenerateIntervalError(f"{src.ref} -> {dst.ref}")
    if sign is GluingSign.PRESERVING:
        slope = (d - c) / (b - a)
        intercept = c - a * slope
    else:
        slope = (c - d) / (b - a)
        intercept = d - a * slope
    return AffineMap(slope, intercept)


def strip_components(surface: StrippedSurface) -> list[frozenset[str]]:
    """Partition strip ids under 'share a gluing', smallest member first.

    Connectivity of the surface equals connectivity of this adjacency
    relation because strip interiors are connected.
    """
    parent: dict[str, str] = {sid: sid for sid in surface.strips}

    def find(x: str) -> str:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in surface.gluings:
        if g.src.strip_id in parent and g.dst.strip_id in parent:
            ra, rb = find(g.src.strip_id), find(g.dst.strip_id)
            if ra != rb:
                parent[ra] = rb
    groups: dict[str, set[str]] = {}
    for sid in surface.strips:
        groups.setdefault(find(sid), set()).add(sid)
    return sorted((frozenset(v) for v in groups.values()), key=min)
