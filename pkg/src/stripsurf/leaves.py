"""Classification of the discrete leaves of the canonical foliation.

Leaves of the horizontal foliation fall into: *internal* ones (the whole
open family inside one strip, represented by a single record), *boundary*
leaves (unglued boundary intervals), and *glued* leaves (one per gluing).
A glued leaf closing a single strip side-to-side is type c1; one joining
two full strip sides of distinct strips is c2; anything else (at least
one member shares its side with other intervals) is the *special* type
c3.  The invariant set of every foliation-preserving homeomorphism is the
union of boundary and c3 leaves.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Union

from .errors import InvalidSurfaceError
from .model import IntervalRef, StrippedSurface, validate_surface


class LeafKind(Enum):
    INTERNAL = "internal"
    BOUNDARY = "boundary"
    GLUED_C1 = "glued_c1"
    GLUED_C2 = "glued_c2"
    GLUED_C3 = "glued_c3"


#: members payload: strip id for internal leaves, one ref for boundary
#: leaves, the (src, dst) pair for glued leaves.
LeafMembers = Union[str, IntervalRef, "tuple[IntervalRef, IntervalRef]"]


@dataclass(frozen=True)
class LeafRecord:
    leaf_id: str
    kind: LeafKind
    members: LeafMembers


@dataclass(frozen=True)
class SigmaSet:
    """Ids of the leaves kept invariant by every F-homeomorphism."""

    leaf_ids: frozenset[str]


def _require_valid(surface: StrippedSurface) -> None:
    diag = validate_surface(surface)
    if not diag.ok:
        raise InvalidSurfaceError("; ".join(i.code for i in diag.issues))


def internal_leaf_id(strip_id: str) -> str:
    return f"internal:{strip_id}"


def classify_leaves(surface: StrippedSurface) -> list[LeafRecord]:
    """One record per strip (internal family), unglued interval, and gluing.

    Together the records partition the discrete leaf data: every interval
    appears in exactly one boundary or glued record.
    """
    _require_valid(surface)
    records: list[LeafRecord] = []
    for sid in sorted(surface.strips):
        records.append(LeafRecord(internal_leaf_id(sid), LeafKind.INTERNAL, sid))
    for ref in surface.boundary_refs():
        records.append(LeafRecord(surface.provenance.get(ref, str(ref)), LeafKind.BOUNDARY, ref))
    for g in surface.gluings:
        src_unique = surface.is_unique_on_side(g.src)
        dst_unique = surface.is_unique_on_side(g.dst)
        if src_unique and dst_unique:
            kind = LeafKind.GLUED_C1 if g.src.strip_id == g.dst.strip_id else LeafKind.GLUED_C2
        else:
            kind = LeafKind.GLUED_C3
        records.append(LeafRecord(g.id, kind, (g.src, g.dst)))
    return records


def sigma_set(surface: StrippedSurface) -> SigmaSet:
    """Boundary and c3 leaf ids: the invariant set of the foliation."""
    records = classify_leaves(surface)
    return SigmaSet(
        frozenset(r.leaf_id for r in records if r.kind in (LeafKind.BOUNDARY, LeafKind.GLUED_C3))
    )


def is_reduced(surface: StrippedSurface) -> bool:
    """True when no leaf is of type c1 or c2."""
    return not any(
        r.kind in (LeafKind.GLUED_C1, LeafKind.GLUED_C2) for r in classify_leaves(surface)
    )
