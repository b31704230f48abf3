"""Shadow enumeration oracles shared by the homeo and acceptance tests.

`enumerate_valid_shadows` walks every structurally possible shadow,
pruning orientation assignments that violate gluing equivariance (for a
pair mapped onto a pair the two entry signs have a forced product, so
one of them is free); `enumerate_valid_shadows_naive` is the unpruned
cross-check.  Both run every candidate through validate_shadow, so the
result is exactly the set of valid shadows.
"""

import itertools

from stripsurf.homeo import (
    FHomeoShadow,
    IntervalMapEntry,
    StripSymmetry,
    validate_shadow,
)
from stripsurf.model import GluingSign, Side

P, R = GluingSign.PRESERVING, GluingSign.REVERSING


def _side_refs(surface):
    return {
        (sid, side): [r for r in surface.strips[sid].interval_refs() if r.side is side]
        for sid in sorted(surface.strips)
        for side in Side
    }


def _structures(surface):
    """All (strip perm, flips, interval bijection) combos with matching
    side counts; orientations are handled separately."""
    strip_ids = sorted(surface.strips)
    side_refs = _side_refs(surface)
    for perm in itertools.permutations(strip_ids):
        mapping = dict(zip(strip_ids, perm))
        for y_bits in itertools.product([False, True], repeat=len(strip_ids)):
            y_flips = dict(zip(strip_ids, y_bits))
            blocks = []
            feasible = True
            for sid in strip_ids:
                for side in Side:
                    sources = side_refs[(sid, side)]
                    target_side = side.opposite if y_flips[sid] else side
                    targets = side_refs[(mapping[sid], target_side)]
                    if len(sources) != len(targets):
                        feasible = False
                        break
                    if sources:
                        blocks.append((sources, targets))
                if not feasible:
                    break
            if not feasible:
                continue
            block_choices = [
                [list(zip(sources, p)) for p in itertools.permutations(targets)]
                for sources, targets in blocks
            ]
            for x_bits in itertools.product([False, True], repeat=len(strip_ids)):
                x_flips = dict(zip(strip_ids, x_bits))
                strip_map = tuple(
                    StripSymmetry(sid, mapping[sid], y_flips[sid], x_flips[sid])
                    for sid in strip_ids
                )
                for chosen in itertools.product(*block_choices):
                    yield strip_map, [pair for block in chosen for pair in block]


def enumerate_valid_shadows_naive(surface):
    shadows = []
    for strip_map, pairs in _structures(surface):
        for orients in itertools.product([P, R], repeat=len(pairs)):
            entries = tuple(
                IntervalMapEntry(src, dst, o) for (src, dst), o in zip(pairs, orients)
            )
            shadow = FHomeoShadow(strip_map, entries)
            if validate_shadow(surface, shadow).ok:
                shadows.append(shadow)
    return shadows


def enumerate_valid_shadows(surface):
    glued = surface.glued_refs()
    shadows = []
    for strip_map, pairs in _structures(surface):
        target_of = dict(pairs)
        if any((src in glued) != (dst in glued) for src, dst in pairs):
            continue
        constrained = []  # (gluing, forced product of its two entry signs)
        split = False
        for g in surface.gluings:
            image = surface.gluing_of(target_of[g.src])
            if image is None or surface.gluing_of(target_of[g.dst]) is not image:
                split = True
                break
            product_sign = image.sign if g.sign is P else image.sign.flipped
            constrained.append((g, product_sign))
        if split:
            continue
        boundary_sources = [src for src, _ in pairs if src not in glued]
        free = len(boundary_sources) + len(constrained)
        for bits in itertools.product([P, R], repeat=free):
            orient = {}
            for src, sign in zip(boundary_sources, bits):
                orient[src] = sign
            for (g, product_sign), a in zip(constrained, bits[len(boundary_sources):]):
                orient[g.src] = a
                orient[g.dst] = product_sign if a is P else product_sign.flipped
            entries = tuple(
                IntervalMapEntry(src, dst, orient[src]) for src, dst in pairs
            )
            shadow = FHomeoShadow(strip_map, entries)
            if validate_shadow(surface, shadow).ok:
                shadows.append(shadow)
    return shadows


def direct_abc_filter(surface, shadow):
    """Literal restatement of the three membership conditions."""
    if any(s.target != s.source for s in shadow.strip_map):
        return False
    if any(s.y_flip or s.x_flip for s in shadow.strip_map):
        return False
    entry = {e.source: e for e in shadow.interval_map}
    glued = surface.glued_refs()
    for r in surface.interval_refs():
        if r in glued:
            continue
        e = entry[r]
        if e.target != r or e.orientation is not P:
            return False
    for g in surface.gluings:
        if not surface.is_unique_on_side(g.src) or not surface.is_unique_on_side(g.dst):
            e_src, e_dst = entry[g.src], entry[g.dst]
            if {e_src.target, e_dst.target} != {g.src, g.dst}:
                return False
            if e_src.target == g.src:
                if e_src.orientation is not P:
                    return False
            else:
                # exchanged pair: total action is gluing sign times entry sign
                if g.sign.compose(e_src.orientation) is not P:
                    return False
    return True


def shadow_key(shadow):
    """Order-independent identity of a shadow, for set comparisons."""
    strips = tuple(sorted(
        (s.source, s.target, s.y_flip, s.x_flip) for s in shadow.strip_map
    ))
    entries = tuple(sorted(
        (e.source.sort_key, e.target.sort_key, e.orientation.value)
        for e in shadow.interval_map
    ))
    return strips, entries
