"""Exact-arithmetic toolkit for surfaces glued from strips.

Surfaces are built from model strips R x (-1,1) with rational boundary
intervals, glued pairwise by affine maps.  The package classifies the
leaves of the canonical horizontal foliation, rewrites surfaces to
reduced normal form (detecting the cylinder / Moebius band exceptions),
decides identity-component membership for foliation-preserving
homeomorphism shadows, and evaluates the explicit homeomorphisms and
isotopies numerically.
"""

from .model import (
    AffineMap,
    BoundaryInterval,
    Diagnostics,
    Gluing,
    GluingSign,
    IntervalRef,
    Issue,
    ModelStrip,
    Rational,
    Side,
    StrippedSurface,
    affine_gluing_map,
    make_surface,
    rational,
    strip_components,
    validate_strip,
    validate_surface,
)
from .dsl import ParseError, SourceSpan, emit_json, parse_surface, serialize_surface
from .leaves import LeafKind, LeafRecord, SigmaSet, classify_leaves, is_reduced, sigma_set
from .reduction import (
    ComponentReduction,
    ComponentShape,
    FlipAxis,
    ReductionGraph,
    ReductionOutcome,
    Verdict,
    build_graph,
    classify_component,
    close_loop_classify,
    flip_strip,
    merge_along,
    orientable,
    reduce,
)
from .homeo import (
    FHomeoShadow,
    H0Verdict,
    IntervalMapEntry,
    IsotopyWitness,
    StripSample,
    StripSymmetry,
    check_identity_component,
    compose_shadows,
    identity_shadow,
    invert_shadow,
    isotopy_witness,
    validate_shadow,
)
from .numeric import (
    PLMonotoneMap,
    SampledGrid,
    chain_homeo,
    contraction_isotopy,
    emit_csv,
    emit_svg,
    equivariance_residual,
    merge_homeo_banded,
    merge_homeo_raw,
    q_deformation_isotopy,
    sample_map,
    sigma,
    sigma_prime,
)

__version__ = "0.1.0"
