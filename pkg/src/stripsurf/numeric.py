"""Floating-point evaluators for the explicit homeomorphisms and isotopies.

Everything here preserves the second coordinate bit-exactly (the maps
act along horizontal leaves) and works in float64; the combinatorial
layer stays exact in :mod:`stripsurf.model`.  The hot scalar kernels
live in :mod:`stripsurf.kernels` (compiled when available).

Two variants of the two-strip merge homeomorphism are provided:
``merge_homeo_raw`` follows the piecewise affine-sigma-affine formula
(C^1 across its knots, but not compactly supported in y), while
``merge_homeo_banded`` blends it with the identity so that it is exactly
the identity for |y| >= 1/2.  ``chain_homeo`` repeats the banded map
around every level y = 2n, giving the homeomorphism that swallows an
infinite chain of glued strips while fixing everything outside the bands.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Sequence, Union

from . import kernels
from .errors import BadTimeParameterError, OutOfDomainError
from .model import AffineMap

Point2 = tuple[float, float]


@dataclass(frozen=True)
class PLMonotoneMap:
    """Strictly monotone piecewise-linear map of the real line.

    Defined by breakpoints with strictly increasing inputs and strictly
    monotone outputs; beyond the first/last breakpoint the adjacent
    segment's slope continues affinely, so the map is a bijection of R.
    """

    breakpoints: tuple[tuple[float, float], ...]
    decreasing: bool = False

    def __post_init__(self):
        pts = tuple((float(x), float(y)) for x, y in self.breakpoints)
        object.__setattr__(self, "breakpoints", pts)
        if len(pts) < 2:
            raise ValueError("need at least two breakpoints")
        for x, y in pts:
            if not (math.isfinite(x) and math.isfinite(y)):
                raise ValueError("breakpoints must be finite")
        for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
            if not x0 < x1:
                raise ValueError("breakpoint inputs must be strictly increasing")
            if self.decreasing and not y0 > y1:
                raise ValueError("outputs must be strictly decreasing")
            if not self.decreasing and not y0 < y1:
                raise ValueError("outputs must be strictly increasing")

    @classmethod
    def identity(cls) -> "PLMonotoneMap":
        return cls(((0.0, 0.0), (1.0, 1.0)))

    @cached_property
    def _inputs(self) -> list[float]:
        return [x for x, _ in self.breakpoints]

    def __call__(self, v: float) -> float:
        pts = self.breakpoints
        i = bisect_right(self._inputs, v) - 1
        i = min(max(i, 0), len(pts) - 2)
        (x0, y0), (x1, y1) = pts[i], pts[i + 1]
        return y0 + (v - x0) * (y1 - y0) / (x1 - x0)


LambdaLike = Union[PLMonotoneMap, Callable[[float, float], float]]


def _eval_lambda(lam: LambdaLike, x: float, y: float) -> float:
    if isinstance(lam, PLMonotoneMap):
        return lam(x)
    return lam(x, y)


def _check_strip_point(p: Point2) -> tuple[float, float]:
    x, y = float(p[0]), float(p[1])
    if not (math.isfinite(x) and math.isfinite(y)):
        raise OutOfDomainError(f"non-finite point ({x}, {y})")
    if abs(y) >= 1.0:
        raise OutOfDomainError(f"|y| >= 1 at ({x}, {y})")
    return x, y


def _check_t(t: float) -> float:
    t = float(t)
    if not (0.0 <= t <= 1.0):
        raise BadTimeParameterError(f"t = {t} outside [0, 1]")
    return t


def sigma(t: float) -> float:
    """Odd increasing C-infinity bijection of R onto (-1, 1)."""
    return kernels.sigma(t)


def sigma_prime(t: float) -> float:
    """Derivative of sigma; everywhere positive."""
    return kernels.sigma_prime(t)


def merge_homeo_raw(p: Point2) -> Point2:
    """Piecewise merge map on R x (-1, 1): sigma between the knots
    x = +-1/|y|, tangent-line affine beyond them, sigma itself on y = 0."""
    x, y = _check_strip_point(p)
    return kernels.merge_raw_x(x, y), y


def merge_homeo_banded(p: Point2) -> Point2:
    """Raw merge map blended with the identity: with rho = min(2|y|, 1)
    returns rho*x + (1-rho)*raw(x, y), hence exactly the identity for
    |y| >= 1/2 and equal to the raw map on y = 0."""
    x, y = _check_strip_point(p)
    return kernels.merge_banded_x(x, y), y


def chain_homeo(p: Point2) -> Point2:
    """Banded merge map repeated around every line y = 2n; the identity
    outside the bands |y - 2n| < 1/2."""
    x, y = float(p[0]), float(p[1])
    if not (math.isfinite(x) and math.isfinite(y)):
        raise OutOfDomainError(f"non-finite point ({x}, {y})")
    return kernels.chain_x(x, y), y


def contraction_isotopy(lam: LambdaLike, p: Point2, t: float) -> Point2:
    """Straight-line isotopy ((1-t)*lambda(x,y) + t*x, y) from the strip
    map (lambda, id) at t=0 to the identity at t=1."""
    t = _check_t(t)
    x, y = float(p[0]), float(p[1])
    return (1.0 - t) * _eval_lambda(lam, x, y) + t * x, y


def q_deformation_isotopy(lam: LambdaLike, mu: PLMonotoneMap, p: Point2, t: float) -> Point2:
    """Isotopy (lambda(x,y), t*y + (1-t)*mu(y)) deforming the y-component
    to the identity while the x-component stays frozen."""
    t = _check_t(t)
    x, y = float(p[0]), float(p[1])
    return _eval_lambda(lam, x, y), t * y + (1.0 - t) * mu(y)


def equivariance_residual(
    phi: AffineMap,
    lambda_src: PLMonotoneMap,
    lambda_dst: PLMonotoneMap,
    ts: Sequence[float],
    xs: Sequence[float],
) -> float:
    """max |phi(G_t(x)) - G'_t(phi(x))| over the sample points, where G_t
    and G'_t are the straight-line contractions of the two lambdas.

    Algebraically zero whenever phi conjugates lambda_src to lambda_dst
    (phi o lambda_src = lambda_dst o phi), because phi is affine.
    """
    u, v = float(phi.slope), float(phi.intercept)
    worst = 0.0
    for t in ts:
        t = float(t)
        for x in xs:
            x = float(x)
            left = u * ((1.0 - t) * lambda_src(x) + t * x) + v
            px = u * x + v
            right = (1.0 - t) * lambda_dst(px) + t * px
            worst = max(worst, abs(left - right))
    return worst


# -- grid sampling and export ----------------------------------------------


@dataclass(frozen=True)
class SampledGrid:
    """Images of a regular grid; inputs are implied by ranges and counts."""

    x_range: tuple[float, float]
    y_range: tuple[float, float]
    nx: int
    ny: int
    values: tuple[tuple[float, float], ...]  # row-major, y outer

    def input_axis(self, lo: float, hi: float, n: int) -> list[float]:
        return [lo + i * (hi - lo) / (n - 1) for i in range(n)]

    @property
    def xs(self) -> list[float]:
        return self.input_axis(self.x_range[0], self.x_range[1], self.nx)

    @property
    def ys(self) -> list[float]:
        return self.input_axis(self.y_range[0], self.y_range[1], self.ny)


_KERNEL_KINDS = {"raw": kernels.RAW, "banded": kernels.BANDED, "chain": kernels.CHAIN}


def sample_map(
    name: str,
    *,
    nx: int,
    ny: int,
    x_range: tuple[float, float],
    y_range: tuple[float, float],
    t: float = 0.0,
    lam: LambdaLike | None = None,
    mu: PLMonotoneMap | None = None,
) -> SampledGrid:
    """Sample one of the named maps over a regular nx-by-ny grid.

    Names: raw | banded | chain | contraction | qdef.  The isotopy maps
    take the time ``t`` plus PL data (identity by default).
    """
    if nx < 2 or ny < 2:
        raise ValueError("grid counts must be >= 2")
    grid = SampledGrid(
        (float(x_range[0]), float(x_range[1])),
        (float(y_range[0]), float(y_range[1])),
        int(nx),
        int(ny),
        (),
    )
    xs, ys = grid.xs, grid.ys
    if name in _KERNEL_KINDS:
        if name != "chain":
            for y in ys:
                if abs(y) >= 1.0:
                    raise OutOfDomainError(f"row y = {y} outside (-1, 1) for map {name!r}")
        flat = kernels.sample_rows(_KERNEL_KINDS[name], xs, ys)
        values = tuple(
            (flat[j * len(xs) + i], ys[j]) for j in range(len(ys)) for i in range(len(xs))
        )
    elif name == "contraction":
        lam = lam or PLMonotoneMap.identity()
        values = tuple(contraction_isotopy(lam, (x, y), t) for y in ys for x in xs)
    elif name == "qdef":
        lam = lam or PLMonotoneMap.identity()
        mu = mu or PLMonotoneMap.identity()
        values = tuple(q_deformation_isotopy(lam, mu, (x, y), t) for y in ys for x in xs)
    else:
        raise ValueError(f"unknown map name {name!r}")
    return SampledGrid(grid.x_range, grid.y_range, grid.nx, grid.ny, values)


def _fmt(v: float) -> str:
    return f"{v:.17g}"


def emit_csv(grid: SampledGrid) -> str:
    """CSV with columns x,y,xp,yp at 17 significant digits."""
    xs, ys = grid.xs, grid.ys
    lines = ["x,y,xp,yp"]
    idx = 0
    for y in ys:
        for x in xs:
            xp, yp = grid.values[idx]
            lines.append(f"{_fmt(x)},{_fmt(y)},{_fmt(xp)},{_fmt(yp)}")
            idx += 1
    return "\n".join(lines) + "\n"


def emit_svg(grid: SampledGrid) -> str:
    """One polyline per grid row: the images of the horizontal leaves.

    SVG's y axis points down, so y coordinates are negated; the viewBox
    comes from the input ranges.
    """
    (x0, x1), (y0, y1) = grid.x_range, grid.y_range
    width, height = x1 - x0, y1 - y0
    stroke = f"{max(width, height) / 200:.6g}"
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{x0:.9g} {-y1:.9g} {width:.9g} {height:.9g}">'
    ]
    for j in range(grid.ny):
        row = grid.values[j * grid.nx : (j + 1) * grid.nx]
        points = " ".join(f"{xp:.9g},{-yp:.9g}" for xp, yp in row)
        out.append(
            f'  <polyline fill="none" stroke="black" stroke-width="{stroke}" points="{points}"/>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
