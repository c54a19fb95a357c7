"""Families built on the triangular lattice: c5, c6, c8 and c9."""

from __future__ import annotations

import math

from ..errors import DescriptorError, IndependentSetError
from ..geometry import LARGE, SMALL
from ..model import MIN_PERIOD, Disc, Patch, periodize
from ..radii import RadiusClass
from .descriptors import C5Substitute, C6Unique, C8Fill, C9Fill

SQRT3 = math.sqrt(3.0)
NEIGHBOURS = ((1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1))


def lattice_point(i: int, j: int, spacing: float) -> tuple[float, float]:
    return spacing * (i + 0.5 * j), spacing * (SQRT3 / 2.0) * j


def lattice_periods(extent, spacing: float):
    nx, ny = extent
    per = ((nx * spacing, 0.0), (ny * spacing * 0.5, ny * spacing * SQRT3 / 2.0))
    if min(nx, ny) * spacing <= MIN_PERIOD:
        raise DescriptorError(
            f"periodic extent {extent} gives a period of length {min(nx, ny) * spacing:.4g}; "
            f"periods must exceed {MIN_PERIOD}"
        )
    return per


def _finish(rc: RadiusClass, discs: list[Disc], extent, spacing: float, periodic: bool) -> Patch:
    if periodic:
        per = lattice_periods(extent, spacing)
        return Patch(rc, tuple(periodize(discs, per)), per)
    return Patch(rc, tuple(discs))


def all_holes(extent, periodic: bool = True) -> frozenset:
    nx, ny = extent
    if periodic:
        return frozenset((i, j, k) for i in range(nx) for j in range(ny) for k in (0, 1))
    return frozenset((i, j, k) for i in range(nx - 1) for j in range(ny - 1) for k in (0, 1))


def _hole_centroid(i: int, j: int, k: int, spacing: float) -> tuple[float, float]:
    x, y = lattice_point(i, j, spacing)
    f = (1.0 if k == 0 else 2.0) / 3.0
    return x + f * 1.5 * spacing, y + f * spacing * SQRT3 / 2.0


def _large_grid(extent, spacing: float, skip=frozenset()) -> list[Disc]:
    nx, ny = extent
    return [
        Disc(*lattice_point(i, j, spacing), LARGE)
        for j in range(ny)
        for i in range(nx)
        if (i, j) not in skip
    ]


def _check_holes(holes, extent, periodic):
    allowed = all_holes(extent, periodic)
    bad = sorted(set(holes) - allowed)
    if bad:
        raise DescriptorError(f"hole {bad[0]} is outside the extent {extent}")


def generate_c8(rc: RadiusClass, d: C8Fill) -> Patch:
    holes = all_holes(d.extent, d.periodic) if d.holes is None else d.holes
    _check_holes(holes, d.extent, d.periodic)
    discs = _large_grid(d.extent, 2.0)
    for i, j, k in sorted(holes):
        discs.append(Disc(*_hole_centroid(i, j, k, 2.0), SMALL))
    return _finish(rc, discs, d.extent, 2.0, d.periodic)


# Cluster directions: each small disc of a c9 cluster points at an edge midpoint.
_CLUSTER_DIRS = {0: (-90.0, 30.0, 150.0), 1: (90.0, 210.0, 330.0)}


def generate_c9(rc: RadiusClass, d: C9Fill) -> Patch:
    holes = all_holes(d.extent, d.periodic) if d.holes is None else d.holes
    _check_holes(holes, d.extent, d.periodic)
    r = rc.value
    dist = 2.0 * r / SQRT3
    discs = _large_grid(d.extent, 2.0)
    for i, j, k in sorted(holes):
        cx, cy = _hole_centroid(i, j, k, 2.0)
        for deg in _CLUSTER_DIRS[k]:
            a = math.radians(deg)
            discs.append(Disc(cx + dist * math.cos(a), cy + dist * math.sin(a), SMALL))
    return _finish(rc, discs, d.extent, 2.0, d.periodic)


def lattice_adjacent(a, b, extent, periodic: bool) -> bool:
    nx, ny = extent
    for di, dj in NEIGHBOURS:
        ti, tj = a[0] + di, a[1] + dj
        if periodic:
            ti, tj = ti % nx, tj % ny
        if (ti, tj) == tuple(b):
            return True
    return False


def check_independent(points, extent, periodic: bool) -> None:
    nx, ny = extent
    pts = sorted(points)
    for p in pts:
        if not (0 <= p[0] < nx and 0 <= p[1] < ny):
            raise DescriptorError(f"lattice point {p} is outside the extent {extent}")
    for a_idx, a in enumerate(pts):
        for b in pts[a_idx + 1 :]:
            if lattice_adjacent(a, b, extent, periodic):
                raise IndependentSetError(f"substituted points {a} and {b} are adjacent")


def generate_c5(rc: RadiusClass, d: C5Substitute) -> Patch:
    check_independent(d.points, d.extent, d.periodic)
    r = rc.value
    discs = _large_grid(d.extent, 2.0, skip=d.points)
    for i, j in sorted(d.points, key=lambda p: (p[1], p[0])):
        x, y = lattice_point(i, j, 2.0)
        discs.append(Disc(x, y, SMALL))
        for k in range(6):
            a = math.radians(30 + 60 * k)
            discs.append(Disc(x + 2 * r * math.cos(a), y + 2 * r * math.sin(a), SMALL))
    return _finish(rc, discs, d.extent, 2.0, d.periodic)


def c6_spacing(r: float) -> float:
    return 2.0 * math.sqrt(1.0 + 2.0 * r)


def generate_c6(rc: RadiusClass, d: C6Unique) -> Patch:
    r = rc.value
    spacing = c6_spacing(r)
    nx, ny = d.extent
    discs = _large_grid(d.extent, spacing)
    for j in range(ny):
        for i in range(nx):
            x, y = lattice_point(i, j, spacing)
            for di, dj in ((1, 0), (0, 1), (-1, 1)):
                if not d.periodic and not (0 <= i + di < nx and 0 <= j + dj < ny):
                    continue
                ex, ey = lattice_point(di, dj, spacing)
                mx, my = x + ex / 2.0, y + ey / 2.0
                px, py = -ey / spacing, ex / spacing
                discs.append(Disc(mx + r * px, my + r * py, SMALL))
                discs.append(Disc(mx - r * px, my - r * py, SMALL))
    return _finish(rc, discs, d.extent, spacing, d.periodic)
