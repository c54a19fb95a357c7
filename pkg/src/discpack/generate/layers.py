"""Layered families: flattened-hexagon layers (c1) and the two c3 families."""

from __future__ import annotations

import math

import numpy as np

from ..errors import ConsistencyError
from ..geometry import LARGE, SMALL, contact_angles
from ..model import MIN_PERIOD, Disc, Patch, periodize
from ..radii import RadiusClass, get_class
from .descriptors import C1Layers, C3LayersA, C3LayersB

# --- c1 --------------------------------------------------------------------


def flattened_hexagon(r: float) -> tuple[np.ndarray, np.ndarray]:
    """Corners (counter-clockwise from the top) and small-pair centres of the c1 cell."""
    h = math.sqrt(1.0 + 2.0 * r)
    a = r + math.sqrt(r * r + 2.0 * r)
    corners = np.array([(0.0, h), (-a, 1.0), (-a, -1.0), (0.0, -h), (a, -1.0), (a, 1.0)])
    smalls = np.array([(-r, 0.0), (r, 0.0)])
    return corners, smalls


def _c1_thetas(r: float) -> tuple[float, float]:
    ca = contact_angles(r)
    return 2.0 * ca.alpha_prime, 2.0 * ca.alpha_prime + ca.beta


# Corner angles of the flattened hexagon: four THETA1 at the side corners and
# two THETA2 at the top and bottom.
THETA1, THETA2 = _c1_thetas(get_class("c1").value)

# Neighbour of face (i, j) across its edge (d, d+1).
_C1_STEP = ((0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1), (1, 0))
_C1_AXIS = {0: 0, 1: 2}


def _rigid(a, b, p, q):
    """Rotation and translation taking segment a->b onto p->q."""
    ang = math.atan2(q[1] - p[1], q[0] - p[0]) - math.atan2(b[1] - a[1], b[0] - a[0])
    c, s = math.cos(ang), math.sin(ang)
    m = np.array([[c, -s], [s, c]])
    return m, np.asarray(p) - m @ np.asarray(a)


class _C1Face:
    __slots__ = ("axis", "m", "t", "corners", "smalls")

    def __init__(self, axis, m, t, proto, proto_smalls):
        self.axis = axis
        self.m = m
        self.t = t
        world = proto @ m.T + t
        self.corners = [world[(c - axis) % 6] for c in range(6)]
        self.smalls = proto_smalls @ m.T + t


def _c1_neighbour(f: _C1Face, d: int, axis: int, proto, proto_smalls) -> _C1Face:
    a = proto[(d + 4 - axis) % 6]
    b = proto[(d + 3 - axis) % 6]
    m, t = _rigid(a, b, f.corners[d], f.corners[(d + 1) % 6])
    return _C1Face(axis, m, t, proto, proto_smalls)


def generate_c1(rc: RadiusClass, d: C1Layers) -> Patch:
    proto, proto_smalls = flattened_hexagon(rc.value)
    bits = list(d.bits)
    axes = [_C1_AXIS[b] for b in bits]

    def develop(ncols, nrows):
        faces = {}
        faces[(0, 0)] = _C1Face(axes[0], np.eye(2), np.zeros(2), proto, proto_smalls)
        for j in range(nrows + 1):
            ax = axes[j % len(axes)]
            if j > 0:
                faces[(0, j)] = _c1_neighbour(faces[(0, j - 1)], 0, ax, proto, proto_smalls)
            if j < nrows:
                for i in range(1, ncols + 1):
                    faces[(i, j)] = _c1_neighbour(faces[(i - 1, j)], 5, ax, proto, proto_smalls)
        return faces

    # grow the period until both lattice vectors exceed the minimum length
    faces = develop(1, len(axes))
    u = faces[(1, 0)].t - faces[(0, 0)].t
    w = faces[(0, len(axes))].t - faces[(0, 0)].t
    ncols = max(d.extent, math.floor(MIN_PERIOD / np.linalg.norm(u)) + 1)
    reps = math.floor(MIN_PERIOD / np.linalg.norm(w)) + 1
    nrows = len(axes) * reps
    faces = develop(ncols, nrows)
    _check_c1(faces)
    top = faces[(0, nrows)]
    if np.max(np.abs(top.m - faces[(0, 0)].m)) > 1e-12:
        raise ConsistencyError("c1 layer stack does not repeat with its bit pattern")
    periods = (tuple(ncols * u), tuple(top.t - faces[(0, 0)].t))
    discs = []
    for j in range(nrows):
        for i in range(ncols):
            f = faces[(i, j)]
            discs.extend(Disc(float(x), float(y), LARGE) for x, y in f.corners)
            discs.extend(Disc(float(x), float(y), SMALL) for x, y in f.smalls)
    return Patch(rc, tuple(periodize(discs, periods)), periods)


def _check_c1(faces) -> None:
    for (i, j), f in faces.items():
        for dd, (di, dj) in enumerate(_C1_STEP):
            g = faces.get((i + di, j + dj))
            if g is None:
                continue
            e1 = np.linalg.norm(f.corners[dd] - g.corners[(dd + 4) % 6])
            e2 = np.linalg.norm(f.corners[(dd + 1) % 6] - g.corners[(dd + 3) % 6])
            if max(e1, e2) > 1e-9:
                raise ConsistencyError(f"flattened hexagons {(i, j)} and {(i + di, j + dj)} do not share an edge")


# --- c3 --------------------------------------------------------------------


def _repeat_count(vec, minimum=MIN_PERIOD) -> int:
    return math.floor(minimum / math.hypot(*vec)) + 1


def c3a_layer_geometry(r: float) -> dict:
    y_d = math.sqrt(r * r + 2.0 * r)
    return {"row_step": math.sqrt(3.0), "small_drop": y_d, "small_step": y_d + 1.0 + r}


def generate_c3a(rc: RadiusClass, d: C3LayersA) -> Patch:
    r = rc.value
    geo = c3a_layer_geometry(r)
    word = d.word
    start = word.index("L")
    word = word[start:] + word[:start]
    ncols = max(d.extent, 3)

    def stack(w):
        discs, x, y = [], 0.0, 0.0
        k = 0
        while k < len(w):
            discs.extend(Disc(x + 2.0 * t, y, LARGE) for t in range(ncols))
            nxt = w[(k + 1) % len(w)]
            if nxt == "S":
                for t in range(ncols):
                    discs.append(Disc(x + 1.0 + 2.0 * t, y + geo["small_drop"], SMALL))
                    discs.append(Disc(x + 2.0 * t, y + 1.0 + r, SMALL))
                y += geo["small_step"]
                k += 2
            else:
                y += geo["row_step"]
                k += 1
            x += 1.0
        return discs, (x, y)

    _, vec = stack(word)
    discs, vec = stack(word * _repeat_count(vec))
    periods = ((2.0 * ncols, 0.0), vec)
    return Patch(rc, tuple(periodize(discs, periods)), periods)


def c3b_layer_geometry(r: float) -> dict:
    return {
        "pair_gap": math.sqrt(1.0 + 2.0 * r),
        "layer_step": 1.0 / r,
        "shift": math.sqrt(4.0 - 1.0 / (r * r)),
    }


def generate_c3b(rc: RadiusClass, d: C3LayersB) -> Patch:
    r = rc.value
    geo = c3b_layer_geometry(r)
    p = geo["pair_gap"]
    ncols = max(d.extent, math.floor(MIN_PERIOD / (2.0 * p)) + 1)

    def stack(bits):
        discs, x, y = [], 0.0, 0.0
        for b in bits:
            for t in range(ncols):
                cx = x + 2.0 * p * t
                discs.append(Disc(cx, y, LARGE))
                discs.append(Disc(cx + p, y - r, SMALL))
                discs.append(Disc(cx + p, y + r, SMALL))
            x += geo["shift"] if b == 0 else -geo["shift"]
            y += geo["layer_step"]
        return discs, (x, y)

    _, vec = stack(d.bits)
    discs, vec = stack(d.bits * _repeat_count(vec))
    periods = ((2.0 * p * ncols, 0.0), vec)
    return Patch(rc, tuple(periodize(discs, periods)), periods)
