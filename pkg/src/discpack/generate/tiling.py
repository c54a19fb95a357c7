"""Edge-length-2 tilings and their correspondence with c4, c7 and c2 packings.

Large discs sit at tiling vertices.  Squares hold one small disc (c4),
rhombi a tangent pair along the long diagonal (c7) and the six-sided
hexagon6 tile a cluster of three (c2).
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np
from scipy.spatial import cKDTree

from ..errors import (
    DescriptorError,
    InvalidTilingError,
    NonCompactError,
    PatchFormatError,
    SingleSizeWarning,
)
from ..geometry import LARGE, SMALL, TWO_PI
from ..model import Disc, Patch, _num, build_tangency_graph, corona_of, lattice_coords, periodize
from ..radii import RadiusClass, get_class

EDGE = 2.0
EDGE_TOL = 1e-9
ANGLE_TOL = 1e-9
MATCH_TOL = 1e-6


class FaceKind(Enum):
    TRIANGLE = "triangle"
    SQUARE = "square"
    RHOMBUS = "rhombus"
    HEXAGON6 = "hexagon6"

    @property
    def corners(self) -> int:
        return {"triangle": 3, "square": 4, "rhombus": 4, "hexagon6": 6}[self.value]


CLASS_KINDS = {
    "c4": frozenset({FaceKind.TRIANGLE, FaceKind.SQUARE}),
    "c7": frozenset({FaceKind.TRIANGLE, FaceKind.RHOMBUS}),
    "c2": frozenset({FaceKind.TRIANGLE, FaceKind.HEXAGON6}),
}

# --- reference shapes ------------------------------------------------------


def rhombus_acute_angle() -> float:
    return 2.0 * math.acos((math.sqrt(17.0) - 1.0) / 4.0)


@lru_cache(maxsize=None)
def hexagon6_geometry() -> dict:
    """Canonical c2 hexagon centred at the origin.

    Corners alternate E (wide) and V (narrow), starting with E at 30 degrees.
    V corners lie on the rays through the three small discs; E corners are
    placed so each touches two of them.
    """
    r = get_class("c2").value
    d = 2.0 * r / math.sqrt(3.0)
    v = d + 1.0 + r
    e = d / 2.0 + math.sqrt((1.0 + r) ** 2 - 0.75 * d * d)
    pts = []
    labels = []
    for k in range(6):
        ang = math.radians(30 + 60 * k)
        rad = e if k % 2 == 0 else v
        pts.append((rad * math.cos(ang), rad * math.sin(ang)))
        labels.append("E" if k % 2 == 0 else "V")
    angles = _corner_angles(np.array(pts))
    return {
        "points": tuple(pts),
        "labels": tuple(labels),
        "small_offset": d,
        "angle_E": float(angles[0]),
        "angle_V": float(angles[1]),
    }


def _corner_angles(poly: np.ndarray) -> np.ndarray:
    """Interior angles of a counter-clockwise polygon."""
    nxt = np.roll(poly, -1, axis=0) - poly
    prv = np.roll(poly, 1, axis=0) - poly
    cross = nxt[:, 0] * prv[:, 1] - nxt[:, 1] * prv[:, 0]
    dot = (nxt * prv).sum(axis=1)
    return np.mod(np.arctan2(cross, dot), TWO_PI)


def _signed_area(poly: np.ndarray) -> float:
    x, y = poly[:, 0], poly[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))


def _expected_angles(kind: FaceKind) -> list[list[float]]:
    """Admissible cyclic angle sequences (up to rotation) for a face kind."""
    if kind is FaceKind.TRIANGLE:
        return [[math.pi / 3] * 3]
    if kind is FaceKind.SQUARE:
        return [[math.pi / 2] * 4]
    if kind is FaceKind.RHOMBUS:
        a = rhombus_acute_angle()
        return [[a, math.pi - a] * 2]
    h = hexagon6_geometry()
    return [[h["angle_E"], h["angle_V"]] * 3]


def _matches_angles(angles: np.ndarray, kind: FaceKind) -> bool:
    n = len(angles)
    for seq in _expected_angles(kind):
        if len(seq) != n:
            continue
        for shift in range(n):
            if all(abs(angles[(k + shift) % n] - seq[k]) <= ANGLE_TOL for k in range(n)):
                return True
    return False


# --- tiling type -----------------------------------------------------------

Offset = tuple[int, int]


@dataclass(frozen=True)
class Face:
    kind: FaceKind
    vertices: tuple[int, ...]
    offsets: tuple[Offset, ...] | None = None


@dataclass(frozen=True)
class Tiling:
    """Polygons with unit-free edge length 2, optionally periodic.

    In a periodic tiling a face corner is ``vertices[i] + offset`` in the
    lattice spanned by ``periods``.
    """

    vertices: tuple[tuple[float, float], ...]
    faces: tuple[Face, ...]
    periods: tuple[tuple[float, float], tuple[float, float]] | None = None

    def polygon(self, face: Face) -> np.ndarray:
        pts = np.array([self.vertices[i] for i in face.vertices], dtype=float)
        if face.offsets is not None and self.periods is not None:
            basis = np.array(self.periods, dtype=float)
            pts = pts + np.array(face.offsets, dtype=float) @ basis
        return pts

    def polygons(self) -> list[np.ndarray]:
        return [self.polygon(f) for f in self.faces]

    def kind_counts(self) -> dict[FaceKind, int]:
        out: dict[FaceKind, int] = {}
        for f in self.faces:
            out[f.kind] = out.get(f.kind, 0) + 1
        return out

    @classmethod
    def from_polygons(cls, items, periods=None, tol: float = 1e-7) -> "Tiling":
        """Build a tiling from ``(kind, corner array)`` pairs.

        Corners closer than ``tol`` (modulo the lattice when ``periods`` is
        given) become one vertex, polygons are oriented counter-clockwise, and
        faces that coincide up to a lattice translation are kept once.
        """
        polys = []
        for kind, pts in items:
            poly = np.asarray(pts, dtype=float).reshape(-1, 2)
            if _signed_area(poly) < 0:
                poly = poly[::-1]
            polys.append((FaceKind(kind), poly))
        if not polys:
            return cls((), (), periods)
        corners = np.concatenate([p for _, p in polys])
        if periods is None:
            tree = cKDTree(corners)
            reps = _cluster(tree, corners, tol)
            verts = [tuple(map(float, corners[i])) for i in sorted(set(reps))]
            index = {old: new for new, old in enumerate(sorted(set(reps)))}
            faces, seen, pos = [], set(), 0
            for kind, poly in polys:
                ids = tuple(index[reps[pos + k]] for k in range(len(poly)))
                pos += len(poly)
                key = (kind, frozenset(ids))
                if key not in seen:
                    seen.add(key)
                    faces.append(Face(kind, ids))
            return cls(tuple(verts), tuple(faces), None)

        per = (tuple(map(float, periods[0])), tuple(map(float, periods[1])))
        basis = np.array(per, dtype=float)
        frac = lattice_coords(corners, per)
        frac -= np.floor(frac)
        frac[frac >= 1.0 - 1e-12] = 0.0
        scale = min(np.linalg.norm(basis[0]), np.linalg.norm(basis[1]))
        tree = cKDTree(frac, boxsize=[1.0, 1.0])
        reps = _cluster(tree, frac, tol / scale)
        rep_ids = sorted(set(reps))
        index = {old: new for new, old in enumerate(rep_ids)}
        verts = [tuple(map(float, frac[i] @ basis)) for i in rep_ids]
        vert_arr = np.array(verts)
        faces, seen, pos = [], set(), 0
        for kind, poly in polys:
            ids, offs = [], []
            for k in range(len(poly)):
                vid = index[reps[pos + k]]
                lc = lattice_coords(poly[k] - vert_arr[vid], per)[0]
                ids.append(vid)
                offs.append((int(round(lc[0])), int(round(lc[1]))))
            pos += len(poly)
            ids_t, offs_t = _normalize_face(ids, offs)
            key = (kind, ids_t, offs_t)
            if key not in seen:
                seen.add(key)
                faces.append(Face(kind, ids_t, offs_t))
        return cls(tuple(verts), tuple(faces), per)


def _cluster(tree: cKDTree, pts: np.ndarray, tol: float) -> list[int]:
    reps = [-1] * len(pts)
    for i in range(len(pts)):
        if reps[i] >= 0:
            continue
        for j in tree.query_ball_point(pts[i], tol):
            if reps[j] < 0:
                reps[j] = i
        reps[i] = i
    return reps


def _normalize_face(ids, offs):
    """Rotate to a canonical start and make offsets relative to it."""
    n = len(ids)
    best = None
    for s in range(n):
        base = offs[s]
        key = tuple(
            (ids[(s + m) % n], (offs[(s + m) % n][0] - base[0], offs[(s + m) % n][1] - base[1]))
            for m in range(n)
        )
        if best is None or key < best:
            best = key
    return tuple(k[0] for k in best), tuple(k[1] for k in best)


# --- validation ------------------------------------------------------------


def validate_tiling(t: Tiling, kinds=None) -> None:
    """Raise :class:`InvalidTilingError` naming the first violated invariant."""
    if not t.faces:
        raise InvalidTilingError("tiling has no faces")
    if kinds is not None:
        bad = [f.kind.value for f in t.faces if f.kind not in kinds]
        if bad:
            allowed = ", ".join(sorted(k.value for k in kinds))
            raise InvalidTilingError(f"face kind {bad[0]!r} not allowed here (allowed: {allowed})")
    directed = {}
    angle_sum = [0.0] * len(t.vertices)
    for fi, face in enumerate(t.faces):
        n = len(face.vertices)
        if n != face.kind.corners:
            raise InvalidTilingError(f"face {fi}: a {face.kind.value} needs {face.kind.corners} corners, got {n}")
        poly = t.polygon(face)
        if _signed_area(poly) <= 0:
            raise InvalidTilingError(f"face {fi}: corners must be listed counter-clockwise")
        sides = np.linalg.norm(np.roll(poly, -1, axis=0) - poly, axis=1)
        k = int(np.argmax(np.abs(sides - EDGE)))
        if abs(sides[k] - EDGE) > EDGE_TOL:
            raise InvalidTilingError(f"face {fi}: edge {k} has length {sides[k]!r}, every edge must be 2")
        angles = _corner_angles(poly)
        if not _matches_angles(angles, face.kind):
            raise InvalidTilingError(f"face {fi}: corner angles do not match the reference {face.kind.value}")
        offs = face.offsets or ((0, 0),) * n
        for k in range(n):
            a, b = face.vertices[k], face.vertices[(k + 1) % n]
            rel = (offs[(k + 1) % n][0] - offs[k][0], offs[(k + 1) % n][1] - offs[k][1])
            key = (a, b, rel)
            if key in directed:
                raise InvalidTilingError(f"faces {directed[key]} and {fi} overlap along an edge")
            directed[key] = fi
            angle_sum[a] += float(angles[k])
    open_vertex = [False] * len(t.vertices)
    for a, b, rel in directed:
        if (b, a, (-rel[0], -rel[1])) not in directed:
            open_vertex[a] = open_vertex[b] = True
    for v, total in enumerate(angle_sum):
        if total > TWO_PI + ANGLE_TOL:
            raise InvalidTilingError(f"vertex {v}: face angles sum to {total!r}, more than 2*pi")
        if t.periods is not None and open_vertex[v]:
            raise InvalidTilingError(f"vertex {v}: periodic tiling has an unmatched edge")
        if not open_vertex[v] and abs(total - TWO_PI) > ANGLE_TOL:
            raise InvalidTilingError(f"vertex {v}: face angles sum to {total!r}, not 2*pi")


# --- correspondence --------------------------------------------------------


def _class_kinds(rc: RadiusClass) -> frozenset:
    try:
        return CLASS_KINDS[rc.id]
    except KeyError:
        raise DescriptorError(f"class {rc.id} has no tiling correspondence (use c4, c7 or c2)") from None


def face_smalls(kind: FaceKind, poly: np.ndarray, r: float) -> list[tuple[float, float]]:
    """Small-disc centres a face of the given kind carries."""
    centre = poly.mean(axis=0)
    if kind is FaceKind.TRIANGLE:
        return []
    if kind is FaceKind.SQUARE:
        return [tuple(centre)]
    angles = _corner_angles(poly)
    if kind is FaceKind.RHOMBUS:
        k = int(np.argmin(angles))
        u = poly[k] - centre
        u /= np.linalg.norm(u)
        return [tuple(centre + r * u), tuple(centre - r * u)]
    h = hexagon6_geometry()
    out = []
    for k in range(len(poly)):
        if abs(angles[k] - h["angle_V"]) < abs(angles[k] - h["angle_E"]):
            u = poly[k] - centre
            out.append(tuple(centre + h["small_offset"] * u / np.linalg.norm(u)))
    return out


def tiling_to_packing(rc: RadiusClass, t: Tiling) -> Patch:
    """Large disc at every vertex plus the small discs each face carries."""
    validate_tiling(t, _class_kinds(rc))
    discs = [Disc(x, y, LARGE) for x, y in t.vertices]
    for face in t.faces:
        for x, y in face_smalls(face.kind, t.polygon(face), rc.value):
            discs.append(Disc(float(x), float(y), SMALL))
    if t.periods is not None:
        discs = periodize(discs, t.periods)
    if not any(d.size is SMALL for d in discs):
        warnings.warn("tiling has no square, rhombus or hexagon faces; the packing has only large discs", SingleSizeWarning, stacklevel=2)
    return Patch(rc, tuple(discs), t.periods)


def packing_to_tiling(p: Patch) -> Tiling:
    """Join tangent large discs; the resulting faces must be tiles of the class."""
    kinds = _class_kinds(p.radius_class)
    sizes = {d.size for d in p.discs}
    if sizes != {LARGE, SMALL}:
        raise InvalidTilingError("both disc sizes must be present")
    g = build_tangency_graph(p)
    for i, d in enumerate(p.discs):
        if (p.is_periodic or d.size is SMALL) and corona_of(p, g, i) is None:
            raise NonCompactError(f"disc {i} ({d.size.char}) has no closed corona")

    large_nbrs = {
        i: [(j, off) for j, off in g.neighbors[i] if p.discs[j].size is LARGE]
        for i, d in enumerate(p.discs)
        if d.size is LARGE
    }
    quad_kind = FaceKind.SQUARE if FaceKind.SQUARE in kinds else FaceKind.RHOMBUS
    by_size = {3: FaceKind.TRIANGLE, 4: quad_kind, 6: FaceKind.HEXAGON6}

    visited = set()
    items = []
    for u in sorted(large_nbrs):
        for v, o in large_nbrs[u]:
            if (u, v, o) in visited:
                continue
            cycle = [(u, (0, 0))]
            cu, cv, co, absolute = u, v, o, (0, 0)
            while True:
                visited.add((cu, cv, co))
                absolute = (absolute[0] + co[0], absolute[1] + co[1])
                nbrs = large_nbrs[cv]
                back = nbrs.index((cu, (-co[0], -co[1])))
                w, wo = nbrs[(back - 1) % len(nbrs)]
                cu, cv, co = cv, w, wo
                if (cu, cv, co) == (u, v, o):
                    break
                cycle.append((cu, absolute))
                if len(cycle) > 64:
                    break
            pts = np.array([p.image(i, off) for i, off in cycle])
            if _signed_area(pts) <= 0:
                continue
            if absolute != (0, 0):
                raise NonCompactError("a large-disc face wraps around the period lattice")
            kind = by_size.get(len(cycle))
            if kind is None or kind not in kinds:
                raise NonCompactError(f"large-disc cycle with {len(cycle)} corners is not a tile of class {p.radius_class.id}")
            items.append((kind, pts))

    _match_smalls(p, items)
    t = Tiling.from_polygons(items, p.periods)
    validate_tiling(t, kinds)
    return t


def _match_smalls(p: Patch, items) -> None:
    """Every face must carry exactly its small discs and every small must be used."""
    smalls = [(d.x, d.y) for d in p.discs if d.size is SMALL]
    expected = [s for kind, poly in items for s in face_smalls(kind, poly, p.r)]
    if len(expected) != len(smalls):
        raise NonCompactError(f"faces account for {len(expected)} small discs, patch has {len(smalls)}")
    if not smalls:
        return
    have = np.array(smalls)
    want = np.array(expected)
    if p.periods is not None:
        basis = np.array(p.periods)
        scale = min(np.linalg.norm(basis[0]), np.linalg.norm(basis[1]))
        have = np.mod(lattice_coords(have, p.periods), 1.0)
        want = np.mod(lattice_coords(want, p.periods), 1.0)
        have[have >= 1.0 - 1e-12] = 0.0
        want[want >= 1.0 - 1e-12] = 0.0
        tree = cKDTree(have, boxsize=[1.0, 1.0])
        tol = MATCH_TOL / scale
    else:
        tree = cKDTree(have)
        tol = MATCH_TOL
    dist, idx = tree.query(want)
    if np.any(dist > tol) or len(set(idx.tolist())) != len(idx):
        raise NonCompactError("small discs are not where the faces require them")


# --- congruence ------------------------------------------------------------


def _face_records(t: Tiling):
    recs = []
    for f in t.faces:
        poly = t.polygon(f)
        recs.append((f.kind, poly, poly.mean(axis=0)))
    return recs


def _same_lattice(pa, pb) -> bool:
    for v in pa:
        lc = lattice_coords(v, pb)[0]
        if np.max(np.abs(lc - np.round(lc))) > 1e-6:
            return False
    return abs(abs(np.linalg.det(np.array(pa))) - abs(np.linalg.det(np.array(pb)))) < 1e-6


def tilings_congruent(a: Tiling, b: Tiling, tol: float = MATCH_TOL, reflections: bool = True) -> bool:
    """Whether ``a`` maps onto ``b`` by a rigid motion (face order ignored)."""
    if (a.periods is None) != (b.periods is None):
        return False
    if a.kind_counts() != b.kind_counts():
        return False
    ra, rb = _face_records(a), _face_records(b)
    if not ra:
        return True
    kind0, poly0, _ = ra[0]
    p0, p1 = poly0[0], poly0[1]
    base = math.atan2(p1[1] - p0[1], p1[0] - p0[0])
    cent_b = np.array([c for _, _, c in rb])
    periodic = b.periods is not None
    if periodic:
        basis_b = np.array(b.periods)
        scale = min(np.linalg.norm(basis_b[0]), np.linalg.norm(basis_b[1]))
        frac_b = np.mod(lattice_coords(cent_b, b.periods), 1.0)
        frac_b[frac_b >= 1.0 - 1e-12] = 0.0
        tree = cKDTree(frac_b, boxsize=[1.0, 1.0])
        qtol = tol / scale
    else:
        tree = cKDTree(cent_b)
        qtol = tol
    mirrors = (False, True) if reflections else (False,)
    for kind, poly, _ in rb:
        if kind is not kind0:
            continue
        n = len(poly)
        for k in range(n):
            q0, q1 = poly[k], poly[(k + 1) % n]
            target = math.atan2(q1[1] - q0[1], q1[0] - q0[0])
            for mirror in mirrors:
                for flip in (False, True):
                    m = _motion(base, target, mirror, flip)
                    start = q1 if flip else q0
                    trans = start - m @ p0
                    if _try_motion(m, trans, ra, rb, a, b, tree, qtol, periodic):
                        return True
    return False


def _motion(base: float, target: float, mirror: bool, flip: bool) -> np.ndarray:
    ang = target + (math.pi if flip else 0.0)
    if mirror:
        # reflect across the x-axis first, then rotate
        rot = ang + base
        c, s = math.cos(rot), math.sin(rot)
        return np.array([[c, s], [s, -c]])
    rot = ang - base
    c, s = math.cos(rot), math.sin(rot)
    return np.array([[c, -s], [s, c]])


def _try_motion(m, trans, ra, rb, a, b, tree, qtol, periodic) -> bool:
    if periodic:
        moved = tuple(tuple(m @ np.array(v)) for v in a.periods)
        if not _same_lattice(moved, b.periods):
            return False
    used = set()
    for kind, poly, cent in ra:
        c = m @ cent + trans
        q = np.mod(lattice_coords(c, b.periods)[0], 1.0) if periodic else c
        if periodic:
            q[q >= 1.0 - 1e-12] = 0.0
        dist, idx = tree.query(q)
        if dist > qtol or idx in used or rb[idx][0] is not kind:
            return False
        moved_poly = poly @ m.T + trans
        target = rb[idx][1]
        shift = rb[idx][2] - (m @ cent + trans)
        moved_poly = moved_poly + shift
        for pt in moved_poly:
            if np.min(np.linalg.norm(target - pt, axis=1)) > 1e-5:
                return False
        used.add(idx)
    return len(used) == len(rb)


# --- file format -----------------------------------------------------------


def dump_tiling(t: Tiling) -> str:
    lines = ["{"]
    if t.periods is not None:
        vecs = ", ".join(f"[{_num(x)}, {_num(y)}]" for x, y in t.periods)
        lines.append(f'  "periods": [{vecs}],')
    lines.append('  "vertices": [')
    for k, (x, y) in enumerate(t.vertices):
        comma = "," if k + 1 < len(t.vertices) else ""
        lines.append(f"    [{_num(x)}, {_num(y)}]{comma}")
    lines.append("  ],")
    lines.append('  "faces": [')
    for k, f in enumerate(t.faces):
        comma = "," if k + 1 < len(t.faces) else ""
        body = f'"kind": "{f.kind.value}", "vertices": [{", ".join(map(str, f.vertices))}]'
        if f.offsets is not None:
            body += ', "offsets": [' + ", ".join(f"[{a}, {b}]" for a, b in f.offsets) + "]"
        lines.append(f"    {{{body}}}{comma}")
    lines.append("  ]")
    lines.append("}")
    return "\n".join(lines) + "\n"


def load_tiling(text: str) -> Tiling:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PatchFormatError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise PatchFormatError("top level: expected an object")
    for key in ("vertices", "faces"):
        if not isinstance(doc.get(key), list):
            raise PatchFormatError(f"{key}: expected a list")
    try:
        verts = tuple((float(x), float(y)) for x, y in doc["vertices"])
    except (TypeError, ValueError):
        raise PatchFormatError("vertices: expected a list of [x, y] pairs") from None
    periods = doc.get("periods")
    if periods is not None:
        if not isinstance(periods, list) or len(periods) != 2:
            raise PatchFormatError("periods: expected two period vectors")
        periods = tuple((float(x), float(y)) for x, y in periods)
    faces = []
    for k, f in enumerate(doc["faces"]):
        try:
            kind = FaceKind(f["kind"])
        except (KeyError, TypeError, ValueError):
            raise PatchFormatError(f"faces[{k}].kind: expected one of triangle, square, rhombus, hexagon6") from None
        ids = f.get("vertices")
        if not isinstance(ids, list) or not all(isinstance(i, int) and 0 <= i < len(verts) for i in ids):
            raise PatchFormatError(f"faces[{k}].vertices: expected indices into the vertex list")
        offs = f.get("offsets")
        if offs is not None:
            if len(offs) != len(ids):
                raise PatchFormatError(f"faces[{k}].offsets: expected one offset per vertex")
            offs = tuple((int(a), int(b)) for a, b in offs)
        faces.append(Face(kind, tuple(ids), offs))
    return Tiling(verts, tuple(faces), periods)
