"""Tiling assembly: straight-row stacks (c4, c7) and c2 hexagon tilings."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

import numpy as np

from ..errors import DescriptorError
from ..geometry import TWO_PI
from ..model import MIN_PERIOD
from .tiling import FaceKind, Tiling, _corner_angles, hexagon6_geometry, rhombus_acute_angle

SQRT3 = math.sqrt(3.0)

# --- row stacks ------------------------------------------------------------


@dataclass(frozen=True)
class Row:
    """A strip of parallelogram cells between two horizontal lines.

    ``kind`` is square, rhombus (split never) or triangle (each cell split
    along its short diagonal); ``lean`` is the sign of the top edge's shift.
    """

    kind: FaceKind
    lean: int = 0

    def step(self) -> tuple[float, float]:
        if self.kind is FaceKind.SQUARE:
            return 0.0, 2.0
        if self.kind is FaceKind.TRIANGLE:
            return float(self.lean), SQRT3
        phi = rhombus_acute_angle()
        return 2.0 * self.lean * math.cos(phi), 2.0 * math.sin(phi)


ROW_TOKENS = {
    "S": Row(FaceKind.SQUARE),
    "T+": Row(FaceKind.TRIANGLE, 1),
    "T-": Row(FaceKind.TRIANGLE, -1),
    "R+": Row(FaceKind.RHOMBUS, 1),
    "R-": Row(FaceKind.RHOMBUS, -1),
}


def parse_rows(spec: str) -> list[Row]:
    """Comma- or space-separated row tokens, e.g. ``"S,T+,S,T-"``."""
    rows = []
    for tok in spec.replace(",", " ").split():
        try:
            rows.append(ROW_TOKENS[tok.upper()])
        except KeyError:
            raise DescriptorError(f"unknown row token {tok!r}; use one of {', '.join(ROW_TOKENS)}") from None
    if not rows:
        raise DescriptorError("row list is empty")
    return rows


def row_polygons(rows, width: int, x0: float = 0.0):
    """Faces of the stacked rows and the total (shift, height) of the stack."""
    items = []
    x, y = x0, 0.0
    for row in rows:
        if row.kind is FaceKind.TRIANGLE and row.lean not in (1, -1):
            raise DescriptorError("triangle rows lean by +1 or -1")
        dx, dy = row.step()
        for k in range(width):
            b0 = np.array([x + 2.0 * k, y])
            b1 = b0 + (2.0, 0.0)
            t0 = b0 + (dx, dy)
            t1 = b1 + (dx, dy)
            if row.kind is FaceKind.TRIANGLE:
                if row.lean > 0:
                    items.append((FaceKind.TRIANGLE, [b0, b1, t0]))
                    items.append((FaceKind.TRIANGLE, [b1, t1, t0]))
                else:
                    items.append((FaceKind.TRIANGLE, [b0, b1, t1]))
                    items.append((FaceKind.TRIANGLE, [b0, t1, t0]))
            else:
                items.append((row.kind, [b0, b1, t1, t0]))
        x += dx
        y += dy
    return items, (x - x0, y)


def row_tiling(rows, width: int, periodic: bool = False) -> Tiling:
    """Stack rows of ``width`` cells; periodic stacks repeat until periods exceed 4."""
    rows = list(rows)
    if width < 1:
        raise DescriptorError("row width must be positive")
    if not periodic:
        items, _ = row_polygons(rows, width)
        return Tiling.from_polygons(items)
    width = max(width, math.floor(MIN_PERIOD / 2.0) + 1)
    _, vec = row_polygons(rows, 1)
    reps = math.floor(MIN_PERIOD / math.hypot(*vec)) + 1
    items, vec = row_polygons(rows * reps, width)
    return Tiling.from_polygons(items, ((2.0 * width, 0.0), vec))


def random_row_tiling(kind: FaceKind, rng: random.Random, max_faces: int = 200) -> Tiling:
    """Finite random stack mixing ``kind`` rows with triangle rows of random lean."""
    width = rng.randint(2, 6)
    budget = max_faces // (2 * width)
    nrows = rng.randint(2, max(2, min(budget, 8)))
    rows = []
    for _ in range(nrows):
        lean = rng.choice((1, -1))
        if rng.random() < 0.5:
            rows.append(Row(FaceKind.TRIANGLE, lean))
        elif kind is FaceKind.SQUARE:
            rows.append(Row(FaceKind.SQUARE))
        else:
            rows.append(Row(FaceKind.RHOMBUS, lean))
    if not any(r.kind is kind for r in rows):
        rows[rng.randrange(nrows)] = Row(kind, rng.choice((1, -1)) if kind is FaceKind.RHOMBUS else 0)
    return row_tiling(rows, width)


# --- c2 periodic tilings ---------------------------------------------------


def _hexagon(centre, flip: bool = False) -> np.ndarray:
    pts = np.array(hexagon6_geometry()["points"])
    if flip:
        pts = -pts
    return pts + np.asarray(centre, dtype=float)


def _outward_triangle(p, q) -> np.ndarray:
    """Equilateral triangle on the right of the directed edge p -> q."""
    p, q = np.asarray(p), np.asarray(q)
    e = q - p
    n = np.array([e[1], -e[0]]) / np.linalg.norm(e)
    return np.array([q, p, (p + q) / 2.0 + SQRT3 * n])


def _supercell(cell_items, a, b):
    """Repeat a unit cell until both periods exceed the minimum length."""
    a, b = np.asarray(a), np.asarray(b)
    na = math.floor(MIN_PERIOD / np.linalg.norm(a)) + 1
    nb = math.floor(MIN_PERIOD / np.linalg.norm(b)) + 1
    items = []
    for s in range(na):
        for t in range(nb):
            shift = s * a + t * b
            items.extend((kind, poly + shift) for kind, poly in cell_items)
    return Tiling.from_polygons(items, (tuple(na * a), tuple(nb * b)))


def _rot120(v) -> np.ndarray:
    c, s = -0.5, SQRT3 / 2.0
    return np.array([c * v[0] - s * v[1], s * v[0] + c * v[1]])


def c2_kagome_tiling() -> Tiling:
    """Hexagons meeting only at corners, a triangle on every hexagon edge."""
    hexagon = _hexagon((0.0, 0.0))
    t1 = hexagon[1] - hexagon[4]  # V at 90 degrees minus E at 270 degrees
    t2 = _rot120(t1)
    items = [(FaceKind.HEXAGON6, hexagon)]
    for k in range(6):
        items.append((FaceKind.TRIANGLE, _outward_triangle(hexagon[k], hexagon[(k + 1) % 6])))
    return _supercell(items, t1, t2)


def c2_paired_tiling() -> Tiling:
    """Hexagons sharing every other edge with a point-reflected partner.

    Each hexagon pair is ringed by triangles, so six-triangle vertices occur too.
    """
    up = _hexagon((0.0, 0.0))
    c0 = up[0] + up[1]
    down = _hexagon(c0, flip=True)
    a = c0 - _rot120(c0)
    b = c0 - _rot120(_rot120(c0))
    items = [(FaceKind.HEXAGON6, up), (FaceKind.HEXAGON6, down)]
    for poly in (up, down):
        for k in (1, 3, 5):
            items.append((FaceKind.TRIANGLE, _outward_triangle(poly[k], poly[(k + 1) % 6])))
    return _supercell(items, a, b)


# --- c2 growth -------------------------------------------------------------

# Admissible corner sequences around a c2 vertex (V/E hexagon corners, T triangles).
C2_VERTEX_ATLAS = ("TTTTTT", "VETT", "VTET")
_EPS = 1e-6


class _Grower:
    """Depth-first face placement around the open vertex nearest the origin."""

    def __init__(self, rng: random.Random, node_limit: int):
        geo = hexagon6_geometry()
        hexagon = np.array(geo["points"])
        tri = np.array([(0.0, 0.0), (2.0, 0.0), (1.0, SQRT3)])
        self.protos = [
            (FaceKind.HEXAGON6, hexagon, geo["labels"], _corner_angles(hexagon)),
            (FaceKind.TRIANGLE, tri, ("T", "T", "T"), _corner_angles(tri)),
        ]
        self.span = {"V": geo["angle_V"], "E": geo["angle_E"], "T": math.pi / 3}
        self.rng = rng
        self.nodes = 0
        self.node_limit = node_limit
        self.verts: list[np.ndarray] = []
        self.corners: list[list[tuple[float, float, str]]] = []
        self.faces: list[tuple[FaceKind, np.ndarray, list[int]]] = []

    def _find(self, p):
        for i, q in enumerate(self.verts):
            if abs(p[0] - q[0]) < _EPS and abs(p[1] - q[1]) < _EPS:
                return i
        return None

    def _consistent(self, corners) -> bool:
        total = sum(c[1] for c in corners)
        if total > TWO_PI + 1e-7:
            return False
        first = corners[0][0]
        for cfg in C2_VERTEX_ATLAS:
            n = len(cfg)
            for seq in (cfg, cfg[::-1]):
                for o in range(n):
                    starts, a = [], first
                    for t in range(n):
                        lab = seq[(o + t) % n]
                        starts.append((a, lab))
                        a += self.span[lab]
                    if all(
                        any(abs((c[0] - s + math.pi) % TWO_PI - math.pi) < _EPS and lab == c[2] for s, lab in starts)
                        for c in corners
                    ):
                        return True
        return False

    def _overlaps(self, poly) -> bool:
        centre = poly.mean(axis=0)
        for _, other, _ in self.faces:
            if np.linalg.norm(other.mean(axis=0) - centre) > 8.0:
                continue
            if _sat_overlap(poly, other):
                return True
        return False

    def _place(self, proto, ci, p, q):
        kind, pts, labels, angs = proto
        n = len(pts)
        a, b = pts[ci], pts[(ci + 1) % n]
        ang = math.atan2(q[1] - p[1], q[0] - p[0]) - math.atan2(b[1] - a[1], b[0] - a[0])
        c, s = math.cos(ang), math.sin(ang)
        m = np.array([[c, -s], [s, c]])
        order = [(ci + k) % n for k in range(n)]
        poly = (pts[order] - a) @ m.T + p
        return kind, poly, [labels[k] for k in order], [float(angs[k]) for k in order]

    def _add(self, kind, poly, labels, angs) -> bool:
        if self._overlaps(poly):
            return False
        n = len(poly)
        starts = [math.atan2(*(poly[(k + 1) % n] - poly[k])[::-1]) for k in range(n)]
        ids = [self._find(pt) for pt in poly]
        for k in range(n):
            existing = self.corners[ids[k]] if ids[k] is not None else []
            if not self._consistent(existing + [(starts[k], angs[k], labels[k])]):
                return False
        for k in range(n):
            if ids[k] is None:
                self.verts.append(poly[k])
                self.corners.append([])
                ids[k] = len(self.verts) - 1
            self.corners[ids[k]].append((starts[k], angs[k], labels[k]))
        self.faces.append((kind, poly, ids))
        return True

    def _remove_last(self):
        _, _, ids = self.faces.pop()
        for i in ids:
            self.corners[i].pop()
        while self.verts and not self.corners[-1]:
            self.verts.pop()
            self.corners.pop()

    def _open_vertex(self):
        best = None
        for i, p in enumerate(self.verts):
            cs = self.corners[i]
            if cs and sum(c[1] for c in cs) < TWO_PI - 1e-7:
                d = float(p @ p)
                if best is None or d < best[0] - 1e-9:
                    best = (d, i)
        return None if best is None else best[1]

    def _gap_edge(self, i):
        cs = self.corners[i]
        p = self.verts[i]
        for st, sp, _ in cs:
            e = st + sp
            if not any(abs((e - c[0] + math.pi) % TWO_PI - math.pi) < _EPS for c in cs):
                return p, p + 2.0 * np.array([math.cos(e), math.sin(e)])
        raise AssertionError("open vertex without a free edge")

    def grow(self, nfaces: int) -> bool:
        kind, pts, labels, angs = self.protos[0]
        self._add(kind, pts.copy(), list(labels), [float(a) for a in angs])
        return self._extend(nfaces)

    def _extend(self, nfaces: int) -> bool:
        if len(self.faces) >= nfaces:
            return True
        self.nodes += 1
        if self.nodes > self.node_limit:
            return False
        i = self._open_vertex()
        p, q = self._gap_edge(i)
        # hexagon by a V corner, by an E corner, or a triangle
        cands = [(self.protos[0], 1), (self.protos[0], 0), (self.protos[1], 0)]
        self.rng.shuffle(cands)
        for proto, ci in cands:
            placed = self._place(proto, ci, p, q)
            if self._add(*placed):
                if self._extend(nfaces):
                    return True
                self._remove_last()
                if self.nodes > self.node_limit:
                    return False
        return False


def _sat_overlap(a: np.ndarray, b: np.ndarray) -> bool:
    """Interiors of two convex polygons intersect (touching does not count)."""
    for poly in (a, b):
        n = len(poly)
        for k in range(n):
            e = poly[(k + 1) % n] - poly[k]
            normal = np.array([e[1], -e[0]])
            pa, pb = a @ normal, b @ normal
            if pa.max() <= pb.min() + 1e-6 or pb.max() <= pa.min() + 1e-6:
                return False
    return True


def _edges_are_contacts(t: Tiling) -> bool:
    """Every pair of vertices at distance 2 is joined by a tiling edge."""
    from scipy.spatial import cKDTree

    pts = np.array(t.vertices)
    contacts = cKDTree(pts).query_pairs(2.0 + 1e-6)
    edges = set()
    for f in t.faces:
        n = len(f.vertices)
        for k in range(n):
            a, b = f.vertices[k], f.vertices[(k + 1) % n]
            edges.add((min(a, b), max(a, b)))
    close = {(a, b) for a, b in contacts if np.linalg.norm(pts[a] - pts[b]) > 2.0 - 1e-6}
    return close <= edges


def grow_c2_tiling(rng: random.Random, nfaces: int = 40, node_limit: int = 4000, restarts: int = 50) -> Tiling:
    """Random finite hexagon/triangle tiling grown outward from the origin."""
    for _ in range(restarts):
        g = _Grower(random.Random(rng.random()), node_limit)
        if not g.grow(nfaces):
            continue
        # stopping can leave a notch whose corners touch; grow a little further
        for extra in range(12):
            t = Tiling.from_polygons([(kind, poly) for kind, poly, _ in g.faces])
            if _edges_are_contacts(t):
                return t
            g.nodes = 0
            if not g._extend(len(g.faces) + 1):
                break
    raise DescriptorError(f"c2 growth did not reach {nfaces} faces after {restarts} restarts")


# --- finite windows --------------------------------------------------------


def window_tiling(t: Tiling, centre, radius: float) -> Tiling:
    """Finite piece of a periodic tiling: faces with centroid within ``radius``.

    Any face whose corners are all already present is added as well, so every
    contact between the window's vertices is a tiling edge.
    """
    if t.periods is None:
        raise DescriptorError("window_tiling needs a periodic tiling")
    centre = np.asarray(centre, dtype=float)
    basis = np.array(t.periods)
    reach = radius + 8.0
    n = int(math.ceil(reach / min(np.linalg.norm(basis[0]), np.linalg.norm(basis[1])))) + 1
    shifts = [s * basis[0] + u * basis[1] for s in range(-n - 1, n + 2) for u in range(-n - 1, n + 2)]
    base = [(f.kind, t.polygon(f)) for f in t.faces]
    anchor = np.mean([p.mean(axis=0) for _, p in base], axis=0)
    cands = []
    for shift in shifts:
        if np.linalg.norm(anchor + shift - centre) > reach + np.linalg.norm(basis).item():
            continue
        for kind, poly in base:
            cands.append((kind, poly + shift))
    chosen = [np.linalg.norm(p.mean(axis=0) - centre) <= radius for _, p in cands]
    if not any(chosen):
        raise DescriptorError("window contains no faces")

    def key(pt):
        return (round(float(pt[0]), 6), round(float(pt[1]), 6))

    changed = True
    while changed:
        present = {key(pt) for (_, p), c in zip(cands, chosen) if c for pt in p}
        changed = False
        for k, (_, p) in enumerate(cands):
            if not chosen[k] and all(key(pt) in present for pt in p):
                chosen[k] = True
                changed = True
    return Tiling.from_polygons([item for item, c in zip(cands, chosen) if c])


def random_c2_tiling(rng: random.Random, max_faces: int = 200) -> Tiling:
    """A finite c2 tiling: a random window of a periodic tiling or a grown patch."""
    choice = rng.randrange(3)
    if choice == 2:
        return grow_c2_tiling(rng, rng.randint(12, min(60, max_faces)))
    base = c2_kagome_tiling() if choice == 0 else c2_paired_tiling()
    for _ in range(20):
        centre = (rng.uniform(-5.0, 5.0), rng.uniform(-5.0, 5.0))
        t = window_tiling(base, centre, rng.uniform(4.0, 9.0))
        if len(t.faces) <= max_faces and t.kind_counts().get(FaceKind.HEXAGON6):
            return t
    raise DescriptorError("could not draw a c2 window with a hexagon")
