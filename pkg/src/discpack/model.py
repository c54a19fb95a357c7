"""Disc configurations, periodic patches and their tangency graphs."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.spatial import cKDTree

from . import kernels
from .corona import Corona
from .errors import OverlapError, PatchFormatError, UnknownClassError
from .geometry import LARGE, SMALL, TWO_PI, SizeLabel, theta
from .radii import RadiusClass, get_class

# Relative tolerance for tangency and overlap, and absolute tolerance for
# angular closure of a corona.
TANGENCY_TOL = 1e-9
CLOSURE_TOL = 1e-7
MIN_PERIOD = 4.0

Offset = tuple[int, int]
ZERO: Offset = (0, 0)


@dataclass(frozen=True)
class Disc:
    x: float
    y: float
    size: SizeLabel

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"disc coordinates must be finite, got ({self.x}, {self.y})")

    def radius(self, r: float) -> float:
        return self.size.radius(r)


@dataclass(frozen=True)
class Patch:
    """A finite set of discs, optionally repeated by two lattice periods."""

    radius_class: RadiusClass
    discs: tuple[Disc, ...]
    periods: tuple[tuple[float, float], tuple[float, float]] | None = None

    def __post_init__(self):
        object.__setattr__(self, "discs", tuple(self.discs))
        if self.periods is not None:
            (ax, ay), (bx, by) = self.periods
            per = ((float(ax), float(ay)), (float(bx), float(by)))
            object.__setattr__(self, "periods", per)
            if abs(ax * by - ay * bx) < 1e-12:
                raise ValueError("periods must be linearly independent")
            for v in per:
                if math.hypot(*v) <= MIN_PERIOD:
                    raise ValueError(f"each period must be longer than {MIN_PERIOD}, got {v}")

    @property
    def r(self) -> float:
        return self.radius_class.value

    @property
    def is_periodic(self) -> bool:
        return self.periods is not None

    def radii(self) -> np.ndarray:
        return np.array([d.radius(self.r) for d in self.discs])

    def centers(self) -> np.ndarray:
        return np.array([(d.x, d.y) for d in self.discs], dtype=float).reshape(-1, 2)

    def image(self, index: int, offset: Offset) -> tuple[float, float]:
        d = self.discs[index]
        if offset == ZERO:
            return d.x, d.y
        (ax, ay), (bx, by) = self.periods
        return d.x + offset[0] * ax + offset[1] * bx, d.y + offset[0] * ay + offset[1] * by

    def count(self, size: SizeLabel) -> int:
        return sum(1 for d in self.discs if d.size is size)


# --- lattice helpers -------------------------------------------------------


def reduce_basis(a, b) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Lagrange-Gauss reduction; returns ``(a', b', U)`` with ``[a' b'] = [a b] U``."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    u = np.eye(2, dtype=np.int64)
    if a @ a > b @ b:
        a, b = b, a
        u = u[:, ::-1].copy()
    while True:
        mu = int(round((a @ b) / (a @ a)))
        if mu == 0:
            break
        b = b - mu * a
        u[:, 1] -= mu * u[:, 0]
        if b @ b >= a @ a:
            break
        a, b = b, a
        u = u[:, ::-1].copy()
    return a, b, u


def lattice_coords(points, periods) -> np.ndarray:
    basis = np.array(periods, dtype=float).T
    return np.linalg.solve(basis, np.asarray(points, dtype=float).reshape(-1, 2).T).T


def periodize(discs: Sequence[Disc], periods, tol: float = 1e-7) -> list[Disc]:
    """Reduce disc centres into the period cell and drop lattice-equivalent copies.

    First occurrence wins, so the result is deterministic in the input order.
    Duplicates must agree on size.
    """
    if not discs:
        return []
    basis = np.array(periods, dtype=float).T
    pts = np.array([(d.x, d.y) for d in discs], dtype=float)
    frac = lattice_coords(pts, periods)
    frac -= np.floor(frac)
    frac[frac >= 1.0 - 1e-12] = 0.0
    frac[frac < 0.0] = 0.0
    scale = min(np.linalg.norm(basis[:, 0]), np.linalg.norm(basis[:, 1]))
    tree = cKDTree(frac, boxsize=[1.0, 1.0])
    seen = np.full(len(discs), -1)
    out = []
    for idx in range(len(discs)):
        if seen[idx] >= 0:
            continue
        seen[idx] = idx
        for other in tree.query_ball_point(frac[idx], tol / scale):
            if seen[other] < 0:
                if discs[other].size is not discs[idx].size:
                    raise ValueError("lattice-equivalent discs of different sizes")
                seen[other] = idx
        x, y = basis @ frac[idx]
        out.append(Disc(float(x), float(y), discs[idx].size))
    return out


# --- tangency graph --------------------------------------------------------


@dataclass(frozen=True)
class TangencyGraph:
    """For each disc, tangent neighbours ``(index, lattice offset)`` sorted by angle."""

    neighbors: tuple[tuple[tuple[int, Offset], ...], ...]

    def adjacent(self, i: int, j: int, offset: Offset = ZERO) -> bool:
        return (j, offset) in self._sets[i]

    @property
    def _sets(self):
        cached = self.__dict__.get("_set_cache")
        if cached is None:
            cached = tuple(frozenset(n) for n in self.neighbors)
            object.__setattr__(self, "_set_cache", cached)
        return cached

    def degree(self, i: int) -> int:
        return len(self.neighbors[i])

    def edges(self):
        """Each tangency once, as ``(i, j, offset)`` with ``(i, j, offset)`` minimal."""
        for i, nbrs in enumerate(self.neighbors):
            for j, off in nbrs:
                if i < j or (i == j and off > ZERO):
                    yield i, j, off


def _search_frame(p: Patch):
    """Centres wrapped into the reduced cell plus the shifts to search."""
    pts = p.centers()
    if not p.is_periodic:
        return pts, np.zeros((len(pts), 2), dtype=np.int64), None, [ZERO]
    a, b, u = reduce_basis(*p.periods)
    reduced = (tuple(a), tuple(b))
    frac = lattice_coords(pts, reduced)
    wraps = np.floor(frac).astype(np.int64)
    wrapped = pts - wraps @ np.array([a, b])
    shifts = [(s, t) for s in (-1, 0, 1) for t in (-1, 0, 1)]
    return wrapped, wraps, (a, b, u), shifts


def contacts(p: Patch, reach: float = TANGENCY_TOL):
    """All ordered disc pairs within ``(rho_i + rho_j)(1 + reach)``.

    Yields ``(i, j, offset, distance, gap)`` where ``gap = distance - rho_i - rho_j``
    and ``offset`` is in the patch's own period basis.
    """
    pts, wraps, frame, shifts = _search_frame(p)
    rho = p.radii()
    if frame is None:
        vecs = np.zeros((1, 2))
    else:
        a, b, _ = frame
        vecs = np.array([s * a + t * b for s, t in shifts])
    ii, jj, ss, dd = kernels.contact_pairs(pts[:, 0], pts[:, 1], rho, vecs, reach)
    for i, j, s, d in zip(ii.tolist(), jj.tolist(), ss.tolist(), dd.tolist()):
        if frame is None:
            off = ZERO
        else:
            red = np.array(shifts[s]) - wraps[j] + wraps[i]
            o = frame[2] @ red
            off = (int(o[0]), int(o[1]))
        yield i, j, off, d, d - rho[i] - rho[j]


def build_tangency_graph(p: Patch) -> TangencyGraph:
    """Tangency relation of ``p``; raises :class:`OverlapError` on the first overlap."""
    rho = p.radii()
    nbrs: list[list[tuple[int, Offset]]] = [[] for _ in p.discs]
    for i, j, off, d, gap in contacts(p):
        if gap < -TANGENCY_TOL * (rho[i] + rho[j]):
            raise OverlapError(i, j, off, -gap)
        nbrs[i].append((j, off))
    out = []
    for i, lst in enumerate(nbrs):
        cx, cy = p.discs[i].x, p.discs[i].y

        def angle(item, cx=cx, cy=cy):
            x, y = p.image(*item)
            return math.atan2(y - cy, x - cx) % TWO_PI

        out.append(tuple(sorted(lst, key=angle)))
    return TangencyGraph(tuple(out))


def _sub(a: Offset, b: Offset) -> Offset:
    return (a[0] - b[0], a[1] - b[1])


def corona_of(p: Patch, g: TangencyGraph, index: int) -> Corona | None:
    """The closed corona of disc ``index``, or None if its neighbours do not close up."""
    nbrs = g.neighbors[index]
    n = len(nbrs)
    if n < 3:
        return None
    centre = p.discs[index]
    cx, cy = centre.x, centre.y
    angles = []
    for item in nbrs:
        x, y = p.image(*item)
        angles.append(math.atan2(y - cy, x - cx))
    total = 0.0
    for k in range(n):
        (j1, o1), (j2, o2) = nbrs[k], nbrs[(k + 1) % n]
        if not g.adjacent(j1, j2, _sub(o2, o1)):
            return None
        expected = theta(centre.size, p.discs[j1].size, p.discs[j2].size, p.r)
        gap = (angles[(k + 1) % n] - angles[k]) % TWO_PI
        if abs(gap - expected) > 1e-6:
            return None
        total += expected
    if abs(total - TWO_PI) > CLOSURE_TOL:
        return None
    word = "".join(p.discs[j].size.char for j, _ in nbrs)
    return Corona(centre.size, word)


# --- file format -----------------------------------------------------------

_SIZE_NAMES = {LARGE: "large", SMALL: "small"}
_SIZE_BY_NAME = {"large": LARGE, "small": SMALL, "1": LARGE, "r": SMALL}


def _num(v: float) -> str:
    s = format(float(v), ".17g")
    if s in ("inf", "-inf", "nan"):
        raise ValueError(f"cannot serialize non-finite number {v}")
    return s


def dump_patch(p: Patch) -> str:
    """Serialize to the JSON patch document (17 significant digits per number)."""
    lines = ["{", f'  "radius_class": "{p.radius_class.id}",', f'  "r": {_num(p.r)},']
    if p.periods is not None:
        vecs = ", ".join(f"[{_num(x)}, {_num(y)}]" for x, y in p.periods)
        lines.append(f'  "periods": [{vecs}],')
    lines.append('  "discs": [')
    for k, d in enumerate(p.discs):
        comma = "," if k + 1 < len(p.discs) else ""
        lines.append(
            f'    {{"x": {_num(d.x)}, "y": {_num(d.y)}, "size": "{_SIZE_NAMES[d.size]}"}}{comma}'
        )
    lines.append("  ]")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _field_error(path: str, msg: str) -> PatchFormatError:
    return PatchFormatError(f"{path}: {msg}")


def _as_number(v, path: str) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise _field_error(path, f"expected a number, got {v!r}")
    if not math.isfinite(v):
        raise _field_error(path, "number must be finite")
    return float(v)


def _as_vector(v, path: str) -> tuple[float, float]:
    if not isinstance(v, list) or len(v) != 2:
        raise _field_error(path, f"expected [x, y], got {v!r}")
    return _as_number(v[0], f"{path}[0]"), _as_number(v[1], f"{path}[1]")


def load_patch(text: str) -> Patch:
    """Parse a patch document; errors carry a line number or a field path."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PatchFormatError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise PatchFormatError("top level: expected an object")
    for key in ("radius_class", "r", "discs"):
        if key not in doc:
            raise _field_error(key, "missing field")
    unknown = set(doc) - {"radius_class", "r", "discs", "periods"}
    if unknown:
        raise _field_error(sorted(unknown)[0], "unknown field")
    try:
        rc = get_class(doc["radius_class"])
    except (UnknownClassError, TypeError):
        raise _field_error("radius_class", f"unknown radius class {doc['radius_class']!r}") from None
    r = _as_number(doc["r"], "r")
    if abs(r - rc.value) > 1e-9:
        raise _field_error("r", f"{r!r} does not match {rc.id} = {rc.value!r}")
    periods = None
    if "periods" in doc and doc["periods"] is not None:
        per = doc["periods"]
        if not isinstance(per, list) or len(per) != 2:
            n = len(per) if isinstance(per, list) else "non-list"
            raise _field_error("periods", f"expected two period vectors, got {n}")
        periods = (_as_vector(per[0], "periods[0]"), _as_vector(per[1], "periods[1]"))
    if not isinstance(doc["discs"], list):
        raise _field_error("discs", "expected a list")
    discs = []
    for k, item in enumerate(doc["discs"]):
        path = f"discs[{k}]"
        if not isinstance(item, dict):
            raise _field_error(path, "expected an object with x, y, size")
        for key in ("x", "y", "size"):
            if key not in item:
                raise _field_error(f"{path}.{key}", "missing field")
        size = _SIZE_BY_NAME.get(item["size"]) if isinstance(item["size"], str) else None
        if size is None:
            raise _field_error(f"{path}.size", f"expected 'large' or 'small', got {item['size']!r}")
        discs.append(Disc(_as_number(item["x"], f"{path}.x"), _as_number(item["y"], f"{path}.y"), size))
    try:
        return Patch(rc, tuple(discs), periods)
    except ValueError as exc:
        raise _field_error("periods", str(exc)) from None


def write_patch(p: Patch, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dump_patch(p))


def read_patch(path) -> Patch:
    with open(path, encoding="utf-8") as fh:
        return load_patch(fh.read())


def corona_patch(rc: RadiusClass, center: SizeLabel, word: str) -> Patch:
    """One disc at the origin with ``word`` laid out tangentially around it.

    The first neighbour sits on the positive x-axis; the rest follow
    counter-clockwise at the contact angles.  No closure check is made.
    """
    r = rc.value
    rho = center.radius(r)
    sizes = [SizeLabel.from_char(c) for c in word]
    discs = [Disc(0.0, 0.0, center)]
    ang = 0.0
    for k, s in enumerate(sizes):
        dist = rho + s.radius(r)
        discs.append(Disc(dist * math.cos(ang), dist * math.sin(ang), s))
        ang += theta(center, s, sizes[(k + 1) % len(sizes)], r)
    return Patch(rc, tuple(discs))
