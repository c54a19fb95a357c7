"""Independent checks of a patch: overlaps, compactness, corona membership, density.

Only disc coordinates are consulted; nothing here knows how a patch was built.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from .corona import Corona, CoronaSet, allowed_coronas
from .errors import AperiodicPatchError, OverlapError
from .model import TANGENCY_TOL, Patch, TangencyGraph, build_tangency_graph, contacts, corona_of, periodize


@dataclass(frozen=True)
class OverlapViolation:
    i: int
    j: int
    offset: tuple[int, int]
    depth: float


def check_overlaps(p: Patch) -> list[OverlapViolation]:
    """Every overlapping pair once, periodic images included."""
    rho = p.radii()
    out = []
    for i, j, off, _, gap in contacts(p, reach=0.0):
        if gap >= -TANGENCY_TOL * (rho[i] + rho[j]):
            continue
        if i < j or (i == j and off > (0, 0)):
            out.append(OverlapViolation(i, j, off, float(-gap)))
    return out


class DiscStatus(Enum):
    COMPACT = "compact"
    BOUNDARY = "boundary"
    VIOLATING = "violating"


@dataclass(frozen=True)
class CompactReport:
    status: tuple[DiscStatus, ...]
    coronas: tuple[Corona | None, ...]

    def indices(self, status: DiscStatus) -> list[int]:
        return [i for i, s in enumerate(self.status) if s is status]

    def counts(self) -> dict[str, int]:
        return {s.value: sum(1 for t in self.status if t is s) for s in DiscStatus}


def interior_mask(p: Patch) -> np.ndarray:
    """Discs whose neighbourhood ball (own radius + 2 + 2r) lies inside the hull of centres."""
    n = len(p.discs)
    if p.is_periodic:
        return np.ones(n, dtype=bool)
    pts = p.centers()
    reach = p.radii() + 2.0 + 2.0 * p.r
    try:
        hull = ConvexHull(pts)
    except (QhullError, ValueError):
        return np.zeros(n, dtype=bool)
    # hull.equations rows are (normal, offset) with normal . x + offset <= 0 inside
    depth = -(pts @ hull.equations[:, :2].T + hull.equations[:, 2])
    return depth.min(axis=1) >= reach


def check_compact(p: Patch, g: TangencyGraph | None = None) -> CompactReport:
    if g is None:
        g = build_tangency_graph(p)
    inside = interior_mask(p)
    status, coronas = [], []
    for i in range(len(p.discs)):
        c = corona_of(p, g, i)
        coronas.append(c)
        if c is not None:
            status.append(DiscStatus.COMPACT)
        elif inside[i]:
            status.append(DiscStatus.VIOLATING)
        else:
            status.append(DiscStatus.BOUNDARY)
    return CompactReport(tuple(status), tuple(coronas))


@dataclass(frozen=True)
class MembershipViolation:
    index: int
    corona: Corona


def check_corona_membership(p: Patch, allowed: CoronaSet, report: CompactReport | None = None) -> list[MembershipViolation]:
    if report is None:
        report = check_compact(p)
    return [
        MembershipViolation(i, c)
        for i, c in enumerate(report.coronas)
        if c is not None and c not in allowed
    ]


def density(p: Patch) -> float:
    """Disc area per unit area of the period cell."""
    if not p.is_periodic:
        raise AperiodicPatchError("density needs a patch with periods")
    discs = periodize(p.discs, p.periods)
    (ax, ay), (bx, by) = p.periods
    area = abs(ax * by - ay * bx)
    r = p.r
    return sum(math.pi * d.radius(r) ** 2 for d in discs) / area


@dataclass
class VerificationReport:
    patch: Patch
    overlaps: list[OverlapViolation] = field(default_factory=list)
    compact: CompactReport | None = None
    membership: list[MembershipViolation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        if self.overlaps or self.compact is None:
            return False
        return not self.compact.indices(DiscStatus.VIOLATING) and not self.membership

    def summary(self) -> dict:
        counts = self.compact.counts() if self.compact else {s.value: None for s in DiscStatus}
        return {
            "class": self.patch.radius_class.id,
            "discs": len(self.patch.discs),
            "periodic": self.patch.is_periodic,
            "overlaps": len(self.overlaps),
            **counts,
            "corona_mismatches": len(self.membership),
            "ok": self.ok,
        }

    def format(self) -> str:
        lines = []
        for v in self.overlaps:
            lines.append(f"overlap {v.i} {v.j} offset={v.offset[0]},{v.offset[1]} depth={v.depth:.6e}")
        if self.compact is None:
            lines.append("compactness skipped: overlaps present")
        else:
            for i in self.compact.indices(DiscStatus.VIOLATING):
                lines.append(f"violating {i} size={self.patch.discs[i].size.char} corona=incomplete")
            for i in self.compact.indices(DiscStatus.BOUNDARY):
                lines.append(f"boundary {i} size={self.patch.discs[i].size.char}")
        for m in self.membership:
            lines.append(f"corona {m.index} {m.corona} not-allowed")
        lines.append("--- summary")
        lines.append(json.dumps(self.summary(), sort_keys=True))
        return "\n".join(lines) + "\n"


def verify_patch(p: Patch, allowed: CoronaSet | None = None) -> VerificationReport:
    """Overlaps, then compactness and corona membership if there are none."""
    rep = VerificationReport(p, overlaps=check_overlaps(p))
    if rep.overlaps:
        return rep
    try:
        g = build_tangency_graph(p)
    except OverlapError:  # pragma: no cover - check_overlaps uses the same tolerance
        return rep
    rep.compact = check_compact(p, g)
    rep.membership = check_corona_membership(p, allowed or allowed_coronas(p.radius_class), rep.compact)
    return rep
