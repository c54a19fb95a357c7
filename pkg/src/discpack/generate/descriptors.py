"""Construction descriptors: one dataclass per packing family.

Lattice families index triangular-lattice points by integer pairs ``(i, j)``
meaning ``i*A1 + j*A2`` with ``A1 = (1, 0)`` and ``A2 = (1/2, sqrt(3)/2)``
scaled by the lattice spacing.  A hole is ``(i, j, k)``: ``k = 0`` for the
upward triangle ``{p, p+A1, p+A2}``, ``k = 1`` for the downward one
``{p+A1, p+A1+A2, p+A2}``.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import AdjacentSmallLayersError, DescriptorError
from .tiling import Tiling

Extent = tuple[int, int]


def _check_extent(extent) -> tuple[int, int]:
    try:
        nx, ny = (int(v) for v in extent)
    except (TypeError, ValueError):
        raise DescriptorError(f"extent must be a pair of positive integers, got {extent!r}") from None
    if nx < 1 or ny < 1:
        raise DescriptorError(f"extent must be a pair of positive integers, got {extent!r}")
    return nx, ny


@dataclass(frozen=True)
class C6Unique:
    extent: Extent = (3, 3)
    periodic: bool = True

    def __post_init__(self):
        object.__setattr__(self, "extent", _check_extent(self.extent))


@dataclass(frozen=True)
class C5Substitute:
    """Lattice points whose large disc becomes a block of seven small discs."""

    points: frozenset = frozenset()
    extent: Extent = (3, 3)
    periodic: bool = True

    def __post_init__(self):
        object.__setattr__(self, "extent", _check_extent(self.extent))
        object.__setattr__(self, "points", frozenset((int(i), int(j)) for i, j in self.points))


@dataclass(frozen=True)
class C8Fill:
    """Holes receiving one small disc; ``None`` means every hole."""

    holes: frozenset | None = None
    extent: Extent = (4, 4)
    periodic: bool = True

    def __post_init__(self):
        object.__setattr__(self, "extent", _check_extent(self.extent))
        if self.holes is not None:
            object.__setattr__(self, "holes", _check_holes(self.holes))


@dataclass(frozen=True)
class C9Fill:
    """Holes receiving a cluster of three small discs; ``None`` means every hole."""

    holes: frozenset | None = None
    extent: Extent = (3, 3)
    periodic: bool = True

    def __post_init__(self):
        object.__setattr__(self, "extent", _check_extent(self.extent))
        if self.holes is not None:
            object.__setattr__(self, "holes", _check_holes(self.holes))


def _check_holes(holes) -> frozenset:
    out = set()
    for h in holes:
        i, j, k = (int(v) for v in h)
        if k not in (0, 1):
            raise DescriptorError(f"hole orientation must be 0 (up) or 1 (down), got {k}")
        out.add((i, j, k))
    return frozenset(out)


@dataclass(frozen=True)
class C4FromTiling:
    tiling: Tiling


@dataclass(frozen=True)
class C7FromTiling:
    tiling: Tiling


@dataclass(frozen=True)
class C2FromTiling:
    tiling: Tiling


@dataclass(frozen=True)
class C1Layers:
    """One orientation bit per layer of flattened hexagons, repeated periodically."""

    bits: tuple[int, ...] = (0,)
    extent: int = 3

    def __post_init__(self):
        bits = tuple(int(b) for b in self.bits)
        if not bits or any(b not in (0, 1) for b in bits):
            raise DescriptorError(f"layer bits must be a non-empty sequence of 0/1, got {self.bits!r}")
        object.__setattr__(self, "bits", bits)
        if int(self.extent) < 1:
            raise DescriptorError("extent must be positive")


@dataclass(frozen=True)
class C3LayersA:
    """Cyclic word over {L, S}: rows of large discs and oscillating small rows."""

    word: str = "LS"
    extent: int = 3

    def __post_init__(self):
        w = self.word.upper()
        if not w or set(w) - {"L", "S"}:
            raise DescriptorError(f"layer word must be a non-empty string over L and S, got {self.word!r}")
        if "L" not in w:
            raise AdjacentSmallLayersError("a word without L puts small layers next to each other")
        if "SS" in w + w[0]:
            raise AdjacentSmallLayersError(f"layer word {self.word!r} has two adjacent small layers")
        object.__setattr__(self, "word", w)
        if int(self.extent) < 1:
            raise DescriptorError("extent must be positive")


@dataclass(frozen=True)
class C3LayersB:
    """One offset bit per interface between large/small-pair layers."""

    bits: tuple[int, ...] = (0,)
    extent: int = 3

    def __post_init__(self):
        bits = tuple(int(b) for b in self.bits)
        if not bits or any(b not in (0, 1) for b in bits):
            raise DescriptorError(f"interface bits must be a non-empty sequence of 0/1, got {self.bits!r}")
        object.__setattr__(self, "bits", bits)
        if int(self.extent) < 1:
            raise DescriptorError("extent must be positive")


DESCRIPTOR_CLASS = {
    C6Unique: "c6",
    C5Substitute: "c5",
    C8Fill: "c8",
    C9Fill: "c9",
    C4FromTiling: "c4",
    C7FromTiling: "c7",
    C2FromTiling: "c2",
    C1Layers: "c1",
    C3LayersA: "c3",
    C3LayersB: "c3",
}
