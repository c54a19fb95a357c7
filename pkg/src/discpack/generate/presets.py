"""Named example constructions, fig1 to fig15."""

from __future__ import annotations

from typing import Callable

from .assembly import c2_kagome_tiling, c2_paired_tiling, parse_rows, row_tiling
from .descriptors import (
    C1Layers,
    C2FromTiling,
    C3LayersA,
    C3LayersB,
    C4FromTiling,
    C5Substitute,
    C6Unique,
    C7FromTiling,
    C8Fill,
    C9Fill,
)


def _c5_figure():
    n = 6
    pts = frozenset((i, j) for i in range(n) for j in range(n) if (i - j) % 3 == 0)
    return C5Substitute(points=pts, extent=(n, n))


# name -> (class id, descriptor factory, short description)
PRESETS: dict[str, tuple[str, Callable[[], object], str]] = {
    "fig1": ("c1", lambda: C1Layers(bits=(0,), extent=3), "flattened hexagons, one orientation"),
    "fig2": ("c2", lambda: C2FromTiling(c2_kagome_tiling()), "hexagons meeting at corners"),
    "fig3": ("c3", lambda: C3LayersA(word="LS", extent=3), "alternating large and small rows"),
    "fig4": ("c4", lambda: C4FromTiling(row_tiling(parse_rows("S"), 3, periodic=True)), "square lattice"),
    "fig5": ("c5", _c5_figure, "seven-disc blocks on a third of the lattice"),
    "fig6": ("c6", lambda: C6Unique(extent=(3, 3)), "the unique packing"),
    "fig7": ("c7", lambda: C7FromTiling(row_tiling(parse_rows("R+"), 3, periodic=True)), "rhombus lattice"),
    "fig8": ("c8", lambda: C8Fill(holes=None, extent=(4, 4)), "every hole filled"),
    "fig9": ("c9", lambda: C9Fill(holes=None, extent=(4, 4)), "a cluster in every hole"),
    "fig10": ("c4", lambda: C4FromTiling(row_tiling(parse_rows("S,T+,S,T-"), 3, periodic=True)), "squares and triangles"),
    "fig11": ("c7", lambda: C7FromTiling(row_tiling(parse_rows("R+,T+,R-,T-"), 3, periodic=True)), "rhombi and triangles"),
    "fig12": ("c2", lambda: C2FromTiling(c2_paired_tiling()), "hexagon pairs"),
    "fig13": ("c1", lambda: C1Layers(bits=(0, 0, 1), extent=3), "mixed layer orientations"),
    "fig14": ("c3", lambda: C3LayersA(word="LSLLS", extent=3), "row family with a double large row"),
    "fig15": ("c3", lambda: C3LayersB(bits=(0, 1, 1), extent=3), "pair-layer family, mixed offsets"),
}

MAIN_FIGURE = {f"c{k}": f"fig{k}" for k in range(1, 10)}


def preset_names() -> list[str]:
    return sorted(PRESETS, key=lambda s: int(s[3:]))


def resolve_preset(name: str, class_id: str | None = None) -> tuple[str, object]:
    """Return ``(class id, descriptor)``; ``figure`` means the class's main figure."""
    key = name.lower()
    if key == "figure":
        if class_id is None:
            raise KeyError("preset 'figure' needs a class id")
        key = MAIN_FIGURE[class_id]
    if key not in PRESETS:
        raise KeyError(f"unknown preset {name!r}; choose from {', '.join(preset_names())} or 'figure'")
    cid, factory, _ = PRESETS[key]
    if class_id is not None and class_id != cid:
        raise KeyError(f"preset {key} belongs to class {cid}, not {class_id}")
    return cid, factory()
