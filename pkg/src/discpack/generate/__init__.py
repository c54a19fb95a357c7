"""Explicit compact packings for every radius class."""

from __future__ import annotations

import warnings

from ..errors import DescriptorError, SingleSizeWarning
from ..geometry import LARGE, SMALL
from ..model import Patch
from ..radii import RadiusClass, get_class
from .assembly import (
    Row,
    c2_kagome_tiling,
    c2_paired_tiling,
    grow_c2_tiling,
    parse_rows,
    random_c2_tiling,
    random_row_tiling,
    row_tiling,
    window_tiling,
)
from .descriptors import (
    DESCRIPTOR_CLASS,
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
from .lattice import generate_c5, generate_c6, generate_c8, generate_c9
from .layers import THETA1, THETA2, generate_c1, generate_c3a, generate_c3b
from .presets import MAIN_FIGURE, PRESETS, preset_names, resolve_preset
from .tiling import (
    CLASS_KINDS,
    Face,
    FaceKind,
    Tiling,
    dump_tiling,
    hexagon6_geometry,
    load_tiling,
    packing_to_tiling,
    rhombus_acute_angle,
    tiling_to_packing,
    tilings_congruent,
    validate_tiling,
)

_BUILDERS = {
    C6Unique: generate_c6,
    C5Substitute: generate_c5,
    C8Fill: generate_c8,
    C9Fill: generate_c9,
    C1Layers: generate_c1,
    C3LayersA: generate_c3a,
    C3LayersB: generate_c3b,
    C4FromTiling: lambda rc, d: tiling_to_packing(rc, d.tiling),
    C7FromTiling: lambda rc, d: tiling_to_packing(rc, d.tiling),
    C2FromTiling: lambda rc, d: tiling_to_packing(rc, d.tiling),
}


def generate(rc: RadiusClass | str, d) -> Patch:
    """Build the patch a descriptor describes for radius class ``rc``."""
    if isinstance(rc, str):
        rc = get_class(rc)
    expected = DESCRIPTOR_CLASS.get(type(d))
    if expected is None:
        raise DescriptorError(f"not a construction descriptor: {type(d).__name__}")
    if expected != rc.id:
        raise DescriptorError(f"{type(d).__name__} builds class {expected} packings, not {rc.id}")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", SingleSizeWarning)
        patch = _BUILDERS[type(d)](rc, d)
    sizes = {disc.size for disc in patch.discs}
    if sizes != {LARGE, SMALL}:
        warnings.warn(f"{rc.id} construction has discs of one size only", SingleSizeWarning, stacklevel=2)
    return patch


def generate_preset(name: str, class_id: str | None = None) -> Patch:
    cid, d = resolve_preset(name, class_id)
    return generate(cid, d)


__all__ = [
    "C1Layers", "C2FromTiling", "C3LayersA", "C3LayersB", "C4FromTiling", "C5Substitute",
    "C6Unique", "C7FromTiling", "C8Fill", "C9Fill", "CLASS_KINDS", "Face", "FaceKind",
    "MAIN_FIGURE", "PRESETS", "Row", "THETA1", "THETA2", "Tiling", "c2_kagome_tiling",
    "c2_paired_tiling", "dump_tiling", "generate", "generate_preset", "grow_c2_tiling",
    "hexagon6_geometry", "load_tiling", "packing_to_tiling", "parse_rows", "preset_names",
    "random_c2_tiling", "random_row_tiling", "resolve_preset", "rhombus_acute_angle",
    "row_tiling", "tiling_to_packing", "tilings_congruent", "validate_tiling", "window_tiling",
]
