"""Compact packings of the plane by discs of radius 1 and r."""

from .geometry import LARGE, SMALL, ContactAngles, SizeLabel, contact_angles, theta
from .radii import (
    LargeSignature,
    RadiusClass,
    SmallSignature,
    enumerate_radius_classes,
    get_class,
)

__all__ = [
    "LARGE",
    "SMALL",
    "ContactAngles",
    "LargeSignature",
    "RadiusClass",
    "SizeLabel",
    "SmallSignature",
    "contact_angles",
    "enumerate_radius_classes",
    "get_class",
    "theta",
]

__version__ = "0.1.0"
