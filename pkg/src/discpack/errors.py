"""Exception types raised across the package."""


class DiscpackError(Exception):
    """Base class for all errors raised by discpack."""


class DomainError(DiscpackError, ValueError):
    """A radius (or other scalar) lies outside the admissible interval."""


class NoSolutionError(DiscpackError):
    """A bracketed root search has no sign change on its bracket."""


class ConsistencyError(DiscpackError):
    """An internal cross-check failed (e.g. the wrong number of radius classes)."""


class UnknownClassError(DiscpackError, KeyError):
    """A radius-class id other than c1..c9 was requested."""

    def __str__(self):
        return str(self.args[0]) if self.args else "unknown radius class"


class OverlapError(DiscpackError):
    """Two discs of a patch overlap."""

    def __init__(self, i, j, offset, depth):
        self.pair = (i, j)
        self.offset = offset
        self.depth = depth
        super().__init__(
            f"discs {i} and {j} (offset {offset}) overlap by {depth:.3e}"
        )


class DescriptorError(DiscpackError, ValueError):
    """A construction descriptor does not describe a valid family member."""


class IndependentSetError(DescriptorError):
    """Two substituted lattice points of a c5 construction are adjacent."""


class AdjacentSmallLayersError(DescriptorError):
    """A c3 layer word places two small-disc layers next to each other."""


class InvalidTilingError(DiscpackError, ValueError):
    """A tiling violates one of the tiling invariants."""


class NonCompactError(DiscpackError, ValueError):
    """An operation that requires a compact packing received a non-compact one."""


class AperiodicPatchError(DiscpackError, ValueError):
    """A periodic quantity was requested for a patch without periods."""


class PatchFormatError(DiscpackError, ValueError):
    """A patch or tiling document could not be parsed."""


class SingleSizeWarning(UserWarning):
    """A construction produced discs of only one size, so it is not a two-size packing."""
