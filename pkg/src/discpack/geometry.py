"""Contact angles of mutually tangent discs with radii 1 and r."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import DomainError

PI_3 = math.pi / 3.0
TWO_PI = 2.0 * math.pi


class SizeLabel(Enum):
    """Disc size: ``LARGE`` has radius 1, ``SMALL`` has radius r."""

    LARGE = "1"
    SMALL = "r"

    @property
    def char(self) -> str:
        return self.value

    @classmethod
    def from_char(cls, c: str) -> "SizeLabel":
        try:
            return cls(c)
        except ValueError:
            raise ValueError(f"size label must be '1' or 'r', got {c!r}") from None

    def radius(self, r: float) -> float:
        return 1.0 if self is SizeLabel.LARGE else r


LARGE = SizeLabel.LARGE
SMALL = SizeLabel.SMALL


@dataclass(frozen=True)
class ContactAngles:
    """The four contact angles for small radius ``r`` (large radius 1).

    ``alpha`` sits at a small disc touching two large ones and
    ``alpha_prime`` at each of those large discs; ``beta`` sits at a
    large disc touching two small ones and ``beta_prime`` at each small one.
    """

    r: float
    alpha: float
    alpha_prime: float
    beta: float
    beta_prime: float


def _check_radius(r: float) -> None:
    if not (0.0 < r < 1.0) or math.isnan(r):
        raise DomainError(f"small radius must lie in (0, 1), got {r!r}")


def _contact_angles_unchecked(r: float) -> ContactAngles:
    # Also accepts r = 1, where every angle degenerates to pi/3.
    alpha_prime = math.acos(1.0 / (1.0 + r))
    beta_prime = math.acos(r / (1.0 + r))
    return ContactAngles(
        r=r,
        alpha=math.pi - 2.0 * alpha_prime,
        alpha_prime=alpha_prime,
        beta=math.pi - 2.0 * beta_prime,
        beta_prime=beta_prime,
    )


def contact_angles(r: float) -> ContactAngles:
    """Contact angles for ``0 < r < 1``; raises :class:`DomainError` otherwise."""
    _check_radius(r)
    return _contact_angles_unchecked(r)


def theta(center: SizeLabel, left: SizeLabel, right: SizeLabel, r: float) -> float:
    """Angle at the centre of ``center`` in the triangle of three tangent discs.

    Symmetric in ``left`` and ``right``.
    """
    ca = contact_angles(r)
    return _theta_from(ca, center, left, right)


def _theta_from(ca: ContactAngles, center, left, right) -> float:
    n_large = (left is LARGE) + (right is LARGE)
    if center is LARGE:
        return (ca.beta, ca.alpha_prime, PI_3)[n_large]
    return (PI_3, ca.beta_prime, ca.alpha)[n_large]


def pair_angle_table(r: float) -> tuple:
    """Angles as nested tuples ``table[center][left][right]``, 0 = large, 1 = small."""
    ca = contact_angles(r)
    out = []
    for center in (LARGE, SMALL):
        out.append(
            tuple(
                tuple(_theta_from(ca, center, a, b) for b in (LARGE, SMALL))
                for a in (LARGE, SMALL)
            )
        )
    return tuple(out)
