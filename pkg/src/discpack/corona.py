"""Coronas: cyclic words of neighbour sizes around a disc.

Words are strings over ``'1'`` (large) and ``'r'`` (small).  A word is kept in
canonical form, the lexicographic minimum over its rotations and reflections
with ``'1' < 'r'``.
"""

from __future__ import annotations

import functools
import math
from collections import Counter
from dataclasses import dataclass, field, replace

from . import kernels
from .geometry import LARGE, PI_3, SMALL, TWO_PI, SizeLabel, contact_angles, pair_angle_table
from .radii import FEASIBILITY_TOL, AUDIT_BAND, RadiusClass

LOCAL_CONSISTENCY = "local consistency"
BOUNDARY_ARGUMENT = "boundary argument"


def canonicalize(word):
    """Lexicographic minimum over all rotations of ``word`` and of its reversal.

    Accepts a string over ``'1'``/``'r'`` or a sequence of :class:`SizeLabel`
    and returns the same kind of object.
    """
    if isinstance(word, str):
        return canonicalize_str(word)
    chars = "".join(s.char for s in word)
    return [SizeLabel.from_char(c) for c in canonicalize_str(chars)]


def canonicalize_str(word: str) -> str:
    if not word:
        raise ValueError("cannot canonicalize an empty word")
    if set(word) - {"1", "r"}:
        raise ValueError(f"corona words use only '1' and 'r', got {word!r}")
    n = len(word)
    rev = word[::-1]
    best = word
    for s in range(n):
        for cand in (word[s:] + word[:s], rev[s:] + rev[:s]):
            if cand < best:
                best = cand
    return best


@functools.total_ordering
@dataclass(frozen=True)
class Corona:
    center: SizeLabel
    word: str

    def __post_init__(self):
        if len(self.word) < 3:
            raise ValueError(f"a corona has at least 3 neighbours, got {self.word!r}")
        canon = canonicalize_str(self.word)
        if canon != self.word:
            object.__setattr__(self, "word", canon)

    @property
    def length(self) -> int:
        return len(self.word)

    @property
    def is_monochromatic(self) -> bool:
        return self.word == self.center.char * 6

    def contains(self, sub: str) -> bool:
        """True if ``sub`` (or its reversal) occurs cyclically in the word."""
        return cyclic_contains(self.word, sub)

    def _key(self):
        return (self.center is SMALL, len(self.word), self.word)

    def __lt__(self, other):
        return self._key() < other._key()

    def __str__(self):
        return f"{self.center.char}:{self.word}"


def cyclic_contains(word: str, sub: str) -> bool:
    n = len(word)
    reps = len(sub) // n + 2
    ring = word * reps
    for probe in (sub, sub[::-1]):
        for s in range(n):
            if ring[s:s + len(probe)] == probe:
                return True
    return False


@dataclass(frozen=True)
class CoronaSet:
    radius_class: RadiusClass
    small: tuple[Corona, ...]
    large: tuple[Corona, ...]
    excluded: tuple[tuple[Corona, str], ...] = field(default=())

    def around(self, center: SizeLabel) -> tuple[Corona, ...]:
        return self.small if center is SMALL else self.large

    def __contains__(self, c: Corona) -> bool:
        return c in self.around(c.center)

    def excluded_reason(self, c: Corona) -> str | None:
        for ex, reason in self.excluded:
            if ex == c:
                return reason
        return None


def _max_length(center: SizeLabel, r: float) -> int:
    table = pair_angle_table(r)[0 if center is LARGE else 1]
    smallest = min(min(row) for row in table)
    return math.ceil(TWO_PI / smallest)


def enumerate_coronas(center: SizeLabel, rc: RadiusClass, tol: float = FEASIBILITY_TOL) -> list[Corona]:
    """All canonical coronas around ``center`` whose angles close to 2*pi within ``tol``."""
    table = pair_angle_table(rc.value)[0 if center is LARGE else 1]
    words = kernels.corona_words(table, TWO_PI, tol, _max_length(center, rc.value))
    return sorted({Corona(center, "".join("1r"[c] for c in w)) for w in words})


def corona_near_misses(center: SizeLabel, rc: RadiusClass, tol: float = FEASIBILITY_TOL, band: float = AUDIT_BAND) -> list[Corona]:
    """Words accepted at tolerance ``band`` but not at ``tol``."""
    wide = set(enumerate_coronas(center, rc, band))
    return sorted(wide - set(enumerate_coronas(center, rc, tol)))


def angle_decomposition(c: Corona, rc: RadiusClass) -> tuple[dict[str, int], float]:
    """Counts of each angle kind used by the corona, and their total."""
    ca = contact_angles(rc.value)
    counts: Counter = Counter()
    w = c.word
    for a, b in zip(w, w[1:] + w[:1]):
        n_large = (a == "1") + (b == "1")
        if c.center is LARGE:
            counts[("beta", "alpha_prime", "pi/3")[n_large]] += 1
        else:
            counts[("pi/3", "beta_prime", "alpha")[n_large]] += 1
    values = {
        "pi/3": PI_3,
        "alpha": ca.alpha,
        "alpha_prime": ca.alpha_prime,
        "beta": ca.beta,
        "beta_prime": ca.beta_prime,
    }
    total = sum(values[k] * v for k, v in counts.items())
    return dict(counts), total


def build_corona_set(rc: RadiusClass, tol: float = FEASIBILITY_TOL) -> CoronaSet:
    """Unfiltered coronas around small and large discs for ``rc``."""
    return CoronaSet(
        radius_class=rc,
        small=tuple(enumerate_coronas(SMALL, rc, tol)),
        large=tuple(enumerate_coronas(LARGE, rc, tol)),
    )


def _supported(c: Corona, cs: CoronaSet) -> bool:
    # Each neighbour s, flanked by x and y, sees x, the centre, y consecutively.
    w = c.word
    n = len(w)
    centre = c.center.char
    for idx in range(n):
        s = SizeLabel.from_char(w[idx])
        demand = w[idx - 1] + centre + w[(idx + 1) % n]
        if not any(d.contains(demand) for d in cs.around(s)):
            return False
    return True


def _remove(cs: CoronaSet, doomed: list[Corona], reason: str) -> CoronaSet:
    if not doomed:
        return cs
    gone = set(doomed)
    return replace(
        cs,
        small=tuple(c for c in cs.small if c not in gone),
        large=tuple(c for c in cs.large if c not in gone),
        excluded=cs.excluded + tuple((c, reason) for c in sorted(gone)),
    )


def filter_locally_consistent(cs: CoronaSet) -> CoronaSet:
    """Drop coronas whose neighbours cannot see them from any viable corona.

    Iterates to a fixed point; removed coronas are recorded with reason
    ``"local consistency"``.
    """
    while True:
        doomed = [c for c in cs.small + cs.large if not _supported(c, cs)]
        if not doomed:
            return cs
        cs = _remove(cs, doomed, LOCAL_CONSISTENCY)


def filter_monochromatic(cs: CoronaSet) -> CoronaSet:
    """Drop an all-``s`` corona unless another corona around ``s`` contains ``sss``.

    In a packing with both sizes, a region of discs with the all-``s`` corona
    has a boundary disc of size ``s`` whose corona is not all-``s`` yet has
    three consecutive ``s`` neighbours.
    """
    doomed = []
    for s in (SMALL, LARGE):
        mono = Corona(s, s.char * 6)
        pool = cs.around(s)
        if mono not in pool:
            continue
        if not any(c.contains(s.char * 3) for c in pool if c != mono):
            doomed.append(mono)
    return _remove(cs, doomed, BOUNDARY_ARGUMENT)


def filter_all(cs: CoronaSet) -> CoronaSet:
    """Alternate both filters until neither removes anything."""
    while True:
        before = len(cs.small) + len(cs.large)
        cs = filter_monochromatic(filter_locally_consistent(cs))
        if len(cs.small) + len(cs.large) == before:
            return cs


@functools.lru_cache(maxsize=None)
def allowed_coronas(rc: RadiusClass) -> CoronaSet:
    """The filtered corona set for ``rc`` (cached)."""
    return filter_all(build_corona_set(rc))
