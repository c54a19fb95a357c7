"""The nine radii that admit compact packings.

Candidate angle signatures around a small disc are scanned, each is solved
for r by bisection on its strictly decreasing angle sum, and candidates
whose r admits no nontrivial angle sum around a large disc are discarded.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from typing import NamedTuple

from .errors import ConsistencyError, NoSolutionError, UnknownClassError
from .geometry import PI_3, TWO_PI, contact_angles

FEASIBILITY_TOL = 1e-7
AUDIT_BAND = 1e-4
BISECTION_STEPS = 200
BRACKET_EPS = 1e-12


class SmallSignature(NamedTuple):
    """Counts of alpha, beta_prime and pi/3 angles around a small disc."""

    i: int
    j: int
    k: int


class LargeSignature(NamedTuple):
    """Counts of alpha_prime, beta and pi/3 angles around a large disc."""

    l: int
    m: int
    n: int


@dataclass(frozen=True)
class RadiusClass:
    id: str
    value: float
    signature: SmallSignature
    small_corona_word: str
    residual_poly: tuple[float, ...]
    closed_form_note: str
    large_signature: LargeSignature

    def __str__(self) -> str:
        return f"{self.id} (r = {self.value:.10f})"


# Exact forms, keyed by small-disc signature.  Polynomials are listed
# highest degree first; closed forms are stored as the linear r - c.
_S3 = math.sqrt(3.0)
_EXACT_FORMS: dict[SmallSignature, tuple[tuple[float, ...], str]] = {
    SmallSignature(3, 2, 0): ((1.0, 0.0, -10.0, -8.0, 9.0), "r^4 - 10r^2 - 8r + 9 = 0"),
    SmallSignature(2, 2, 1): (
        (7 + 4 * _S3, 20 + 12 * _S3, 6 + 4 * _S3, -20 - 4 * _S3, 3.0),
        "(7+4*sqrt3) r^4 + (20+12*sqrt3) r^3 + (6+4*sqrt3) r^2 + (-20-4*sqrt3) r + 3 = 0",
    ),
    SmallSignature(1, 4, 0): ((8.0, 3.0, -2.0, -1.0), "8r^3 + 3r^2 - 2r - 1 = 0"),
    SmallSignature(4, 0, 0): ((1.0, -(math.sqrt(2.0) - 1.0)), "sqrt2 - 1"),
    SmallSignature(1, 2, 2): (
        (1.0, -(2 * _S3 + 1 - 2 * math.sqrt(1 + _S3)) / 3.0),
        "(2*sqrt3 + 1 - 2*sqrt(1 + sqrt3)) / 3",
    ),
    SmallSignature(0, 4, 1): (
        (1.0, -math.sin(math.pi / 12) / (1 - math.sin(math.pi / 12))),
        "sin(pi/12) / (1 - sin(pi/12))",
    ),
    SmallSignature(2, 2, 0): ((1.0, -(math.sqrt(17.0) - 3.0) / 4.0), "(sqrt17 - 3) / 4"),
    SmallSignature(3, 0, 0): ((1.0, -(2.0 * _S3 / 3.0 - 1.0)), "2*sqrt3/3 - 1"),
    SmallSignature(1, 2, 1): ((1.0, -(5.0 - 2.0 * math.sqrt(6.0))), "5 - 2*sqrt6"),
}


def f_eval(sig: SmallSignature, r: float) -> float:
    """Angle sum ``i*alpha + j*beta_prime + k*pi/3`` around a small disc."""
    ca = contact_angles(r)
    i, j, k = sig
    return i * ca.alpha + j * ca.beta_prime + k * PI_3


def candidate_signatures() -> list[SmallSignature]:
    """Signatures whose angle sum crosses 2*pi on (0, 1) and respect side lengths.

    The sum tends to ``(6i + 3j + 2k) pi/6`` as r -> 0 and equals
    ``(i + j + k) pi/3`` at r = 1.  ``j`` must be even, and with ``j = 0`` one
    of ``i``, ``k`` vanishes.
    """
    out = []
    for i, j, k in itertools.product(range(7), repeat=3):
        if 6 * i + 3 * j + 2 * k <= 12 or i + j + k >= 6:
            continue
        if j % 2 or (j == 0 and i * k != 0):
            continue
        out.append(SmallSignature(i, j, k))
    return sorted(out)


def solve_signature(sig: SmallSignature, steps: int = BISECTION_STEPS) -> float:
    """The unique r in (0, 1) with ``f_eval(sig, r) == 2*pi``, by bisection."""
    lo, hi = BRACKET_EPS, 1.0 - BRACKET_EPS
    if f_eval(sig, lo) < TWO_PI or f_eval(sig, hi) > TWO_PI:
        raise NoSolutionError(f"angle sum for {tuple(sig)} does not cross 2*pi on (0, 1)")
    for _ in range(steps):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if f_eval(sig, mid) > TWO_PI:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _large_search_box(r: float):
    ca = contact_angles(r)
    lmax = math.ceil(TWO_PI / ca.alpha_prime)
    mmax = math.ceil(TWO_PI / ca.beta)
    for l in range(lmax + 1):
        for m in range(mmax + 1):
            for n in range(7):
                if (l, m, n) == (0, 0, 6):
                    continue
                yield LargeSignature(l, m, n), l * ca.alpha_prime + m * ca.beta + n * PI_3 - TWO_PI


def large_feasible(r: float, tol: float = FEASIBILITY_TOL) -> LargeSignature | None:
    """First nontrivial ``(l, m, n)`` closing 2*pi around a large disc, or None."""
    for sig, miss in _large_search_box(r):
        if abs(miss) < tol:
            return sig
    return None


def large_near_misses(r: float, tol: float = FEASIBILITY_TOL, band: float = AUDIT_BAND):
    """``(l, m, n)`` whose miss lies in the annulus ``tol <= |miss| < band``."""
    return [(sig, miss) for sig, miss in _large_search_box(r) if tol <= abs(miss) < band]


def signature_word(sig: SmallSignature) -> str:
    """The canonical cyclic word around a small disc realizing ``sig``.

    Raises :class:`ConsistencyError` if no word, or more than one, exists.
    """
    from .corona import canonicalize_str

    n = sum(sig)
    words = set()
    for letters in itertools.product("1r", repeat=n):
        counts = [0, 0, 0]
        for a, b in zip(letters, letters[1:] + letters[:1]):
            if a == b == "1":
                counts[0] += 1
            elif a == b == "r":
                counts[2] += 1
            else:
                counts[1] += 1
        if tuple(counts) == tuple(sig):
            words.add(canonicalize_str("".join(letters)))
    if len(words) != 1:
        raise ConsistencyError(f"signature {tuple(sig)} has words {sorted(words)}")
    return words.pop()


@dataclass(frozen=True)
class RejectedCandidate:
    signature: SmallSignature
    value: float
    reason: str


@functools.lru_cache(maxsize=None)
def _derivation() -> tuple[tuple[RadiusClass, ...], tuple[RejectedCandidate, ...]]:
    accepted = []
    rejected = []
    for sig in candidate_signatures():
        r = solve_signature(sig)
        large = large_feasible(r)
        if large is None:
            rejected.append(RejectedCandidate(sig, r, "no large-disc signature"))
            continue
        accepted.append((r, sig, large))
    accepted.sort(key=lambda t: -t[0])
    if len(accepted) != 9:
        raise ConsistencyError(f"expected 9 radius classes, derived {len(accepted)}")
    classes = []
    for idx, (r, sig, large) in enumerate(accepted, start=1):
        poly, note = _EXACT_FORMS[sig]
        classes.append(
            RadiusClass(
                id=f"c{idx}",
                value=r,
                signature=sig,
                small_corona_word=signature_word(sig),
                residual_poly=poly,
                closed_form_note=note,
                large_signature=large,
            )
        )
    return tuple(classes), tuple(rejected)


def enumerate_radius_classes() -> list[RadiusClass]:
    """The nine radius classes, ids ``c1..c9`` in decreasing order of r."""
    return list(_derivation()[0])


def rejected_candidates() -> list[RejectedCandidate]:
    """Candidate signatures solved for r but ruled out around large discs."""
    return list(_derivation()[1])


def get_class(class_id: str) -> RadiusClass:
    for rc in _derivation()[0]:
        if rc.id == class_id:
            return rc
    raise UnknownClassError(f"unknown radius class {class_id!r}; expected one of c1..c9")


def residual(rc: RadiusClass) -> float:
    """Stored exact-form polynomial evaluated at ``rc.value`` (Horner)."""
    acc = 0.0
    for coeff in rc.residual_poly:
        acc = acc * rc.value + coeff
    return acc
