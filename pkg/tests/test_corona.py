import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from discpack.corona import (
    BOUNDARY_ARGUMENT,
    LOCAL_CONSISTENCY,
    Corona,
    allowed_coronas,
    angle_decomposition,
    build_corona_set,
    canonicalize,
    canonicalize_str,
    corona_near_misses,
    cyclic_contains,
    enumerate_coronas,
    filter_locally_consistent,
    filter_monochromatic,
)
from discpack.geometry import LARGE, SMALL
from discpack.generate import THETA1, THETA2
from discpack.radii import enumerate_radius_classes, get_class

CLASSES = enumerate_radius_classes()
TWO_PI = 2 * math.pi

# Reference large-disc lists, before canonicalization.
REFERENCE_LARGE = {
    "c1": ["r1r1r1r", "111111"],
    "c2": ["rr1r111", "r11r11r", "111111"],
    "c3": ["rrr1111", "rrrrr1r1", "rrrr1rr1", "rrr1rrr1", "111111"],
    "c4": ["r1r1111", "r11r111", "r1r1r1r1", "111111"],
    "c5": ["rr11111", "rrr1r111", "rrr11r11", "rr1rr111", "rr11rr11",
           "rrrr1r1r1", "rrr1rr1r1", "rr1rr1rr1", "111111"],
    "c6": ["r" * 12, "111111"],
    "c7": ["rr1r1111", "rr11r111", "rrr1r1r1r1", "rr1rr1r1r1", "rr1r1rr1r1", "111111"],
}
LARGE_COUNTS = {"c1": 2, "c2": 3, "c3": 5, "c4": 4, "c5": 9, "c6": 2, "c7": 6, "c8": 13, "c9": 195}

words = st.text(alphabet="1r", min_size=1, max_size=14)


def brute_canonical(w):
    n = len(w)
    forms = [w[s:] + w[:s] for s in range(n)]
    rev = w[::-1]
    forms += [rev[s:] + rev[:s] for s in range(n)]
    return min(forms)


def test_canonicalize_examples():
    assert canonicalize("r111") == "111r"
    assert canonicalize("1r1r1") == "11r1r"
    assert canonicalize("111111") == "111111"
    assert canonicalize([SMALL, LARGE, LARGE]) == [LARGE, LARGE, SMALL]
    with pytest.raises(ValueError):
        canonicalize("")
    with pytest.raises(ValueError):
        canonicalize("1x")


@given(words, st.integers(0, 20), st.booleans())
def test_canonicalize_invariant(w, shift, flip):
    s = shift % len(w)
    moved = w[s:] + w[:s]
    if flip:
        moved = moved[::-1]
    c = canonicalize_str(w)
    assert canonicalize_str(moved) == c
    assert canonicalize_str(c) == c
    assert c == brute_canonical(w)


def test_cyclic_contains():
    assert cyclic_contains("1rr1", "11r")
    assert cyclic_contains("1rr1", "r11")
    assert not cyclic_contains("1r1r", "11")


def test_corona_type():
    c = Corona(LARGE, "r1r1111")
    assert c.word == "1111r1r"
    assert c.length == 7
    assert str(Corona(SMALL, "r111")) == "r:111r"
    with pytest.raises(ValueError):
        Corona(SMALL, "1r")


@pytest.mark.parametrize("rc", CLASSES, ids=lambda rc: rc.id)
def test_small_coronas(rc, backend):
    words_ = {c.word for c in enumerate_coronas(SMALL, rc)}
    assert words_ == {"rrrrrr", rc.small_corona_word}


@pytest.mark.parametrize("rc", CLASSES, ids=lambda rc: rc.id)
def test_large_counts(rc, backend):
    large = enumerate_coronas(LARGE, rc)
    assert len(large) == LARGE_COUNTS[rc.id]
    if rc.id in REFERENCE_LARGE:
        assert {c.word for c in large} == {canonicalize_str(w) for w in REFERENCE_LARGE[rc.id]}


def test_c1_examples():
    rc = get_class("c1")
    assert {c.word for c in enumerate_coronas(SMALL, rc)} == {"rrrrrr", "1111r"}


@pytest.mark.parametrize("rc", CLASSES, ids=lambda rc: rc.id)
def test_closure_and_audit(rc):
    cs = build_corona_set(rc)
    for c in cs.small + cs.large:
        _, total = angle_decomposition(c, rc)
        assert total == pytest.approx(TWO_PI, abs=1e-7)
    assert corona_near_misses(LARGE, rc) == []
    assert corona_near_misses(SMALL, rc) == []


def test_angle_decomposition_examples():
    c1 = get_class("c1")
    counts, total = angle_decomposition(Corona(SMALL, "1111r"), c1)
    assert counts == {"alpha": 3, "beta_prime": 2}
    assert total == pytest.approx(TWO_PI, abs=1e-9)
    counts, total = angle_decomposition(Corona(SMALL, "rrrrrr"), get_class("c7"))
    assert counts == {"pi/3": 6}
    counts, total = angle_decomposition(Corona(LARGE, "r1r1r1r"), c1)
    assert counts == {"alpha_prime": 6, "beta": 1}
    assert total == pytest.approx(TWO_PI, abs=1e-9)
    # the same large corona as two angles of one hexagon kind and one of the other
    assert 2 * THETA1 + THETA2 == pytest.approx(total, abs=1e-12)


def test_local_consistency_examples():
    c7 = filter_locally_consistent(build_corona_set(get_class("c7")))
    assert c7.excluded_reason(Corona(LARGE, "rrr1r1r1r1")) == LOCAL_CONSISTENCY
    c3 = filter_locally_consistent(build_corona_set(get_class("c3")))
    assert c3.excluded_reason(Corona(LARGE, "rrrrr1r1")) == LOCAL_CONSISTENCY
    c4 = filter_locally_consistent(build_corona_set(get_class("c4")))
    assert len(c4.large) == 4


def test_monochromatic_examples():
    c6 = allowed_coronas(get_class("c6"))
    assert c6.excluded_reason(Corona(LARGE, "111111")) == BOUNDARY_ARGUMENT
    assert [c.word for c in c6.large] == ["r" * 12]
    c5 = allowed_coronas(get_class("c5"))
    assert Corona(SMALL, "rrrrrr") in c5
    c1 = allowed_coronas(get_class("c1"))
    assert c1.excluded_reason(Corona(SMALL, "rrrrrr")) == BOUNDARY_ARGUMENT


@pytest.mark.parametrize("rc", CLASSES, ids=lambda rc: rc.id)
def test_filters_monotone(rc):
    raw = build_corona_set(rc)
    once = filter_locally_consistent(raw)
    assert set(once.small) <= set(raw.small) and set(once.large) <= set(raw.large)
    assert filter_locally_consistent(once) == once
    final = allowed_coronas(rc)
    kept = set(final.small) | set(final.large)
    gone = {c for c, _ in final.excluded}
    assert not kept & gone
    assert kept | gone == set(raw.small) | set(raw.large)
    mono_small = Corona(SMALL, "rrrrrr")
    assert (mono_small in final) == (rc.id == "c5")


def test_filter_monochromatic_only_removes_monochromatic():
    cs = filter_monochromatic(build_corona_set(get_class("c9")))
    assert all(c.is_monochromatic for c, _ in cs.excluded)
