import dataclasses
import math
import warnings

import numpy as np
import pytest

from discpack.corona import allowed_coronas
from discpack.errors import AdjacentSmallLayersError, DescriptorError, IndependentSetError, SingleSizeWarning
from discpack.generate import (
    THETA1,
    THETA2,
    C1Layers,
    C2FromTiling,
    C3LayersA,
    C3LayersB,
    C4FromTiling,
    C5Substitute,
    C6Unique,
    C8Fill,
    C9Fill,
    PRESETS,
    generate,
    generate_preset,
    parse_rows,
    preset_names,
    resolve_preset,
    row_tiling,
)
from discpack.generate.layers import c3b_layer_geometry, flattened_hexagon
from discpack.geometry import LARGE, SMALL, contact_angles
from discpack.model import ZERO, Disc, build_tangency_graph, dump_patch
from discpack.radii import get_class
from discpack.verify import DiscStatus, check_compact, check_overlaps, verify_patch


@pytest.mark.parametrize("name", preset_names())
def test_presets_compact(name):
    p = generate_preset(name)
    rep = verify_patch(p)
    assert rep.ok, rep.format()
    assert {d.size for d in p.discs} == {LARGE, SMALL}
    assert p.radius_class.id == PRESETS[name][0]


@pytest.mark.parametrize("name", ["fig1", "fig5", "fig12", "fig15"])
def test_determinism(name):
    assert dump_patch(generate_preset(name)) == dump_patch(generate_preset(name))


def test_resolve_preset():
    assert resolve_preset("figure", "c6")[0] == "c6"
    with pytest.raises(KeyError):
        resolve_preset("fig99")
    with pytest.raises(KeyError):
        resolve_preset("fig1", "c2")
    with pytest.raises(KeyError):
        resolve_preset("figure")


def test_descriptor_mismatch():
    with pytest.raises(DescriptorError):
        generate("c4", C8Fill())
    with pytest.raises(DescriptorError):
        generate("c4", object())


def test_c5_independent_set():
    with pytest.raises(IndependentSetError):
        generate("c5", C5Substitute(points={(0, 0), (1, 0)}, extent=(4, 4)))
    # adjacency wraps around the period
    with pytest.raises(IndependentSetError):
        generate("c5", C5Substitute(points={(0, 0), (3, 0)}, extent=(4, 4)))
    with pytest.raises(DescriptorError):
        generate("c5", C5Substitute(points={(9, 0)}, extent=(4, 4)))


def test_c5_empty_is_triangular():
    with pytest.warns(SingleSizeWarning):
        p = generate("c5", C5Substitute(points=frozenset(), extent=(3, 3)))
    assert all(d.size is LARGE for d in p.discs)
    s3 = math.sqrt(3)
    expected = sorted((round(2 * i + j, 9), round(s3 * j, 9)) for j in range(3) for i in range(3))
    got = sorted((round(d.x, 9), round(d.y, 9)) for d in p.discs)
    assert got == expected
    assert p.periods == ((6.0, 0.0), (3.0, 3 * s3))
    g = build_tangency_graph(p)
    assert all(g.degree(i) == 6 for i in range(9))


def test_c5_block_of_seven():
    p = generate("c5", C5Substitute(points={(1, 1)}, extent=(3, 3)))
    assert p.count(SMALL) == 7 and p.count(LARGE) == 8
    assert verify_patch(p).ok


def test_c3_layer_words():
    for bad in ("LSSL", "SLS", "SS", "S"):
        with pytest.raises(AdjacentSmallLayersError):
            C3LayersA(word=bad)
    with pytest.raises(DescriptorError):
        C3LayersA(word="LXS")
    assert verify_patch(generate("c3", C3LayersA(word="LSLLS"))).ok
    assert verify_patch(generate("c3", C3LayersA(word="LLS"))).ok


@pytest.mark.parametrize("bits", [(0,), (1,), (0, 1), (0, 1, 1), (1, 1, 0, 1)])
def test_c3_family_b_offsets(bits):
    # both signs of the offset are compact: the two placements mirror each other
    assert verify_patch(generate("c3", C3LayersB(bits=bits))).ok


def test_c3_family_b_offset_value():
    r = get_class("c3").value
    geo = c3b_layer_geometry(r)
    # large discs of adjacent layers are tangent
    assert math.hypot(geo["shift"], geo["layer_step"]) == pytest.approx(2.0, abs=1e-12)
    # the two offsets give mirror images of each other
    a = generate("c3", C3LayersB(bits=(0,)))
    b = generate("c3", C3LayersB(bits=(1,)))
    mirrored = dataclasses.replace(
        b,
        discs=tuple(Disc(-d.x, d.y, d.size) for d in b.discs),
        periods=tuple((-x, y) for x, y in b.periods),
    )
    assert verify_patch(mirrored).ok
    words = lambda p: sorted(str(c) for c in check_compact(p).coronas)
    assert words(a) == words(b) == words(mirrored)


def test_c3_both_families_large_coronas():
    allowed = {c.word for c in allowed_coronas(get_class("c3")).large}
    seen = set()
    for d in (C3LayersA(word="LSLLS"), C3LayersB(bits=(0, 1, 1)), C3LayersB(bits=(0,))):
        rep = check_compact(generate("c3", d))
        seen |= {c.word for c in rep.coronas if c is not None and c.center is LARGE}
    assert seen <= allowed
    assert "rrrrr1r1" not in seen


def test_c9_cluster_orientation_is_forced():
    rc = get_class("c9")
    p = generate(rc, C9Fill(holes={(0, 0, 0)}, extent=(3, 3)))
    assert verify_patch(p).ok
    smalls = [i for i, d in enumerate(p.discs) if d.size is SMALL]
    centre = np.mean([(p.discs[i].x, p.discs[i].y) for i in smalls], axis=0)
    c, s = math.cos(math.pi / 3), math.sin(math.pi / 3)
    discs = list(p.discs)
    for i in smalls:
        v = np.array([discs[i].x, discs[i].y]) - centre
        w = centre + np.array([c * v[0] - s * v[1], s * v[0] + c * v[1]])
        discs[i] = Disc(float(w[0]), float(w[1]), SMALL)
    turned = dataclasses.replace(p, discs=tuple(discs))
    assert check_overlaps(turned)


def test_c9_mixed_holes():
    p = generate("c9", C9Fill(holes={(0, 0, 0), (1, 1, 1), (2, 0, 1)}, extent=(3, 3)))
    assert verify_patch(p).ok
    assert p.count(SMALL) == 9


def test_c8_holes_out_of_range():
    with pytest.raises(DescriptorError):
        generate("c8", C8Fill(holes={(5, 0, 0)}, extent=(4, 4)))
    with pytest.raises(DescriptorError):
        C8Fill(holes={(0, 0, 2)})


def test_small_periodic_extent_rejected():
    with pytest.raises(DescriptorError):
        generate("c8", C8Fill(extent=(2, 4)))


def test_c6_unique():
    p = generate("c6", C6Unique(extent=(3, 3)))
    rep = check_compact(p)
    words = {c.word for c in rep.coronas}
    assert words == {"r" * 12, "1r1rr"}
    assert p.count(SMALL) == 6 * p.count(LARGE)


def test_c1_corner_angles():
    r = get_class("c1").value
    ca = contact_angles(r)
    assert THETA1 == pytest.approx(2 * ca.alpha_prime, abs=1e-15)
    assert 4 * THETA1 + 2 * THETA2 == pytest.approx(4 * math.pi, abs=1e-12)
    corners, _ = flattened_hexagon(r)
    edges = np.roll(corners, -1, axis=0) - corners
    np.testing.assert_allclose(np.linalg.norm(edges, axis=1), 2.0, atol=1e-12)


@pytest.mark.parametrize("bits", [(0,), (0, 0, 1), (1, 0), (0, 1, 1, 0, 1)])
def test_c1_large_disc_angle_pattern(bits):
    p = generate("c1", C1Layers(bits=bits))
    assert verify_patch(p).ok
    g = build_tangency_graph(p)
    for i, d in enumerate(p.discs):
        if d.size is not LARGE:
            continue
        cx, cy = d.x, d.y
        angs = sorted(
            math.atan2(p.image(j, off)[1] - cy, p.image(j, off)[0] - cx) % (2 * math.pi)
            for j, off in g.neighbors[i]
            if p.discs[j].size is LARGE
        )
        assert len(angs) == 3
        gaps = sorted((angs[(k + 1) % 3] - angs[k]) % (2 * math.pi) for k in range(3))
        assert gaps == pytest.approx(sorted([THETA1, THETA1, THETA2]), abs=1e-9)


def test_c1_bits_validated():
    with pytest.raises(DescriptorError):
        C1Layers(bits=())
    with pytest.raises(DescriptorError):
        C1Layers(bits=(0, 2))


def test_single_size_tiling_warns():
    t = row_tiling(parse_rows("T+"), 3, periodic=True)
    with pytest.warns(SingleSizeWarning):
        p = generate("c4", C4FromTiling(t))
    assert p.count(SMALL) == 0


def test_no_warning_for_mixed():
    with warnings.catch_warnings():
        warnings.simplefilter("error", SingleSizeWarning)
        generate_preset("fig10")
