import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from discpack.corona import Corona
from discpack.errors import OverlapError, PatchFormatError
from discpack.generate import C8Fill, generate, generate_preset, preset_names
from discpack.geometry import LARGE, SMALL
from discpack.model import (
    ZERO,
    Disc,
    Patch,
    build_tangency_graph,
    corona_of,
    corona_patch,
    dump_patch,
    lattice_coords,
    load_patch,
    periodize,
    read_patch,
    reduce_basis,
    write_patch,
)
from discpack.radii import get_class

C4 = get_class("c4")
SQ3 = math.sqrt(3)


def large_patch(points, periods=None):
    return Patch(C4, tuple(Disc(x, y, LARGE) for x, y in points), periods)


def triangular(n=3):
    pts = [(2 * i + j, SQ3 * j) for j in range(n) for i in range(n)]
    return large_patch(pts, ((2.0 * n, 0.0), (float(n), SQ3 * n)))


def flower():
    pts = [(0.0, 0.0)] + [(2 * math.cos(k * math.pi / 3), 2 * math.sin(k * math.pi / 3)) for k in range(6)]
    return large_patch(pts)


def test_disc_requires_finite():
    with pytest.raises(ValueError):
        Disc(float("nan"), 0.0, LARGE)


def test_patch_period_checks():
    with pytest.raises(ValueError, match="independent"):
        large_patch([(0, 0)], ((6.0, 0.0), (12.0, 0.0)))
    with pytest.raises(ValueError, match="longer"):
        large_patch([(0, 0)], ((3.0, 0.0), (0.0, 6.0)))


def test_two_discs():
    g = build_tangency_graph(large_patch([(0, 0), (2, 0)]))
    assert list(g.edges()) == [(0, 1, ZERO)]
    g = build_tangency_graph(large_patch([(0, 0), (2.5, 0)]))
    assert list(g.edges()) == []


def test_overlap_raises():
    with pytest.raises(OverlapError) as exc:
        build_tangency_graph(large_patch([(0, 0), (1.9, 0)]))
    assert exc.value.pair == (0, 1)


def test_triangular_lattice_degree_six():
    p = triangular(3)
    g = build_tangency_graph(p)
    assert all(g.degree(i) == 6 for i in range(len(p.discs)))
    assert all(corona_of(p, g, i) == Corona(LARGE, "111111") for i in range(len(p.discs)))


def test_flower():
    p = flower()
    g = build_tangency_graph(p)
    assert corona_of(p, g, 0) == Corona(LARGE, "111111")
    assert all(corona_of(p, g, i) is None for i in range(1, 7))


def test_small_disc_in_filled_lattice():
    p = generate("c8", C8Fill(extent=(4, 4)))
    g = build_tangency_graph(p)
    smalls = [i for i, d in enumerate(p.discs) if d.size is SMALL]
    assert smalls and all(corona_of(p, g, i) == Corona(SMALL, "111") for i in smalls)


@pytest.mark.parametrize("name", preset_names())
def test_graph_symmetric(name):
    p = generate_preset(name)
    g = build_tangency_graph(p)
    for i, nbrs in enumerate(g.neighbors):
        for j, (a, b) in nbrs:
            assert g.adjacent(j, i, (-a, -b))
            xi, yi = p.image(i, ZERO)
            xj, yj = p.image(j, (a, b))
            rho = p.discs[i].radius(p.r) + p.discs[j].radius(p.r)
            assert abs(math.hypot(xj - xi, yj - yi) - rho) <= 1e-9 * rho


def test_neighbours_sorted_by_angle():
    p = generate_preset("fig9")
    g = build_tangency_graph(p)
    for i, nbrs in enumerate(g.neighbors):
        cx, cy = p.image(i, ZERO)
        angs = [math.atan2(p.image(*n)[1] - cy, p.image(*n)[0] - cx) % (2 * math.pi) for n in nbrs]
        assert angs == sorted(angs)


@given(
    st.floats(-10, 10), st.floats(-10, 10), st.floats(-10, 10), st.floats(-10, 10),
)
def test_reduce_basis(ax, ay, bx, by):
    a, b = np.array([ax, ay]), np.array([bx, by])
    if abs(ax * by - ay * bx) < 1e-3:
        return
    ra, rb, u = reduce_basis(a, b)
    assert abs(round(np.linalg.det(u))) == 1
    np.testing.assert_allclose(np.column_stack([a, b]) @ u, np.column_stack([ra, rb]), atol=1e-9)
    assert ra @ ra <= rb @ rb + 1e-9
    assert abs(ra @ rb) <= 0.5 * (ra @ ra) + 1e-9


def test_periodize_drops_translates():
    per = ((6.0, 0.0), (3.0, 3 * SQ3))
    discs = [Disc(0.0, 0.0, LARGE), Disc(6.0, 0.0, LARGE), Disc(9.0, 3 * SQ3, LARGE), Disc(1.0, 0.5, SMALL)]
    out = periodize(discs, per)
    assert len(out) == 2
    frac = lattice_coords([(d.x, d.y) for d in out], per)
    assert np.all(frac >= 0) and np.all(frac < 1)
    with pytest.raises(ValueError):
        periodize([Disc(0.0, 0.0, LARGE), Disc(6.0, 0.0, SMALL)], per)


def test_offsets_survive_skewed_basis():
    p = triangular(3)
    (ax, ay), (bx, by) = p.periods
    skew = Patch(C4, p.discs, ((ax, ay), (ax + bx, ay + by)))
    g1, g2 = build_tangency_graph(p), build_tangency_graph(skew)
    assert sorted(len(n) for n in g1.neighbors) == sorted(len(n) for n in g2.neighbors)
    for i, nbrs in enumerate(g2.neighbors):
        for j, off in nbrs:
            x0, y0 = skew.image(i, ZERO)
            x1, y1 = skew.image(j, off)
            assert math.hypot(x1 - x0, y1 - y0) == pytest.approx(2.0, abs=1e-9)


@pytest.mark.parametrize("name", ["fig2", "fig8", "fig13"])
def test_dump_load_round_trip(name, tmp_path):
    p = generate_preset(name)
    text = dump_patch(p)
    assert load_patch(text) == p
    path = tmp_path / "p.json"
    write_patch(p, path)
    assert read_patch(path) == p
    assert dump_patch(read_patch(path)) == text


finite = st.floats(-1e6, 1e6, allow_nan=False, allow_infinity=False)


@settings(max_examples=50)
@given(st.lists(st.tuples(finite, finite, st.sampled_from([LARGE, SMALL])), max_size=8))
def test_dump_load_exact(items):
    p = Patch(C4, tuple(Disc(x, y, s) for x, y, s in items))
    assert load_patch(dump_patch(p)) == p


def test_dump_is_one_disc_per_line():
    text = dump_patch(generate_preset("fig4"))
    disc_lines = [ln for ln in text.splitlines() if ln.strip().startswith('{"x"')]
    assert len(disc_lines) == len(generate_preset("fig4").discs)
    json.loads(text)


def _doc(**over):
    doc = {"radius_class": "c4", "r": C4.value, "discs": [{"x": 0, "y": 0, "size": "large"}]}
    doc.update(over)
    return json.dumps(doc)


@pytest.mark.parametrize(
    "text,message",
    [
        ('{"radius_class": "c4",\n "r": }', "line 2"),
        ("[]", "top level"),
        (_doc(periods=[[6, 0]]), "periods: expected two period vectors, got 1"),
        (_doc(radius_class="c12"), "radius_class"),
        (_doc(r=0.5), "r: "),
        (_doc(discs=[{"x": 0, "y": 0, "size": "medium"}]), "discs[0].size"),
        (_doc(discs=[{"x": "a", "y": 0, "size": "small"}]), "discs[0].x"),
        (_doc(discs=[{"x": 0, "size": "small"}]), "discs[0].y"),
        (_doc(extra=1), "extra: unknown field"),
        (_doc(periods=[[1, 0], [0, 6]]), "periods"),
    ],
)
def test_load_errors(text, message):
    with pytest.raises(PatchFormatError) as exc:
        load_patch(text)
    assert message in str(exc.value)


def test_corona_patch_closes():
    p = corona_patch(get_class("c7"), LARGE, "rr1r1111")
    g = build_tangency_graph(p)
    assert corona_of(p, g, 0) == Corona(LARGE, "rr1r1111")
