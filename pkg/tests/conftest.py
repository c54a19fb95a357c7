import math

import numpy as np
import pytest

from discpack import kernels
from discpack.generate import Tiling
from discpack.radii import get_class


@pytest.fixture(params=kernels.available_backends())
def backend(request):
    previous = kernels.use_backend(request.param)
    yield request.param
    kernels.use_backend(previous)


@pytest.fixture
def c4():
    return get_class("c4")


def move_tiling(t: Tiling, angle: float, shift, mirror: bool = False) -> Tiling:
    """Apply a rigid motion (optionally with a reflection) to every vertex."""
    c, s = math.cos(angle), math.sin(angle)
    m = np.array([[c, -s], [s, c]])
    if mirror:
        m = m @ np.diag([1.0, -1.0])
    verts = tuple(tuple(map(float, m @ v + shift)) for v in np.array(t.vertices))
    faces = t.faces
    if mirror:
        faces = tuple(type(f)(f.kind, f.vertices[::-1], f.offsets[::-1] if f.offsets else None) for f in faces)
    periods = None
    if t.periods is not None:
        periods = tuple(tuple(map(float, m @ v)) for v in np.array(t.periods))
    return Tiling(verts, faces, periods)


# One line per acceptance criterion, printed after the run.
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])
