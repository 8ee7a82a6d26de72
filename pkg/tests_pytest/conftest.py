"""
Pytest configuration and fixtures for twinmorse tests.

Windows, twin models and buildings are expensive to build, so the shared
ones are session scoped. Vertex ids of an A~1 window are assigned by
(squared norm, coordinate): position 0 is id 0, position -k is id 2k - 1
and position k is id 2k.
"""

import shutil
import sys
import tempfile
from pathlib import Path

import pytest

# Add src to path so we can import the twinmorse package
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from twinmorse.coxcomplex import build_affine_window  # noqa: E402
from twinmorse.exactgeom import RationalVector  # noqa: E402
from twinmorse.polycomplex import SimplicialComplex  # noqa: E402
from twinmorse.sphbuild import build_building  # noqa: E402
from twinmorse.twin import ThinTwinModel  # noqa: E402
from twinmorse.zonotope import Zonotope  # noqa: E402


def a1_id(position):
    """Vertex id of an integer position in an A~1 window."""
    if position <= 0:
        return -2 * position - 1 if position else 0
    return 2 * position


def vec(*values):
    """Shorthand for a rational vector."""
    return RationalVector.of(*values)


@pytest.fixture
def temp_dir():
    """Create a temporary directory for test files."""
    temp_dir = tempfile.mkdtemp()
    yield temp_dir
    shutil.rmtree(temp_dir)


@pytest.fixture(autouse=True)
def no_window_cache(monkeypatch):
    """Keep tests away from a window cache configured in the environment."""
    monkeypatch.delenv("TWINMORSE_CACHE_DIR", raising=False)


@pytest.fixture(scope="session")
def a1_window():
    """A~1 window of radius 3: positions -3..3."""
    return build_affine_window("A~1", 3)[1]


@pytest.fixture(scope="session")
def a2_window():
    """A~2 window of radius 1: the hexagon around the origin."""
    return build_affine_window("A~2", 1)[1]


@pytest.fixture(scope="session")
def a1_model():
    """Thin twin model of type A~1, radius 6, almost rich generators {-1, 1}.

    The zonotope is the segment [-3, 3], so a pair at distance d has
    squared height max(0, |d| - 3)^2.
    """
    return ThinTwinModel.build("A~1", 6)


@pytest.fixture(scope="session")
def k33():
    """Complete bipartite graph K_{3,3} as the join of two rank-one buildings."""
    return build_building("join(points(3),points(3))")


@pytest.fixture(scope="session")
def fano():
    """Flag complex of the projective plane over GF(2)."""
    return build_building("flags(2,2)")


@pytest.fixture
def unit_square():
    """Zonotope spanned by the two unit vectors of the plane."""
    return Zonotope.of([vec(1, 0), vec(0, 1)], 2)


@pytest.fixture
def box():
    """The square [-1, 1]^2."""
    return Zonotope.of([vec(1, 0), vec(-1, 0), vec(0, 1), vec(0, -1)], 2)


@pytest.fixture
def circle():
    """Boundary of a triangle."""
    return SimplicialComplex.from_facets([[0, 1], [1, 2], [0, 2]])


@pytest.fixture
def filled_triangle():
    return SimplicialComplex.from_facets([[0, 1, 2]])


@pytest.fixture
def projective_plane():
    """Six-vertex triangulation of the real projective plane."""
    return SimplicialComplex.from_facets(
        [
            [1, 2, 4],
            [1, 2, 6],
            [1, 3, 4],
            [1, 3, 5],
            [1, 5, 6],
            [2, 3, 5],
            [2, 3, 6],
            [2, 4, 5],
            [3, 4, 6],
            [4, 5, 6],
        ]
    )


# Configure pytest
def pytest_configure(config):
    """Configure pytest with custom markers."""
    config.addinivalue_line(
        "markers", "slow: marks tests as slow (deselect with '-m \"not slow\"')"
    )
    config.addinivalue_line("markers", "integration: marks tests as integration tests")
