import networkx as nx
import numpy as np
import pytest

from rectpart.config import load_shapes
from rectpart.geometry import Polygon, Rect, polygon_from_json
from rectpart.gadgets import polygon_of


@pytest.fixture(scope="session")
def shapes():
    return {name: polygon_from_json(record) for name, record in load_shapes().items()}


@pytest.fixture
def lshape(shapes):
    return shapes["lshape"]


@pytest.fixture
def cross(shapes):
    return shapes["cross"]


@pytest.fixture
def rectangle(shapes):
    return shapes["rectangle"]


@pytest.fixture
def windmill(shapes):
    return shapes["windmill"]


@pytest.fixture(autouse=True)
def quiet_env(monkeypatch):
    monkeypatch.delenv("RECTPART_ASSERT", raising=False)
    monkeypatch.delenv("RECTPART_ORACLE_CELLS", raising=False)


def box(w, h, point_holes=()):
    return Polygon.make([(0, 0), (w, 0), (w, h), (0, h)], point_holes=point_holes)


def rect(x0, y0, x1, y1):
    return Rect.from_corners((x0, y0), (x1, y1))


def rng(seed):
    return np.random.default_rng(seed)


def stretch(poly, generator):
    """Same polygon with every unit column and row widened to a random length in 1..3."""

    def remap(values):
        order = sorted(set(values))
        steps = generator.integers(1, 4, size=len(order))
        steps[0] = 0
        return dict(zip(order, np.cumsum(steps).tolist()))

    xs = remap(p.x for p in poly.vertices())
    ys = remap(p.y for p in poly.vertices())
    return Polygon.make([(xs[p.x], ys[p.y]) for p in poly.outer])


def _pinched(cells):
    return any(
        ((x, y) in cells) == ((x + 1, y + 1) in cells)
        and ((x + 1, y) in cells) == ((x, y + 1) in cells)
        and ((x, y) in cells) != ((x + 1, y) in cells)
        for x, y in {(a + dx, b + dy) for a, b in cells for dx in (-1, 0) for dy in (-1, 0)}
    )


def polyominoes(board):
    """Every hole-free, pinch-free cell set on a board, one per translation class."""
    frame = nx.grid_2d_graph(board + 2, board + 2)
    seen, out = set(), []
    for bits in range(1, 1 << (board * board)):
        cells = {(k % board + 1, k // board + 1) for k in range(board * board) if bits >> k & 1}
        x0, y0 = min(x for x, _ in cells), min(y for _, y in cells)
        shape = frozenset((x - x0, y - y0) for x, y in cells)
        if shape in seen:
            continue
        seen.add(shape)
        if not nx.is_connected(frame.subgraph(cells)):
            continue
        if not nx.is_connected(frame.subgraph(set(frame) - cells)) or _pinched(cells):
            continue
        out.append(polygon_of([rect(x, y, x + 1, y + 1) for x, y in sorted(shape)]))
    return out
