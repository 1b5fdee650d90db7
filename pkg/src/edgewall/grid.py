"""1D grids on [0, x_max]: uniform, and geometrically stretched away from the edge."""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError


class Grid:
    """Ordered node set on [0, x_max] with node 0 pinned at the edge x = 0.

    Attributes
    ----------
    nodes : (n+1,) array, strictly increasing, nodes[0] == 0
    spacings : (n,) array of cell widths
    weights : (n+1,) array of trapezoid quadrature weights
    """

    def __init__(self, nodes):
        nodes = np.asarray(nodes, dtype=float)
        if nodes.ndim != 1 or nodes.size < 2:
            raise DomainError("grid needs at least two nodes")
        if nodes[0] != 0.0:
            raise DomainError(f"first grid node must be 0, got {nodes[0]!r}")
        spacings = np.diff(nodes)
        if not np.all(spacings > 0.0):
            raise DomainError("grid nodes must be strictly increasing")
        self.nodes = nodes
        self.spacings = spacings
        self.weights = np.empty_like(nodes)
        self.weights[0] = 0.5 * spacings[0]
        self.weights[-1] = 0.5 * spacings[-1]
        self.weights[1:-1] = 0.5 * (spacings[:-1] + spacings[1:])
        self.nodes.setflags(write=False)

    def __len__(self):
        return self.nodes.size

    @property
    def x_max(self) -> float:
        return float(self.nodes[-1])

    def __repr__(self):
        return f"Grid({self.nodes.size} nodes, x_max={self.x_max:g})"


def make_uniform_grid(dx: float, x_max: float) -> Grid:
    """Uniform grid with spacing dx covering [0, x_max] (last node >= x_max)."""
    if not dx > 0.0:
        raise DomainError(f"dx must be positive, got {dx!r}")
    if not x_max > 0.0:
        raise DomainError(f"x_max must be positive, got {x_max!r}")
    n = max(1, math.ceil(x_max / dx - 1e-12))
    return Grid(dx * np.arange(n + 1))


def make_stretched_grid(dx0: float, stretch_b: float, x_max: float, h_max: float = 16.0) -> Grid:
    """Geometrically stretched grid: first cell dx0, each cell wider by 1 + 1/b.

    Cell widths are capped at h_max so the far field stays resolved.  Passing
    stretch_b = inf gives back a uniform grid of spacing dx0.
    """
    if not dx0 > 0.0:
        raise DomainError(f"dx0 must be positive, got {dx0!r}")
    if not stretch_b > 0.0:
        raise DomainError(f"stretch factor must be positive, got {stretch_b!r}")
    if not x_max > 0.0:
        raise DomainError(f"x_max must be positive, got {x_max!r}")
    if not h_max >= dx0:
        raise DomainError(f"h_max must be >= dx0, got h_max={h_max!r} dx0={dx0!r}")
    growth = 1.0 + 1.0 / stretch_b
    nodes = [0.0]
    h = dx0
    while nodes[-1] < x_max:
        nodes.append(nodes[-1] + h)
        h = min(h * growth, h_max)
    return Grid(np.array(nodes))
