"""Periodic meshes on the unit circle [0, 1)."""

from __future__ import annotations

import numpy as np

_SUM_TOL = 8 * np.finfo(float).eps
_SNAP = 4 * np.finfo(float).eps


def wrap(x):
    """Reduce positions modulo 1 into [0, 1).

    Works on scalars and arrays. Non-finite input raises ``ValueError``.
    """
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValueError("wrap: non-finite position")
    r = arr - np.floor(arr)
    # x - floor(x) rounds up to 1.0 for tiny negative x
    r = np.where(r >= 1.0, 0.0, r)
    if r.ndim == 0:
        return float(r)
    return r


class PeriodicGrid:
    """Strictly increasing nodes 0 = x_0 < ... < x_{M-1} < 1 on the circle.

    Cell ``j`` is ``[x_j, x_{j+1})`` with ``x_M`` identified with ``x_0 + 1``.
    Instances are treated as immutable.
    """

    def __init__(self, nodes, *, _uniform=None):
        nodes = np.array(nodes, dtype=float)
        if nodes.ndim != 1:
            raise ValueError("nodes must be one-dimensional")
        if nodes.size < 4:
            raise ValueError(f"need at least 4 nodes, got {nodes.size}")
        if nodes[0] != 0.0:
            raise ValueError("first node must be 0")
        if not np.all(np.isfinite(nodes)) or nodes[-1] >= 1.0:
            raise ValueError("nodes must lie in [0, 1)")
        if _uniform:
            widths = np.full(nodes.size, 1.0 / nodes.size)
        else:
            widths = np.diff(np.append(nodes, 1.0))
        if np.any(widths <= 0):
            raise ValueError("nodes must be strictly increasing")
        if abs(widths.sum() - 1.0) > _SUM_TOL:
            raise ValueError("cell widths do not sum to 1")

        nodes.setflags(write=False)
        widths.setflags(write=False)
        self.nodes = nodes
        self.widths = widths
        self.M = nodes.size
        self.h_max = float(widths.max())
        if _uniform is None:
            _uniform = bool(np.allclose(widths, 1.0 / self.M, rtol=0, atol=1e-14))
        self.uniform = _uniform

    def __repr__(self):
        kind = "uniform" if self.uniform else "non-uniform"
        return f"PeriodicGrid(M={self.M}, {kind}, h_max={self.h_max:.6g})"

    def __len__(self):
        return self.M

    @property
    def h(self):
        return self.h_max

    def locate(self, x):
        """Cell index ``j`` with ``wrap(x)`` in ``[x_j, x_{j+1})``.

        Positions within a few ulps of a node are assigned to that node, so
        a foot that should land on ``x_j`` exactly evaluates at ``s = 0``.
        """
        j, _ = self.locate_local(x)
        return j

    def locate_local(self, x):
        """Cell indices and local coordinates ``s = (wrap(x) - x_j) / h_j``."""
        xw = np.asarray(wrap(x), dtype=float)
        if self.uniform:
            j = np.minimum(np.floor(xw * self.M).astype(np.intp), self.M - 1)
            # xw * M can round across a node; fix up by one cell
            j = j - (xw < self.nodes[j])
            upper = np.where(j + 1 < self.M, self.nodes[np.minimum(j + 1, self.M - 1)], 1.0)
            j = j + (xw >= upper)
            s = (xw - self.nodes[j]) * self.M
        else:
            j = np.searchsorted(self.nodes, xw, side="right") - 1
            s = (xw - self.nodes[j]) / self.widths[j]
        # positions within a few ulps of a node are that node
        tol = _SNAP / self.widths[j]
        ahead = s > 1.0 - tol
        j = np.where(ahead, (j + 1) % self.M, j)
        s = np.where(ahead | (s < tol), 0.0, s)
        if j.ndim == 0:
            return int(j), float(s)
        return j, s


def uniform_grid(M):
    """Uniform grid with nodes ``j / M``."""
    if int(M) != M or M < 4:
        raise ValueError(f"uniform_grid needs an integer M >= 4, got {M!r}")
    M = int(M)
    return PeriodicGrid(np.arange(M) / M, _uniform=True)


def perturbed_grid(M, amplitude=0.3, seed=None):
    """Non-uniform grid: uniform nodes jittered by up to ``amplitude`` cells.

    Node 0 stays at 0. Handy for exercising the non-uniform code paths.
    """
    if not 0 <= amplitude < 0.5:
        raise ValueError("amplitude must be in [0, 0.5)")
    rng = np.random.default_rng(seed)
    nodes = np.arange(M) / M
    nodes[1:] += rng.uniform(-amplitude, amplitude, M - 1) / M
    return PeriodicGrid(nodes)


def locate_cell(grid, x):
    """Free-function form of :meth:`PeriodicGrid.locate`."""
    return grid.locate(x)
