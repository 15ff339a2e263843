"""Foundational geometry and risk evaluation.

The three value types (`Dataset`, `Centers`, `WeightedSet`) are immutable
after construction (backing arrays are set read-only) and safe to share
across threads. The risk operations are pure functions of their inputs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "Dataset",
    "Centers",
    "WeightedSet",
    "squared_dist",
    "empirical_risk",
    "weighted_risk",
    "min_sq_dists",
    "assign_nearest",
    "uniform_weighted",
]


def _as_points(points, name: str) -> np.ndarray:
    arr = np.asarray(points, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"{name} must be a non-empty (n, d) array")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite coordinates")
    arr = arr.copy() if not arr.flags.owndata else arr
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class Dataset:
    """A dense collection of n points in R^d.

    `ball_radius` is optional support-radius metadata (the data is assumed
    to live in a ball of that radius at the origin); when absent,
    `bound_radius()` falls back to the max point norm.
    """

    points: np.ndarray
    ball_radius: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "points", _as_points(self.points, "points"))
        if self.ball_radius is not None and self.ball_radius <= 0:
            raise ValueError("ball_radius must be positive")

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def d(self) -> int:
        return self.points.shape[1]

    def bound_radius(self) -> float:
        """Support radius B: the stored bound, else max point norm."""
        if self.ball_radius is not None:
            return float(self.ball_radius)
        return float(np.sqrt((self.points**2).sum(axis=1).max()))

    def prefix(self, m: int) -> "Dataset":
        """Truncation to the first m points (shares memory)."""
        if not 1 <= m <= self.n:
            raise ValueError(f"prefix size {m} outside [1, {self.n}]")
        return Dataset(self.points[:m], ball_radius=self.ball_radius)

    def subset(self, idx) -> "Dataset":
        return Dataset(self.points[np.asarray(idx)], ball_radius=self.ball_radius)


@dataclass(frozen=True)
class Centers:
    """A set of k candidate centers in R^d."""

    centers: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "centers", _as_points(self.centers, "centers"))

    @property
    def k(self) -> int:
        return self.centers.shape[0]

    @property
    def d(self) -> int:
        return self.centers.shape[1]


@dataclass(frozen=True)
class WeightedSet:
    """Points with nonnegative weights; represents coresets and subsamples."""

    points: np.ndarray
    weights: np.ndarray = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        object.__setattr__(self, "points", _as_points(self.points, "points"))
        w = np.asarray(self.weights, dtype=np.float64)
        if w.ndim != 1 or w.shape[0] != self.points.shape[0]:
            raise ValueError("weights must be 1-D and match the point count")
        if not np.all(np.isfinite(w)):
            raise ValueError("weights contain non-finite values")
        if np.any(w < 0):
            raise ValueError("weights must be nonnegative")
        if not np.any(w > 0):
            raise ValueError("at least one weight must be positive")
        w = w.copy() if not w.flags.owndata else w
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)

    @property
    def size(self) -> int:
        return self.points.shape[0]

    @property
    def d(self) -> int:
        return self.points.shape[1]


def uniform_weighted(data: Dataset) -> WeightedSet:
    """The dataset as a weighted set with weight 1/n per point."""
    w = np.full(data.n, 1.0 / data.n)
    return WeightedSet(data.points, w)


def _check_dims(d_left: int, d_right: int) -> None:
    if d_left != d_right:
        raise ValueError(f"dimension mismatch: {d_left} != {d_right}")


def min_sq_dists(points: np.ndarray, centers: np.ndarray) -> np.ndarray:
    """Per-point squared distance to the nearest of the given centers.

    Computed per center from explicit differences (no dot-product trick),
    which keeps the result exact for coinciding points.
    """
    points = np.atleast_2d(np.asarray(points, dtype=np.float64))
    centers = np.atleast_2d(np.asarray(centers, dtype=np.float64))
    _check_dims(points.shape[1], centers.shape[1])
    out = np.full(points.shape[0], np.inf)
    for c in centers:
        diff = points - c
        np.minimum(out, np.einsum("ij,ij->i", diff, diff), out=out)
    return out


def assign_nearest(points: np.ndarray, centers: np.ndarray):
    """Nearest-center labels and squared distances.

    Ties break toward the lowest center index (argmin convention).
    """
    points = np.atleast_2d(np.asarray(points, dtype=np.float64))
    centers = np.atleast_2d(np.asarray(centers, dtype=np.float64))
    _check_dims(points.shape[1], centers.shape[1])
    dists = np.empty((points.shape[0], centers.shape[0]))
    for j, c in enumerate(centers):
        diff = points - c
        dists[:, j] = np.einsum("ij,ij->i", diff, diff)
    labels = dists.argmin(axis=1)
    return labels, dists[np.arange(points.shape[0]), labels]


def squared_dist(x, c: Centers) -> float:
    """min over centers of the squared Euclidean distance to x."""
    x = np.asarray(x, dtype=np.float64).reshape(-1)
    _check_dims(x.shape[0], c.d)
    return float(min_sq_dists(x.reshape(1, -1), c.centers)[0])


def empirical_risk(data: Dataset, c: Centers) -> float:
    """Mean squared distance of the data to its nearest centers.

    numpy's pairwise-summation mean keeps accumulation error negligible
    even for millions of points.
    """
    _check_dims(data.d, c.d)
    return float(min_sq_dists(data.points, c.centers).mean())


def weighted_risk(ws: WeightedSet, c: Centers) -> float:
    """Weighted SUM of squared distances (not a mean).

    With uniform weights 1/s this coincides with the empirical risk of the
    same points.
    """
    _check_dims(ws.d, c.d)
    return float(ws.weights @ min_sq_dists(ws.points, c.centers))
