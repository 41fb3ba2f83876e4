"""Planar antenna array geometry.

All lengths are in multiples of the carrier wavelength. The transmitter
convention used throughout the toolkit: an unrotated array lies in a
plane of constant y with its first axis along x and its second along z;
tilting an array means rotating it about the vertical (z) axis through
its own center.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError, InvalidGeometryError

# Margin (wavelengths) keeping element pairs away from contact, where the
# spherical-wave amplitude diverges.
DEFAULT_CLEARANCE = 0.05


@dataclass(frozen=True)
class Point3:
    """A point in 3-D space, coordinates in wavelengths."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        if not all(math.isfinite(c) for c in (self.x, self.y, self.z)):
            raise InvalidGeometryError(
                f"non-finite coordinate in point ({self.x}, {self.y}, {self.z})"
            )

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=float)


ORIGIN = Point3(0.0, 0.0, 0.0)


@dataclass(frozen=True, eq=False)
class ArrayGeometry:
    """A planar antenna array: element positions plus aperture metadata.

    ``elements`` is an (nx*ny, 3) float array, row-major over the
    (nx, ny) grid: element i*ny + j sits at first-axis step i and
    second-axis step j.
    """

    elements: np.ndarray
    side_a: float
    side_b: float
    nx: int
    ny: int
    center: Point3
    rotation_deg: float

    def __post_init__(self):
        elements = np.asarray(self.elements, dtype=float)
        object.__setattr__(self, "elements", elements)
        if self.side_a <= 0 or self.side_b <= 0:
            raise InvalidGeometryError(
                f"aperture sides must be positive, got {self.side_a} x {self.side_b}"
            )
        if self.nx < 1 or self.ny < 1:
            raise InvalidGeometryError(
                f"element counts must be >= 1, got {self.nx} x {self.ny}"
            )
        if elements.shape != (self.nx * self.ny, 3):
            raise InvalidGeometryError(
                f"expected {self.nx * self.ny} elements, got shape {elements.shape}"
            )
        if not np.isfinite(elements).all():
            raise InvalidGeometryError("non-finite element position")
        if self.n_elements > 1 and min_self_distance(elements) <= 0.0:
            raise InvalidGeometryError("duplicate element positions in array")

    @property
    def n_elements(self) -> int:
        return self.nx * self.ny


@dataclass(frozen=True, eq=False)
class LinkGeometry:
    """A transmit/receive array pair with center-to-center distance."""

    tx: ArrayGeometry
    rx: ArrayGeometry
    distance: float

    def __post_init__(self):
        actual = float(
            np.linalg.norm(self.rx.center.as_array() - self.tx.center.as_array())
        )
        if self.distance <= 0:
            raise InvalidGeometryError(f"link distance must be positive, got {self.distance}")
        if abs(self.distance - actual) > 1e-12 * max(actual, 1.0):
            raise InvalidGeometryError(
                f"stated distance {self.distance} != center separation {actual}"
            )
        if float(cross_distances(self.tx.elements, self.rx.elements).min()) <= 0.0:
            raise InvalidGeometryError("transmit and receive arrays share an element position")

    @classmethod
    def between(cls, tx: ArrayGeometry, rx: ArrayGeometry) -> "LinkGeometry":
        """Link two arrays, computing the center-to-center distance."""
        distance = float(
            np.linalg.norm(rx.center.as_array() - tx.center.as_array())
        )
        return cls(tx=tx, rx=rx, distance=distance)


def _axis_coords(side: float, n: int) -> np.ndarray:
    # Endpoint-inclusive grid: spacing side/(n-1) keeps the full aperture
    # extent; a single element sits on the center line.
    if n == 1:
        return np.zeros(1)
    return -side / 2.0 + np.arange(n) * (side / (n - 1))


def rotate_about_z(points: np.ndarray, theta_deg: float, pivot: Point3 = ORIGIN) -> np.ndarray:
    """Rotate points (N, 3) by theta_deg about the vertical (z) axis through pivot."""
    theta = math.radians(theta_deg)
    c, s = math.cos(theta), math.sin(theta)
    rot = np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])
    p = pivot.as_array()
    return (np.asarray(points, dtype=float) - p) @ rot.T + p


def build_upa(
    side_a: float,
    side_b: float,
    nx: int,
    ny: int,
    center: Point3 = ORIGIN,
    rotation_deg: float = 0.0,
) -> ArrayGeometry:
    """Build a uniform planar array over a side_a x side_b aperture.

    Elements form an endpoint-inclusive nx x ny grid (first axis along x,
    second along z, plane y = center.y before rotation), rotated by
    rotation_deg about the vertical axis through center.
    """
    if side_a <= 0 or side_b <= 0:
        raise InvalidGeometryError(
            f"aperture sides must be positive, got {side_a} x {side_b}"
        )
    if nx < 1 or ny < 1:
        raise InvalidGeometryError(f"element counts must be >= 1, got {nx} x {ny}")

    xs = _axis_coords(side_a, nx)
    zs = _axis_coords(side_b, ny)
    local = np.column_stack(
        [np.repeat(xs, ny), np.zeros(nx * ny), np.tile(zs, nx)]
    )
    if rotation_deg != 0.0:
        local = rotate_about_z(local, rotation_deg)
    elements = local + center.as_array()
    elements.setflags(write=False)
    return ArrayGeometry(
        elements=elements,
        side_a=side_a,
        side_b=side_b,
        nx=nx,
        ny=ny,
        center=center,
        rotation_deg=rotation_deg,
    )


def rotation_clearance(
    L: float,
    theta_deg: float,
    d: float,
    epsilon_clear: float = DEFAULT_CLEARANCE,
) -> bool:
    """Check that a receiver of side L tilted by theta_deg keeps clear of the transmitter.

    A receiving plane rotated about the vertical axis through its center
    reaches back toward the transmitting plane by L*sin(theta)/2, so the
    link is geometrically valid only when d >= L*sin(theta)/2 plus the
    clearance margin.
    """
    if L <= 0:
        raise InvalidArgumentError(f"aperture side L must be positive, got {L}")
    if d <= 0:
        raise InvalidArgumentError(f"distance d must be positive, got {d}")
    if not 0.0 <= theta_deg <= 90.0:
        raise InvalidArgumentError(
            f"rotation angle must lie in [0, 90] degrees, got {theta_deg}"
        )
    return d >= L * math.sin(math.radians(theta_deg)) / 2.0 + epsilon_clear


def cross_distances(tx_elements: np.ndarray, rx_elements: np.ndarray) -> np.ndarray:
    """Euclidean distances between every (rx, tx) element pair, shape (n_rx, n_tx)."""
    diff = np.asarray(rx_elements)[:, None, :] - np.asarray(tx_elements)[None, :, :]
    return np.sqrt(np.sum(diff * diff, axis=-1))


def min_self_distance(elements: np.ndarray) -> float:
    """Minimum distance between distinct elements of one array."""
    dists = cross_distances(elements, elements)
    np.fill_diagonal(dists, np.inf)
    return float(dists.min())


def min_cross_distance(link: LinkGeometry) -> float:
    """Minimum element-pair distance across the two arrays of a link.

    Used as a model-validity guard: channel entries diverge as a pair
    distance approaches zero.
    """
    return float(cross_distances(link.tx.elements, link.rx.elements).min())
