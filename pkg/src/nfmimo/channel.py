"""Near-field line-of-sight channel construction.

Each entry is the scalar free-space spherical-wave gain between one
transmit and one receive element,

    h(r, t) = exp(-j * 2*pi * d_rt) / (4*pi * d_rt),

with d_rt the element-pair distance in wavelengths (wavelength-normalized
units, so the wavenumber is 2*pi). No far-field planar approximation is
made anywhere: the phase carries the full spherical curvature across the
aperture.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import IO, Optional

import numpy as np

from .errors import InvalidInputError, ModelValidityError
from .geometry import DEFAULT_CLEARANCE, LinkGeometry, cross_distances


@dataclass(frozen=True)
class LinkSummary:
    """Compact record of the geometry a channel matrix was built from."""

    distance: float
    tx_sides: tuple[float, float]
    rx_sides: tuple[float, float]
    rx_rotation_deg: float


@dataclass(frozen=True, eq=False)
class ChannelMatrix:
    """Complex gain matrix between every (rx, tx) element pair."""

    entries: np.ndarray  # complex, shape (n_rx, n_tx)
    wavelength: float = 1.0
    link_meta: Optional[LinkSummary] = None

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=complex)
        object.__setattr__(self, "entries", entries)
        if entries.ndim != 2 or entries.size == 0:
            raise InvalidInputError(f"channel matrix must be 2-D and nonempty, got shape {entries.shape}")
        if not np.isfinite(entries).all():
            raise InvalidInputError("channel matrix has non-finite entries")
        if self.wavelength <= 0:
            raise InvalidInputError(f"wavelength must be positive, got {self.wavelength}")

    @property
    def n_rx(self) -> int:
        return self.entries.shape[0]

    @property
    def n_tx(self) -> int:
        return self.entries.shape[1]


def build_los_channel(
    link: LinkGeometry,
    epsilon_clear: float = DEFAULT_CLEARANCE,
) -> ChannelMatrix:
    """Build the spherical-wave LoS channel matrix for a link.

    Raises ModelValidityError if any element pair is closer than the
    clearance margin, naming the offending pair.
    """
    dists = cross_distances(link.tx.elements, link.rx.elements)
    dmin = float(dists.min())
    if dmin < epsilon_clear:
        r, t = np.unravel_index(int(dists.argmin()), dists.shape)
        raise ModelValidityError(
            f"rx element {r} and tx element {t} are {dmin:.6g} wavelengths apart, "
            f"below the clearance margin {epsilon_clear:.6g}"
        )
    entries = np.exp(-2j * np.pi * dists) / (4.0 * np.pi * dists)
    meta = LinkSummary(
        distance=link.distance,
        tx_sides=(link.tx.side_a, link.tx.side_b),
        rx_sides=(link.rx.side_a, link.rx.side_b),
        rx_rotation_deg=link.rx.rotation_deg,
    )
    return ChannelMatrix(entries=entries, wavelength=1.0, link_meta=meta)


def frobenius_normalize(H: ChannelMatrix) -> ChannelMatrix:
    """Rescale H so its squared Frobenius norm equals n_rx * n_tx.

    Fixes a gain convention under which the configured SNR reads as an
    array-average per-element SNR. Idempotent.
    """
    fro2 = float(np.sum(np.abs(H.entries) ** 2))
    if fro2 == 0.0:
        raise InvalidInputError("cannot normalize an all-zero channel matrix")
    c = np.sqrt(H.entries.size / fro2)
    return ChannelMatrix(entries=c * H.entries, wavelength=H.wavelength, link_meta=H.link_meta)


def dump_entries(H: ChannelMatrix, fh: IO[str]) -> None:
    """Write one line per entry, row-major: ``r,t,re,im`` with 17 significant digits."""
    for r in range(H.n_rx):
        for t in range(H.n_tx):
            v = H.entries[r, t]
            fh.write(f"{r},{t},{v.real:.17g},{v.imag:.17g}\n")
