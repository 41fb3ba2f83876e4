"""Mode spectrum, effective degrees of freedom, and capacity.

The mode spectrum holds the squared singular values of the channel
(eigenvalues of the Gram matrix H H^H), which are the gains of the
parallel sub-channels. EDoF summarizes how many of them dominate:

    EDoF = (sum_i lambda_i)^2 / (sum_i lambda_i^2)

Capacity is the Shannon log-sum over the parallel modes,
sum_i log2(1 + p_i * lambda_i / N0), with powers assigned either by
water-filling or split equally across the positive modes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel import ChannelMatrix, frobenius_normalize
from .errors import InvalidArgumentError, InvalidInputError, UndefinedMetricError

# Modes weaker than this (relative to the strongest) count as zero when
# splitting power equally.
EQUAL_POWER_MODE_FLOOR = 1e-14


@dataclass(frozen=True, eq=False)
class ModeSpectrum:
    """Squared singular values of a channel matrix, sorted descending."""

    values: np.ndarray
    source_shape: tuple[int, int]

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", values)
        if values.ndim != 1:
            raise InvalidInputError("mode spectrum must be one-dimensional")
        if (values < 0).any() or not np.isfinite(values).all():
            raise InvalidInputError("mode spectrum values must be finite and nonnegative")
        if values.size > 1 and (np.diff(values) > 0).any():
            raise InvalidInputError("mode spectrum must be sorted descending")

    def __len__(self) -> int:
        return self.values.size


@dataclass(frozen=True, eq=False)
class PowerAllocation:
    """Per-mode transmit powers, aligned with a ModeSpectrum."""

    powers: np.ndarray
    total_power: float
    noise_density: float
    water_level: float  # meaningful only for water-filling


@dataclass(frozen=True, eq=False)
class MetricReport:
    """One-shot evaluation of a channel: EDoF plus both capacity figures."""

    edof: float
    capacity_waterfill: float
    capacity_equal: float
    spectrum: ModeSpectrum
    allocation: PowerAllocation


def _entries_of(H) -> np.ndarray:
    if isinstance(H, ChannelMatrix):
        return H.entries
    return np.asarray(H)


def mode_spectrum(H) -> ModeSpectrum:
    """Squared singular values of H (a ChannelMatrix or a 2-D array), descending."""
    entries = _entries_of(H)
    if entries.ndim != 2 or entries.size == 0:
        raise InvalidInputError(f"expected a nonempty 2-D matrix, got shape {entries.shape}")
    if not np.isfinite(entries).all():
        raise InvalidInputError("matrix has non-finite entries")
    s = np.linalg.svd(entries, compute_uv=False)
    return ModeSpectrum(values=s * s, source_shape=entries.shape)


def edof(spectrum: ModeSpectrum) -> float:
    """Effective degrees of freedom: (sum lambda)^2 / sum lambda^2.

    Scale-invariant; equals the number of positive modes exactly when
    they are all equal.
    """
    v = spectrum.values
    total = float(v.sum())
    if total <= 0.0:
        raise UndefinedMetricError("EDoF is undefined for an all-zero mode spectrum")
    return total * total / float(np.dot(v, v))


def waterfill(spectrum: ModeSpectrum, P: float, N0: float) -> PowerAllocation:
    """Capacity-optimal power allocation over the modes.

    p_i = max(0, mu - N0/lambda_i) with the water level mu set so the
    powers sum to P, found by the sorted-modes active-set procedure.
    """
    if P <= 0:
        raise InvalidArgumentError(f"total power must be positive, got {P}")
    if N0 <= 0:
        raise InvalidArgumentError(f"noise density must be positive, got {N0}")
    lam = spectrum.values
    m = int(np.count_nonzero(lam > 0))
    if m == 0:
        raise UndefinedMetricError("water-filling is undefined without a positive mode")

    # Floors N0/lambda_i rise with i (lam is descending); activate the
    # largest prefix whose water level clears its last floor.
    floors = N0 / lam[:m]
    k = 1
    mu = P + floors[0]
    for cand in range(m, 0, -1):
        level = (P + floors[:cand].sum()) / cand
        if level >= floors[cand - 1]:
            k, mu = cand, level
            break
    powers = np.zeros(lam.size)
    powers[:k] = mu - floors[:k]
    return PowerAllocation(powers=powers, total_power=P, noise_density=N0, water_level=mu)


def equal_power(spectrum: ModeSpectrum, P: float, N0: float) -> PowerAllocation:
    """Split P equally across the positive modes.

    Modes below EQUAL_POWER_MODE_FLOOR relative to the strongest count as
    zero, so power is not wasted on numerically null modes.
    """
    if P <= 0:
        raise InvalidArgumentError(f"total power must be positive, got {P}")
    if N0 <= 0:
        raise InvalidArgumentError(f"noise density must be positive, got {N0}")
    lam = spectrum.values
    if lam.size == 0 or lam[0] <= 0:
        raise UndefinedMetricError("equal power is undefined without a positive mode")
    active = lam >= EQUAL_POWER_MODE_FLOOR * lam[0]
    powers = np.where(active, P / int(active.sum()), 0.0)
    return PowerAllocation(powers=powers, total_power=P, noise_density=N0, water_level=math.nan)


def capacity(spectrum: ModeSpectrum, allocation: PowerAllocation) -> float:
    """Shannon capacity sum_i log2(1 + p_i * lambda_i / N0), in bits per channel use."""
    if allocation.powers.size != spectrum.values.size:
        raise InvalidInputError(
            f"allocation length {allocation.powers.size} != spectrum length {spectrum.values.size}"
        )
    snr = allocation.powers * spectrum.values / allocation.noise_density
    return float(np.sum(np.log2(1.0 + snr)))


def snr_db_to_budget(snr_db: float) -> tuple[float, float]:
    """Interpret an SNR in dB as (P, N0) with N0 = 1 in normalized units."""
    if not math.isfinite(snr_db):
        raise InvalidArgumentError(f"SNR must be finite, got {snr_db}")
    return 10.0 ** (snr_db / 10.0), 1.0


def evaluate(H: ChannelMatrix, P: float, N0: float, normalize: bool = True) -> MetricReport:
    """Full metric pipeline for one channel.

    EDoF always comes from the raw channel (it is scale-invariant); the
    capacities use the Frobenius-normalized channel when ``normalize`` is
    true, so the SNR reads as an array-average per-element figure.
    """
    raw = mode_spectrum(H)
    edof_value = edof(raw)
    spec = mode_spectrum(frobenius_normalize(H)) if normalize else raw
    wf = waterfill(spec, P, N0)
    cap_wf = capacity(spec, wf)
    cap_eq = capacity(spec, equal_power(spec, P, N0))
    return MetricReport(
        edof=edof_value,
        capacity_waterfill=cap_wf,
        capacity_equal=cap_eq,
        spectrum=spec,
        allocation=wf,
    )
