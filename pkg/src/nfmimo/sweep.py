"""Constraint-aware grid search over geometry parameters.

Every sweep is an exhaustive evaluation over an explicit grid: each grid
point is checked for feasibility, feasible points get a full metric
report, and the argmax over feasible rows is recorded (ties resolve to
the smallest parameter value). Infeasible points carry a reason and no
metrics, so downstream consumers never interpolate across them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

from .channel import build_los_channel
from .config import ExperimentConfig
from .errors import InvalidArgumentError
from .geometry import (
    ORIGIN,
    LinkGeometry,
    Point3,
    build_upa,
    min_cross_distance,
    rotation_clearance,
)
from .metrics import MetricReport, evaluate, snr_db_to_budget

PARAMETERS = ("rotation_deg", "shape_ratio", "distance")
METRICS = ("capacity_waterfill", "capacity_equal", "edof")


@dataclass(frozen=True)
class SweepSpec:
    """A sweep: which parameter, over which grid, judged by which metric."""

    parameter: str
    grid: tuple[float, ...]
    base: ExperimentConfig
    metric: str

    def __post_init__(self):
        if self.parameter not in PARAMETERS:
            raise InvalidArgumentError(
                f"parameter: expected one of {', '.join(PARAMETERS)}, got {self.parameter!r}"
            )
        if self.metric not in METRICS:
            raise InvalidArgumentError(
                f"metric: expected one of {', '.join(METRICS)}, got {self.metric!r}"
            )
        grid = tuple(float(v) for v in self.grid)
        object.__setattr__(self, "grid", grid)
        if len(grid) == 0:
            raise InvalidArgumentError("grid must be nonempty")
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise InvalidArgumentError("grid must be strictly increasing with no duplicates")
        lo, hi = {
            "rotation_deg": (0.0, 90.0),
            "shape_ratio": (0.0, 1.0),
            "distance": (0.0, math.inf),
        }[self.parameter]
        open_lo = self.parameter in ("shape_ratio", "distance")
        for v in grid:
            if v < lo or v > hi or (open_lo and v <= lo):
                raise InvalidArgumentError(
                    f"grid value {v} outside the legal domain of {self.parameter}"
                )


@dataclass(frozen=True)
class ShapeRealization:
    """A rectangular aperture of area L^2 with an exact element count.

    The sides realize the requested aspect ratio continuously; the
    element grid is the divisor pair of N_total closest to that ratio,
    so the antenna count stays exactly constant across a sweep.
    """

    alpha_requested: float
    nx: int
    ny: int
    side_a: float
    side_b: float
    alpha_realized: float


@dataclass(frozen=True, eq=False)
class SweepRow:
    """One grid point: parameter value, feasibility, and metrics if feasible."""

    value: float
    feasible: bool
    infeasibility_reason: Optional[str] = None
    metrics: Optional[MetricReport] = None
    shape: Optional[ShapeRealization] = None


@dataclass(frozen=True)
class ArgmaxReport:
    value: float
    metric: float


@dataclass(frozen=True, eq=False)
class SweepResult:
    """Rows in grid order plus the argmax over feasible rows (None if there are none)."""

    rows: tuple[SweepRow, ...]
    argmax: Optional[ArgmaxReport]
    spec_echo: dict = field(default_factory=dict)

    @property
    def all_infeasible(self) -> bool:
        return self.argmax is None


def realize_shape(alpha: float, N_total: int, L: float) -> ShapeRealization:
    """Realize a rectangular shape of aspect ratio alpha at fixed area and count.

    Sides are L*sqrt(alpha) x L/sqrt(alpha) (area exactly L^2); the
    element grid is the divisor pair (nx, ny) of N_total with nx <= ny
    minimizing |nx/ny - alpha|.
    """
    if not 0.0 < alpha <= 1.0:
        raise InvalidArgumentError(f"shape ratio must lie in (0, 1], got {alpha}")
    if N_total < 1:
        raise InvalidArgumentError(f"element count must be >= 1, got {N_total}")
    if L <= 0:
        raise InvalidArgumentError(f"aperture scale L must be positive, got {L}")

    root = math.sqrt(alpha)
    side_a, side_b = L * root, L / root

    best_nx = best_ny = None
    best_err = math.inf
    for nx in range(1, math.isqrt(N_total) + 1):
        if N_total % nx == 0:
            ny = N_total // nx
            err = abs(nx / ny - alpha)
            if err < best_err:
                best_nx, best_ny, best_err = nx, ny, err
    return ShapeRealization(
        alpha_requested=alpha,
        nx=best_nx,
        ny=best_ny,
        side_a=side_a,
        side_b=side_b,
        alpha_realized=side_a / side_b,
    )


def _evaluate_link(tx, rx, base: ExperimentConfig) -> tuple[Optional[MetricReport], Optional[str]]:
    link = LinkGeometry.between(tx, rx)
    dmin = min_cross_distance(link)
    if dmin < base.epsilon_clear:
        return None, (
            f"closest element pair is {dmin:.6g} wavelengths apart, "
            f"below the clearance margin {base.epsilon_clear:.6g}"
        )
    P, N0 = snr_db_to_budget(base.snr_db)
    H = build_los_channel(link, base.epsilon_clear)
    return evaluate(H, P, N0, base.normalize), None


def _rotation_row(base: ExperimentConfig, theta_deg: float) -> SweepRow:
    if not rotation_clearance(base.L, theta_deg, base.d, base.epsilon_clear):
        reach = base.L * math.sin(math.radians(theta_deg)) / 2.0
        return SweepRow(
            value=theta_deg,
            feasible=False,
            infeasibility_reason=(
                f"receiver plane reaches back {reach:.6g} wavelengths; "
                f"distance {base.d:g} is below L*sin(theta)/2 + {base.epsilon_clear:g}"
            ),
        )
    tx = build_upa(base.L, base.L, base.nx, base.ny, ORIGIN, 0.0)
    rx = build_upa(base.L, base.L, base.nx, base.ny, Point3(0.0, base.d, 0.0), theta_deg)
    report, reason = _evaluate_link(tx, rx, base)
    if report is None:
        return SweepRow(value=theta_deg, feasible=False, infeasibility_reason=reason)
    return SweepRow(value=theta_deg, feasible=True, metrics=report)


def _shape_row(base: ExperimentConfig, alpha: float, tx_only: bool = False) -> SweepRow:
    realization = realize_shape(alpha, base.N_total, base.L)
    rx_realization = realize_shape(1.0, base.N_total, base.L) if tx_only else realization
    tx = build_upa(
        realization.side_a, realization.side_b, realization.nx, realization.ny, ORIGIN, 0.0
    )
    rx = build_upa(
        rx_realization.side_a,
        rx_realization.side_b,
        rx_realization.nx,
        rx_realization.ny,
        Point3(0.0, base.d, 0.0),
        0.0,
    )
    report, reason = _evaluate_link(tx, rx, base)
    if report is None:
        return SweepRow(
            value=alpha, feasible=False, infeasibility_reason=reason, shape=realization
        )
    return SweepRow(value=alpha, feasible=True, metrics=report, shape=realization)


def _distance_row(base: ExperimentConfig, d: float) -> SweepRow:
    if not rotation_clearance(base.L, 0.0, d, base.epsilon_clear):
        return SweepRow(
            value=d,
            feasible=False,
            infeasibility_reason=(
                f"distance {d:g} is below the clearance margin {base.epsilon_clear:g}"
            ),
        )
    tx = build_upa(base.L, base.L, base.nx, base.ny, ORIGIN, 0.0)
    rx = build_upa(base.L, base.L, base.nx, base.ny, Point3(0.0, d, 0.0), 0.0)
    report, reason = _evaluate_link(tx, rx, base)
    if report is None:
        return SweepRow(value=d, feasible=False, infeasibility_reason=reason)
    return SweepRow(value=d, feasible=True, metrics=report)


def _argmax(rows, metric: str) -> Optional[ArgmaxReport]:
    # Ties resolve to the smallest parameter value, independent of row order.
    best = None
    for row in rows:
        if not row.feasible:
            continue
        value = getattr(row.metrics, metric)
        if best is None or value > best.metric or (value == best.metric and row.value < best.value):
            best = ArgmaxReport(value=row.value, metric=value)
    return best


def _spec_echo(spec: SweepSpec) -> dict:
    return {
        "parameter": spec.parameter,
        "metric": spec.metric,
        "grid": list(spec.grid),
        "config": spec.base.to_dict(),
    }


def _run_grid(spec: SweepSpec, row_fn: Callable[[float], SweepRow]) -> SweepResult:
    # Grid points are independent; rows are assembled in grid order so the
    # result is the same under any evaluation schedule.
    rows = tuple(row_fn(v) for v in spec.grid)
    return SweepResult(rows=rows, argmax=_argmax(rows, spec.metric), spec_echo=_spec_echo(spec))


def grid_search(spec: SweepSpec) -> SweepResult:
    """Exhaustive search over the grid with constraint filtering."""
    row_fn = {
        "rotation_deg": _rotation_row,
        "shape_ratio": _shape_row,
        "distance": _distance_row,
    }[spec.parameter]
    return _run_grid(spec, lambda v: row_fn(spec.base, v))


def rotation_sweep(spec: SweepSpec) -> SweepResult:
    """Sweep the receiver rotation angle, filtering by the plane-clearance constraint."""
    if spec.parameter != "rotation_deg":
        raise InvalidArgumentError(f"rotation sweep requires parameter rotation_deg, got {spec.parameter}")
    return grid_search(spec)


def shape_sweep(spec: SweepSpec, tx_only: bool = False) -> SweepResult:
    """Sweep the rectangular shape ratio at fixed area and element count.

    By default both arrays reshape together; with ``tx_only`` the
    receiver stays square.
    """
    if spec.parameter != "shape_ratio":
        raise InvalidArgumentError(f"shape sweep requires parameter shape_ratio, got {spec.parameter}")
    if spec.metric != "edof":
        raise InvalidArgumentError(f"shape sweep is judged by edof, got {spec.metric}")
    return _run_grid(spec, lambda v: _shape_row(spec.base, v, tx_only))
