"""Declarative experiment configuration.

A config is a flat JSON document. Unknown keys are rejected and every
value is range-checked so a saved config echo reproduces a run exactly.

Keys (by experiment):

    experiment     "rotation" | "shape" | "single"        required
    L              aperture side, wavelengths             required, > 0
    d              center-to-center distance, wavelengths required, > 0
    nx, ny         element counts (rotation/single)       default 11 x 11
    N_total        element count (shape)                  default 144
    snr_db         P/N0 in dB                             default 10
    normalize      Frobenius-normalize for capacity       default true
    grid           sweep values (rotation/shape)          defaults below
    epsilon_clear  clearance margin, wavelengths          default 0.05
    output_path    CSV file name or path                  default per experiment

Default grids: rotation sweeps 0..90 degrees in 1-degree steps; shape
sweeps the aspect ratios {1/9, 1/4, 4/9, 9/16, 16/25, 1}.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Optional

from .errors import ConfigError

EXPERIMENTS = ("rotation", "shape", "single")

DEFAULT_NX = 11
DEFAULT_NY = 11
DEFAULT_N_TOTAL = 144
DEFAULT_SNR_DB = 10.0
DEFAULT_EPSILON_CLEAR = 0.05

DEFAULT_ROTATION_GRID = tuple(float(t) for t in range(91))
DEFAULT_SHAPE_GRID = (1 / 9, 1 / 4, 4 / 9, 9 / 16, 16 / 25, 1.0)

_DEFAULT_OUTPUT = {
    "rotation": "rotation_sweep.csv",
    "shape": "shape_sweep.csv",
    "single": "evaluate.csv",
}


@dataclass(frozen=True)
class ExperimentConfig:
    """Validated description of one experiment run."""

    experiment: str
    L: float
    d: float
    nx: Optional[int] = None
    ny: Optional[int] = None
    N_total: Optional[int] = None
    snr_db: float = DEFAULT_SNR_DB
    normalize: bool = True
    grid: Optional[tuple[float, ...]] = None
    epsilon_clear: float = DEFAULT_EPSILON_CLEAR
    output_path: str = ""

    def to_dict(self) -> dict:
        """Flat key-value echo; parsing it back yields an identical config."""
        doc = {
            "experiment": self.experiment,
            "L": self.L,
            "d": self.d,
            "snr_db": self.snr_db,
            "normalize": self.normalize,
            "epsilon_clear": self.epsilon_clear,
            "output_path": self.output_path,
        }
        if self.experiment == "shape":
            doc["N_total"] = self.N_total
        else:
            doc["nx"] = self.nx
            doc["ny"] = self.ny
        if self.grid is not None:
            doc["grid"] = list(self.grid)
        return doc


def _require_number(doc: dict, key: str, *, positive: bool = False) -> float:
    value = doc[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{key}: expected a number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise ConfigError(f"{key}: must be finite, got {value}")
    if positive and value <= 0:
        raise ConfigError(f"{key}: must be positive, got {value}")
    return value


def _require_int(doc: dict, key: str, minimum: int) -> int:
    value = doc[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{key}: expected an integer, got {value!r}")
    if value < minimum:
        raise ConfigError(f"{key}: must be >= {minimum}, got {value}")
    return value


def _require_grid(doc: dict, experiment: str) -> tuple[float, ...]:
    raw = doc["grid"]
    if not isinstance(raw, (list, tuple)) or len(raw) == 0:
        raise ConfigError("grid: expected a nonempty list of numbers")
    values = []
    for v in raw:
        if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(float(v)):
            raise ConfigError(f"grid: expected finite numbers, got {v!r}")
        values.append(float(v))
    for a, b in zip(values, values[1:]):
        if b <= a:
            raise ConfigError("grid: values must be strictly increasing with no duplicates")
    if experiment == "rotation" and not all(0.0 <= v <= 90.0 for v in values):
        raise ConfigError("grid: rotation angles must lie in [0, 90] degrees")
    if experiment == "shape" and not all(0.0 < v <= 1.0 for v in values):
        raise ConfigError("grid: shape ratios must lie in (0, 1]")
    return tuple(values)


_KEYS_COMMON = {"experiment", "L", "d", "snr_db", "normalize", "epsilon_clear", "output_path"}
_KEYS_BY_EXPERIMENT = {
    "rotation": _KEYS_COMMON | {"nx", "ny", "grid"},
    "shape": _KEYS_COMMON | {"N_total", "grid"},
    "single": _KEYS_COMMON | {"nx", "ny"},
}


def parse_config(doc) -> ExperimentConfig:
    """Parse and validate a config document (JSON text or an already-loaded dict)."""
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigError("config must be a JSON object of key-value pairs")

    if "experiment" not in doc:
        raise ConfigError("missing required key: experiment")
    experiment = doc["experiment"]
    if experiment not in EXPERIMENTS:
        raise ConfigError(
            f"experiment: expected one of {', '.join(EXPERIMENTS)}, got {experiment!r}"
        )

    allowed = _KEYS_BY_EXPERIMENT[experiment]
    for key in doc:
        if key not in allowed:
            raise ConfigError(f"unknown key for {experiment} experiment: {key}")
    for key in ("L", "d"):
        if key not in doc:
            raise ConfigError(f"missing required key: {key}")

    L = _require_number(doc, "L", positive=True)
    d = _require_number(doc, "d", positive=True)
    snr_db = _require_number(doc, "snr_db") if "snr_db" in doc else DEFAULT_SNR_DB
    epsilon_clear = (
        _require_number(doc, "epsilon_clear") if "epsilon_clear" in doc else DEFAULT_EPSILON_CLEAR
    )
    if epsilon_clear < 0:
        raise ConfigError(f"epsilon_clear: must be >= 0, got {epsilon_clear}")

    normalize = doc.get("normalize", True)
    if not isinstance(normalize, bool):
        raise ConfigError(f"normalize: expected true or false, got {normalize!r}")

    output_path = doc.get("output_path", _DEFAULT_OUTPUT[experiment])
    if not isinstance(output_path, str) or not output_path:
        raise ConfigError(f"output_path: expected a nonempty string, got {output_path!r}")

    nx = ny = n_total = None
    grid = None
    if experiment == "shape":
        n_total = _require_int(doc, "N_total", 1) if "N_total" in doc else DEFAULT_N_TOTAL
        grid = _require_grid(doc, experiment) if "grid" in doc else DEFAULT_SHAPE_GRID
    else:
        nx = _require_int(doc, "nx", 1) if "nx" in doc else DEFAULT_NX
        ny = _require_int(doc, "ny", 1) if "ny" in doc else DEFAULT_NY
        if experiment == "rotation":
            grid = _require_grid(doc, experiment) if "grid" in doc else DEFAULT_ROTATION_GRID

    return ExperimentConfig(
        experiment=experiment,
        L=L,
        d=d,
        nx=nx,
        ny=ny,
        N_total=n_total,
        snr_db=snr_db,
        normalize=normalize,
        grid=grid,
        epsilon_clear=epsilon_clear,
        output_path=output_path,
    )


def load_config(path: str) -> ExperimentConfig:
    """Read and parse a JSON config file."""
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config(fh.read())
