"""Near-field XL-MIMO performance analysis toolkit.

Builds spherical-wave channel matrices between planar antenna arrays,
computes effective degrees of freedom and water-filling capacity, and
runs constraint-aware parameter sweeps over rotation angle, rectangular
shape ratio, and link distance.
"""

__version__ = "0.1.0"

from .channel import ChannelMatrix, build_los_channel, dump_entries, frobenius_normalize
from .config import ExperimentConfig, load_config, parse_config
from .geometry import (
    DEFAULT_CLEARANCE,
    ORIGIN,
    ArrayGeometry,
    LinkGeometry,
    Point3,
    build_upa,
    min_cross_distance,
    rotation_clearance,
)
from .metrics import (
    MetricReport,
    ModeSpectrum,
    PowerAllocation,
    capacity,
    edof,
    equal_power,
    evaluate,
    mode_spectrum,
    snr_db_to_budget,
    waterfill,
)
from .sweep import (
    ArgmaxReport,
    ShapeRealization,
    SweepResult,
    SweepRow,
    SweepSpec,
    grid_search,
    realize_shape,
    rotation_sweep,
    shape_sweep,
)

__all__ = [
    "__version__",
    "ArrayGeometry",
    "ArgmaxReport",
    "ChannelMatrix",
    "DEFAULT_CLEARANCE",
    "ExperimentConfig",
    "LinkGeometry",
    "MetricReport",
    "ModeSpectrum",
    "ORIGIN",
    "Point3",
    "PowerAllocation",
    "ShapeRealization",
    "SweepResult",
    "SweepRow",
    "SweepSpec",
    "build_los_channel",
    "build_upa",
    "capacity",
    "dump_entries",
    "edof",
    "equal_power",
    "evaluate",
    "frobenius_normalize",
    "grid_search",
    "load_config",
    "min_cross_distance",
    "mode_spectrum",
    "parse_config",
    "realize_shape",
    "rotation_clearance",
    "rotation_sweep",
    "shape_sweep",
    "snr_db_to_budget",
    "waterfill",
]
