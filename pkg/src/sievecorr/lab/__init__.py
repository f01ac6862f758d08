"""Configuration, sweeps, records and the command-line interface."""

from .config import SweepConfig, build_config, parse_config_text
from .records import (
    RunRecord,
    emit_csv,
    emit_json,
    emit_plot_data,
    load_records,
    parse_csv,
    parse_json,
)
from .sweep import empirical_eps0, estimate_exponent, run_point, run_sweep, spot_shifts

__all__ = [
    "RunRecord",
    "SweepConfig",
    "build_config",
    "emit_csv",
    "emit_json",
    "emit_plot_data",
    "empirical_eps0",
    "estimate_exponent",
    "load_records",
    "parse_config_text",
    "parse_csv",
    "parse_json",
    "run_point",
    "run_sweep",
    "spot_shifts",
]
