"""Joint tests of quantile forecast optimality across horizons, levels, and series."""

from ._qfopt import (
    ConfigError,
    LoadError,
    SingularDesignError,
    emit_report,
    normal_quantile,
    pinball_loss,
    qr_fit,
    run_test,
    simulate_size_power,
    student_t_quantile,
)

__all__ = [
    "ConfigError",
    "LoadError",
    "SingularDesignError",
    "emit_report",
    "normal_quantile",
    "pinball_loss",
    "qr_fit",
    "run_test",
    "simulate_size_power",
    "student_t_quantile",
]
