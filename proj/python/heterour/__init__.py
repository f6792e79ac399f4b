"""LAD-based bootstrap unit root tests under unconditional heteroskedasticity."""

from ._heterour import (  # noqa: F401
    HeterourError,
    cv_bandwidth,
    density_at_zero,
    estimate_volatility,
    gls_adjust,
    lad_fit,
    lad_objective,
    m_statistics,
    mc_size_power,
    simulate,
    unit_root_test,
    volatility_profile,
    __version__,
)

__all__ = [
    "HeterourError",
    "cv_bandwidth",
    "density_at_zero",
    "estimate_volatility",
    "gls_adjust",
    "lad_fit",
    "lad_objective",
    "m_statistics",
    "mc_size_power",
    "simulate",
    "unit_root_test",
    "volatility_profile",
    "__version__",
]
