"""Classical hydrogen electron under zero-point radiation.

Thin wrapper over the compiled core; see the project README for the physics
conventions (CGS-Gaussian units throughout).
"""

from sedsim._core import (  # noqa: F401
    CavityConfig,
    FieldMode,
    FieldRealization,
    PhysicalConstants,
    Polarization,
    RadialHistogram,
    RunConfig,
    RunResult,
    SnapshotReport,
    TrajectorySample,
    WaveDirection,
    __version__,
    bohr_radius,
    circular_frequency,
    circular_speed,
    l1_distance_to_qm,
    max_mode_index,
    mode_count,
    mode_frequency,
    qm_radial_density,
    run_campaign,
    run_single,
    window_bounds,
)
