"""Floquet-engineered chain simulator bindings."""

from ._core import (
    CouplingCurve,
    DeviceSpec,
    DrivePattern,
    ModelOptions,
    OtocGrid,
    ReversalResult,
    SiteTimeSeries,
    SshResult,
    WalkResult,
    bessel_j0,
    default_otoc_grid,
    otoc_velocity,
    rabi_coupling_sweep,
    run_otoc,
    run_otoc_zz_free_fermion,
    run_quantum_walk,
    run_reversed_evolution,
    run_ssh_quench,
    walk_velocity,
)

__all__ = [
    "CouplingCurve",
    "DeviceSpec",
    "DrivePattern",
    "ModelOptions",
    "OtocGrid",
    "ReversalResult",
    "SiteTimeSeries",
    "SshResult",
    "WalkResult",
    "bessel_j0",
    "default_otoc_grid",
    "otoc_velocity",
    "rabi_coupling_sweep",
    "run_otoc",
    "run_otoc_zz_free_fermion",
    "run_quantum_walk",
    "run_reversed_evolution",
    "run_ssh_quench",
    "walk_velocity",
]
