"""Weighted Sasakian structures on odd spheres: curvature, volume, Futaki
invariant and extremal descent."""

from ._sasaki import (
    ComputationError,
    classify,
    energy,
    frame_residual,
    futaki_closed,
    futaki_numeric,
    homothety_frame,
    mean_scalar,
    random_sphere_point,
    run_cli,
    run_criterion,
    run_flow,
    sasaki_metric,
    scalar_closed,
    scalar_fd,
    volume,
    volume_closed,
)

__all__ = [
    "ComputationError",
    "classify",
    "energy",
    "frame_residual",
    "futaki_closed",
    "futaki_numeric",
    "homothety_frame",
    "mean_scalar",
    "random_sphere_point",
    "run_cli",
    "run_criterion",
    "run_flow",
    "sasaki_metric",
    "scalar_closed",
    "scalar_fd",
    "volume",
    "volume_closed",
]
