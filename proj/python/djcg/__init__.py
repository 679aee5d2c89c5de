"""Classical Dicke-Jaynes-Cummings-Gaudin model: critical points and soliton trajectories."""

import numpy as np

from ._core import (
    Error,
    Model,
    bethe_roots,
    critical_point,
    critical_points,
    fmt_double,
    jacobian_eigenvalues,
    rank1_curves,
    real_slice,
)
from . import _core


class Trajectory:
    """Sampled trajectory in the CSV column schema, columns as numpy arrays."""

    def __init__(self, columns, header, gaps):
        self.header = list(header)
        self.columns = {k: np.asarray(v) for k, v in columns.items()}
        self.gaps = list(gaps)

    def __getitem__(self, name):
        return self.columns[name]

    def __len__(self):
        return len(self.columns["t"])


def rank0_trajectory(model, signs, x0, t0, t1, dt, frozen=(), phase=0.0):
    return Trajectory(*_core.rank0_trajectory(model, list(signs), list(x0), t0, t1, dt, list(frozen), phase))


def rank1_trajectory(model, x, curve, x0, t0, t1, dt, frozen=(), phase=0.0):
    return Trajectory(*_core.rank1_trajectory(model, x, curve, list(x0), t0, t1, dt, list(frozen), phase))


def oracle(model, traj, anchor=0.0, rel_tol=1e-10):
    cols = {k: v.tolist() for k, v in traj.columns.items()}
    return _core.oracle(model, cols, traj.header, anchor, rel_tol)


__all__ = [
    "Error",
    "Model",
    "Trajectory",
    "bethe_roots",
    "critical_point",
    "critical_points",
    "fmt_double",
    "jacobian_eigenvalues",
    "oracle",
    "rank0_trajectory",
    "rank1_curves",
    "rank1_trajectory",
    "real_slice",
]
