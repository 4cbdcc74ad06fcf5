"""Python bindings for the kp5 pseudospectral lab."""

from ._kp5 import (
    Grid,
    Kp5Error,
    SpecError,
    energy,
    evolve,
    mass,
    omega,
    propagate,
    read_dump,
    resonance,
    run_suite,
    sobolev_norm,
    suite_names,
    write_dump,
    zero_mode_project,
)

__all__ = [
    "Grid",
    "Kp5Error",
    "SpecError",
    "energy",
    "evolve",
    "mass",
    "omega",
    "propagate",
    "read_dump",
    "resonance",
    "run_suite",
    "sobolev_norm",
    "suite_names",
    "write_dump",
    "zero_mode_project",
]
