"""Physical constants shared by every module.

All internal computation is SI (rad/s, m, K, Pa).  Electron-volt inputs are
converted exactly once, at the configuration boundary, via :func:`ev_to_angular_frequency`.
"""

from __future__ import annotations

from dataclasses import dataclass

import scipy.constants


@dataclass(frozen=True)
class PhysicalConstants:
    """CODATA constants used by the pressure engine (single source of truth)."""

    hbar: float  # J s
    c: float     # m/s
    k_B: float   # J/K


CONSTANTS = PhysicalConstants(
    hbar=scipy.constants.hbar,
    c=scipy.constants.c,
    k_B=scipy.constants.k,
)

# J per eV; used only by the unit-conversion helpers below.
_EV = scipy.constants.e


def ev_to_angular_frequency(energy_ev: float) -> float:
    """Convert a photon energy in eV to an angular frequency in rad/s."""
    return energy_ev * _EV / CONSTANTS.hbar


def ev2_to_angular_frequency2(energy2_ev2: float) -> float:
    """Convert a squared energy in eV^2 to a squared angular frequency in rad^2/s^2."""
    return energy2_ev2 * (_EV / CONSTANTS.hbar) ** 2
