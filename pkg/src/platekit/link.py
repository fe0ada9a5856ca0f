"""Radar-equation link budget: received power through a reflecting plate.

The two-hop budget is

    Pr/Pt = Gt * Gr * sigma * lambda^2 / (4*pi * (4*pi*dt*dr)^2)

with antenna gains treated as fixed values aimed at the plate (no pattern
roll-off).  A zero RCS maps to -inf dBm, a distinct "no signal" value;
file writers are responsible for serializing it as the string "-inf".
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .rcs import Wavelength


def db_to_linear(db: float) -> float:
    return 10.0 ** (db / 10.0)


def linear_to_db(x: float) -> float:
    if x < 0.0:
        raise ValueError(f"cannot express a negative power ratio in dB: {x}")
    if x == 0.0:
        return float("-inf")
    return 10.0 * math.log10(x)


def dbm_to_mw(dbm: float) -> float:
    return 10.0 ** (dbm / 10.0)


def mw_to_dbm(mw: float) -> float:
    return linear_to_db(mw)


@dataclass(frozen=True)
class LinkScenario:
    """Transmit side, receive side, and geometry of a reflected link.

    Distances are transmitter-to-plate and plate-to-receiver in meters.
    ``amp_gain_db`` models an external power amplifier after the source,
    so the effective transmit power is tx_power_dbm + amp_gain_db.
    """

    tx_power_dbm: float
    tx_gain_dbi: float
    rx_gain_dbi: float
    tx_distance_m: float
    rx_distance_m: float
    wavelength: Wavelength
    amp_gain_db: float = 0.0

    def __post_init__(self):
        if not (self.tx_distance_m > 0.0 and self.rx_distance_m > 0.0):
            raise ValueError("link distances must be positive")


def received_power(scenario: LinkScenario, sigma_m2: float) -> float:
    """Received power in dBm for a given plate RCS.

    A zero RCS returns -inf (no reflected signal); negative RCS is
    rejected.
    """
    if sigma_m2 < 0.0:
        raise ValueError(f"RCS cannot be negative: {sigma_m2}")
    if sigma_m2 == 0.0:
        return float("-inf")
    path_db = (
        10.0 * math.log10(sigma_m2)
        + 20.0 * math.log10(scenario.wavelength.meters)
        - 10.0 * math.log10(4.0 * math.pi)
        - 20.0 * math.log10(4.0 * math.pi * scenario.tx_distance_m * scenario.rx_distance_m)
    )
    return (
        scenario.tx_power_dbm
        + scenario.amp_gain_db
        + scenario.tx_gain_dbi
        + scenario.rx_gain_dbi
        + path_db
    )


def power_sweep(scenario: LinkScenario, grid, rcs_curve) -> tuple[np.ndarray, np.ndarray]:
    """Received power over a monotone sweep grid.

    ``grid`` labels the sweep points (typically observation angles in
    degrees) and must be strictly increasing.  ``rcs_curve`` is either a
    callable mapping a grid value to an RCS in m^2, or an array of RCS
    values aligned with the grid.  Returns (grid, power_dbm) arrays.
    """
    grid = np.asarray(grid, dtype=float)
    if grid.size == 0:
        raise ValueError("sweep grid is empty")
    if grid.size > 1 and not np.all(np.diff(grid) > 0.0):
        raise ValueError("sweep grid must be strictly increasing")
    if callable(rcs_curve):
        sigmas = np.array([float(rcs_curve(g)) for g in grid])
    else:
        sigmas = np.asarray(rcs_curve, dtype=float)
        if sigmas.shape != grid.shape:
            raise ValueError("rcs_curve array must match the grid shape")
    power = np.array([received_power(scenario, s) for s in sigmas])
    return grid.copy(), power
