"""Closed-form radar cross section of a rectangular conducting plate.

The bistatic RCS factorizes into three pieces:

    sigma = sigma_max * f_js * f_af

where ``sigma_max = 4*pi*L1^2*L2^2 / lambda^2`` is the largest attainable
value, ``f_js`` (in [0, 1]) captures the polarization/projection loss of the
induced surface current, and ``f_af`` (in [0, 1]) is a sinc-squared array
factor driven by the projections of the deflection vector (observation
direction minus incidence direction) on the two plate edges.  The general
form holds for any plate size, orientation, and linear polarization; the
angle-parameterized functions below specialize it to a plate lying in the
x-y plane.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import geometry
from .geometry import FRAME_ORTHO_TOL, check_unit

SPEED_OF_LIGHT_M_S = 299792458.0

_EX = np.array([1.0, 0.0, 0.0])
_EY = np.array([0.0, 1.0, 0.0])
_EZ = np.array([0.0, 0.0, 1.0])


@dataclass(frozen=True)
class Wavelength:
    """Free-space wavelength in meters, with derived wavenumber."""

    meters: float

    def __post_init__(self):
        if not self.meters > 0.0:
            raise ValueError(f"wavelength must be positive: {self.meters}")

    @property
    def k(self) -> float:
        """Wavenumber 2*pi/lambda in rad/m."""
        return 2.0 * math.pi / self.meters

    @classmethod
    def from_frequency(cls, hz: float) -> "Wavelength":
        if not hz > 0.0:
            raise ValueError(f"frequency must be positive: {hz}")
        return cls(SPEED_OF_LIGHT_M_S / hz)


@dataclass(frozen=True)
class PlateGeometry:
    """Rectangular plate: edge lengths plus an orthonormal orientation triad.

    ``edge1``/``edge2`` are the directions of the L1/L2 edges and ``normal``
    = edge1 x edge2 points out of the reflecting face.
    """

    length1: float
    length2: float
    normal: np.ndarray
    edge1: np.ndarray
    edge2: np.ndarray

    def __post_init__(self):
        if not (self.length1 > 0.0 and self.length2 > 0.0):
            raise ValueError("plate edge lengths must be positive")
        n = check_unit(self.normal, "normal")
        e1 = check_unit(self.edge1, "edge1")
        e2 = check_unit(self.edge2, "edge2")
        if (
            abs(float(np.dot(n, e1))) > FRAME_ORTHO_TOL
            or abs(float(np.dot(n, e2))) > FRAME_ORTHO_TOL
            or abs(float(np.dot(e1, e2))) > FRAME_ORTHO_TOL
        ):
            raise ValueError("plate frame is not orthonormal")
        if float(np.linalg.norm(np.cross(e1, e2) - n)) > FRAME_ORTHO_TOL:
            raise ValueError("plate frame is not right-handed (normal != edge1 x edge2)")

    @classmethod
    def xy_plane(cls, length1: float, length2: float) -> "PlateGeometry":
        """Plate in the x-y plane, edges along +x and +y, normal +z."""
        return cls(length1, length2, _EZ.copy(), _EX.copy(), _EY.copy())

    @classmethod
    def from_frame(cls, length1: float, length2: float, normal, edge1) -> "PlateGeometry":
        n, e1, e2 = geometry.plate_frame(normal, edge1)
        return cls(length1, length2, n, e1, e2)

    @classmethod
    def from_euler_zyz(
        cls, length1: float, length2: float, alpha: float, beta: float, gamma: float
    ) -> "PlateGeometry":
        """Canonical x-y plate rotated by intrinsic z-y-z Euler angles (radians)."""
        r = geometry.rotation_zyz(alpha, beta, gamma)
        return cls(length1, length2, r @ _EZ, r @ _EX, r @ _EY)

    def rotated(self, matrix) -> "PlateGeometry":
        r = geometry.check_rotation(matrix)
        return PlateGeometry(
            self.length1, self.length2, r @ self.normal, r @ self.edge1, r @ self.edge2
        )

    def area(self) -> float:
        return self.length1 * self.length2


@dataclass(frozen=True)
class RcsBreakdown:
    """RCS value together with its three factors.

    ``front_side_valid`` is True when the wave illuminates the front face and
    the observer is on the front side (normal . a_inc < 0 and
    normal . a_obs > 0); outside that regime the physical-optics model the
    closed form rests on is not trustworthy, but the formula still evaluates.
    """

    sigma_m2: float
    sigma_max_m2: float
    f_js: float
    f_af: float
    front_side_valid: bool

    @property
    def sigma_dbsm(self) -> float:
        return dbsm(self.sigma_m2)


def dbsm(sigma_m2: float) -> float:
    """RCS in decibels relative to one square meter; 0 maps to -inf."""
    if sigma_m2 < 0.0:
        raise ValueError(f"RCS cannot be negative: {sigma_m2}")
    if sigma_m2 == 0.0:
        return float("-inf")
    return 10.0 * math.log10(sigma_m2)


def sinc(x):
    """Unnormalized sinc sin(x)/x with a series branch near zero.

    The |x| < 1e-6 branch returns 1 - x^2/6, which is exact to double
    precision there and yields exactly 1.0 at the specular direction, the
    most frequently queried point.  Accepts scalars or arrays.
    """
    arr = np.asarray(x, dtype=float)
    small = np.abs(arr) < 1e-6
    safe = np.where(small, 1.0, arr)
    out = np.where(small, 1.0 - arr * arr / 6.0, np.sin(safe) / safe)
    if arr.ndim == 0:
        return float(out)
    return out


def sigma_max(plate: PlateGeometry, wl: Wavelength) -> float:
    """Largest attainable RCS, 4*pi*L1^2*L2^2/lambda^2 (m^2)."""
    return 4.0 * math.pi * plate.length1**2 * plate.length2**2 / wl.meters**2


def f_js(normal, h_dir, a_obs):
    """Induced-current projection factor |(normal x h_dir) x a_obs|^2.

    Broadcasts over a trailing (..., 3) stack of observation directions.
    """
    u = np.cross(np.asarray(normal, dtype=float), np.asarray(h_dir, dtype=float))
    w = np.cross(u, np.asarray(a_obs, dtype=float))
    out = np.sum(w * w, axis=-1)
    if out.ndim == 0:
        return float(out)
    return out


def f_af(plate: PlateGeometry, a_inc, a_obs, wl: Wavelength):
    """Array factor: sinc^2 of the deflection projections on both edges.

    Broadcasts over a trailing (..., 3) stack of observation directions.
    """
    d = np.asarray(a_obs, dtype=float) - np.asarray(a_inc, dtype=float)
    x1 = 0.5 * wl.k * plate.length1 * np.sum(d * plate.edge1, axis=-1)
    x2 = 0.5 * wl.k * plate.length2 * np.sum(d * plate.edge2, axis=-1)
    out = sinc(x1) ** 2 * sinc(x2) ** 2
    if np.ndim(out) == 0:
        return float(out)
    return out


def rcs(plate: PlateGeometry, a_inc, h_dir, a_obs, wl: Wavelength) -> RcsBreakdown:
    """Bistatic RCS of the plate for one incident wave and observer.

    Parameters
    ----------
    a_inc : propagation direction of the incident wave (toward the plate).
    h_dir : magnetic field direction of the incident wave; must be
        orthogonal to a_inc or the wave is not a valid plane wave.
    a_obs : direction from the plate toward the observer.
    """
    a_inc = check_unit(a_inc, "a_inc")
    a_obs = check_unit(a_obs, "a_obs")
    h_dir = check_unit(h_dir, "h_dir")
    if abs(float(np.dot(a_inc, h_dir))) > FRAME_ORTHO_TOL:
        raise ValueError("h_dir is not orthogonal to a_inc (malformed plane wave)")
    smax = sigma_max(plate, wl)
    js = f_js(plate.normal, h_dir, a_obs)
    af = f_af(plate, a_inc, a_obs, wl)
    valid = float(np.dot(plate.normal, a_inc)) < 0.0 and float(np.dot(plate.normal, a_obs)) > 0.0
    return RcsBreakdown(smax * js * af, smax, js, af, valid)


def specular_direction(normal, a_inc) -> np.ndarray:
    """Mirror-reflection direction a_inc - 2*(normal . a_inc)*normal."""
    n = check_unit(normal, "normal")
    a = check_unit(a_inc, "a_inc")
    d = float(np.dot(n, a))
    if d >= 0.0:
        raise ValueError("back-side illumination: normal . a_inc must be negative")
    return a - 2.0 * d * n


def rcs_large_plate_limit(
    plate: PlateGeometry, a_inc, h_dir, a_obs, wl: Wavelength, angle_tol: float = 1e-9
) -> float:
    """Electrically-large-plate limit: a point mass at the specular direction.

    Returns sigma_max * |(normal x h_dir) x a_spec|^2 when a_obs lies within
    ``angle_tol`` radians of the specular direction, else 0.  The angular
    separation is computed from the chord length, which resolves angles far
    below the arccos granularity near zero.
    """
    a_inc = check_unit(a_inc, "a_inc")
    a_obs = check_unit(a_obs, "a_obs")
    h_dir = check_unit(h_dir, "h_dir")
    if abs(float(np.dot(a_inc, h_dir))) > FRAME_ORTHO_TOL:
        raise ValueError("h_dir is not orthogonal to a_inc (malformed plane wave)")
    spec = specular_direction(plate.normal, a_inc)
    chord = float(np.linalg.norm(a_obs - spec))
    angle = 2.0 * math.asin(min(1.0, 0.5 * chord))
    if angle > angle_tol:
        return 0.0
    return sigma_max(plate, wl) * f_js(plate.normal, h_dir, spec)


def _check_angles(theta_t, phi_t=None, varphi_t=None, theta_r=None, phi_r=None):
    for name, val, lo, hi, lo_open, hi_closed in (
        ("theta_t", theta_t, 0.0, math.pi / 2, False, True),
        ("phi_t", phi_t, 0.0, 2 * math.pi, False, False),
        ("varphi_t", varphi_t, 0.0, 2 * math.pi, False, True),
        ("theta_r", theta_r, 0.0, math.pi / 2, False, True),
        ("phi_r", phi_r, 0.0, 2 * math.pi, False, False),
    ):
        if val is None:
            continue
        arr = np.asarray(val, dtype=float)
        bad = (arr < lo) | ((arr > hi) if hi_closed else (arr >= hi))
        if np.any(bad):
            raise ValueError(f"{name} out of range: {val}")


def rcs_xy_plate(theta_t, phi_t, varphi_t, theta_r, phi_r, length1, length2, wl: Wavelength):
    """RCS of an x-y-plane plate, parameterized entirely by angles (radians).

    theta/phi are the zenith/azimuth of the incidence and observation
    directions, varphi_t the polarization angle.  Broadcasts over array
    angle inputs.
    """
    _check_angles(theta_t, phi_t, varphi_t, theta_r, phi_r)
    theta_t, phi_t, varphi_t, theta_r, phi_r = np.broadcast_arrays(
        *(np.asarray(a, dtype=float) for a in (theta_t, phi_t, varphi_t, theta_r, phi_r))
    )
    st, ct = np.sin(theta_t), np.cos(theta_t)
    sr, cr = np.sin(theta_r), np.cos(theta_r)
    sv, cv = np.sin(varphi_t), np.cos(varphi_t)
    dphi = phi_t - phi_r
    bracket = (cr * (sv * ct * np.sin(phi_r - phi_t) + cv * np.cos(dphi))) ** 2 + (
        cv * np.sin(dphi) + sv * ct * np.cos(dphi)
    ) ** 2
    smax = 4.0 * math.pi * length1**2 * length2**2 / wl.meters**2
    x1 = 0.5 * wl.k * length1 * (sr * np.cos(phi_r) + st * np.cos(phi_t))
    x2 = 0.5 * wl.k * length2 * (sr * np.sin(phi_r) + st * np.sin(phi_t))
    out = smax * bracket * sinc(x1) ** 2 * sinc(x2) ** 2
    if out.ndim == 0:
        return float(out)
    return out


def rcs_perpendicular(theta_t, theta_r, phi_r, length1, length2, wl: Wavelength):
    """x-y plate RCS for E perpendicular to the vertical incidence plane.

    Specialization of rcs_xy_plate to polarization angle 90 or 270 degrees
    with the wave arriving from azimuth 270 degrees.
    """
    _check_angles(theta_t, theta_r=theta_r, phi_r=phi_r)
    theta_t, theta_r, phi_r = np.broadcast_arrays(
        *(np.asarray(a, dtype=float) for a in (theta_t, theta_r, phi_r))
    )
    st, ct = np.sin(theta_t), np.cos(theta_t)
    sr, cr = np.sin(theta_r), np.cos(theta_r)
    bracket = (ct * cr * np.cos(phi_r)) ** 2 + (ct * np.sin(phi_r)) ** 2
    smax = 4.0 * math.pi * length1**2 * length2**2 / wl.meters**2
    x1 = 0.5 * wl.k * length1 * sr * np.cos(phi_r)
    x2 = 0.5 * wl.k * length2 * (sr * np.sin(phi_r) - st)
    out = smax * bracket * sinc(x1) ** 2 * sinc(x2) ** 2
    if out.ndim == 0:
        return float(out)
    return out


def rcs_perpendicular_cut(theta_t, theta_r, length1, length2, wl: Wavelength):
    """Principal cut of rcs_perpendicular at observation azimuth 90 degrees:

    sigma = sigma_max * cos^2(theta_t) * sinc^2(k*L2/2 * (sin theta_r - sin theta_t))
    """
    _check_angles(theta_t, theta_r=theta_r)
    theta_t, theta_r = np.broadcast_arrays(
        np.asarray(theta_t, dtype=float), np.asarray(theta_r, dtype=float)
    )
    smax = 4.0 * math.pi * length1**2 * length2**2 / wl.meters**2
    x2 = 0.5 * wl.k * length2 * (np.sin(theta_r) - np.sin(theta_t))
    out = smax * np.cos(theta_t) ** 2 * sinc(x2) ** 2
    if out.ndim == 0:
        return float(out)
    return out


def rcs_parallel(theta_t, theta_r, phi_r, length1, length2, wl: Wavelength):
    """x-y plate RCS for E parallel to the vertical incidence plane.

    Specialization of rcs_xy_plate to polarization angle 0/180 degrees with
    the wave arriving from azimuth 270 degrees.
    """
    _check_angles(theta_t, theta_r=theta_r, phi_r=phi_r)
    theta_t, theta_r, phi_r = np.broadcast_arrays(
        *(np.asarray(a, dtype=float) for a in (theta_t, theta_r, phi_r))
    )
    st = np.sin(theta_t)
    sr, cr = np.sin(theta_r), np.cos(theta_r)
    bracket = (cr * np.sin(phi_r)) ** 2 + np.cos(phi_r) ** 2
    smax = 4.0 * math.pi * length1**2 * length2**2 / wl.meters**2
    x1 = 0.5 * wl.k * length1 * sr * np.cos(phi_r)
    x2 = 0.5 * wl.k * length2 * (sr * np.sin(phi_r) - st)
    out = smax * bracket * sinc(x1) ** 2 * sinc(x2) ** 2
    if out.ndim == 0:
        return float(out)
    return out


def rcs_parallel_cut(theta_t, theta_r, length1, length2, wl: Wavelength):
    """Principal cut of rcs_parallel at observation azimuth 90 degrees:

    sigma = sigma_max * cos^2(theta_r) * sinc^2(k*L2/2 * (sin theta_r - sin theta_t))

    Unlike the perpendicular cut, the cos^2(theta_r) weighting pulls the
    maximum to an observation angle slightly below the specular angle.
    """
    _check_angles(theta_t, theta_r=theta_r)
    theta_t, theta_r = np.broadcast_arrays(
        np.asarray(theta_t, dtype=float), np.asarray(theta_r, dtype=float)
    )
    smax = 4.0 * math.pi * length1**2 * length2**2 / wl.meters**2
    x2 = 0.5 * wl.k * length2 * (np.sin(theta_r) - np.sin(theta_t))
    out = smax * np.cos(theta_r) ** 2 * sinc(x2) ** 2
    if out.ndim == 0:
        return float(out)
    return out
