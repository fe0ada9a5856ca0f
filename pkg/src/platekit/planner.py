"""Plate deployment tooling: aiming, coverage maps, orientation search.

A Scene fixes the transmitter, the plate position, the wave polarization,
and the link parameters; receiver positions come from a TargetRegion grid.
Coverage is reported as received power per grid point, with back-side
(shadowed) points explicitly marked and excluded from planning objectives,
since the reflection model is only meaningful on the lit side.

The orientation search runs over the two tilt angles of the plate normal
only; the rotation about the normal is fixed by the horizontal-edge
convention (edge1 = normal x ez, normalized), which makes results
reproducible and keeps the search two-dimensional.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .geometry import PolarizationAngle, unit
from .po_oracle import IncidentWave
from .rcs import PlateGeometry, Wavelength, sinc

OBJECTIVES = ("max-min-dbm", "max-mean-mw")

_EX = np.array([1.0, 0.0, 0.0])
_EZ = np.array([0.0, 0.0, 1.0])

# Orientation search schedule: global coarse pass, then window refinements
# shrinking the step by REFINE_FACTOR each level.  The scheduled levels
# always run (a level that fails to improve is not evidence of convergence
# when the objective is flat in dB near its peak); past the schedule,
# refinement continues only while a level still improves by
# MIN_IMPROVEMENT_DB, up to MAX_REFINE_LEVELS.
COARSE_STEP_DEG = 5.0
REFINE_FACTOR = 5.0
SCHEDULED_REFINE_LEVELS = 3
MAX_REFINE_LEVELS = 8
MIN_IMPROVEMENT_DB = 0.01


@dataclass(frozen=True)
class Scene:
    """Transmitter, plate, and link parameters with explicit 3-D positions.

    Link distances are derived from the positions; the plate must face the
    transmitter (normal . incident direction < 0).
    """

    tx_position: np.ndarray
    plate_position: np.ndarray
    plate: PlateGeometry
    polarization: PolarizationAngle
    tx_power_dbm: float
    tx_gain_dbi: float
    rx_gain_dbi: float
    wavelength: Wavelength
    amp_gain_db: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "tx_position", np.asarray(self.tx_position, dtype=float))
        object.__setattr__(self, "plate_position", np.asarray(self.plate_position, dtype=float))
        if self.tx_position.shape != (3,) or self.plate_position.shape != (3,):
            raise ValueError("positions must be 3-vectors")
        if not isinstance(self.polarization, PolarizationAngle):
            object.__setattr__(self, "polarization", PolarizationAngle(float(self.polarization)))
        if float(np.linalg.norm(self.plate_position - self.tx_position)) < 1e-12:
            raise ValueError("transmitter and plate positions coincide")
        if float(np.dot(self.plate.normal, self.incident_direction())) >= 0.0:
            raise ValueError("plate does not face the transmitter")

    def incident_direction(self) -> np.ndarray:
        return unit(self.plate_position - self.tx_position)

    def tx_distance(self) -> float:
        return float(np.linalg.norm(self.plate_position - self.tx_position))

    def incident_wave(self) -> IncidentWave:
        return IncidentWave.from_direction(
            self.incident_direction(), self.polarization, self.wavelength
        )

    def with_orientation(self, normal, edge1, edge2) -> "Scene":
        plate = PlateGeometry(self.plate.length1, self.plate.length2, normal, edge1, edge2)
        return replace(self, plate=plate)


@dataclass(frozen=True)
class TargetRegion:
    """Rectangular grid of receiver positions.

    Points are corner + (iu/(nu-1))*edge_u + (iv/(nv-1))*edge_v, enumerated
    row-major over (iu, iv).  Degenerate axes (n = 1) stay at the corner.
    """

    corner: np.ndarray
    edge_u: np.ndarray
    edge_v: np.ndarray
    nu: int
    nv: int

    def __post_init__(self):
        object.__setattr__(self, "corner", np.asarray(self.corner, dtype=float))
        object.__setattr__(self, "edge_u", np.asarray(self.edge_u, dtype=float))
        object.__setattr__(self, "edge_v", np.asarray(self.edge_v, dtype=float))
        for name in ("corner", "edge_u", "edge_v"):
            if getattr(self, name).shape != (3,):
                raise ValueError(f"{name} must be a 3-vector")
        if self.nu < 1 or self.nv < 1:
            raise ValueError("region grid must be nonempty")

    @classmethod
    def single_point(cls, point) -> "TargetRegion":
        return cls(point, np.zeros(3), np.zeros(3), 1, 1)

    def points(self) -> np.ndarray:
        fu = np.zeros(self.nu) if self.nu == 1 else np.arange(self.nu) / (self.nu - 1)
        fv = np.zeros(self.nv) if self.nv == 1 else np.arange(self.nv) / (self.nv - 1)
        pts = (
            self.corner[None, None, :]
            + fu[:, None, None] * self.edge_u[None, None, :]
            + fv[None, :, None] * self.edge_v[None, None, :]
        )
        return pts.reshape(self.nu * self.nv, 3)


@dataclass
class CoverageMap:
    """Per-point coverage results, row-major over the region grid.

    ``power_dbm`` and ``sigma_m2`` are NaN where ``shadow`` is set (point on
    the back side of the plate or coincident with it).
    """

    points: np.ndarray
    sigma_m2: np.ndarray
    power_dbm: np.ndarray
    shadow: np.ndarray
    shape: tuple[int, int]

    def power_grid(self) -> np.ndarray:
        return self.power_dbm.reshape(self.shape)

    def shadow_grid(self) -> np.ndarray:
        return self.shadow.reshape(self.shape)


def _link_const_db(scene: Scene) -> float:
    """dB terms of the radar equation that do not depend on the receiver."""
    return (
        scene.tx_power_dbm
        + scene.amp_gain_db
        + scene.tx_gain_dbi
        + scene.rx_gain_dbi
        + 20.0 * math.log10(scene.wavelength.meters)
        - 10.0 * math.log10(4.0 * math.pi)
        - 20.0 * math.log10(4.0 * math.pi * scene.tx_distance())
    )


def _horizontal_frames(normals: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """edge1/edge2 for a stack of normals under the horizontal-edge convention."""
    e1 = np.stack([normals[:, 1], -normals[:, 0], np.zeros(len(normals))], axis=1)
    horiz = np.linalg.norm(e1, axis=1)
    vertical = horiz < 1e-12
    e1[vertical] = _EX
    e1[~vertical] /= horiz[~vertical, None]
    e2 = np.cross(normals, e1)
    return e1, e2


def orientation_from_angles(zenith: float, azimuth: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Plate frame whose normal has the given zenith/azimuth (radians)."""
    n = np.array(
        [
            math.sin(zenith) * math.cos(azimuth),
            math.sin(zenith) * math.sin(azimuth),
            math.cos(zenith),
        ]
    )
    e1, e2 = _horizontal_frames(n[None, :])
    return n, e1[0], e2[0]


def orient_for_target(tx_position, plate_position, target_position) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Orientation that reflects the transmitter specularly onto a target.

    The normal bisects the deflection between the incident direction and
    the plate-to-target direction, which drives the array factor to its
    maximum of 1 at the target.  Degenerate when the target direction
    equals the incident direction (nothing to reflect).
    """
    tx_position = np.asarray(tx_position, dtype=float)
    plate_position = np.asarray(plate_position, dtype=float)
    target_position = np.asarray(target_position, dtype=float)
    a_inc = unit(plate_position - tx_position)
    a_obs = unit(target_position - plate_position)
    deflection = a_obs - a_inc
    if float(np.linalg.norm(deflection)) < 1e-9:
        raise ValueError("target lies along the incident direction; orientation undefined")
    n = unit(deflection)
    e1, e2 = _horizontal_frames(n[None, :])
    return n, e1[0], e2[0]


def coverage_map_points(scene: Scene, points) -> CoverageMap:
    """Coverage at explicit receiver positions (row order preserved)."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    if pts.ndim != 2 or pts.shape[1] != 3:
        raise ValueError("points must have shape (n, 3)")
    rel = pts - scene.plate_position
    dist = np.linalg.norm(rel, axis=1)
    coincident = dist < 1e-12
    safe_dist = np.where(coincident, 1.0, dist)
    a_obs = rel / safe_dist[:, None]

    wave = scene.incident_wave()
    n = scene.plate.normal
    shadow = coincident | ((a_obs @ n) <= 0.0)

    u = np.cross(n, wave.h_dir)
    w = np.cross(np.broadcast_to(u, a_obs.shape), a_obs)
    js = np.sum(w * w, axis=1)
    d = a_obs - wave.direction
    k = scene.wavelength.k
    x1 = 0.5 * k * scene.plate.length1 * (d @ scene.plate.edge1)
    x2 = 0.5 * k * scene.plate.length2 * (d @ scene.plate.edge2)
    af = sinc(x1) ** 2 * sinc(x2) ** 2
    smax = 4.0 * math.pi * scene.plate.length1**2 * scene.plate.length2**2 / scene.wavelength.meters**2
    sigma = smax * js * af

    const = _link_const_db(scene)
    with np.errstate(divide="ignore"):
        power = const + 10.0 * np.log10(sigma) - 20.0 * np.log10(safe_dist)
    sigma = np.where(shadow, np.nan, sigma)
    power = np.where(shadow, np.nan, power)
    return CoverageMap(pts, sigma, power, shadow, (pts.shape[0], 1))


def coverage_map(scene: Scene, region: TargetRegion) -> CoverageMap:
    """Coverage over a region grid, row-major over (u, v)."""
    cov = coverage_map_points(scene, region.points())
    cov.shape = (region.nu, region.nv)
    return cov


def _objective_values(
    scene: Scene,
    points: np.ndarray,
    normals: np.ndarray,
    edge1s: np.ndarray,
    edge2s: np.ndarray,
    objective: str,
) -> np.ndarray:
    """Objective for a stack of candidate frames; -inf where invalid.

    Vectorized over orientations x points; shadowed points are excluded,
    orientations that shadow every point (or face away from the
    transmitter) score -inf.
    """
    if objective not in OBJECTIVES:
        raise ValueError(f"objective must be one of {OBJECTIVES}, got {objective!r}")
    wave = scene.incident_wave()
    a_inc = wave.direction
    rel = points - scene.plate_position
    dist = np.linalg.norm(rel, axis=1)
    if np.any(dist < 1e-12):
        raise ValueError("region contains the plate position")
    a_obs = rel / dist[:, None]

    u = np.cross(normals, wave.h_dir)
    w = np.cross(u[:, None, :], a_obs[None, :, :])
    js = np.sum(w * w, axis=2)
    d = a_obs - a_inc
    k = scene.wavelength.k
    x1 = 0.5 * k * scene.plate.length1 * (edge1s @ d.T)
    x2 = 0.5 * k * scene.plate.length2 * (edge2s @ d.T)
    af = sinc(x1) ** 2 * sinc(x2) ** 2
    smax = 4.0 * math.pi * scene.plate.length1**2 * scene.plate.length2**2 / scene.wavelength.meters**2
    sigma = smax * js * af

    const = _link_const_db(scene)
    with np.errstate(divide="ignore"):
        power = const + 10.0 * np.log10(sigma) - 20.0 * np.log10(dist)[None, :]

    shadow = (normals @ a_obs.T) <= 0.0
    faces_tx = (normals @ a_inc) < 0.0
    if objective == "max-min-dbm":
        masked = np.where(shadow, np.inf, power)
        values = np.min(masked, axis=1)
        values = np.where(values == np.inf, -np.inf, values)  # every point shadowed
    else:
        mw = np.where(shadow, 0.0, 10.0 ** (power / 10.0))
        counts = np.sum(~shadow, axis=1)
        total = np.sum(mw, axis=1)
        values = np.full(len(normals), -np.inf)
        ok = (counts > 0) & (total > 0.0)
        values[ok] = 10.0 * np.log10(total[ok] / counts[ok])
    return np.where(faces_tx, values, -np.inf)


def orientation_objective(scene: Scene, region: TargetRegion, objective: str) -> float:
    """Objective value of the scene's current plate orientation."""
    return float(
        _objective_values(
            scene,
            region.points(),
            scene.plate.normal[None, :],
            scene.plate.edge1[None, :],
            scene.plate.edge2[None, :],
            objective,
        )[0]
    )


@dataclass
class OrientationResult:
    """Best orientation found by the search, with the achieved objective."""

    normal: np.ndarray
    edge1: np.ndarray
    edge2: np.ndarray
    zenith_deg: float
    azimuth_deg: float
    objective: str
    value_dbm: float
    evaluations: int


def _evaluate_angle_grid(
    scene: Scene, points: np.ndarray, zeniths_deg: np.ndarray, azimuths_deg: np.ndarray, objective: str
) -> np.ndarray:
    z = np.radians(zeniths_deg)
    a = np.radians(azimuths_deg)
    normals = np.stack([np.sin(z) * np.cos(a), np.sin(z) * np.sin(a), np.cos(z)], axis=1)
    e1, e2 = _horizontal_frames(normals)
    return _objective_values(scene, points, normals, e1, e2, objective)


def optimize_orientation(
    scene: Scene, region: TargetRegion, objective: str = "max-min-dbm"
) -> OrientationResult:
    """Coarse-to-fine grid search over the plate normal's tilt angles.

    Starts from a global 5-degree grid, then refines around the incumbent
    with steps of 1, 0.2, and 0.04 degrees (factor 5 per level), keeping
    the incumbent at every level so the objective never decreases.  Beyond
    the scheduled levels, refinement continues only while a level still
    improves the objective by at least 0.01 dB.
    """
    points = region.points()
    if objective not in OBJECTIVES:
        raise ValueError(f"objective must be one of {OBJECTIVES}, got {objective!r}")

    step = COARSE_STEP_DEG
    zen = np.arange(0.0, 180.0 + 0.5 * step, step)
    az = np.arange(0.0, 360.0, step)
    zz, aa = np.meshgrid(zen, az, indexing="ij")
    cand_z, cand_a = zz.ravel(), aa.ravel()
    # Poles: azimuth is degenerate, keep a single representative.
    keep = ~(((cand_z == 0.0) | (cand_z == 180.0)) & (cand_a != 0.0))
    cand_z, cand_a = cand_z[keep], cand_a[keep]

    values = _evaluate_angle_grid(scene, points, cand_z, cand_a, objective)
    best = int(np.argmax(values))
    best_z, best_a, best_v = float(cand_z[best]), float(cand_a[best]), float(values[best])
    evaluations = len(cand_z)

    for level in range(1, MAX_REFINE_LEVELS + 1):
        prev_step = step
        step = step / REFINE_FACTOR
        offsets = np.arange(-prev_step, prev_step + 0.5 * step, step)
        zen = np.clip(best_z + offsets, 0.0, 180.0)
        az = (best_a + offsets) % 360.0
        zz, aa = np.meshgrid(zen, az, indexing="ij")
        cand_z, cand_a = zz.ravel(), aa.ravel()
        values = _evaluate_angle_grid(scene, points, cand_z, cand_a, objective)
        evaluations += len(cand_z)
        i = int(np.argmax(values))
        improvement = float(values[i]) - best_v
        if improvement > 0.0:
            best_z, best_a, best_v = float(cand_z[i]), float(cand_a[i]), float(values[i])
        if level >= SCHEDULED_REFINE_LEVELS and improvement < MIN_IMPROVEMENT_DB:
            break

    n, e1, e2 = orientation_from_angles(math.radians(best_z), math.radians(best_a))
    return OrientationResult(n, e1, e2, best_z, best_a, objective, best_v, evaluations)
