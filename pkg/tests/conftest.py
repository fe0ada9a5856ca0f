import math

import numpy as np
import pytest

from platekit import PlateGeometry, Wavelength

EX = np.array([1.0, 0.0, 0.0])
EY = np.array([0.0, 1.0, 0.0])
EZ = np.array([0.0, 0.0, 1.0])


@pytest.fixture
def wl_3ghz() -> Wavelength:
    return Wavelength.from_frequency(3e9)


@pytest.fixture
def plate_5wl(wl_3ghz) -> PlateGeometry:
    side = 5.0 * wl_3ghz.meters
    return PlateGeometry.xy_plane(side, side)


def random_rotation(rng: np.random.Generator) -> np.ndarray:
    q = rng.normal(size=4)
    w, x, y, z = q / np.linalg.norm(q)
    return np.array(
        [
            [1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w)],
            [2 * (x * y + z * w), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w)],
            [2 * (x * z - y * w), 2 * (y * z + x * w), 1 - 2 * (x * x + y * y)],
        ]
    )


def random_unit(rng: np.random.Generator) -> np.ndarray:
    v = rng.normal(size=3)
    return v / np.linalg.norm(v)


def rel_close(a, b, rtol, floor=0.0):
    """|a - b| <= rtol*max(|a|,|b|) + floor, elementwise."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return np.all(np.abs(a - b) <= rtol * np.maximum(np.abs(a), np.abs(b)) + floor)


def deg(x: float) -> float:
    return math.radians(x)
