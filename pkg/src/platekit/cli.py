"""Command-line surface: point queries, sweeps, validation, planning, comparison.

Subcommands: rcs, sweep, validate, coverage, optimize, compare.  All angles
on the command line and in files are degrees; CSV and JSON are the data
contract, SVG plots are conveniences.  Exit codes: 0 success, 2 usage or
input error, 3 validation failure, 4 I/O error.

The environment variable PLATEKIT_THREADS caps internal parallelism; grid
evaluation is vectorized in a single thread, so any cap of at least one is
honored as-is.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import geometry, link, measure, planner, svgplot, validate
from .rcs import PlateGeometry, Wavelength, dbsm
from .rcs import rcs as rcs_breakdown
from .measure import POLARIZATION_CASES

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VALIDATION = 3
EXIT_IO = 4


def _fmt(x: float) -> str:
    return f"{x:.9g}"


def _json_ready(obj):
    """Replace non-finite floats with strings so output is strict JSON."""
    if isinstance(obj, dict):
        return {k: _json_ready(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_ready(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _json_ready(obj.tolist())
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "-inf" if x < 0 else "inf"
        return x
    if isinstance(obj, (np.integer,)):
        return int(obj)
    return obj


def _write_text(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _thread_cap() -> int:
    raw = os.environ.get("PLATEKIT_THREADS")
    if raw is None:
        return 1
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError(f"PLATEKIT_THREADS must be a positive integer, got {raw!r}")
    if cap < 1:
        raise ValueError(f"PLATEKIT_THREADS must be a positive integer, got {raw!r}")
    return cap


# ---------------------------------------------------------------------------
# Shared flag groups


def _add_plate_wave_flags(p: argparse.ArgumentParser, observation: bool = True) -> None:
    p.add_argument("--freq-hz", type=float, required=True, help="carrier frequency in Hz")
    p.add_argument("--l1-wl", type=float, help="first edge length in wavelengths")
    p.add_argument("--l2-wl", type=float, help="second edge length in wavelengths")
    p.add_argument("--l1-m", type=float, help="first edge length in meters")
    p.add_argument("--l2-m", type=float, help="second edge length in meters")
    p.add_argument(
        "--xy-plane", action="store_true", help="plate in the x-y plane (default orientation)"
    )
    p.add_argument(
        "--euler-deg",
        type=float,
        nargs=3,
        metavar=("ALPHA", "BETA", "GAMMA"),
        help="plate orientation as intrinsic z-y-z Euler angles in degrees",
    )
    p.add_argument("--theta-t-deg", type=float, required=True, help="incidence zenith angle")
    p.add_argument("--phi-t-deg", type=float, default=270.0, help="incidence azimuth (default 270)")
    p.add_argument("--pol-deg", type=float, required=True, help="polarization angle in degrees")
    if observation:
        p.add_argument("--theta-r-deg", type=float, required=True, help="observation zenith angle")
    p.add_argument("--phi-r-deg", type=float, default=90.0, help="observation azimuth (default 90)")


def _plate_from_args(args, wl: Wavelength) -> PlateGeometry:
    if (args.l1_wl is None) == (args.l1_m is None):
        raise ValueError("specify exactly one of --l1-wl and --l1-m")
    if (args.l2_wl is None) == (args.l2_m is None):
        raise ValueError("specify exactly one of --l2-wl and --l2-m")
    l1 = args.l1_m if args.l1_m is not None else args.l1_wl * wl.meters
    l2 = args.l2_m if args.l2_m is not None else args.l2_wl * wl.meters
    if args.xy_plane and args.euler_deg is not None:
        raise ValueError("--xy-plane conflicts with --euler-deg")
    if args.euler_deg is not None:
        a, b, g = (math.radians(v) for v in args.euler_deg)
        return PlateGeometry.from_euler_zyz(l1, l2, a, b, g)
    return PlateGeometry.xy_plane(l1, l2)


def _wave_vectors_from_args(args):
    angles = geometry.SphericalAngles.from_degrees(args.theta_t_deg, args.phi_t_deg)
    pol = geometry.PolarizationAngle.from_degrees(args.pol_deg)
    _, h_dir, a_inc = geometry.polarization_triad(angles, pol)
    return a_inc, h_dir


# ---------------------------------------------------------------------------
# rcs


def _cmd_rcs(args) -> int:
    wl = Wavelength.from_frequency(args.freq_hz)
    plate = _plate_from_args(args, wl)
    a_inc, h_dir = _wave_vectors_from_args(args)
    obs = geometry.observation_direction(
        geometry.SphericalAngles.from_degrees(args.theta_r_deg, args.phi_r_deg)
    )
    b = rcs_breakdown(plate, a_inc, h_dir, obs, wl)
    lines = [
        f"sigma_m2={_fmt(b.sigma_m2)}",
        f"sigma_dbsm={_fmt(b.sigma_dbsm)}",
        f"sigma_max_m2={_fmt(b.sigma_max_m2)}",
        f"f_js={_fmt(b.f_js)}",
        f"f_af={_fmt(b.f_af)}",
        f"front_side_valid={'true' if b.front_side_valid else 'false'}",
    ]
    print("\n".join(lines))
    return EXIT_OK


# ---------------------------------------------------------------------------
# sweep


_LINK_FLAGS = ("p_t_dbm", "g_t_dbi", "g_r_dbi", "d_t_m", "d_r_m")


def _link_from_args(args, wl: Wavelength) -> link.LinkScenario | None:
    given = [f for f in _LINK_FLAGS if getattr(args, f) is not None]
    if args.amp_db is not None and not given:
        raise ValueError("--amp-db requires the other link flags")
    if not given:
        return None
    missing = [f for f in _LINK_FLAGS if getattr(args, f) is None]
    if missing:
        flags = ", ".join("--" + f.replace("_", "-") for f in missing)
        raise ValueError(f"incomplete link budget: missing {flags}")
    return link.LinkScenario(
        tx_power_dbm=args.p_t_dbm,
        tx_gain_dbi=args.g_t_dbi,
        rx_gain_dbi=args.g_r_dbi,
        tx_distance_m=args.d_t_m,
        rx_distance_m=args.d_r_m,
        wavelength=wl,
        amp_gain_db=args.amp_db if args.amp_db is not None else 0.0,
    )


def _sweep_grid(start: float, stop: float, step: float) -> np.ndarray:
    if step <= 0.0:
        raise ValueError("--theta-r-step must be positive")
    if stop < start:
        raise ValueError("--theta-r-stop must not be below --theta-r-start")
    n = int(math.floor((stop - start) / step + 1e-9)) + 1
    return start + step * np.arange(n)


def _cmd_sweep(args) -> int:
    wl = Wavelength.from_frequency(args.freq_hz)
    plate = _plate_from_args(args, wl)
    a_inc, h_dir = _wave_vectors_from_args(args)
    grid = _sweep_grid(args.theta_r_start, args.theta_r_stop, args.theta_r_step)
    scenario = _link_from_args(args, wl)

    sigmas = []
    for theta_r in grid:
        obs = geometry.observation_direction(
            geometry.SphericalAngles.from_degrees(theta_r, args.phi_r_deg)
        )
        sigmas.append(rcs_breakdown(plate, a_inc, h_dir, obs, wl).sigma_m2)
    sigmas = np.array(sigmas)
    dbsm_vals = np.array([dbsm(s) for s in sigmas])

    header = "theta_r_deg,sigma_m2,sigma_dbsm"
    columns = [grid, sigmas, dbsm_vals]
    if scenario is not None:
        _, power = link.power_sweep(scenario, grid, sigmas)
        header += ",p_r_dbm"
        columns.append(power)
    rows = [header]
    for i in range(len(grid)):
        rows.append(",".join(_fmt(col[i]) for col in columns))
    _write_text(args.out, "\n".join(rows) + "\n")

    if args.svg is not None:
        series = [dbsm_vals]
        labels = ["RCS (dBsm)"]
        if scenario is not None:
            series.append(columns[3])
            labels.append("received power (dBm)")
        svg = svgplot.line_plot(
            grid,
            series,
            labels,
            title="observation-angle sweep",
            xlabel="observation zenith angle (deg)",
            ylabel="dB",
        )
        _write_text(args.svg, svg)
    return EXIT_OK


# ---------------------------------------------------------------------------
# validate


def _cmd_validate(args) -> int:
    wl = Wavelength.from_frequency(args.freq_hz)
    report = validate.run_validation(
        trials=args.trials,
        seed=args.seed,
        wavelength=wl,
        nodes_per_edge=args.nodes_per_edge,
        tolerance=args.tol,
    )
    print("\n".join(report.lines()))
    return EXIT_OK if report.passed else EXIT_VALIDATION


# ---------------------------------------------------------------------------
# scene/region config files


def _reject_unknown(d: dict, allowed: set[str], path: str) -> None:
    unknown = set(d) - allowed
    if unknown:
        raise ValueError(f"{path}: unknown keys {sorted(unknown)}")


def _need(d: dict, key: str, path: str):
    if key not in d:
        raise ValueError(f"{path}: missing required key {key!r}")
    return d[key]


def _vec3(value, path: str) -> np.ndarray:
    arr = np.asarray(value, dtype=float)
    if arr.shape != (3,):
        raise ValueError(f"{path}: expected a 3-element vector")
    return arr


def _plate_from_config(cfg: dict, wl: Wavelength, path: str) -> PlateGeometry:
    _reject_unknown(
        cfg, {"length1_m", "length2_m", "normal", "edge1", "euler_zyz_deg", "xy_plane"}, path
    )
    l1 = float(_need(cfg, "length1_m", path))
    l2 = float(_need(cfg, "length2_m", path))
    modes = [k for k in ("normal", "euler_zyz_deg", "xy_plane") if k in cfg]
    if len(modes) != 1:
        raise ValueError(f"{path}: specify exactly one of normal+edge1, euler_zyz_deg, xy_plane")
    if "xy_plane" in cfg:
        if cfg["xy_plane"] is not True:
            raise ValueError(f"{path}: xy_plane must be true when present")
        return PlateGeometry.xy_plane(l1, l2)
    if "euler_zyz_deg" in cfg:
        angles = np.asarray(cfg["euler_zyz_deg"], dtype=float)
        if angles.shape != (3,):
            raise ValueError(f"{path}: euler_zyz_deg must have 3 entries")
        a, b, g = (math.radians(v) for v in angles)
        return PlateGeometry.from_euler_zyz(l1, l2, a, b, g)
    normal = geometry.unit(_vec3(_need(cfg, "normal", path), f"{path}.normal"))
    edge1 = geometry.unit(_vec3(_need(cfg, "edge1", path), f"{path}.edge1"))
    return PlateGeometry.from_frame(l1, l2, normal, edge1)


def _region_from_config(cfg: dict, path: str) -> planner.TargetRegion:
    _reject_unknown(cfg, {"corner_m", "edge_u_m", "edge_v_m", "nu", "nv"}, path)
    return planner.TargetRegion(
        corner=_vec3(_need(cfg, "corner_m", path), f"{path}.corner_m"),
        edge_u=_vec3(_need(cfg, "edge_u_m", path), f"{path}.edge_u_m"),
        edge_v=_vec3(_need(cfg, "edge_v_m", path), f"{path}.edge_v_m"),
        nu=int(_need(cfg, "nu", path)),
        nv=int(_need(cfg, "nv", path)),
    )


_SCENE_KEYS = {
    "frequency_hz",
    "tx_position_m",
    "plate_position_m",
    "plate",
    "polarization_deg",
    "tx_power_dbm",
    "amp_gain_db",
    "tx_gain_dbi",
    "rx_gain_dbi",
    "region",
    "objective",
}


def load_scene_config(path: str) -> tuple[planner.Scene, planner.TargetRegion, str]:
    """Parse a scene/region JSON config; unknown keys are rejected."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            cfg = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    if not isinstance(cfg, dict):
        raise ValueError(f"{path}: top-level config must be an object")
    _reject_unknown(cfg, _SCENE_KEYS, path)
    wl = Wavelength.from_frequency(float(_need(cfg, "frequency_hz", path)))
    plate_cfg = _need(cfg, "plate", path)
    if not isinstance(plate_cfg, dict):
        raise ValueError(f"{path}.plate: must be an object")
    plate = _plate_from_config(plate_cfg, wl, f"{path}.plate")
    region_cfg = _need(cfg, "region", path)
    if not isinstance(region_cfg, dict):
        raise ValueError(f"{path}.region: must be an object")
    region = _region_from_config(region_cfg, f"{path}.region")
    scene = planner.Scene(
        tx_position=_vec3(_need(cfg, "tx_position_m", path), f"{path}.tx_position_m"),
        plate_position=_vec3(_need(cfg, "plate_position_m", path), f"{path}.plate_position_m"),
        plate=plate,
        polarization=geometry.PolarizationAngle.from_degrees(
            float(_need(cfg, "polarization_deg", path))
        ),
        tx_power_dbm=float(_need(cfg, "tx_power_dbm", path)),
        tx_gain_dbi=float(_need(cfg, "tx_gain_dbi", path)),
        rx_gain_dbi=float(_need(cfg, "rx_gain_dbi", path)),
        wavelength=wl,
        amp_gain_db=float(cfg.get("amp_gain_db", 0.0)),
    )
    objective = cfg.get("objective", "max-min-dbm")
    if objective not in planner.OBJECTIVES:
        raise ValueError(f"{path}: objective must be one of {planner.OBJECTIVES}")
    return scene, region, objective


def _cmd_coverage(args) -> int:
    _thread_cap()
    scene, region, _ = load_scene_config(args.config)
    cov = planner.coverage_map(scene, region)
    rows = ["index_u,index_v,x_m,y_m,z_m,p_r_dbm"]
    for idx in range(cov.points.shape[0]):
        iu, iv = divmod(idx, region.nv)
        x, y, z = cov.points[idx]
        power = "shadow" if cov.shadow[idx] else _fmt(cov.power_dbm[idx])
        rows.append(f"{iu},{iv},{_fmt(x)},{_fmt(y)},{_fmt(z)},{power}")
    _write_text(args.out_csv, "\n".join(rows) + "\n")
    if args.out_svg is not None:
        svg = svgplot.heatmap(
            cov.power_grid(),
            shadow=cov.shadow_grid(),
            vmin=args.db_min,
            vmax=args.db_max,
            title="coverage (dBm)",
            legend="received power (dBm)",
        )
        _write_text(args.out_svg, svg)
    n_shadow = int(np.count_nonzero(cov.shadow))
    print(f"cells={cov.points.shape[0]} shadow_cells={n_shadow}")
    return EXIT_OK


def _cmd_optimize(args) -> int:
    _thread_cap()
    scene, region, objective = load_scene_config(args.config)
    initial = planner.orientation_objective(scene, region, objective)
    result = planner.optimize_orientation(scene, region, objective)
    lines = [
        f"objective={objective}",
        f"initial_objective_dbm={_fmt(initial)}",
        f"best_zenith_deg={_fmt(result.zenith_deg)}",
        f"best_azimuth_deg={_fmt(result.azimuth_deg)}",
        f"best_objective_dbm={_fmt(result.value_dbm)}",
        f"normal=[{_fmt(result.normal[0])},{_fmt(result.normal[1])},{_fmt(result.normal[2])}]",
        f"evaluations={result.evaluations}",
    ]
    print("\n".join(lines))
    if args.out_json is not None:
        payload = _json_ready(
            {
                "objective": objective,
                "initial_objective_dbm": initial,
                "best_zenith_deg": result.zenith_deg,
                "best_azimuth_deg": result.azimuth_deg,
                "best_objective_dbm": result.value_dbm,
                "normal": result.normal,
                "edge1": result.edge1,
                "edge2": result.edge2,
                "evaluations": result.evaluations,
            }
        )
        _write_text(args.out_json, json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# compare


def _cmd_compare(args) -> int:
    series = measure.load_series(args.measurement)
    pol_case = args.pol_case
    if pol_case is None and series.varphi_t_deg is not None:
        varphi = series.varphi_t_deg % 360.0
        if varphi in (90.0, 270.0):
            pol_case = "perpendicular"
        elif varphi in (0.0, 180.0):
            pol_case = "parallel"
    if pol_case is None:
        raise ValueError("no --pol-case given and none recoverable from file metadata")
    config = measure.ExperimentConfig(
        freq_hz=args.freq_hz if args.freq_hz is not None else (series.freq_hz or 3e9),
        plate_l1_wavelengths=args.l1_wl,
        plate_l2_wavelengths=args.l2_wl,
        theta_t_deg=(
            args.theta_t_deg
            if args.theta_t_deg is not None
            else (series.theta_t_deg if series.theta_t_deg is not None else 45.0)
        ),
        tx_power_dbm=args.p_t_dbm,
        amp_gain_db=args.amp_db,
        tx_gain_dbi=args.g_t_dbi,
        rx_gain_dbi=args.g_r_dbi,
        tx_distance_m=args.d_t_m,
        rx_distance_m=args.d_r_m,
    )
    curve = measure.theoretical_curve(config, pol_case, series.theta_r_deg)
    report = measure.compare(series, curve)

    def show(value):
        if value is None:
            return "unavailable"
        return _fmt(value)

    lines = [
        f"pol_case={pol_case}",
        f"theta_t_deg={_fmt(config.theta_t_deg)}",
        f"offset_db={show(report.offset_db)}",
        f"peak_angle_error_deg={show(report.peak_angle_error_deg)}",
        f"hpbw_error_deg={show(report.hpbw_error_deg)}",
        f"rmse_db={show(report.rmse_db)}",
        f"mainlobe_sidelobe_gap_db={show(report.mainlobe_sidelobe_gap_db)}",
        f"peak_angle_measured_deg={show(report.peak_angle_measured_deg)}",
        f"peak_angle_theory_deg={show(report.peak_angle_theory_deg)}",
        f"hpbw_measured_deg={show(report.hpbw_measured_deg)}",
        f"hpbw_theory_deg={show(report.hpbw_theory_deg)}",
        f"n_points={report.n_points}",
    ]
    print("\n".join(lines))
    if args.out_json is not None:
        payload = _json_ready({"pol_case": pol_case, **report.to_dict()})
        _write_text(args.out_json, json.dumps(payload, indent=2, sort_keys=True) + "\n")
    if args.out_svg is not None:
        svg = svgplot.line_plot(
            series.theta_r_deg,
            [series.power_dbm, curve[1] + report.offset_db],
            ["measured", "model + offset"],
            title="measured vs model sweep",
            xlabel="observation zenith angle (deg)",
            ylabel="received power (dBm)",
        )
        _write_text(args.out_svg, svg)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="platekit",
        description="Reflection modelling for rectangular metal plate reflectors",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_rcs = sub.add_parser("rcs", help="RCS breakdown for one configuration")
    _add_plate_wave_flags(p_rcs)
    p_rcs.set_defaults(func=_cmd_rcs)

    p_sweep = sub.add_parser("sweep", help="observation-angle sweep to CSV/SVG")
    _add_plate_wave_flags(p_sweep, observation=False)
    p_sweep.add_argument("--theta-r-start", type=float, default=0.0)
    p_sweep.add_argument("--theta-r-stop", type=float, default=90.0)
    p_sweep.add_argument("--theta-r-step", type=float, default=5.0)
    p_sweep.add_argument("--out", help="output CSV path (default stdout)")
    p_sweep.add_argument("--svg", help="optional SVG plot path")
    p_sweep.add_argument("--p-t-dbm", type=float, help="transmit power (enables power column)")
    p_sweep.add_argument("--amp-db", type=float, help="amplifier gain in dB")
    p_sweep.add_argument("--g-t-dbi", type=float, help="transmit antenna gain")
    p_sweep.add_argument("--g-r-dbi", type=float, help="receive antenna gain")
    p_sweep.add_argument("--d-t-m", type=float, help="transmitter-to-plate distance")
    p_sweep.add_argument("--d-r-m", type=float, help="plate-to-receiver distance")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_val = sub.add_parser("validate", help="closed form vs quadrature on random scenarios")
    p_val.add_argument("--trials", type=int, default=100)
    p_val.add_argument("--seed", type=int, default=1)
    p_val.add_argument("--nodes-per-edge", type=int, default=None)
    p_val.add_argument("--tol", type=float, default=1e-6)
    p_val.add_argument("--freq-hz", type=float, default=3e9)
    p_val.set_defaults(func=_cmd_validate)

    p_cov = sub.add_parser("coverage", help="coverage heatmap over a receiver grid")
    p_cov.add_argument("config", help="scene/region JSON config path")
    p_cov.add_argument("--out-csv", required=True, help="output CSV path")
    p_cov.add_argument("--out-svg", help="optional SVG heatmap path")
    p_cov.add_argument("--db-min", type=float, help="color scale lower bound (dBm)")
    p_cov.add_argument("--db-max", type=float, help="color scale upper bound (dBm)")
    p_cov.set_defaults(func=_cmd_coverage)

    p_opt = sub.add_parser("optimize", help="search plate orientation for a region objective")
    p_opt.add_argument("config", help="scene/region JSON config path")
    p_opt.add_argument("--out-json", help="optional JSON result path")
    p_opt.set_defaults(func=_cmd_optimize)

    p_cmp = sub.add_parser("compare", help="measured sweep vs model curve")
    p_cmp.add_argument("measurement", help="measurement CSV path")
    p_cmp.add_argument("--pol-case", choices=list(POLARIZATION_CASES), default=None)
    p_cmp.add_argument("--freq-hz", type=float, default=None)
    p_cmp.add_argument("--theta-t-deg", type=float, default=None)
    p_cmp.add_argument("--l1-wl", type=float, default=5.0)
    p_cmp.add_argument("--l2-wl", type=float, default=5.0)
    p_cmp.add_argument("--p-t-dbm", type=float, default=0.0)
    p_cmp.add_argument("--amp-db", type=float, default=38.861)
    p_cmp.add_argument("--g-t-dbi", type=float, default=16.0)
    p_cmp.add_argument("--g-r-dbi", type=float, default=16.0)
    p_cmp.add_argument("--d-t-m", type=float, default=8.0)
    p_cmp.add_argument("--d-r-m", type=float, default=8.0)
    p_cmp.add_argument("--out-json", help="optional JSON report path")
    p_cmp.add_argument("--out-svg", help="optional overlay SVG path")
    p_cmp.set_defaults(func=_cmd_compare)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
