"""JSON run-configuration parsing, validation, and serialization.

A run file is a single JSON object with three sections: ``system``
(physical parameters, display units), ``run`` (a point evaluation or a
sweep definition), and ``output`` (path and format).  Only ``run`` is
required; absent system keys fall back to the published experimental
defaults.  Frequencies are given as ratios to the left-mirror angular
frequency except ``omega_phi1_hz`` itself, which is an ordinary
frequency in hertz.  Unknown keys anywhere are rejected so typos cannot
silently become defaults.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import BadUnit, InvalidSpec, MissingRequired, UnknownKey, UnknownMode
from .model import SystemParams
from .sweep import Axis, SweepSpec

# key -> (default, unit description, sign rule)
# sign rules: "pos" > 0, "nonneg" >= 0, "any" finite, "posint" positive integer
_SYSTEM_KEYS: dict = {
    "cavity_length_m": (1e-3, "meters", "pos"),
    "mirror_mass_kg": (35e-12, "kilograms", "pos"),
    "mirror_radius_m": (10e-6, "meters", "pos"),
    "omega_phi1_hz": (1e7, "hertz", "pos"),
    "omega_phi2_ratio": (1.5, "units of omega_phi1", "pos"),
    "laser_power_w": (50e-3, "watts", "pos"),
    "laser_wavelength_m": (810e-9, "meters", "pos"),
    "quality_factor": (2e7, "dimensionless", "pos"),
    "finesse": (5e3, "dimensionless", "pos"),
    "oam_number": (100, "dimensionless integer", "posint"),
    "temperature_k": (15e-3, "kelvin", "nonneg"),
    "opa_gain_ratio": (0.0, "units of omega_phi1", "nonneg"),
    "opa_phase_rad": (0.0, "radians", "any"),
    "detuning_ratio": (-1.0, "units of omega_phi1", "any"),
}
_OPTIONAL_SYSTEM_KEYS: dict = {
    "kappa_override_ratio": ("units of omega_phi1", "pos"),
}

_RUN_KEYS = {"mode", "axis1", "axis2"}
_AXIS_KEYS = {"name", "values", "start", "stop", "points", "spacing"}
_OUTPUT_KEYS = {"path", "format"}
_FORMATS = ("csv", "json")


def _check_number(key: str, value, unit: str, rule: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise BadUnit(f"{key} must be a number in {unit}, got {value!r}")
    v = float(value)
    if not math.isfinite(v):
        raise BadUnit(f"{key} must be finite, in {unit}, got {value!r}")
    if rule == "pos" and v <= 0.0:
        raise BadUnit(f"{key} must be positive, in {unit}, got {value!r}")
    if rule == "nonneg" and v < 0.0:
        raise BadUnit(f"{key} must be non-negative, in {unit}, got {value!r}")
    if rule == "posint" and (v <= 0.0 or v != int(v)):
        raise BadUnit(f"{key} must be a positive integer ({unit}), got {value!r}")
    return v


@dataclass(frozen=True)
class AxisConfig:
    """One sweep axis as written in a run file."""

    name: str
    values: tuple[float, ...]


@dataclass(frozen=True)
class RunSection:
    """Either a single-point evaluation or a sweep over one/two axes."""

    mode: str
    axis1: AxisConfig | None = None
    axis2: AxisConfig | None = None


@dataclass(frozen=True)
class OutputSection:
    """Where and in which format results are written."""

    path: str | None = None
    format: str = "csv"


@dataclass(frozen=True)
class RunConfig:
    """Validated run file: defaults filled, units still display-side."""

    system: dict = field(default_factory=dict)
    run: RunSection = RunSection("point")
    output: OutputSection = OutputSection()


def _parse_axis(which: str, raw) -> AxisConfig:
    if not isinstance(raw, dict):
        raise BadUnit(f"{which} must be an object, got {raw!r}")
    for key in raw:
        if key not in _AXIS_KEYS:
            raise UnknownKey(f"unknown key {key!r} in {which}")
    if "name" not in raw:
        raise MissingRequired(f"{which} needs a 'name'")
    name = raw["name"]
    if not isinstance(name, str):
        raise BadUnit(f"{which}.name must be a string, got {name!r}")
    if "values" in raw:
        for key in ("start", "stop", "points", "spacing"):
            if key in raw:
                raise BadUnit(
                    f"{which} mixes explicit 'values' with range key {key!r}"
                )
        vals = raw["values"]
        if not isinstance(vals, list) or not vals:
            raise BadUnit(f"{which}.values must be a non-empty list")
        values = tuple(
            _check_number(f"{which}.values[{i}]", v, "axis units", "any")
            for i, v in enumerate(vals)
        )
        return AxisConfig(name, values)
    for key in ("start", "stop", "points"):
        if key not in raw:
            raise MissingRequired(f"{which} needs 'values' or start/stop/points")
    start = _check_number(f"{which}.start", raw["start"], "axis units", "any")
    stop = _check_number(f"{which}.stop", raw["stop"], "axis units", "any")
    points = raw["points"]
    if isinstance(points, bool) or not isinstance(points, int) or points < 2:
        raise BadUnit(f"{which}.points must be an integer >= 2, got {points!r}")
    spacing = raw.get("spacing", "linear")
    if spacing == "linear":
        values = tuple(float(v) for v in np.linspace(start, stop, points))
    elif spacing == "log":
        if start <= 0.0 or stop <= 0.0:
            raise BadUnit(f"{which} log spacing needs positive start/stop")
        values = tuple(float(v) for v in np.geomspace(start, stop, points))
    else:
        raise BadUnit(f"{which}.spacing must be 'linear' or 'log', got {spacing!r}")
    return AxisConfig(name, values)


def parse_config(text: str) -> RunConfig:
    """Parse and validate a JSON run file into a :class:`RunConfig`."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise BadUnit(f"configuration is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise BadUnit("configuration root must be a JSON object")
    for key in raw:
        if key not in ("system", "run", "output"):
            raise UnknownKey(f"unknown top-level section {key!r}")
    if "run" not in raw:
        raise MissingRequired("configuration needs a 'run' section")

    system_raw = raw.get("system", {})
    if not isinstance(system_raw, dict):
        raise BadUnit("'system' must be an object")
    system: dict = {}
    for key, value in system_raw.items():
        if key in _SYSTEM_KEYS:
            _, unit, rule = _SYSTEM_KEYS[key]
            system[key] = _check_number(key, value, unit, rule)
        elif key in _OPTIONAL_SYSTEM_KEYS:
            unit, rule = _OPTIONAL_SYSTEM_KEYS[key]
            system[key] = _check_number(key, value, unit, rule)
        else:
            raise UnknownKey(f"unknown key {key!r} in 'system'")
    for key, (default, _, _) in _SYSTEM_KEYS.items():
        system.setdefault(key, float(default))

    run_raw = raw["run"]
    if not isinstance(run_raw, dict):
        raise BadUnit("'run' must be an object")
    for key in run_raw:
        if key not in _RUN_KEYS:
            raise UnknownKey(f"unknown key {key!r} in 'run'")
    mode = run_raw.get("mode")
    if mode not in ("point", "sweep"):
        raise UnknownMode(f"run.mode must be 'point' or 'sweep', got {mode!r}")
    axis1 = axis2 = None
    if mode == "sweep":
        if "axis1" not in run_raw:
            raise MissingRequired("sweep mode needs run.axis1")
        axis1 = _parse_axis("run.axis1", run_raw["axis1"])
        if "axis2" in run_raw:
            axis2 = _parse_axis("run.axis2", run_raw["axis2"])
    else:
        for key in ("axis1", "axis2"):
            if key in run_raw:
                raise BadUnit(f"point mode does not take run.{key}")
    run = RunSection(mode, axis1, axis2)

    output_raw = raw.get("output", {})
    if not isinstance(output_raw, dict):
        raise BadUnit("'output' must be an object")
    for key in output_raw:
        if key not in _OUTPUT_KEYS:
            raise UnknownKey(f"unknown key {key!r} in 'output'")
    path = output_raw.get("path")
    if path is not None and not isinstance(path, str):
        raise BadUnit(f"output.path must be a string, got {path!r}")
    fmt = output_raw.get("format", "csv")
    if fmt not in _FORMATS:
        raise BadUnit(f"output.format must be one of {_FORMATS}, got {fmt!r}")
    return RunConfig(system, run, OutputSection(path, fmt))


def serialize_config(config: RunConfig) -> str:
    """Canonical JSON text for a config; parses back to an equal object."""
    doc: dict = {"system": dict(sorted(config.system.items()))}
    run: dict = {"mode": config.run.mode}
    for name, axis in (("axis1", config.run.axis1), ("axis2", config.run.axis2)):
        if axis is not None:
            run[name] = {"name": axis.name, "values": list(axis.values)}
    doc["run"] = run
    out: dict = {"format": config.output.format}
    if config.output.path is not None:
        out["path"] = config.output.path
    doc["output"] = out
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def to_system_params(config: RunConfig) -> SystemParams:
    """Convert the display-unit system section into SI model inputs."""
    s = config.system
    w1 = 2.0 * math.pi * s["omega_phi1_hz"]
    kappa_override = None
    if "kappa_override_ratio" in s:
        kappa_override = s["kappa_override_ratio"] * w1
    return SystemParams(
        cavity_length=s["cavity_length_m"],
        mirror_mass=s["mirror_mass_kg"],
        mirror_radius=s["mirror_radius_m"],
        omega_phi1=w1,
        omega_phi2=s["omega_phi2_ratio"] * w1,
        laser_power=s["laser_power_w"],
        laser_wavelength=s["laser_wavelength_m"],
        quality_factor=s["quality_factor"],
        finesse=s["finesse"],
        oam_number=int(s["oam_number"]),
        temperature=s["temperature_k"],
        opa_gain=s["opa_gain_ratio"] * w1,
        opa_phase=s["opa_phase_rad"],
        detuning=s["detuning_ratio"] * w1,
        kappa_override=kappa_override,
    )


def system_to_display(params: SystemParams) -> dict:
    """Inverse of :func:`to_system_params`: SI model inputs back to
    display-unit config keys (frequencies as ratios, hertz for the
    reference frequency)."""
    w1 = params.omega_phi1
    out = {
        "cavity_length_m": params.cavity_length,
        "mirror_mass_kg": params.mirror_mass,
        "mirror_radius_m": params.mirror_radius,
        "omega_phi1_hz": w1 / (2.0 * math.pi),
        "omega_phi2_ratio": params.omega_phi2 / w1,
        "laser_power_w": params.laser_power,
        "laser_wavelength_m": params.laser_wavelength,
        "quality_factor": params.quality_factor,
        "finesse": params.finesse,
        "oam_number": params.oam_number,
        "temperature_k": params.temperature,
        "opa_gain_ratio": params.opa_gain / w1,
        "opa_phase_rad": params.opa_phase,
        "detuning_ratio": params.detuning / w1,
    }
    if params.kappa_override is not None:
        out["kappa_override_ratio"] = params.kappa_override / w1
    return out


def to_sweep_spec(config: RunConfig) -> SweepSpec:
    """Build the sweep grid from a sweep-mode config."""
    if config.run.mode != "sweep":
        raise InvalidSpec("config run.mode is not 'sweep'")
    base = to_system_params(config)
    axis1 = Axis(config.run.axis1.name, config.run.axis1.values)
    axis2 = None
    if config.run.axis2 is not None:
        axis2 = Axis(config.run.axis2.name, config.run.axis2.values)
    return SweepSpec(base, axis1, axis2)
