"""Grid evaluation of correlation reports with figure presets.

Sweeps evaluate :func:`lgsteer.measures.full_report` over 1-D or 2-D
parameter grids.  Axis coordinates use the same display units as the
configuration surface (frequencies as ratios to the left-mirror
frequency, phases in radians, temperatures in kelvin, powers in watts);
absolute SI values exist only inside the model layer.  Unstable grid
points are data, not errors: the row carries the margin and an unstable
marker.  Any solver error at a point is captured in that row so a grid
never aborts half-way.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import NamedTuple

import numpy as np

from ._version import __version__
from .constants import CLIGHT, HBAR, KBOLTZ
from .errors import (
    InvalidSpec,
    LgsteerError,
    NoStableRegion,
    UnknownPreset,
)
from .gaussian import reduce, steady_covariance
from .measures import CorrelationReport, full_report, log_negativity
from .model import SystemParams, build_model, with_updates

# closed set of sweepable axes: axis name -> (SystemParams field, kind)
# kind "ratio" scales by omega_phi1 on application, "direct" passes through
_SWEEPABLE = {
    "detuning_ratio": ("detuning", "ratio"),
    "opa_gain_ratio": ("opa_gain", "ratio"),
    "opa_phase_rad": ("opa_phase", "direct"),
    "temperature_k": ("temperature", "direct"),
    "omega_phi2_ratio": ("omega_phi2", "ratio"),
    "laser_power_w": ("laser_power", "direct"),
}

_GRID_1D = 401
_GRID_2D = 101

# golden-section interior ratio (3 - sqrt(5)) / 2
_GOLDEN = 0.3819660112501051
_REFINE_TOL_RATIO = 1e-3


@dataclass(frozen=True)
class Axis:
    """One sweep axis: a parameter name and its coordinate values."""

    name: str
    values: tuple[float, ...]

    def __post_init__(self) -> None:
        if self.name not in _SWEEPABLE:
            raise InvalidSpec(
                f"axis {self.name!r} is not sweepable; "
                f"choose from {sorted(_SWEEPABLE)}"
            )
        vals = tuple(float(v) for v in self.values)
        if not vals:
            raise InvalidSpec(f"axis {self.name!r} has no values")
        if not all(math.isfinite(v) for v in vals):
            raise InvalidSpec(f"axis {self.name!r} has non-finite values")
        diffs = [b - a for a, b in zip(vals, vals[1:])]
        if diffs and not (all(d > 0 for d in diffs) or all(d < 0 for d in diffs)):
            raise InvalidSpec(f"axis {self.name!r} must be strictly monotone")
        object.__setattr__(self, "values", vals)


@dataclass(frozen=True)
class SweepSpec:
    """A grid: base parameters plus one or two axes."""

    base: SystemParams
    axis1: Axis
    axis2: Axis | None = None

    def __post_init__(self) -> None:
        if self.axis2 is not None and self.axis2.name == self.axis1.name:
            raise InvalidSpec(f"both axes sweep {self.axis1.name!r}")

    @property
    def shape(self) -> tuple[int, int]:
        return (
            len(self.axis1.values),
            1 if self.axis2 is None else len(self.axis2.values),
        )


def _apply(base: SystemParams, name: str, value: float) -> SystemParams:
    field_name, kind = _SWEEPABLE[name]
    if kind == "ratio":
        value = value * base.omega_phi1
    return with_updates(base, **{field_name: value})


@dataclass(frozen=True)
class SweepRow:
    """One grid point: coordinates, report, or a captured error."""

    index: tuple[int, int]
    coords: tuple[tuple[str, float], ...]
    report: CorrelationReport | None
    error: str | None = None


@dataclass(frozen=True)
class SweepResult:
    """All rows of a sweep in grid order plus run metadata."""

    spec: SweepSpec
    rows: tuple[SweepRow, ...]
    metadata: dict = field(default_factory=dict)


def _evaluate_point(args) -> SweepRow:
    spec, i, j = args
    coords = [(spec.axis1.name, spec.axis1.values[i])]
    if spec.axis2 is not None:
        coords.append((spec.axis2.name, spec.axis2.values[j]))
    try:
        params = spec.base
        for name, value in coords:
            params = _apply(params, name, value)
        report = full_report(build_model(params))
    except LgsteerError as exc:
        return SweepRow(
            (i, j), tuple(coords), None, f"{type(exc).__name__}: {exc}"
        )
    return SweepRow((i, j), tuple(coords), report)


def run_sweep(spec: SweepSpec, parallelism: int = 1) -> SweepResult:
    """Evaluate the grid; rows come back in (axis1, axis2) index order.

    ``parallelism`` > 1 evaluates rows concurrently but never changes
    the output: every point is an independent pure computation and the
    result list is assembled by grid index.
    """
    if not isinstance(parallelism, int) or parallelism < 1:
        raise InvalidSpec(f"parallelism must be a positive integer, got {parallelism}")
    n1, n2 = spec.shape
    points = [(spec, i, j) for i in range(n1) for j in range(n2)]
    if parallelism == 1:
        rows = [_evaluate_point(p) for p in points]
    else:
        with ThreadPoolExecutor(max_workers=parallelism) as pool:
            rows = list(pool.map(_evaluate_point, points))
    metadata = {
        "created_at": datetime.now(timezone.utc).isoformat(),
        "version": __version__,
        "constants": {"hbar": HBAR, "kboltz": KBOLTZ, "clight": CLIGHT},
    }
    return SweepResult(spec, tuple(rows), metadata)


class OptimumDetuning(NamedTuple):
    """Result of the detuning optimization."""

    delta: float
    delta_ratio: float
    flat: bool


def _measure_at(base: SystemParams, delta_ratio: float, measure: str) -> float:
    """Chosen measure at one detuning; -inf marks unstable or failed."""
    params = with_updates(base, detuning=delta_ratio * base.omega_phi1)
    try:
        model = build_model(params)
        _, cm = steady_covariance(model.drift, model.diffusion)
        if cm is None:
            return -math.inf
        if measure == "ENmm":
            pair = ("mirror1", "mirror2")
        else:
            pair = ("mirror1", "cavity")
        return log_negativity(reduce(cm, pair))
    except LgsteerError:
        return -math.inf


def optimum_detuning(base: SystemParams, measure: str = "ENmm") -> OptimumDetuning:
    """Detuning maximizing a measure over [-2, 2] mirror-1 frequencies.

    Scans a 401-point grid, then sharpens the best bracket with a
    golden-section pass down to 1e-3 of the mirror-1 frequency.  A flat
    landscape (every stable point identical) skips refinement and
    returns the smallest-detuning argmax with ``flat=True``.  Raises
    :class:`NoStableRegion` when no grid point is stable.
    """
    if measure not in ("ENmm", "ENmc"):
        raise InvalidSpec(f"measure must be ENmm or ENmc, got {measure!r}")
    grid = np.linspace(-2.0, 2.0, _GRID_1D)
    values = [_measure_at(base, float(d), measure) for d in grid]
    stable_vals = [v for v in values if v != -math.inf]
    if not stable_vals:
        raise NoStableRegion("every grid point in [-2, 2] is unstable")
    best = max(values)
    k = values.index(best)
    if max(stable_vals) == min(stable_vals):
        ratio = float(grid[k])
        return OptimumDetuning(ratio * base.omega_phi1, ratio, True)
    lo = float(grid[max(0, k - 1)])
    hi = float(grid[min(len(grid) - 1, k + 1)])
    best_x, best_v = float(grid[k]), best
    x1 = lo + _GOLDEN * (hi - lo)
    x2 = hi - _GOLDEN * (hi - lo)
    f1 = _measure_at(base, x1, measure)
    f2 = _measure_at(base, x2, measure)
    while hi - lo > _REFINE_TOL_RATIO:
        if f1 >= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = lo + _GOLDEN * (hi - lo)
            f1 = _measure_at(base, x1, measure)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = hi - _GOLDEN * (hi - lo)
            f2 = _measure_at(base, x2, measure)
        for x, v in ((x1, f1), (x2, f2)):
            if v > best_v:
                best_x, best_v = x, v
    return OptimumDetuning(best_x * base.omega_phi1, best_x, False)


def table_defaults() -> SystemParams:
    """Base physical parameters shared by every preset."""
    w1 = 2.0 * math.pi * 1e7
    return SystemParams(
        cavity_length=1e-3,
        mirror_mass=35e-12,
        mirror_radius=10e-6,
        omega_phi1=w1,
        omega_phi2=1.5 * w1,
        laser_power=50e-3,
        laser_wavelength=810e-9,
        quality_factor=2e7,
        finesse=5e3,
        oam_number=100,
        temperature=15e-3,
        opa_gain=0.0,
        opa_phase=0.0,
        detuning=-w1,
    )


def _delta_axis() -> Axis:
    return Axis("detuning_ratio", tuple(np.linspace(-2.0, 2.0, _GRID_1D)))


def _gain_axis(n: int = _GRID_1D) -> Axis:
    return Axis("opa_gain_ratio", tuple(np.linspace(0.0, 0.2, n)))


_THETA_TAGS = (
    ("theta0", 0.0),
    ("thetapi2", 0.5 * math.pi),
    ("thetapi", math.pi),
    ("theta3pi2", 1.5 * math.pi),
)


def _delta_scan_variants(base: SystemParams):
    """chi=0 plus the four pumped phases used by the detuning scans."""
    w1 = base.omega_phi1
    out = [("chi0", SweepSpec(with_updates(base, opa_gain=0.0), _delta_axis()))]
    for tag, theta in _THETA_TAGS:
        pumped = with_updates(base, opa_gain=0.1 * w1, opa_phase=theta)
        out.append((f"chi0p1_{tag}", SweepSpec(pumped, _delta_axis())))
    return out


def _fig4_variants(base: SystemParams):
    w1 = base.omega_phi1
    t_axis = Axis("temperature_k", tuple(np.geomspace(1e-3, 1.0, _GRID_1D)))
    out = []
    for tag, overrides in (
        ("chi0", {"opa_gain": 0.0}),
        ("chi0p1_theta3pi2", {"opa_gain": 0.1 * w1, "opa_phase": 1.5 * math.pi}),
    ):
        b = with_updates(base, **overrides)
        opt = optimum_detuning(b, "ENmm")
        out.append((tag, SweepSpec(with_updates(b, detuning=opt.delta), t_axis)))
    return out


def _fig8_variants(w2_ratio: float, theta: float):
    base = table_defaults()
    b = with_updates(
        base,
        omega_phi2=w2_ratio * base.omega_phi1,
        opa_gain=0.0,
        opa_phase=theta,
    )
    opt = optimum_detuning(b, "ENmm")
    return [("", SweepSpec(with_updates(b, detuning=opt.delta), _gain_axis()))]


def _fig3_variants():
    base = table_defaults()
    spec = SweepSpec(
        with_updates(base, detuning=-base.omega_phi1),
        _gain_axis(_GRID_2D),
        Axis("opa_phase_rad", tuple(np.linspace(0.0, 2.0 * math.pi, _GRID_2D))),
    )
    return [("", spec)]


def _delta_scan_at_ratio(w2_ratio: float):
    base = table_defaults()
    b = with_updates(
        base, omega_phi2=w2_ratio * base.omega_phi1, opa_gain=0.0
    )
    return [("", SweepSpec(b, _delta_axis()))]


_FIG8_PANELS = {
    "fig8a": (0.5, 0.0),
    "fig8b": (0.5, 0.5 * math.pi),
    "fig8c": (0.5, math.pi),
    "fig8d": (0.5, 1.5 * math.pi),
    "fig8e": (1.5, 0.0),
    "fig8f": (1.5, 0.5 * math.pi),
    "fig8g": (1.5, math.pi),
    "fig8h": (1.5, 1.5 * math.pi),
}

PRESET_NAMES = (
    "fig2a",
    "fig2b",
    "fig3",
    "fig4",
    "fig5",
    "fig6a",
    "fig6b",
    "fig7a",
    "fig7b",
    "fig7c",
    "fig7d",
    "fig8a",
    "fig8b",
    "fig8c",
    "fig8d",
    "fig8e",
    "fig8f",
    "fig8g",
    "fig8h",
)


def preset_variants(name: str):
    """All (suffix, SweepSpec) pairs a preset expands to.

    Detuning-scan presets carry an unpumped variant plus four pumped
    phases; the temperature preset carries unpumped and best-phase
    pumped variants; the rest are single grids (empty suffix).
    """
    if name in ("fig2a", "fig2b", "fig5"):
        return _delta_scan_variants(table_defaults())
    if name == "fig3":
        return _fig3_variants()
    if name == "fig4":
        return _fig4_variants(table_defaults())
    if name == "fig6a":
        return _delta_scan_at_ratio(0.5)
    if name == "fig6b":
        return _delta_scan_at_ratio(1.5)
    if name == "fig7a":
        return _delta_scan_at_ratio(0.9)
    if name == "fig7b":
        return _delta_scan_at_ratio(0.95)
    if name == "fig7c":
        return _delta_scan_at_ratio(1.05)
    if name == "fig7d":
        return _delta_scan_at_ratio(1.1)
    if name in _FIG8_PANELS:
        w2_ratio, theta = _FIG8_PANELS[name]
        return _fig8_variants(w2_ratio, theta)
    raise UnknownPreset(f"unknown preset {name!r}; choose from {PRESET_NAMES}")


def preset(name: str) -> SweepSpec:
    """The base grid of a named preset (first variant)."""
    return preset_variants(name)[0][1]
