"""Grid sweeps, the detuning optimizer, and the figure presets."""

import math
from datetime import datetime

import numpy as np
import pytest

from lgsteer import (
    Axis,
    InvalidSpec,
    NoStableRegion,
    SweepSpec,
    UnknownPreset,
    __version__,
    build_model,
    full_report,
    optimum_detuning,
    preset,
    preset_variants,
    PRESET_NAMES,
    run_sweep,
    table_defaults,
    with_updates,
)

from conftest import W1, make_params


def small_delta_spec(values=(0.8, 1.0, 1.2)) -> SweepSpec:
    return SweepSpec(make_params(), Axis("detuning_ratio", values))


class TestAxis:
    def test_valid_axis(self):
        ax = Axis("detuning_ratio", [0.0, 0.5, 1.0])
        assert ax.values == (0.0, 0.5, 1.0)
        assert all(isinstance(v, float) for v in ax.values)

    def test_decreasing_is_fine(self):
        Axis("temperature_k", (1.0, 0.1, 0.01))

    def test_unknown_name(self):
        with pytest.raises(InvalidSpec, match="not sweepable"):
            Axis("mirror_mass_kg", (1.0, 2.0))

    def test_empty(self):
        with pytest.raises(InvalidSpec, match="no values"):
            Axis("detuning_ratio", ())

    def test_non_finite(self):
        with pytest.raises(InvalidSpec, match="non-finite"):
            Axis("detuning_ratio", (0.0, math.nan))

    def test_non_monotone(self):
        with pytest.raises(InvalidSpec, match="monotone"):
            Axis("detuning_ratio", (0.0, 1.0, 0.5))
        with pytest.raises(InvalidSpec, match="monotone"):
            Axis("detuning_ratio", (0.0, 0.0, 1.0))


class TestSweepSpec:
    def test_shapes(self):
        one_d = small_delta_spec()
        assert one_d.shape == (3, 1)
        two_d = SweepSpec(
            make_params(),
            Axis("opa_gain_ratio", (0.0, 0.1)),
            Axis("opa_phase_rad", (0.0, 1.0, 2.0)),
        )
        assert two_d.shape == (2, 3)

    def test_rejects_duplicate_axis(self):
        with pytest.raises(InvalidSpec, match="both axes"):
            SweepSpec(
                make_params(),
                Axis("detuning_ratio", (0.0, 1.0)),
                Axis("detuning_ratio", (2.0, 3.0)),
            )


class TestRunSweep:
    def test_single_point_matches_direct_report(self):
        spec = SweepSpec(make_params(), Axis("detuning_ratio", (1.0,)))
        result = run_sweep(spec)
        assert len(result.rows) == 1
        row = result.rows[0]
        assert row.error is None
        assert row.coords == (("detuning_ratio", 1.0),)
        direct = full_report(build_model(make_params(detuning=+W1)))
        assert row.report == direct

    def test_grid_order_and_coords(self):
        spec = SweepSpec(
            make_params(detuning=+W1),
            Axis("opa_gain_ratio", (0.0, 0.05)),
            Axis("opa_phase_rad", (0.0, 1.0, 2.0)),
        )
        result = run_sweep(spec)
        assert [r.index for r in result.rows] == [
            (i, j) for i in range(2) for j in range(3)
        ]
        assert result.rows[4].coords == (
            ("opa_gain_ratio", 0.05),
            ("opa_phase_rad", 1.0),
        )

    def test_parallel_matches_serial_exactly(self):
        spec = small_delta_spec((0.5, 0.8, 1.0, 1.3, 1.6))
        serial = run_sweep(spec, parallelism=1)
        parallel = run_sweep(spec, parallelism=4)
        assert serial.rows == parallel.rows

    def test_mixed_stability_rows(self):
        # the sweep crosses the instability boundary without aborting
        result = run_sweep(small_delta_spec((-1.0, 1.0)))
        unstable, stable = result.rows
        assert unstable.report.stable is False
        assert unstable.report.stability_margin > 0.0
        assert unstable.report.en_mm is None
        assert stable.report.stable is True
        assert stable.error is None

    def test_bad_point_is_captured_not_raised(self):
        spec = SweepSpec(make_params(), Axis("laser_power_w", (0.0, 0.05)))
        result = run_sweep(spec)
        bad, good = result.rows
        assert bad.report is None
        assert "NonPositiveParameter" in bad.error
        assert "laser_power" in bad.error
        assert good.error is None
        assert good.report is not None

    def test_metadata(self):
        result = run_sweep(small_delta_spec((1.0,)))
        meta = result.metadata
        assert meta["version"] == __version__
        assert set(meta["constants"]) == {"hbar", "kboltz", "clight"}
        datetime.fromisoformat(meta["created_at"])  # parseable timestamp

    def test_parallelism_validation(self):
        spec = small_delta_spec((1.0,))
        with pytest.raises(InvalidSpec, match="parallelism"):
            run_sweep(spec, parallelism=0)
        with pytest.raises(InvalidSpec, match="parallelism"):
            run_sweep(spec, parallelism=2.5)


class TestOptimumDetuning:
    def test_mirror_cavity_peak(self):
        opt = optimum_detuning(table_defaults(), "ENmc")
        assert opt.flat is False
        assert opt.delta_ratio == pytest.approx(1.4017, abs=2e-3)
        assert opt.delta == pytest.approx(opt.delta_ratio * W1, rel=1e-12)

    def test_flat_landscape_returns_first_argmax(self):
        # mirror-mirror negativity is zero wherever this base is stable,
        # so the optimizer reports a flat landscape
        opt = optimum_detuning(table_defaults(), "ENmm")
        assert opt.flat is True
        assert opt.delta_ratio == 0.0

    def test_unknown_measure(self):
        with pytest.raises(InvalidSpec, match="measure"):
            optimum_detuning(table_defaults(), "ENxy")

    def test_no_stable_region(self):
        # amplifier gain far above the cavity loss rate blows up the
        # amplified quadrature at every detuning on the grid
        with pytest.raises(NoStableRegion):
            optimum_detuning(
                make_params(opa_gain=5.0 * W1, opa_phase=0.0), "ENmm"
            )

    def test_zero_detuning_stable_at_any_power(self):
        # without detuning the undamped mirrors see no back-action loop,
        # so even extreme drive power leaves one marginally stable point
        opt = optimum_detuning(make_params(laser_power=5e3), "ENmm")
        assert opt.flat is True
        assert opt.delta_ratio == 0.0


class TestPresets:
    def test_names(self):
        assert len(PRESET_NAMES) == 19
        assert len(set(PRESET_NAMES)) == 19

    def test_unknown_preset(self):
        with pytest.raises(UnknownPreset, match="fig99"):
            preset_variants("fig99")

    def test_detuning_scan_variants(self):
        variants = preset_variants("fig2a")
        assert [tag for tag, _ in variants] == [
            "chi0",
            "chi0p1_theta0",
            "chi0p1_thetapi2",
            "chi0p1_thetapi",
            "chi0p1_theta3pi2",
        ]
        chi0 = variants[0][1]
        assert chi0.base.opa_gain == 0.0
        assert chi0.axis1.name == "detuning_ratio"
        assert len(chi0.axis1.values) == 401
        assert chi0.axis1.values[0] == -2.0
        assert chi0.axis1.values[-1] == 2.0
        pumped = dict(variants)["chi0p1_thetapi2"]
        assert pumped.base.opa_gain == pytest.approx(0.1 * W1)
        assert pumped.base.opa_phase == pytest.approx(0.5 * math.pi)

    def test_shared_detuning_scan_presets(self):
        assert preset_variants("fig2b") == preset_variants("fig2a")
        assert preset_variants("fig5") == preset_variants("fig2a")

    def test_two_dimensional_preset(self):
        variants = preset_variants("fig3")
        assert len(variants) == 1
        tag, spec = variants[0]
        assert tag == ""
        assert spec.shape == (101, 101)
        assert spec.axis1.name == "opa_gain_ratio"
        assert spec.axis2.name == "opa_phase_rad"
        assert spec.base.detuning == pytest.approx(-W1)

    def test_mirror_ratio_presets(self):
        for name, ratio in (
            ("fig6a", 0.5),
            ("fig6b", 1.5),
            ("fig7a", 0.9),
            ("fig7b", 0.95),
            ("fig7c", 1.05),
            ("fig7d", 1.1),
        ):
            spec = preset(name)
            assert spec.base.omega_phi2 == pytest.approx(ratio * W1), name
            assert spec.base.opa_gain == 0.0
            assert spec.axis1.name == "detuning_ratio"

    def test_gain_scan_preset(self):
        variants = preset_variants("fig8e")
        assert len(variants) == 1
        spec = variants[0][1]
        assert spec.base.omega_phi2 == pytest.approx(1.5 * W1)
        assert spec.axis1.name == "opa_gain_ratio"
        assert spec.axis1.values[0] == 0.0
        assert spec.axis1.values[-1] == pytest.approx(0.2)
        # base detuning fixed at the unpumped optimum before the gain scan
        opt = optimum_detuning(with_updates(spec.base, opa_gain=0.0), "ENmm")
        assert spec.base.detuning == pytest.approx(opt.delta)

    def test_preset_returns_first_variant(self):
        assert preset("fig2a") == preset_variants("fig2a")[0][1]

    def test_table_defaults_match_reference_point(self):
        assert table_defaults() == make_params()
