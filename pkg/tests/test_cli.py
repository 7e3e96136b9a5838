"""Command-line surface: argument handling, exit codes, file outputs."""

import json

import pytest

from lgsteer import MEASURE_COLUMNS, PRESET_NAMES, parse_result_csv
from lgsteer.cli import main

from conftest import make_params


def write_config(tmp_path, doc, name="run.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


SMALL_SWEEP = {
    "run": {
        "mode": "sweep",
        "axis1": {"name": "detuning_ratio", "values": [-0.5, 1.0, 1.4]},
    }
}


class TestPoint:
    def test_default_point_is_unstable_but_exits_zero(self, capsys):
        # the default working point sits beyond the instability threshold;
        # that is a physics answer, not a tool failure
        assert main(["point"]) == 0
        out = capsys.readouterr().out
        assert "stable" in out
        assert "false" in out

    def test_table_output_for_stable_point(self, tmp_path, capsys):
        cfg = write_config(
            tmp_path, {"system": {"detuning_ratio": 1.0}, "run": {"mode": "point"}}
        )
        assert main(["point", "--config", cfg]) == 0
        out = capsys.readouterr().out
        assert "EN_m1c" in out
        assert "steering_class" in out
        assert "no_way" in out

    def test_json_output(self, tmp_path, capsys):
        cfg = write_config(
            tmp_path, {"system": {"detuning_ratio": 1.0}, "run": {"mode": "point"}}
        )
        assert main(["point", "--format", "json", "--config", cfg]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["stable"] is True
        assert doc["EN_m1c"] > 0.0

    def test_csv_output(self, tmp_path, capsys):
        cfg = write_config(
            tmp_path, {"system": {"detuning_ratio": 1.0}, "run": {"mode": "point"}}
        )
        assert main(["point", "--format", "csv", "--config", cfg]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == ",".join(MEASURE_COLUMNS)
        assert lines[1].startswith("true,")

    def test_bad_config_value_exits_two(self, tmp_path, capsys):
        cfg = write_config(
            tmp_path, {"system": {"laser_power_w": 0.0}, "run": {"mode": "point"}}
        )
        assert main(["point", "--config", cfg]) == 2
        assert "laser_power_w" in capsys.readouterr().err

    def test_missing_config_file_exits_two(self, tmp_path, capsys):
        assert main(["point", "--config", str(tmp_path / "absent.json")]) == 2
        assert "cannot read config" in capsys.readouterr().err

    def test_unknown_config_key_exits_two(self, tmp_path, capsys):
        cfg = write_config(
            tmp_path, {"system": {"finnesse": 100}, "run": {"mode": "point"}}
        )
        assert main(["point", "--config", cfg]) == 2
        assert "finnesse" in capsys.readouterr().err


class TestSweep:
    def test_config_sweep_writes_csv(self, tmp_path, capsys):
        out = str(tmp_path / "scan.csv")
        cfg = write_config(tmp_path, SMALL_SWEEP)
        assert main(["sweep", "--config", cfg, "--out", out]) == 0
        stdout = capsys.readouterr().out
        assert f"wrote {out}: 3 rows, 2 stable" in stdout
        axis_names, rows = parse_result_csv(open(out).read())
        assert axis_names == ["detuning_ratio"]
        assert [r["stable"] for r in rows] == [False, True, True]

    def test_output_section_supplies_path_and_format(self, tmp_path, capsys, monkeypatch):
        monkeypatch.chdir(tmp_path)
        doc = dict(SMALL_SWEEP)
        doc["output"] = {"path": "fromcfg.json", "format": "json"}
        cfg = write_config(tmp_path, doc)
        assert main(["sweep", "--config", cfg]) == 0
        written = json.loads((tmp_path / "fromcfg.json").read_text())
        assert len(written["rows"]) == 3

    def test_cli_format_overrides_config(self, tmp_path, capsys):
        doc = dict(SMALL_SWEEP)
        doc["output"] = {"path": str(tmp_path / "o.any"), "format": "json"}
        cfg = write_config(tmp_path, doc)
        assert main(["sweep", "--config", cfg, "--format", "csv"]) == 0
        text = (tmp_path / "o.any").read_text()
        assert text.splitlines()[0].startswith("detuning_ratio,stable,")

    def test_reruns_are_byte_identical(self, tmp_path, capsys):
        cfg = write_config(tmp_path, SMALL_SWEEP)
        a = str(tmp_path / "a.csv")
        b = str(tmp_path / "b.csv")
        assert main(["sweep", "--config", cfg, "--out", a]) == 0
        assert main(["sweep", "--config", cfg, "--out", b]) == 0
        assert open(a, "rb").read() == open(b, "rb").read()

    def test_parallel_matches_serial(self, tmp_path, capsys):
        cfg = write_config(tmp_path, SMALL_SWEEP)
        a = str(tmp_path / "serial.csv")
        b = str(tmp_path / "parallel.csv")
        assert main(["sweep", "--config", cfg, "--out", a]) == 0
        assert main(["sweep", "--config", cfg, "--out", b, "--parallel", "4"]) == 0
        assert open(a, "rb").read() == open(b, "rb").read()

    def test_needs_exactly_one_source(self, tmp_path, capsys):
        assert main(["sweep"]) == 2
        assert "exactly one" in capsys.readouterr().err
        cfg = write_config(tmp_path, SMALL_SWEEP)
        assert main(["sweep", "--config", cfg, "--preset", "fig6a"]) == 2
        assert "exactly one" in capsys.readouterr().err

    def test_unknown_preset_exits_two(self, capsys):
        assert main(["sweep", "--preset", "fig99"]) == 2
        assert "fig99" in capsys.readouterr().err

    def test_unwritable_output_exits_three(self, tmp_path, capsys):
        cfg = write_config(tmp_path, SMALL_SWEEP)
        missing_dir = str(tmp_path / "no" / "such" / "dir" / "x.csv")
        assert main(["sweep", "--config", cfg, "--out", missing_dir]) == 3
        assert "error writing" in capsys.readouterr().err

    def test_point_mode_config_rejected_for_sweep(self, tmp_path, capsys):
        cfg = write_config(tmp_path, {"run": {"mode": "point"}})
        assert main(["sweep", "--config", cfg]) == 2
        assert "sweep" in capsys.readouterr().err


class TestPresetList:
    def test_lists_all_presets_in_order(self, capsys):
        assert main(["preset-list"]) == 0
        names = capsys.readouterr().out.split()
        assert tuple(names) == PRESET_NAMES


class TestVerify:
    def test_verify_passes(self, capsys):
        assert main(["verify"]) == 0
        out = capsys.readouterr().out
        assert "FAIL" not in out
        assert out.count("PASS") == 8
        assert "all 8 checks passed" in out

    def test_verify_seed_flag(self, capsys):
        assert main(["verify", "--seed", "777"]) == 0
        assert "all 8 checks passed" in capsys.readouterr().out


class TestParser:
    def test_version_flag(self, capsys):
        from lgsteer import __version__

        with pytest.raises(SystemExit) as exc:
            main(["--version"])
        assert exc.value.code == 0
        assert __version__ in capsys.readouterr().out

    def test_command_required(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main([])
        assert exc.value.code == 2
