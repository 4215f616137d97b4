import json
import math

import numpy as np
import pytest

from tpspeckle.cli import (
    PRESETS,
    ConfigError,
    main,
    parse_config,
    preset_fig2,
    preset_fig3,
    preset_fig4,
    run_experiment,
    scale_config,
    validate_config,
)


def _tiny_config(**overrides):
    cfg = {
        "schema_version": 1,
        "name": "tiny",
        "chain": {"N": 8, "J": 1.0, "W": 0.2, "U": [0.0, 1.5]},
        "channels": [
            {
                "name": "dist",
                "subspace": "distinguishable",
                "input": [2, 4],
                "output": [3, 6],
                "fits": ["exponential", "k1"],
            },
            {"name": "bos", "subspace": "bosonic", "input": [2, 2], "output": [4, 4],
             "fits": ["exponential", "compound_rician"]},
            {"name": "ferm", "subspace": "fermionic", "input": [2, 4], "output": [3, 6]},
            {"name": "one", "subspace": "single", "input": [2], "output": [5]},
        ],
        "time": {"mode": "grid", "t_start": 100.0, "step": 100.0, "count": 400},
        "seeds": {"base": 77, "count": 1},
        "fit_options": {"n_dominant": 2, "mc_samples": 2000},
    }
    cfg.update(overrides)
    return cfg


def _windows_config(**overrides):
    cfg = _tiny_config(**overrides)
    cfg["name"] = "tinywin"
    cfg["time"] = {
        "mode": "windows",
        "windows": [
            {"label": "early", "t_start": 100.0, "step": 100.0, "count": 120},
            {"label": "late", "t_start": 1e6, "step": 100.0, "count": 120},
        ],
    }
    cfg["seeds"] = {"base": 5, "count": 3}
    for ch in cfg["channels"]:
        ch.pop("fits", None)
    cfg["output"] = {"write_series": False}
    return cfg


class TestValidation:
    def test_presets_are_clean(self):
        for name, factory in PRESETS.items():
            errors, warnings = validate_config(factory())
            assert errors == [], name
            assert warnings == [], name

    def test_fermionic_double_occupancy_rejected(self):
        cfg = _tiny_config()
        cfg["channels"][2]["input"] = [3, 3]
        errors, _ = validate_config(cfg)
        assert any("fermionic" in e and "differ" in e for e in errors)

    def test_site_bounds(self):
        cfg = _tiny_config()
        cfg["channels"][0]["output"] = [3, 9]
        errors, _ = validate_config(cfg)
        assert any("outside" in e for e in errors)

    def test_short_step_warns(self):
        cfg = _tiny_config()
        cfg["time"]["step"] = 1.0
        errors, warnings = validate_config(cfg)
        assert errors == []
        assert any("correlated" in w for w in warnings)

    def test_unknown_subspace_and_fit(self):
        cfg = _tiny_config()
        cfg["channels"][0]["subspace"] = "anyonic"
        cfg["channels"][1]["fits"] = ["lognormal"]
        errors, _ = validate_config(cfg)
        assert any("subspace" in e for e in errors)
        assert any("fit kind" in e for e in errors)

    def test_grid_mode_requires_single_seed(self):
        cfg = _tiny_config()
        cfg["seeds"]["count"] = 4
        errors, _ = validate_config(cfg)
        assert any("one disorder realization" in e for e in errors)

    def test_schema_version_checked(self):
        errors, _ = validate_config(_tiny_config(schema_version=99))
        assert any("schema_version" in e for e in errors)

    def test_parse_raises_config_error(self):
        with pytest.raises(ConfigError):
            parse_config(_tiny_config(channels=[]))


class TestScale:
    def test_scale_divides_counts_not_steps(self):
        cfg = parse_config(preset_fig2())
        scaled = scale_config(cfg, 10.0)
        assert scaled.grids[0].count == cfg.grids[0].count // 10
        assert scaled.grids[0].step == cfg.grids[0].step
        assert scale_config(cfg, 1.0) is cfg

    def test_presets_shapes(self):
        fig2 = parse_config(preset_fig2())
        assert fig2.n_sites == 40 and len(fig2.channels) == 4
        fig3 = parse_config(preset_fig3())
        assert fig3.mode == "windows" and fig3.seed_count == 100
        assert [g.label for g in fig3.grids] == ["short", "intermediate", "long"]
        fig4 = parse_config(preset_fig4())
        assert fig4.u_values == (200.0, 500.0)


@pytest.fixture(scope="module")
def grid_artifacts(tmp_path_factory):
    out = tmp_path_factory.mktemp("tiny")
    run_experiment(parse_config(_tiny_config()), out, threads=1)
    return out


@pytest.fixture(scope="module")
def window_artifacts(tmp_path_factory):
    out = tmp_path_factory.mktemp("tinywin")
    run_experiment(parse_config(_windows_config()), out, threads=2)
    return out


class TestRunGridMode:
    def test_artifact_files_exist(self, grid_artifacts):
        names = {p.name for p in grid_artifacts.iterdir()}
        assert "pdf.csv" in names
        assert "summary.json" in names
        assert "meta.json" in names
        assert "series_dist_U0.csv" in names
        assert "series_dist_U1.5.csv" in names
        assert "series_one_U0.csv" in names

    def test_summary_contrast_matches_series_recomputation(self, grid_artifacts):
        summary = json.loads((grid_artifacts / "summary.json").read_text())
        for inst in ("dist_U0", "bos_U1.5", "ferm_U0"):
            rows = (grid_artifacts / f"series_{inst}.csv").read_text().strip().splitlines()
            assert rows[0] == "t,I"
            vals = np.array([float(r.split(",")[1]) for r in rows[1:]])
            mean = vals.mean()
            contrast = math.sqrt(max(0.0, (vals**2).mean() / mean**2 - 1.0))
            assert abs(summary["channels"][inst]["contrast"] - contrast) < 1e-12

    def test_pdf_csv_schema(self, grid_artifacts):
        rows = (grid_artifacts / "pdf.csv").read_text().strip().splitlines()
        assert rows[0] == "bin_center,density,count,channel"
        channels = {r.split(",")[3] for r in rows[1:]}
        assert "dist_U0" in channels and "bos_U1.5" in channels

    def test_fits_recorded(self, grid_artifacts):
        summary = json.loads((grid_artifacts / "summary.json").read_text())
        fits = {f["kind"]: f for f in summary["channels"]["bos_U1.5"]["fits"]}
        assert fits["exponential"]["status"] == "ok"
        assert "ks_distance" in fits["exponential"]
        comp = fits["compound_rician"]
        assert comp["status"] == "ok"
        assert len(comp["params"]["r_samples"]) == 400
        # single-mode channel has zero contrast: exponential fit still works
        one = summary["channels"]["one_U0"]
        assert one["n_samples"] == 400

    def test_meta_echo(self, grid_artifacts):
        meta = json.loads((grid_artifacts / "meta.json").read_text())
        assert meta["schema_version"] == 1
        assert meta["seeds"] == [77]
        assert meta["config"]["chain"]["N"] == 8
        assert meta["config"]["time"]["count"] == 400

    def test_thread_count_does_not_change_bytes(self, grid_artifacts, tmp_path):
        cfg = parse_config(_tiny_config())
        out2 = tmp_path / "threads4"
        run_experiment(cfg, out2, threads=4)
        for p in sorted(grid_artifacts.iterdir()):
            assert (out2 / p.name).read_bytes() == p.read_bytes(), p.name

    def test_bound_count_reported_for_bosonic(self, grid_artifacts):
        summary = json.loads((grid_artifacts / "summary.json").read_text())
        assert summary["channels"]["bos_U0"]["n_bound"] is not None
        assert summary["channels"]["dist_U0"]["n_bound"] is None


class TestRunWindowsMode:
    def test_contrast_csv(self, window_artifacts):
        rows = (window_artifacts / "contrast.csv").read_text().strip().splitlines()
        assert rows[0] == "channel,U,window,contrast_mean,contrast_stderr,n_seeds"
        body = [r.split(",") for r in rows[1:]]
        # channels x U values x windows
        assert len(body) == 4 * 2 * 2
        assert all(r[5] == "3" for r in body)

    def test_summary_per_window(self, window_artifacts):
        summary = json.loads((window_artifacts / "summary.json").read_text())
        entry = summary["channels"]["dist_U1.5"]["per_window"]["late"]
        assert entry["n_seeds"] == 3
        assert len(entry["contrasts"]) == 3
        assert entry["contrast_mean"] == pytest.approx(np.mean(entry["contrasts"]))

    def test_no_series_files(self, window_artifacts):
        assert not any(p.name.startswith("series_") for p in window_artifacts.iterdir())

    def test_thread_count_does_not_change_bytes(self, window_artifacts, tmp_path):
        out2 = tmp_path / "threads1"
        run_experiment(parse_config(_windows_config()), out2, threads=1)
        for p in sorted(window_artifacts.iterdir()):
            assert (out2 / p.name).read_bytes() == p.read_bytes(), p.name


class TestMainEntry:
    def test_validate_subcommand(self, tmp_path, capsys):
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps(_tiny_config()))
        assert main(["validate", str(path)]) == 0
        assert "clean" in capsys.readouterr().out

    def test_validate_reports_problems(self, tmp_path, capsys):
        cfg = _tiny_config()
        cfg["channels"][2]["input"] = [3, 3]
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps(cfg))
        assert main(["validate", str(path)]) == 0
        assert "error:" in capsys.readouterr().out

    def test_run_subcommand(self, tmp_path):
        cfg = _tiny_config()
        cfg["time"]["count"] = 50
        cfg["channels"] = cfg["channels"][:1]
        cfg["channels"][0]["fits"] = []
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps(cfg))
        out = tmp_path / "out"
        assert main(["run", str(path), "--out-dir", str(out)]) == 0
        assert (out / "summary.json").exists()

    def test_invalid_config_exits_2(self, tmp_path, capsys):
        cfg = _tiny_config(channels=[])
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps(cfg))
        assert main(["run", str(path)]) == 2

    def test_missing_config_exits_2(self, tmp_path):
        assert main(["run", str(tmp_path / "nope.json")]) == 2

    def test_broken_json_exits_2(self, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text("{not json")
        assert main(["run", str(path)]) == 2

    def test_io_failure_exits_3(self, tmp_path):
        cfg = _tiny_config()
        cfg["time"]["count"] = 50
        cfg["channels"] = cfg["channels"][:1]
        cfg["channels"][0]["fits"] = []
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps(cfg))
        blocker = tmp_path / "blocked"
        blocker.write_text("a file, not a directory")
        assert main(["run", str(path), "--out-dir", str(blocker / "sub")]) == 3

    def test_seed_override_lands_in_meta(self, tmp_path):
        cfg = _tiny_config()
        cfg["time"]["count"] = 50
        cfg["channels"] = cfg["channels"][:1]
        cfg["channels"][0]["fits"] = []
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps(cfg))
        out = tmp_path / "out"
        assert main(["run", str(path), "--out-dir", str(out), "--seed", "4242"]) == 0
        meta = json.loads((out / "meta.json").read_text())
        assert meta["seeds"] == [4242]

    def test_preset_subcommand_with_scale(self, tmp_path):
        out = tmp_path / "fig3"
        code = main(["fig3", "--out-dir", str(out), "--scale", "50", "--threads", "2", "--seed", "9"])
        assert code == 0
        rows = (out / "contrast.csv").read_text().strip().splitlines()
        assert len(rows) == 1 + 2 * 10 * 3
        meta = json.loads((out / "meta.json").read_text())
        assert meta["config"]["time"]["windows"][0]["count"] == 20
