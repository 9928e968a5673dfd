import json

import numpy as np
import pytest

from dswarp import cli


def _write_config(tmp_path, overrides):
    cfg = json.loads(json.dumps(cli.DEFAULT_CONFIG))
    for section, values in overrides.items():
        if isinstance(values, dict):
            cfg[section].update(values)
        else:
            cfg[section] = values
    path = tmp_path / "config.json"
    path.write_text(json.dumps(cfg))
    return str(path)


def test_default_config_validates():
    cli.validate_config(cli.load_config(None))


def test_mode_guard_rejected(tmp_path):
    path = _write_config(tmp_path, {"model": {"d_plus": 20,
                                              "boost_freqs_plus": [0.0] * 20}})
    with pytest.raises(cli.ConfigError):
        cli.validate_config(cli.load_config(path))


def test_unknown_suite_rejected(tmp_path):
    path = _write_config(tmp_path, {"suites": ["geometry", "nope"]})
    with pytest.raises(cli.ConfigError):
        cli.validate_config(cli.load_config(path))


def test_duplicate_suite_rejected(tmp_path):
    path = _write_config(tmp_path, {"suites": ["geometry", "geometry"]})
    with pytest.raises(cli.ConfigError):
        cli.validate_config(cli.load_config(path))


def test_nonfinite_kappa_rejected(tmp_path):
    path = _write_config(tmp_path, {"deformation": {"kappa": [0.1, float("nan")]}})
    with pytest.raises(cli.ConfigError):
        cli.validate_config(cli.load_config(path))


def test_guard_exit_code(tmp_path, capsys):
    path = _write_config(tmp_path, {"model": {"d_plus": 20,
                                              "boost_freqs_plus": [0.0] * 20}})
    rc = cli.main(["verify", "--config", path])
    assert rc == 2
    assert "config error" in capsys.readouterr().err


def test_geometry_suite_passes(tmp_path, capsys):
    rc = cli.main(["verify", "--suite", "geometry", "--out", str(tmp_path / "o")])
    out = capsys.readouterr().out
    assert rc == 0
    assert "geometry" in out and "FAIL" not in out
    report = json.loads((tmp_path / "o" / "report.json").read_text())
    assert report["all_pass"] is True
    assert [s["name"] for s in report["suites"]] == ["geometry"]


def test_locality_suite_with_kappa_grid(tmp_path):
    rc = cli.main(["verify", "--suite", "locality", "--kappa", "0", "0.5",
                   "--out", str(tmp_path / "o")])
    assert rc == 0
    report = json.loads((tmp_path / "o" / "report.json").read_text())
    grid = [c for s in report["suites"] for c in s["checks"]
            if c["name"] == "twisted-locality"]
    assert [c["metadata"]["kappa"] for c in grid] == [0.0, 0.5]
    assert all(c["pass"] for c in grid)


def test_determinism_excluding_timings(tmp_path):
    cfg = cli.load_config(None)
    cfg["suites"] = ["covering", "car", "inequivalence"]
    first = cli.run(cfg)
    second = cli.run(cfg)
    strip = cli.report_payload_without_timings
    assert json.dumps(strip(first), sort_keys=True) == \
        json.dumps(strip(second), sort_keys=True)


def test_report_schema_validates(tmp_path):
    cfg = cli.load_config(None)
    cfg["suites"] = ["lie"]
    report = cli.run(cfg)
    cli.validate_report_schema(report)
    bad = cli.report_payload_without_timings(report)
    del bad["seed"]
    import jsonschema
    with pytest.raises(jsonschema.ValidationError):
        from importlib import resources
        schema = json.loads(resources.files("dswarp")
                            .joinpath("report_schema.json").read_text())
        jsonschema.validate(bad, schema)


def test_csv_output(tmp_path):
    rc = cli.main(["verify", "--suite", "lie", "--out", str(tmp_path / "o"),
                   "--format", "csv"])
    assert rc == 0
    lines = (tmp_path / "o" / "sweep.csv").read_text().strip().splitlines()
    assert lines[0] == "suite,kappa,residual,tolerance,pass"
    assert len(lines) > 1


def test_group_subcommand(capsys):
    rc = cli.main(["group", "--t", "0.5"])
    assert rc == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["boost_match_residual"] < 1e-10
    assert payload["kernel_residual"] == 0.0
    lam = np.array(payload["covering_of_boost"])
    assert lam[0, 0] == pytest.approx(np.cosh(np.pi), rel=1e-12)


def test_wedges_subcommand(capsys):
    rc = cli.main(["wedges", "--seed", "3"])
    assert rc == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["reference_contains_e1"] is True
    assert payload["random_pair_verdict"] in ("WITNESS", "EQUAL")


def test_deform_subcommand(capsys):
    rc = cli.main(["deform", "--generator", "psi", "--mode", "2",
                   "--kappa", "0.5"])
    assert rc == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["dim"] == 16
    flat = payload["matrix_row_major"]
    assert len(flat) == 256 and len(flat[0]) == 2
    # warped spinor keeps unit operator norm (phases only)
    mat = np.array([a + 1j * b for a, b in flat]).reshape(16, 16)
    assert np.linalg.norm(mat, 2) == pytest.approx(1.0, abs=1e-12)


def test_oracle_subcommand(capsys):
    rc = cli.main(["oracle", "--kappa", "0.5", "--eps", "0.2", "0.1"])
    assert rc == 0
    payload = json.loads(capsys.readouterr().out)
    for cutoff in ("gaussian", "cosine"):
        assert payload[cutoff]["decreasing"] is True


def test_report_subcommand(tmp_path, capsys):
    cli.main(["verify", "--suite", "lie", "--out", str(tmp_path / "o")])
    capsys.readouterr()
    rc = cli.main(["report", "--input", str(tmp_path / "o" / "report.json")])
    assert rc == 0
    assert "PASS" in capsys.readouterr().out
