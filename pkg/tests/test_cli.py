"""Batch front-end tests: schema gating, exit codes, report envelopes, and
byte-identical replays at different thread counts. Commands run in process
through cli.run and cli.main with reports written under tmp_path."""

import json

import pytest

from bergman_lab import carleson, cli, holo, reporting, weights
from bergman_lab.errors import AccuracyError

FLAT = weights.RadialWeight.power(0.0).to_json()
Z_POLY = holo.function_to_json(holo.Monomial((1,), 1.0))


def read_report(out_dir, command):
    with open(out_dir / f"{command}.json") as fh:
        return json.load(fh)


def test_weight_info_envelope_and_values(tmp_path, capsys):
    cfg = {"weight": FLAT, "n": 1}
    assert cli.run("weight-info", cfg, str(tmp_path)) == 0
    data = read_report(tmp_path, "weight-info")
    assert set(data) == {"command", "config_hash", "version", "status",
                         "report"}
    assert data["command"] == "weight-info"
    assert data["status"] == "ok"
    assert data["config_hash"] == reporting.config_hash(cfg)
    cls = data["report"]["classification"]
    assert cls["doubling_constant_estimate"] == pytest.approx(2.0, abs=1e-9)
    assert cls["is_doubling"] is True and cls["in_regular"] is True
    assert cls["in_rapidly_increasing"] is False
    assert data["report"]["ball_mass"] == pytest.approx(1.0, rel=1e-12)
    hat = data["report"]["omega_hat"]
    assert hat[0] == {"r": 0.0, "value": 1.0}
    # the written path is announced on stdout
    assert str(tmp_path / "weight-info.json") in capsys.readouterr().out


def test_norm_command_exact_value(tmp_path):
    cfg = {"function": Z_POLY, "weight": FLAT, "p": 2.0, "seed": 0}
    assert cli.run("norm", cfg, str(tmp_path)) == 0
    data = read_report(tmp_path, "norm")
    assert data["report"]["norm"]["value"] == 0.5
    assert data["report"]["norm"]["formula_id"] == "bergman_p"
    assert data["report"]["p"] == 2.0


def test_schema_rejections_exit_2(tmp_path, capsys):
    base = {"function": Z_POLY, "weight": FLAT, "p": 2.0, "seed": 0}

    missing_seed = {k: v for k, v in base.items() if k != "seed"}
    assert cli.run("norm", missing_seed, str(tmp_path)) == 2

    unknown_field = dict(base, extra=1)
    assert cli.run("norm", unknown_field, str(tmp_path)) == 2

    nonpositive_p = dict(base, p=0.0)
    assert cli.run("norm", nonpositive_p, str(tmp_path)) == 2

    bad_formula = dict(base, formula="nope")
    assert cli.run("norm", bad_formula, str(tmp_path)) == 2

    assert "config error" in capsys.readouterr().err
    assert not (tmp_path / "norm.json").exists()


def test_bad_weight_family_exit_2(tmp_path, capsys):
    cfg = {"function": Z_POLY, "weight": {"family": "exotic"},
           "p": 2.0, "seed": 0}
    assert cli.run("norm", cfg, str(tmp_path)) == 2
    assert "config error" in capsys.readouterr().err


def test_accuracy_failure_exit_3_with_partial_report(tmp_path, monkeypatch,
                                                     capsys):
    def boom(cfg, threads):
        raise AccuracyError("tolerance not reached", estimate=1.25,
                            achieved_tol=0.5)

    monkeypatch.setitem(cli._RUNNERS, "norm", boom)
    cfg = {"function": Z_POLY, "weight": FLAT, "p": 2.0, "seed": 0}
    assert cli.run("norm", cfg, str(tmp_path)) == 3
    data = read_report(tmp_path, "norm")
    assert data["status"] == "accuracy-error"
    assert data["report"] == {"estimate": 1.25, "achieved_tol": 0.5}
    assert "tolerance not reached" in data["detail"]
    assert "accuracy failure" in capsys.readouterr().err


def test_equivalence_bytes_identical_across_threads(tmp_path, capsys):
    cfg = {"weight": FLAT, "n": 1, "p": 2.0, "count": 4, "max_degree": 4,
           "seed": 7}
    one, four = tmp_path / "one", tmp_path / "four"
    assert cli.run("equivalence-report", cfg, str(one), threads=1) == 0
    assert cli.run("equivalence-report", cfg, str(four), threads=4) == 0
    jname, cname = "equivalence-report.json", "equivalence.csv"
    assert (one / jname).read_bytes() == (four / jname).read_bytes()
    assert (one / cname).read_bytes() == (four / cname).read_bytes()
    data = read_report(one, "equivalence-report")
    assert data["report"]["worst_rel_err"] < 1e-5
    header = (one / cname).read_text().splitlines()[0]
    assert header == "index,degree,lhs,rhs,ratio"


def test_carleson_command_unit_quotients(tmp_path):
    mu = carleson.Measure.weighted_volume(
        weights.RadialWeight.power(0.0), 1).to_json()
    cfg = {"measure": mu, "weight": FLAT, "p": 2.0, "q": 2.0,
           "sampling": {"levels": 5, "seed": 0}}
    assert cli.run("carleson", cfg, str(tmp_path)) == 0
    data = read_report(tmp_path, "carleson")
    rep = data["report"]
    assert rep["sup_estimate"] == 1.0
    assert all(row["max_quotient"] == 1.0 for row in rep["radial_profile"])
    csv_lines = (tmp_path / "carleson-profile.csv").read_text().splitlines()
    assert csv_lines[0] == "level,radius,max_quotient"
    assert csv_lines[2] == "1,0.5,1.0"


def test_geometry_check_command(tmp_path):
    cfg = {"n": 1, "samples": 2000, "cases": 10, "seed": 1}
    assert cli.run("geometry-check", cfg, str(tmp_path)) == 0
    data = read_report(tmp_path, "geometry-check")
    assert data["report"]["total_violations"] == 0
    assert set(data["report"]["checks"]) == {
        "tube_block", "admissible_equivariance", "tent_in_block"}


def test_main_entrypoint(tmp_path, capsys):
    cfg_path = tmp_path / "norm.json"
    cfg_path.write_text(json.dumps(
        {"function": Z_POLY, "weight": FLAT, "p": 2.0, "seed": 0}))
    out = tmp_path / "out"
    rc = cli.main(["norm", "--config", str(cfg_path), "--out", str(out),
                   "--threads", "2"])
    assert rc == 0
    assert (out / "norm.json").exists()
    assert str(out / "norm.json") in capsys.readouterr().out

    assert cli.main(["norm", "--config", str(tmp_path / "absent.json"),
                     "--out", str(out)]) == 2
    top_list = tmp_path / "list.json"
    top_list.write_text("[1, 2]")
    assert cli.main(["norm", "--config", str(top_list)]) == 2
    assert "config error" in capsys.readouterr().err
