"""Command-line interface tests: subcommands, formats, exit codes,
configuration precedence, byte determinism."""

import json
import math

import pytest

from strichartz_stab import cli
from strichartz_stab.quad import QuadratureError


def run_cli(args, capsys):
    code = cli.main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_constants_paraboloid_rows(capsys):
    code, out, _ = run_cli(["constants", "--case", "paraboloid", "--dims", "1:4"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert len(doc["rows"]) == 12  # three rows per dimension
    by_name = {r["quantity"]: r for r in doc["rows"]}
    assert by_name["C_SG(2)"]["numeric"] == pytest.approx(0.125, abs=1e-15)
    assert by_name["C_SG(2)"]["method"] == "closed_form"
    assert by_name["C_SG(2)"]["error_estimate"] == 0.0
    for row in doc["rows"]:
        if row["method"] == "closed_form":
            assert row["anchor"]


def test_constants_sphere_rows(capsys):
    code, out, _ = run_cli(["constants", "--case", "sphere"], capsys)
    assert code == 0
    doc = json.loads(out)
    by_name = {r["quantity"]: r for r in doc["rows"]}
    assert by_name["C_SG*"]["numeric"] == pytest.approx(8.0 * math.pi**2 / 5.0, rel=1e-15)
    assert by_name["C_TP*"]["numeric"] == pytest.approx(
        (2.0 - math.sqrt(2.0)) * 4.0 * math.pi**2, rel=1e-15
    )


def test_constants_empty_range(capsys):
    code, out, _ = run_cli(["constants", "--case", "paraboloid", "--dims", "4:1"], capsys)
    assert code == 0
    assert json.loads(out)["rows"] == []


def test_constants_csv_format(capsys):
    code, out, _ = run_cli(
        ["constants", "--case", "paraboloid", "--dims", "2:2", "--format", "csv"], capsys
    )
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0].startswith("quantity,")
    assert len(lines) == 4


def test_verify_quadrature_suite_passes(capsys):
    code, out, _ = run_cli(["verify", "quadrature"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert all(row["passed"] for row in doc["rows"])


def test_verify_failure_exit_code(capsys, monkeypatch):
    from strichartz_stab import verify as verify_mod

    failing = verify_mod.Check("specfun", "always fails", 1e-12, lambda: 1.0)
    monkeypatch.setitem(verify_mod.SUITES, "specfun", [failing])
    code, out, err = run_cli(["verify", "specfun"], capsys)
    assert code == 1
    assert "FAILED" in err


def test_usage_error_exit_code(capsys):
    code, _, err = run_cli(["sweep", "optimal_mu"], capsys)  # missing --grid
    assert code == 2
    assert "grid" in err


def test_unknown_subcommand_exit_code(capsys):
    assert cli.main(["bogus"]) == 2


def test_numeric_failure_exit_code(capsys, monkeypatch):
    def boom(*args, **kwargs):
        raise QuadratureError("synthetic failure")

    monkeypatch.setattr(cli.sp, "minimize_rayleigh_sphere", boom)
    code, _, err = run_cli(["minimize", "--budget", "5"], capsys)
    assert code == 3
    assert "numeric failure" in err


def test_sweep_optimal_mu(capsys):
    code, out, _ = run_cli(
        ["sweep", "optimal_mu", "--grid", "0.01,0.001", "--format", "csv"], capsys
    )
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "lam,mu_star,overlap,error_estimate,status"
    assert len(lines) == 3
    mu = float(lines[1].split(",")[1])
    assert mu == pytest.approx(0.98, abs=1e-3)


def test_sweep_rayleigh_epsilon_flags_window(capsys):
    code, out, _ = run_cli(["sweep", "rayleigh_epsilon", "--grid", "0.02,0.1"], capsys)
    assert code == 0
    rows = json.loads(out)["rows"]
    assert rows[0]["window"] == "inside"
    assert rows[1]["window"] == "fallback"
    assert all(r["status"] == "ok" for r in rows)


def test_sweep_continues_past_bad_point(capsys):
    # lam = 1 puts the two-peak function on the manifold: flagged, not fatal
    code, out, _ = run_cli(
        ["sweep", "two_peak_paraboloid", "--grid", "1.0,0.01"], capsys
    )
    assert code == 0
    rows = json.loads(out)["rows"]
    assert rows[0]["status"].startswith("failed")
    assert rows[1]["status"] == "ok"
    assert rows[1]["quotient"] == pytest.approx(0.2706, abs=5e-3)


def test_minimize_budget_one(capsys):
    code, out, _ = run_cli(
        ["minimize", "--basis-size", "6", "--seed-epsilon", "0.03", "--budget", "1"],
        capsys,
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["quotient"] == pytest.approx(15.73, abs=5e-3)
    assert doc["trace"][0]["evaluation"] == 1


def test_minimize_rejects_bad_seed(capsys):
    code, _, err = run_cli(["minimize", "--seed-epsilon", "0.2"], capsys)
    assert code == 2


def test_rerun_byte_identical(tmp_path):
    for args_base in (
        ["constants", "--case", "paraboloid", "--dims", "1:3"],
        ["constants", "--case", "sphere", "--format", "csv"],
        ["sweep", "optimal_mu", "--grid", "0.05,0.01"],
        ["verify", "specfun"],
        ["minimize", "--basis-size", "3", "--budget", "40"],
    ):
        f1 = tmp_path / "a.out"
        f2 = tmp_path / "b.out"
        assert cli.main(args_base + ["--out", str(f1)]) == 0
        assert cli.main(args_base + ["--out", str(f2)]) == 0
        assert f1.read_bytes() == f2.read_bytes()
        f1.unlink()
        f2.unlink()


def test_meta_time_flag(tmp_path):
    f1 = tmp_path / "t.json"
    assert cli.main(["constants", "--dims", "1:1", "--meta-time", "--out", str(f1)]) == 0
    doc = json.loads(f1.read_text())
    assert "generated_at" in doc["meta"]


def test_config_file_precedence(tmp_path, capsys, monkeypatch):
    cfg = tmp_path / "conf"
    cfg.write_text("format=csv\ndims=2:2\n")
    monkeypatch.setenv("STRICHARTZ_STAB_CONFIG", str(cfg))
    code, out, _ = run_cli(["constants", "--case", "paraboloid"], capsys)
    assert code == 0
    assert out.startswith("quantity,")  # format from config
    assert "C_SG(2)" in out and "C_SG(1)" not in out  # dims from config
    # explicit flag beats config
    code, out, _ = run_cli(
        ["constants", "--case", "paraboloid", "--format", "json", "--dims", "1:1"],
        capsys,
    )
    assert code == 0
    doc = json.loads(out)
    assert {r["quantity"] for r in doc["rows"]} == {
        "C_SG(1)", "C_TP(1)", "two_peak_margin(1)"
    }


def test_config_file_missing(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("STRICHARTZ_STAB_CONFIG", str(tmp_path / "nope"))
    code, _, err = run_cli(["constants"], capsys)
    assert code == 2
    assert "config" in err
