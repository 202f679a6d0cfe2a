from __future__ import annotations

import json
import subprocess
import sys

import pytest

from dosum.cli import EXIT_INVALID, EXIT_MISMATCH, EXIT_OK, EXIT_SKIPPED, PROFILES, main


def test_params_examples(capsys):
    assert main(["params", "3", "8", "1", "1"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "case_tag: DD" in out and "mu: 1" in out
    assert "t_distribution: ii" in out and "c2_weights: iii" in out
    assert main(["params", "3", "6", "1", "1"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "k_sixth: True" in out and "c1_weights: iv" in out and "c2_weights: n/a" in out


def test_invalid_params_exit_code(capsys):
    assert main(["params", "3", "4", "1", "1"]) == EXIT_INVALID
    assert "ExcludedK" in capsys.readouterr().err
    assert main(["tdist", "--p", "4", "--n", "3", "--k", "1"]) == EXIT_INVALID


def test_flags_and_positionals_agree(capsys):
    main(["params", "--p", "3", "--n", "5", "--k", "2"])
    a = capsys.readouterr().out
    main(["params", "3", "5", "2"])
    assert capsys.readouterr().out == a


def test_tdist_both(tmp_path):
    out = tmp_path / "t.json"
    assert main(["tdist", "3", "3", "1", "--method", "both", "--workers", "1", "--out", str(out)]) == EXIT_OK
    rep = json.loads(out.read_text())
    assert rep["schema"] == 1 and rep["status"] == "PASS" and rep["diff"] == []
    assert rep["modulus"] == [1, 0, 2, 1]


def test_weights_csv(tmp_path):
    out = tmp_path / "w.csv"
    rc = main(["weights", "3", "3", "1", "1", "--code", "c1", "--method", "both", "--format", "csv", "--out", str(out)])
    assert rc == EXIT_OK
    assert out.read_text().splitlines() == ["weight,count", "0,1", "12,156", "18,494", "24,78"]


def test_corr_both():
    assert main(["corr", "3", "5", "1", "--method", "both", "--workers", "1"]) == EXIT_OK


def test_sdist_oracle_vs_theorem():
    assert main(["sdist", "5", "3", "1", "--method", "both", "--workers", "1"]) == EXIT_OK


def test_skipped_exit_code(tmp_path):
    out = tmp_path / "skip.json"
    assert main(["weights", "3", "6", "1", "--code", "c2", "--method", "theorem", "--out", str(out)]) == EXIT_SKIPPED
    assert json.loads(out.read_text())["status"] == "SKIPPED"


def test_budget_skip(monkeypatch):
    monkeypatch.setenv("DOSUM_BUDGET", "1000")
    assert main(["weights", "3", "5", "1", "--code", "c2", "--method", "oracle"]) == EXIT_SKIPPED


def test_mismatch_exit_code(monkeypatch):
    import dosum.cli as cli
    from dosum.expsum import theorem_t_distribution

    def broken(P):
        t = theorem_t_distribution(P)
        t[next(iter(t))] += 1
        return t

    monkeypatch.setattr(cli, "theorem_t_distribution", broken)
    assert main(["tdist", "3", "3", "1", "--method", "both", "--workers", "1"]) == EXIT_MISMATCH


def test_output_identical_across_workers(tmp_path):
    paths = []
    for w in (1, 2):
        out = tmp_path / f"t{w}.csv"
        main(["tdist", "3", "5", "1", "--method", "fast", "--workers", str(w), "--format", "csv", "--out", str(out)])
        paths.append(out.read_bytes())
    assert paths[0] == paths[1]
    paths = []
    for w in (1, 2):
        out = tmp_path / f"w{w}.csv"
        main(["weights", "3", "5", "1", "--code", "c2", "--method", "fast", "--workers", str(w), "--format", "csv", "--out", str(out)])
        paths.append(out.read_bytes())
    assert paths[0] == paths[1]


def test_verify_smoke(tmp_path):
    out = tmp_path / "smoke.json"
    assert main(["verify", "smoke", "--workers", "1", "--out", str(out)]) == EXIT_OK
    rep = json.loads(out.read_text())
    assert rep["schema"] == 1 and rep["status"] == "PASS"
    statuses = {c["name"]: c["status"] for c in rep["runs"][0]["checks"]}
    assert "FAIL" not in statuses.values()
    assert statuses["t_distribution"] == "PASS" and statuses["congruence"] == "SKIPPED"
    assert rep["runs"][0]["modulus"] == [1, 0, 2, 1]
    assert "numpy" in rep["environment"]


def test_verify_profile_file(tmp_path):
    prof = tmp_path / "p.json"
    prof.write_text(json.dumps({"name": "tiny", "p": 5, "n": 3, "k": 1, "t": 1}))
    assert main(["verify", str(prof), "--workers", "1"]) == EXIT_OK


def test_unknown_profile():
    assert main(["verify", "no-such-profile"]) == EXIT_INVALID


def test_profiles_are_valid():
    from dosum.gf_core import derive_params

    for name, prof in PROFILES.items():
        for t in prof["t"]:
            derive_params(prof["p"], prof["n"], prof["k"], t)
        assert all(v > 0 for v in prof.get("samples", {}).values())


@pytest.mark.parametrize("argv", [["--version"], ["params", "3", "3", "1"]])
def test_module_entry_point(argv):
    r = subprocess.run([sys.executable, "-m", "dosum", *argv], capture_output=True, text=True)
    assert r.returncode == 0
