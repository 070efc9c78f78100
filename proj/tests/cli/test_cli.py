#!/usr/bin/env python3
"""Behavioural checks of the ma1est command line: schemas, exit codes, the
simulate -> estimate round trip, and determinism of file output."""

import json
import math
import subprocess
import sys
import tempfile
from pathlib import Path

BIN = sys.argv[1] if len(sys.argv) > 1 else "ma1est"
FAILURES = []


def run(*args, expect=0):
    proc = subprocess.run([BIN, *args], capture_output=True, text=True)
    if proc.returncode != expect:
        raise AssertionError(
            f"{args}: exit {proc.returncode}, expected {expect}\n"
            f"stdout: {proc.stdout}\nstderr: {proc.stderr}"
        )
    return proc


def check(name, fn):
    try:
        fn()
        print(f"[PASS] cli: {name}")
    except Exception as exc:  # noqa: BLE001
        print(f"[FAIL] cli: {name}: {exc}")
        FAILURES.append(name)


def main():
    tmp = Path(tempfile.mkdtemp(prefix="ma1est_cli_"))

    def simulate_deterministic():
        a, b = tmp / "a.csv", tmp / "b.csv"
        run("simulate", "--alpha", "0", "--n", "5", "--seed", "7", "--out", str(a))
        run("simulate", "--alpha", "0", "--n", "5", "--seed", "7", "--out", str(b))
        assert a.read_bytes() == b.read_bytes(), "same seed must give identical files"
        lines = a.read_text().splitlines()
        assert lines[0] == "i,u,eps_true", f"bad header: {lines[0]}"
        assert len(lines) == 6

    def roundtrip_all_pairs():
        for dist in ("normal", "student_t:9", "logistic"):
            for psi in ("cdf_centered", "huber:1.345", "identity"):
                data = tmp / f"rt_{dist.replace(':', '_')}_{psi.replace(':', '_')}.csv"
                run("simulate", "--alpha", "0.5", "--n", "2000", "--dist", dist,
                    "--seed", "11", "--out", str(data))
                proc = run("estimate", "--in", str(data), "--psi", psi,
                           "--dist", dist)
                result = json.loads(proc.stdout)
                assert result["solver_status"] == "converged", result
                assert abs(result["alpha_hat"] - 0.5) < 0.15, result["alpha_hat"]

    def estimate_normal_interval():
        data = tmp / "est.csv"
        run("simulate", "--alpha", "0.5", "--n", "2000", "--seed", "3",
            "--out", str(data))
        proc = run("estimate", "--in", str(data), "--psi", "cdf_centered",
                   "--dist", "normal")
        result = json.loads(proc.stdout)
        assert 0.4 < result["alpha_hat"] < 0.6, result["alpha_hat"]
        assert result["ci"][0] < result["alpha_hat"] < result["ci"][1]
        assert not result["variance_is_plugin"]
        # plug-in path without --dist
        proc2 = run("estimate", "--in", str(data), "--psi", "cdf_centered")
        assert json.loads(proc2.stdout)["variance_is_plugin"]

    def variance_values():
        proc = run("variance", "--alpha", "0", "--dist", "normal",
                   "--psi", "cdf_centered")
        out = json.loads(proc.stdout)
        assert math.isclose(out["sigma2_psi"], math.pi / 3, abs_tol=1e-6), out
        assert math.isclose(out["lambda"], -0.2820947917738781, abs_tol=1e-6), out

    def conditions_report():
        proc = run("conditions", "--dist", "normal", "--psi", "identity")
        out = json.loads(proc.stdout)
        assert out["psi_variation_finite"] is False
        assert out["required_pass"] is False
        proc2 = run("conditions", "--dist", "normal", "--psi", "cdf_centered")
        assert json.loads(proc2.stdout)["required_pass"] is True

    def mc_study_files():
        config = tmp / "study.json"
        config.write_text(json.dumps({
            "study_kind": "normality", "alpha": 0.3, "n": 300,
            "replications": 20, "dist": "normal", "psi": "cdf_centered",
            "base_seed": 90,
        }))
        out_json, out_csv = tmp / "agg.json", tmp / "records.csv"
        run("mc", "--config", str(config), "--out-json", str(out_json),
            "--out-csv", str(out_csv), "--threads", "2")
        agg = json.loads(out_json.read_text())
        assert agg["aggregates"][0]["replications"] == 20
        lines = out_csv.read_text().splitlines()
        assert lines[0] == "rep,seed,alpha_hat,z,status", lines[0]
        assert len(lines) == 21

    def ep_check_files():
        prefix = tmp / "ep"
        proc = run("ep-check", "--alpha", "0.5", "--n", "300", "--reps", "2",
                   "--seed", "5", "--tau-points", "5", "--x-points", "21",
                   "--out", str(prefix))
        summary = json.loads(proc.stdout)
        assert summary["median_sup_residual"] > 0
        for r in range(2):
            lines = (tmp / f"ep_rep{r}.csv").read_text().splitlines()
            assert lines[0] == "n,tau,x,empirical,drift,residual", lines[0]
            assert len(lines) == 1 + 5 * 21

    def exit_codes():
        run("frobnicate", expect=1)                      # unknown subcommand
        run("simulate", "--alpha", "0", "--bogus", "1", expect=1)  # unknown flag
        run("simulate", "--alpha", "1.5", "--n", "5", "--seed", "1", expect=1)
        run("estimate", "--in", str(tmp / "missing.csv"), expect=1)
        bad = tmp / "bad.csv"
        bad.write_text("u\n0.5\nnot_a_number\n")
        proc = subprocess.run([BIN, "estimate", "--in", str(bad)],
                              capture_output=True, text=True)
        assert proc.returncode == 1
        assert "line 3" in proc.stderr, proc.stderr
        # numerical failure: root far outside a narrow scan window
        data = tmp / "hard.csv"
        run("simulate", "--alpha", "0.8", "--n", "2000", "--seed", "2",
            "--out", str(data))
        run("estimate", "--in", str(data), "--psi", "cdf_centered",
            "--scan-bound", "0.3", expect=2)
        # a study whose replications mostly fail aborts with the same code
        bad_study = tmp / "abort.json"
        bad_study.write_text(json.dumps({
            "study_kind": "normality", "alpha": 0.6, "n": 400,
            "replications": 10, "base_seed": 1,
            "solver": {"scan_bound": 0.2},
        }))
        run("mc", "--config", str(bad_study), expect=2)

    def help_is_usage_zero():
        run("--help", expect=0)

    check("simulate is deterministic with the pinned schema", simulate_deterministic)
    check("simulate->estimate round trip for continuous scores", roundtrip_all_pairs)
    check("estimate interval brackets the truth", estimate_normal_interval)
    check("variance prints the analytic values", variance_values)
    check("conditions reports pass/fail per requirement", conditions_report)
    check("mc writes aggregates JSON and records CSV", mc_study_files)
    check("ep-check writes one CSV per replication", ep_check_files)
    check("exit codes: 1 usage, 2 numerical", exit_codes)
    check("--help exits zero", help_is_usage_zero)

    if FAILURES:
        print(f"{len(FAILURES)} cli check(s) failed")
        return 1
    print("all cli checks passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
