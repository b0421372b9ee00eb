"""Command-line contract: exit codes, canonical JSON, round trips."""

import json

import pytest

from pohst.cli import RunConfig, build_parser, main
from pohst.partition import build_good_partition, certificate_to_json


def run(capsys, argv):
    rc = main(argv)
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


def test_verify_text(capsys):
    rc, out, _ = run(capsys, ["verify", "--n", "4"])
    assert rc == 0
    assert "16 patterns verified, 0 failures" in out


def test_verify_json_is_byte_identical(capsys):
    rc1, out1, _ = run(capsys, ["verify", "--n", "5", "--format", "json"])
    rc2, out2, _ = run(capsys, ["verify", "--n", "5", "--format", "json"])
    assert rc1 == rc2 == 0
    assert out1 == out2
    payload = json.loads(out1)
    assert payload["ok"] is True and payload["patterns_checked"] == 32
    assert "wall_time" not in payload  # timing would break byte identity


def test_verify_csv(capsys):
    rc, out, _ = run(capsys, ["verify", "--n", "3", "--format", "csv"])
    assert rc == 0
    header, row = out.strip().splitlines()
    assert "patterns_checked" in header and "8" in row


def test_verify_out_file(capsys, tmp_path):
    target = tmp_path / "report.json"
    rc, out, _ = run(capsys, ["verify", "--n", "3", "--format", "json",
                              "--out", str(target)])
    assert rc == 0 and out == ""
    assert json.loads(target.read_text())["n"] == 3


def test_verify_rejects_bad_n(capsys):
    rc, _, err = run(capsys, ["verify", "--n", "0"])
    assert rc == 2 and "error:" in err


def test_certify_check_round_trip(capsys, tmp_path):
    cert = tmp_path / "cert.json"
    rc, _, _ = run(capsys, ["certify", "--pattern", "-,+", "--out", str(cert)])
    assert rc == 0
    assert cert.read_text() == certificate_to_json(build_good_partition((-1, 1)))
    rc, out, _ = run(capsys, ["check", str(cert)])
    assert rc == 0 and "valid" in out


def test_certify_stdout(capsys):
    rc, out, _ = run(capsys, ["certify", "--pattern", "-,-,+,-"])
    assert rc == 0
    assert out == certificate_to_json(build_good_partition((-1, -1, 1, -1)))


def test_certify_rejects_bad_pattern(capsys):
    rc, _, err = run(capsys, ["certify", "--pattern", "-,q"])
    assert rc == 2 and "tokens" in err


def test_check_rejects_mutated_certificate(capsys, tmp_path):
    cert = tmp_path / "cert.json"
    run(capsys, ["certify", "--pattern", "-,+", "--out", str(cert)])
    payload = json.loads(cert.read_text())
    payload["blocks"] = []  # drop the only block
    cert.write_text(json.dumps(payload))
    rc, out, _ = run(capsys, ["check", str(cert)])
    assert rc == 1 and "INVALID" in out


def test_check_rejects_malformed_json(capsys, tmp_path):
    cert = tmp_path / "broken.json"
    cert.write_text("{not json")
    rc, _, err = run(capsys, ["check", str(cert)])
    assert rc == 2 and "malformed" in err


def test_check_rejects_missing_file(capsys, tmp_path):
    rc, _, err = run(capsys, ["check", str(tmp_path / "nope.json")])
    assert rc == 2 and "cannot read" in err


def test_maximize_json(capsys):
    rc, out, _ = run(capsys, ["maximize", "--n", "3", "--format", "json"])
    assert rc == 0
    payload = json.loads(out)
    assert payload["bound"] == 4.0
    assert abs(payload["best_value"] - 4.0) <= 1e-6
    assert payload["ok"] is True


def test_maximize_text_shows_gap(capsys):
    rc, out, _ = run(capsys, ["maximize", "--n", "2"])
    assert rc == 0 and "bound 2" in out and "gap" in out


def test_maximize_rejects_bad_grid(capsys):
    rc, _, err = run(capsys, ["maximize", "--n", "2", "--grid-step", "0.3"])
    assert rc == 2 and "grid_step" in err


def test_sample(capsys):
    rc, out, _ = run(capsys, ["sample", "--n", "3", "--samples", "2000"])
    assert rc == 0 and "all dominated" in out and "seed 42" in out


def test_sample_json_is_deterministic(capsys):
    args = ["sample", "--n", "2", "--samples", "1000", "--format", "json"]
    rc1, out1, _ = run(capsys, args)
    rc2, out2, _ = run(capsys, args)
    assert rc1 == rc2 == 0 and out1 == out2
    assert json.loads(out1)["rng"] == "numpy-PCG64"


def test_bound_text(capsys):
    rc, out, _ = run(capsys, ["bound", "--m", "2", "--R", "1"])
    assert rc == 0
    assert "remak 3.38629436112" in out and "gain 0" in out


def test_bound_json(capsys):
    rc, out, _ = run(capsys, ["bound", "--m", "3", "--R", "1", "--format", "json"])
    assert rc == 0
    payload = json.loads(out)
    assert abs(payload["improvement"] - 1.9095425048844386) < 1e-12
    assert payload["hermite_source"] == "exact-table"


def test_bound_user_gamma(capsys):
    rc, out, _ = run(capsys, ["bound", "--m", "10", "--R", "1", "--gamma", "1.5",
                              "--format", "json"])
    assert rc == 0 and json.loads(out)["hermite_source"] == "user"


def test_bound_rejects_bad_inputs(capsys):
    assert run(capsys, ["bound", "--m", "1", "--R", "1"])[0] == 2
    assert run(capsys, ["bound", "--m", "2", "--R", "-1"])[0] == 2


def test_usage_errors(capsys):
    assert run(capsys, [])[0] == 2
    assert run(capsys, ["frobnicate"])[0] == 2
    assert run(capsys, ["verify"])[0] == 2


def test_help_exits_cleanly(capsys):
    assert run(capsys, ["--help"])[0] == 0


def test_run_config_from_args():
    parser = build_parser()
    args = parser.parse_args(["verify", "--n", "6", "--jobs", "2",
                              "--format", "json"])
    cfg = RunConfig.from_args(args)
    assert (cfg.command, cfg.n, cfg.jobs, cfg.format, cfg.out) == (
        "verify", 6, 2, "json", None)
