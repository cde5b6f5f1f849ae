import json
import subprocess
import sys

import pytest


def run_cli(*args, cwd=None):
    return subprocess.run(
        [sys.executable, "-m", "qhcalc.cli", *args],
        capture_output=True,
        text=True,
        cwd=cwd,
    )


@pytest.fixture
def workdir(tmp_path):
    (tmp_path / "cp2.json").write_text(json.dumps({"kind": "cpn", "n": 2, "field": "Q"}))
    (tmp_path / "g24.json").write_text(
        json.dumps({"kind": "grassmannian", "k": 2, "N": 4, "field": "Q"})
    )
    return tmp_path


def result_of(proc):
    assert proc.returncode == 0, proc.stderr
    return json.loads(proc.stdout)["result"]


class TestRing:
    def test_mul_cp2(self, workdir):
        proc = run_cli("ring", "mul", "--ring", "cp2.json", "--a", "u", "--b", "u^2",
                       cwd=workdir)
        assert result_of(proc) == "q"

    def test_power_char_two(self, workdir):
        proc = run_cli("ring", "power", "--ring", "g24.json", "--class", "s[1]",
                       "--d", "3", "--field", "Fp:2", cwd=workdir)
        assert result_of(proc) == "0"

    def test_basis(self, workdir):
        proc = run_cli("ring", "basis", "--ring", "g24.json", "--degree", "4",
                       cwd=workdir)
        assert result_of(proc) == ["s[1,1]", "s[2]"]

    def test_missing_file_is_usage_error(self, workdir):
        proc = run_cli("ring", "mul", "--ring", "nope.json", "--a", "u", "--b", "u",
                       cwd=workdir)
        assert proc.returncode == 64

    def test_bad_literal_is_usage_error(self, workdir):
        proc = run_cli("ring", "mul", "--ring", "cp2.json", "--a", "wat", "--b", "u",
                       cwd=workdir)
        assert proc.returncode == 64


class TestLadders:
    def test_search_round_trip(self, workdir):
        proc = run_cli("ladders", "search", "--ring", "cp2.json", "--ell-max", "3",
                       "--nu-max", "1", "--out", "decs.json", cwd=workdir)
        decs = result_of(proc)
        assert {"u0": "1", "factors": ["u", "u", "u"], "nu": 1} in decs
        (workdir / "dec.json").write_text(json.dumps(decs[0]))
        verify = run_cli("ladders", "verify", "--ring", "cp2.json", "--dec", "dec.json",
                         cwd=workdir)
        assert result_of(verify)["valid"] is True

    def test_build(self, workdir):
        (workdir / "dec.json").write_text(
            json.dumps({"u0": "1", "factors": ["u", "u", "u"], "nu": 1})
        )
        proc = run_cli("ladders", "build", "--ring", "cp2.json", "--dec", "dec.json",
                       cwd=workdir)
        assert result_of(proc)["hom_degrees"] == [4, 2, 0]

    def test_case2(self, workdir):
        proc = run_cli("ladders", "case2", "--ring", "g24.json", "--orbits", "6",
                       cwd=workdir)
        assert result_of(proc) == {"d": 25, "ell": 4}

    def test_invalid_dec_exit_two(self, workdir):
        (workdir / "dec.json").write_text(
            json.dumps({"u0": "1", "factors": ["u"], "nu": 1})
        )
        proc = run_cli("ladders", "verify", "--ring", "cp2.json", "--dec", "dec.json",
                       cwd=workdir)
        assert proc.returncode == 2


class TestSpectraAndModels:
    def test_models_cpn_verify(self, workdir):
        proc = run_cli("models", "cpn", "--lambdas", "0,1", "--verify", cwd=workdir)
        result = result_of(proc)
        assert result["common_value"] == "1/2"
        assert result["equal_augmented_actions"] is True

    def test_spectra_round_trip(self, workdir):
        orbit = {"id": "x0", "m": 0, "action": "1/2", "delta": "-2", "cz": None}
        (workdir / "orbit.json").write_text(json.dumps(orbit))
        proc = run_cli("spectra", "recap", "--orbit", "orbit.json", "--m", "1",
                       "--chern", "2", "--lam", "1/2", cwd=workdir)
        recapped = result_of(proc)
        assert recapped["action"] == "-1/2"
        assert recapped["delta"] == "-6"
        (workdir / "orbit2.json").write_text(json.dumps(recapped))
        aug1 = run_cli("spectra", "augmented", "--orbit", "orbit.json",
                       "--chern", "2", "--lam", "1/2", cwd=workdir)
        aug2 = run_cli("spectra", "augmented", "--orbit", "orbit2.json",
                       "--chern", "2", "--lam", "1/2", cwd=workdir)
        assert result_of(aug1) == result_of(aug2) == "1"

    def test_spectra_iterate(self, workdir):
        orbit = {"id": "x0", "m": 0, "action": "1/2", "delta": "2", "cz": None}
        (workdir / "orbit.json").write_text(json.dumps(orbit))
        proc = run_cli("spectra", "iterate", "--orbit", "orbit.json", "--k", "5",
                       cwd=workdir)
        assert result_of(proc)["action"] == "5/2"

    def test_deterministic_output(self, workdir):
        a = run_cli("models", "cpn", "--lambdas", "0,1,3", cwd=workdir)
        b = run_cli("models", "cpn", "--lambdas", "0,1,3", cwd=workdir)
        assert a.stdout == b.stdout


def scenario_payload(perturb=None):
    orbits = [
        {"id": "x0", "action": "0", "delta": "-1/4"},
        {"id": "x1", "action": "1/8", "delta": "1/4"},
    ]
    if perturb:
        orbits[0]["action"] = perturb
    return {
        "monotone": {"N": 2, "lambda": "1/2"},
        "n": 1,
        "orbits": orbits,
        "ladder": {
            "ring": {"kind": "cpn", "n": 1, "field": "Q"},
            "decomposition": {"u0": "1", "factors": ["u", "u"], "nu": 1},
        },
        "primes": [2, 3, 5, 7, 11, 13, 17, 19, 23],
    }


class TestCarriers:
    def test_verify_consistent(self, workdir):
        (workdir / "s.json").write_text(json.dumps(scenario_payload()))
        proc = run_cli("carriers", "verify", "--scenario", "s.json", cwd=workdir)
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["result"]["status"] == "consistent"

    def test_verify_contradiction_exit_two(self, workdir):
        (workdir / "s.json").write_text(json.dumps(scenario_payload(perturb="3/16")))
        proc = run_cli("carriers", "verify", "--scenario", "s.json", cwd=workdir)
        assert proc.returncode == 2

    def test_assignments(self, workdir):
        (workdir / "s.json").write_text(json.dumps(scenario_payload()))
        proc = run_cli("carriers", "assignments", "--scenario", "s.json", "--k", "3",
                       cwd=workdir)
        assignments = result_of(proc)
        assert assignments
        assert all(len(a["slots"]) == 2 for a in assignments)

    def test_negmon_contradiction(self, workdir):
        payload = {
            "monotone": {"N": 1, "lambda": "-1"},
            "n": 1,
            "orbits": [{"id": "x", "action": "1/3", "delta": "1/2"}],
            "primes": [2, 3, 5, 7, 11, 13],
        }
        (workdir / "s.json").write_text(json.dumps(payload))
        proc = run_cli("carriers", "negmon", "--scenario", "s.json", cwd=workdir)
        assert proc.returncode == 2

    def test_negmon_degenerate_inconclusive(self, workdir):
        payload = {
            "monotone": {"N": 1, "lambda": "-1"},
            "n": 1,
            "orbits": [{"id": "x", "action": "1/3", "delta": "0"}],
            "primes": [2, 3, 5, 7],
        }
        (workdir / "s.json").write_text(json.dumps(payload))
        proc = run_cli("carriers", "negmon", "--scenario", "s.json", cwd=workdir)
        assert proc.returncode == 3
