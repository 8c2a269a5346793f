import json
import subprocess
import sys

import numpy as np
import pytest

from odereduce.serde import dump_json, parse_matrix

OSC = {"n": 2, "entries": [["0", "1"], ["-4", "0"]]}
IDENT2 = {"n": 2, "entries": [["1", "0"], ["0", "1"]]}
LB1 = {"n": 3, "entries": [["0", "1", "0"], ["0", "0", "1"], ["-1", "0", "0"]]}
NEG_LB1 = {"n": 3, "entries": [["0", "-1", "0"], ["0", "0", "-1"], ["1", "0", "0"]]}


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "odereduce.cli", *args], capture_output=True, text=True
    )


@pytest.fixture
def matrix_file(tmp_path):
    def write(payload, name="matrix.json"):
        path = tmp_path / name
        path.write_text(json.dumps(payload))
        return str(path)

    return write


class TestReduceCommand:
    def test_oscillator(self, matrix_file):
        r = run_cli("reduce", matrix_file(OSC))
        assert r.returncode == 0
        body = json.loads(r.stdout)
        assert body["a"] == ["4.0", "0.0"]

    def test_identity(self, matrix_file):
        r = run_cli("reduce", matrix_file(IDENT2))
        assert r.returncode == 0
        body = json.loads(r.stdout)
        assert float(body["a"][0]) == pytest.approx(1.0)
        assert float(body["a"][1]) == pytest.approx(-2.0)

    def test_one_by_one(self, matrix_file):
        r = run_cli("reduce", matrix_file({"n": 1, "entries": [["2.5"]]}))
        assert r.returncode == 0
        assert float(json.loads(r.stdout)["a"][0]) == pytest.approx(-2.5)

    def test_malformed_input_exit_2(self, matrix_file):
        r = run_cli("reduce", matrix_file({"n": 2, "entries": [["x", "1"], ["0", "1"]]}))
        assert r.returncode == 2
        assert "error" in r.stderr

    def test_missing_file_exit_2(self):
        r = run_cli("reduce", "/nonexistent/matrix.json")
        assert r.returncode == 2

    def test_out_flag_writes_file(self, matrix_file, tmp_path):
        out = tmp_path / "result.json"
        r = run_cli("--out", str(out), "reduce", matrix_file(OSC))
        assert r.returncode == 0
        assert json.loads(out.read_text())["a"][0] == "4.0"

    def test_byte_identical_reruns(self, matrix_file):
        path = matrix_file(OSC)
        a = run_cli("reduce", path)
        b = run_cli("reduce", path)
        assert a.stdout == b.stdout


class TestFracPowCommand:
    def test_alpha_one_eig_returns_input(self, matrix_file):
        r = run_cli("fracpow", matrix_file(OSC), "--alpha", "1", "--method", "eig")
        assert r.returncode == 0
        got = parse_matrix(json.loads(r.stdout)["matrix"])
        assert np.allclose(got, parse_matrix(OSC))

    def test_explicit2x2_display_values(self, matrix_file):
        # omega = 2, alpha = 1/2: 2^{-1/2} [[2 c, s], [-4 s, 2 c]] with c = s = 1/sqrt 2
        r = run_cli("fracpow", matrix_file(OSC), "--alpha", "0.5", "--method", "explicit2x2")
        assert r.returncode == 0
        got = parse_matrix(json.loads(r.stdout)["matrix"])
        expected = np.array([[1.0, 0.5], [-2.0, 1.0]])
        assert np.allclose(got, expected, atol=1e-12)

    def test_companion3_dual_method_oracle(self, matrix_file):
        # the eigendecomposition oracle for the real companion family goes
        # through the odd reflection: companion3(A) == -eig(-A)
        r1 = run_cli("fracpow", matrix_file(LB1), "--alpha", "0.5", "--method", "companion3")
        r2 = run_cli("fracpow", matrix_file(NEG_LB1, "neg.json"), "--alpha", "0.5", "--method", "eig")
        assert r1.returncode == 0 and r2.returncode == 0
        k = parse_matrix(json.loads(r1.stdout)["matrix"])
        eig_reflected = -parse_matrix(json.loads(r2.stdout)["matrix"])
        assert float(np.max(np.abs(k - eig_reflected))) <= 1e-8

    def test_method_shape_mismatch_exit_3(self, matrix_file):
        r = run_cli("fracpow", matrix_file(OSC), "--alpha", "0.5", "--method", "companion3")
        assert r.returncode == 3

    def test_integral_domain_exit_3(self, matrix_file):
        r = run_cli("fracpow", matrix_file(LB1), "--alpha", "0.5", "--method", "integral")
        assert r.returncode == 3

    def test_numerical_failure_exit_1(self, matrix_file):
        jordan = {"n": 2, "entries": [["1", "1"], ["0", "1"]]}
        r = run_cli("fracpow", matrix_file(jordan), "--alpha", "0.5", "--method", "eig")
        assert r.returncode == 1


class TestSimulateCommand:
    def test_compare_reduced_oscillator(self, matrix_file, tmp_path):
        csv_path = tmp_path / "traj.csv"
        r = run_cli(
            "simulate", matrix_file(OSC), "--forcing", "zero", "--compare-reduced",
            "--t1", "2.0", "--csv", str(csv_path),
        )
        assert r.returncode == 0
        summary = json.loads(r.stdout)
        assert summary["max_deviation"] <= 1e-6
        header = csv_path.read_text().splitlines()[0]
        assert header == "t,re(x1),im(x1),re(x2),im(x2)"

    def test_sin_x_forcing(self, matrix_file):
        r = run_cli(
            "simulate", matrix_file(OSC), "--forcing", "sin_x", "--compare-reduced",
            "--t1", "2.0",
        )
        assert r.returncode == 0
        assert json.loads(r.stdout)["max_deviation"] <= 1e-6

    def test_zero_step_exit_2(self, matrix_file):
        r = run_cli("simulate", matrix_file(OSC), "--step", "0")
        assert r.returncode == 2

    def test_unknown_forcing_exit_4(self, matrix_file):
        r = run_cli("simulate", matrix_file(OSC), "--forcing", "laplace")
        assert r.returncode == 4

    def test_blowup_exit_5(self, matrix_file):
        r = run_cli(
            "simulate", matrix_file({"n": 1, "entries": [["12"]]}),
            "--t1", "4.0", "--step", "0.01",
        )
        assert r.returncode == 5

    def test_x0_parsing(self, matrix_file):
        r = run_cli("simulate", matrix_file(OSC), "--x0", "0+1i,0", "--t1", "0.5")
        assert r.returncode == 0


class TestDemoCommand:
    def test_cascade_display_block(self, matrix_file):
        r = run_cli("demo", "cascade", "--r0", "1", "--v1", "1", "--v2", "2", "--v3", "3")
        assert r.returncode == 0
        report = json.loads(r.stdout)
        assert max(report["coefficient_errors"].values()) <= 1e-10
        assert report["char_poly_expected"]["xpp_coeff"] == pytest.approx(11.0 / 6.0)

    def test_oscillator_alpha_near_one(self):
        r = run_cli("demo", "oscillator", "--omega", "1", "--alpha", "0.999", "--t1", "1.0")
        assert r.returncode == 0
        report = json.loads(r.stdout)
        assert abs(report["derived"]["xp_coeff"]) <= 1e-2
        assert abs(report["derived"]["x_coeff"] - 1.0) <= 1e-2

    def test_thirdorder_k_identities(self):
        r = run_cli("demo", "thirdorder", "--beta", "1", "--alpha", "0.5", "--t1", "1.0")
        assert r.returncode == 0
        ks = json.loads(r.stdout)["k_identities"]
        for key in ("sum_minus_one", "quad0_residual", "signed_det_plus_one",
                    "circulant_det_minus_one"):
            assert abs(ks[key]) <= 1e-12

    def test_bad_flags_exit_2(self):
        r = run_cli("demo", "cascade", "--r0", "1", "--v1", "3", "--v2", "2", "--v3", "1")
        assert r.returncode == 2
        r = run_cli("demo", "oscillator", "--omega", "1")
        assert r.returncode == 2  # argparse: missing --alpha


class TestServerMode:
    def test_thin_client_round_trip(self, monkeypatch, tmp_path, capsys):
        # route the CLI through the HTTP app without opening a socket
        import httpx
        from fastapi.testclient import TestClient

        from odereduce import cli
        from odereduce.service import create_app

        test_client = TestClient(create_app())

        def fake_post(url, json=None, timeout=None):
            path = url.replace("http://testserver", "")
            return test_client.post(path, json=json)

        monkeypatch.setattr(httpx, "post", fake_post)
        path = tmp_path / "m.json"
        path.write_text(dump_json(OSC))
        rc = cli.main(["--server", "http://testserver", "reduce", str(path)])
        out = capsys.readouterr().out
        assert rc == 0
        assert json.loads(out)["a"][0] == "4.0"

    def test_server_error_code_propagates(self, monkeypatch, tmp_path, capsys):
        import httpx
        from fastapi.testclient import TestClient

        from odereduce import cli
        from odereduce.service import create_app

        test_client = TestClient(create_app())
        monkeypatch.setattr(
            httpx, "post",
            lambda url, json=None, timeout=None: test_client.post(
                url.replace("http://testserver", ""), json=json
            ),
        )
        path = tmp_path / "m.json"
        path.write_text(dump_json(OSC))
        rc = cli.main(
            ["--server", "http://testserver", "fracpow", str(path), "--alpha", "0.5",
             "--method", "companion3"]
        )
        assert rc == 3

    def test_local_and_server_outputs_identical(self, monkeypatch, tmp_path, capsys):
        import httpx
        from fastapi.testclient import TestClient

        from odereduce import cli
        from odereduce.service import create_app

        test_client = TestClient(create_app())
        monkeypatch.setattr(
            httpx, "post",
            lambda url, json=None, timeout=None: test_client.post(
                url.replace("http://testserver", ""), json=json
            ),
        )
        path = tmp_path / "m.json"
        path.write_text(dump_json(OSC))
        assert cli.main(["reduce", str(path)]) == 0
        local_out = capsys.readouterr().out
        assert cli.main(["--server", "http://testserver", "reduce", str(path)]) == 0
        server_out = capsys.readouterr().out
        assert local_out == server_out
