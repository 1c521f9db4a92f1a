import json
import subprocess
import sys

import numpy as np
import pytest

from qutritlab import cli, su3


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, (json.loads(out.out) if out.out else None), out.err


def test_schema_fields(capsys):
    code, doc, _ = run(capsys, "bounds", "--n-qutrits", "2")
    assert code == 0
    assert set(doc) == {"schema", "command", "config", "results", "residuals", "pass"}
    assert doc["schema"] == "qutritlab/1"
    assert doc["config"] == {"seed": 0, "samples": 100000, "tolerance": 1e-10, "out": None}


class TestVerifyAlgebra:
    def test_fresh_build(self, capsys):
        code, doc, _ = run(capsys, "verify-algebra")
        assert code == 0 and doc["pass"]
        assert all(r < 1e-12 for r in doc["residuals"].values())
        assert len(doc["results"]["orthogonality_pairs"]) == 81
        assert len(doc["results"]["genprod_pairs"]) == 64

    def test_corrupted_lambda8(self):
        lam = su3.build_basis()
        lam[8] = np.diag([1.0, 1.0, -1.0]) / np.sqrt(3)
        code, doc = cli.cmd_verify_algebra(cli.RunConfig(), lam)
        assert code == 1
        assert "orthogonality" in doc["results"]["failed"]
        assert not doc["pass"]


class TestIsotropic:
    def test_boundary(self, capsys):
        code, doc, _ = run(capsys, "isotropic", "--epsilon", "0.25")
        assert code == 0
        assert doc["results"]["verdict"] == "BOUNDARY" and doc["results"]["separable"]
        assert doc["results"]["threshold"] == 0.25
        assert doc["results"]["threshold_exact"] == {"exact": "1/4", "value": 0.25}

    def test_entangled(self, capsys):
        code, doc, _ = run(capsys, "isotropic", "--epsilon", "0.5")
        assert code == 0
        assert doc["results"]["verdict"] == "NONSEPARABLE"
        assert doc["results"]["witnesses"]["ppt_min_eig"] == pytest.approx(-1 / 9, abs=1e-12)

    def test_separable(self, capsys):
        code, doc, _ = run(capsys, "isotropic", "--epsilon", "0")
        assert code == 0 and doc["results"]["verdict"] == "SEPARABLE"
        assert len(doc["results"]["decomposition"]) == 13

    def test_range(self, capsys):
        code, doc, err = run(capsys, "isotropic", "--epsilon", "1.5")
        assert code == 2 and doc is None and "epsilon" in err


class TestBounds:
    @pytest.mark.parametrize(
        "n, lower, upper",
        [(2, "1/28", "1/4"), (4, "1/2188", "1/10"), (3, "1/244", None), (1, "1/4", None), (5, "1/19684", None)],
    )
    def test_thresholds(self, capsys, n, lower, upper):
        code, doc, _ = run(capsys, "bounds", "--n-qutrits", str(n))
        res = doc["results"]
        assert code == 0
        assert res["lower_threshold"]["exact"] == lower
        num, den = map(int, lower.split("/"))
        assert res["lower_threshold"]["value"] == num / den
        if upper is None:
            assert res["upper_threshold"] == "n/a (odd N)"
        else:
            assert res["upper_threshold"]["exact"] == upper
        assert res["w_lower_bound"] == pytest.approx(-((2 / (9 * np.pi**2)) ** n) * 3 ** (2 * n - 1))

    def test_range(self, capsys):
        assert run(capsys, "bounds", "--n-qutrits", "6")[0] == 2
        assert run(capsys, "bounds", "--n-qutrits", "0")[0] == 2


class TestMonteCarlo:
    def test_report(self, capsys):
        code, doc, _ = run(capsys, "montecarlo", "--samples", "20000", "--seed", "42")
        assert code == 0 and doc["pass"]
        assert doc["results"]["volume"]["quadrature"] == pytest.approx(9 * np.pi**2 / 2, rel=1e-2)
        assert np.array(doc["results"]["second_moments"]["mean"]).shape == (8, 8)

    def test_byte_identical(self, tmp_path):
        path = tmp_path / "r.json"
        blobs = []
        for _ in range(2):
            assert cli.main(["montecarlo", "--samples", "5000", "--seed", "42", "--out", str(path)]) == 0
            blobs.append(path.read_bytes())
        assert blobs[0] == blobs[1]

    def test_too_few_samples(self, capsys):
        assert run(capsys, "montecarlo", "--samples", "10")[0] == 2


class TestEnsembleCheck:
    def test_pass(self, capsys):
        code, doc, _ = run(capsys, "ensemble-check")
        assert code == 0
        assert doc["residuals"]["max_elementwise"] < 1e-13
        members = doc["results"]["members"]
        assert len(members) == 12
        assert all(m["weight"] == pytest.approx(1 / 12) for m in members)
        assert all(m["norm"] == pytest.approx(1.0) for m in members)
        assert members[2]["z"] == [0.0, 1.0]


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["no-such-command"])
    assert exc.value.code == 2
    assert cli.main(["isotropic", "--epsilon", "0.1", "--tol", "0"]) == 2


def test_module_entry_point(tmp_path):
    out = tmp_path / "o.json"
    proc = subprocess.run(
        [sys.executable, "-m", "qutritlab", "ensemble-check", "--out", str(out)], capture_output=True
    )
    assert proc.returncode == 0
    assert json.loads(out.read_text(encoding="utf-8"))["pass"] is True
