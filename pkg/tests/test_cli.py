import json
import subprocess
import sys

import pytest

from cmsbasis.cli import SCHEMA, main
from cmsbasis.multipoly import MultiPoly, VarSpace


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out.strip(), out.err


def test_superjack_text(capsys):
    assert run(capsys, "superjack", "--lambda", "1", "--n", "1", "--nt", "1") == (0, "x1 - (1/θ)·xt1", "")


def test_fpoly_negative_index_is_zero(capsys):
    code, out, _ = run(capsys, "fpoly", "--a", "-1", "--m", "1", "--mt", "0", "--n", "1", "--nt", "0")
    assert (code, out) == (0, "0")


def test_fpoly_oracle(capsys):
    code, out, _ = run(capsys, "fpoly", "--a", "2,1", "--m", "1", "--mt", "1", "--n", "1", "--nt", "1", "--oracle")
    assert code == 0 and out.endswith("agree")


def test_jack_json(capsys):
    code, out, _ = run(capsys, "jack", "--lambda", "2", "--n", "2", "--json")
    d = json.loads(out)
    assert code == 0 and d["schema"] == SCHEMA
    p = MultiPoly.from_json(VarSpace(2), d["polynomial"])
    assert len(p.terms) == 3


def test_theta_evaluation(capsys):
    code, out, _ = run(capsys, "jack", "--lambda", "2", "--n", "2", "--theta", "1")
    assert code == 0 and out == "x1^2 + x1·x2 + x2^2"


def test_eigenfunction_text(capsys):
    code, out, _ = run(capsys, "eigenfunction", "--spec", "hermite", "--lambda", "1,1",
                       "--n", "2", "--nt", "1", "--m", "2", "--mt", "1")
    assert code == 0 and out.startswith("eigenvalue:")


def test_verify_commands(capsys):
    assert run(capsys, "verify", "identity", "--kind", "DId", "--k", "2", "--n", "1", "--nt", "1",
               "--m", "1", "--mt", "1", "--deg", "3")[0] == 0
    assert run(capsys, "verify", "adjoint", "--spec", "laguerre", "--n", "1", "--nt", "1", "--deg", "2")[0] == 0
    assert run(capsys, "verify", "action", "--which", "D2", "--a", "1,1", "--n", "2", "--nt", "1",
               "--m", "1", "--mt", "1")[0] == 0
    assert run(capsys, "verify", "stanley", "--n", "2", "--m", "2", "--deg", "3")[0] == 0
    assert run(capsys, "check", "m-independence", "--lambda", "1,1,1", "--n", "2", "--nt", "1",
               "--m1", "2", "--mt1", "1", "--m2", "0", "--mt2", "1")[0] == 0


def test_identity_needs_index(capsys):
    code, _, err = run(capsys, "verify", "identity", "--kind", "EId", "--n", "1", "--m", "1")
    assert code == 2 and "needs --l" in err


def test_usage_errors(capsys):
    assert run(capsys, "nonsense")[0] == 2
    assert run(capsys, "jack", "--lambda", "2")[0] == 2
    assert run(capsys, "superjack", "--lambda", "1", "--n", "-1")[0] == 2
    assert run(capsys, "eigenfunction", "--lambda", "2,2", "--n", "1", "--nt", "1", "--m", "1")[0] == 2
    assert run(capsys, "eigenfunction", "--spec", "q9=1", "--lambda", "1")[0] == 2


def test_math_errors(capsys):
    code, _, err = run(capsys, "eigenfunction", "--spec", "a1=1", "--lambda", "1", "--n", "1", "--nt", "1",
                       "--m", "1", "--mt", "1")
    assert code == 1 and "degenerate eigenvalue ladder" in err
    code, _, err = run(capsys, "jack", "--lambda", "2", "--n", "2", "--theta", "-1")
    assert code == 1 and "pole" in err


def test_batch_is_deterministic(tmp_path, capsys):
    args = ["batch", "--deg", "2", "--n", "1", "--nt", "1", "--m", "1", "--mt", "1", "--spec", "laguerre"]
    assert run(capsys, *args, "--outdir", str(tmp_path / "a"))[0] == 0
    assert run(capsys, *args, "--outdir", str(tmp_path / "b"))[0] == 0
    for k in range(3):
        a = (tmp_path / "a" / f"table_deg{k}.json").read_bytes()
        assert a == (tmp_path / "b" / f"table_deg{k}.json").read_bytes()
        table = json.loads(a)
        assert table["schema"] == SCHEMA
        assert all(e["verification"]["residual"] == [] for e in table["entries"])


def test_output_file(tmp_path, capsys):
    target = tmp_path / "out.txt"
    assert run(capsys, "superschur", "--lambda", "1", "--n", "1", "--nt", "1", "--out", str(target))[0] == 0
    assert target.read_text().strip() == "x1 + xt1"


def test_cache_dir(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("CMS_CACHE_DIR", str(tmp_path))
    first = run(capsys, "superjack", "--lambda", "2", "--n", "1", "--nt", "1")
    assert len(list(tmp_path.iterdir())) == 1
    assert run(capsys, "superjack", "--lambda", "2", "--n", "1", "--nt", "1") == first


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "cmsbasis", "superjack", "--lambda", "1", "--n", "1", "--nt", "1"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip() == "x1 - (1/θ)·xt1"
