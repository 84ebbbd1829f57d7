import json

import pytest

from forestlie import cli, polynomial


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_coeff_worked_example(capsys):
    code, out, _ = run(capsys, "coeff", "--p", "0,1,0,1,3,0,1")
    assert code == 0
    assert "0 1 1 2 2 0 1 1" in out
    assert "C_P = 72" in out


def test_coeff_json(capsys):
    code, out, _ = run(capsys, "coeff", "--p", "0,0,2,1,1", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data == {"p": [0, 0, 2, 1, 1], "deficits": [0, 1, 2, 1, 1, 1], "c": 45}


def test_dyck_coeff_listing(capsys):
    code, out, _ = run(capsys, "dyck", "--k", "2", "--coeffs")
    assert code == 0
    assert out.split() == "(00) 1 (01) 3 (02) 2 (10) 2 (11) 4".split()


def test_dyck_csv(capsys):
    code, out, _ = run(capsys, "dyck", "--k", "1", "--coeffs", "--format", "csv")
    assert code == 0
    assert out.splitlines() == ["p,c", "0,1", "1,2"]


def test_clambda(capsys):
    code, out, _ = run(capsys, "clambda", "--lambda", "1,2")
    assert code == 0 and out.strip() == "2"


def test_pullback(capsys):
    code, out, _ = run(capsys, "pullback", "--k", "4")
    assert code == 0
    assert "total = 15, bell(4) = 15, ok" in out
    code, out, _ = run(capsys, "pullback", "--k", "3", "--format", "json")
    data = json.loads(out)
    assert data["ok"] is True and data["total"] == 5


def test_sigma_check(capsys):
    code, out, _ = run(capsys, "sigma", "--k", "0", "--check")
    assert code == 0
    assert out.splitlines()[0] == "1"
    code, out, _ = run(capsys, "sigma", "--k", "2", "--check", "--format", "json")
    data = json.loads(out)
    assert data["check"]["equal"] is True
    assert {"b": 0, "p": [0, 2], "c": 2} in data["terms"]


def test_sigma_failure_reports_witness(capsys, monkeypatch):
    wrong = polynomial.sigma_formula(2)
    wrong.add_term(1, 0, (1, 1))
    monkeypatch.setattr(polynomial, "sigma_formula", lambda k: wrong)
    code, out, err = run(capsys, "sigma", "--k", "2", "--check")
    assert code == 1
    assert "first differing term" in err


def test_sigma_guardrail(capsys):
    code, _, err = run(capsys, "sigma", "--k", "10", "--check")
    assert code == 2
    assert "--force" in err


def test_lie_check(capsys):
    code, out, _ = run(capsys, "lie", "--k", "2", "--check")
    assert code == 0
    assert "6 terms" in out and "oracle agrees" in out


def test_lie_json_terms(capsys):
    code, out, _ = run(capsys, "lie", "--k", "1", "--format", "json")
    data = json.loads(out)
    assert data["terms"] == [{"key": "(1) (∘)", "sign": -1}, {"key": "(∘ (1))", "sign": 1}]


def test_ascii_rendering(capsys):
    code, out, _ = run(capsys, "lie", "--k", "1", "--ascii")
    assert code == 0
    assert "∘" not in out and "(o (1))" in out


def test_estimate(capsys):
    code, out, _ = run(capsys, "estimate", "--k", "1", "--h", "1")
    assert code == 0
    assert len(out.splitlines()) == 5  # header + 4 rows
    code, out, _ = run(capsys, "estimate", "--k", "2", "--h", "0", "--format", "csv")
    rows = out.splitlines()
    assert rows[0] == "p,h,coeff,a_order,xi_orders"
    assert [r.split(",")[2] for r in rows[1:]] == ["1", "3", "2", "2", "4"]


def test_verify_passes(capsys):
    code, out, _ = run(capsys, "verify", "--all", "--max-k", "3")
    assert code == 0
    assert out.splitlines()[-1].startswith("pass:")


def test_verify_json_report(capsys):
    code, out, _ = run(capsys, "verify", "--all", "--max-k", "2", "--format", "json")
    data = json.loads(out)
    assert data["command"] == "verify" and data["status"] == "pass"
    assert all(c["ok"] for c in data["checks"])
    assert isinstance(data["elapsed_ms"], int)


def test_verify_parallel_matches_serial(capsys):
    code1, out1, _ = run(capsys, "verify", "--all", "--max-k", "2", "--format", "csv")
    code2, out2, _ = run(capsys, "verify", "--all", "--max-k", "2", "--format", "csv", "--jobs", "2")
    assert code1 == code2 == 0
    assert out1 == out2


def test_verify_failure_exit_code(capsys, monkeypatch):
    monkeypatch.setitem(cli._CHECKS_BY_NAME, "dyck_tables",
                        lambda max_k: [{"name": "dyck_tables", "expected": "1", "actual": "2", "ok": False}])
    code, out, err = run(capsys, "verify", "--all", "--max-k", "1")
    assert code == 1
    assert "first witness" in err


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["dyck"])  # missing --k
    assert exc.value.code == 2
    code, _, err = run(capsys, "coeff", "--p", "2,0")
    assert code == 2
    assert "not a Dyck vector" in err


def test_jobs_env_default(capsys, monkeypatch):
    monkeypatch.setenv("FORESTLIE_JOBS", "2")
    code, out, _ = run(capsys, "verify", "--max-k", "1")
    assert code == 0
