"""CLI: document parsing, round-trips, CSV shape, exit codes, verdict lines."""

import json
import math

import pytest

from slprime.cli import document_to_problem, problem_to_document, run
from slprime.errors import BadConfig

UNIT_DOC = {
    "interval": {"a": 0.0, "b": 1.0},
    "coefficients": {
        "s": {"breakpoints": [0.0, 1.0], "values": [1.0]},
        "q": {"breakpoints": [0.0, 1.0], "values": [0.0]},
        "r": {"breakpoints": [0.0, 1.0], "values": [1.0]},
    },
    "bc": {"alpha": 0.0, "beta": "pi"},
}

ATKINSON_DOC = {
    "interval": {"a": 0.0, "b": 2.0},
    "coefficients": {
        "s": {"breakpoints": [0.0, 1.0, 2.0], "values": [1.0, 0.0]},
        "q": {"breakpoints": [0.0, 1.0, 2.0], "values": [0.0, 0.0]},
        "r": {"breakpoints": [0.0, 1.0, 2.0], "values": [0.0, 1.0]},
    },
    "bc": {"alpha": 0.0, "beta": "pi/2"},
}


def write_doc(tmp_path, doc, name="prob.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def test_document_round_trip():
    prob, opts = document_to_problem(UNIT_DOC)
    doc2 = problem_to_document(prob, opts)
    prob2, opts2 = document_to_problem(doc2)
    assert prob2 == prob
    assert opts2 == opts
    assert problem_to_document(prob2, opts2) == doc2  # serialization idempotent
    assert doc2["bc"]["beta"] == math.pi  # "pi" parsed to the exact float


def test_document_rejects_unknown_and_missing_fields():
    bad = json.loads(json.dumps(UNIT_DOC))
    bad["extra"] = 1
    with pytest.raises(BadConfig) as err:
        document_to_problem(bad)
    assert "unknown field 'extra'" in str(err.value)

    bad = json.loads(json.dumps(UNIT_DOC))
    del bad["bc"]
    with pytest.raises(BadConfig) as err:
        document_to_problem(bad)
    assert "bc" in str(err.value)

    bad = json.loads(json.dumps(UNIT_DOC))
    bad["coefficients"]["s"]["values"] = [1.0, 2.0]
    with pytest.raises(BadConfig) as err:
        document_to_problem(bad)
    assert "coefficients.s" in str(err.value)


def test_document_angle_validation():
    bad = json.loads(json.dumps(UNIT_DOC))
    bad["bc"]["alpha"] = 3.5
    with pytest.raises(BadConfig) as err:
        document_to_problem(bad)
    assert "bc.alpha must lie in [0, π)" in str(err.value)

    bad["bc"]["alpha"] = "pi/3"
    with pytest.raises(BadConfig) as err:
        document_to_problem(bad)
    assert "'pi' and 'pi/2'" in str(err.value)

    bad = json.loads(json.dumps(UNIT_DOC))
    bad["bc"]["beta"] = 0.0
    with pytest.raises(BadConfig) as err:
        document_to_problem(bad)
    assert "bc.beta must lie in (0, π]" in str(err.value)


def test_spectrum_command_csv(tmp_path, capsys):
    cfg = write_doc(tmp_path, UNIT_DOC)
    out = tmp_path / "s.csv"
    code = run(["spectrum", "--config", cfg, "--n-max", "5", "--out", str(out)])
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0].startswith("# slprime 0.1.0 config_sha256=")
    assert len(lines[0].split("config_sha256=")[1]) == 64
    assert lines[1] == "n,lambda,oscillation,residual"
    assert len(lines) == 7
    lam_col = [float(ln.split(",")[1]) for ln in lines[2:]]
    for n, lam in enumerate(lam_col, start=1):
        assert lam == pytest.approx(n * n * math.pi**2, rel=1e-8)


def test_spectrum_truncation_is_exit_zero(tmp_path, capsys):
    cfg = write_doc(tmp_path, ATKINSON_DOC)
    code = run(["spectrum", "--config", cfg, "--n-max", "3"])
    captured = capsys.readouterr()
    assert code == 0
    assert "TRUNCATED at n = 2" in captured.out
    # the one real eigenvalue is printed before the note
    assert ",0," in captured.out or "1,0.9999999999" in captured.out


def test_validation_errors_exit_two(tmp_path, capsys):
    bad = json.loads(json.dumps(UNIT_DOC))
    bad["bc"]["alpha"] = 3.5
    cfg = write_doc(tmp_path, bad, "broken.json")
    code = run(["spectrum", "--config", cfg])
    captured = capsys.readouterr()
    assert code == 2
    assert "bc.alpha must lie in [0, π)" in captured.err

    code = run(["spectrum", "--config", str(tmp_path / "missing.json")])
    assert code == 2

    not_json = tmp_path / "nj.json"
    not_json.write_text("{broken")
    assert run(["spectrum", "--config", str(not_json)]) == 2


def test_unknown_command_exit_two(capsys):
    assert run(["bogus"]) == 2
    assert run([]) == 2


def test_incompat_verdict_last_line(tmp_path, capsys):
    cfg = write_doc(tmp_path, UNIT_DOC)
    out = tmp_path / "inc.csv"
    code = run(["incompat", "--config", cfg, "--n-max", "1000", "--out", str(out)])
    captured = capsys.readouterr()
    assert code == 0
    assert captured.out.strip().splitlines()[-1] == "VERDICT: PASS incompat"
    # below 100 rows the report refuses to judge
    code = run(["incompat", "--config", cfg, "--n-max", "60", "--out", str(out)])
    captured = capsys.readouterr()
    assert code == 0
    assert captured.out.strip().splitlines()[-1] == "VERDICT: INCONCLUSIVE incompat"


def test_incompat_fail_exit_three(tmp_path, capsys):
    # n_max = 120: the final ratio has not yet fallen below 1% of the first,
    # so the trend verdict is FAIL and the exit code must be 3
    cfg = write_doc(tmp_path, UNIT_DOC)
    code = run(["incompat", "--config", cfg, "--n-max", "120", "--out", str(tmp_path / "i.csv")])
    captured = capsys.readouterr()
    assert code == 3
    assert captured.out.strip().splitlines()[-1] == "VERDICT: FAIL incompat"


def test_growth_command(tmp_path, capsys):
    cfg = write_doc(tmp_path, UNIT_DOC)
    out = tmp_path / "g.csv"
    code = run(
        ["growth", "--config", cfg, "--lambda-re", "-100", "--x-samples", "6", "--out", str(out)]
    )
    captured = capsys.readouterr()
    assert code == 0
    assert "VERDICT: PASS growth" in captured.out
    assert out.read_text().splitlines()[1] == "x,measured,bound,slack"
    # |lambda| < 1 is a validation error
    assert run(["growth", "--config", cfg, "--lambda-re", "0.5"]) == 2


def test_order_command(tmp_path, capsys):
    cfg = write_doc(tmp_path, UNIT_DOC)
    code = run(["order", "--config", cfg, "--out", str(tmp_path / "o.csv")])
    captured = capsys.readouterr()
    assert code == 0
    assert "VERDICT: PASS order" in captured.out
    code = run(
        ["order", "--config", cfg, "--radii", "10,30,100", "--out", str(tmp_path / "o2.csv")]
    )
    captured = capsys.readouterr()
    assert code == 0
    assert "VERDICT: INCONCLUSIVE order" in captured.out


def test_series_command(tmp_path, capsys):
    code = run(["series", "--n-max", "1000000", "--out", str(tmp_path / "ser.csv")])
    captured = capsys.readouterr()
    assert code == 0
    assert captured.out.strip().splitlines()[-1] == "VERDICT: PASS series"
    # a short run cannot witness divergence: INCONCLUSIVE, still exit 0
    code = run(["series", "--n-max", "2000", "--out", str(tmp_path / "ser2.csv")])
    captured = capsys.readouterr()
    assert code == 0
    assert "VERDICT: INCONCLUSIVE series" in captured.out
    # epsilon outside (0, 1/2) is a validation error
    assert run(["series", "--epsilon", "0.9", "--n-max", "1000"]) == 2


def test_nonlinear_command(tmp_path, capsys):
    code = run(["nonlinear", "--n-max", "5", "--out", str(tmp_path / "nl.csv")])
    assert code == 0
    lines = (tmp_path / "nl.csv").read_text().splitlines()
    assert lines[1] == "n,mu,lambda,p_n,lambda_minus_p"
    first = lines[2].split(",")
    assert first[0] == "1" and first[2] == ""  # lambda absent below the branch minimum
    # a non-flat s is rejected for the nonlinear problem
    doc = json.loads(json.dumps(UNIT_DOC))
    doc["coefficients"]["s"]["values"] = [2.0]
    cfg = write_doc(tmp_path, doc)
    assert run(["nonlinear", "--config", cfg]) == 2


def test_primes_command(tmp_path):
    out = tmp_path / "p.csv"
    assert run(["primes", "--n-max", "100", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[1] == "n,p_n,n_log_n,cesaro,rel_err_pnt,rel_err_cesaro"
    rows = {int(ln.split(",")[0]): ln.split(",") for ln in lines[2:]}
    assert int(rows[100][1]) == 541
    assert rows[1][2] == ""  # n log n undefined at n = 1
    assert rows[2][3] == ""  # cesaro needs n >= 3


def test_invert_command_round_trip(tmp_path, capsys):
    cfg = tmp_path / "search.json"
    cfg.write_text(
        json.dumps({"pieces": 2, "bound": 60.0, "targets": 2, "seed": 4, "restarts": 1, "max_iters": 15})
    )
    out = tmp_path / "res.json"
    code = run(["invert", "--config", str(cfg), "--out", str(out)])
    assert code == 0
    payload = json.loads(out.read_text())
    assert payload["best_objective"] <= payload["baseline_objective"]
    assert len(payload["best_q"]["values"]) == 2
    assert len(payload["trace"]) == 1
    targets_csv = tmp_path / "res_targets.csv"
    lines = targets_csv.read_text().splitlines()
    assert lines[1] == "n,target_mu,achieved_mu,implied_lambda,p_n"
    assert len(lines) == 4
    # rerun is bit-identical on disk
    out2 = tmp_path / "res2.json"
    run(["invert", "--config", str(cfg), "--out", str(out2)])
    assert out2.read_text() == out.read_text().replace(str(out), str(out2)) or (
        json.loads(out2.read_text()) == payload
    )
    # unknown keys rejected
    cfg.write_text(json.dumps({"pieces": 2, "bogus": 1}))
    assert run(["invert", "--config", str(cfg), "--out", str(out)]) == 2


def test_help_exits_zero(capsys):
    assert run(["--help"]) == 0
    capsys.readouterr()
