import json
import os
import subprocess
import sys
from dataclasses import replace

import pytest

from hopfpoly import cli, hopf
from hopfpoly import symbols as S
from hopfpoly.cli import RunConfig, compute_record, main, parse_partition
from hopfpoly.exactalg import RatFun
from hopfpoly.fixtures import I, table
from hopfpoly.hopf import InvariantRecord, antisym_at_tN
from hopfpoly.partitions import Partition

q, t, th = S.q, S.t, S.th


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def js(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    assert code == 0
    return json.loads(out)


# ---------------------------------------------------------------- parsing


def test_parse_partition():
    assert parse_partition("3,1,1") == Partition((3, 1, 1))
    assert parse_partition("") == Partition()
    assert parse_partition("-") == Partition()
    for bad in ("1,3", "2,0,1", "x", "2,-1"):
        with pytest.raises(cli.UsageError):
            parse_partition(bad)


@pytest.mark.parametrize("argv", [
    ["compute", "--lambda", "1,2", "--mu", ""],
    ["compute", "--lambda", "1", "--mu", "", "--at-tN", "a"],
    ["compute", "--lambda", "1", "--mu", "", "--at-tN", "3..1"],
    ["compute", "--lambda", "1", "--mu", "", "--coloring", "schur", "--qtilde", "q"],
    ["compute", "--lambda", "1"],
    ["verify", "--suite", "bogus"],
    ["table", "--fixture", "9,9"],
    ["torus", "--n", "0"],
    ["frobnicate"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


# ---------------------------------------------------------------- compute


def test_compute_single_box(capsys):
    data = js(capsys, "compute", "--lambda", "1", "--mu", "", "--at-tN", "3")
    val = RatFun.from_json(data["at_tN"][0]["value"])
    assert -th * val == t * I(3)
    assert data["cross_check"] == {"bound": 4, "performed": True, "agree": True}


def test_compute_trivial(capsys):
    data = js(capsys, "compute", "--lambda", "", "--mu", "")
    assert data["text"] == "1"


def test_compute_negative_term(capsys):
    code, out, _ = run(capsys, "compute", "--lambda", "3", "--mu", "", "--at-tN", "2", "--coloring", "schur")
    assert code == 0
    assert "negative terms of (-1)^3 Z: q^2*t^(3/2)" in out
    data = js(capsys, "compute", "--lambda", "3", "--mu", "", "--at-tN", "2", "--coloring", "schur")
    signed = -RatFun.from_json(data["at_tN"][0]["value"]) * th**3
    assert signed.coeff("qh", 4) == t**5 - t**3
    assert data["flags"]["positivity"] is False


def test_compute_qtilde_q_is_positive(capsys):
    data = js(capsys, "compute", "--lambda", "3", "--mu", "", "--at-tN", "0..3", "--qtilde", "q")
    assert data["substitutions"] == {"qtilde": "q"}
    assert data["flags"]["positivity"] is True
    assert all(not e["negative_terms"] for e in data["at_tN"])


def test_compute_sum_method_for_general_shapes(capsys):
    data = js(capsys, "compute", "--lambda", "2", "--mu", "2")
    assert data["method"] == "sum"
    assert data["guard"]["order"] == 6


@pytest.mark.parametrize("lam,mu", [("2,1", "1,1"), ("1,1", "1"), ("2", "1"), ("2", "2")])
def test_json_round_trip(capsys, lam, mu):
    data = js(capsys, "compute", "--lambda", lam, "--mu", mu, "--at-tN", "0..2")
    cfg = RunConfig("compute", (parse_partition(lam),), (parse_partition(mu),), (0, 1, 2))
    rec, _ = compute_record(cfg)
    assert InvariantRecord.from_json(data) == rec
    assert InvariantRecord.from_json(json.loads(json.dumps(rec.to_json()))) == rec


def test_method_mismatch_exits_1(capsys, monkeypatch):
    real = cli.closed_lambda_antisym

    def wrong(lam, s, coloring):
        rec = real(lam, s, coloring)
        return replace(rec, value=rec.value + S.Q)

    monkeypatch.setattr(cli, "closed_lambda_antisym", wrong)
    code, out, _ = run(capsys, "compute", "--lambda", "2", "--mu", "1")
    assert code == 1
    assert "DISAGREE" in out and "difference (method - sum): Q" in out


def test_internal_assertion_exits_3(capsys, monkeypatch):
    def boom(*a, **k):
        raise ArithmeticError("inexact Laurent division")

    monkeypatch.setattr(cli, "z_inst", boom)
    code, _, err = run(capsys, "compute", "--lambda", "2", "--mu", "2")
    assert code == 3 and "inexact" in err


def test_guard_failure_exits_1(capsys, monkeypatch):
    def bad(*a, **k):
        raise hopf.HopfError("nonzero Q^7 coefficient")

    monkeypatch.setattr(cli, "z_inst", bad)
    code, _, _ = run(capsys, "compute", "--lambda", "2", "--mu", "2")
    assert code == 1


def test_bold_output(capsys):
    data = js(capsys, "compute", "--lambda", "1", "--mu", "", "--bold")
    bold = RatFun.from_json(data["bold"]["value"])
    assert bold == hopf.to_bold(RatFun.from_json(data["value"]))
    assert bold.occurs("a") and not bold.occurs("Q")


def test_latex_output(capsys):
    code, out, _ = run(capsys, "compute", "--lambda", "1", "--mu", "1", "--format", "latex", "--qtilde", "zero")
    assert code == 0 and out.startswith("Z^{\\rm inst}_{(1),(1)} &=")


def test_output_file(capsys, tmp_path):
    path = tmp_path / "out.json"
    code, out, _ = run(capsys, "compute", "--lambda", "1", "--mu", "1", "--format", "json", "--output", str(path))
    assert code == 0 and out == ""
    assert json.loads(path.read_text())["lambda"] == [1]


def test_byte_deterministic(capsys):
    argv = ["compute", "--lambda", "2,1", "--mu", "1", "--at-tN", "0..3", "--format", "json"]
    _, a, _ = run(capsys, *argv)
    hopf.z_inst.cache_clear()
    _, b, _ = run(capsys, *argv)
    assert a == b


# ---------------------------------------------------------------- verify


def test_verify_pass(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "conj34", "--max-size", "5")
    assert code == 0 and out.splitlines()[-1] == "conj34: pass"


def test_verify_failure_exit_1(capsys, monkeypatch):
    from hopfpoly import verify

    monkeypatch.setattr(verify, "_conj49", lambda d: (d != 2, "forced"))
    code, out, _ = run(capsys, "verify", "--suite", "conj49", "--max-size", "3")
    assert code == 1
    assert "FAIL [conj49] U Gamma U^-1, d=2: forced" in out
    code, out, _ = run(capsys, "verify", "--suite", "conj49", "--max-size", "3", "--format", "json")
    assert code == 1 and json.loads(out)["failures"] == ["U Gamma U^-1, d=2"]


def test_verify_orthogonality(capsys):
    code, _, _ = run(capsys, "verify", "--suite", "orthogonality", "--max-size", "4")
    assert code == 0


# ---------------------------------------------------------------- table


def test_table_antisymmetric_grid(capsys):
    cols = "1;1,1"
    rows = js(capsys, "table", "--lambda", f";{cols}", "--mu", f";{cols}", "--at-tN", "0..3", "--max-size", "4")
    assert len(rows) == 9
    for row in rows:
        r, s = len(row["lambda"]), len(row["mu"])
        for e in row["at_tN"]:
            assert RatFun.from_json(e["value"]) == antisym_at_tN(r, s, e["N"])


def test_table_matches_two_box_matrices(capsys):
    rows = js(capsys, "table", "--lambda", "2;1,1", "--mu", ";1", "--at-tN", "0..3", "--max-size", "3")
    for row in rows:
        name = f"2,{len(row['mu'])}"
        key = (Partition(row["lambda"]), Partition(row["mu"]))
        for e in row["at_tN"]:
            assert RatFun.from_json(e["value"]) == table(name).expected(e["N"])[key]


def test_table_binomial_basis_text(capsys):
    code, out, _ = run(capsys, "table", "--lambda", "1", "--mu", "", "--max-size", "1")
    assert code == 0 and out == "(1) (): Z(t^N) = (-t^(1/2)) [N,1]\n"


def test_empty_grid(capsys):
    code, out, _ = run(capsys, "table", "--lambda", "2", "--mu", "1", "--max-size", "1")
    assert code == 0 and out == ""
    assert js(capsys, "table", "--lambda", "2", "--mu", "1", "--max-size", "1") == []


def test_table_latex(capsys):
    code, out, _ = run(capsys, "table", "--lambda", "1", "--mu", "", "--max-size", "1", "--format", "latex")
    assert code == 0 and "\\binom{N}{1}_t" in out


def test_table_fixture(capsys):
    code, out, _ = run(capsys, "table", "--fixture", "2,1", "--at-tN", "0..2")
    assert code == 0 and out.startswith("fixture 2,1: exact as tabulated")
    data = js(capsys, "table", "--fixture", "1,1")
    assert not data["exact_as_tabulated"] and data["exact_after_correction"]
    assert data["erratum"]


# ---------------------------------------------------------------- ztilde, torus


def test_ztilde(capsys):
    data = js(capsys, "ztilde", "--lambda", "3")
    assert data["text"] == "1" and data["vanishes_at"] == ["t^0", "t^1", "t^2"]
    rows = js(capsys, "ztilde", "--lambda", "3;2,1")
    assert [r["lambda"] for r in rows] == [[3], [2, 1]]


def test_torus(capsys):
    rows = js(capsys, "torus", "--n", "1..3")
    assert [r["n"] for r in rows] == [1, 2, 3]
    assert RatFun.from_json(rows[1]["value"]) == (1 - t * S.Q) / (1 - t)


# ---------------------------------------------------------------- entry points


def test_module_entry_point_and_threads():
    env = dict(os.environ)
    outs = []
    for threads in ("1", "4"):
        env["HOPFPOLY_THREADS"] = threads
        res = subprocess.run(
            [sys.executable, "-m", "hopfpoly", "verify", "--suite", "conj34", "--max-size", "4", "--format", "json"],
            capture_output=True, text=True, env=env, check=False,
        )
        assert res.returncode == 0, res.stderr
        outs.append(res.stdout)
    assert outs[0] == outs[1]
