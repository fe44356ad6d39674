from __future__ import annotations

import json

from antibrackets.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_koszul_numbers_plain(capsys):
    code, out, _ = run_cli(capsys, "koszul-numbers", "--max-n", "7")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].split() == ["n", "K_n", "n!*K_n"]
    assert lines[1].split() == ["1", "1", "1"]
    assert lines[7].split() == ["7", "-11/6", "-9240"]


def test_koszul_numbers_json(capsys):
    code, out, _ = run_cli(capsys, "koszul-numbers", "--max-n", "16",
                           "--format", "json")
    assert code == 0
    rows = json.loads(out)
    from math import factorial

    from antibrackets.rational import parse_rational, rat

    last = rows[-1]
    assert last["n"] == "16"
    assert last["n!*K_n"] == "41404329870413936025600"
    assert parse_rational(last["K_n"]) == rat(
        41404329870413936025600, factorial(16)
    )


def test_koszul_numbers_csv(capsys):
    code, out, _ = run_cli(capsys, "koszul-numbers", "--max-n", "2",
                           "--format", "csv")
    assert code == 0
    assert out.splitlines() == ["n,K_n,n!*K_n", "1,1,1", "2,-1/2,-1"]


def test_koszul_numbers_usage_error(capsys):
    code, _, err = run_cli(capsys, "koszul-numbers", "--max-n", "0")
    assert code == 2
    assert "max-n" in err


def test_coefficients_table(capsys):
    code, out, _ = run_cli(capsys, "coefficients", "--max-n", "5")
    assert code == 0
    lines = out.strip().splitlines()
    assert "1, 1" in lines[1]
    assert "4/9, 40/9, 40, 280, 1120" in lines[4]
    assert all("match" in line for line in lines[1:])


def test_coefficients_requires_n_at_least_two(capsys):
    code, _, err = run_cli(capsys, "coefficients", "--max-n", "1")
    assert code == 2
    assert err


def test_conjecture_json_report(capsys):
    code, out, _ = run_cli(capsys, "conjecture", "--max-n", "4",
                           "--format", "json")
    assert code == 0
    report = json.loads(out)
    assert [entry["n"] for entry in report] == [2, 3, 4]
    for entry in report:
        assert entry["match"] is True
        assert entry["positive"] is True
        assert entry["bn_zero"] is True
        assert entry["solved"] == entry["conjectured"]
    assert report[0]["solved"] == ["1/2", "1/2"]


def test_conjecture_deterministic_output(capsys):
    _, first, _ = run_cli(capsys, "conjecture", "--max-n", "5")
    _, second, _ = run_cli(capsys, "conjecture", "--max-n", "5")
    assert first == second


def test_verify_series_passes(capsys):
    code, out, _ = run_cli(capsys, "verify", "series")
    assert code == 0
    assert "checks passed" in out
    assert "FAIL" not in out


def test_verify_small_algebra_all_suites(capsys):
    code, out, _ = run_cli(
        capsys, "verify", "all",
        "--even", "1", "--odd", "1", "--degree", "3", "--max-n", "3",
    )
    assert code == 0
    assert "FAIL" not in out


def test_verify_empty_algebra_is_vacuous(capsys):
    code, out, _ = run_cli(
        capsys, "verify", "all",
        "--even", "0", "--odd", "0", "--degree", "1", "--max-n", "2",
    )
    assert code == 0
    assert "FAIL" not in out


def test_verify_json_output(capsys):
    code, out, _ = run_cli(
        capsys, "verify", "linf",
        "--even", "1", "--odd", "1", "--degree", "3", "--format", "json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["ok"] is True
    assert all(check["ok"] for check in payload["checks"])


def test_verify_noncommutative(capsys):
    code, out, _ = run_cli(
        capsys, "verify", "jacobi",
        "--even", "1", "--odd", "1", "--degree", "3", "--max-n", "3",
        "--noncommutative",
    )
    assert code == 0
    assert "FAIL" not in out


def test_unknown_subcommand_is_usage_error(capsys):
    assert main(["frobnicate"]) == 2


def test_bad_flag_returns_usage_error(capsys):
    assert main(["koszul-numbers", "--max-n", "not-a-number"]) == 2
