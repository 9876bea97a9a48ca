"""End-to-end command-line tests: exit codes, JSON/CSV/table output,
determinism, and error mapping."""

import json

import pytest

from liecoh.cli import main
from liecoh.gl2 import gl2_algebra
from liecoh.invalg import canonical_json


def run_json(capsys, argv):
    code = main(argv + ["--format", "json"])
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_field_info(capsys):
    code, env = run_json(capsys, ["field", "info", "--p", "3", "--r", "2"])
    assert code == 0
    assert env["op"] == "field_info"
    assert env["results"]["q"] == 9
    assert len(env["results"]["modulus"]) == 3
    assert env["pass"] is True


def test_invariants_run(tmp_path, capsys):
    spec = tmp_path / "alg.json"
    spec.write_text(canonical_json(gl2_algebra(3, 1).to_json_dict()))
    code, env = run_json(capsys, ["invariants", "run", "--spec", str(spec),
                                  "--max-degree", "4"])
    assert code == 0
    assert env["results"]["series"] == [1, 0, 0, 1, 1]

    code, env = run_json(capsys, ["invariants", "run", "--spec", str(spec),
                                  "--max-degree", "4", "--oracle"])
    assert code == 0
    assert env["results"]["oracle_match"] is True
    assert env["results"]["oracle_mismatch_degrees"] == []


def test_invariants_missing_file(capsys):
    code = main(["invariants", "run", "--spec", "/nonexistent.json",
                 "--max-degree", "2"])
    assert code == 2
    assert "error:" in capsys.readouterr().err


def test_check_quillen(capsys):
    code, env = run_json(capsys, ["check", "quillen", "--p", "3", "--r", "1"])
    assert code == 0
    assert env["results"]["pass"] is True


def test_check_exponent_exit_codes(capsys):
    code, env = run_json(capsys, ["check", "exponent", "--n", "3",
                                  "--p", "3", "--r", "1"])
    assert code == 0
    assert env["results"]["elements_checked"] == 27

    code, env = run_json(capsys, ["check", "exponent", "--n", "3",
                                  "--p", "2", "--r", "1"])
    assert code == 1
    assert env["results"]["witness_order"] == 4

    # enumeration guard: 5^10 unitriangular matrices is over the cap
    code = main(["check", "exponent", "--n", "5", "--p", "5", "--r", "1"])
    assert code == 3
    assert "resource guard" in capsys.readouterr().err


def test_check_regular(capsys):
    code, env = run_json(capsys, ["check", "regular", "--n", "3",
                                  "--p", "5", "--r", "2"])
    assert code == 0
    assert env["results"]["order"] == 25

    code = main(["check", "regular", "--n", "4", "--p", "3", "--r", "1"])
    assert code == 2


def test_gl2_landmarks(capsys):
    code, env = run_json(capsys, ["gl2", "landmarks", "--p", "3", "--r", "1"])
    assert code == 0
    assert env["results"]["first_positive_degree"] == 3
    assert env["pass"] is True

    code, env = run_json(capsys, ["sl2", "landmarks", "--p", "7", "--r", "1"])
    assert code == 0
    assert env["results"]["first_positive_degree"] == 5


def test_gl2_series_csv(capsys):
    argv = ["gl2", "series", "--p", "3", "--r", "1", "--max-degree", "4",
            "--format", "csv"]
    assert main(argv) == 0
    first = capsys.readouterr().out
    assert main(argv) == 0
    second = capsys.readouterr().out
    assert first == second
    lines = first.strip().splitlines()
    assert lines[0] == "degree,dim"
    assert lines[1] == "0,1"
    assert lines[4] == "3,1"


def test_csv_needs_series(capsys):
    code = main(["field", "info", "--p", "2", "--r", "1",
                 "--format", "csv"])
    assert code == 2
    assert "series" in capsys.readouterr().err


def test_rootsys_info(capsys):
    code, env = run_json(capsys, ["rootsys", "info", "--type", "G",
                                  "--rank", "2"])
    assert code == 0
    assert env["results"]["positive_roots"] == 6
    assert env["results"]["coxeter_numbers"] == [6]
    assert env["results"]["coweight_one_witness"] == [None]


def test_rootsys_bound(capsys):
    code, env = run_json(capsys, ["rootsys", "bound", "--type", "A",
                                  "--rank", "2", "--r", "2",
                                  "--lattice", "sc"])
    assert code == 0
    assert env["results"]["cofundamental_exponent"] == 3
    assert env["results"]["bound"]["str"] == "2/3"


def test_rootsys_divisibility_and_index(capsys):
    code, env = run_json(capsys, ["rootsys", "divisibility", "--type", "C",
                                  "--rank", "2", "--n", "2",
                                  "--lattice", "sc"])
    assert code == 0
    assert env["results"]["count_divisible"] == 2  # the two long roots

    code, env = run_json(capsys, ["rootsys", "action-index", "--type", "A",
                                  "--rank", "2", "--p", "3", "--r", "1"])
    assert code == 0
    assert env["results"]["distinct_indices"] == [1]


def test_rootsys_algebra(capsys):
    code, env = run_json(capsys, ["rootsys", "algebra", "--type", "A",
                                  "--rank", "2", "--p", "2", "--r", "2",
                                  "--max-degree", "2"])
    assert code == 0
    assert env["results"]["series"] == [1, 0, 3]


def test_grun_build(capsys):
    code, env = run_json(capsys, ["grun", "build", "--n", "4", "--p", "5",
                                  "--r", "1"])
    assert code == 0
    assert env["results"]["generator_count"] == 12
    assert env["results"]["max_elementary_rank"] == 4
    assert env["results"]["chern_coefficient"] == 1


def test_grun_detect_and_essential(capsys):
    code, env = run_json(capsys, ["grun", "detect", "--n", "3", "--p", "3",
                                  "--r", "1"])
    assert code == 0
    assert env["results"]["series"] == [1, 0, 0, 4]

    code, env = run_json(capsys, ["grun", "essential", "--n", "6",
                                  "--p", "5"])
    assert code == 0
    assert env["results"]["kernel_dim"] == 0

    code, env = run_json(capsys, ["grun", "essential", "--n", "3",
                                  "--p", "5"])
    assert code == 1
    assert env["results"]["discrepancy"] is True


def test_theorem_subcommands(capsys):
    code, env = run_json(capsys, ["theorem", "lowest-gl", "--n", "4",
                                  "--p", "2", "--r", "1"])
    assert code == 0
    assert env["results"]["dim"] == 0
    assert env["ingredients"]

    code, env = run_json(capsys, ["theorem", "borel2", "--n", "4",
                                  "--r", "2"])
    assert code == 0
    assert env["results"]["dim"] == 3
    statuses = {i["status"] for i in env["ingredients"]}
    assert statuses == {"computed", "cited"}


def test_verify_subset(tmp_path, capsys):
    grid = tmp_path / "grid.json"
    grid.write_text(json.dumps(["c09", "c14"]))
    code, env = run_json(capsys, ["verify", "all", "--grid", str(grid)])
    assert code == 0
    names = [c["criterion"] for c in env["results"]["criteria"]]
    assert names == ["c09", "c14"]

    code = main(["verify", "all", "--grid", str(grid), "--format", "table"])
    out = capsys.readouterr().out
    assert code == 0
    assert "c09  PASS" in out


def test_verify_subset_determinism(tmp_path, capsys):
    grid = tmp_path / "grid.json"
    grid.write_text(json.dumps(["c01", "c04", "c09", "c14"]))
    argv = ["verify", "all", "--grid", str(grid), "--format", "json"]
    assert main(argv) == 0
    first = capsys.readouterr().out
    assert main(argv) == 0
    assert capsys.readouterr().out == first


def test_out_file(tmp_path, capsys):
    out = tmp_path / "report.json"
    code = main(["gl2", "landmarks", "--p", "3", "--r", "1",
                 "--format", "json", "--out", str(out)])
    assert code == 0
    assert capsys.readouterr().out == ""
    env = json.loads(out.read_text())
    assert env["results"]["match"] is True


def test_bad_input_exit_two(capsys):
    assert main(["gl2", "landmarks", "--p", "4", "--r", "1"]) == 2
    assert main(["rootsys", "info", "--type", "H", "--rank", "2"]) == 2
    assert main(["grun", "essential", "--n", "4", "--p", "2"]) == 2


def test_missing_flag_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["gl2", "landmarks", "--p", "3"])
    assert exc.value.code == 2


def test_table_format(capsys):
    code = main(["gl2", "landmarks", "--p", "3", "--r", "1"])
    out = capsys.readouterr().out
    assert code == 0
    assert "first_positive_degree" in out
    assert "pass" in out
