import json

import pytest

from cdclab import codefile
from cdclab.cli import main
from cdclab.constructions import line_spread
from cdclab.gf import field_make
from cdclab.matrix import matrix_from_rows
from cdclab.subspace import make_code, subspace_from_matrix

F2 = field_make(2)


def test_roundtrip_identity(tmp_path):
    code = line_spread(2, 6)
    path = tmp_path / "spread.json"
    codefile.save_code(code, str(path))
    text1 = path.read_text()
    loaded = codefile.load_code(str(path))
    assert loaded.codewords == code.codewords
    assert (loaded.v, loaded.k, loaded.d) == (code.v, code.k, code.d)
    codefile.save_code(loaded, str(path))
    assert path.read_text() == text1  # byte-stable round trip


def test_bq_annotation_survives(tmp_path):
    from cdclab.constructions import bq_prop_asym

    code = bq_prop_asym(2, 6, 3, 4, 3)
    path = tmp_path / "bq.json"
    codefile.save_code(code, str(path))
    assert codefile.load_code(str(path)).bq_v2 == 3


def test_loader_rejects_non_rref(tmp_path):
    code = line_spread(2, 4)
    obj = codefile.code_to_obj(code)
    obj["codewords"][0] = [[1, 1, 0, 0], [1, 0, 0, 0]]  # not reduced
    with pytest.raises(ValueError):
        codefile.code_from_obj(obj)


def test_loader_rejects_rank_deficient(tmp_path):
    code = line_spread(2, 4)
    obj = codefile.code_to_obj(code)
    obj["codewords"][0] = [[1, 0, 0, 0], [1, 0, 0, 0]]
    with pytest.raises(ValueError):
        codefile.code_from_obj(obj)


def test_loader_rejects_duplicates():
    code = line_spread(2, 4)
    obj = codefile.code_to_obj(code)
    obj["codewords"].append(obj["codewords"][0])
    with pytest.raises(ValueError):
        codefile.code_from_obj(obj)


def test_emit_uses_integer_wire_encoding():
    u = subspace_from_matrix(matrix_from_rows(F2, [[1, 0, 0], [0, 1, 1]]))
    code = make_code(F2, 3, 2, 2, [u], "one line")
    obj = json.loads(codefile.emit(code))
    assert obj["codewords"] == [[[1, 0, 0], [0, 1, 1]]]
    assert obj["field"] == {"p": 2, "e": 1, "modulus": [0, 1]}


# -- command line ---------------------------------------------------------------


def test_cli_formula_cor2(capsys):
    assert main(["formula", "cor2", "--q", "2", "--v", "12", "--d", "4", "--k", "6"]) == 0
    assert capsys.readouterr().out.strip() == "1321780637"


def test_cli_formula_unknown(capsys):
    assert main(["formula", "nope", "--q", "2"]) == 2


def test_cli_formula_missing_param(capsys):
    assert main(["formula", "cor3b", "--q", "2"]) == 2


def test_cli_construct_and_verify(tmp_path, capsys):
    out = tmp_path / "spread.json"
    assert main(["construct", "line-spread", "--q", "2", "--v", "6", "-o", str(out)]) == 0
    text = capsys.readouterr().out
    assert "size 21" in text and "verified" in text
    assert main(["verify", str(out)]) == 0


def test_cli_verify_failure_exit_code(tmp_path, capsys):
    out = tmp_path / "code.json"
    assert main(["construct", "line-spread", "--q", "2", "--v", "4", "-o", str(out)]) == 0
    capsys.readouterr()
    obj = json.loads(out.read_text())
    obj["d"] = 4
    # claim a distance the two closest lines cannot meet
    obj["codewords"] = [
        [[1, 0, 0, 0], [0, 1, 0, 0]],
        [[1, 0, 0, 0], [0, 0, 1, 0]],
    ]
    out.write_text(json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n")
    assert main(["verify", str(out)]) == 3


def test_cli_construct_certificate_exit(tmp_path, capsys):
    # 2^45 codewords cannot be materialized
    assert main(["construct", "lift-mrd", "--q", "2", "--v", "19", "--k", "4", "--d", "4"]) == 4


def test_cli_budget_exit_on_giant_verify(tmp_path, capsys):
    assert main(["construct", "bq-solids-12", "--q", "3"]) == 4  # over the size budget


def test_cli_bq_upper(capsys):
    assert main(["bq-upper", "--q", "2", "--v1", "10", "--v2", "3", "--d", "4", "--k", "3"]) == 0
    out = capsys.readouterr().out
    assert "lp: 7" in out and "corollary: 7" in out


def test_cli_heuristic_writes_report(tmp_path, capsys):
    code_path = tmp_path / "bq.json"
    report_path = tmp_path / "report.json"
    rc = main([
        "heuristic", "--q", "2", "--v1", "6", "--v2", "3", "--d", "4", "--k", "3",
        "--seed", "1", "--restarts", "5", "-o", str(code_path), "--report", str(report_path),
    ])
    assert rc == 0
    report = json.loads(report_path.read_text())
    assert report["reached"] == 7 and report["verified"]
    assert main(["verify", str(code_path)]) == 0


def test_cli_exact_bq(capsys):
    assert main(["exact-bq", "--q", "2", "--v1", "6", "--v2", "3", "--d", "4", "--k", "3"]) == 0
    assert "exact: 7" in capsys.readouterr().out


def test_cli_bounds_deterministic(tmp_path, capsys):
    rc = main(["bounds", "--q", "2", "--vmax", "6", "--format", "csv"])
    assert rc == 0
    first = capsys.readouterr().out
    main(["bounds", "--q", "2", "--vmax", "6", "--format", "csv"])
    assert capsys.readouterr().out == first
    assert first.splitlines()[0] == "q,v,d,k,lower,upper,lower_rule,upper_rule,conditional"


def test_cli_bounds_conditional_flag(capsys):
    rc = main(["bounds", "--q", "2", "--vmax", "8", "--conditional", "--format", "csv"])
    assert rc == 0
    out = capsys.readouterr().out
    assert "True" in out or "False" in out
