import json

from qquery import document
from qquery.boolfn import T4
from qquery.catalog import build_equality3
from qquery.cli import main
from qquery.verifier import verify


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_catalog_list(capsys):
    code, out, _ = run_cli(capsys, "catalog", "list")
    assert code == 0 and "equality3" in out and "t2n-bounded --n N" in out


def test_run_trace_accept(capsys):
    code, out, _ = run_cli(capsys, "run", "--alg", "equality3", "--input", "111", "--trace")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("start")
    assert "final       (1, 0, 0, 0)" in out
    assert lines[-1].endswith("ACCEPT")


def test_run_reject(capsys):
    _, out, _ = run_cli(capsys, "run", "--alg", "equality3", "--input", "011")
    assert out.strip().endswith("REJECT")


def test_derive_t4(capsys):
    code, out, _ = run_cli(capsys, "derive", "--alg", "t2n-exact", "--n", "2")
    rows = out.strip().splitlines()[:16]
    assert code == 0
    assert [int(r.split()[1]) for r in rows] == T4.bits.tolist()


def test_verify_json_matches_library(capsys):
    code, out, _ = run_cli(capsys, "verify", "--alg", "string-eq4", "--function",
                           "STRING_EQ4", "--json")
    assert code == 0
    d = json.loads(out)
    assert d["classification"] == "EXACT"
    assert d["complexity"]["deterministic_exact"] == 4


def test_report_tables(capsys):
    code, out, _ = run_cli(capsys, "report", "tables")
    assert code == 0
    d_row = [l for l in out.splitlines() if l.startswith("D(f)")][0]
    q_row = [l for l in out.splitlines() if l.startswith("Q ")][0]
    assert d_row.split()[1:] == ["3"] * 8
    assert q_row.split()[1:] == ["2"] * 8
    assert "D=3, Q_E=2" in out


def test_transform_and_load(capsys, tmp_path):
    path = tmp_path / "inv.json"
    code, _, _ = run_cli(capsys, "transform", "invert", "--alg", "string-eq4",
                         "--out", str(path))
    assert code == 0
    assert document.load(path).measurement == (0, 1, 1, 1)
    code, out, _ = run_cli(capsys, "load", str(path))
    assert code == 0 and "measurement=0111" in out


def test_move_accept_one_based(capsys):
    code, out, _ = run_cli(capsys, "transform", "move-accept", "--to", "4", "--alg", "equality3")
    assert code == 0
    assert document.loads(out).measurement == (0, 0, 0, 1)


def test_permute_vars(capsys):
    code, out, _ = run_cli(capsys, "transform", "permute-vars", "--sigma", "2,4,1,3",
                           "--alg", "string-eq4")
    assert code == 0
    assert document.loads(out).steps[1].vars == (2, 2, 4, 1)


def test_compose_file_inputs(capsys, tmp_path):
    path = tmp_path / "eq.json"
    document.save(build_equality3(), path)
    code, out, _ = run_cli(capsys, "compose", "and-pair", "--a", str(path), "--b", "equality3")
    assert code == 0
    assert verify(document.loads(out)).probability_label == "BOUNDED(3/4)"


def test_precondition_exit_code(capsys):
    code, _, err = run_cli(capsys, "transform", "move-accept", "--to", "2",
                           "--alg", "t2n-bounded", "--n", "3")
    assert code == 1 and "Property 1" in err


def test_compose_precondition_exit_code(capsys):
    code, _, err = run_cli(capsys, "compose", "quad", "--a", "string-eq4", "--b", "equality3",
                           "--c", "equality3", "--d", "equality3")
    assert code == 1 and "precondition" in err


def test_malformed_file_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"schema_version": 1}')
    code, _, err = run_cli(capsys, "load", str(bad))
    assert code == 2
    code, _, _ = run_cli(capsys, "run", "--file", str(bad), "--input", "0")
    assert code == 2


def test_unknown_algorithm(capsys):
    code, _, err = run_cli(capsys, "derive", "--alg", "nope")
    assert code == 1 and "unknown" in err


def test_save_then_run_file(capsys, tmp_path):
    path = tmp_path / "t.json"
    assert run_cli(capsys, "save", "--alg", "t2n-exact:2", "--out", str(path))[0] == 0
    _, out, _ = run_cli(capsys, "run", "--file", str(path), "--input", "0110")
    assert out.strip().endswith("ACCEPT")


def test_bad_input_length(capsys):
    code, _, _ = run_cli(capsys, "run", "--alg", "equality3", "--input", "11")
    assert code == 1
