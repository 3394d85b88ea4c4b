import json

import pytest

from triweb.cli import EXIT_ERROR, EXIT_FAILED, EXIT_OK, main
from triweb.sparsemat import SparseMatrix


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_diffset_standardize(capsys):
    code, out, _ = run(capsys, "diffset", "standardize", "--N", "21", "--q", "4", "--D", "0,1,4,14,16")
    assert code == EXIT_OK
    assert json.loads(out) == {"N": 21, "q": 4, "D": [7, 9, 14, 15, 18]}


def test_diffset_verify_failure_exit_code(capsys):
    code, out, _ = run(capsys, "diffset", "verify", "--N", "7", "--D", "0,1,2")
    assert code == EXIT_FAILED
    assert json.loads(out)["valid"] is False


def test_bad_integer_list(capsys):
    code, _, err = run(capsys, "diffset", "verify", "--N", "7", "--D", "0,a")
    assert code == EXIT_ERROR
    assert err.startswith("Error:")


def test_presentation_verify_from_file(capsys, tmp_path):
    path = tmp_path / "p.json"
    assert main(["presentation", "builtin", "--name", "15.1", "--out", str(path)]) == EXIT_OK
    code, out, _ = run(capsys, "presentation", "verify", "--in", str(path))
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["axioms"]["pass"] is True
    assert payload["summary"]["triples"] == 104


def test_presentation_build_from_diffset(capsys, tmp_path):
    path = tmp_path / "d.json"
    path.write_text(json.dumps({"N": 7, "q": 2, "D": [1, 2, 4]}))
    code, out, _ = run(capsys, "presentation", "build", "--from-diffset", str(path))
    assert code == EXIT_OK
    assert len(json.loads(out)["triples"]) == 42


def test_schema_error_exit_code(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"n": 3}')
    code, _, err = run(capsys, "presentation", "verify", "--in", str(path))
    assert code == EXIT_ERROR
    assert "missing key" in err


def test_functor_check_subset(capsys):
    code, out, _ = run(capsys, "functor", "check", "--presentation", "builtin:15.1", "--char", "2",
                       "--relations", "bigon,crossing_expansion")
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["pass"] is True
    assert set(payload["counts"]) == {"bigon", "crossing_expansion"}


def test_functor_hypothesis_refused(capsys):
    code, _, err = run(capsys, "functor", "check", "--presentation", "fano", "--char", "2")
    assert code == EXIT_ERROR
    assert "hypotheses" in err


def test_functor_override(capsys):
    code, out, _ = run(capsys, "functor", "check", "--presentation", "fano", "--char", "2",
                       "--override-hypotheses", "--relations", "bigon")
    assert code == EXIT_FAILED
    assert json.loads(out)["override"] is True


def test_functor_emit(capsys, tmp_path):
    path = tmp_path / "r.coo"
    code, _, _ = run(capsys, "functor", "emit", "--presentation", "builtin:15.1", "--char", "2",
                     "--emit", "crossing:1,1", "--out", str(path))
    assert code == EXIT_OK
    m = SparseMatrix.from_coo_text(path.read_text())
    assert m.shape == (169, 169)
    assert m.nnz == 273


def test_unknown_relation(capsys):
    code, _, _ = run(capsys, "functor", "check", "--presentation", "builtin:15.1", "--char", "2",
                     "--relations", "pentagon")
    assert code == EXIT_ERROR


def test_ybe_degenerate(capsys, tmp_path):
    coo = tmp_path / "rhat.coo"
    code, out, _ = run(capsys, "ybe", "--presentation", "degenerate:3", "--char", "0",
                       "--emit-rhat", str(coo))
    assert code == EXIT_OK
    report = json.loads(out)
    assert report["signed_swap"] is True
    assert report["density_bound_ok"] is None
    assert coo.read_text().startswith("9 9 0 9")


def test_visualize_writes_image(capsys, tmp_path):
    path = tmp_path / "fano.png"
    code, _, _ = run(capsys, "visualize", "--presentation", "fano", "--out", str(path))
    assert code == EXIT_OK
    assert path.stat().st_size > 0


def test_version(capsys):
    with pytest.raises(SystemExit) as info:
        main(["--version"])
    assert info.value.code == 0
    assert "triweb" in capsys.readouterr().out


@pytest.mark.parametrize("document", [
    {"n": 3, "q": 2, "elements": 5, "sigma": [], "triples": []},
    {"n": 3, "q": 2, "elements": [{"id": 1, "dim": 1}], "sigma": [[1, 1]], "triples": [[[1], 2, 3]]},
    [1, 2, 3],
])
def test_malformed_presentation_exit_code(capsys, tmp_path, document):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(document))
    code, _, err = run(capsys, "presentation", "verify", "--in", str(path))
    assert code == EXIT_ERROR
    assert err.startswith("Error:")


def test_zero_modulus_exit_code(capsys):
    code, _, err = run(capsys, "diffset", "verify", "--N", "0", "--D", "0,1")
    assert code == EXIT_ERROR
    assert err.startswith("Error:")


def test_unexpected_failure_exit_code(capsys, monkeypatch):
    import triweb.cli as cli

    def boom(args, config):
        raise RuntimeError("internal")

    monkeypatch.setitem(cli.COMMANDS, "diffset", boom)
    code, _, err = run(capsys, "diffset", "singer", "--q", "2")
    assert code == EXIT_ERROR
    assert err.startswith("Error: RuntimeError")
