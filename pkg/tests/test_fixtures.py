import pytest

from triweb.errors import ValidationError
from triweb.fixtures import (FIXTURE_MATRIX, create_singer_presentation, resolve_presentation)
from triweb.presentation import export_json


def test_names_resolve_to_cached_presentations():
    assert resolve_presentation("builtin:15.1") is resolve_presentation("builtin:15.1")
    assert resolve_presentation("15.1") == resolve_presentation("builtin:15.1")


def test_fixture_matrix_specs_resolve():
    for _, spec, _ in FIXTURE_MATRIX:
        if spec.startswith("diffset:57"):
            continue
        assert len(resolve_presentation(spec)) > 0


def test_singer_presentation_for_q3():
    tp = create_singer_presentation(3)
    assert len(tp.elements_of_dim(1)) == 13
    assert len(tp) == 2 * 13 * 4


def test_json_file(tmp_path, tp_fano):
    path = tmp_path / "fano.json"
    path.write_text(export_json(tp_fano))
    assert resolve_presentation(str(path)).triples == tp_fano.triples


@pytest.mark.parametrize("spec", ["nonsense", "diffset:7:2", "degenerate:x", "diffset:7:2:0,1,2"])
def test_bad_specs(spec):
    with pytest.raises(ValidationError):
        resolve_presentation(spec)
