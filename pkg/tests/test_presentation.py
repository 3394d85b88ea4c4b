import json

import pytest

from triweb.diffset import singer_difference_set
from triweb.errors import PreconditionError, ReconstructionError, SchemaError, ValidationError
from triweb.geometry import plane_from_difference_set, powerset_geometry
from triweb.presentation import (build, degenerate, export_json, from_dict, import_json,
                                 lines_from_triples, to_dict, verify_axioms,
                                 verify_condition_6_variants, without_triples)


class TestBuiltin:
    def test_counts(self, tp_15_1):
        assert len(tp_15_1.elements) == 26
        assert len(tp_15_1) == 104
        assert tp_15_1.n == 3 and tp_15_1.q == 3

    def test_lines(self, tp_15_1):
        l0, l3 = 13, 16
        assert tp_15_1.geometry.neighbors(l0) == [0, 1, 4, 6]
        assert tp_15_1.geometry.neighbors(l3) == [3, 4, 7, 9]
        assert tp_15_1.name(l0) == "l0"
        assert tp_15_1.name(4) == "p4"

    def test_axioms_hold(self, tp_15_1):
        report = verify_axioms(tp_15_1)
        assert report.passed
        assert [r.condition for r in report.results] == ["1", "2", "3", "4", "5", "6"]

    def test_variants_hold(self, tp_15_1):
        assert all(r.passed for r in verify_condition_6_variants(tp_15_1))

    def test_repaired_class(self, tp_15_1):
        assert {(2, 3, 7), (3, 7, 2), (7, 2, 3)} <= tp_15_1.triples
        assert (2, 7, 3) not in tp_15_1
        assert verify_axioms(tp_15_1).passed
        assert tp_15_1.geometry.neighbors(13 + 1) == [1, 2, 5, 7]
        assert tp_15_1.geometry.neighbors(13 + 2) == [2, 3, 6, 8]

    def test_threaded_verification_agrees(self, tp_15_1):
        assert verify_axioms(tp_15_1, workers=3).to_dict() == verify_axioms(tp_15_1).to_dict()


def test_fano_axioms(tp_fano):
    assert verify_axioms(tp_fano).passed
    assert all(r.passed for r in verify_condition_6_variants(tp_fano))


def test_removed_triple_is_caught(tp_15_1):
    broken = without_triples(tp_15_1, [(1, 3, 5)])
    report = verify_axioms(broken)
    assert not report.passed
    assert not report["1"].passed
    assert not report["2"].passed
    assert report["2"].witness is not None
    with pytest.raises(PreconditionError):
        verify_condition_6_variants(broken)


@pytest.mark.parametrize("N,count", [(3, 12), (4, 72), (5, 300)])
def test_degenerate_triple_count(N, count):
    tp = degenerate(N)
    assert len(tp) == count
    assert tp.characteristic_zero_only
    assert tp.q == 1 and tp.n == N


@pytest.mark.parametrize("N", [3, 4])
def test_degenerate_axioms(N):
    assert verify_axioms(degenerate(N)).passed


def test_degenerate_sigma_is_complement(tp_degenerate_4):
    subsets = tp_degenerate_4.geometry.subsets
    for u, s in subsets.items():
        assert subsets[tp_degenerate_4.sigma[u]] == frozenset(range(4)) - s


def test_build_rejects_bad_sigma():
    geom = powerset_geometry(3)
    sigma = {u: u for u in geom.elements}
    with pytest.raises(ValidationError, match="dimension swap"):
        build(geom, sigma, [])


def test_build_rejects_unknown_triple(tp_fano):
    with pytest.raises(ValidationError):
        build(tp_fano.geometry, tp_fano.sigma, [(0, 1, 99)])


def test_lines_from_triples_wrong_count():
    sigma = {0: 3, 1: 4, 2: 5, 3: 0, 4: 1, 5: 2}
    with pytest.raises(ReconstructionError):
        lines_from_triples([0, 1, 2], sigma, [(0, 1, 2)], 2)


class TestJson:
    def test_builtin_roundtrip(self, tp_15_1):
        assert import_json(export_json(tp_15_1)) == tp_15_1

    def test_incidence_rebuilt_when_omitted(self, tp_fano):
        data = to_dict(tp_fano)
        del data["incidence"]
        tp = from_dict(json.loads(json.dumps(data)))
        assert tp.geometry.incidence_pairs() == tp_fano.geometry.incidence_pairs()
        assert tp.triples == tp_fano.triples

    def test_bytes_input(self, tp_15_1):
        assert import_json(export_json(tp_15_1).encode()) == tp_15_1

    def test_missing_keys_listed(self):
        with pytest.raises(SchemaError) as info:
            from_dict({"n": 3})
        assert "missing key 'triples'" in info.value.problems
        assert "missing key 'sigma'" in info.value.problems

    def test_bad_sigma_reported(self, tp_fano):
        data = to_dict(tp_fano)
        data["sigma"][0] = [0, 0]
        with pytest.raises(SchemaError) as info:
            from_dict(data)
        assert any("involution" in p for p in info.value.problems)

    def test_not_json(self):
        with pytest.raises(SchemaError):
            import_json("{not json")

    def test_duplicate_triples_dropped(self, tp_fano):
        data = to_dict(tp_fano)
        data["triples"].append(list(data["triples"][0]))
        assert from_dict(data).triples == tp_fano.triples

    def test_incidence_always_exported(self, tp_fano, tp_degenerate_4):
        for tp in (tp_fano, tp_degenerate_4):
            assert to_dict(tp)["incidence"] == [list(e) for e in tp.geometry.incidence_pairs()]

    def test_deleted_triple_caught_after_import(self, tp_fano):
        data = to_dict(tp_fano)
        data["triples"].pop(0)
        report = verify_axioms(from_dict(data))
        assert not report["1"].passed

    @pytest.mark.parametrize("field,value", [
        ("elements", 5),
        ("sigma", "none"),
        ("triples", {"a": 1}),
        ("incidence", 7),
    ])
    def test_wrong_container_types(self, tp_fano, field, value):
        data = to_dict(tp_fano)
        data[field] = value
        with pytest.raises(SchemaError) as info:
            from_dict(data)
        assert any(f"'{field}' must be a list" in p for p in info.value.problems)

    @pytest.mark.parametrize("bad", [[[1], 2, 3], [True, 1, 2], [0, 1], "0,1,2", [0, 1, 1000]])
    def test_malformed_triples(self, tp_fano, bad):
        data = to_dict(tp_fano)
        data["triples"].append(bad)
        with pytest.raises(SchemaError) as info:
            from_dict(data)
        assert any(p.startswith("triples[") for p in info.value.problems)

    def test_malformed_sigma_pair(self, tp_fano):
        data = to_dict(tp_fano)
        data["sigma"][0] = [[0], 7]
        with pytest.raises(SchemaError):
            from_dict(data)

    def test_undecodable_bytes(self):
        with pytest.raises(SchemaError):
            import_json(b"\xff\xfe{")


def _twisted(N, q, D, c):
    """Point triples (m, m+d, m+c·d) and mirrors on the plane of D"""
    geom = plane_from_difference_set(N, D)
    sigma = {}
    for m in range(N):
        sigma[m], sigma[N + m] = N + m, m
    points = {(m, (m + d) % N, (m + c * d) % N) for m in range(N) for d in D}
    triples = points | {(sigma[w], sigma[v], sigma[u]) for u, v, w in points}
    return build(geom, sigma, triples, n=3, q=q)


@pytest.mark.parametrize("N,q", [(7, 2), (13, 3), (21, 4)])
def test_condition_6_forms_agree(N, q):
    D = singer_difference_set(q).D
    twists = [c for c in range(N)
              if (c * c - c + 1) % N == 0 and {(c - 1) * d % N for d in D} == set(D)]
    assert q + 1 in twists and len(twists) >= 2
    for c in twists:
        tp = _twisted(N, q, D, c)
        six, six_prime, six_double_prime = verify_condition_6_variants(tp)
        assert six.passed == six_prime.passed == six_double_prime.passed, c
