from itertools import combinations, product
from math import comb

import pytest

from triweb.diffset import prime_power, singer_difference_set
from triweb.errors import ValidationError
from triweb.fixtures import resolve_presentation
from triweb.geometry import (count_containing, count_subspaces, generalized_binomial,
                             plane_from_difference_set, powerset_geometry, q_binomial,
                             verify_cardinalities, verify_plane_axioms)
from triweb.gf import gf_new
from triweb.webfun import make_context


@pytest.mark.parametrize("q,points", [(2, 7), (3, 13), (4, 21), (7, 57)])
def test_points_of_a_plane(q, points):
    assert q_binomial(3, 1, q) == points
    assert q_binomial(3, 2, q) == points


def test_q_binomial_values():
    assert q_binomial(4, 2, 2) == 35
    assert q_binomial(5, 2, 1) == comb(5, 2)
    assert q_binomial(3, 4, 2) == 0


def test_generalized_binomial_negative_top():
    assert generalized_binomial(5, 2) == 10
    assert generalized_binomial(-1, 3) == -1
    assert generalized_binomial(-2, 2) == 3
    assert generalized_binomial(2, 3) == 0
    with pytest.raises(ValidationError):
        generalized_binomial(3, -1)


def test_counts():
    assert count_subspaces(3, 0, 5) == 1
    assert count_containing(3, 2, 1, 3) == 4
    with pytest.raises(ValidationError):
        count_containing(3, 1, 2, 3)


def test_fano_plane():
    geom = plane_from_difference_set(7, [0, 1, 3])
    report = verify_plane_axioms(geom)
    assert report.passed
    assert all(geom.graph.degree(u) == 3 for u in geom.elements)
    assert geom.incident(1, 7 + 0)
    assert not geom.incident(2, 7 + 0)


def test_invalid_difference_set_rejected():
    with pytest.raises(ValidationError):
        plane_from_difference_set(7, [0, 1, 2])


def test_degenerate_plane_needs_flag():
    geom = powerset_geometry(3)
    with pytest.raises(ValidationError):
        verify_plane_axioms(geom)
    report = verify_plane_axioms(geom, allow_degenerate=True)
    assert report.failed() == ["every line has at least 3 points"]


def test_higher_rank_uses_cardinalities():
    geom = powerset_geometry(4)
    with pytest.raises(ValidationError):
        verify_plane_axioms(geom, allow_degenerate=True)
    assert verify_cardinalities(geom).passed
    assert [len(geom.by_dim(k)) for k in (1, 2, 3)] == [4, 6, 4]


def test_powerset_needs_three_points():
    with pytest.raises(ValidationError):
        powerset_geometry(2)


@pytest.mark.parametrize("q,p", [(3, 2), (4, 3), (7, 2), (7, 3)])
def test_q_binomial_is_binomial_mod_p(q, p):
    for n in range(7):
        for k in range(n + 1):
            assert q_binomial(n, k, q) % p == comb(n, k) % p


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7])
def test_every_point_on_q_plus_one_lines(q):
    dset = singer_difference_set(q)
    geom = plane_from_difference_set(dset.N, dset.D)
    assert verify_plane_axioms(geom).passed
    assert {geom.graph.degree(u) for u in geom.elements} == {q + 1}


def _subspaces_of_rank_3(q):
    """Points and lines of F_q^3 by enumeration: normalized vectors and spans of pairs"""
    p, m = prime_power(q)
    f = gf_new(p, m)
    scalars = f.elements()

    def normalize(v):
        lead = next(c for c in v if c != f.zero)
        inv = f.inv(lead)
        return tuple(f.mul(inv, c) for c in v)

    vectors = [v for v in product(scalars, repeat=3) if any(c != f.zero for c in v)]
    points = sorted({normalize(v) for v in vectors})
    lines = set()
    for x, y in combinations(points, 2):
        span = {normalize(tuple(f.add(f.mul(a, cx), f.mul(b, cy)) for cx, cy in zip(x, y)))
                for a in scalars for b in scalars if a != f.zero or b != f.zero}
        lines.add(frozenset(span))
    return points, lines


@pytest.mark.parametrize("name,q,p", [("diffset:21:4:0,1,4,14,16", 4, 3),
                                      ("diffset:57:7:1,6,7,9,19,38,42,49", 7, 2)])
def test_functor_dimensions_match_subspace_counts(name, q, p):
    points, lines = _subspaces_of_rank_3(q)
    assert all(len(line) == q + 1 for line in lines)
    ctx = make_context(resolve_presentation(name), p)
    assert ctx.dim(1) == len(points) == q_binomial(3, 1, q)
    assert ctx.dim(2) == len(lines) == q_binomial(3, 2, q)
