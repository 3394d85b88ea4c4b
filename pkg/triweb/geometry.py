# Incidence geometries of type Ã_{n-1} and Gaussian binomials
#
# A geometry is kept as its Levi graph: one networkx node per element with
# 'dim' and 'name' attributes, one edge per incident pair of distinct elements.

import logging
from dataclasses import dataclass, field
from itertools import combinations
from math import comb

import networkx as nx

from triweb.errors import ValidationError

logger = logging.getLogger(__name__)


def _q_integer(m, q):
    return m if q == 1 else (q ** m - 1) // (q - 1)


def q_binomial(n, k, q):
    """Gaussian binomial [n choose k]_q; reduces to comb(n, k) at q = 1"""
    if k < 0 or k > n:
        return 0
    num = 1
    den = 1
    for i in range(k):
        num *= _q_integer(n - i, q)
        den *= _q_integer(i + 1, q)
    return num // den


def generalized_binomial(x, t):
    """x(x-1)...(x-t+1)/t! for any integer x and t >= 0"""
    if t < 0:
        raise ValidationError(f"binomial lower index must be >= 0, got {t}")
    if x >= 0:
        return comb(x, t)
    return (-1) ** t * comb(-x + t - 1, t)


def count_subspaces(n, k, q):
    if not 0 <= k <= n:
        raise ValidationError(f"need 0 <= k <= n, got k={k} n={n}")
    return q_binomial(n, k, q)


def count_containing(n, k, m, q):
    """k-subspaces of F_q^n containing a fixed m-subspace"""
    if not 0 <= m <= k <= n:
        raise ValidationError(f"need 0 <= m <= k <= n, got m={m} k={k} n={n}")
    return q_binomial(n - m, k - m, q)


class IncidenceGeometry:
    """Elements of dimensions 1..n-1 with a symmetric incidence relation"""

    def __init__(self, n, q, rule="table"):
        self.n = n
        self.q = q
        # "difference_set" and "powerset" geometries can be rebuilt from a rule
        self.rule = rule
        self.graph = nx.Graph()
        self.subsets = {}

    @classmethod
    def from_table(cls, n, q, elements, incidence, rule="table"):
        """elements: {id: (dim, name)}; incidence: iterable of id pairs"""
        geom = cls(n, q, rule)
        for eid, (dim, name) in sorted(elements.items()):
            if not 1 <= dim <= n - 1:
                raise ValidationError(f"element {eid} has dimension {dim} outside [1, {n - 1}]")
            geom.graph.add_node(eid, dim=dim, name=name)
        for u, v in incidence:
            geom.add_incidence(u, v)
        return geom

    def add_incidence(self, u, v):
        if u not in self.graph or v not in self.graph:
            raise ValidationError(f"incidence ({u}, {v}) names an unknown element")
        if u == v or self.dim(u) == self.dim(v):
            raise ValidationError(f"incidence ({u}, {v}) must join elements of distinct dimensions")
        self.graph.add_edge(u, v)

    # -- queries --

    @property
    def elements(self):
        return sorted(self.graph.nodes)

    def dim(self, u):
        return self.graph.nodes[u]["dim"]

    def name(self, u):
        return self.graph.nodes[u]["name"]

    def by_dim(self, k):
        return sorted(u for u, d in self.graph.nodes(data="dim") if d == k)

    def incident(self, u, v):
        return self.graph.has_edge(u, v)

    def neighbors(self, u):
        return sorted(self.graph.neighbors(u))

    def incidence_pairs(self):
        return sorted(tuple(sorted(e)) for e in self.graph.edges)

    def __len__(self):
        return self.graph.number_of_nodes()

    def __repr__(self):
        return f"IncidenceGeometry(n={self.n}, q={self.q}, elements={len(self)}, rule={self.rule})"


def plane_from_difference_set(N, D):
    """Points 0..N-1, line N+s is the translate s + D; point m on line N+s iff m - s in D"""
    from triweb.diffset import verify_planar_difference_set

    report = verify_planar_difference_set(N, D)
    if not report.valid:
        raise ValidationError(f"{sorted(D)} is not a planar difference set mod {N}")
    q = len(D) - 1
    dset = {d % N for d in D}
    geom = IncidenceGeometry(3, q, rule="difference_set")
    for m in range(N):
        geom.graph.add_node(m, dim=1, name=f"{m}")
    for s in range(N):
        geom.graph.add_node(N + s, dim=2, name=f"L{s}")
    for s in range(N):
        for d in dset:
            geom.graph.add_edge((s + d) % N, N + s)
    logger.info("built plane of order %d from difference set mod %d", q, N)
    return geom


def powerset_geometry(N):
    """Nonempty proper subsets of {0..N-1} under inclusion, dim = size"""
    if N < 3:
        raise ValidationError(f"degenerate geometry needs N >= 3, got {N}")
    geom = IncidenceGeometry(N, 1, rule="powerset")
    eid = 0
    for size in range(1, N):
        for subset in combinations(range(N), size):
            geom.graph.add_node(eid, dim=size, name="{" + ",".join(map(str, subset)) + "}")
            geom.subsets[eid] = frozenset(subset)
            eid += 1
    ids = {s: u for u, s in geom.subsets.items()}
    for u, s in geom.subsets.items():
        for size in range(1, len(s)):
            for sub in combinations(sorted(s), size):
                geom.graph.add_edge(ids[frozenset(sub)], u)
    return geom


@dataclass
class AxiomResult:
    name: str
    passed: bool
    witness: tuple = None


@dataclass
class PlaneReport:
    results: list = field(default_factory=list)

    @property
    def passed(self):
        return all(r.passed for r in self.results)

    def failed(self):
        return [r.name for r in self.results if not r.passed]

    def to_dict(self):
        return {"passed": self.passed,
                "axioms": [{"name": r.name, "passed": r.passed,
                            "witness": list(r.witness) if r.witness is not None else None}
                           for r in self.results]}


def verify_plane_axioms(geom, allow_degenerate=False):
    """Projective plane axioms for a rank-3 geometry (points dim 1, lines dim 2)"""
    if geom.n != 3:
        raise ValidationError(f"unsupported rank {geom.n}: plane axioms need n = 3, "
                              "use verify_cardinalities for higher rank")
    if geom.rule == "powerset" and not allow_degenerate:
        raise ValidationError("degenerate geometry given without allow_degenerate")
    points, lines = geom.by_dim(1), geom.by_dim(2)
    report = PlaneReport()

    witness = None
    for a, b in combinations(points, 2):
        common = sorted(nx.common_neighbors(geom.graph, a, b))
        if len(common) != 1:
            witness = (a, b)
            break
    report.results.append(AxiomResult("two points lie on a unique line", witness is None, witness))

    witness = None
    for a, b in combinations(lines, 2):
        if len(list(nx.common_neighbors(geom.graph, a, b))) > 1:
            witness = (a, b)
            break
    report.results.append(AxiomResult("two lines meet in at most one point", witness is None, witness))

    witness = next(((ln,) for ln in lines if geom.graph.degree(ln) < 3), None)
    report.results.append(AxiomResult("every line has at least 3 points", witness is None, witness))

    found = False
    for a, b, c in combinations(points, 3):
        ab = set(nx.common_neighbors(geom.graph, a, b))
        if not ab & set(geom.graph.neighbors(c)):
            found = True
            break
    report.results.append(AxiomResult("three non-collinear points exist", found))
    return report


def verify_cardinalities(geom):
    """|elements of dim k| == q_binomial(n, k, q) for each 1 <= k <= n-1"""
    report = PlaneReport()
    for k in range(1, geom.n):
        have, want = len(geom.by_dim(k)), q_binomial(geom.n, k, geom.q)
        report.results.append(AxiomResult(f"{want} elements of dimension {k}", have == want,
                                          None if have == want else (k, have)))
    return report


def incidence_from_triples(elements, sigma, triples):
    """Incident pairs {sigma(u), v} read off a triple set"""
    pairs = set()
    for u, v, _ in triples:
        s = sigma[u]
        if s != v:
            pairs.add(tuple(sorted((s, v))))
    return sorted(pairs)
