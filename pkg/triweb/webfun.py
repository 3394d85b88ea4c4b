# The fiber functor: web generators as sparse matrices and relation checks
#
# V_a has basis Pi_a (sorted by id) for 1 <= a <= n-1; V_0 and V_n are
# one-dimensional. Tensor products follow the kron convention of sparsemat,
# so a label-0 factor never changes a matrix.

import logging
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import prod

from triweb.errors import HypothesisError, NoSuchLabelError
from triweb.geometry import generalized_binomial, q_binomial
from triweb.gf import PrimeField
from triweb.sparsemat import SparseMatrix, first_difference, kron_all

logger = logging.getLogger(__name__)


@dataclass
class HypothesisRecord:
    characteristic: int
    n: int
    q: int
    violations: list = field(default_factory=list)
    override: bool = False

    @property
    def satisfied(self):
        return not self.violations

    def to_dict(self):
        return {"characteristic": self.characteristic, "n": self.n, "q": self.q,
                "satisfied": self.satisfied, "violations": list(self.violations),
                "override": self.override}


def check_hypotheses(tp, p):
    """(p >= n-1 and q ≡ 1 mod p) or (p = 0 and q = 1)"""
    record = HypothesisRecord(p, tp.n, tp.q)
    if p == 0:
        if tp.q != 1:
            record.violations.append("q = 1 in characteristic 0")
    else:
        if p < tp.n - 1:
            record.violations.append("p ≥ n−1")
        if tp.q % p != 1:
            record.violations.append("q ≡ 1 mod p")
        if tp.characteristic_zero_only:
            record.violations.append("characteristic 0 only")
    return record


class FunctorContext:
    """Bases, memoized generator matrices and ladder rungs for one (tp, p)"""

    def __init__(self, tp, p, override=False):
        self.tp = tp
        self.n = tp.n
        self.field = PrimeField(p)
        self.hypothesis = check_hypotheses(tp, p)
        self.hypothesis.override = override
        if not self.hypothesis.satisfied:
            if not override:
                raise HypothesisError(self.hypothesis.violations)
            logger.warning("hypothesis override in effect: %s", "; ".join(self.hypothesis.violations))
        self.bases = {a: tp.elements_of_dim(a) for a in range(1, self.n)}
        self.positions = {a: {u: i for i, u in enumerate(basis)} for a, basis in self.bases.items()}
        self._by_dims = {}
        for t in sorted(tp.triples):
            key = tuple(tp.dim(x) for x in t)
            self._by_dims.setdefault(key, []).append(t)
        self._cache = {}
        self._lock = threading.Lock()

    def __repr__(self):
        return f"FunctorContext({self.tp!r}, {self.field})"

    # -- objects --

    def _label(self, a):
        if not isinstance(a, int) or not 0 <= a <= self.n:
            raise NoSuchLabelError(f"no such label {a}: labels run over 0..{self.n}")
        return a

    def _pair(self, a, b):
        self._label(a)
        self._label(b)
        if a + b > self.n:
            raise NoSuchLabelError(f"no such label {a}+{b}: exceeds n = {self.n}")

    def dim(self, a):
        self._label(a)
        if a in (0, self.n):
            return 1
        return len(self.bases[a])

    def dim_seq(self, *labels):
        return prod(self.dim(a) for a in labels)

    def identity(self, *labels):
        return SparseMatrix.identity(self.dim_seq(*labels), self.field)

    def tensor(self, *mats):
        return kron_all(*mats)

    def _memo(self, key, builder):
        m = self._cache.get(key)
        if m is None:
            m = builder()
            with self._lock:
                m = self._cache.setdefault(key, m)
        return m

    # -- generators --

    def merge(self, a, b):
        """V_a ⊗ V_b -> V_{a+b}: w <- u⊗v iff (u, v, σw) ∈ T"""
        self._pair(a, b)
        return self._memo(("merge", a, b), lambda: self._build_merge(a, b))

    def split(self, a, b):
        """V_{a+b} -> V_a ⊗ V_b: v⊗w <- u iff (v, w, σu) ∈ T"""
        self._pair(a, b)
        return self._memo(("split", a, b), lambda: self._build_split(a, b))

    def _entries(self, a, b):
        # (index in V_{a+b}, index in V_a ⊗ V_b)
        db = self.dim(b)
        sigma = self.tp.sigma
        if a + b == self.n:
            pa, pb = self.positions[a], self.positions[b]
            return [(0, pa[u] * db + pb[sigma[u]]) for u in self.bases[a]]
        pa, pb, pab = self.positions[a], self.positions[b], self.positions[a + b]
        return [(pab[sigma[x]], pa[u] * db + pb[v])
                for u, v, x in self._by_dims.get((a, b, self.n - a - b), [])]

    def _build_merge(self, a, b):
        if a == 0 or b == 0:
            return self.identity(a + b)
        return SparseMatrix.from_triplets(self.dim(a + b), self.dim_seq(a, b), self.field,
                                          [(w, uv, 1) for w, uv in self._entries(a, b)])

    def _build_split(self, a, b):
        if a == 0 or b == 0:
            return self.identity(a + b)
        return SparseMatrix.from_triplets(self.dim_seq(a, b), self.dim(a + b), self.field,
                                          [(uv, w, 1) for w, uv in self._entries(a, b)])

    def dot_in(self):
        """V_n -> unit"""
        return SparseMatrix.identity(1, self.field)

    def dot_out(self):
        """unit -> V_n"""
        return SparseMatrix.identity(1, self.field)

    def univalent_matrices(self):
        return self.dot_in(), self.dot_out()

    # -- ladders --

    def transfer_right(self, left, right, k):
        """(left, right) -> (left-k, right+k)"""
        if not 0 <= k <= left or right + k > self.n:
            raise NoSuchLabelError(f"cannot move {k} right from ({left}, {right})")
        return self._memo(("right", left, right, k), lambda: (
            self.tensor(self.identity(left - k), self.merge(k, right))
            @ self.tensor(self.split(left - k, k), self.identity(right))))

    def transfer_left(self, left, right, k):
        """(left, right) -> (left+k, right-k)"""
        if not 0 <= k <= right or left + k > self.n:
            raise NoSuchLabelError(f"cannot move {k} left from ({left}, {right})")
        return self._memo(("left", left, right, k), lambda: (
            self.tensor(self.merge(left, k), self.identity(right - k))
            @ self.tensor(self.identity(left), self.split(k, right - k))))

    def crossing(self, a, b):
        """V_a ⊗ V_b -> V_b ⊗ V_a as the signed ladder sum over the middle label t"""
        self._label(a)
        self._label(b)
        return self._memo(("crossing", a, b), lambda: self._build_crossing(a, b))

    def _build_crossing(self, a, b):
        total = SparseMatrix.zeros(self.dim_seq(b, a), self.dim_seq(a, b), self.field)
        for t in range(max(0, a + b - self.n), min(a, b) + 1):
            term = self.transfer_left(t, a + b - t, b - t) @ self.transfer_right(a, b, a - t)
            total = total + term.scale((-1) ** t)
        return total


def make_context(tp, p, override=False):
    return FunctorContext(tp, p, override)


def merge_matrix(ctx, a, b):
    return ctx.merge(a, b)


def split_matrix(ctx, a, b):
    return ctx.split(a, b)


def crossing_matrix(ctx, a, b):
    return ctx.crossing(a, b)


def univalent_matrices(ctx):
    return ctx.univalent_matrices()


# -- relation checks --

# REPORTED: failed outside the range where the relation is asserted
PASS, FAIL, NOT_APPLICABLE, REPORTED = "pass", "fail", "not applicable", "reported"


def _jsonable(x):
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else str(x)
    return int(x)


@dataclass
class RelationReport:
    relation: str
    labels: tuple
    status: str
    witness: dict = None
    note: str = None

    @property
    def passed(self):
        return self.status != FAIL

    def to_dict(self):
        out = {"relation": self.relation, "labels": list(self.labels),
               "pass": None if self.status == NOT_APPLICABLE else self.status == PASS,
               "witness": self.witness}
        if self.status in (NOT_APPLICABLE, REPORTED):
            out["status"] = self.status
        if self.note:
            out["note"] = self.note
        return out


def _compare(relation, labels, lhs, rhs, note=None):
    if lhs.shape != rhs.shape:
        return RelationReport(relation, labels, FAIL,
                              {"lhs_shape": list(lhs.shape), "rhs_shape": list(rhs.shape)}, note)
    diff = first_difference(lhs, rhs)
    if diff is None:
        return RelationReport(relation, labels, PASS, None, note)
    row, col, a, b = diff
    logger.debug("%s%s differs at (%d, %d): %s vs %s", relation, labels, row, col, a, b)
    return RelationReport(relation, labels, FAIL,
                          {"row": row, "col": col, "lhs": _jsonable(a), "rhs": _jsonable(b)}, note)


def _skip(relation, labels, note):
    return RelationReport(relation, labels, NOT_APPLICABLE, None, note)


def _in_range(ctx, *labels):
    return all(0 <= x <= ctx.n for x in labels)


def check_associativity(ctx, a, b, c):
    labels = (a, b, c)
    if min(labels) < 1 or a + b + c > ctx.n:
        return _skip("associativity", labels, "labels must be >= 1 with a+b+c <= n")
    lhs = ctx.merge(a + b, c) @ ctx.tensor(ctx.merge(a, b), ctx.identity(c))
    rhs = ctx.merge(a, b + c) @ ctx.tensor(ctx.identity(a), ctx.merge(b, c))
    return _compare("associativity", labels, lhs, rhs)


def check_coassociativity(ctx, a, b, c):
    labels = (a, b, c)
    if min(labels) < 1 or a + b + c > ctx.n:
        return _skip("coassociativity", labels, "labels must be >= 1 with a+b+c <= n")
    lhs = ctx.tensor(ctx.split(a, b), ctx.identity(c)) @ ctx.split(a + b, c)
    rhs = ctx.tensor(ctx.identity(a), ctx.split(b, c)) @ ctx.split(a, b + c)
    return _compare("coassociativity", labels, lhs, rhs)


def check_bigon(ctx, a, b):
    labels = (a, b)
    if min(labels) < 1 or a + b > ctx.n:
        return _skip("bigon", labels, "labels must be >= 1 with a+b <= n")
    lhs = ctx.merge(a, b) @ ctx.split(a, b)
    rhs = ctx.identity(a + b).scale(generalized_binomial(a + b, a))
    return _compare("bigon", labels, lhs, rhs,
                    note=f"raw diagonal {q_binomial(a + b, a, ctx.tp.q)}")


def check_bialgebra(ctx, a, c, b, d):
    labels = (a, c, b, d)
    if min(labels) < 1 or a + c != b + d or a + c > ctx.n:
        return _skip("bialgebra", labels, "need a+c = b+d <= n with labels >= 1")
    lhs = ctx.split(b, d) @ ctx.merge(a, c)
    rhs = SparseMatrix.zeros(lhs.rows, lhs.cols, ctx.field)
    for s in range(0, ctx.n + 1):
        x, y, z, w = b - s, a - b + s, s, c - s
        if not _in_range(ctx, x, y, z, w) or x + y != a or z + w != c:
            continue
        term = (ctx.tensor(ctx.merge(x, z), ctx.merge(y, w))
                @ ctx.tensor(ctx.identity(x), ctx.crossing(y, z), ctx.identity(w))
                @ ctx.tensor(ctx.split(x, y), ctx.split(z, w)))
        rhs = rhs + term
    return _compare("bialgebra", labels, lhs, rhs)


def _right_ok(ctx, left, right, k):
    return 0 <= k <= left and right + k <= ctx.n and _in_range(ctx, left, right)


def _left_ok(ctx, left, right, k):
    return 0 <= k <= right and left + k <= ctx.n and _in_range(ctx, left, right)


def square_switch_admissible(ctx, a, b, c, d, orientation):
    if orientation == 1:
        return _right_ok(ctx, a, b, d) and _left_ok(ctx, a - d, b + d, c)
    return _left_ok(ctx, a, b, c) and _right_ok(ctx, a + c, b - c, d)


def check_square_switch(ctx, a, b, c, d, orientation=1):
    """Orientation 1: move d right then c left; orientation 2: c left then d right"""
    labels = (a, b, c, d)
    name = f"square_switch_{orientation}"
    if orientation not in (1, 2):
        raise NoSuchLabelError(f"orientation must be 1 or 2, got {orientation}")
    if not square_switch_admissible(ctx, a, b, c, d, orientation):
        return _skip(name, labels, "intermediate labels leave [0, n]")
    if orientation == 1:
        lhs = ctx.transfer_left(a - d, b + d, c) @ ctx.transfer_right(a, b, d)
        top = a - b + c - d
    else:
        lhs = ctx.transfer_right(a + c, b - c, d) @ ctx.transfer_left(a, b, c)
        top = b - a + d - c
    rhs = SparseMatrix.zeros(lhs.rows, lhs.cols, ctx.field)
    for t in range(min(c, d) + 1):
        coeff = generalized_binomial(top, t)
        if orientation == 1:
            if not (_left_ok(ctx, a, b, c - t) and _right_ok(ctx, a + c - t, b - c + t, d - t)):
                continue
            term = ctx.transfer_right(a + c - t, b - c + t, d - t) @ ctx.transfer_left(a, b, c - t)
        else:
            if not (_right_ok(ctx, a, b, d - t) and _left_ok(ctx, a - d + t, b + d - t, c - t)):
                continue
            term = ctx.transfer_left(a - d + t, b + d - t, c - t) @ ctx.transfer_right(a, b, d - t)
        rhs = rhs + term.scale(coeff)
    p = ctx.field.p
    if p and max(c, d) >= p:
        report = _compare(name, labels, lhs, rhs, "rung size at or above the characteristic")
        if report.status == FAIL:
            report.status = REPORTED
        return report
    return _compare(name, labels, lhs, rhs)


def check_special_square_switch(ctx, a, side="right"):
    """side 'right' on (a, 1); side 'left' on (1, a)"""
    labels = (a, side)
    if not 1 <= a <= ctx.n:
        return _skip("special_square_switch", labels, "need 1 <= a <= n")
    if side == "right":
        lhs = ctx.transfer_left(a - 1, 2, 1) @ ctx.transfer_right(a, 1, 1)
        rhs = ctx.identity(a, 1).scale(a - 1)
        if a + 1 <= ctx.n:
            rhs = rhs + ctx.split(a, 1) @ ctx.merge(a, 1)
    else:
        lhs = ctx.transfer_right(2, a - 1, 1) @ ctx.transfer_left(1, a, 1)
        rhs = ctx.identity(1, a).scale(a - 1)
        if a + 1 <= ctx.n:
            rhs = rhs + ctx.split(1, a) @ ctx.merge(1, a)
    return _compare("special_square_switch", labels, lhs, rhs)


def check_snake(ctx, a):
    labels = (a,)
    if not 1 <= a <= ctx.n - 1:
        return _skip("snake", labels, "need 1 <= a <= n-1")
    n = ctx.n
    first = (ctx.tensor(ctx.dot_in(), ctx.identity(a))
             @ ctx.tensor(ctx.merge(a, n - a), ctx.identity(a))
             @ ctx.tensor(ctx.identity(a), ctx.split(n - a, a))
             @ ctx.tensor(ctx.identity(a), ctx.dot_out()))
    second = (ctx.tensor(ctx.identity(a), ctx.dot_in())
              @ ctx.tensor(ctx.identity(a), ctx.merge(n - a, a))
              @ ctx.tensor(ctx.split(a, n - a), ctx.identity(a))
              @ ctx.tensor(ctx.dot_out(), ctx.identity(a)))
    report = _compare("snake", labels, first, ctx.identity(a))
    if report.status == PASS:
        report = _compare("snake", labels, second, ctx.identity(a))
    return report


def check_univalent(ctx):
    report = _compare("univalent", (), ctx.dot_in() @ ctx.dot_out(), ctx.identity(0))
    if report.status == PASS:
        report = _compare("univalent", (), ctx.dot_out() @ ctx.dot_in(), ctx.identity(ctx.n))
    return report


def check_sl_minus(ctx, a):
    """Crossing a strand past the univalent vertex costs (-1)^a"""
    labels = (a,)
    if not 1 <= a <= ctx.n:
        return _skip("sl_minus", labels, "need 1 <= a <= n")
    sign = (-1) ** a
    lhs = ctx.tensor(ctx.dot_in(), ctx.identity(a)) @ ctx.crossing(a, ctx.n)
    rhs = ctx.tensor(ctx.identity(a), ctx.dot_in()).scale(sign)
    report = _compare("sl_minus", labels, lhs, rhs)
    if report.status == PASS:
        lhs = ctx.tensor(ctx.identity(a), ctx.dot_in()) @ ctx.crossing(ctx.n, a)
        rhs = ctx.tensor(ctx.dot_in(), ctx.identity(a)).scale(sign)
        report = _compare("sl_minus", labels, lhs, rhs)
    return report


def check_crossing_inverse(ctx, a, b):
    labels = (a, b)
    if not _in_range(ctx, a, b):
        return _skip("crossing_inverse", labels, "labels must lie in [0, n]")
    return _compare("crossing_inverse", labels,
                    ctx.crossing(b, a) @ ctx.crossing(a, b), ctx.identity(a, b))


def check_crossing_expansion(ctx):
    """Ladder-built crossing(1,1) against split∘merge − id"""
    direct = ctx.split(1, 1) @ ctx.merge(1, 1) - ctx.identity(1, 1)
    return _compare("crossing_expansion", (1, 1), ctx.crossing(1, 1), direct)


def check_split_transpose(ctx, a, b):
    labels = (a, b)
    if not _in_range(ctx, a, b) or a + b > ctx.n:
        return _skip("split_transpose", labels, "need a+b <= n")
    return _compare("split_transpose", labels, ctx.split(a, b), ctx.merge(a, b).T)


# -- suite --

def _instances(ctx, name, top):
    n = ctx.n
    span = range(1, top + 1)
    if name in ("associativity", "coassociativity"):
        check = check_associativity if name == "associativity" else check_coassociativity
        return [(check, (a, b, c)) for a, b, c in product(span, repeat=3) if a + b + c <= n]
    if name == "bigon":
        return [(check_bigon, (a, b)) for a, b in product(span, repeat=2) if a + b <= n]
    if name == "bialgebra":
        return [(check_bialgebra, (a, c, b, d)) for a, c, b, d in product(span, repeat=4)
                if a + c == b + d <= n]
    if name.startswith("square_switch_"):
        o = int(name[-1])
        full = range(0, top + 1)
        return [(check_square_switch, (a, b, c, d, o)) for a, b, c, d in product(full, repeat=4)
                if square_switch_admissible(ctx, a, b, c, d, o)]
    if name == "special_square_switch":
        return [(check_special_square_switch, (a, side)) for a in span for side in ("right", "left")]
    if name == "snake":
        return [(check_snake, (a,)) for a in span if a <= n - 1]
    if name == "univalent":
        return [(check_univalent, ())]
    if name == "sl_minus":
        return [(check_sl_minus, (a,)) for a in span]
    if name == "crossing_inverse":
        return [(check_crossing_inverse, (a, b)) for a, b in product(span, repeat=2)]
    if name == "crossing_expansion":
        return [(check_crossing_expansion, ())]
    if name == "split_transpose":
        return [(check_split_transpose, (a, b)) for a, b in product(span, repeat=2) if a + b <= n]
    raise NoSuchLabelError(f"unknown relation '{name}'")


RELATIONS = ["associativity", "coassociativity", "bigon", "bialgebra", "square_switch_1",
             "square_switch_2", "special_square_switch", "snake", "univalent", "sl_minus",
             "crossing_inverse", "crossing_expansion", "split_transpose"]


@dataclass
class SuiteReport:
    hypothesis: HypothesisRecord
    reports: list = field(default_factory=list)

    @property
    def passed(self):
        return all(r.passed for r in self.reports)

    def counts(self):
        out = {}
        for r in self.reports:
            tally = out.setdefault(r.relation, {"pass": 0, "fail": 0, "reported": 0})
            tally[{FAIL: "fail", REPORTED: "reported"}.get(r.status, "pass")] += 1
        return out

    def failures(self):
        return [r for r in self.reports if r.status == FAIL]

    def to_dict(self):
        return {"hypothesis": self.hypothesis.to_dict(), "override": self.hypothesis.override,
                "pass": self.passed, "counts": self.counts(),
                "reports": [r.to_dict() for r in self.reports]}


def run_full_suite(ctx, max_label=None, relations=None, workers=1):
    """Every admissible instance of every relation up to max_label"""
    top = ctx.n if max_label is None else min(max_label, ctx.n)
    names = RELATIONS if relations is None else list(relations)
    jobs = [job for name in names for job in _instances(ctx, name, top)]
    logger.info("running %d relation instances on %r", len(jobs), ctx)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(lambda job: job[0](ctx, *job[1]), jobs))
    else:
        reports = [check(ctx, *args) for check, args in jobs]
    suite = SuiteReport(ctx.hypothesis, reports)
    failed = suite.failures()
    if failed:
        logger.warning("%d of %d relation instances failed", len(failed), len(reports))
    else:
        logger.info("all %d relation instances passed", len(reports))
    return suite
