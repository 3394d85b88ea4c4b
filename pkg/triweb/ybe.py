# The involutive Yang-Baxter solution R̂ = crossing(1, 1) on V_1 ⊗ V_1

import logging
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from triweb.errors import ValidationError
from triweb.gf import PrimeField
from triweb.sparsemat import SparseMatrix
from triweb.webfun import PASS, RelationReport, _compare

logger = logging.getLogger(__name__)


@dataclass
class YBESolution:
    ctx: object
    matrix: SparseMatrix

    @property
    def N(self):
        return self.ctx.dim(1)

    @property
    def p(self):
        return self.ctx.field.p

    @property
    def q(self):
        return self.ctx.tp.q


def rhat(ctx):
    sol = YBESolution(ctx, ctx.crossing(1, 1))
    logger.info("R̂ on %d-dimensional V⊗V, nnz=%d", sol.N ** 2, sol.matrix.nnz)
    return sol


def rhat_closed_form(tp, p):
    """Sum of z⊗w over the ≈-class of u⊗v minus u⊗v itself when σ(u) ∼ v, else −u⊗v"""
    if tp.n != 3:
        raise ValidationError("closed form defined for n=3 only")
    field = PrimeField(p)
    points = tp.elements_of_dim(1)
    pos = {u: i for i, u in enumerate(points)}
    N = len(points)
    entries = []
    for u in points:
        for v in points:
            col = pos[u] * N + pos[v]
            x = next((w for w in tp.thirds(u, v) if tp.dim(w) == 1), None)
            if x is None:
                entries.append((col, col, -1))
                continue
            for z, w in tp.pairs_with_third(x):
                if (z, w) != (u, v) and tp.dim(z) == 1 and tp.dim(w) == 1:
                    entries.append((pos[z] * N + pos[w], col, 1))
    return SparseMatrix.from_triplets(N * N, N * N, field, entries)


def check_involutive(sol):
    return _compare("involutive", (1, 1), sol.matrix @ sol.matrix, sol.ctx.identity(1, 1))


def check_ybe(sol, negate=False):
    """(R̂⊗1)(1⊗R̂)(R̂⊗1) = (1⊗R̂)(R̂⊗1)(1⊗R̂) on V⊗V⊗V"""
    r = sol.matrix.neg() if negate else sol.matrix
    one = sol.ctx.identity(1)
    first, second = r.kron(one), one.kron(r)
    with ThreadPoolExecutor(max_workers=2) as pool:
        lhs = pool.submit(lambda: first @ second @ first)
        rhs = pool.submit(lambda: second @ first @ second)
        lhs, rhs = lhs.result(), rhs.result()
    return _compare("ybe_negated" if negate else "ybe", (1, 1, 1), lhs, rhs)


def check_closed_form(sol):
    return _compare("closed_form", (1, 1), sol.matrix, rhat_closed_form(sol.ctx.tp, sol.p))


@dataclass
class DensityReport:
    nnz: int
    total: int
    bound: Fraction
    satisfied: bool

    @property
    def density(self):
        return Fraction(self.nnz, self.total)

    def to_dict(self):
        return {"nnz": self.nnz, "total": self.total, "density": str(self.density),
                "bound": str(self.bound), "satisfied": self.satisfied}


def density_report(sol):
    """nnz / N^4 against q / N^2; strict. Not applicable (None) off planes of order >= 2"""
    N = sol.N
    total = N ** 4
    bound = Fraction(sol.q, N * N)
    satisfied = None
    if sol.ctx.tp.n == 3 and sol.q >= 2:
        satisfied = Fraction(sol.matrix.nnz, total) < bound
    return DensityReport(sol.matrix.nnz, total, bound, satisfied)


def column_census(sol):
    """Counter mapping nonzeros-per-column to the number of such columns"""
    return Counter(int(c) for c in sol.matrix.column_counts())


def check_column_structure(sol):
    """Column u⊗v has q nonzeros when σ(u) ∼ v and 1 otherwise"""
    tp = sol.ctx.tp
    points = sol.ctx.bases[1]
    counts = sol.matrix.column_counts()
    N = len(points)
    for i, u in enumerate(points):
        for j, v in enumerate(points):
            want = tp.q if tp.incident(tp.sigma[u], v) else 1
            have = int(counts[i * N + j])
            if have != want:
                return RelationReport("column_structure", (u, v), "fail",
                                      {"column": i * N + j, "nonzeros": have, "expected": want})
    return RelationReport("column_structure", (), PASS)


def signed_swap(N, field, eps1=1, eps2=-1):
    """R_{ε1ε2}: v1⊗v2 -> ε1 v2⊗v1 off the diagonal, ε2 v1⊗v1 on it"""
    entries = []
    for a in range(N):
        for b in range(N):
            if a == b:
                entries.append((a * N + a, a * N + a, eps2))
            else:
                entries.append((b * N + a, a * N + b, eps1))
    return SparseMatrix.from_triplets(N * N, N * N, field, entries)


def summary(sol):
    inv = check_involutive(sol)
    ybe = check_ybe(sol)
    ybe_neg = check_ybe(sol, negate=True)
    dens = density_report(sol)
    out = {"N": sol.N, "p": sol.p, "q": sol.q, "nnz": sol.matrix.nnz,
           "involutive": inv.status == PASS,
           "ybe": ybe.status == PASS and ybe_neg.status == PASS,
           "density_bound_ok": dens.satisfied}
    if sol.ctx.tp.n == 3:
        out["closed_form"] = check_closed_form(sol).status == PASS
    if sol.q == 1:
        out["signed_swap"] = sol.matrix == signed_swap(sol.N, sol.ctx.field)
    return out
