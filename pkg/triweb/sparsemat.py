# Exact sparse matrices over F_p or Q
#
# Coordinate storage in numpy arrays, kept canonical: entries sorted by
# (row, col), no duplicate positions, no stored zeros. Values are int64
# residues in [0, p) for p < 2^31, an object array of Python ints for larger
# primes and an object array of Fractions for p == 0.

from fractions import Fraction

import numpy as np

from triweb.errors import ValidationError
from triweb.gf import PrimeField


# residues below this bound multiply without leaving int64
_INT64_PRIME_BOUND = 2 ** 31


def _as_field(field):
    return field if isinstance(field, PrimeField) else PrimeField(int(field))


def _small(field):
    return 0 < field.p < _INT64_PRIME_BOUND


def _integral(field, v):
    x = Fraction(v)
    if x.denominator != 1:
        raise ValidationError(f"entry {v} is not an integer residue in {field}")
    return int(x)


def _values(field, vals):
    if _small(field):
        return np.fromiter((_integral(field, v) % field.p for v in vals), dtype=np.int64)
    out = np.empty(len(vals), dtype=object)
    for n, v in enumerate(vals):
        out[n] = _integral(field, v) % field.p if field.p else Fraction(v)
    return out


def _reduce(field, v):
    if _small(field):
        return np.mod(v, field.p).astype(np.int64)
    out = np.empty(len(v), dtype=object)
    for n, x in enumerate(v):
        out[n] = int(x) % field.p if field.p else Fraction(x)
    return out


def _nonzero(field, v):
    if _small(field):
        return v != 0
    return np.fromiter((x != 0 for x in v), dtype=bool, count=len(v))


class SparseMatrix:
    """Immutable exact sparse matrix"""

    __slots__ = ("rows", "cols", "field", "_i", "_j", "_v")

    def __init__(self, rows, cols, field, i, j, v):
        # callers pass canonical arrays; use the constructors below
        self.rows = int(rows)
        self.cols = int(cols)
        self.field = field
        for arr in (i, j, v):
            arr.flags.writeable = False
        self._i, self._j, self._v = i, j, v

    # -- constructors --

    @classmethod
    def _canonical(cls, rows, cols, field, i, j, v):
        if len(i) == 0:
            return cls._empty(rows, cols, field)
        v = _reduce(field, v) if field.p else v
        key = i.astype(np.int64) * np.int64(cols) + j.astype(np.int64)
        order = np.argsort(key, kind="stable")
        key, v = key[order], v[order]
        uniq, start = np.unique(key, return_index=True)
        sums = _reduce(field, np.add.reduceat(v, start))
        keep = _nonzero(field, sums)
        uniq, sums = uniq[keep], sums[keep]
        return cls(rows, cols, field, uniq // cols, uniq % cols, sums)

    @classmethod
    def _empty(cls, rows, cols, field):
        v = np.zeros(0, dtype=np.int64 if _small(field) else object)
        return cls(rows, cols, field, np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64), v)

    @classmethod
    def from_triplets(cls, rows, cols, field, triplets):
        """Duplicates are summed, zeros dropped"""
        field = _as_field(field)
        if rows < 0 or cols < 0:
            raise ValidationError(f"negative shape {rows}x{cols}")
        triplets = list(triplets)
        if not triplets:
            return cls._empty(rows, cols, field)
        i = np.fromiter((t[0] for t in triplets), dtype=np.int64, count=len(triplets))
        j = np.fromiter((t[1] for t in triplets), dtype=np.int64, count=len(triplets))
        bad = (i < 0) | (i >= rows) | (j < 0) | (j >= cols)
        if bad.any():
            n = int(np.argmax(bad))
            raise ValidationError(f"entry ({i[n]}, {j[n]}) outside {rows}x{cols}")
        return cls._canonical(rows, cols, field, i, j, _values(field, [t[2] for t in triplets]))

    @classmethod
    def zeros(cls, rows, cols, field):
        return cls._empty(rows, cols, _as_field(field))

    @classmethod
    def identity(cls, n, field):
        field = _as_field(field)
        idx = np.arange(n, dtype=np.int64)
        return cls(n, n, field, idx, idx.copy(), _values(field, [1] * n))

    # -- inspection --

    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def nnz(self):
        return len(self._v)

    def entries(self):
        for a, b, v in zip(self._i.tolist(), self._j.tolist(), self._v.tolist()):
            yield a, b, v

    def get(self, i, j):
        key = self._i * self.cols + self._j
        target = i * self.cols + j
        n = int(np.searchsorted(key, target))
        if n < len(key) and key[n] == target:
            return self._v[n] if not self.field.p else int(self._v[n])
        return self.field.zero

    def column_counts(self):
        return np.bincount(self._j, minlength=self.cols)

    def to_dense(self):
        out = [[self.field.zero] * self.cols for _ in range(self.rows)]
        for a, b, v in self.entries():
            out[a][b] = v
        return out

    def __repr__(self):
        return f"SparseMatrix({self.rows}x{self.cols} over {self.field}, nnz={self.nnz})"

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return (self.shape == other.shape and self.field == other.field
                and np.array_equal(self._i, other._i) and np.array_equal(self._j, other._j)
                and all(a == b for a, b in zip(self._v.tolist(), other._v.tolist())))

    __hash__ = None

    # -- algebra --

    def _check_field(self, other):
        if self.field != other.field:
            raise ValidationError(f"field mismatch: {self.field} vs {other.field}")

    def matmul(self, other):
        self._check_field(other)
        if self.cols != other.rows:
            raise ValidationError(f"shape mismatch: {self.shape} @ {other.shape}")
        if self.nnz == 0 or other.nnz == 0:
            return SparseMatrix._empty(self.rows, other.cols, self.field)
        # join self's column index against other's row index; other is row-sorted
        counts = np.bincount(other._i, minlength=other.rows)
        offsets = np.concatenate(([0], np.cumsum(counts)[:-1]))
        c = counts[self._j]
        total = int(c.sum())
        if total == 0:
            return SparseMatrix._empty(self.rows, other.cols, self.field)
        left = np.repeat(np.arange(self.nnz), c)
        start = np.cumsum(c) - c
        right = np.arange(total) + np.repeat(offsets[self._j] - start, c)
        return SparseMatrix._canonical(
            self.rows, other.cols, self.field,
            self._i[left], other._j[right], self._v[left] * other._v[right])

    def add(self, other):
        self._check_field(other)
        if self.shape != other.shape:
            raise ValidationError(f"shape mismatch: {self.shape} + {other.shape}")
        return SparseMatrix._canonical(
            self.rows, self.cols, self.field,
            np.concatenate((self._i, other._i)), np.concatenate((self._j, other._j)),
            np.concatenate((self._v, other._v)))

    def scale(self, c):
        c = self.field.reduce(c)
        if c == 0 or self.nnz == 0:
            return SparseMatrix._empty(self.rows, self.cols, self.field)
        return SparseMatrix._canonical(self.rows, self.cols, self.field,
                                       self._i, self._j, self._v * c)

    def neg(self):
        return self.scale(-1)

    def sub(self, other):
        return self.add(other.neg())

    def transpose(self):
        return SparseMatrix._canonical(self.cols, self.rows, self.field,
                                       self._j, self._i, self._v.copy())

    @property
    def T(self):
        return self.transpose()

    def kron(self, other):
        """Index convention (i_A * B.rows + i_B, j_A * B.cols + j_B)"""
        self._check_field(other)
        rows, cols = self.rows * other.rows, self.cols * other.cols
        if self.nnz == 0 or other.nnz == 0:
            return SparseMatrix._empty(rows, cols, self.field)
        i = (self._i[:, None] * other.rows + other._i[None, :]).ravel()
        j = (self._j[:, None] * other.cols + other._j[None, :]).ravel()
        v = np.multiply.outer(self._v, other._v).ravel()
        return SparseMatrix._canonical(rows, cols, self.field, i, j, v)

    __matmul__ = matmul
    __add__ = add
    __sub__ = sub
    __neg__ = neg

    def __rmul__(self, c):
        return self.scale(c)

    # -- coordinate-list text format --

    def to_coo_text(self):
        lines = [f"{self.rows} {self.cols} {self.field.p} {self.nnz}"]
        lines.extend(f"{a} {b} {v}" for a, b, v in self.entries())
        return "\n".join(lines) + "\n"

    @classmethod
    def from_coo_text(cls, text):
        lines = [ln.split() for ln in text.splitlines() if ln.strip()]
        if not lines or len(lines[0]) != 4:
            raise ValidationError("coordinate header must be 'rows cols characteristic nnz'")
        rows, cols, p, nnz = (int(x) for x in lines[0])
        body = lines[1:]
        if len(body) != nnz:
            raise ValidationError(f"header announces {nnz} entries, found {len(body)}")
        return cls.from_triplets(rows, cols, p,
                                 [(int(a), int(b), Fraction(v)) for a, b, v in body])


def zeros(rows, cols, field):
    return SparseMatrix.zeros(rows, cols, field)


def identity(n, field):
    return SparseMatrix.identity(n, field)


def from_triplets(rows, cols, field, triplets):
    return SparseMatrix.from_triplets(rows, cols, field, triplets)


def matmul(a, b):
    return a.matmul(b)


def add(a, b):
    return a.add(b)


def scale(c, a):
    return a.scale(c)


def transpose(a):
    return a.transpose()


def kron(a, b):
    return a.kron(b)


def kron_all(*mats):
    out = mats[0]
    for m in mats[1:]:
        out = out.kron(m)
    return out


def density_stats(a):
    """(nnz, rows*cols, max nonzeros in any column)"""
    counts = a.column_counts()
    return a.nnz, a.rows * a.cols, int(counts.max()) if len(counts) else 0


def first_difference(a, b):
    """First differing (row, col, a_value, b_value) in sorted order, or None"""
    if a.shape != b.shape:
        raise ValidationError(f"shape mismatch: {a.shape} vs {b.shape}")
    diff = a.sub(b)
    if diff.nnz == 0:
        return None
    r, c, _ = next(diff.entries())
    return r, c, a.get(r, c), b.get(r, c)
