# Planar difference sets: verification, standard form, Singer construction
# and the triangle presentation attached to a standard difference set

import logging
from collections import Counter
from dataclasses import dataclass, field

from sympy import factorint, isprime

from triweb.errors import ValidationError
from triweb.gf import GaloisField

logger = logging.getLogger(__name__)


def prime_power(q):
    """(p, m) with q = p^m, or ValidationError"""
    if q < 2:
        raise ValidationError(f"{q} is not a prime power")
    factors = factorint(q)
    if len(factors) != 1:
        raise ValidationError(f"{q} is not a prime power")
    (p, m), = factors.items()
    return p, m


@dataclass(frozen=True)
class DifferenceSet:
    N: int
    q: int
    D: tuple

    def __post_init__(self):
        if self.N != self.q * self.q + self.q + 1:
            raise ValidationError(f"N = {self.N} is not q^2 + q + 1 for q = {self.q}")
        if len({d % self.N for d in self.D}) != self.q + 1:
            raise ValidationError(f"difference set needs {self.q + 1} distinct residues")
        object.__setattr__(self, "D", tuple(sorted(d % self.N for d in self.D)))

    def to_dict(self):
        return {"N": self.N, "q": self.q, "D": list(self.D)}

    @classmethod
    def from_dict(cls, data):
        try:
            N, q, D = int(data["N"]), int(data["q"]), tuple(int(d) for d in data["D"])
        except (KeyError, TypeError, ValueError) as e:
            raise ValidationError(f"difference set record needs N, q and D: {e}") from e
        return cls(N, q, D)


@dataclass
class DifferenceReport:
    N: int
    D: tuple
    valid: bool
    # residues hit other than exactly once by d1 - d2, d1 != d2
    collisions: dict = field(default_factory=dict)

    def __bool__(self):
        return self.valid

    def to_dict(self):
        return {"N": self.N, "D": list(self.D), "valid": self.valid,
                "collisions": {str(r): c for r, c in sorted(self.collisions.items())}}


def verify_planar_difference_set(N, D):
    """Every nonzero residue mod N is exactly one difference of distinct members"""
    if not isinstance(N, int) or N < 1:
        raise ValidationError(f"modulus N must be a positive integer, got {N!r}")
    residues = [d % N for d in D]
    counts = Counter((a - b) % N for i, a in enumerate(residues)
                     for j, b in enumerate(residues) if i != j)
    collisions = {r: counts.get(r, 0) for r in range(1, N) if counts.get(r, 0) != 1}
    if counts.get(0):
        collisions[0] = counts[0]
    valid = not collisions and len(set(residues)) == len(residues)
    return DifferenceReport(N, tuple(residues), valid, collisions)


def standardize(N, q, D):
    """The unique translate s + D with zero sum mod N"""
    if not verify_planar_difference_set(N, D):
        raise ValidationError(f"{list(D)} is not a planar difference set mod {N}")
    dset = DifferenceSet(N, q, tuple(D))
    s0 = -pow(q + 1, -1, N) * sum(dset.D) % N
    return DifferenceSet(N, q, tuple((d + s0) % N for d in dset.D))


def is_standard(N, p, D):
    """p·D = D and sum(D) = 0 mod N"""
    if not isprime(p):
        raise ValidationError(f"{p} is not prime")
    dset = {d % N for d in D}
    return {p * d % N for d in dset} == dset and sum(dset) % N == 0


def singer_difference_set(q, modulus=None):
    """Exponents i mod N with Tr(g^i) = 0 in GF(q^3), in standard form"""
    p, m = prime_power(q)
    field_ = GaloisField(p, 3 * m, modulus)
    g = field_.primitive_element()
    N = q * q + q + 1
    D = []
    x = field_.one
    for i in range(N):
        if field_.trace(x, m) == field_.zero:
            D.append(i)
        x = field_.mul(x, g)
    dset = standardize(N, q, D)
    if not is_standard(N, p, dset.D):
        raise ValidationError(f"Singer set for q = {q} failed to standardise")
    logger.info("Singer difference set for q=%d: %s", q, list(dset.D))
    return dset


def approx_invariant(N, q, m, n):
    """(m, n) ≈ (m', n') iff both pairs share this residue, the common third entry"""
    return (m + (q + 1) * (n - m)) % N


def presentation_from_difference_set(N, q, D):
    """Triangle presentation on the plane of a standard difference set"""
    from triweb.geometry import plane_from_difference_set
    from triweb.presentation import build

    p, _ = prime_power(q)
    dset = DifferenceSet(N, q, tuple(D))
    if not is_standard(N, p, dset.D):
        raise ValidationError(f"{list(dset.D)} is not in standard form for p = {p}; "
                              "call standardize first")
    geom = plane_from_difference_set(N, dset.D)
    sigma = {}
    for m in range(N):
        sigma[m] = N + m
        sigma[N + m] = m
    point_triples = {(m, (m + d) % N, (m + (q + 1) * d) % N) for m in range(N) for d in dset.D}
    triples = set(point_triples)
    triples.update((sigma[w], sigma[v], sigma[u]) for u, v, w in point_triples)
    return build(geom, sigma, triples, n=3)
