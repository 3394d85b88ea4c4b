# Prime fields and small Galois fields GF(p^k)
#
# Prime field elements are plain ints in [0, p); characteristic 0 stands for
# the rationals and uses fractions.Fraction. Galois field elements are
# coefficient tuples (c_0, ..., c_{k-1}) of a residue modulo a monic
# irreducible polynomial, lowest degree first.

import logging
from dataclasses import dataclass
from fractions import Fraction

from sympy import divisors, isprime

from triweb.errors import NonInvertibleError, ValidationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PrimeField:
    """F_p for prime p, or the rationals when p == 0"""
    p: int

    def __post_init__(self):
        if self.p < 0 or (self.p > 0 and not isprime(self.p)):
            raise ValidationError(f"characteristic must be 0 or a prime, got {self.p}")

    @property
    def characteristic(self):
        return self.p

    def __str__(self):
        return f"F_{self.p}" if self.p else "Q"

    def reduce(self, x):
        if self.p:
            return int(x) % self.p
        return Fraction(x)

    @property
    def zero(self):
        return self.reduce(0)

    @property
    def one(self):
        return self.reduce(1)

    def add(self, x, y):
        return self.reduce(x + y)

    def sub(self, x, y):
        return self.reduce(x - y)

    def neg(self, x):
        return self.reduce(-x)

    def mul(self, x, y):
        return self.reduce(x * y)

    def inv(self, x):
        x = self.reduce(x)
        if x == 0:
            raise NonInvertibleError(f"0 has no inverse in {self}")
        if self.p:
            return pow(x, -1, self.p)
        return 1 / x

    def is_zero(self, x):
        return self.reduce(x) == 0

    def elements(self):
        if not self.p:
            raise ValidationError("the rationals are not enumerable here")
        return range(self.p)


def prime_field(p):
    return PrimeField(p)


# -- polynomials over F_p (coefficient tuples, lowest degree first) --------

def poly_trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def poly_mul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return poly_trim(out)


def poly_mod(a, m, p):
    """Remainder of a modulo the monic polynomial m"""
    a = list(poly_trim(a))
    k = len(m) - 1
    while len(a) > k:
        lead = a[-1]
        if lead:
            shift = len(a) - 1 - k
            for i, c in enumerate(m):
                a[shift + i] = (a[shift + i] - lead * c) % p
        a.pop()
        a = list(poly_trim(a))
    return tuple(a)


def monic_polynomials(p, degree):
    """Monic polynomials of the given degree in increasing base-p value"""
    for value in range(p ** degree):
        coeffs = []
        for _ in range(degree):
            coeffs.append(value % p)
            value //= p
        yield tuple(coeffs) + (1,)


def is_irreducible(m, p):
    """Trial division by every monic polynomial of degree 1..deg/2"""
    m = poly_trim(m)
    degree = len(m) - 1
    if degree < 1 or m[-1] != 1:
        return False
    for d in range(1, degree // 2 + 1):
        for f in monic_polynomials(p, d):
            if not poly_mod(m, f, p):
                return False
    return True


def smallest_irreducible(p, k):
    for m in monic_polynomials(p, k):
        if is_irreducible(m, p):
            return m
    raise ValidationError(f"no irreducible polynomial of degree {k} over F_{p}")


def format_poly(m):
    terms = []
    for i in range(len(m) - 1, -1, -1):
        c = m[i]
        if not c:
            continue
        mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
        if not mono:
            terms.append(str(c))
        else:
            terms.append(mono if c == 1 else f"{c}{mono}")
    return " + ".join(terms) or "0"


class GaloisField:
    """GF(p^k) as F_p[x] modulo a monic irreducible polynomial"""

    def __init__(self, p, k, modulus=None):
        if not isprime(p):
            raise ValidationError(f"characteristic must be prime, got {p}")
        if k < 1:
            raise ValidationError(f"degree must be at least 1, got {k}")
        if modulus is None:
            modulus = smallest_irreducible(p, k)
        else:
            modulus = tuple(int(c) % p for c in modulus)
            if len(poly_trim(modulus)) != k + 1 or modulus[-1] != 1:
                raise ValidationError(f"modulus must be monic of degree {k}")
            if not is_irreducible(modulus, p):
                raise ValidationError(f"modulus {format_poly(modulus)} is reducible over F_{p}")
        self.p = p
        self.k = k
        self.order = p ** k
        self.modulus = tuple(modulus)
        self._primitive = None
        logger.debug("GF(%d^%d) with modulus %s", p, k, format_poly(self.modulus))

    def __repr__(self):
        return f"GaloisField({self.p}, {self.k}, modulus={format_poly(self.modulus)})"

    def __eq__(self, other):
        return (isinstance(other, GaloisField) and self.p == other.p
                and self.k == other.k and self.modulus == other.modulus)

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    # -- element encoding --

    def _norm(self, coeffs):
        coeffs = poly_mod(coeffs, self.modulus, self.p)
        return tuple(coeffs) + (0,) * (self.k - len(coeffs))

    @property
    def zero(self):
        return (0,) * self.k

    @property
    def one(self):
        return (1,) + (0,) * (self.k - 1)

    def element(self, i):
        """Element whose base-p digits (lowest first) are the coefficients"""
        if not 0 <= i < self.order:
            raise ValidationError(f"element index {i} outside [0, {self.order})")
        coeffs = []
        for _ in range(self.k):
            coeffs.append(i % self.p)
            i //= self.p
        return tuple(coeffs)

    def index(self, x):
        return sum(c * self.p ** i for i, c in enumerate(x))

    def elements(self):
        return [self.element(i) for i in range(self.order)]

    def from_coeffs(self, coeffs):
        return self._norm(tuple(int(c) % self.p for c in coeffs))

    # -- arithmetic --

    def add(self, x, y):
        return tuple((a + b) % self.p for a, b in zip(x, y))

    def sub(self, x, y):
        return tuple((a - b) % self.p for a, b in zip(x, y))

    def neg(self, x):
        return tuple(-a % self.p for a in x)

    def mul(self, x, y):
        return self._norm(poly_mul(poly_trim(x), poly_trim(y), self.p))

    def pow(self, x, e):
        if e < 0:
            return self.pow(self.inv(x), -e)
        result = self.one
        base = x
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, x):
        if x == self.zero:
            raise NonInvertibleError(f"0 has no inverse in GF({self.order})")
        return self.pow(x, self.order - 2)

    def order_of(self, x):
        """Multiplicative order of a nonzero element"""
        if x == self.zero:
            raise NonInvertibleError("0 has no multiplicative order")
        for d in divisors(self.order - 1):
            if self.pow(x, d) == self.one:
                return d
        return self.order - 1

    def primitive_element(self):
        """Smallest element (by index) of order p^k - 1"""
        if self._primitive is None:
            for i in range(1, self.order):
                x = self.element(i)
                if self.order_of(x) == self.order - 1:
                    self._primitive = x
                    break
            logger.debug("primitive element of GF(%d): %s", self.order, self._primitive)
        return self._primitive

    def frobenius(self, x):
        return self.pow(x, self.p)

    def in_subfield(self, x, m):
        """True iff x lies in the subfield of order p^m"""
        return self.pow(x, self.p ** m) == x

    def trace(self, x, m):
        """Trace onto the subfield of order p^m: sum of x^{(p^m)^i}, i < k/m"""
        if m < 1 or self.k % m:
            raise ValidationError(f"no subfield of degree {m} in GF({self.p}^{self.k})")
        q = self.p ** m
        total = self.zero
        term = x
        for _ in range(self.k // m):
            total = self.add(total, term)
            term = self.pow(term, q)
        return total

    def trace_over_subfield(self, x):
        """Tr(x) = x + x^q + x^{q^2} for GF(q^3) over GF(q)"""
        if self.k % 3:
            raise ValidationError(f"GF({self.p}^{self.k}) is not a cubic extension")
        return self.trace(x, self.k // 3)


def gf_new(p, k, modulus=None):
    return GaloisField(p, k, modulus)
