"""Arithmetic in small finite fields F_q, q = p^r, and unitriangular matrices.

Elements are residues of F_p[t] modulo a fixed monic irreducible polynomial of
degree r.  Coefficient vectors are little-endian: (c0, c1, ..., c_{r-1}) stands
for c0 + c1*t + ... + c_{r-1}*t^{r-1}.  Polynomials use the same convention
with the leading coefficient last.

Two canonical choices make every run reproducible:

* the modulus is the lexicographically smallest monic irreducible polynomial
  of degree r, comparing coefficient vectors (c0, ..., c_{r-1}) from the left;
* the distinguished generator of the multiplicative group is the
  lexicographically smallest element of multiplicative order q - 1 under the
  same coefficient ordering.

All arithmetic is exact.  Field sizes are capped at q <= 2**20 and full
enumerations of matrix groups at 10**6 elements; both caps fail loudly.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .errors import InputError, ResourceGuardError

Q_CAP = 2 ** 20
ENUMERATION_CAP = 10 ** 6


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n, ascending."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class PrimePower:
    p: int
    r: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise InputError(f"p = {self.p} is not prime")
        if self.r < 1:
            raise InputError(f"r = {self.r} must be positive")
        if self.p ** self.r > Q_CAP:
            raise ResourceGuardError(
                f"q = {self.p}^{self.r} exceeds the field size cap {Q_CAP}")

    @property
    def q(self) -> int:
        return self.p ** self.r


# ---------------------------------------------------------------------------
# dense little-endian polynomial arithmetic over F_p
# ---------------------------------------------------------------------------

def _poly_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return out


def _poly_rem(a, b, p):
    """Remainder of a modulo monic b."""
    a = list(a)
    db = len(b) - 1
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] % p
        if c:
            a[i] = 0
            for j in range(db):
                a[i - db + j] = (a[i - db + j] - c * b[j]) % p
    return a[:db] if db else []


def _monic_polys(p, degree):
    for lower in itertools.product(range(p), repeat=degree):
        yield lower + (1,)


def _is_irreducible(f, p) -> bool:
    deg = len(f) - 1
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for g in _monic_polys(p, d):
            if not any(_poly_rem(f, g, p)):
                return False
    return True


def find_irreducible(p: int, r: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree r over F_p.

    For r = 1 this is the polynomial t itself, (0, 1).
    """
    PrimePower(p, r)
    for f in _monic_polys(p, r):
        if _is_irreducible(f, p):
            return f
    raise AssertionError("no irreducible polynomial found")  # unreachable


# ---------------------------------------------------------------------------
# field context and elements
# ---------------------------------------------------------------------------

class Fq:
    """Field context F_p[t] / (modulus), with canonical modulus by default."""

    def __init__(self, p: int, r: int, modulus=None):
        self.pp = PrimePower(p, r)
        self.p = p
        self.r = r
        self.q = self.pp.q
        if modulus is None:
            modulus = find_irreducible(p, r)
        modulus = tuple(c % p for c in modulus)
        if len(modulus) != r + 1 or modulus[-1] != 1:
            raise InputError("modulus must be monic of degree r")
        if not _is_irreducible(modulus, p):
            raise InputError(f"modulus {modulus} is reducible over F_{p}")
        self.modulus = modulus
        self._powers_of_t = None

    def __eq__(self, other):
        return (isinstance(other, Fq)
                and (self.p, self.r, self.modulus) == (other.p, other.r, other.modulus))

    def __hash__(self):
        return hash((self.p, self.r, self.modulus))

    def __repr__(self):
        return f"Fq({self.p}, {self.r})"

    def elem(self, coeffs) -> "FqElement":
        coeffs = tuple(c % self.p for c in coeffs)
        if len(coeffs) > self.r:
            coeffs = tuple(_poly_rem(coeffs, self.modulus, self.p))
        coeffs = coeffs + (0,) * (self.r - len(coeffs))
        return FqElement(self, coeffs)

    def from_int(self, k: int) -> "FqElement":
        """Element number k, 0 <= k < q, little-endian base-p digits."""
        if not 0 <= k < self.q:
            raise InputError(f"element index {k} out of range for q = {self.q}")
        digits = []
        for _ in range(self.r):
            digits.append(k % self.p)
            k //= self.p
        return FqElement(self, tuple(digits))

    def zero(self) -> "FqElement":
        return FqElement(self, (0,) * self.r)

    def one(self) -> "FqElement":
        return FqElement(self, (1,) + (0,) * (self.r - 1))

    def gen_t(self) -> "FqElement":
        """The residue class of t (zero when r = 1)."""
        if self.r == 1:
            return self.zero()
        return FqElement(self, (0, 1) + (0,) * (self.r - 2))

    def elements(self):
        """All q elements in lexicographic coefficient order."""
        for coeffs in itertools.product(range(self.p), repeat=self.r):
            yield FqElement(self, coeffs)

    # coefficient-tuple arithmetic; FqElement operators delegate here
    def _add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def _neg(self, a):
        return tuple((-x) % self.p for x in a)

    def _mul(self, a, b):
        prod = _poly_mul(a, b, self.p)
        red = _poly_rem(prod, self.modulus, self.p)
        return tuple(red) + (0,) * (self.r - len(red))

    def _pow(self, a, e):
        if e < 0:
            a = self._inv(a)
            e = -e
        result = self.one().coeffs
        base = a
        while e:
            if e & 1:
                result = self._mul(result, base)
            base = self._mul(base, base)
            e >>= 1
        return result

    def _inv(self, a):
        if not any(a):
            raise ZeroDivisionError("inverse of zero")
        return self._pow(a, self.q - 2)

    def multiplicative_order(self, e: "FqElement") -> int:
        if e.is_zero():
            raise InputError("zero has no multiplicative order")
        order = self.q - 1
        for ell in prime_factors(self.q - 1):
            while order % ell == 0 and e ** (order // ell) == self.one():
                order //= ell
        return order


@dataclass(frozen=True)
class FqElement:
    field: Fq
    coeffs: tuple[int, ...]

    def _check(self, other):
        if not isinstance(other, FqElement) or other.field != self.field:
            raise InputError("operands belong to different fields")

    def __add__(self, other):
        self._check(other)
        return FqElement(self.field, self.field._add(self.coeffs, other.coeffs))

    def __sub__(self, other):
        self._check(other)
        return FqElement(self.field,
                         self.field._add(self.coeffs, self.field._neg(other.coeffs)))

    def __neg__(self):
        return FqElement(self.field, self.field._neg(self.coeffs))

    def __mul__(self, other):
        self._check(other)
        return FqElement(self.field, self.field._mul(self.coeffs, other.coeffs))

    def __pow__(self, e: int):
        return FqElement(self.field, self.field._pow(self.coeffs, e))

    def inverse(self):
        return FqElement(self.field, self.field._inv(self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return any(self.coeffs)

    def to_int(self) -> int:
        k = 0
        for c in reversed(self.coeffs):
            k = k * self.field.p + c
        return k

    def __repr__(self):
        return f"FqElement{self.coeffs}"


def multiplicative_generator(field: Fq) -> FqElement:
    """Lexicographically smallest element of multiplicative order q - 1."""
    factors = prime_factors(field.q - 1)
    one = field.one()
    for e in field.elements():
        if e.is_zero():
            continue
        if all(e ** ((field.q - 1) // ell) != one for ell in factors):
            return e
    raise AssertionError("no generator found")  # unreachable


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FqMatrix:
    field: Fq
    rows: tuple[tuple[FqElement, ...], ...]

    def __post_init__(self):
        n = len(self.rows)
        for row in self.rows:
            if len(row) != n:
                raise InputError("matrix must be square")
            for e in row:
                if e.field != self.field:
                    raise InputError("matrix entries from a different field")

    @classmethod
    def identity(cls, field: Fq, n: int) -> "FqMatrix":
        one, zero = field.one(), field.zero()
        return cls(field, tuple(tuple(one if i == j else zero for j in range(n))
                                for i in range(n)))

    @classmethod
    def from_ints(cls, field: Fq, rows) -> "FqMatrix":
        return cls(field, tuple(tuple(field.from_int(v % field.q) for v in row)
                                for row in rows))

    @property
    def n(self) -> int:
        return len(self.rows)

    def entry(self, i: int, j: int) -> FqElement:
        return self.rows[i][j]

    def __mul__(self, other: "FqMatrix") -> "FqMatrix":
        if not isinstance(other, FqMatrix) or other.field != self.field \
                or other.n != self.n:
            raise InputError("matrix product needs matching shapes and fields")
        f = self.field
        n = self.n
        cols = tuple(zip(*other.rows))
        out = []
        for row in self.rows:
            rc = []
            for col in cols:
                acc = f.zero().coeffs
                for a, b in zip(row, col):
                    acc = f._add(acc, f._mul(a.coeffs, b.coeffs))
                rc.append(FqElement(f, acc))
            out.append(tuple(rc))
        return FqMatrix(f, tuple(out))

    def to_int_rows(self) -> list[list[int]]:
        return [[e.to_int() for e in row] for row in self.rows]

    def is_unitriangular(self) -> bool:
        one, zero = self.field.one(), self.field.zero()
        for i in range(self.n):
            if self.rows[i][i] != one:
                return False
            for j in range(i):
                if self.rows[i][j] != zero:
                    return False
        return True


def mat_pow(m: FqMatrix, e: int) -> FqMatrix:
    """m ** e by repeated squaring, e >= 0."""
    if e < 0:
        raise InputError("negative matrix powers are not supported")
    result = FqMatrix.identity(m.field, m.n)
    base = m
    while e:
        if e & 1:
            result = result * base
        base = base * base
        e >>= 1
    return result


def unitriangular_elements(n: int, field: Fq, mode: str = "all",
                           count: int | None = None, seed: int = 0):
    """Upper unitriangular n x n matrices over the field.

    mode "all" enumerates the whole group in odometer order (the (0,1) entry
    moves fastest, positions in row-major order); the group order is capped at
    ENUMERATION_CAP.  mode "sample" draws `count` matrices from the seeded RNG;
    repeats are possible, the stream is reproducible.
    """
    if n < 1:
        raise InputError("matrix size must be at least 1")
    positions = [(i, j) for i in range(n) for j in range(i + 1, n)]
    q = field.q

    def build(values):
        rows = [[field.one() if i == j else field.zero() for j in range(n)]
                for i in range(n)]
        for (i, j), v in zip(positions, values):
            rows[i][j] = v
        return FqMatrix(field, tuple(tuple(row) for row in rows))

    if mode == "all":
        total = q ** len(positions)
        if total > ENUMERATION_CAP:
            raise ResourceGuardError(
                f"group order {total} exceeds the enumeration cap {ENUMERATION_CAP}")
        for k in range(total):
            values = []
            kk = k
            for _ in positions:
                values.append(field.from_int(kk % q))
                kk //= q
            yield build(values)
    elif mode == "sample":
        if count is None or count < 1:
            raise InputError("sample mode needs a positive count")
        rng = random.Random(seed)
        for _ in range(count):
            yield build([field.from_int(rng.randrange(q)) for _ in positions])
    else:
        raise InputError(f"unknown mode {mode!r}")
