"""Exact finite field arithmetic GF(p^e).

Elements are plain integers in [0, q) whose base-p digits (little-endian)
are the coefficients of the residue polynomial in the modulus basis, so
the wire encoding of an element is just its integer value.  For prime
fields this collapses to arithmetic mod p.

A built-in table supplies Conway polynomials for every prime power
q <= 32; larger extension fields require an explicit modulus (or see
:class:`ExtensionField`, which finds one deterministically over an
arbitrary base field).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

# Conway polynomials for p^e <= 32, e >= 2, as coefficient lists with the
# constant term first (the degree-e leading coefficient 1 included).
_CONWAY: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1, 1),             # x^2 + x + 1
    (2, 3): (1, 1, 0, 1),          # x^3 + x + 1
    (2, 4): (1, 1, 0, 0, 1),       # x^4 + x + 1
    (2, 5): (1, 0, 1, 0, 0, 1),    # x^5 + x^2 + 1
    (3, 2): (2, 2, 1),             # x^2 + 2x + 2
    (3, 3): (1, 2, 0, 1),          # x^3 + 2x + 1
    (5, 2): (2, 4, 1),             # x^2 + 4x + 2
}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class GF:
    """The field GF(p^e) with q = p^e elements encoded as ints in [0, q).

    Construction validates that ``p`` is prime and that the modulus is a
    monic irreducible polynomial of degree ``e`` over GF(p).
    """

    __slots__ = ("p", "e", "q", "modulus", "_mul_table", "_inv_table")

    def __init__(self, p: int, e: int, modulus: tuple[int, ...]):
        if not is_prime(p):
            raise ValueError(f"p={p} is not prime")
        if e < 1:
            raise ValueError(f"extension degree e={e} must be >= 1")
        modulus = tuple(c % p for c in modulus)
        if len(modulus) != e + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree e")
        self.p = p
        self.e = e
        self.q = p**e
        self.modulus = modulus
        if e > 1 and not _poly_is_irreducible_mod_p(modulus, p):
            raise ValueError(f"modulus {modulus} is reducible over GF({p})")
        self._mul_table: list[int] | None = None
        self._inv_table: list[int] | None = None

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.e})" if self.e > 1 else f"GF({self.p})"

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, GF)
            and self.p == other.p
            and self.e == other.e
            and self.modulus == other.modulus
        )

    def __hash__(self) -> int:
        return hash((self.p, self.e, self.modulus))

    # -- digit helpers ----------------------------------------------------

    def digits(self, a: int) -> list[int]:
        """Base-p digits of a, little-endian, padded to length e."""
        out = []
        for _ in range(self.e):
            out.append(a % self.p)
            a //= self.p
        return out

    def from_digits(self, ds) -> int:
        a = 0
        for c in reversed(list(ds)):
            a = a * self.p + (c % self.p)
        return a

    # -- arithmetic --------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        da, db = self.digits(a), self.digits(b)
        return self.from_digits((x + y) % self.p for x, y in zip(da, db))

    def neg(self, a: int) -> int:
        if self.e == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        return self.from_digits((-x) % self.p for x in self.digits(a))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self._mul_table is not None:
            return self._mul_table[a * self.q + b]
        return self._mul_raw(a, b)

    def _mul_raw(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a * b) % self.p
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * self.e - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % self.p
        # reduce by the monic modulus
        for i in range(len(prod) - 1, self.e - 1, -1):
            c = prod[i]
            if c:
                prod[i] = 0
                for j in range(self.e):
                    prod[i - self.e + j] = (prod[i - self.e + j] - c * self.modulus[j]) % self.p
        return self.from_digits(prod[: self.e])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative inverse")
        if self._inv_table is not None:
            return self._inv_table[a]
        if self.e == 1:
            return pow(a, self.p - 2, self.p)
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        r = 1
        base = a
        while n:
            if n & 1:
                r = self.mul(r, base)
            base = self.mul(base, base)
            n >>= 1
        return r

    def elements(self) -> range:
        return range(self.q)

    def build_tables(self) -> None:
        """Precompute dense mul/inv tables; worthwhile for q <= 256."""
        if self._mul_table is not None:
            return
        q = self.q
        table = [0] * (q * q)
        for a in range(q):
            for b in range(a, q):
                v = self._mul_raw(a, b)
                table[a * q + b] = v
                table[b * q + a] = v
        inv = [0] * q
        for a in range(1, q):
            if inv[a]:
                continue
            b = pow(a, self.p - 2, self.p) if self.e == 1 else self.pow(a, q - 2)
            inv[a] = b
            inv[b] = a
        self._mul_table = table
        self._inv_table = inv


@lru_cache(maxsize=None)
def field_make(p: int, e: int = 1, modulus: tuple[int, ...] | None = None) -> GF:
    """Build GF(p^e), deterministic given (p, e).

    Without an explicit modulus the built-in Conway table covers all
    q <= 32; beyond that the caller must supply one.
    """
    if modulus is not None:
        return GF(p, e, tuple(modulus))
    if e == 1:
        if not is_prime(p):
            raise ValueError(f"p={p} is not prime")
        return GF(p, 1, (0, 1))  # residue polynomial is x; arithmetic is mod p
    if p**e > 32:
        raise ValueError(f"no built-in modulus for q={p}^{e} > 32; pass one explicitly")
    try:
        return GF(p, e, _CONWAY[(p, e)])
    except KeyError:  # pragma: no cover - all prime powers <= 32 are covered
        raise ValueError(f"q={p}^{e} is not a prime power <= 32")


@dataclass(frozen=True)
class FieldElement:
    """An element of a specific GF instance; raises on cross-field arithmetic."""

    value: int
    field: GF

    def __post_init__(self):
        if not 0 <= self.value < self.field.q:
            raise ValueError(f"value {self.value} out of range for {self.field}")

    def _check(self, other: "FieldElement") -> None:
        if self.field != other.field:
            raise ValueError(f"mixed fields: {self.field} vs {other.field}")

    def __add__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.field.add(self.value, other.value), self.field)

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.field.mul(self.value, other.value), self.field)

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.field.neg(self.value), self.field)

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        return self + (-other)

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field.inv(self.value), self.field)


def fe_add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def fe_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def fe_neg(a: FieldElement) -> FieldElement:
    return -a


def fe_inv(a: FieldElement) -> FieldElement:
    if a.value == 0:
        raise ZeroDivisionError("0 has no multiplicative inverse")
    return a.inverse()


# ---------------------------------------------------------------------------
# polynomial arithmetic over an arbitrary GF (coefficient lists, constant
# term first) -- used for irreducibility testing and extension fields
# ---------------------------------------------------------------------------


def _poly_trim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def _poly_mulmod(F: GF, a: list[int], b: list[int], m: list[int]) -> list[int]:
    prod = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    prod[i + j] = F.add(prod[i + j], F.mul(x, y))
    return _poly_mod(F, prod, m)


def _poly_mod(F: GF, a: list[int], m: list[int]) -> list[int]:
    a = list(a)
    dm = len(m) - 1
    lead_inv = F.inv(m[-1])
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i]
        if c:
            factor = F.mul(c, lead_inv)
            for j in range(dm + 1):
                a[i - dm + j] = F.sub(a[i - dm + j], F.mul(factor, m[j]))
    del a[dm:]
    return _poly_trim(a)


def _poly_powmod(F: GF, a: list[int], n: int, m: list[int]) -> list[int]:
    r = [1]
    base = _poly_mod(F, list(a), m)
    while n:
        if n & 1:
            r = _poly_mulmod(F, r, base, m)
        base = _poly_mulmod(F, base, base, m)
        n >>= 1
    return r


def _poly_gcd(F: GF, a: list[int], b: list[int]) -> list[int]:
    a, b = _poly_trim(list(a)), _poly_trim(list(b))
    while b:
        a, b = b, _poly_rem(F, a, b)
    return a


def _poly_rem(F: GF, a: list[int], b: list[int]) -> list[int]:
    if not b:
        raise ZeroDivisionError
    if len(a) < len(b):
        return _poly_trim(list(a))
    return _poly_mod(F, list(a), b)


def _prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def poly_is_irreducible(F: GF, f: list[int]) -> bool:
    """Rabin's test for a monic polynomial over GF(q)."""
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    q = F.q
    x = [0, 1]
    # x^(q^n) == x (mod f)
    if _poly_trim(_poly_powmod(F, x, q**n, f)) != _poly_trim(list(x)):
        return False
    for r in _prime_factors(n):
        h = _poly_powmod(F, x, q ** (n // r), f)
        # gcd(x^(q^(n/r)) - x, f) must be constant
        diff = list(h) + [0] * max(0, 2 - len(h))
        diff[1] = F.sub(diff[1], 1)
        g = _poly_gcd(F, f, _poly_trim(diff))
        if len(g) > 1:
            return False
    return True


def _poly_is_irreducible_mod_p(modulus: tuple[int, ...], p: int) -> bool:
    return poly_is_irreducible(GF(p, 1, (0, 1)), list(modulus))


def find_irreducible(F: GF, degree: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of the given degree over F.

    Candidates are ordered by the integer encoding of their lower
    coefficients (constant term first), which makes the choice, and hence
    everything built on it, deterministic.
    """
    if degree == 1:
        return (0, 1)
    q = F.q
    for code in range(q**degree):
        coeffs = []
        c = code
        for _ in range(degree):
            coeffs.append(c % q)
            c //= q
        f = coeffs + [1]
        if f[0] == 0:
            continue  # divisible by x
        if poly_is_irreducible(F, f):
            return tuple(f)
    raise ValueError(f"no irreducible polynomial of degree {degree} over {F}")  # pragma: no cover


class ExtensionField:
    """GF(q^n) built directly as a degree-n extension of a base GF(q).

    Elements are ints in [0, q^n) whose base-q digits are the coefficients
    over the base field in the polynomial basis {1, x, ..., x^(n-1)}, so
    the basis expansion needed by rank-metric code constructions is just
    the digit sequence.
    """

    def __init__(self, base: GF, n: int, modulus: tuple[int, ...] | None = None):
        if n < 1:
            raise ValueError("extension degree must be >= 1")
        self.base = base
        self.n = n
        self.order = base.q**n
        if modulus is None:
            modulus = find_irreducible(base, n)
        modulus = tuple(modulus)
        if any(not 0 <= c < base.q for c in modulus):
            raise ValueError("modulus coefficients must be base-field elements")
        if len(modulus) != n + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree n")
        if n > 1 and not poly_is_irreducible(base, list(modulus)):
            raise ValueError("modulus is reducible over the base field")
        self.modulus = modulus
        # fast path for GF(2)-based extensions: carry-less int arithmetic
        self._gf2 = base.q == 2
        if self._gf2:
            self._mod_mask = sum(c << i for i, c in enumerate(modulus))

    def coeffs(self, a: int) -> list[int]:
        """Expansion of a over the base field in the polynomial basis."""
        q = self.base.q
        out = []
        for _ in range(self.n):
            out.append(a % q)
            a //= q
        return out

    def from_coeffs(self, cs) -> int:
        q = self.base.q
        a = 0
        for c in reversed(list(cs)):
            a = a * q + c
        return a

    def add(self, a: int, b: int) -> int:
        if self._gf2:
            return a ^ b
        B = self.base
        return self.from_coeffs(B.add(x, y) for x, y in zip(self.coeffs(a), self.coeffs(b)))

    def sub(self, a: int, b: int) -> int:
        if self._gf2:
            return a ^ b
        B = self.base
        return self.from_coeffs(B.sub(x, y) for x, y in zip(self.coeffs(a), self.coeffs(b)))

    def mul(self, a: int, b: int) -> int:
        if self._gf2:
            r = 0
            x = a
            while b:
                if b & 1:
                    r ^= x
                x <<= 1
                if x >> self.n & 1:
                    x ^= self._mod_mask
                b >>= 1
            return r
        f = _poly_mulmod(self.base, self.coeffs(a), self.coeffs(b), list(self.modulus))
        return self.from_coeffs(f + [0] * (self.n - len(f)))

    def pow(self, a: int, m: int) -> int:
        r = 1
        base = a
        while m:
            if m & 1:
                r = self.mul(r, base)
            base = self.mul(base, base)
            m >>= 1
        return r

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative inverse")
        return self.pow(a, self.order - 2)

    def frobenius_pow(self, a: int, i: int) -> int:
        """a^(q^i) -- the i-fold base-field Frobenius."""
        return self.pow(a, self.base.q**i)

    def gen(self) -> int:
        """The polynomial-basis generator x (integer encoding q)."""
        return self.base.q
