"""Exact arithmetic foundations: finite fields GF(p^r) and cyclotomic integers Z[zeta_m].

Field elements are polynomial residues over the prime field in a canonical
(fully reduced) form, so equality is coefficientwise.  Cyclotomic integers are
stored as the unique normal form modulo the m-th cyclotomic polynomial, which
makes equality and integrality tests exact.  Floating point appears only in
the diagnostic `evalf`.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt


class CompositeP(Exception):
    """Characteristic of a requested field is not prime."""


class NotRationalInteger(Exception):
    """Cyclotomic value expected to be a plain integer is not one."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def factor_prime_power(q: int) -> tuple[int, int]:
    """Write q = p^r with p prime, or raise ValueError."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = 2
    while q % p != 0:
        p += 1
        if p * p > q:
            p = q
            break
    r = 0
    m = q
    while m % p == 0:
        m //= p
        r += 1
    if m != 1 or not is_prime(p):
        raise ValueError(f"{q} is not a prime power")
    return p, r


# ---------------------------------------------------------------------------
# Polynomials over GF(p): coefficient tuples, constant term first.
# ---------------------------------------------------------------------------

def _poly_trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(out)


def _poly_mod(a, mod, p):
    # mod is monic
    a = list(a)
    _poly_trim(a)
    d = len(mod) - 1
    while len(a) > d:
        c = a[-1]
        if c:
            off = len(a) - 1 - d
            for i in range(d):
                a[off + i] = (a[off + i] - c * mod[i]) % p
        a.pop()
    return _poly_trim(a)


def _is_irreducible(mod: list[int], p: int) -> bool:
    """Trial division of a monic polynomial by every lower-degree monic polynomial."""
    r = len(mod) - 1
    if r == 1:
        return True
    for d in range(1, r // 2 + 1):
        for enc in range(p ** d):
            div = _digits(enc, p, d) + [1]
            if not _poly_mod(mod, div, p):
                return False
    return True


def _digits(n: int, p: int, width: int) -> list[int]:
    out = []
    for _ in range(width):
        out.append(n % p)
        n //= p
    return out


@dataclass(frozen=True)
class FieldSpec:
    """GF(p^r) presented as GF(p)[t] modulo a fixed monic irreducible of degree r.

    `modulus` holds the r low coefficients; the leading coefficient is 1.
    """

    p: int
    r: int
    modulus: tuple[int, ...]

    @property
    def q(self) -> int:
        return self.p ** self.r

    def element(self, coeffs) -> "FieldElement":
        c = tuple(x % self.p for x in coeffs)
        if len(c) < self.r:
            c = c + (0,) * (self.r - len(c))
        elif len(c) > self.r:
            c = tuple(_poly_mod(list(c), list(self.modulus) + [1], self.p) + [0] * self.r)[: self.r]
        return FieldElement(self, c)

    def from_int(self, n: int) -> "FieldElement":
        """Element with canonical rank n (digits of n base p, low power first)."""
        return FieldElement(self, tuple(_digits(n % self.q, self.p, self.r)))

    def zero(self) -> "FieldElement":
        return self.from_int(0)

    def one(self) -> "FieldElement":
        return self.from_int(1)

    def gen(self) -> "FieldElement":
        # the class of t; equals 1 when r = 1
        return self.from_int(self.p) if self.r > 1 else self.one()

    def elements(self):
        """All q elements in canonical order (rank 0, 1, 2, ...)."""
        return [self.from_int(n) for n in range(self.q)]


def field_make(p: int, r: int) -> FieldSpec:
    """GF(p^r) with the lowest-ranked monic irreducible modulus.

    Candidates are scanned by the integer encoding of their low coefficients,
    so the choice is deterministic and reproduces standard small-field moduli.
    """
    if not is_prime(p):
        raise CompositeP(f"{p} is not prime")
    if r < 1:
        raise ValueError("r must be positive")
    for enc in range(p ** r):
        low = _digits(enc, p, r)
        if _is_irreducible(low + [1], p):
            return FieldSpec(p, r, tuple(low))
    raise AssertionError("no irreducible polynomial found")  # unreachable


class FieldElement:
    """Element of GF(p^r), canonical coefficient tuple (low power first)."""

    __slots__ = ("spec", "coeffs")

    def __init__(self, spec: FieldSpec, coeffs: tuple[int, ...]):
        self.spec = spec
        self.coeffs = coeffs

    def rank(self) -> int:
        n = 0
        for c in reversed(self.coeffs):
            n = n * self.spec.p + c
        return n

    def __eq__(self, other):
        return (
            isinstance(other, FieldElement)
            and self.spec == other.spec
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.spec.p, self.spec.r, self.coeffs))

    def __add__(self, other):
        p = self.spec.p
        return FieldElement(
            self.spec, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs))
        )

    def __neg__(self):
        p = self.spec.p
        return FieldElement(self.spec, tuple((-a) % p for a in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        p = self.spec.p
        prod = _poly_mul(list(self.coeffs), list(other.coeffs), p)
        red = _poly_mod(prod, list(self.spec.modulus) + [1], p)
        red += [0] * (self.spec.r - len(red))
        return FieldElement(self.spec, tuple(red))

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.spec.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        return self ** (self.spec.q - 2)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def frobenius(self) -> "FieldElement":
        return self ** self.spec.p

    def __repr__(self):
        names = {0: "1", 1: "t"}
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                mon = names.get(i, f"t^{i}")
                terms.append(mon if (c == 1 and i > 0) else (str(c) if i == 0 else f"{c}*{mon}"))
        return "+".join(terms) if terms else "0"


def field_trace(a: FieldElement) -> int:
    """Tr(a) = a + a^p + ... + a^{p^(r-1)}, returned as an element of GF(p)."""
    acc = a
    cur = a
    for _ in range(a.spec.r - 1):
        cur = cur.frobenius()
        acc = acc + cur
    assert all(c == 0 for c in acc.coeffs[1:]), "trace landed outside the prime field"
    return acc.coeffs[0]


class FieldTable:
    """Dense index-based arithmetic tables for one small field.

    Elements are identified with their canonical rank 0..q-1; rank 0 is zero
    and rank 1 is one.  Used by the group layer, where products are hot.
    """

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self.q = spec.q
        elems = spec.elements()
        self.elems = elems
        q = self.q
        rank = {e.coeffs: i for i, e in enumerate(elems)}
        self.add = [[rank[(elems[i] + elems[j]).coeffs] for j in range(q)] for i in range(q)]
        self.mul = [[rank[(elems[i] * elems[j]).coeffs] for j in range(q)] for i in range(q)]
        self.neg = [rank[(-elems[i]).coeffs] for i in range(q)]
        self.inv = [None] + [rank[elems[i].inverse().coeffs] for i in range(1, q)]
        self.trace = [field_trace(e) for e in elems]

    def sub(self, i: int, j: int) -> int:
        return self.add[i][self.neg[j]]

    def mult_order(self, i: int) -> int:
        if i == 0:
            raise ZeroDivisionError("zero has no multiplicative order")
        k, cur = 1, i
        while cur != 1:
            cur = self.mul[cur][i]
            k += 1
        return k


# ---------------------------------------------------------------------------
# Cyclotomic integers
# ---------------------------------------------------------------------------

def _divisors(m: int) -> list[int]:
    out = [d for d in range(1, m + 1) if m % d == 0]
    return out


def euler_phi(m: int) -> int:
    out = m
    n = m
    p = 2
    while p * p <= n:
        if n % p == 0:
            out -= out // p
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out -= out // n
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Coefficients (low first) of the m-th cyclotomic polynomial.

    Computed by exact division of t^m - 1 by the cyclotomic polynomials of
    the proper divisors of m.
    """
    poly = [-1] + [0] * (m - 1) + [1]
    for d in _divisors(m):
        if d == m:
            continue
        div = list(cyclotomic_polynomial(d))
        # exact long division by a monic divisor over Z
        out = [0] * (len(poly) - len(div) + 1)
        rem = list(poly)
        for k in range(len(out) - 1, -1, -1):
            c = rem[k + len(div) - 1]
            out[k] = c
            if c:
                for i, dc in enumerate(div):
                    rem[k + i] -= c * dc
        assert not any(rem[: len(div) - 1]), "cyclotomic division was not exact"
        poly = out
    return tuple(poly)


@lru_cache(maxsize=None)
def _power_rows(m: int) -> list[tuple[int, ...]]:
    """Normal forms of t^k modulo the m-th cyclotomic polynomial, k = 0..2m."""
    phi_poly = cyclotomic_polynomial(m)
    phi = len(phi_poly) - 1
    rows: list[tuple[int, ...]] = []
    for k in range(phi):
        row = [0] * phi
        row[k] = 1
        rows.append(tuple(row))
    top = tuple(-c for c in phi_poly[:phi])  # t^phi
    rows.append(top)
    for _ in range(phi + 1, 2 * m + 1):
        prev = rows[-1]
        row = [0] * phi
        for i in range(phi - 1):
            row[i + 1] = prev[i]
        c = prev[phi - 1]
        if c:
            for i in range(phi):
                row[i] += c * top[i]
        rows.append(tuple(row))
    return rows


class Cyclo:
    """Element of Z[zeta_m] in normal form modulo the m-th cyclotomic polynomial."""

    __slots__ = ("m", "coeffs")

    def __init__(self, m: int, coeffs: tuple[int, ...]):
        self.m = m
        self.coeffs = coeffs

    # -- construction -------------------------------------------------------

    @staticmethod
    def integer(m: int, n: int) -> "Cyclo":
        phi = euler_phi(m)
        if m == 1:
            # Phi_1 = t - 1, so the class of the integer n has coefficient n
            return Cyclo(1, (n,))
        return Cyclo(m, (n,) + (0,) * (phi - 1))

    @staticmethod
    def root(m: int, k: int = 1) -> "Cyclo":
        """zeta_m^k."""
        vec = [0] * m
        vec[k % m] = 1
        return cyclo_make(m, vec)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    # -- ring operations ----------------------------------------------------

    def _coerce(self, other) -> "Cyclo":
        if isinstance(other, int):
            return Cyclo.integer(self.m, other)
        if isinstance(other, Cyclo):
            if other.m == self.m:
                return other
            raise ValueError(f"cyclotomic order mismatch: {self.m} vs {other.m}")
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Cyclo(self.m, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclo(self.m, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Cyclo(self.m, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return Cyclo(self.m, tuple(other * a for a in self.coeffs))
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        phi = len(self.coeffs)
        acc = [0] * (2 * phi - 1)
        for i, ai in enumerate(self.coeffs):
            if ai:
                for j, bj in enumerate(o.coeffs):
                    if bj:
                        acc[i + j] += ai * bj
        return Cyclo(self.m, _reduce_vec(self.m, acc))

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            return self == Cyclo.integer(self.m, other)
        return isinstance(other, Cyclo) and self.m == other.m and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.m, self.coeffs))

    # -- structure maps -----------------------------------------------------

    def galois(self, k: int) -> "Cyclo":
        """Ring automorphism zeta -> zeta^k; requires gcd(k, m) = 1."""
        k %= self.m
        if gcd(k, self.m) != 1:
            raise ValueError(f"zeta -> zeta^{k} is not an automorphism for m={self.m}")
        vec = [0] * self.m
        for i, c in enumerate(self.coeffs):
            if c:
                vec[(i * k) % self.m] += c
        return cyclo_make(self.m, vec)

    def conj(self) -> "Cyclo":
        if self.m <= 2:
            return self
        return self.galois(self.m - 1)

    def upcast(self, m2: int) -> "Cyclo":
        """Reinterpret inside Z[zeta_{m2}] where m divides m2."""
        if m2 == self.m:
            return self
        if m2 % self.m != 0:
            raise ValueError(f"{self.m} does not divide {m2}")
        scale = m2 // self.m
        vec = [0] * m2
        for i, c in enumerate(self.coeffs):
            if c:
                vec[i * scale] += c
        return cyclo_make(m2, vec)

    def exact_div(self, n: int) -> "Cyclo":
        if any(c % n for c in self.coeffs):
            raise NotRationalInteger(f"coefficients {self.coeffs} not divisible by {n}")
        return Cyclo(self.m, tuple(c // n for c in self.coeffs))

    def evalf(self) -> complex:
        """Diagnostic numeric value at zeta = exp(2 pi i / m)."""
        z = cmath.exp(2j * cmath.pi / self.m)
        return sum(c * z**i for i, c in enumerate(self.coeffs))

    def __repr__(self):
        if self.is_zero():
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                if i == 0:
                    terms.append(str(c))
                else:
                    mon = f"zeta{self.m}" + (f"^{i}" if i > 1 else "")
                    terms.append(mon if c == 1 else f"{c}*{mon}")
        return "+".join(terms).replace("+-", "-")


def _reduce_vec(m: int, vec: list[int]) -> tuple[int, ...]:
    phi = euler_phi(m)
    rows = _power_rows(m)
    out = list(vec[:phi]) + [0] * max(0, phi - len(vec))
    for k in range(phi, len(vec)):
        c = vec[k]
        if c:
            row = rows[k]
            for i in range(phi):
                if row[i]:
                    out[i] += c * row[i]
    return tuple(out)


def cyclo_make(m: int, coeffs) -> Cyclo:
    """Normal form of sum coeffs[k] * zeta_m^k (any length; indices fold mod m)."""
    vec = [0] * m
    for k, c in enumerate(coeffs):
        if c:
            vec[k % m] += c
    if m == 1:
        return Cyclo(1, (vec[0],))
    return Cyclo(m, _reduce_vec(m, vec))


def cyclo_to_integer(c: Cyclo) -> int:
    """The integer n with normal form c, else NotRationalInteger."""
    if c.m == 1:
        return c.coeffs[0]
    if any(c.coeffs[1:]):
        raise NotRationalInteger(f"{c!r} is not a rational integer")
    return c.coeffs[0]


def binom_mod2(n: int, k: int) -> int:
    """C(n, k) mod 2 for any integer n and k >= 0 (Lucas; negative n reflected)."""
    if k < 0:
        return 0
    if n < 0:
        # C(n, k) = (-1)^k C(k - n - 1, k)
        n = k - n - 1
    if k > n:
        return 0
    return 1 if (k & n) == k else 0


def ord2(n: int) -> int:
    """Exponent of 2 in n; raises on n = 0."""
    if n == 0:
        raise ValueError("ord2(0) is undefined")
    n = abs(n)
    return (n & -n).bit_length() - 1


def smallest_prime_in_progression(mod: int, residue: int, lower: int) -> int:
    """Smallest prime p ≡ residue (mod mod) with p > lower."""
    k = max(0, (lower - residue) // mod)
    p = residue + k * mod
    while p <= lower or not is_prime(p):
        p += mod
    return p


def lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def isqrt_ceil(n: int) -> int:
    s = isqrt(n)
    return s if s * s == n else s + 1
