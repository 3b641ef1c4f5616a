"""Finite fields GF(p^n) with elements encoded as integers.

An element with coefficient vector (c_0, ..., c_{n-1}) in the residue class
of x is stored as the integer code ``sum(c_i * p**i)``.  Vectorised
arithmetic works on numpy integer arrays of codes; :class:`FieldElement`
wraps a single code for scalar use.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

MAX_ORDER = 1 << 20
_ADD_TABLE_LIMIT = 512

# Conway polynomials, coefficients low degree first, leading 1 included.
_MODULUS_TABLE: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 1, 1, 0, 1),
    (2, 7): (1, 1, 0, 0, 0, 0, 0, 1),
    (2, 8): (1, 0, 1, 1, 1, 0, 0, 0, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 0, 0, 2, 1),
    (3, 5): (1, 2, 0, 0, 0, 1),
    (3, 6): (2, 2, 1, 0, 2, 0, 1),
    (5, 2): (2, 4, 1),
    (5, 3): (3, 3, 0, 1),
    (5, 4): (2, 4, 4, 0, 1),
    (7, 2): (3, 6, 1),
    (7, 3): (4, 0, 6, 1),
}


class FieldError(ValueError):
    pass


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


# --- polynomials over GF(p), coefficient lists low degree first -----------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _trim(list(a))
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm:
        f = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, c in enumerate(m):
            a[shift + i] = (a[shift + i] - f * c) % p
        _trim(a)
    return a


def _pmulmod(a: list[int], b: list[int], m: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _pmod(out, m, p)


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _ppowmod(base: list[int], e: int, m: list[int], p: int) -> list[int]:
    result = [1]
    base = _pmod(base, m, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, m, p)
        base = _pmulmod(base, base, m, p)
        e >>= 1
    return result


def is_irreducible(modulus: tuple[int, ...], p: int) -> bool:
    """Irreducibility over GF(p): root test for degree <= 3, Ben-Or otherwise."""
    m = list(modulus)
    n = len(m) - 1
    if n <= 1:
        return n == 1
    if n <= 3:
        for r in range(p):
            if sum(c * pow(r, i, p) for i, c in enumerate(m)) % p == 0:
                return False
        return True
    xpow = [0, 1]
    for _ in range(n // 2):
        xpow = _ppowmod(xpow, p, m, p)
        diff = list(xpow) + [0] * max(0, 2 - len(xpow))
        diff[1] = (diff[1] - 1) % p
        if len(_pgcd(m, _trim(diff), p)) > 1:
            return False
    return True


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _x_is_primitive(modulus: tuple[int, ...], p: int) -> bool:
    m = list(modulus)
    order = p ** (len(m) - 1) - 1
    for r in _prime_factors(order):
        if _ppowmod([0, 1], order // r, m, p) == [1]:
            return False
    return True


def _search_modulus(p: int, n: int) -> tuple[int, ...]:
    # Smallest primitive monic polynomial, ordered by the integer encoding of
    # its lower coefficients.
    for code in range(1, p ** n):
        low = [(code // p ** i) % p for i in range(n)]
        cand = tuple(low) + (1,)
        if low[0] and is_irreducible(cand, p) and _x_is_primitive(cand, p):
            return cand
    raise FieldError(f"no primitive polynomial of degree {n} over GF({p})")


def default_modulus(p: int, n: int) -> tuple[int, ...]:
    if n == 1:
        return (0, 1)
    if (p, n) in _MODULUS_TABLE:
        return _MODULUS_TABLE[(p, n)]
    return _search_modulus(p, n)


class GF:
    """The field GF(p^n) with a fixed primitive modulus.

    Use :func:`make_field`; instances are cached per (p, n), so identity
    comparison is field equality.
    """

    def __init__(self, p: int, n: int):
        if not isinstance(p, int) or not is_prime(p):
            raise FieldError("p must be prime")
        if not isinstance(n, int) or n < 1:
            raise FieldError("n must be a positive integer")
        if p ** n > MAX_ORDER:
            raise FieldError(f"field order {p}^{n} exceeds the 2^20 guard")
        self.p = p
        self.n = n
        self.q = p ** n
        self.modulus = default_modulus(p, n)
        if n > 1:
            if not is_irreducible(self.modulus, p):
                raise FieldError(f"modulus {self.modulus} is reducible")
            if not _x_is_primitive(self.modulus, p):
                raise FieldError(f"modulus {self.modulus} is not primitive")
        self._build_tables()

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.n})" if self.n > 1 else f"GF({self.p})"

    def __reduce__(self):
        return (make_field, (self.p, self.n))

    # --- tables -----------------------------------------------------------
    def _build_tables(self) -> None:
        p, n, q = self.p, self.n, self.q
        powers = np.array([p ** i for i in range(n)], dtype=np.int64)
        self._powers = powers
        # powers of a generator g: x for n > 1, smallest primitive root for n == 1
        if n == 1:
            g = next(c for c in range(1, p) if self._int_order(c) == p - 1) if p > 2 else 1
            seq = np.empty(q - 1, dtype=np.int64)
            cur = 1
            for k in range(q - 1):
                seq[k] = cur
                cur = cur * g % p
        else:
            seq = np.empty(q - 1, dtype=np.int64)
            digits = [1] + [0] * (n - 1)
            red = [(-c) % p for c in self.modulus[:-1]]
            for k in range(q - 1):
                seq[k] = sum(d * int(pw) for d, pw in zip(digits, powers))
                top = digits[-1]
                digits = [0] + digits[:-1]
                if top:
                    digits = [(d + top * r) % p for d, r in zip(digits, red)]
        log_g = np.full(q, -1, dtype=np.int64)
        log_g[seq] = np.arange(q - 1)
        # Generator used throughout: the smallest code of multiplicative order q-1.
        order = q - 1
        candidates = [c for c in range(1, q) if np.gcd(int(log_g[c]), order) == 1]
        zeta = min(candidates)
        lz = int(log_g[zeta])
        # re-base discrete logs on zeta
        inv_lz = pow(lz, -1, order) if order > 1 else 0
        self.log = np.where(log_g >= 0, (log_g * inv_lz) % max(order, 1), -1)
        self.exp = np.empty(2 * order, dtype=np.int64)
        self.exp[self.log[1:]] = np.arange(1, q)
        self.exp[order:] = self.exp[:order]
        self.primitive = zeta
        codes = np.arange(q, dtype=np.int64)
        self._neg = self.from_digits((-self.digits(codes)) % p)
        self._inv = np.zeros(q, dtype=np.int64)
        self._inv[1:] = self.exp[(-self.log[1:]) % order]
        self._frob = np.zeros(q, dtype=np.int64)
        self._frob[1:] = self.exp[(self.log[1:] * p) % order]
        self._add_table = None
        self._mul_table = None
        if q <= _ADD_TABLE_LIMIT:
            a, b = np.meshgrid(codes, codes, indexing="ij")
            self._add_table = self._add_digits(a, b)
            self._mul_table = self._mul_log(a, b)
        # reduction of x^s, s < 2n-1, into the basis 1..x^{n-1}
        self._reduce = np.zeros((max(2 * n - 1, 1), n), dtype=np.int64)
        for s in range(2 * n - 1):
            rem = _pmod([0] * s + [1], list(self.modulus), p) if n > 1 else [1]
            rem = rem + [0] * (n - len(rem))
            self._reduce[s] = rem[:n]

    def _int_order(self, c: int) -> int:
        k, cur = 1, c % self.p
        while cur != 1:
            cur = cur * c % self.p
            k += 1
        return k

    # --- conversions -------------------------------------------------------
    def digits(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.n == 1:
            return a[None, ...]
        return (a[None, ...] // self._powers.reshape((-1,) + (1,) * a.ndim)) % self.p

    def from_digits(self, d) -> np.ndarray:
        d = np.asarray(d, dtype=np.int64)
        if self.n == 1:
            return d[0]
        return np.tensordot(self._powers, d, axes=(0, 0))

    # --- elementwise arithmetic ----------------------------------------------
    def _add_digits(self, a, b):
        if self.p == 2:
            return np.bitwise_xor(a, b)
        return self.from_digits((self.digits(a) + self.digits(b)) % self.p)

    def _mul_log(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        nz = (a != 0) & (b != 0)
        la = np.where(nz, self.log[a], 0)
        lb = np.where(nz, self.log[b], 0)
        return np.where(nz, self.exp[la + lb], 0)

    def add(self, a, b):
        if self.n == 1:
            return (np.asarray(a, dtype=np.int64) + b) % self.p
        if self.p == 2:
            return np.bitwise_xor(np.asarray(a, dtype=np.int64), b)
        if self._add_table is not None:
            return self._add_table[a, b]
        return self._add_digits(a, b)

    def neg(self, a):
        if self.n == 1:
            return (-np.asarray(a, dtype=np.int64)) % self.p
        return self._neg[a]

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.n == 1:
            return (np.asarray(a, dtype=np.int64) * b) % self.p
        if self._mul_table is not None:
            return self._mul_table[a, b]
        return self._mul_log(a, b)

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        return self._inv[a]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def frobenius(self, a, times: int = 1):
        a = np.asarray(a, dtype=np.int64)
        for _ in range(times % self.n if self.n > 1 else 0):
            a = self._frob[a]
        return a

    def power(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("zero to a negative power")
            return 1 if e == 0 else 0
        return int(self.exp[(int(self.log[a]) * e) % (self.q - 1)])

    def from_int(self, k: int) -> int:
        """Image of the integer k in the prime field."""
        return k % self.p

    # --- matrices ----------------------------------------------------------------
    def matmul(self, A, B) -> np.ndarray:
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        if A.shape[-1] == 0 or A.size == 0 or B.size == 0:
            shape = np.matmul(np.zeros(A.shape, dtype=np.int8), np.zeros(B.shape, dtype=np.int8)).shape
            return np.zeros(shape, dtype=np.int64)
        p, n = self.p, self.n
        if n == 1:
            return _int_matmul(A, B, p)
        da, db = self.digits(A), self.digits(B)
        acc = None
        for i in range(n):
            for j in range(n):
                prod = _int_matmul(da[i], db[j], p)
                if acc is None:
                    acc = np.zeros((2 * n - 1,) + prod.shape, dtype=np.int64)
                acc[i + j] += prod
        coeffs = np.tensordot(self._reduce.T, acc % p, axes=(1, 0)) % p
        return self.from_digits(coeffs)

    def identity(self, k: int) -> np.ndarray:
        return np.eye(k, dtype=np.int64)

    def random(self, rng: np.random.Generator, shape) -> np.ndarray:
        return rng.integers(0, self.q, size=shape, dtype=np.int64)

    def element(self, code: int) -> "FieldElement":
        return FieldElement(self, int(code))


def _int_matmul(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    k = A.shape[-1]
    if k * (p - 1) ** 2 < (1 << 52):
        r = np.matmul(A.astype(np.float64), B.astype(np.float64))
        return np.mod(r, p).astype(np.int64)
    return np.matmul(A % p, B % p) % p


@functools.cache
def make_field(p: int, n: int = 1) -> GF:
    """Return the cached field GF(p^n)."""
    return GF(p, n)


def field_of_order(q: int) -> GF:
    for p in range(2, q + 1):
        if q % p == 0:
            n, r = 0, q
            while r % p == 0:
                r //= p
                n += 1
            if r != 1:
                raise FieldError(f"{q} is not a prime power")
            return make_field(p, n)
    raise FieldError(f"{q} is not a prime power")


@dataclass(frozen=True)
class FieldElement:
    field: GF
    code: int

    @property
    def coefficients(self) -> tuple[int, ...]:
        return tuple(int(c) for c in self.field.digits(self.code))

    def _check(self, other: "FieldElement") -> None:
        if not isinstance(other, FieldElement) or other.field is not self.field:
            raise FieldError("mixed fields")

    def __add__(self, other):
        self._check(other)
        return FieldElement(self.field, int(self.field.add(self.code, other.code)))

    def __sub__(self, other):
        self._check(other)
        return FieldElement(self.field, int(self.field.sub(self.code, other.code)))

    def __mul__(self, other):
        self._check(other)
        return FieldElement(self.field, int(self.field.mul(self.code, other.code)))

    def __truediv__(self, other):
        self._check(other)
        return FieldElement(self.field, int(self.field.div(self.code, other.code)))

    def __neg__(self):
        return FieldElement(self.field, int(self.field.neg(self.code)))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.power(self.code, e))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, int(self.field.inv(self.code)))

    def frobenius(self) -> "FieldElement":
        return FieldElement(self.field, int(self.field.frobenius(self.code)))

    def __bool__(self) -> bool:
        return self.code != 0

    def __repr__(self) -> str:
        return f"{self.field!r}({self.code})"


def field_arith(a: FieldElement, b: FieldElement | None, op: str) -> FieldElement:
    """Dispatch one of add, sub, mul, div, inv, frobenius."""
    if op == "inv":
        return a.inverse()
    if op == "frobenius":
        return a.frobenius()
    if b is None:
        raise ValueError(f"operation {op!r} needs two operands")
    ops = {"add": FieldElement.__add__, "sub": FieldElement.__sub__,
           "mul": FieldElement.__mul__, "div": FieldElement.__truediv__}
    try:
        return ops[op](a, b)
    except KeyError:
        raise ValueError(f"unknown operation {op!r}") from None
