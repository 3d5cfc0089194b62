"""Arithmetic in GF(q) for prime powers q >= 3.

Elements are identified with their canonical index: the coefficient vector
(c_0, ..., c_{e-1}) of the polynomial-basis representation read as a base-p
integer, ``index = sum(c_i * p**i)``.  Index 0 is zero and index 1 is one.

All vectorized operations on :class:`FieldSpec` accept Python ints or integer
numpy arrays of canonical indices and broadcast like numpy ufuncs.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from agc.errors import DivisionByZero, FieldMismatch, FieldTooSmall, NotPrime

# full q x q tables are built up to this order; above it scalar polynomial arithmetic is used
TABLE_LIMIT = 2**12


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``n`` in ascending order."""
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


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, e)`` with ``q == p**e``; raise NotPrime otherwise."""
    fs = prime_factors(q) if q > 1 else []
    if len(fs) != 1:
        raise NotPrime(f"{q} is not a prime power")
    p, e = fs[0], 0
    while q > 1:
        q //= p
        e += 1
    return p, e


# -- polynomials over GF(p), coefficient lists low-to-high ----------------


def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a = a[:-1]
    return a


def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    """Remainder of ``a`` modulo the monic polynomial ``m``."""
    a = list(a)
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] % p
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    return _poly_trim([x % p for x in a[:dm]])


def _poly_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def is_irreducible(poly: list[int], p: int) -> bool:
    """Trial division of a monic ``poly`` by every monic polynomial of degree <= deg/2."""
    e = len(poly) - 1
    for d in range(1, e // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not _poly_mod(poly, list(low) + [1], p):
                return False
    return True


def smallest_irreducible(p: int, e: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree ``e`` (coefficients low-to-high)."""
    if e == 1:
        return (0, 1)
    for low in itertools.product(range(p), repeat=e):
        poly = list(low) + [1]
        if is_irreducible(poly, p):
            return tuple(poly)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


class FieldSpec:
    """Immutable arithmetic context for GF(p^e).

    Construct through :func:`make_field`, which picks the canonical modulus
    and primitive element.  ``alpha`` is the smallest index of multiplicative
    order ``q - 1``.
    """

    def __init__(self, p: int, e: int, modulus: tuple[int, ...], alpha: int | None = None):
        if not is_prime(p):
            raise NotPrime(f"characteristic {p} is not prime")
        if e < 1:
            raise ValueError("extension degree must be >= 1")
        if p**e < 3:
            raise FieldTooSmall(f"GF({p**e}) is not supported; q must be >= 3")
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != e + 1 or modulus[-1] != 1:
            raise ValueError(f"modulus must be monic of degree {e}")
        if not is_irreducible(list(modulus), p):
            raise ValueError(f"modulus {modulus} is reducible over GF({p})")
        self.p = p
        self.e = e
        self.q = p**e
        self.modulus = modulus
        self._pows = [p**i for i in range(e)]
        self._tables = self.q <= TABLE_LIMIT
        if self._tables:
            self._build_tables()
        if alpha is None:
            alpha = self._find_primitive()
        elif self.order(alpha) != self.q - 1:
            raise ValueError(f"{alpha} is not a primitive element")
        self.alpha = int(alpha)

    # -- construction helpers --------------------------------------------

    def digits(self, a: int) -> list[int]:
        return [(a // self._pows[i]) % self.p for i in range(self.e)]

    def from_digits(self, c) -> int:
        return int(sum(int(x) * w for x, w in zip(c, self._pows)))

    def _padd(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        return self.from_digits((x + y) % self.p for x, y in zip(self.digits(a), self.digits(b)))

    def _pneg(self, a: int) -> int:
        if self.e == 1:
            return (-a) % self.p
        return self.from_digits((-x) % self.p for x in self.digits(a))

    def _pmul(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a * b) % self.p
        prod = _poly_mul(_poly_trim(self.digits(a)), _poly_trim(self.digits(b)), self.p)
        return self.from_digits(_poly_mod(prod, list(self.modulus), self.p))

    def _ppow(self, a: int, n: int) -> int:
        r = 1
        while n:
            if n & 1:
                r = self._pmul(r, a)
            a = self._pmul(a, a)
            n >>= 1
        return r

    def _find_primitive(self) -> int:
        fs = prime_factors(self.q - 1)
        for c in range(1, self.q):
            if all(self._ppow(c, (self.q - 1) // f) != 1 for f in fs):
                return c
        raise AssertionError("multiplicative group has no generator")  # pragma: no cover

    def _build_tables(self) -> None:
        q, p = self.q, self.p
        dt = np.int64 if q <= 2**10 else np.int32
        idx = np.arange(q)
        add = np.zeros((q, q), dtype=dt)
        for w in self._pows:
            d = (idx // w) % p
            add += (((d[:, None] + d[None, :]) % p) * w).astype(dt)
        neg = np.zeros(q, dtype=dt)
        for w in self._pows:
            neg += (((-((idx // w) % p)) % p) * w).astype(dt)
        # log/antilog tables from any generator; the multiplication table follows from them
        g = self._find_primitive()
        exp = np.zeros(q - 1, dtype=np.int64)
        x = 1
        for i in range(q - 1):
            exp[i] = x
            x = self._pmul(x, g)
        log = np.zeros(q, dtype=np.int64)
        log[exp] = np.arange(q - 1)
        mul = np.zeros((q, q), dtype=dt)
        nz = idx[1:]
        mul[1:, 1:] = exp[(log[nz][:, None] + log[nz][None, :]) % (q - 1)]
        inv = np.zeros(q, dtype=dt)
        inv[1:] = exp[(-log[nz]) % (q - 1)]
        self._add, self._neg, self._mul, self._inv = add, neg, mul, inv
        self._sub = add[:, neg]
        for t in (add, neg, mul, inv, self._sub):
            t.setflags(write=False)

    # -- vectorized arithmetic on canonical indices ----------------------

    def add(self, a, b):
        if self._tables:
            return self._add[a, b]
        return np.vectorize(self._padd, otypes=[np.int64])(a, b)

    def neg(self, a):
        if self._tables:
            return self._neg[a]
        return np.vectorize(self._pneg, otypes=[np.int64])(a)

    def sub(self, a, b):
        if self._tables:
            return self._sub[a, b]
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self._tables:
            return self._mul[a, b]
        return np.vectorize(self._pmul, otypes=[np.int64])(a, b)

    def inv(self, a):
        if np.any(np.asarray(a) == 0):
            raise DivisionByZero("0 has no multiplicative inverse")
        if self._tables:
            return self._inv[a]
        return np.vectorize(lambda x: self._ppow(x, self.q - 2), otypes=[np.int64])(a)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        """``a**n`` by square-and-multiply; negative ``n`` inverts first."""
        a = int(a)
        if n < 0:
            a, n = int(self.inv(a)), -n
        r = 1
        while n:
            if n & 1:
                r = int(self.mul(r, a))
            a = int(self.mul(a, a))
            n >>= 1
        return r

    def order(self, a: int) -> int:
        """Multiplicative order of a nonzero element."""
        if a == 0:
            raise DivisionByZero("0 has no multiplicative order")
        n, x = 1, int(a)
        while x != 1:
            x = int(self.mul(x, a)) if self._tables else self._pmul(x, a)
            n += 1
        return n

    def sum(self, a, axis=0):
        """Field sum of an index array along ``axis``."""
        a = np.asarray(a)
        if self.e == 1:
            return a.astype(np.int64).sum(axis=axis) % self.p
        a = np.moveaxis(a, axis, 0)
        acc = np.zeros(a.shape[1:], dtype=np.int64)
        for row in a:
            acc = self.add(acc, row)
        return np.asarray(acc, dtype=np.int64)

    def dot(self, a, b):
        """Inner product of two index vectors."""
        return int(self.sum(self.mul(np.asarray(a), np.asarray(b))))

    def matmul(self, a, b) -> np.ndarray:
        """Matrix product of 2-D index arrays over GF(q)."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if a.shape[1] != b.shape[0]:
            raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
        if self.e == 1:
            return (a @ b) % self.p
        acc = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
        for t in range(a.shape[1]):
            acc = self.add(acc, self.mul(a[:, t, None], b[None, t, :]))
        return np.asarray(acc, dtype=np.int64)

    def scale_to_leading_one(self, v) -> np.ndarray:
        """Scale a vector so its first nonzero entry is 1 (zero vector unchanged)."""
        v = np.asarray(v, dtype=np.int64)
        nz = np.flatnonzero(v)
        if nz.size == 0:
            return v.copy()
        return np.asarray(self.mul(self.inv(int(v[nz[0]])), v), dtype=np.int64)

    # -- elements --------------------------------------------------------

    def __call__(self, value: int) -> FieldElement:
        return FieldElement(self, value)

    def elements(self) -> list[FieldElement]:
        return [FieldElement(self, i) for i in range(self.q)]

    def element(self, value: int) -> FieldElement:
        return FieldElement(self, value)

    @property
    def primitive(self) -> FieldElement:
        return FieldElement(self, self.alpha)

    # -- identity and serialization --------------------------------------

    def _key(self):
        return (self.p, self.e, self.modulus, self.alpha)

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"FieldSpec(q={self.q}, modulus={self.modulus}, alpha={self.alpha})"

    def serialize(self) -> str:
        mod = ",".join(str(c) for c in self.modulus)
        return f"GF p={self.p} e={self.e} mod={mod} alpha={self.alpha}"

    __str__ = serialize

    @classmethod
    def parse(cls, line: str) -> FieldSpec:
        m = re.fullmatch(r"\s*GF p=(\d+) e=(\d+) mod=([\d,]+) alpha=(\d+)\s*", line)
        if m is None:
            raise ValueError(f"not a field line: {line!r}")
        p, e = int(m.group(1)), int(m.group(2))
        modulus = tuple(int(c) for c in m.group(3).split(","))
        return cls(p, e, modulus, int(m.group(4)))


@lru_cache(maxsize=None)
def make_field(p: int, e: int = 1) -> FieldSpec:
    """Canonical GF(p^e): smallest monic irreducible modulus, smallest primitive element."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if e < 1:
        raise ValueError("extension degree must be >= 1")
    if p**e < 3:
        raise FieldTooSmall(f"GF({p**e}) is not supported; q must be >= 3")
    return FieldSpec(p, e, smallest_irreducible(p, e))


def field_of_order(q: int) -> FieldSpec:
    p, e = prime_power(q)
    return make_field(p, e)


@dataclass(frozen=True)
class FieldElement:
    """A single element of ``spec``, stored by canonical index."""

    spec: FieldSpec
    value: int

    def __post_init__(self):
        if not 0 <= self.value < self.spec.q:
            raise ValueError(f"index {self.value} out of range for GF({self.spec.q})")
        object.__setattr__(self, "value", int(self.value))

    def _other(self, b) -> int:
        if isinstance(b, FieldElement):
            if b.spec != self.spec:
                raise FieldMismatch(f"GF({self.spec.q}) vs GF({b.spec.q})")
            return b.value
        if isinstance(b, (int, np.integer)) and 0 <= b < self.spec.q:
            return int(b)
        return NotImplemented

    def _wrap(self, v) -> FieldElement:
        return FieldElement(self.spec, int(v))

    def __add__(self, b):
        v = self._other(b)
        return NotImplemented if v is NotImplemented else self._wrap(self.spec.add(self.value, v))

    __radd__ = __add__

    def __sub__(self, b):
        v = self._other(b)
        return NotImplemented if v is NotImplemented else self._wrap(self.spec.sub(self.value, v))

    def __rsub__(self, b):
        v = self._other(b)
        return NotImplemented if v is NotImplemented else self._wrap(self.spec.sub(v, self.value))

    def __mul__(self, b):
        v = self._other(b)
        return NotImplemented if v is NotImplemented else self._wrap(self.spec.mul(self.value, v))

    __rmul__ = __mul__

    def __truediv__(self, b):
        v = self._other(b)
        return NotImplemented if v is NotImplemented else self._wrap(self.spec.div(self.value, v))

    def __neg__(self):
        return self._wrap(self.spec.neg(self.value))

    def __pow__(self, n: int):
        return self._wrap(self.spec.pow(self.value, n))

    def inv(self) -> FieldElement:
        return self._wrap(self.spec.inv(self.value))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __index__(self):
        return self.value

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.spec == other.spec and self.value == other.value
        if isinstance(other, (int, np.integer)):
            return self.value == other
        return NotImplemented

    def __hash__(self):
        return hash(self.value)

    def __repr__(self):
        return f"GF{self.spec.q}({self.value})"
