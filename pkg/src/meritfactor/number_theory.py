"""Integer and finite-field arithmetic used by the sequence constructions.

Covers Legendre and Jacobi symbols, square-free factorization with the
prime-count and least-prime functions, binary fields GF(2^d) with absolute
and relative traces, and odd-characteristic fields GF(q) with the quadratic
character.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence

import numpy as np

from .errors import (
    NotADivisor,
    NotOddPrime,
    NotPositiveOdd,
    NotPrimePower,
    NotPrimitive,
    NotSquarefree,
    TooLarge,
)

# Smallest primitive polynomial of each degree over GF(2), as a bitmask that
# includes the x^d term.  Entries were produced by exhaustive search in
# increasing integer order; tests re-derive the small ones.
PRIMITIVE_MODULI = {
    1: 0x3, 2: 0x7, 3: 0xB, 4: 0x13, 5: 0x25, 6: 0x43, 7: 0x83, 8: 0x11D,
    9: 0x211, 10: 0x409, 11: 0x805, 12: 0x1053, 13: 0x201B, 14: 0x402B,
    15: 0x8003, 16: 0x1002D, 17: 0x20009, 18: 0x40027, 19: 0x80027,
    20: 0x100009, 21: 0x200005, 22: 0x400003, 23: 0x800021, 24: 0x100001B,
    25: 0x2000009, 26: 0x4000047, 27: 0x8000027, 28: 0x10000009,
    29: 0x20000005, 30: 0x40000053, 31: 0x80000009, 32: 0x1000000AF,
}

MAX_TABLE_DEGREE = 24
MAX_ODD_FIELD = 1 << 20

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for all n < 3.3e24."""
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``n >= 1`` in ascending order."""
    if n < 1:
        raise ValueError("n must be positive")
    out = []
    p = 2
    while n > 1 and not is_prime(n):
        while p * p <= n and n % p:
            p += 1 if p == 2 else 2
        if p * p > n:
            break
        out.append(p)
        while n % p == 0:
            n //= p
    if n > 1:
        out.append(n)
    return out


def legendre_symbol(j: int, p: int) -> int:
    """Legendre symbol ``(j/p)`` by Euler's criterion."""
    if p < 3 or p % 2 == 0 or not is_prime(p):
        raise NotOddPrime(f"{p} is not an odd prime")
    r = pow(j % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def jacobi_symbol(j: int, n: int) -> int:
    """Jacobi symbol ``(j/n)`` for positive odd ``n`` via quadratic reciprocity."""
    if n < 1 or n % 2 == 0:
        raise NotPositiveOdd(f"{n} is not a positive odd integer")
    a = j % n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def jacobi_array(j, n) -> np.ndarray:
    """Elementwise Jacobi symbol for integer arrays (``n`` positive odd)."""
    a = np.asarray(j, dtype=np.int64).copy()
    m = np.broadcast_to(np.asarray(n, dtype=np.int64), a.shape).copy()
    if np.any(m < 1) or np.any(m % 2 == 0):
        raise NotPositiveOdd("denominators must be positive odd integers")
    a %= m
    result = np.ones(a.shape, dtype=np.int64)
    active = a != 0
    while np.any(active):
        while True:
            even = active & (a % 2 == 0)
            if not np.any(even):
                break
            a[even] //= 2
            flip = even & ((m % 8 == 3) | (m % 8 == 5))
            result[flip] = -result[flip]
        a_new = np.where(active, m, a)
        m_new = np.where(active, a, m)
        flip = active & (a_new % 4 == 3) & (m_new % 4 == 3)
        result[flip] = -result[flip]
        a, m = a_new, m_new
        np.remainder(a, m, out=a, where=active)
        active = a != 0
    return np.where(m == 1, result, 0).astype(np.int8)


@dataclass(frozen=True)
class Factorization:
    primes: tuple[int, ...]
    n: int

    @property
    def omega(self) -> int:
        return len(self.primes)

    @property
    def kappa(self) -> int:
        return self.primes[0]


def factor_squarefree(n: int) -> Factorization:
    """Prime factorization of a square-free ``n``; raises on any repeated prime."""
    if n < 1:
        raise NotSquarefree(f"{n} is not a positive integer")
    primes = prime_factors(n)
    if math.prod(primes) != n:
        raise NotSquarefree(f"{n} is not square-free")
    return Factorization(tuple(primes), n)


def omega(n: int) -> int:
    return factor_squarefree(n).omega


def kappa(n: int) -> int:
    return factor_squarefree(n).kappa


def jacobi_growth_ratio(n: int) -> float:
    """``max(4^ω (ln n)^6, 5^ω) / κ`` for odd square-free ``n > 1`` (natural log)."""
    if n <= 1 or n % 2 == 0:
        raise NotPositiveOdd("n must be an odd integer > 1")
    f = factor_squarefree(n)
    w = f.omega
    return max(4.0 ** w * math.log(n) ** 6, 5.0 ** w) / f.kappa


# --- GF(2)[x] helpers on bitmask polynomials ---------------------------------


def _gf2_mulmod(a: int, b: int, modulus: int, d: int) -> int:
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if (a >> d) & 1:
            a ^= modulus
    return r


def _gf2_powmod(a: int, e: int, modulus: int, d: int) -> int:
    r = 1
    while e:
        if e & 1:
            r = _gf2_mulmod(r, a, modulus, d)
        e >>= 1
        a = _gf2_mulmod(a, a, modulus, d)
    return r


def is_primitive_modulus(modulus: int, d: int) -> bool:
    """Whether the degree-``d`` bitmask polynomial has x of order ``2^d - 1``.

    Primitivity implies irreducibility: in a reducible quotient ring the unit
    group is smaller than ``2^d - 1``.
    """
    if modulus >> d != 1 or not modulus & 1:
        return False
    n = (1 << d) - 1
    x = 2 % modulus if d > 1 else 1
    if _gf2_powmod(x, n, modulus, d) != 1:
        return False
    return all(_gf2_powmod(x, n // p, modulus, d) != 1 for p in prime_factors(n))


def find_primitive_modulus(d: int) -> int:
    """Smallest primitive polynomial of degree ``d`` by exhaustive search."""
    if d == 1:
        return 0x3
    f = (1 << d) | 1
    while f < (1 << (d + 1)):
        if is_primitive_modulus(f, d):
            return f
        f += 2
    raise AssertionError("no primitive polynomial found")


def format_gf2_poly(modulus: int) -> str:
    terms = []
    for i in range(modulus.bit_length() - 1, -1, -1):
        if (modulus >> i) & 1:
            terms.append("1" if i == 0 else ("x" if i == 1 else f"x^{i}"))
    return " + ".join(terms)


class BinaryField:
    """The field GF(2^d) with elements encoded as d-bit integers.

    Bit ``i`` of an element is the coefficient of the residue ``x^i``.  The
    exp/log tables are taken with respect to ``x``, which generates the
    multiplicative group because the modulus is required to be primitive.
    """

    def __init__(self, d: int, modulus: Optional[int] = None):
        if d < 1 or d > 32:
            raise TooLarge("supported degrees are 1..32")
        if modulus is None:
            modulus = PRIMITIVE_MODULI[d]
        if not is_primitive_modulus(modulus, d):
            raise NotPrimitive(f"{format_gf2_poly(modulus)} is not primitive of degree {d}")
        self.d = d
        self.modulus = modulus
        self.n = (1 << d) - 1
        self.size = 1 << d

    def __repr__(self) -> str:
        return f"BinaryField(d={self.d}, modulus={self.modulus:#x})"

    @property
    def x(self) -> int:
        """The residue of ``x``, which is the default primitive element."""
        return 2 if self.d > 1 else 1

    def mul(self, a: int, b: int) -> int:
        return _gf2_mulmod(a, b, self.modulus, self.d)

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            return 0 if e > 0 else 1
        return _gf2_powmod(a, e % self.n if self.n > 1 else 0, self.modulus, self.d)

    def mul_array(self, arr: np.ndarray, b: int) -> np.ndarray:
        """Multiply every element of ``arr`` by the scalar ``b``."""
        arr = np.asarray(arr, dtype=np.int64)
        acc = np.zeros_like(arr)
        for bit in range(self.d):
            if (b >> bit) & 1:
                acc ^= arr << bit
        for k in range(2 * self.d - 2, self.d - 1, -1):
            high = (acc >> k) & 1
            acc ^= high * (self.modulus << (k - self.d))
        return acc

    @cached_property
    def exp(self) -> np.ndarray:
        """``exp[i] = x^i`` for ``i = 0..n-1``."""
        if self.d > MAX_TABLE_DEGREE:
            raise TooLarge(f"tables limited to d <= {MAX_TABLE_DEGREE}")
        n = self.n
        block = 1 << ((self.d + 1) // 2)
        head = np.empty(min(block, n), dtype=np.int64)
        y = 1
        for i in range(head.size):
            head[i] = y
            y = self.mul(y, self.x)
        out = np.empty(n, dtype=np.int64)
        step = self.pow(self.x, head.size)
        factor = 1
        for start in range(0, n, head.size):
            stop = min(start + head.size, n)
            out[start:stop] = self.mul_array(head[: stop - start], factor)
            factor = self.mul(factor, step)
        out.flags.writeable = False
        return out

    @cached_property
    def log(self) -> np.ndarray:
        """``log[y]`` with ``x^{log[y]} = y``; ``log[0] = -1``."""
        lg = np.full(self.size, -1, dtype=np.int64)
        lg[self.exp] = np.arange(self.n, dtype=np.int64)
        lg.flags.writeable = False
        return lg

    def powers(self, theta: int, count: Optional[int] = None) -> np.ndarray:
        """``theta^j`` for ``j = 0..count-1`` (default ``n``)."""
        count = self.n if count is None else count
        k = int(self.log[theta])
        if k < 0:
            raise NotPrimitive("0 has no powers table")
        return self.exp[(np.arange(count, dtype=np.int64) * k) % self.n]

    def is_primitive(self, theta: int) -> bool:
        if not 0 < theta < self.size:
            return False
        if self.d <= MAX_TABLE_DEGREE:
            return math.gcd(int(self.log[theta]), self.n) == 1
        if self.pow(theta, self.n) != 1:
            return False
        return all(self.pow(theta, self.n // p) != 1 for p in prime_factors(self.n))

    def primitive_elements(self) -> list[int]:
        """All primitive elements in increasing order of encoding."""
        return [y for y in range(1, self.size) if self.is_primitive(y)]

    def frobenius_power(self, y: int, i: int) -> int:
        """``y^{2^i}`` by ``i`` squarings."""
        for _ in range(i):
            y = self.mul(y, y)
        return y

    def trace(self, y: int) -> int:
        """Absolute trace ``Σ_{j<d} y^{2^j}``, returned as 0 or 1."""
        acc = 0
        z = y
        for _ in range(self.d):
            acc ^= z
            z = self.mul(z, z)
        assert acc in (0, 1)
        return acc

    def relative_trace(self, k: int, y: int) -> int:
        """``Σ_{j < d/k} y^{2^{jk}}``, an element of the subfield of size ``2^k``."""
        if k < 1 or self.d % k:
            raise NotADivisor(f"{k} does not divide {self.d}")
        acc = 0
        z = y
        for _ in range(self.d // k):
            acc ^= z
            z = self.frobenius_power(z, k)
        return acc

    def subfield_trace(self, k: int, y: int) -> int:
        """Absolute trace of a subfield element ``y`` of GF(2^k), as 0 or 1."""
        acc = 0
        z = y
        for _ in range(k):
            acc ^= z
            z = self.mul(z, z)
        if acc not in (0, 1):
            raise ValueError(f"{y} is not in the subfield of size 2^{k}")
        return acc

    def additive_character(self, y: int) -> int:
        return -1 if self.trace(y) else 1

    def _linear_image(self, fn) -> np.ndarray:
        return np.array([fn(1 << i) for i in range(self.d)], dtype=np.int64)

    @staticmethod
    def _apply_linear(images: np.ndarray, ys: np.ndarray) -> np.ndarray:
        ys = np.asarray(ys, dtype=np.int64)
        out = np.zeros_like(ys)
        for i, img in enumerate(images):
            out ^= ((ys >> i) & 1) * img
        return out

    @cached_property
    def trace_mask(self) -> int:
        """Bitmask ``m`` with ``Tr(y) = parity(y & m)``; trace is GF(2)-linear."""
        return int(sum(self.trace(1 << i) << i for i in range(self.d)))

    def trace_array(self, ys) -> np.ndarray:
        ys = np.asarray(ys, dtype=np.int64)
        return (np.bitwise_count(ys & self.trace_mask) & 1).astype(np.int64)

    def relative_trace_array(self, k: int, ys) -> np.ndarray:
        images = self._linear_image(lambda y: self.relative_trace(k, y))
        return self._apply_linear(images, ys)

    def subfield_trace_array(self, k: int, ys) -> np.ndarray:
        images = self._linear_image(lambda y: self._raw_subfield_trace(k, y))
        return self._apply_linear(images, ys)

    def _raw_subfield_trace(self, k: int, y: int) -> int:
        acc = 0
        z = y
        for _ in range(k):
            acc ^= z
            z = self.mul(z, z)
        return acc

    def pow_array(self, ys, e: int) -> np.ndarray:
        """Elementwise ``y^e`` via the log table (``0^e = 0`` for ``e > 0``)."""
        ys = np.asarray(ys, dtype=np.int64)
        lg = self.log[ys]
        out = self.exp[(lg * e) % self.n]
        return np.where(ys == 0, 0 if e > 0 else 1, out)


def trace(field: BinaryField, y: int) -> int:
    return field.trace(y)


def relative_trace(field: BinaryField, k: int, y: int) -> int:
    return field.relative_trace(k, y)


def additive_character(field: BinaryField, y: int) -> int:
    return field.additive_character(y)


# --- odd characteristic ------------------------------------------------------


def prime_power(q: int) -> tuple[int, int]:
    """``(p, e)`` with ``q = p^e``; raises if ``q`` is not a prime power."""
    if q < 2:
        raise NotPrimePower(f"{q} is not a prime power")
    ps = prime_factors(q)
    if len(ps) != 1:
        raise NotPrimePower(f"{q} is not a prime power")
    p = ps[0]
    e = round(math.log(q, p))
    while p ** e < q:
        e += 1
    while p ** e > q:
        e -= 1
    if p ** e != q:
        raise NotPrimePower(f"{q} is not a prime power")
    return p, e


def _poly_mulmod(a: Sequence[int], b: Sequence[int], f: Sequence[int], p: int) -> list[int]:
    """Product mod the monic ``f`` over GF(p); coefficient lists, low degree first."""
    e = len(f) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    for k in range(len(prod) - 1, e - 1, -1):
        c = prod[k]
        if c:
            for i in range(e + 1):
                prod[k - e + i] = (prod[k - e + i] - c * f[i]) % p
    out = prod[:e] + [0] * max(0, e - len(prod))
    return out


def _poly_powmod(a: list[int], n: int, f: Sequence[int], p: int) -> list[int]:
    e = len(f) - 1
    result = [1] + [0] * (e - 1)
    while n:
        if n & 1:
            result = _poly_mulmod(result, a, f, p)
        n >>= 1
        a = _poly_mulmod(a, a, f, p)
    return result


def find_primitive_poly(p: int, e: int) -> tuple[int, ...]:
    """Smallest monic primitive polynomial of degree ``e`` over GF(p).

    Returned as ``e + 1`` coefficients, constant term first.  Candidates are
    ordered by the base-``p`` integer formed from the non-leading coefficients.
    """
    q = p ** e
    ps = prime_factors(q - 1)
    one = [1] + [0] * (e - 1)
    x = [0, 1] + [0] * (e - 2)
    for code in range(1, p ** e):
        coeffs = [(code // p ** i) % p for i in range(e)]
        if coeffs[0] == 0:
            continue
        f = coeffs + [1]
        if _poly_powmod(x, q - 1, f, p) != one:
            continue
        if all(_poly_powmod(x, (q - 1) // r, f, p) != one for r in ps):
            return tuple(f)
    raise AssertionError("no primitive polynomial found")


class OddField:
    """GF(q) for odd prime power ``q <= 2^20``.

    For prime ``q`` elements are residues ``0..q-1``.  For ``q = p^e`` with
    ``e > 1`` an element is the integer ``Σ c_i p^i`` built from its
    coefficient vector modulo a primitive polynomial.
    """

    def __init__(self, q: int, modulus: Optional[Sequence[int]] = None):
        p, e = prime_power(q)
        if p == 2:
            raise NotPrimePower("OddField needs odd characteristic")
        if q > MAX_ODD_FIELD:
            raise TooLarge(f"q limited to {MAX_ODD_FIELD}")
        self.q, self.p, self.e = q, p, e
        if e == 1:
            self.modulus: Optional[tuple[int, ...]] = None
        else:
            self.modulus = tuple(modulus) if modulus is not None else find_primitive_poly(p, e)
            if len(self.modulus) != e + 1 or self.modulus[-1] != 1:
                raise NotPrimitive("modulus must be monic of degree e")
        self._build_tables()

    def __repr__(self) -> str:
        return f"OddField(q={self.q})"

    def _build_tables(self) -> None:
        q, p = self.q, self.p
        n = q - 1
        if self.e == 1:
            gen = smallest_primitive_root(p)
            block = max(1, math.isqrt(n))
            head = np.empty(block, dtype=np.int64)
            y = 1
            for i in range(block):
                head[i] = y
                y = y * gen % p
            exp = np.empty(n, dtype=np.int64)
            factor = 1
            for start in range(0, n, block):
                stop = min(start + block, n)
                exp[start:stop] = head[: stop - start] * factor % p
                factor = factor * y % p
        else:
            f = self.modulus
            e = self.e
            exp = np.empty(n, dtype=np.int64)
            coeffs = [1] + [0] * (e - 1)
            weights = [p ** i for i in range(e)]
            for j in range(n):
                exp[j] = sum(c * w for c, w in zip(coeffs, weights))
                top = coeffs[-1]
                coeffs = [0] + coeffs[:-1]
                if top:
                    coeffs = [(c - top * fi) % p for c, fi in zip(coeffs, f[:e])]
            if sum(c * w for c, w in zip(coeffs, weights)) != 1 or len(set(exp.tolist())) != n:
                raise NotPrimitive("modulus is not primitive")
        log = np.full(q, -1, dtype=np.int64)
        log[exp] = np.arange(n, dtype=np.int64)
        if np.any(log[1:] < 0):
            raise NotPrimitive("generator does not span the multiplicative group")
        exp.flags.writeable = False
        log.flags.writeable = False
        self.exp = exp
        self.log = log

    @property
    def generator(self) -> int:
        """The element the exp/log tables are taken with respect to."""
        return int(self.exp[1]) if self.q > 2 else 1

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        out, w = 0, 1
        for _ in range(self.e):
            out += ((a % self.p + b % self.p) % self.p) * w
            a //= self.p
            b //= self.p
            w *= self.p
        return out

    def add_one_array(self, ys) -> np.ndarray:
        ys = np.asarray(ys, dtype=np.int64)
        low = ys % self.p
        return ys - low + (low + 1) % self.p

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp[(self.log[a] + self.log[b]) % (self.q - 1)])

    def is_primitive(self, theta: int) -> bool:
        if not 0 < theta < self.q:
            return False
        return math.gcd(int(self.log[theta]), self.q - 1) == 1

    def smallest_primitive(self) -> int:
        for y in range(1, self.q):
            if self.is_primitive(y):
                return y
        raise AssertionError("field has no primitive element")

    def powers(self, theta: int, count: Optional[int] = None) -> np.ndarray:
        count = self.q - 1 if count is None else count
        k = int(self.log[theta])
        if k < 0:
            raise NotPrimitive("0 has no powers table")
        return self.exp[(np.arange(count, dtype=np.int64) * k) % (self.q - 1)]

    def quadratic_character(self, y: int) -> int:
        """+1 for 0 and nonzero squares, -1 for non-squares."""
        if y == 0:
            return 1
        return -1 if int(self.log[y]) % 2 else 1

    def quadratic_character_array(self, ys) -> np.ndarray:
        ys = np.asarray(ys, dtype=np.int64)
        odd = (self.log[ys] % 2 == 1) & (ys != 0)
        return np.where(odd, -1, 1).astype(np.int8)


def smallest_primitive_root(p: int) -> int:
    if p == 2:
        return 1
    ps = prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // r, p) != 1 for r in ps):
            return g
    raise AssertionError("no primitive root")


def quadratic_character(field: OddField, y: int) -> int:
    return field.quadratic_character(y)
