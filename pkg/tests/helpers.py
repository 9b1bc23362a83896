"""Slow, obviously-correct reference implementations used only by the tests."""

from __future__ import annotations

import cmath
import math
from fractions import Fraction


def brute_autocorrelation(seq):
    t = len(seq)
    return [sum(int(seq[j]) * int(seq[j + u]) for j in range(t - u)) for u in range(t)]


def brute_merit_factor(seq) -> Fraction:
    c = brute_autocorrelation(seq)
    t = len(seq)
    return Fraction(t * t, 2 * sum(x * x for x in c[1:]))


def squares_mod(p: int) -> set[int]:
    return {(k * k) % p for k in range(1, p)}


def brute_legendre(j: int, p: int) -> int:
    j %= p
    if j == 0:
        return 0
    return 1 if j in squares_mod(p) else -1


def brute_prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while n > 1:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    return out


def brute_jacobi(j: int, n: int) -> int:
    """Product of Legendre symbols over the prime factorization (with multiplicity)."""
    out, m, p = 1, n, 2
    while m > 1:
        while m % p == 0:
            out *= brute_legendre(j, p)
            m //= p
        p += 1
    return out


def gf2_mul(a: int, b: int, modulus: int, d: int) -> int:
    """Schoolbook carry-less product followed by long division."""
    prod = 0
    i = 0
    while b >> i:
        if (b >> i) & 1:
            prod ^= a << i
        i += 1
    for k in range(prod.bit_length() - 1, d - 1, -1):
        if (prod >> k) & 1:
            prod ^= modulus << (k - d)
    return prod


def gf2_trace(y: int, modulus: int, d: int) -> int:
    """``y + y^2 + ... + y^(2^(d-1))`` evaluated by repeated squaring."""
    acc, z = 0, y
    for _ in range(d):
        acc ^= z
        z = gf2_mul(z, z, modulus, d)
    assert acc in (0, 1)
    return acc


def brute_galois(d: int, modulus: int, theta: int) -> list[int]:
    n = (1 << d) - 1
    out, z = [], 1
    for _ in range(n):
        out.append(1 - 2 * gf2_trace(z, modulus, d))
        z = gf2_mul(z, theta, modulus, d)
    return out


def poly_eval_roots(seq, k: int, n: int) -> complex:
    return sum(int(a) * cmath.exp(2j * math.pi * ((j * k) % n) / n) for j, a in enumerate(seq))


def brute_l_function(seq, a: int, b: int, c: int) -> complex:
    n = len(seq)
    B = [poly_eval_roots(seq, k, n) for k in range(n)]
    total = 0j
    for k in range(n):
        total += B[k] * B[(k + a) % n] * B[(k + b) % n].conjugate() * B[(k + c) % n].conjugate()
    return total / n ** 3
