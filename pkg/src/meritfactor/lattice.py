"""Weighted lattice sums S_1, S_2, S_3 and lattice-point counts in a polyhedron.

The sums run over ``0 <= j1, j2, j3, j4 < t`` with ``j1 + j2 = j3 + j4`` and
pick up the weight ``w_{j1+r} w_{j2+r} w_{j3+r} w_{j4+r}`` when
``a | j4 - j2``, ``b | j3 - j2`` and ``c | j3 + j4 + 2r``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

import numpy as np

from .errors import EvenModulus, ParityMismatch, TooLarge

MAX_T = 512
CACHE_T = 192  # above this the flattened tuple arrays get too large to keep
BOUND_SLACK = 1e-9

PRINCIPAL_FACTOR = {1: 2.0 / 3.0, 2: 1.0 / 3.0, 3: 1.0 / 6.0}
BOUND_CONSTANT = {1: 4572.0, 2: 42624.0, 3: 42624.0}


def weights(variant: int, j) -> np.ndarray:
    """``w_j``: 1, ``(-1)^{j(j-1)/2}`` or ``(-1)^{j(j-1)²/2}`` for variants 1, 2, 3."""
    j = np.asarray(j, dtype=np.int64)
    if variant == 1:
        return np.ones(j.shape, dtype=np.int64)
    if variant == 2:
        e = (j * (j - 1) // 2) % 2
    elif variant == 3:
        e = (j * (j - 1) * (j - 1) // 2) % 2
    else:
        raise ValueError("variant must be 1, 2 or 3")
    return 1 - 2 * e


@dataclass(frozen=True)
class LatticeParams:
    r: int
    t: int
    a: int
    b: int
    c: int
    variant: int = 1

    def __post_init__(self) -> None:
        if self.t < 0:
            raise ValueError("t must be nonnegative")
        if any(m <= 0 or m % 2 == 0 for m in (self.a, self.b, self.c)):
            raise EvenModulus("a, b, c must be odd positive integers")
        if self.variant not in (1, 2, 3):
            raise ValueError("variant must be 1, 2 or 3")
        if self.t > MAX_T:
            raise TooLarge(f"t limited to {MAX_T}")


@lru_cache(maxsize=16)
def _tuples(t: int, r: int, variant: int) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Flattened ``(j4-j2, j3-j2, j3+j4+2r, weight)`` over all admissible tuples.

    Enumeration order is j2 outer, then j3, then j4.
    """
    if t == 0:
        empty = np.zeros(0, dtype=np.int64)
        return empty, empty, empty, empty
    j2, j3, j4 = np.meshgrid(np.arange(t), np.arange(t), np.arange(t), indexing="ij")
    j2, j3, j4 = j2.ravel(), j3.ravel(), j4.ravel()
    j1 = j3 + j4 - j2
    ok = (j1 >= 0) & (j1 < t)
    j1, j2, j3, j4 = j1[ok], j2[ok], j3[ok], j4[ok]
    w = (weights(variant, j1 + r) * weights(variant, j2 + r)
         * weights(variant, j3 + r) * weights(variant, j4 + r))
    out = (j4 - j2, j3 - j2, j3 + j4 + 2 * r, w)
    for arr in out:
        arr.flags.writeable = False
    return out


def _s_sum_slabs(p: LatticeParams) -> int:
    # one j2 slab at a time keeps memory at O(t^2)
    j3, j4 = np.meshgrid(np.arange(p.t), np.arange(p.t), indexing="ij")
    w34 = weights(p.variant, j3 + p.r) * weights(p.variant, j4 + p.r)
    zc = (j3 + j4 + 2 * p.r) % p.c == 0
    total = 0
    for j2 in range(p.t):
        j1 = j3 + j4 - j2
        mask = ((j1 >= 0) & (j1 < p.t) & zc
                & ((j4 - j2) % p.a == 0) & ((j3 - j2) % p.b == 0))
        if not mask.any():
            continue
        w = weights(p.variant, j1[mask] + p.r) * w34[mask] * int(weights(p.variant, j2 + p.r))
        total += int(w.sum())
    return total


def s_sum(params: LatticeParams) -> int:
    """Exact value of the weighted sum selected by ``params.variant``."""
    if params.t > CACHE_T:
        return _s_sum_slabs(params)
    x, y, z, w = _tuples(params.t, params.r, params.variant)
    mask = (x % params.a == 0) & (y % params.b == 0) & (z % params.c == 0)
    return int(w[mask].sum())


def s_sum_table(t: int, r: int, variant: int, moduli: Iterable[int]) -> dict[tuple[int, int, int], int]:
    """``s_sum`` for every ``(a, b, c)`` drawn from ``moduli``, sharing the enumeration."""
    moduli = sorted(set(moduli))
    for m in moduli:
        if m <= 0 or m % 2 == 0:
            raise EvenModulus("moduli must be odd positive integers")
    if t > MAX_T:
        raise TooLarge(f"t limited to {MAX_T}")
    if t > CACHE_T:
        return {(a, b, c): _s_sum_slabs(LatticeParams(r, t, a, b, c, variant))
                for a in moduli for b in moduli for c in moduli}
    x, y, z, w = _tuples(t, r, variant)
    table = {}
    for a in moduli:
        ka = x % a == 0
        ya, za, wa = y[ka], z[ka], w[ka]
        for b in moduli:
            kb = ya % b == 0
            zb, wb = za[kb], wa[kb]
            for c in moduli:
                table[(a, b, c)] = int(wb[zb % c == 0].sum())
    return table


def principal(variant: int, t: float, a: int, b: int, c: int) -> float:
    return PRINCIPAL_FACTOR[variant] * t ** 3 / (a * b * c)


def error_bound(variant: int, t: float, a: int, b: int, c: int) -> float:
    return BOUND_CONSTANT[variant] * max(t, a, b, c) ** 2 * max(a, b, c) / (a * b * c)


def s_bound_check(params: LatticeParams, value: int | None = None) -> dict:
    """Compare the exact sum with its principal term and error bound."""
    if value is None:
        value = s_sum(params)
    p = params
    main = principal(p.variant, p.t, p.a, p.b, p.c)
    bound = error_bound(p.variant, p.t, p.a, p.b, p.c)
    return {
        "variant": p.variant, "t": p.t, "r": p.r, "a": p.a, "b": p.b, "c": p.c,
        "value": value, "principal": main, "bound": bound,
        "ok": abs(value - main) <= bound * (1 + BOUND_SLACK),
    }


def polyhedron_count(t: float, a: int, b: int, c: int, shift=(0, 0, 0)) -> int:
    """Points of ``Λ + shift`` in ``C = {x, y, z, y + z - x all in [0, t)}``.

    ``Λ = {x ≡ y (mod a), x ≡ z (mod b), y ≡ -z (mod c)}``; the moduli must
    share a parity.  Brute-force enumeration over the bounding cube.
    """
    if len({a % 2, b % 2, c % 2}) != 1:
        raise ParityMismatch("a, b, c must all be odd or all even")
    if t <= 0:
        return 0
    side = math.ceil(t)
    if side > MAX_T:
        raise TooLarge(f"t limited to {MAX_T}")
    sx, sy, sz = shift
    g = np.arange(side)
    x, y, z = np.meshgrid(g, g, g, indexing="ij")
    u, v, w = x - sx, y - sy, z - sz
    inside = (x < t) & (y < t) & (z < t) & (y + z - x >= 0) & (y + z - x < t)
    in_lattice = ((u - v) % a == 0) & ((u - w) % b == 0) & ((v + w) % c == 0)
    return int(np.count_nonzero(inside & in_lattice))


def polyhedron_principal(t: float, a: int, b: int, c: int) -> tuple[float, float]:
    """Principal term and error bound for the count, by parity of the moduli."""
    m = max(t, a, b, c) ** 2 * max(a, b, c) / (a * b * c)
    if a % 2:
        return 2.0 * t ** 3 / (3 * a * b * c), 4572.0 * m
    return 4.0 * t ** 3 / (3 * a * b * c), 1332.0 * m


def sign_function(variant: int, h2: int, h3: int, h4: int) -> int:
    """Closed form of ``w_{h1} w_{h2} w_{h3} w_{h4}`` with ``h1 = h3 + h4 - h2``."""
    x, y, z = h4 - h2, h3 - h2, h3 + h4
    if variant == 2:
        return -1 if (x * y) % 2 else 1
    if variant == 3:
        if (x * y) % 2 == 0:
            return -1 if (x * y // 2) % 2 else 1
        return -1 if (z // 2) % 2 else 1
    raise ValueError("variant must be 2 or 3")


def sign_census(variant: int) -> tuple[int, int]:
    """Count ``(+1, -1)`` values of the weight product over residue triples mod 4.

    The triples are ``(k, l, m)`` in ``[0, 4)^3`` with ``m ≡ k + l (mod 2)``;
    for each one a representative ``(h2, h3, h4)`` is built and the weights are
    multiplied directly.
    """
    plus = minus = 0
    for k in range(4):
        for l in range(4):
            for m in range(4):
                if (m - k - l) % 2:
                    continue
                h2 = ((m - k - l) // 2) % 2
                h3, h4 = h2 + l, h2 + k
                h1 = h3 + h4 - h2
                val = int(np.prod(weights(variant, [h1, h2, h3, h4])))
                if val > 0:
                    plus += 1
                else:
                    minus += 1
    return plus, minus
