"""Brute-force reference computations used to cross-check the fast paths.

Sequences of length ``t`` are packed into integers, bit ``j`` set when
``a_j = -1``.  The aperiodic correlation at shift ``u`` is then
``(t - u) - 2 * popcount((x ^ (x >> u)) & mask)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import MeritFactorError, TooLarge
from .seq_core import as_binary, format_sequence

MAX_UNRESTRICTED = 24
MAX_SKEW = 41
CHUNK = 1 << 20


@dataclass
class SearchResult:
    length: int
    best_F: Optional[float]
    witnesses: list[str]
    restricted_best_F: Optional[float]
    examined: int
    best_energy: Optional[int] = None
    restricted_energy: Optional[int] = None
    extra: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "length": self.length,
            "best_F": self.best_F,
            "best_energy": self.best_energy,
            "restricted_best_F": self.restricted_best_F,
            "restricted_energy": self.restricted_energy,
            "witnesses": list(self.witnesses),
            "examined": self.examined,
        }


def _energies(x: np.ndarray, t: int) -> np.ndarray:
    """``Σ_{u≥1} c_u²`` for each packed sequence in ``x`` (uint64)."""
    e = np.zeros(x.shape, dtype=np.int64)
    for u in range(1, t):
        mask = np.uint64((1 << (t - u)) - 1)
        cu = (t - u) - 2 * np.bitwise_count((x ^ (x >> np.uint64(u))) & mask).astype(np.int64)
        e += cu * cu
    return e


def _unpack(x: int, t: int) -> np.ndarray:
    bits = (x >> np.arange(t)) & 1
    return (1 - 2 * bits).astype(np.int8)


def _orbit(seq: np.ndarray) -> list[np.ndarray]:
    """Images under negation, reversal and alternation (a group of order 8)."""
    alt = np.where(np.arange(seq.size) % 2 == 0, 1, -1).astype(np.int8)
    out = []
    for s in (seq, seq[::-1]):
        for m in (s, s * alt):
            out.extend((m, -m))
    return out


def canonical(seq) -> str:
    """Lexicographically least '+/-' string over the symmetry orbit."""
    return min(format_sequence(s) for s in _orbit(as_binary(seq)))


def _merit(t: int, energy: int) -> float:
    return math.inf if energy == 0 else t * t / (2.0 * energy)


def _search_plain(t: int) -> tuple[int, list[int], int]:
    # a_0 = a_1 = +1 by negation and alternation; reversal is not exploited
    free = max(t - 2, 0)
    total = 1 << free
    best, winners = None, []
    for start in range(0, total, CHUNK):
        y = np.arange(start, min(total, start + CHUNK), dtype=np.uint64)
        x = y << np.uint64(min(2, t))
        e = _energies(x, t)
        m = int(e.min())
        if best is None or m < best:
            best, winners = m, []
        if m == best:
            winners.extend(int(v) for v in x[e == m])
    return best, winners, total


def _skew_pack(free: np.ndarray, s: int) -> np.ndarray:
    """Packed skew-symmetric sequences of length 2s+1 from bits of a_0..a_s."""
    x = free.copy()
    for j in range(1, s + 1):
        bit = (free >> np.uint64(s - j)) & np.uint64(1)
        if j % 2:
            bit ^= np.uint64(1)
        x |= bit << np.uint64(s + j)
    return x


def _search_skew(t: int) -> tuple[int, list[int], int]:
    s = (t - 1) // 2
    # a_0 = +1 by negation (negation preserves skew-symmetry)
    total = 1 << s
    best, winners = None, []
    for start in range(0, total, CHUNK):
        y = np.arange(start, min(total, start + CHUNK), dtype=np.uint64)
        x = _skew_pack(y << np.uint64(1), s)
        e = _energies(x, t)
        m = int(e.min())
        if best is None or m < best:
            best, winners = m, []
        if m == best:
            winners.extend(int(v) for v in x[e == m])
    return best, winners, total


def exhaustive_best(t: int, restrict_skew: bool = False) -> SearchResult:
    """Exact optimum merit factor at length ``t``.

    Unrestricted search needs ``t <= 24``.  With ``restrict_skew`` only the
    skew-symmetric class is searched (odd ``t <= 41``) and the witnesses come
    from it; ``best_F`` is then filled only when ``t <= 24``.  For odd ``t``
    both optima are reported.
    """
    if t < 2:
        raise MeritFactorError("length must be at least 2")
    if restrict_skew:
        if t % 2 == 0:
            raise MeritFactorError("skew-symmetric sequences have odd length")
        if t > MAX_SKEW:
            raise TooLarge(f"skew-symmetric search limited to t <= {MAX_SKEW}")
    elif t > MAX_UNRESTRICTED:
        raise TooLarge(f"unrestricted search limited to t <= {MAX_UNRESTRICTED}")

    examined = 0
    best = rbest = None
    plain_w: list[int] = []
    skew_w: list[int] = []
    if t <= MAX_UNRESTRICTED:
        best, plain_w, n = _search_plain(t)
        examined += n
    if t % 2 == 1 and t >= 3:
        rbest, skew_w, n = _search_skew(t)
        examined += n
    chosen = skew_w if restrict_skew else plain_w
    witnesses = sorted({canonical(_unpack(x, t)) for x in chosen})
    return SearchResult(
        length=t,
        best_F=None if best is None else _merit(t, best),
        witnesses=witnesses,
        restricted_best_F=None if rbest is None else _merit(t, rbest),
        examined=examined,
        best_energy=best,
        restricted_energy=rbest,
    )


def negaperiodic_perfect_search(s: int) -> list[str]:
    """All negaperiodic-perfect sequences of even length ``s <= 24`` with ``w_0 = +1``.

    Candidates are filtered shift by shift, so almost all are discarded
    after the first one.
    """
    if s % 2 or s < 2:
        raise MeritFactorError("length must be even and positive")
    if s > MAX_UNRESTRICTED:
        raise TooLarge(f"exhaustive search limited to s <= {MAX_UNRESTRICTED}")
    full = np.uint64((1 << s) - 1)
    found: list[str] = []
    total = 1 << (s - 1)
    for start in range(0, total, CHUNK):
        x = (np.arange(start, min(total, start + CHUNK), dtype=np.uint64)) << np.uint64(1)
        # periodic correlation is symmetric in u, so u <= s/2 suffices
        for u in range(1, s // 2 + 1):
            rot = ((x >> np.uint64(u)) | (x << np.uint64(s - u))) & full
            pc = s - 2 * np.bitwise_count(x ^ rot).astype(np.int64)
            want = -s if u == s // 2 else 0
            x = x[pc == want]
            if x.size == 0:
                break
        found.extend(format_sequence(_unpack(int(v), s)) for v in x)
    return sorted(found)


MAX_DIRECT = 512


def _root_values_direct(a: np.ndarray) -> np.ndarray:
    """``A(ε_k)`` for all k by explicit evaluation, exponents reduced mod n exactly."""
    n = a.size
    jk = np.outer(np.arange(n), np.arange(n)) % n
    return np.exp(2j * np.pi * jk / n) @ a.astype(np.float64)


def l_function_direct(seq, a: int, b: int, c: int) -> complex:
    """``L(a, b, c)`` from the definition, without any FFT."""
    arr = as_binary(seq)
    n = arr.size
    if n > MAX_DIRECT:
        raise TooLarge(f"direct evaluation limited to n <= {MAX_DIRECT}")
    B = _root_values_direct(arr)
    k = np.arange(n)
    total = np.sum(B * B[(k + a) % n] * np.conj(B[(k + b) % n]) * np.conj(B[(k + c) % n]))
    return complex(total) / n ** 3


MAX_EXP_SUM = 64


def exp_sum_bound_check(n: int, intervals) -> dict:
    """Compare ``Σ_{a,b,c} |Σ ε_a^{i2} ε_b^{i3} ε_c^{i4}|`` with ``936 max(n,L)³ (1 + ln n)³``.

    ``intervals`` is four ``(start, length)`` pairs; the inner sum runs over
    ``i_k`` in those intervals with ``i1 + i2 = i3 + i4``.  Tuples are binned
    by residues and transformed with explicit DFT matrices.
    """
    if n < 1 or n > MAX_EXP_SUM:
        raise TooLarge(f"n limited to 1..{MAX_EXP_SUM}")
    ivs = [(int(s), int(l)) for s, l in intervals]
    if len(ivs) != 4 or any(l < 0 for _, l in ivs):
        raise MeritFactorError("need four intervals of nonnegative length")
    L = max(l for _, l in ivs)
    if L > MAX_EXP_SUM:
        raise TooLarge(f"interval length limited to {MAX_EXP_SUM}")
    rhs = 936.0 * max(n, L) ** 3 * (1.0 + math.log(n)) ** 3
    counts = np.zeros((n, n, n), dtype=np.float64)
    if min(l for _, l in ivs) > 0:
        (s1, l1), (s2, l2), (s3, l3), (s4, l4) = ivs
        i2, i3, i4 = np.meshgrid(np.arange(s2, s2 + l2), np.arange(s3, s3 + l3),
                                 np.arange(s4, s4 + l4), indexing="ij")
        i1 = i3 + i4 - i2
        ok = (i1 >= s1) & (i1 < s1 + l1)
        np.add.at(counts, (i2[ok] % n, i3[ok] % n, i4[ok] % n), 1.0)
    E = np.exp(2j * np.pi * (np.outer(np.arange(n), np.arange(n)) % n) / n)
    sums = np.einsum("ax,by,cz,xyz->abc", E, E, E, counts, optimize=True)
    lhs = float(np.abs(sums).sum())
    return {"n": n, "L": L, "intervals": [list(iv) for iv in ivs],
            "lhs": lhs, "rhs": rhs, "ok": lhs <= rhs}
