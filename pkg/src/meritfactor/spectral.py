"""Quadruple correlation ``L_A(a, b, c)`` over n-th roots of unity.

``L_A`` is compared against the indicator functions ``I_n`` and ``J_n``;
the maximum deviation (and its ``(ln n)^3`` weighting) is the quantity
whose decay drives the asymptotic merit factor results.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import LengthMismatch, MeritFactorError
from .seq_core import as_binary

EXHAUSTIVE_LIMIT = 1024


@dataclass(frozen=True)
class RootSpectrum:
    """Values ``A(ε_k)``, ``ε_k = exp(2πik/n)``, for ``k = 0..n-1``."""

    values: np.ndarray
    n: int


@dataclass(frozen=True)
class DeviationReport:
    n: int
    target: str
    max_abs_deviation: float
    argmax: tuple[int, int, int]
    bound: Optional[float]
    weighted: float
    mode: str
    samples: Optional[int] = None
    seed: Optional[int] = None

    @property
    def within_bound(self) -> Optional[bool]:
        if self.bound is None:
            return None
        return self.max_abs_deviation <= self.bound

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "target": self.target,
            "maxdev": self.max_abs_deviation,
            "argmax": list(self.argmax),
            "bound": self.bound,
            "weighted": self.weighted,
            "mode": self.mode,
            "samples": self.samples,
            "seed": self.seed,
        }


def root_spectrum(seq, n: Optional[int] = None) -> RootSpectrum:
    """Evaluate the sequence polynomial at every n-th root of unity by FFT."""
    a = as_binary(seq)
    n = a.size if n is None else int(n)
    if n != a.size:
        raise LengthMismatch(f"sequence length {a.size} != n = {n}")
    # numpy's forward FFT uses exp(-2πijk/n); ifft carries the + sign
    values = np.fft.ifft(a.astype(np.float64)) * n
    values.flags.writeable = False
    return RootSpectrum(values, n)


def l_function(spec: RootSpectrum, a: int, b: int, c: int) -> complex:
    """``(1/n³) Σ_k A(ε_k) A(ε_{k+a}) conj(A(ε_{k+b})) conj(A(ε_{k+c}))``."""
    B = spec.values
    n = spec.n
    return complex(np.sum(B * np.roll(B, -a) * np.conj(np.roll(B, -b)) * np.conj(np.roll(B, -c)))) / n ** 3


def indicator_I(n: int, a: int, b: int, c: int) -> int:
    """1 iff one of a, b, c is zero mod n and the other two are equal mod n."""
    a, b, c = a % n, b % n, c % n
    return int((a == 0 and b == c) or (b == 0 and a == c) or (c == 0 and a == b))


def indicator_J(n: int, a: int, b: int, c: int) -> int:
    """1 iff (c = a and b = 0) or (a = b and c = 0), mod n."""
    a, b, c = a % n, b % n, c % n
    return int((c == a and b == 0) or (a == b and c == 0))


def _indicator_slab(target: str, n: int, a: int) -> np.ndarray:
    """Indicator values for fixed ``a`` over all ``(b, c)``."""
    b = np.arange(n)[:, None]
    c = np.arange(n)[None, :]
    if target == "I":
        m = ((a == 0) & (b == c)) | ((b == 0) & (c == a)) | ((c == 0) & (b == a))
    else:
        m = ((c == a) & (b == 0)) | ((b == a) & (c == 0))
    return m.astype(np.float64)


def l_slab(spec: RootSpectrum, a: int) -> np.ndarray:
    """``L(a, b, c)`` for fixed ``a`` and all ``b, c`` as an ``n x n`` array.

    For each ``b`` the sum over ``k`` is a circular cross-correlation in
    ``c``, done with one FFT pair per row: O(n² log n) per slab.
    """
    B = spec.values
    n = spec.n
    idx = (np.arange(n)[None, :] + np.arange(n)[:, None]) % n  # [b, k] -> k + b
    X = (B * np.roll(B, -a))[None, :] * np.conj(B[idx])       # X[b, k]
    # r[b, c] = Σ_k X[b, k] conj(B[k + c]) = conj(Σ_k conj(X[b, k]) B[k + c])
    u = np.conj(X)
    corr = np.fft.ifft(n * np.fft.ifft(u, axis=1) * np.fft.fft(B)[None, :], axis=1)
    return np.conj(corr) / n ** 3


def bound_for(target: str, n: int) -> float:
    """Deviation bound: ``18 n^{-1/2}`` for ``I``, ``(n+1)^{3/2} / n²`` for ``J``."""
    if target == "I":
        return 18.0 / math.sqrt(n)
    return (n + 1) ** 1.5 / n ** 2


def max_deviation(seq, target: str = "I", mode: str = "exhaustive",
                  samples: int = 20000, seed: int = 0, threads: int = 1) -> DeviationReport:
    """Maximum ``|L(a, b, c) - target(a, b, c)|`` over triples.

    ``mode="exhaustive"`` scans every triple (``n <= 1024``); ``"sample"``
    draws ``samples`` triples from a PRNG seeded with ``seed``.  Ties go to
    the lexicographically smallest triple.
    """
    if target not in ("I", "J"):
        raise MeritFactorError("target must be 'I' or 'J'")
    spec = root_spectrum(seq)
    n = spec.n
    if mode == "exhaustive":
        if n > EXHAUSTIVE_LIMIT:
            raise MeritFactorError(f"exhaustive scan limited to n <= {EXHAUSTIVE_LIMIT}")

        def scan(a: int) -> tuple[float, int, int]:
            dev = np.abs(l_slab(spec, a) - _indicator_slab(target, n, a))
            i = int(np.argmax(dev))
            return float(dev.flat[i]), i // n, i % n

        with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
            results = list(pool.map(scan, range(n)))
        best, arg = -1.0, (0, 0, 0)
        for a, (val, b, c) in enumerate(results):
            if val > best:
                best, arg = val, (a, b, c)
        used_samples, used_seed = None, None
    elif mode == "sample":
        rng = np.random.default_rng(seed)
        triples = rng.integers(0, n, size=(samples, 3))
        order = np.lexsort((triples[:, 2], triples[:, 1], triples[:, 0]))
        triples = triples[order]
        B = spec.values
        vals = np.empty(samples)
        for i, (a, b, c) in enumerate(triples):
            lval = np.sum(B * np.roll(B, -a) * np.conj(np.roll(B, -b)) * np.conj(np.roll(B, -c))) / n ** 3
            ind = indicator_I(n, a, b, c) if target == "I" else indicator_J(n, a, b, c)
            vals[i] = abs(lval - ind)
        i = int(np.argmax(vals))
        best, arg = float(vals[i]), tuple(int(v) for v in triples[i])
        used_samples, used_seed = samples, seed
    else:
        raise MeritFactorError(f"unknown mode {mode!r}")
    return DeviationReport(
        n=n, target=target, max_abs_deviation=best, argmax=arg,
        bound=bound_for(target, n), weighted=best * math.log(n) ** 3,
        mode=mode, samples=used_samples, seed=used_seed,
    )
