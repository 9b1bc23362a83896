"""Finite-size experiments comparing measured merit factors with their limits.

Each experiment builds a family member, applies a construction and a
rotation/truncation, and records the measured merit factor next to the
limit-function prediction.  The CLI is a thin layer over these functions.
"""

from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Iterable, Optional

import numpy as np

from . import asymptotics
from .errors import BadModulus, MeritFactorError
from .families import FamilySpec, galois_seq
from .number_theory import BinaryField, factor_squarefree
from .seq_core import (
    is_skew_symmetric,
    autocorrelation,
    autocorrelation_fft,
    merit_factor_fast,
    negaperiodic,
    periodic_construction,
    rotate_truncate,
)

CONSTRUCTIONS = ("plain", "nega", "periodic")
SCALE = {"plain": 1, "nega": 2, "periodic": 4}
SWEEP_COLUMNS = ("family", "n", "r", "t", "construction", "F_measured", "F_predicted",
                 "abs_error", "wall_time_ms", "params")

LEGENDRE_TYPE = ("legendre", "jacobi")
GALOIS_TYPE = ("galois", "gmw", "sidelnikov")


def round_half_up(x: float) -> int:
    return int(math.floor(x + 0.5))


def parse_real(text) -> float:
    """Accept floats, fractions like ``1/4`` and the named constants ``R_a``, ``T_a``, ``T_b``, ``F_a``, ``F_b``."""
    if isinstance(text, (int, float)):
        return float(text)
    s = str(text).strip()
    consts = asymptotics.named_constants()
    if s in consts:
        return consts[s]
    if s.startswith("-") and s[1:] in consts:
        return -consts[s[1:]]
    return float(Fraction(s)) if "/" in s else float(s)


def parse_int_expr(text) -> int:
    """Integer literal or product such as ``13*9973``."""
    if isinstance(text, int):
        return text
    out = 1
    for part in str(text).split("*"):
        out *= int(part)
    return out


@dataclass
class SweepRecord:
    family: str
    n: int
    r: int
    t: int
    construction: str
    F_measured: float
    F_predicted: float
    abs_error: float
    wall_time_ms: Optional[float] = None
    params: str = ""

    def as_dict(self) -> dict:
        return asdict(self)


def apply_construction(seq: np.ndarray, construction: str) -> np.ndarray:
    if construction == "plain":
        return seq
    if construction == "nega":
        return negaperiodic(seq)
    if construction == "periodic":
        return periodic_construction(seq)
    raise MeritFactorError(f"unknown construction {construction!r}")


def predicted_limit(family: str, construction: str, R: float, T: float) -> float:
    """Limit of the merit factor for the family/construction at ``(R, T)``."""
    if family in LEGENDRE_TYPE:
        shift = 0.25 if construction == "nega" else 0.0
        return asymptotics.g(R + shift, T)
    if family in GALOIS_TYPE:
        return asymptotics.h(T)
    raise MeritFactorError(f"unknown family {family!r}")


def family_spec(family: str, size, extra: Optional[dict] = None) -> FamilySpec:
    """Map a ladder entry to a :class:`FamilySpec`; Galois/GMW sizes are degrees ``d``."""
    extra = dict(extra or {})
    key = {"legendre": "p", "jacobi": "n", "galois": "d", "gmw": "d", "sidelnikov": "q"}.get(family)
    if key is None:
        raise MeritFactorError(f"unknown family {family!r}")
    extra[key] = parse_int_expr(size)
    return FamilySpec(family, {k: v for k, v in extra.items() if v is not None})


def _params_label(info: dict) -> str:
    skip = {"family", "length"}
    return ";".join(f"{k}={info[k]}" for k in sorted(info) if k not in skip)


def measure(family: str, size, R: float, T: float, construction: str = "plain",
            extra: Optional[dict] = None, timing: bool = False) -> SweepRecord:
    """One row: ``r = round(R n s)``, ``t = round(T n s)`` with ``s`` the construction scale."""
    t0 = time.perf_counter()
    base, info = family_spec(family, size, extra).build()
    n = int(base.size)
    scale = SCALE[construction]
    r = round_half_up(R * n * scale)
    t = round_half_up(T * n * scale)
    if t < 2:
        raise MeritFactorError(f"truncation length {t} too small")
    seq = rotate_truncate(apply_construction(base, construction), r, t)
    F = merit_factor_fast(seq)
    pred = predicted_limit(family, construction, R, T)
    elapsed = (time.perf_counter() - t0) * 1e3 if timing else None
    return SweepRecord(family, n, r, t, construction, F, pred, abs(F - pred), elapsed,
                       _params_label(info))


def converge(family: str, R: float, T: float, sizes: Iterable, construction: str = "plain",
             extra: Optional[dict] = None, timing: bool = False) -> list[SweepRecord]:
    """Measured vs predicted merit factor along a size ladder, in input order."""
    return [measure(family, s, R, T, construction, extra, timing) for s in sizes]


def sweep(family: str, size, Rs: Iterable[float], Ts: Iterable[float], construction: str = "plain",
          extra: Optional[dict] = None, timing: bool = False) -> list[SweepRecord]:
    """Grid over ``(R, T)`` at a fixed size; R outer, T inner."""
    Ts = list(Ts)
    return [measure(family, size, R, T, construction, extra, timing) for R in Rs for T in Ts]


def odd_shift_correlations_vanish(seq) -> bool:
    c = autocorrelation(seq) if len(seq) <= 4096 else autocorrelation_fft(seq)
    return bool(np.all(c[1::2] == 0))


def skew_report(n: int, s: int, construction: str = "nega") -> dict:
    """Skew-symmetric truncation ``C(X_n)^{n-s, 2s+1}`` of a Jacobi sequence.

    Requires every prime divisor of ``n`` to be 1 mod 4.  The predicted value
    is ``g(1/4 - T/2, T)`` with ``T = s/n`` (nega) or ``s/(2n)`` (periodic).
    """
    if construction not in ("nega", "periodic"):
        raise MeritFactorError("skew construction must be nega or periodic")
    fac = factor_squarefree(n)
    bad = [p for p in fac.primes if p % 4 != 1]
    if bad:
        raise BadModulus(f"prime divisors {bad} of {n} are not 1 mod 4")
    base, _ = FamilySpec("legendre" if len(fac.primes) == 1 else "jacobi",
                         {"p": n} if len(fac.primes) == 1 else {"n": n}).build()
    seq = rotate_truncate(apply_construction(base, construction), n - s, 2 * s + 1)
    skew = is_skew_symmetric(seq)
    T = s / (n * (1 if construction == "nega" else 2))
    F = merit_factor_fast(seq) if seq.size >= 2 else math.inf
    pred = asymptotics.g(0.25 - T / 2, T) if T > 0 else None
    return {
        "n": n, "s": s, "construction": construction, "length": int(seq.size),
        "skew_symmetric": skew, "odd_shifts_zero": odd_shift_correlations_vanish(seq),
        "T": T, "F_measured": F, "F_predicted": pred,
        "abs_error": None if pred is None else abs(F - pred),
    }


def canonical_binary_thetas(fld: BinaryField, count: int) -> list[int]:
    """The ``count`` smallest primitive elements from pairwise distinct Frobenius classes.

    Conjugates ``θ^(2^i)`` give identical Galois sequences, so comparing them
    says nothing about θ-dependence.
    """
    seen: set[int] = set()
    out: list[int] = []
    for th in sorted(int(e) for e in fld.primitive_elements()):
        if th in seen:
            continue
        out.append(th)
        seen.update(fld.frobenius_power(th, i) for i in range(fld.d))
        if len(out) == count:
            break
    return out


def galois_theta_spread(d: int, T: float, thetas: Optional[list[int]] = None, r: int = 0) -> dict:
    """Merit factors of ``Y_{n,θ}^{r,t}`` for several θ and their spread."""
    fld = BinaryField(d)
    thetas = thetas or canonical_binary_thetas(fld, 2)
    t = round_half_up(T * fld.n)
    Fs = [merit_factor_fast(rotate_truncate(galois_seq(fld, th), r, t)) for th in thetas]
    pred = asymptotics.h(T)
    return {"d": d, "n": fld.n, "T": T, "t": t, "thetas": thetas, "F": Fs,
            "abs_error": [abs(f - pred) for f in Fs], "spread": max(Fs) - min(Fs),
            "F_predicted": pred}


def gmw_ells(k: int) -> list[int]:
    """Exponents ``1 <= ell < 2^k - 1`` coprime to ``2^k - 1``."""
    m = (1 << k) - 1
    return [ell for ell in range(1, max(m, 2)) if math.gcd(ell, m) == 1]


def conjecture_records(kind: str, T_values: Iterable[float], R: float = 0.0,
                       d: int = 8, ks: Iterable[int] = (2, 4), ells: Optional[Iterable[int]] = None,
                       qs: Iterable[int] = (1009, 4099), timing: bool = False) -> list[SweepRecord]:
    """GMW or Sidelnikov measurements against ``h(T)``; nothing is asserted."""
    T_values = list(T_values)
    rows: list[SweepRecord] = []
    if kind == "gmw":
        for k in ks:
            for ell in (list(ells) if ells is not None else gmw_ells(k)):
                for T in T_values:
                    rows.append(measure("gmw", d, R, T, "plain", {"k": k, "ell": ell}, timing))
    elif kind == "sidelnikov":
        for q in qs:
            for T in T_values:
                rows.append(measure("sidelnikov", q, R, T, "plain", None, timing))
    else:
        raise MeritFactorError(f"unknown conjecture family {kind!r}")
    return rows
