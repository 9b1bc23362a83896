"""Limit functions g(R, T) and h(T), their named constants, and maximizers."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.optimize import minimize

from .errors import NonpositiveT

__all__ = [
    "DomainWarning",
    "inverse_g",
    "inverse_h",
    "g",
    "h",
    "g_unit_T",
    "inverse_g_grid",
    "inverse_h_grid",
    "Cubic",
    "real_roots",
    "NAMED_CUBICS",
    "named_constants",
    "OptimumReport",
    "maximize_g",
    "maximize_h",
]


class DomainWarning(RuntimeWarning):
    """Raised as a warning when a reciprocal limit is not strictly positive."""


def _check_T(T: float) -> None:
    if not T > 0:
        raise NonpositiveT(f"T must be positive, got {T}")


def _sq_hinge(x: float) -> float:
    return x * x if x > 0 else 0.0


def _first_sum(T: float) -> float:
    # Σ_{m ≥ 1} max(0, 1 - m/T)², nonzero only for m < T
    return math.fsum(_sq_hinge(1.0 - m / T) for m in range(1, math.ceil(T) + 1))


def inverse_h(T: float) -> float:
    """``1/h(T) = 1 - 2T/3 + 4 Σ_{m≥1} max(0, 1 - m/T)²``."""
    _check_T(T)
    return math.fsum(((3.0 - 2.0 * T) / 3.0, 4.0 * _first_sum(T)))


def inverse_g(R: float, T: float) -> float:
    """``1/g(R, T)``.

    The second sum is taken over ``m' = m - floor(2R)`` against the fractional
    part of ``2R``, which makes ``g(R + 1/2, T) == g(R, T)`` bit-for-bit
    whenever ``R + 1/2`` is itself exactly representable.
    """
    _check_T(T)
    x = 2.0 * R
    frac = x - math.floor(x)
    lo = math.ceil(frac - 2.0 * T)
    hi = math.floor(frac + 2.0 * T)
    second = math.fsum(_sq_hinge(1.0 - abs(1.0 + (frac - m) / T)) for m in range(lo, hi + 1))
    return math.fsum(((3.0 - 4.0 * T) / 3.0, 4.0 * _first_sum(T), second))


def _reciprocal(inv: float, label: str) -> float:
    if inv <= 0.0:
        warnings.warn(f"{label}: reciprocal limit {inv!r} is not positive", DomainWarning, stacklevel=3)
        return math.inf
    return 1.0 / inv


def g(R: float, T: float) -> float:
    """Asymptotic merit factor of Legendre-type families at ``(R, T)``."""
    return _reciprocal(inverse_g(R, T), f"g({R}, {T})")


def h(T: float) -> float:
    """Asymptotic merit factor of Galois-type families at ``T``."""
    return _reciprocal(inverse_h(T), f"h({T})")


def g_unit_T(R: float) -> float:
    """Closed form ``g(R, 1) = 1 / (1/6 + 8 (R - 1/4)²)`` valid for ``0 <= R <= 1/2``."""
    return 1.0 / (1.0 / 6.0 + 8.0 * (R - 0.25) ** 2)


def _first_sum_grid(T: np.ndarray) -> np.ndarray:
    out = np.zeros_like(T)
    for m in range(1, int(math.ceil(float(np.max(T)))) + 1):
        out += np.maximum(0.0, 1.0 - m / T) ** 2
    return out


def inverse_h_grid(T) -> np.ndarray:
    """Vectorized ``1/h`` for positive arrays."""
    T = np.asarray(T, dtype=np.float64)
    if np.any(T <= 0):
        raise NonpositiveT("T must be positive")
    return 1.0 - 2.0 * T / 3.0 + 4.0 * _first_sum_grid(T)


def inverse_g_grid(R, T) -> np.ndarray:
    """Vectorized ``1/g`` with broadcasting; used for coarse grid scans."""
    R, T = np.broadcast_arrays(np.asarray(R, dtype=np.float64), np.asarray(T, dtype=np.float64))
    if np.any(T <= 0):
        raise NonpositiveT("T must be positive")
    x = 2.0 * R
    frac = x - np.floor(x)
    second = np.zeros_like(T)
    for m in range(0, int(math.floor(1.0 + 2.0 * float(np.max(T)))) + 1):
        second += np.maximum(0.0, 1.0 - np.abs(1.0 + (frac - m) / T)) ** 2
    return 1.0 - 4.0 * T / 3.0 + 4.0 * _first_sum_grid(T) + second


@dataclass(frozen=True)
class Cubic:
    """Real cubic ``a3 x³ + a2 x² + a1 x + a0``."""

    a3: float
    a2: float
    a1: float
    a0: float

    def __post_init__(self) -> None:
        if self.a3 == 0:
            raise ValueError("leading coefficient must be nonzero")

    def __call__(self, x: float) -> float:
        return ((self.a3 * x + self.a2) * x + self.a1) * x + self.a0

    def derivative(self, x: float) -> float:
        return (3.0 * self.a3 * x + 2.0 * self.a2) * x + self.a1

    def scale(self, x: float) -> float:
        """Magnitude of the largest term at ``x``; residuals are judged against it."""
        ax = abs(x)
        return max(abs(self.a3) * ax ** 3, abs(self.a2) * ax ** 2, abs(self.a1) * ax, abs(self.a0))


def _newton_polish(c: Cubic, x: float, steps: int = 8) -> float:
    best, best_res = x, abs(c(x))
    for _ in range(steps):
        d = c.derivative(x)
        if d == 0:
            break
        x = x - c(x) / d
        res = abs(c(x))
        if res < best_res:
            best, best_res = x, res
        if res == 0:
            break
    return best


def real_roots(c: Cubic) -> list[float]:
    """All distinct real roots in ascending order, Newton-polished.

    Closed-form seeds come from the depressed cubic ``y³ + py + q`` (trig
    form for three real roots, Cardano otherwise).
    """
    b, cc, d = c.a2 / c.a3, c.a1 / c.a3, c.a0 / c.a3
    shift = b / 3.0
    p = cc - b * b / 3.0
    q = 2.0 * b ** 3 / 27.0 - b * cc / 3.0 + d
    disc = (q / 2.0) ** 2 + (p / 3.0) ** 3
    tol = 1e-14 * max(1.0, abs(q) ** 2, abs(p) ** 3)
    if p == 0 and q == 0:
        seeds = [0.0]
    elif disc < -tol:
        rad = 2.0 * math.sqrt(-p / 3.0)
        arg = max(-1.0, min(1.0, 3.0 * q / (p * rad)))
        phi = math.acos(arg) / 3.0
        seeds = [rad * math.cos(phi - 2.0 * math.pi * k / 3.0) for k in range(3)]
    elif disc <= tol:
        u = math.copysign(abs(q / 2.0) ** (1.0 / 3.0), -q)
        seeds = [2.0 * u, -u]
    else:
        s = math.sqrt(disc)
        seeds = [float(np.cbrt(-q / 2.0 + s) + np.cbrt(-q / 2.0 - s))]
    roots = sorted(_newton_polish(c, y - shift) for y in seeds)
    merged: list[float] = []
    for r in roots:
        if merged and abs(r - merged[-1]) <= 1e-9 * max(1.0, abs(r)):
            if abs(c(r)) < abs(c(merged[-1])):
                merged[-1] = r
            continue
        merged.append(r)
    return merged


NAMED_CUBICS = {
    "F_a": Cubic(29.0, -249.0, 417.0, -27.0),
    "F_b": Cubic(7.0, -33.0, 33.0, -3.0),
    "T_a": Cubic(4.0, 0.0, -30.0, 27.0),
    "T_b": Cubic(1.0, 0.0, -12.0, 12.0),
}


def named_constants() -> dict[str, float]:
    """``F_a``, ``F_b`` (largest roots), ``T_a``, ``T_b`` (middle roots) and ``R_a``."""
    fa = real_roots(NAMED_CUBICS["F_a"])[-1]
    fb = real_roots(NAMED_CUBICS["F_b"])[-1]
    ta_roots = real_roots(NAMED_CUBICS["T_a"])
    tb_roots = real_roots(NAMED_CUBICS["T_b"])
    assert len(ta_roots) == 3 and len(tb_roots) == 3
    ta, tb = ta_roots[1], tb_roots[1]
    return {"F_a": fa, "F_b": fb, "T_a": ta, "T_b": tb, "R_a": 0.75 - ta / 2.0}


@dataclass(frozen=True)
class OptimumReport:
    argmax: tuple[float, ...]
    value: float
    iterations: int
    tolerance: float

    def as_dict(self) -> dict:
        return {"argmax": list(self.argmax), "value": self.value,
                "iterations": self.iterations, "tolerance": self.tolerance}


def _grid_argmax(values: np.ndarray, axes: Sequence[np.ndarray]) -> tuple[float, ...]:
    # np.argmax returns the first maximum in C order, i.e. the lexicographically smallest point
    idx = np.unravel_index(int(np.argmax(values)), values.shape)
    return tuple(float(ax[i]) for ax, i in zip(axes, idx))


def _stationary_polish(f, x0: np.ndarray, step: float = 1e-5, iters: int = 20) -> np.ndarray:
    """Newton iteration on a central-difference gradient of ``f``.

    Only used inside a cell where ``f`` is a single rational expression, so
    the finite differences see a smooth function.  Value comparisons alone
    cannot place a smooth peak closer than about ``sqrt(eps)``.
    """
    x = np.array(x0, dtype=np.float64)
    dim = x.size
    eye = np.eye(dim) * step
    for _ in range(iters):
        grad = np.array([(f(x + e) - f(x - e)) / (2 * step) for e in eye])
        hess = np.empty((dim, dim))
        for i in range(dim):
            for j in range(dim):
                hess[i, j] = (f(x + eye[i] + eye[j]) - f(x + eye[i] - eye[j])
                              - f(x - eye[i] + eye[j]) + f(x - eye[i] - eye[j])) / (4 * step * step)
        try:
            delta = np.linalg.solve(hess, grad)
        except np.linalg.LinAlgError:
            break
        if not np.all(np.isfinite(delta)) or np.max(np.abs(delta)) > 10 * step:
            break
        x = x - delta
        if np.max(np.abs(delta)) < 1e-15:
            break
    return x


def maximize_g(step: float = 1e-3) -> OptimumReport:
    """Global maximum of ``g`` over ``R in [0, 1/2)``, ``T in (0, 4]``.

    Coarse grid, then Nelder-Mead on ``1/g``, then a stationary-point polish.
    """
    Rs = np.arange(0.0, 0.5, step)
    Ts = np.arange(step, 4.0 + step / 2, step)
    inv = inverse_g_grid(Rs[:, None], Ts[None, :])
    start = _grid_argmax(-inv, (Rs, Ts))
    obj = lambda v: inverse_g(v[0], v[1]) if v[1] > 0 else math.inf
    res = minimize(obj, np.array(start), method="Nelder-Mead",
                   options={"xatol": 1e-13, "fatol": 1e-16, "maxiter": 20000})
    x = _stationary_polish(obj, res.x)
    if obj(x) > res.fun:
        x = res.x
    R = float(x[0] % 0.5)
    T = float(x[1])
    spread = float(np.max(np.abs(res.final_simplex[0] - res.final_simplex[0][0])))
    return OptimumReport((R, T), g(R, T), int(res.nit), spread)


def maximize_h(step: float = 1e-3) -> OptimumReport:
    """Global maximum of ``h`` on ``(0, 2]``; beyond 2 it only decreases."""
    Ts = np.arange(step, 2.0 + step / 2, step)
    start = _grid_argmax(-inverse_h_grid(Ts), (Ts,))
    obj = lambda v: inverse_h(v[0]) if v[0] > 0 else math.inf
    res = minimize(obj, np.array(start), method="Nelder-Mead",
                   options={"xatol": 1e-13, "fatol": 1e-16, "maxiter": 20000})
    x = _stationary_polish(obj, res.x)
    if obj(x) > res.fun:
        x = res.x
    T = float(x[0])
    spread = float(np.max(np.abs(res.final_simplex[0] - res.final_simplex[0][0])))
    return OptimumReport((T,), h(T), int(res.nit), spread)
