"""Constructors for Legendre, Jacobi, Galois, Gordon-Mills-Welch and Sidelnikov sequences."""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from typing import Any, Optional

import numpy as np

from .errors import MeritFactorError, NotADivisor, NotCoprime, NotOdd, NotOddPrime, NotPrimitive
from .number_theory import BinaryField, OddField, factor_squarefree, is_prime, jacobi_array

FAMILIES = ("legendre", "jacobi", "galois", "gmw", "sidelnikov")


def legendre_seq(p: int) -> np.ndarray:
    """Legendre sequence of prime length ``p``; ``a_0 = +1``, ``a_j = (j/p)``."""
    if p < 3 or p % 2 == 0 or not is_prime(p):
        raise NotOddPrime(f"{p} is not an odd prime")
    seq = -np.ones(p, dtype=np.int8)
    k = np.arange(1, (p - 1) // 2 + 1, dtype=np.int64)
    seq[(k * k) % p] = 1
    seq[0] = 1
    return seq


def jacobi_seq(n: int) -> np.ndarray:
    """Jacobi sequence ``a_j = (j / (n/gcd(j, n)))`` of odd square-free length ``n``."""
    if n <= 1 or n % 2 == 0:
        raise NotOdd(f"{n} must be an odd integer > 1")
    factor_squarefree(n)
    j = np.arange(n, dtype=np.int64)
    denom = n // np.gcd(j, n)
    return jacobi_array(j, denom)


def _resolve_binary_theta(fld: BinaryField, theta: Optional[int]) -> int:
    theta = fld.x if theta is None else int(theta)
    if not fld.is_primitive(theta):
        raise NotPrimitive(f"{theta} is not primitive in GF(2^{fld.d})")
    return theta


def galois_seq(fld: BinaryField, theta: Optional[int] = None) -> np.ndarray:
    """Galois sequence ``(-1)^{Tr(θ^j)}``, ``j = 0..2^d-2``; θ defaults to ``x``."""
    theta = _resolve_binary_theta(fld, theta)
    traces = fld.trace_array(fld.powers(theta))
    return (1 - 2 * traces).astype(np.int8)


def gmw_seq(fld: BinaryField, k: int, ell: int, theta: Optional[int] = None) -> np.ndarray:
    """Gordon-Mills-Welch sequence ``ψ_K(Tr_{F/K}(θ^j)^ℓ)`` for the subfield K of size 2^k."""
    if k < 1 or fld.d % k:
        raise NotADivisor(f"{k} does not divide {fld.d}")
    if math.gcd(ell, (1 << k) - 1) != 1:
        raise NotCoprime(f"gcd({ell}, 2^{k}-1) != 1")
    theta = _resolve_binary_theta(fld, theta)
    z = fld.relative_trace_array(k, fld.powers(theta))
    zl = fld.pow_array(z, ell % fld.n if ell % fld.n else fld.n)
    traces = fld.subfield_trace_array(k, zl)
    if np.any((traces != 0) & (traces != 1)):
        raise AssertionError("subfield trace left GF(2)")
    return (1 - 2 * traces).astype(np.int8)


def _resolve_odd_theta(fld: OddField, theta: Optional[int]) -> int:
    theta = fld.smallest_primitive() if theta is None else int(theta)
    if not fld.is_primitive(theta):
        raise NotPrimitive(f"{theta} is not primitive in GF({fld.q})")
    return theta


def sidelnikov_seq(fld: OddField, theta: Optional[int] = None) -> np.ndarray:
    """Sidelnikov sequence ``η(θ^j + 1)``, ``j = 0..q-2``, with ``η(0) = +1``."""
    theta = _resolve_odd_theta(fld, theta)
    return fld.quadratic_character_array(fld.add_one_array(fld.powers(theta)))


@dataclass
class FamilySpec:
    """A family name plus its parameters; :meth:`build` returns the sequence.

    ``params`` keys by kind: legendre ``p``; jacobi ``n``; galois ``d``
    (``modulus``, ``theta`` optional); gmw ``d``, ``k``, ``ell`` (``modulus``,
    ``theta`` optional); sidelnikov ``q`` (``theta`` optional).
    """

    kind: str
    params: dict[str, Any] = dc_field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.kind not in FAMILIES:
            raise MeritFactorError(f"unknown family {self.kind!r}")

    def build(self) -> tuple[np.ndarray, dict[str, Any]]:
        """Return the sequence and a provenance dict (modulus, theta, length)."""
        p = self.params
        info: dict[str, Any] = {"family": self.kind}
        if self.kind == "legendre":
            seq = legendre_seq(int(p["p"]))
            info["p"] = int(p["p"])
        elif self.kind == "jacobi":
            seq = jacobi_seq(int(p["n"]))
            info["n"] = int(p["n"])
            info["primes"] = list(factor_squarefree(int(p["n"])).primes)
        elif self.kind in ("galois", "gmw"):
            fld = BinaryField(int(p["d"]), p.get("modulus"))
            theta = _resolve_binary_theta(fld, p.get("theta"))
            info.update(d=fld.d, modulus=fld.modulus, theta=theta)
            if self.kind == "galois":
                seq = galois_seq(fld, theta)
            else:
                seq = gmw_seq(fld, int(p["k"]), int(p["ell"]), theta)
                info.update(k=int(p["k"]), ell=int(p["ell"]))
        else:
            fld = OddField(int(p["q"]))
            theta = _resolve_odd_theta(fld, p.get("theta"))
            info.update(q=fld.q, theta=theta)
            if fld.modulus is not None:
                info["modulus"] = list(fld.modulus)
            seq = sidelnikov_seq(fld, theta)
        info["length"] = int(seq.size)
        return seq, info
