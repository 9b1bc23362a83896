"""Binary sequences, aperiodic autocorrelation and the merit factor.

A binary sequence is held as a one-dimensional ``int8`` numpy array with
entries in {-1, +1}.  Every function here accepts any array-like of signs
and returns a fresh array, so callers never share mutable state.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Iterable, Optional

import numpy as np
import scipy.fft

from .errors import BadSampleCount, InvalidSequence, LengthTooSmall

__all__ = [
    "as_binary",
    "autocorrelation",
    "energy",
    "merit_factor",
    "merit_factor_fast",
    "merit_factor_integral",
    "rotate_truncate",
    "product_seq",
    "negaperiodic",
    "periodic_construction",
    "NEGAPERIODIC_MASK",
    "PERIODIC_MASK",
    "is_skew_symmetric",
    "periodic_autocorrelation",
    "check_negaperiodic_perfect",
    "check_periodic_perfect",
    "check_reversible",
    "parse_sequence",
    "format_sequence",
    "read_sequence",
    "write_sequence",
]

NEGAPERIODIC_MASK = np.array([1, 1, -1, -1], dtype=np.int8)
PERIODIC_MASK = np.array([1, 1, -1, 1], dtype=np.int8)

# Above this length Σc_u² may leave int64 range; fall back to Python ints.
_INT64_SAFE_LENGTH = 2_000_000


def as_binary(seq) -> np.ndarray:
    """Validate ``seq`` and return it as a new ``int8`` array of signs."""
    arr = np.asarray(seq)
    if arr.ndim != 1 or arr.size == 0:
        raise InvalidSequence("a binary sequence is a non-empty 1-D array")
    if arr.dtype.kind not in "iub":
        if arr.dtype.kind == "f" and np.all(arr == np.round(arr)):
            arr = arr.astype(np.int64)
        else:
            raise InvalidSequence(f"unsupported element type {arr.dtype}")
    if not np.all((arr == 1) | (arr == -1)):
        raise InvalidSequence("every element must be -1 or +1")
    return arr.astype(np.int8)


def autocorrelation(seq) -> np.ndarray:
    """Aperiodic autocorrelations ``c_0, ..., c_{t-1}`` as exact int64 values."""
    a = as_binary(seq).astype(np.int64)
    t = a.size
    return np.correlate(a, a, mode="full")[t - 1:]


def energy(corr: np.ndarray) -> int:
    """Sum of squared off-peak correlations, ``Σ_{u≥1} c_u²``, as a Python int."""
    off = np.asarray(corr[1:], dtype=np.int64)
    if corr.size > _INT64_SAFE_LENGTH:
        return sum(int(c) * int(c) for c in off)
    return int(np.dot(off, off))


def _merit_from_energy(t: int, e: int) -> float:
    if e == 0:
        return math.inf
    return (t * t) / (2 * e)


def _require_length(a: np.ndarray) -> None:
    if a.size < 2:
        raise LengthTooSmall("merit factor needs length >= 2")


def merit_factor(seq) -> float:
    """Merit factor ``t² / (2 Σ c_u²)`` by direct correlation.

    Returns ``math.inf`` if every off-peak correlation vanishes; that cannot
    happen for a true binary sequence of length >= 2 because ``c_{t-1}`` is ±1.
    """
    a = as_binary(seq)
    _require_length(a)
    return _merit_from_energy(a.size, energy(autocorrelation(a)))


def autocorrelation_fft(seq) -> np.ndarray:
    """Aperiodic autocorrelations via a zero-padded real FFT, rounded to ints."""
    a = as_binary(seq).astype(np.float64)
    t = a.size
    size = scipy.fft.next_fast_len(2 * t, real=True)
    spec = scipy.fft.rfft(a, size)
    raw = scipy.fft.irfft(spec.real ** 2 + spec.imag ** 2, size)[:t]
    rounded = np.rint(raw)
    worst = float(np.max(np.abs(raw - rounded)))
    # correlations are integers, so rounding is exact while FFT error < 0.5
    assert worst < 0.25, f"FFT rounding error {worst} too large"
    return rounded.astype(np.int64)


def merit_factor_fast(seq) -> float:
    """Merit factor computed through :func:`autocorrelation_fft`."""
    a = as_binary(seq)
    _require_length(a)
    return _merit_from_energy(a.size, energy(autocorrelation_fft(a)))


def merit_factor_integral(seq, num_samples: Optional[int] = None) -> float:
    """Merit factor from the L4 norm of the sequence polynomial on the circle.

    ``|A(e^{iθ})|⁴`` is sampled at ``num_samples`` equally spaced points and
    averaged.  The integrand is a trigonometric polynomial of degree
    ``2(t-1)``, so the rule is exact once ``num_samples >= 2t - 1``; the
    default of ``4t - 3`` leaves a wide margin.  Fewer samples give an
    aliased approximation.
    """
    a = as_binary(seq)
    _require_length(a)
    t = a.size
    m = 4 * t - 3 if num_samples is None else int(num_samples)
    if m < 2:
        raise BadSampleCount("need at least 2 samples")
    folded = np.zeros(m, dtype=np.float64)
    np.add.at(folded, np.arange(t) % m, a)
    values = np.fft.fft(folded)
    mod2 = values.real ** 2 + values.imag ** 2
    inv = -1.0 + float(np.mean(mod2 * mod2)) / (t * t)
    if inv <= 0:
        return math.inf
    return 1.0 / inv


def rotate_truncate(seq, r: int, t: int) -> np.ndarray:
    """Coefficients of ``A^{r,t}(z) = Σ_{j<t} a_{j+r} z^j`` with indices mod n.

    ``r`` may be any integer; ``t < n`` truncates, ``t > n`` appends.
    """
    a = as_binary(seq)
    if t < 1:
        raise InvalidSequence("t must be positive")
    n = a.size
    return a[(np.arange(t, dtype=np.int64) + r) % n]


def product_seq(v, w) -> np.ndarray:
    """Length ``n·s`` product sequence with element ``j = v_{j mod n} w_{j mod s}``."""
    v = as_binary(v)
    w = as_binary(w)
    j = np.arange(v.size * w.size, dtype=np.int64)
    return v[j % v.size] * w[j % w.size]


def negaperiodic(seq) -> np.ndarray:
    """Length-4n sequence ``(-1)^{j(j-1)/2} a_{j mod n}``; mask (+,+,-,-)."""
    return product_seq(seq, NEGAPERIODIC_MASK)


def periodic_construction(seq) -> np.ndarray:
    """Length-4n sequence ``(-1)^{j(j-1)²/2} a_{j mod n}``; mask (+,+,-,+)."""
    return product_seq(seq, PERIODIC_MASK)


def is_skew_symmetric(seq) -> bool:
    """True iff the length is ``2s+1`` and ``a_{s+j} = (-1)^j a_{s-j}`` for ``j = 1..s``."""
    a = as_binary(seq)
    if a.size % 2 == 0:
        return False
    s = a.size // 2
    j = np.arange(1, s + 1)
    signs = np.where(j % 2 == 0, 1, -1)
    return bool(np.all(a[s + j] == signs * a[s - j]))


def periodic_autocorrelation(seq) -> np.ndarray:
    """Periodic autocorrelations ``Σ_j w_j w_{j+u mod s}`` for ``u = 0..s-1``."""
    w = as_binary(seq).astype(np.int64)
    return np.array([int(np.dot(w, np.roll(w, -u))) for u in range(w.size)],
                    dtype=np.int64)


def check_negaperiodic_perfect(seq) -> bool:
    """Whether ``w`` has periodic correlation s, -s, 0 at shifts 0, s/2, other."""
    w = as_binary(seq)
    s = w.size
    if s % 2:
        return False
    target = np.zeros(s, dtype=np.int64)
    target[0] = s
    target[s // 2] = -s
    return bool(np.array_equal(periodic_autocorrelation(w), target))


def check_periodic_perfect(seq) -> bool:
    """Whether every nonzero periodic shift of ``w`` has correlation zero."""
    corr = periodic_autocorrelation(seq)
    return bool(np.all(corr[1:] == 0))


def check_reversible(seq) -> Optional[int]:
    """Smallest ``k`` with ``w_{(k-j) mod s} = w_j`` for all ``j``, or ``None``."""
    w = as_binary(seq)
    s = w.size
    j = np.arange(s)
    for k in range(s):
        if np.array_equal(w[(k - j) % s], w):
            return k
    return None


def parse_sequence(text: str) -> np.ndarray:
    """Parse the sequence text format.

    Lines starting with ``#`` are comments.  The body is either a run of
    ``+``/``-`` characters or whitespace-separated ``+1``, ``-1``, ``1`` tokens.
    """
    body = [ln.strip() for ln in text.splitlines()
            if ln.strip() and not ln.lstrip().startswith("#")]
    if not body:
        raise InvalidSequence("no sequence data found")
    joined = " ".join(body)
    compact = joined.replace(" ", "")
    if compact and set(compact) <= {"+", "-"} and len(body) == 1 and " " not in joined:
        return np.array([1 if ch == "+" else -1 for ch in compact], dtype=np.int8)
    values = []
    for tok in joined.split():
        if tok in ("+1", "1", "+"):
            values.append(1)
        elif tok in ("-1", "-"):
            values.append(-1)
        else:
            raise InvalidSequence(f"bad token {tok!r}")
    return np.array(values, dtype=np.int8)


def format_sequence(seq) -> str:
    return "".join("+" if x > 0 else "-" for x in as_binary(seq))


def read_sequence(path) -> np.ndarray:
    return parse_sequence(Path(path).read_text())


def write_sequence(path, seq, comments: Iterable[str] = ()) -> None:
    lines = [f"# {c}" for c in comments]
    lines.append(format_sequence(seq))
    Path(path).write_text("\n".join(lines) + "\n")
