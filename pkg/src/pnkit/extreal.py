"""Arithmetic on the extended nonnegative half-line [0, inf].

Monotone transforms routinely push arguments to the endpoints (quasi-inverse
values above a tail, endpoint extensions of generated t-norms), so powers are
guarded here instead of relying on IEEE pow corner cases, which raise on
``0.0 ** -1`` and the like.
"""

from __future__ import annotations

import math

import numpy as np

INF = math.inf


def xpow(base: float, expo: float) -> float:
    """``base ** expo`` on [0, inf] with monotone-limit conventions.

    0^e = inf for e < 0, inf^e = 0 for e < 0, and anything^0 = 1.
    """
    if expo == 0.0:
        return 1.0
    if base == 0.0:
        return 0.0 if expo > 0 else INF
    if math.isinf(base):
        return INF if expo > 0 else 0.0
    return float(base) ** expo


def npow(base: np.ndarray, expo: float) -> np.ndarray:
    """Vectorized :func:`xpow` for a scalar exponent."""
    base = np.asarray(base, dtype=float)
    if expo == 0.0:
        return np.ones_like(base)
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        out = np.power(base, expo)
    if expo < 0:
        out = np.where(base == 0.0, INF, out)
        out = np.where(np.isinf(base), 0.0, out)
    else:
        out = np.where(base == 0.0, 0.0, out)
        out = np.where(np.isinf(base), INF, out)
    return out


def close_ext(a: float, b: float, abs_tol: float, rel_tol: float = 0.0) -> bool:
    """Equality on [0, inf] within ``abs_tol + rel_tol * max(|a|, |b|)``.

    Two infinities compare equal; an infinity never equals a finite value.
    """
    ainf, binf = math.isinf(a), math.isinf(b)
    if ainf or binf:
        return ainf and binf
    return abs(a - b) <= abs_tol + rel_tol * max(abs(a), abs(b))


def ext_gap(a: float, b: float) -> float:
    """|a - b| on [0, inf]; 0.0 when both are infinite, inf when only one is."""
    ainf, binf = math.isinf(a), math.isinf(b)
    if ainf and binf:
        return 0.0
    if ainf or binf:
        return INF
    return abs(a - b)
