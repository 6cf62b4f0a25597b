"""Deterministic seeded sampling of vectors, scalars, and evaluation grids.

Scaling-law violations are scale sensitive, so vector magnitudes are drawn on
a log scale spanning 1e-3 to 1e3 rather than from a unit box.  Scalar weights
always include the degenerate values 0, 1/2, and 1, and evaluation grids
always include the breakpoints of the functions under test: the identities
being checked degenerate exactly at those points.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

import numpy as np

LOG_MAG_MIN = -3.0
LOG_MAG_MAX = 3.0


def rng_from_seed(seed: int | None) -> np.random.Generator:
    return np.random.default_rng(0 if seed is None else int(seed))


def sample_vector(rng: np.random.Generator, dim: int) -> np.ndarray:
    """One nonzero vector: unit-sphere direction times a log-scale magnitude."""
    while True:
        direction = rng.standard_normal(dim)
        norm = float(np.linalg.norm(direction))
        if norm > 1e-12:
            break
    magnitude = 10.0 ** rng.uniform(LOG_MAG_MIN, LOG_MAG_MAX)
    return direction / norm * magnitude


def sample_vectors(rng: np.random.Generator, count: int, dim: int) -> list[np.ndarray]:
    return [sample_vector(rng, dim) for _ in range(count)]


def sample_lambdas(rng: np.random.Generator, count: int) -> list[float]:
    """Convex weights in [0, 1], always starting with {0, 1/2, 1}."""
    base = [0.0, 0.5, 1.0]
    extra = [float(v) for v in rng.uniform(0.0, 1.0, size=max(0, count - len(base)))]
    return base + extra


def sample_nonzero_scalars(rng: np.random.Generator, count: int) -> list[float]:
    """Nonzero scaling factors on a symmetric log scale."""
    base = [0.5, -0.5, 2.0, 1.0, -1.0]
    out = list(base[: min(count, len(base))])
    while len(out) < count:
        mag = 10.0 ** rng.uniform(-2.0, 2.0)
        out.append(float(mag if rng.uniform() < 0.5 else -mag))
    return out


def sample_unit_interval(rng: np.random.Generator, count: int, open_ends: bool = False) -> list[float]:
    if open_ends:
        return [float(v) for v in rng.uniform(1e-6, 1.0 - 1e-6, size=count)]
    base = [0.0, 0.5, 1.0]
    extra = [float(v) for v in rng.uniform(0.0, 1.0, size=max(0, count - len(base)))]
    return base + extra


def x_grid(
    breakpoints: Iterable[float] = (),
    count: int = 32,
    lo: float = 1e-3,
    hi: float = 1e3,
) -> np.ndarray:
    """Positive evaluation grid: log-spaced points plus the given breakpoints.

    Each finite positive breakpoint is included together with a nearby point
    on each side, so jumps and kinks are probed from both directions.
    """
    pts = set(np.geomspace(lo, hi, count))
    for b in breakpoints:
        if not math.isfinite(b) or b <= 0:
            continue
        pts.add(b)
        pts.add(b * (1.0 + 1e-9))
        pts.add(max(b * (1.0 - 1e-9), lo / 10.0))
    return np.array(sorted(pts))


def merged_breakpoints(*functions) -> tuple[float, ...]:
    pts: set[float] = set()
    for f in functions:
        pts.update(b for b in f.breakpoints() if math.isfinite(b))
    return tuple(sorted(pts))
