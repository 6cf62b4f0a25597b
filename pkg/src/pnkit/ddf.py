"""Distance distribution functions with exact closed-form arithmetic.

A distance distribution function (d.d.f.) is nondecreasing and left-continuous
on [0, inf] with F(0) = 0 and values in [0, 1].  Closed-form variants (unit
steps, scaled base curves, piecewise-linear breakpoint functions, pointwise
minima and monotone reconstructions) stay symbolic so quasi-inverses and the
min-convolutions built on them are exact; only genuinely irregular functions
need the breakpoint representation.

The stored convention is left continuity everywhere; right limits are computed
on demand.  Evaluation at infinity returns the analytically stored tail value,
and a d.d.f. belongs to the class D+ exactly when that tail equals 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .extreal import INF, close_ext
from .tolerances import TOL_METRIC

__all__ = [
    "DDF",
    "Step",
    "Exponential",
    "UniformUnit",
    "HalfExponential",
    "Breakpoints",
    "Scaled",
    "MinOf",
    "FromQuasiInverse",
    "QuasiInverse",
    "EPS0",
    "EPS_INF",
    "make_eps",
    "eval_ddf",
    "quasi_inverse",
    "is_in_Dplus",
    "is_eps0",
    "scaled",
    "min_of",
    "sibley_distance",
    "check_ddf",
]

_QI_BISECT_STEPS = 90
_RECONSTRUCT_BISECT_STEPS = 70
_QI_DOUBLING_CAP = 1e120


def _validate_args(x: np.ndarray) -> None:
    if np.any(np.isnan(x)):
        raise ValueError("d.d.f. argument must not be NaN")
    if np.any(x < 0):
        raise ValueError("d.d.f. argument must be nonnegative")


class DDF:
    """Base class.  Subclasses implement `_eval_core` on positive finite arrays."""

    @property
    def tail_value(self) -> float:
        raise NotImplementedError

    def _eval_core(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def eval(self, x):
        """Left-continuous evaluation at ``x`` (scalar or array), ``x >= 0``."""
        arr = np.asarray(x, dtype=float)
        scalar = arr.ndim == 0
        arr = np.atleast_1d(arr)
        _validate_args(arr)
        out = np.zeros_like(arr)
        inf_mask = np.isinf(arr)
        out[inf_mask] = self.tail_value
        pos = (~inf_mask) & (arr > 0)
        if np.any(pos):
            out[pos] = np.clip(self._eval_core(arr[pos]), 0.0, 1.0)
        return float(out[0]) if scalar else out

    __call__ = eval

    def right_limit(self, x: float, h0: float = 1e-7) -> float:
        """Limit of F from the right at ``x``, by a decreasing mesh."""
        x = float(x)
        if math.isinf(x):
            return self.tail_value
        vals = [self.eval(x + h0 * 10.0**-k) for k in range(6)]
        return vals[-1]

    def quasi_inverse(self) -> "QuasiInverse":
        """Left-continuous generalized inverse ``q(t) = sup{u : F(u) < t}``."""
        return QuasiInverse(fn=lambda t: _qi_bisect(self, t), tail=self.tail_value,
                            vectorized=False)

    def breakpoints(self) -> tuple[float, ...]:
        """Finite jump/kink locations; a hint for grid placement."""
        return ()

    @property
    def is_continuous(self) -> bool:
        return False

    @property
    def is_strictly_increasing(self) -> bool:
        """Strictly increasing wherever the function is below its tail value."""
        return False


def _qi_bisect(F: DDF, t: float) -> float:
    """sup{u : F(u) < t} for 0 < t <= tail, by doubling plus bisection."""
    hi = 1.0
    while F.eval(hi) < t:
        hi *= 2.0
        if hi > _QI_DOUBLING_CAP:
            return INF
    lo = 0.0
    for _ in range(_QI_BISECT_STEPS):
        mid = 0.5 * (lo + hi)
        if F.eval(mid) < t:
            lo = mid
        else:
            hi = mid
    return lo


@dataclass(frozen=True)
class QuasiInverse:
    """``q(t) = sup{u : F(u) < t}`` on [0, 1], with ``q(0) = 0``.

    Above the source tail value the quasi-inverse is infinite.  ``constant``
    is set when the source is a unit step, in which case q is that threshold
    on all of (0, 1].
    """

    fn: Callable[[float], float]
    tail: float
    constant: float | None = None
    vectorized: bool = True

    def eval(self, t: float) -> float:
        t = float(t)
        if math.isnan(t) or t < 0.0 or t > 1.0:
            raise ValueError("quasi-inverse argument must lie in [0, 1]")
        if t == 0.0:
            return 0.0
        if t > self.tail:
            return INF
        return max(float(self.fn(t)), 0.0)

    __call__ = eval

    def eval_array(self, t: np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        if np.any(np.isnan(t)) or np.any(t < 0.0) or np.any(t > 1.0):
            raise ValueError("quasi-inverse argument must lie in [0, 1]")
        out = np.full(t.shape, INF)
        inside = t <= self.tail
        if np.any(inside):
            if self.vectorized:
                with np.errstate(divide="ignore", invalid="ignore"):
                    out[inside] = np.maximum(self.fn(t[inside]), 0.0)
            else:
                out[inside] = [max(float(self.fn(v)), 0.0) for v in t[inside]]
        out[t == 0.0] = 0.0
        return out


@dataclass(frozen=True)
class Step(DDF):
    """Unit step at ``a``: 0 on [0, a], 1 on (a, inf).  Step(inf) is identically 0."""

    a: float

    def __post_init__(self):
        a = float(self.a)
        if math.isnan(a) or a < 0:
            raise ValueError("step threshold must be nonnegative or inf")
        object.__setattr__(self, "a", a)

    @property
    def tail_value(self) -> float:
        return 0.0 if math.isinf(self.a) else 1.0

    def _eval_core(self, x: np.ndarray) -> np.ndarray:
        return np.where(x > self.a, 1.0, 0.0)

    def quasi_inverse(self) -> QuasiInverse:
        a = self.a
        return QuasiInverse(fn=lambda t: np.full(np.shape(t), a) if np.ndim(t) else a,
                            tail=self.tail_value, constant=a)

    def breakpoints(self) -> tuple[float, ...]:
        return (self.a,) if math.isfinite(self.a) else ()


@dataclass(frozen=True)
class Exponential(DDF):
    """x -> 1 - exp(-x); strictly increasing with tail value 1."""

    @property
    def tail_value(self) -> float:
        return 1.0

    def _eval_core(self, x: np.ndarray) -> np.ndarray:
        return -np.expm1(-x)

    def quasi_inverse(self) -> QuasiInverse:
        return QuasiInverse(fn=lambda t: -np.log1p(-t), tail=1.0)

    @property
    def is_continuous(self) -> bool:
        return True

    @property
    def is_strictly_increasing(self) -> bool:
        return True


@dataclass(frozen=True)
class UniformUnit(DDF):
    """x -> min(x, 1); reaches 1 at x = 1."""

    @property
    def tail_value(self) -> float:
        return 1.0

    def _eval_core(self, x: np.ndarray) -> np.ndarray:
        return np.minimum(x, 1.0)

    def quasi_inverse(self) -> QuasiInverse:
        return QuasiInverse(fn=lambda t: t, tail=1.0)

    def breakpoints(self) -> tuple[float, ...]:
        return (1.0,)

    @property
    def is_continuous(self) -> bool:
        return True

    @property
    def is_strictly_increasing(self) -> bool:
        return True


@dataclass(frozen=True)
class HalfExponential(DDF):
    """x -> (1 - exp(-x)) / 2; tail value 1/2, hence outside D+."""

    @property
    def tail_value(self) -> float:
        return 0.5

    def _eval_core(self, x: np.ndarray) -> np.ndarray:
        return -0.5 * np.expm1(-x)

    def quasi_inverse(self) -> QuasiInverse:
        def fn(t):
            with np.errstate(divide="ignore"):
                return -np.log1p(-2.0 * np.asarray(t, dtype=float)) if np.ndim(t) else (
                    INF if t >= 0.5 else -math.log1p(-2.0 * t)
                )

        return QuasiInverse(fn=fn, tail=0.5)

    @property
    def is_continuous(self) -> bool:
        return True

    @property
    def is_strictly_increasing(self) -> bool:
        return True


@dataclass(frozen=True)
class Breakpoints(DDF):
    """Piecewise-linear d.d.f. given by (x, left value, right value) triples.

    At a breakpoint the stored value is the left value; just past it the
    function restarts from the right value and runs linearly to the next left
    value.  Past the last breakpoint the function is constant at that point's
    right value, which is therefore the tail.  A ``(0, 0, 0)`` anchor is
    implied when the first breakpoint is positive.
    """

    points: tuple[tuple[float, float, float], ...]

    def __post_init__(self):
        pts = tuple((float(x), float(v), float(w)) for x, v, w in self.points)
        if not pts:
            raise ValueError("breakpoint list must be nonempty")
        if pts[0][0] > 0:
            pts = ((0.0, 0.0, 0.0),) + pts
        xs = [p[0] for p in pts]
        if xs[0] != 0.0:
            raise ValueError("first breakpoint must be at x = 0")
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise ValueError("breakpoint abscissae must be strictly increasing")
        if pts[0][1] != 0.0:
            raise ValueError("a d.d.f. must vanish at 0")
        values = []
        for x, v, w in pts:
            if not (0.0 <= v <= w <= 1.0):
                raise ValueError("breakpoint values must satisfy 0 <= left <= right <= 1")
            values.extend([v, w])
        if any(b < a - 1e-15 for a, b in zip(values, values[1:])):
            raise ValueError("breakpoint values must be nondecreasing")
        object.__setattr__(self, "points", pts)

    @property
    def tail_value(self) -> float:
        return self.points[-1][2]

    def _arrays(self):
        xs = np.array([p[0] for p in self.points])
        vs = np.array([p[1] for p in self.points])
        ws = np.array([p[2] for p in self.points])
        return xs, vs, ws

    def _eval_core(self, x: np.ndarray) -> np.ndarray:
        xs, vs, ws = self._arrays()
        idx = np.searchsorted(xs, x, side="left")
        out = np.empty_like(x)
        at_bp = (idx < len(xs)) & (x == xs[np.minimum(idx, len(xs) - 1)])
        out[at_bp] = vs[idx[at_bp]]
        seg = ~at_bp
        if np.any(seg):
            i = idx[seg] - 1
            beyond = i >= len(xs) - 1
            vals = np.empty(i.shape)
            vals[beyond] = ws[-1]
            inside = ~beyond
            if np.any(inside):
                ii = i[inside]
                x0, x1 = xs[ii], xs[ii + 1]
                y0, y1 = ws[ii], vs[ii + 1]
                frac = (x[seg][inside] - x0) / (x1 - x0)
                vals[inside] = y0 + (y1 - y0) * frac
            out[seg] = vals
        return out

    def breakpoints(self) -> tuple[float, ...]:
        return tuple(p[0] for p in self.points)

    @property
    def is_continuous(self) -> bool:
        return all(v == w for _, v, w in self.points)

    @property
    def is_strictly_increasing(self) -> bool:
        # Strict increase below the tail: no flat linear segment before the
        # final plateau.
        for (x0, _, w0), (x1, v1, _) in zip(self.points, self.points[1:]):
            if w0 == v1 and w0 < self.tail_value:
                return False
        return True


def scaled(base: DDF, c: float) -> DDF:
    """The d.d.f. ``x -> base(x / c)`` with symbolic simplifications."""
    c = float(c)
    if not (c > 0) or math.isinf(c) or math.isnan(c):
        raise ValueError("scale must be positive and finite")
    if isinstance(base, Step):
        return Step(base.a * c)
    if isinstance(base, Scaled):
        return Scaled(base.base, base.c * c)
    if c == 1.0:
        return base
    return Scaled(base, c)


@dataclass(frozen=True)
class Scaled(DDF):
    """``x -> base(x / c)`` for a positive finite scale ``c``."""

    base: DDF
    c: float

    def __post_init__(self):
        c = float(self.c)
        if not (c > 0) or math.isinf(c):
            raise ValueError("scale must be positive and finite")
        object.__setattr__(self, "c", c)

    @property
    def tail_value(self) -> float:
        return self.base.tail_value

    def _eval_core(self, x: np.ndarray) -> np.ndarray:
        return self.base.eval(x / self.c)

    def quasi_inverse(self) -> QuasiInverse:
        inner = self.base.quasi_inverse()
        c = self.c
        const = None if inner.constant is None else inner.constant * c
        return QuasiInverse(fn=lambda t: c * np.asarray(inner.fn(t), dtype=float)
                            if np.ndim(t) else c * float(inner.fn(t)),
                            tail=inner.tail, constant=const,
                            vectorized=inner.vectorized)

    def breakpoints(self) -> tuple[float, ...]:
        return tuple(b * self.c for b in self.base.breakpoints())

    @property
    def is_continuous(self) -> bool:
        return self.base.is_continuous

    @property
    def is_strictly_increasing(self) -> bool:
        return self.base.is_strictly_increasing


def min_of(parts: Sequence[DDF]) -> DDF:
    """Pointwise minimum with symbolic simplifications."""
    flat: list[DDF] = []
    for p in parts:
        if isinstance(p, MinOf):
            flat.extend(p.parts)
        else:
            flat.append(p)
    if not flat:
        raise ValueError("min_of requires at least one function")
    if all(isinstance(p, Step) for p in flat):
        return Step(max(p.a for p in flat))
    pairs = [_as_scaled(p) for p in flat]
    if all(pr is not None for pr in pairs):
        base0 = pairs[0][0]
        if all(pr[0] == base0 for pr in pairs):
            return scaled(base0, max(pr[1] for pr in pairs))
    if len(flat) == 1:
        return flat[0]
    return MinOf(tuple(flat))


def _as_scaled(F: DDF):
    """View ``F`` as (base, scale) when it belongs to a scaled family."""
    if isinstance(F, Scaled):
        return (F.base, F.c)
    if isinstance(F, (Exponential, UniformUnit, HalfExponential, Breakpoints)):
        return (F, 1.0)
    return None


@dataclass(frozen=True)
class MinOf(DDF):
    """Pointwise minimum of finitely many d.d.f.s (itself a d.d.f.)."""

    parts: tuple[DDF, ...]

    @property
    def tail_value(self) -> float:
        return min(p.tail_value for p in self.parts)

    def _eval_core(self, x: np.ndarray) -> np.ndarray:
        vals = [p.eval(x) for p in self.parts]
        return np.minimum.reduce(vals)

    def quasi_inverse(self) -> QuasiInverse:
        qis = [p.quasi_inverse() for p in self.parts]

        def fn(t):
            return max(qi.eval(t) for qi in qis)

        return QuasiInverse(fn=fn, tail=self.tail_value, vectorized=False)

    def breakpoints(self) -> tuple[float, ...]:
        pts: set[float] = set()
        for p in self.parts:
            pts.update(p.breakpoints())
        return tuple(sorted(pts))


@dataclass(frozen=True, eq=False)
class FromQuasiInverse(DDF):
    """The d.d.f. reconstructed from a quasi-inverse by double inversion.

    ``F(x) = sup{t in [0, 1] : q(t) < x}``; evaluation runs a bisection in t,
    which is exact up to 2^-70 for a monotone q.
    """

    qi: QuasiInverse
    tail: float

    @property
    def tail_value(self) -> float:
        return self.tail

    def _eval_one(self, x: float) -> float:
        if self.qi.eval(1.0) < x:
            return 1.0
        lo, hi = 0.0, 1.0
        for _ in range(_RECONSTRUCT_BISECT_STEPS):
            mid = 0.5 * (lo + hi)
            if self.qi.eval(mid) < x:
                lo = mid
            else:
                hi = mid
        return lo

    def _eval_core(self, x: np.ndarray) -> np.ndarray:
        return np.array([self._eval_one(float(v)) for v in x])

    def quasi_inverse(self) -> QuasiInverse:
        return self.qi

    def breakpoints(self) -> tuple[float, ...]:
        pts = []
        for t in (0.25, 0.5, 0.75, 1.0):
            try:
                v = self.qi.eval(t)
            except ValueError:
                continue
            if math.isfinite(v):
                pts.append(v)
        return tuple(sorted(set(pts)))


EPS0 = Step(0.0)
EPS_INF = Step(INF)


def make_eps(a: float) -> Step:
    """The unit step at ``a >= 0`` (``a = inf`` gives the identically-0 function)."""
    return Step(a)


def eval_ddf(F: DDF, x):
    return F.eval(x)


def quasi_inverse(F: DDF) -> QuasiInverse:
    return F.quasi_inverse()


def is_in_Dplus(F: DDF) -> bool:
    """True exactly when the stored tail value equals 1."""
    return F.tail_value == 1.0


def is_eps0(F: DDF) -> bool:
    return isinstance(F, Step) and F.a == 0.0


# ---------------------------------------------------------------------------
# Sibley (modified Levy) metric
# ---------------------------------------------------------------------------

def _sibley_ok(F: DDF, G: DDF, h: float, grid_n: int) -> bool:
    """Do the symmetrized two-sided conditions hold at offset ``h``?

    Checks F(x-h) - h <= G(x) <= F(x+h) + h for all x in (0, 1/h), and the
    same with F and G exchanged, on a grid enriched with breakpoints.
    """
    xmax = 1.0 / h
    eps = 1e-12
    cand = set(np.linspace(0.0, xmax, grid_n)[1:])
    cand.add(eps)
    cand.add(max(xmax - eps, eps))
    for b in set(F.breakpoints()) | set(G.breakpoints()):
        for x in (b, b - h, b + h, b + eps, b - h + eps, b + h + eps):
            if 0.0 < x < xmax:
                cand.add(x)
    xs = np.array(sorted(cand))
    fm = F.eval(np.maximum(xs - h, 0.0))
    fp = F.eval(xs + h)
    gm = G.eval(np.maximum(xs - h, 0.0))
    gp = G.eval(xs + h)
    fx = F.eval(xs)
    gx = G.eval(xs)
    slack = 1e-12
    if np.any(fm - h > gx + slack) or np.any(gx > fp + h + slack):
        return False
    if np.any(gm - h > fx + slack) or np.any(fx > gp + h + slack):
        return False
    return True


def sibley_distance(F: DDF, G: DDF, tol: float = TOL_METRIC, grid_n: int = 2048) -> float:
    """Distance between two d.d.f.s under the modified Levy metric.

    Bisection on the offset h with per-h verification on a breakpoint-enriched
    grid; the result is within ``tol`` of the true infimum for piecewise
    smooth inputs.  The value always lies in [0, 1].
    """
    depth = max(16, int(math.ceil(math.log2(1.0 / tol))) + 2)
    lo, hi = 0.0, 1.0
    for _ in range(depth):
        mid = 0.5 * (lo + hi)
        if _sibley_ok(F, G, mid, grid_n):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

def check_ddf(F: DDF, xs=None, tol: float = 1e-9):
    """Validate d.d.f. invariants on a grid: range, monotonicity, F(0) = 0,
    left continuity at breakpoints, and tail consistency.

    Returns a CheckReport (imported lazily to keep this module standalone).
    """
    from .report import CheckReport
    from .sampling import x_grid

    if xs is None:
        xs = x_grid(F.breakpoints(), count=64)
    xs = np.asarray(xs, dtype=float)
    report = CheckReport(title="ddf-invariants")
    vals = F.eval(xs)

    report.add("zero_at_origin", F.eval(0.0) == 0.0)
    inrange = bool(np.all((vals >= -tol) & (vals <= 1.0 + tol)))
    report.add("values_in_unit_interval", inrange,
               worst_violation=float(max(np.max(-vals, initial=0.0),
                                         np.max(vals - 1.0, initial=0.0))),
               tolerance=tol)
    diffs = np.diff(vals)
    mono = bool(np.all(diffs >= -tol))
    worst_idx = int(np.argmin(diffs)) if len(diffs) else 0
    report.add("nondecreasing", mono,
               worst_violation=float(-np.min(diffs, initial=0.0)), tolerance=tol,
               witness=None if mono else {"x": float(xs[worst_idx + 1])})
    worst_lc = 0.0
    lc_witness = None
    for b in F.breakpoints():
        if not (math.isfinite(b) and b > 0):
            continue
        left_mesh = [F.eval(b * (1.0 - 10.0**-k)) for k in range(6, 12)]
        gap = abs(F.eval(b) - left_mesh[-1])
        if gap > worst_lc:
            worst_lc, lc_witness = gap, {"x": b}
        if gap > 1e-6:
            break
    report.add("left_continuous_at_breakpoints", worst_lc <= 1e-6,
               worst_violation=worst_lc, tolerance=1e-6, witness=lc_witness)
    big = F.eval(np.array([1e9, 1e12]))
    report.add("tail_dominates_finite_values",
               bool(np.all(big <= F.tail_value + tol)),
               tolerance=tol)
    return report
