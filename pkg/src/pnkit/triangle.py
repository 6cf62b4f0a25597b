"""Triangle functions on distance distribution functions.

Binary operations on d.d.f.s with the unit step at 0 as identity: sup- and
inf-convolutions driven by a t-norm or t-conorm, their generalizations over a
monotone constraint curve L(u, v) = x, the maximal pointwise minimum, and
conjugates under a monotone transform of the half-line.

Two evaluation paths coexist.  When the driving t-norm is the minimum, the
convolution is computed exactly through quasi-inverse addition (the result's
quasi-inverse is ``L(F^, G^)``); every other variant runs a grid search over
the constraint set with a golden-section refinement around the best cell.
Grid-path results are only trusted to the grid tolerance and are flagged as
such by :func:`path_of`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .ddf import (
    DDF,
    EPS0,
    EPS_INF,
    FromQuasiInverse,
    QuasiInverse,
    Step,
    _as_scaled,
    is_eps0,
    min_of,
    scaled,
)
from .extreal import INF
from .phi import PhiMap, transform_ddf, require_admissible, Linear
from .report import CheckReport
from .sampling import rng_from_seed, x_grid, merged_breakpoints
from .tnorms import LOp, MinTNorm, SumLOp, TConorm, TNorm, SUM_L
from .tolerances import TOL_EXACT, TOL_GRID

__all__ = [
    "TriangleFn",
    "TauT",
    "TauTStar",
    "TauTL",
    "TauTStarL",
    "PointwiseM",
    "PhiTransformed",
    "GridConvolution",
    "apply",
    "path_of",
    "check_triangle_axioms",
    "compare_pointwise",
    "ComparisonResult",
    "phi_transform_triangle",
    "TAU_M",
]

_GRID_N = 2048
_REFINE_ITERS = 40
_EPS_OFFSET = 1e-9


class TriangleFn:
    name = "triangle"

    def apply(self, F: DDF, G: DDF) -> DDF:
        return apply(self, F, G)


@dataclass(frozen=True)
class TauT(TriangleFn):
    """Sup-convolution ``sup{T(F(s), G(t)) : s + t = x}``."""

    T: TNorm

    @property
    def name(self):
        return f"tauT[{self.T.name}]"


@dataclass(frozen=True)
class TauTStar(TriangleFn):
    """Inf-convolution ``inf{T*(F(s), G(t)) : s + t = x}``."""

    Tstar: TConorm

    @property
    def name(self):
        return f"tauTstar[{self.Tstar.name}]"


@dataclass(frozen=True)
class TauTL(TriangleFn):
    """Sup over the constraint curve: ``sup{T(F(u), G(v)) : L(u, v) = x}``."""

    T: TNorm
    L: LOp

    @property
    def name(self):
        return f"tauTL[{self.T.name},{self.L.name}]"


@dataclass(frozen=True)
class TauTStarL(TriangleFn):
    """Inf over the constraint curve: ``inf{T*(F(u), G(v)) : L(u, v) = x}``."""

    Tstar: TConorm
    L: LOp

    @property
    def name(self):
        return f"tauTstarL[{self.Tstar.name},{self.L.name}]"


@dataclass(frozen=True)
class PointwiseM(TriangleFn):
    """The maximal triangle function ``(F, G) -> min(F(x), G(x))``."""

    name = "pointwiseM"


@dataclass(frozen=True)
class PhiTransformed(TriangleFn):
    """Conjugate of a triangle function under a monotone transform.

    Applies the base operation to the inputs precomposed with the transform's
    quasi-inverse and composes the result with the transform itself.
    """

    base: TriangleFn
    phi: PhiMap

    @property
    def name(self):
        return f"phi_transform[{self.base.name}]"


TAU_M = TauT(MinTNorm())


def path_of(tau: TriangleFn) -> str:
    """Whether applications of ``tau`` are exact or go through a grid."""
    if isinstance(tau, PointwiseM):
        return "exact"
    if isinstance(tau, TauT) and isinstance(tau.T, MinTNorm):
        return "exact"
    if isinstance(tau, TauTStar) and isinstance(tau.Tstar.tnorm, MinTNorm):
        return "exact"
    if isinstance(tau, TauTL) and isinstance(tau.T, MinTNorm):
        return "exact"
    if isinstance(tau, PhiTransformed):
        return path_of(tau.base)
    return "grid"


def tolerance_of(tau: TriangleFn) -> float:
    return TOL_EXACT if path_of(tau) == "exact" else TOL_GRID


# ---------------------------------------------------------------------------
# Exact path: min-driven convolutions through quasi-inverses
# ---------------------------------------------------------------------------

def _apply_min_exact(L: LOp, F: DDF, G: DDF) -> DDF:
    if isinstance(F, Step) and math.isinf(F.a):
        return EPS_INF
    if isinstance(G, Step) and math.isinf(G.a):
        return EPS_INF
    if isinstance(F, Step) and isinstance(G, Step):
        return Step(L.eval(F.a, G.a))
    sF, sG = _as_scaled(F), _as_scaled(G)
    if sF is not None and sG is not None and sF[0] == sG[0]:
        c = L.combine_scales(sF[1], sG[1])
        if c is not None and math.isfinite(c) and c > 0:
            return scaled(sF[0], c)
    qF, qG = F.quasi_inverse(), G.quasi_inverse()
    tail = min(F.tail_value, G.tail_value)

    def fn(t):
        return L.eval(qF.eval(t), qG.eval(t))

    return FromQuasiInverse(QuasiInverse(fn=fn, tail=tail, vectorized=False), tail=tail)


# ---------------------------------------------------------------------------
# Grid path
# ---------------------------------------------------------------------------

def _golden_extremum(f, a: float, b: float, maximize: bool, iters: int = _REFINE_ITERS) -> float:
    """Best value of ``f`` on [a, b] by golden-section search (plus endpoints)."""
    if not (b > a):
        return f(a)
    inv = (math.sqrt(5.0) - 1.0) / 2.0
    x1 = b - inv * (b - a)
    x2 = a + inv * (b - a)
    f1, f2 = f(x1), f(x2)
    best = max(f(a), f(b), f1, f2) if maximize else min(f(a), f(b), f1, f2)
    for _ in range(iters):
        if (f1 > f2) == maximize:
            b, x2, f2 = x2, x1, f1
            x1 = b - inv * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + inv * (b - a)
            f2 = f(x2)
        cand = f1 if ((f1 > f2) == maximize) else f2
        best = max(best, cand) if maximize else min(best, cand)
    return best


def _split_grid(F: DDF, G: DDF, x: float, n: int) -> np.ndarray:
    """Grid of split points on [0, x]: uniform plus breakpoint-aligned points,
    each with a small right offset to capture right limits at jumps."""
    pts = set(np.linspace(0.0, x, n))
    extra = set()
    for b in F.breakpoints():
        extra.update((b, b + _EPS_OFFSET))
    for b in G.breakpoints():
        extra.update((x - b, x - b + _EPS_OFFSET, x - b - _EPS_OFFSET))
    for e in extra:
        if 0.0 <= e <= x:
            pts.add(e)
    return np.array(sorted(pts))


def _sum_conv_at(op, F: DDF, G: DDF, x: float, n: int, maximize: bool) -> float:
    s = _split_grid(F, G, x, n)
    vals = op.eval_array(F.eval(s), G.eval(x - s))
    idx = int(np.argmax(vals)) if maximize else int(np.argmin(vals))
    best = float(vals[idx])
    lo = s[max(idx - 1, 0)]
    hi = s[min(idx + 1, len(s) - 1)]

    def f(t):
        return op.eval(float(F.eval(t)), float(G.eval(x - t)))

    refined = _golden_extremum(f, float(lo), float(hi), maximize)
    return max(best, refined) if maximize else min(best, refined)


def _curve_conv_at(op, L: LOp, F: DDF, G: DDF, x: float, n: int, maximize: bool) -> float:
    # L(u, 0) = u for the admissible operations here, so u ranges over [0, x].
    us = set(np.linspace(0.0, x, n))
    for b in F.breakpoints():
        us.update((b, b + _EPS_OFFSET))
    for b in G.breakpoints():
        u = L.section_inverse(b, x)
        if u is not None:
            us.update((u, u + _EPS_OFFSET, u - _EPS_OFFSET))
    us = np.array(sorted(p for p in us if 0.0 <= p <= x))
    pairs = [(u, L.section_inverse(u, x)) for u in us]
    pairs = [(u, v) for u, v in pairs if v is not None and math.isfinite(v)]
    if not pairs:
        return 0.0 if maximize else 1.0
    uu = np.array([p[0] for p in pairs])
    vv = np.array([p[1] for p in pairs])
    vals = op.eval_array(F.eval(uu), G.eval(vv))
    idx = int(np.argmax(vals)) if maximize else int(np.argmin(vals))
    best = float(vals[idx])
    lo = uu[max(idx - 1, 0)]
    hi = uu[min(idx + 1, len(uu) - 1)]

    def f(u):
        v = L.section_inverse(float(u), x)
        if v is None:
            return -INF if maximize else INF
        return op.eval(float(F.eval(u)), float(G.eval(v)))

    refined = _golden_extremum(f, float(lo), float(hi), maximize)
    return max(best, refined) if maximize else min(best, refined)


@dataclass(frozen=True, eq=False)
class GridConvolution(DDF):
    """Lazily evaluated grid convolution.

    The stored tail is the continuous-extension value (op applied to the input
    tails for sup kinds, the minimum of the tails for inf kinds); it is exact
    for continuous driving operations and an upper bound otherwise.
    """

    kind: str  # "sup" | "inf" | "supL" | "infL"
    op: object
    L: LOp | None
    F: DDF
    G: DDF
    n: int = _GRID_N

    @property
    def tail_value(self) -> float:
        tf, tg = self.F.tail_value, self.G.tail_value
        if self.kind in ("inf", "infL"):
            return min(tf, tg)
        return float(self.op.eval(tf, tg))

    def _eval_one(self, x: float) -> float:
        if self.kind == "sup":
            return _sum_conv_at(self.op, self.F, self.G, x, self.n, True)
        if self.kind == "inf":
            return _sum_conv_at(self.op, self.F, self.G, x, self.n, False)
        if self.kind == "supL":
            return _curve_conv_at(self.op, self.L, self.F, self.G, x, self.n, True)
        return _curve_conv_at(self.op, self.L, self.F, self.G, x, self.n, False)

    def _eval_core(self, x: np.ndarray) -> np.ndarray:
        return np.clip(np.array([self._eval_one(float(v)) for v in x]), 0.0, 1.0)

    def breakpoints(self) -> tuple[float, ...]:
        fb = [b for b in self.F.breakpoints() if math.isfinite(b)]
        gb = [b for b in self.G.breakpoints() if math.isfinite(b)]
        pts = set(fb) | set(gb)
        for a in fb[:8]:
            for b in gb[:8]:
                if self.L is None:
                    pts.add(a + b)
                else:
                    pts.add(self.L.eval(a, b))
        return tuple(sorted(p for p in pts if math.isfinite(p)))


# ---------------------------------------------------------------------------
# Application
# ---------------------------------------------------------------------------

def apply(tau: TriangleFn, F: DDF, G: DDF) -> DDF:
    """Apply a triangle function; the unit step at 0 acts as identity exactly."""
    if is_eps0(F):
        return G
    if is_eps0(G):
        return F
    if isinstance(tau, PointwiseM):
        return min_of([F, G])
    if isinstance(tau, TauT):
        if isinstance(tau.T, MinTNorm):
            return _apply_min_exact(SUM_L, F, G)
        return GridConvolution("sup", tau.T, None, F, G)
    if isinstance(tau, TauTStar):
        if isinstance(tau.Tstar.tnorm, MinTNorm):
            # the inf-convolution of the maximum coincides with the
            # sup-convolution of the minimum
            return _apply_min_exact(SUM_L, F, G)
        return GridConvolution("inf", tau.Tstar, None, F, G)
    if isinstance(tau, TauTL):
        if isinstance(tau.T, MinTNorm):
            return _apply_min_exact(tau.L, F, G)
        return GridConvolution("supL", tau.T, tau.L, F, G)
    if isinstance(tau, TauTStarL):
        return GridConvolution("infL", tau.Tstar, tau.L, F, G)
    if isinstance(tau, PhiTransformed):
        qi = tau.phi.quasi_inverse()
        inner = apply(tau.base, transform_ddf(F, qi), transform_ddf(G, qi))
        return transform_ddf(inner, tau.phi)
    raise TypeError(f"unknown triangle function {tau!r}")


def phi_transform_triangle(tau: TriangleFn, phi: PhiMap) -> TriangleFn:
    """Conjugate ``tau`` by an admissible transform; identity is a no-op."""
    require_admissible(phi)
    if isinstance(phi, Linear) and phi.k == 1.0:
        return tau
    return PhiTransformed(tau, phi)


# ---------------------------------------------------------------------------
# Comparison and axiom checking
# ---------------------------------------------------------------------------

@dataclass
class ComparisonResult:
    relation: str  # "=", "<=", ">=", "incomparable"
    worst_above: float  # max of first - second
    worst_below: float  # max of second - first
    witness_above: float | None
    witness_below: float | None


def compare_pointwise(tau1: TriangleFn, tau2: TriangleFn, F: DDF, G: DDF,
                      grid=None, tol: float | None = None) -> ComparisonResult:
    """Pointwise order of two applied triangle functions on a common grid."""
    A = apply(tau1, F, G)
    B = apply(tau2, F, G)
    if grid is None:
        grid = x_grid(merged_breakpoints(A, B, F, G), count=64)
    grid = np.asarray(grid, dtype=float)
    if tol is None:
        tol = max(tolerance_of(tau1), tolerance_of(tau2))
    d = A.eval(grid) - B.eval(grid)
    worst_above = float(np.max(d, initial=0.0))
    worst_below = float(np.max(-d, initial=0.0))
    wa = float(grid[int(np.argmax(d))]) if worst_above > 0 else None
    wb = float(grid[int(np.argmax(-d))]) if worst_below > 0 else None
    if worst_above <= tol and worst_below <= tol:
        rel = "="
    elif worst_below <= tol:
        rel = ">="
    elif worst_above <= tol:
        rel = "<="
    else:
        rel = "incomparable"
    return ComparisonResult(rel, worst_above, worst_below, wa, wb)


def check_triangle_axioms(tau: TriangleFn, sample_ddfs, seed: int = 0,
                          x_count: int = 24, tol: float | None = None) -> CheckReport:
    """Sampled triangle-function axioms: identity (exact), commutativity,
    monotonicity, validity of outputs, and associativity at grid tolerance."""
    samples = list(sample_ddfs)
    if len(samples) < 3:
        raise ValueError("need at least 3 sample d.d.f.s")
    rng = rng_from_seed(seed)
    own_tol = tolerance_of(tau) if tol is None else tol
    report = CheckReport(title=f"triangle-axioms[{tau.name}]", seed=seed,
                         sample_count=len(samples))
    grid = x_grid(merged_breakpoints(*samples), count=x_count)

    # identity: exact, for every variant
    worst = 0.0
    witness = None
    for F in samples:
        out = apply(tau, EPS0, F)
        gap = float(np.max(np.abs(out.eval(grid) - F.eval(grid)), initial=0.0))
        if out is not F:
            gap = max(gap, float(np.max(np.abs(apply(tau, F, EPS0).eval(grid) - F.eval(grid)), initial=0.0)))
        if gap > worst:
            worst, witness = gap, {"ddf": repr(F)}
    report.add("identity_eps0", worst == 0.0, worst, 0.0, witness,
               path=path_of(tau))

    worst, witness = 0.0, None
    for _ in range(6):
        F = samples[rng.integers(len(samples))]
        G = samples[rng.integers(len(samples))]
        d = np.abs(apply(tau, F, G).eval(grid) - apply(tau, G, F).eval(grid))
        gap = float(np.max(d, initial=0.0))
        if gap > worst:
            worst, witness = gap, {"F": repr(F), "G": repr(G),
                                   "x": float(grid[int(np.argmax(d))])}
    report.add("commutative", worst <= own_tol, worst, own_tol, witness,
               path=path_of(tau))

    worst, witness = 0.0, None
    for _ in range(6):
        F = samples[rng.integers(len(samples))]
        G2 = samples[rng.integers(len(samples))]
        H = samples[rng.integers(len(samples))]
        G1 = min_of([G2, H])  # G1 <= G2 pointwise by construction
        d = apply(tau, F, G1).eval(grid) - apply(tau, F, G2).eval(grid)
        gap = float(np.max(d, initial=0.0))
        if gap > worst:
            worst, witness = gap, {"F": repr(F), "G2": repr(G2),
                                   "x": float(grid[int(np.argmax(d))])}
    report.add("nondecreasing", worst <= own_tol, worst, own_tol, witness,
               path=path_of(tau))

    worst, witness = 0.0, None
    for F in samples:
        out = apply(tau, F, samples[0])
        vals = out.eval(grid)
        bad = max(float(np.max(-np.diff(vals), initial=0.0)),
                  float(np.max(vals - 1.0, initial=0.0)),
                  float(np.max(-vals, initial=0.0)))
        if out.eval(0.0) != 0.0:
            bad = max(bad, 1.0)
        if bad > worst:
            worst, witness = bad, {"F": repr(F)}
    report.add("output_is_ddf", worst <= own_tol, worst, own_tol, witness,
               path=path_of(tau))

    assoc_tol = max(own_tol, TOL_GRID)
    worst, witness = 0.0, None
    for _ in range(4):
        F = samples[rng.integers(len(samples))]
        G = samples[rng.integers(len(samples))]
        H = samples[rng.integers(len(samples))]
        left = apply(tau, apply(tau, F, G), H)
        right = apply(tau, F, apply(tau, G, H))
        xs = x_grid(merged_breakpoints(F, G, H), count=8)
        d = np.abs(left.eval(xs) - right.eval(xs))
        gap = float(np.max(d, initial=0.0))
        if gap > worst:
            worst, witness = gap, {"F": repr(F), "G": repr(G), "H": repr(H),
                                   "x": float(xs[int(np.argmax(d))])}
    report.add("associative_sampled", worst <= assoc_tol, worst, assoc_tol,
               witness, path=path_of(tau))
    report.notes.append("associativity is reported, never assumed; "
                        "non-associative results are permitted")
    return report
