"""Monotone transforms of [0, inf] and the transforms of norms they induce.

The admissible class consists of nondecreasing left-continuous maps
``phi: [0, inf] -> [0, inf]`` with ``phi(0) = 0``, ``phi(inf) = inf`` and
``phi(x) > 0`` for ``x > 0``.  Bijective members are flagged ``in_minf``;
members that blow up at a finite cap, extended by infinity beyond it, are
flagged ``in_mb``.  Every map carries its left-continuous quasi-inverse
``phi^(t) = sup{u : phi(u) < t}`` (with ``phi^(0) = 0`` and
``phi^(inf) = inf`` by convention), which satisfies the Galois inequalities
``phi^(phi(x)) <= x`` and ``phi(phi^(y)) <= y``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .ddf import DDF, EPS0, QuasiInverse, Step, is_eps0
from .extreal import INF, npow, xpow
from .report import CheckReport
from .sampling import rng_from_seed, sample_vectors, x_grid

__all__ = [
    "PhiMap",
    "Power",
    "Linear",
    "CappedLinear",
    "Clamped",
    "ComposedPhi",
    "CustomMonotone",
    "IDENTITY",
    "Composed",
    "quasi_inverse_phi",
    "transform_ddf",
    "transform_space",
    "topology_refinement_probe",
    "require_admissible",
]


class PhiMap:
    """Base class for monotone transforms of the nonnegative half-line."""

    in_mtilde: bool = True
    in_minf: bool = False
    in_mb: bool = False
    #: order h with phi(c*x) = c^h * phi(x), when the map is homogeneous
    homogeneity_order: float | None = None

    @property
    def sup_finite(self) -> float:
        """Supremum of the transform over finite arguments."""
        return INF

    def _eval_pos(self, x: float) -> float:
        raise NotImplementedError

    def eval(self, x):
        arr = np.asarray(x, dtype=float)
        scalar = arr.ndim == 0
        arr = np.atleast_1d(arr)
        if np.any(np.isnan(arr)) or np.any(arr < 0):
            raise ValueError("transform argument must lie in [0, inf]")
        out = np.zeros_like(arr)
        inf_mask = np.isinf(arr)
        out[inf_mask] = INF
        pos = (~inf_mask) & (arr > 0)
        if np.any(pos):
            out[pos] = self._eval_array(arr[pos])
        return float(out[0]) if scalar else out

    __call__ = eval

    def _eval_array(self, x: np.ndarray) -> np.ndarray:
        return np.array([self._eval_pos(float(v)) for v in x])

    def quasi_inverse(self) -> "PhiMap":
        raise NotImplementedError

    def breakpoints(self) -> tuple[float, ...]:
        return ()


@dataclass(frozen=True)
class Power(PhiMap):
    """``x -> x**(1/alpha)``; bijective, with quasi-inverse ``x -> x**alpha``."""

    alpha: float

    def __post_init__(self):
        a = float(self.alpha)
        if not (a > 0) or math.isinf(a):
            raise ValueError("power transform exponent must be positive and finite")
        object.__setattr__(self, "alpha", a)

    in_minf = True

    @property
    def homogeneity_order(self):
        return 1.0 / self.alpha

    def _eval_pos(self, x):
        return xpow(x, 1.0 / self.alpha)

    def _eval_array(self, x):
        return npow(x, 1.0 / self.alpha)

    def quasi_inverse(self):
        return Power(1.0 / self.alpha)


@dataclass(frozen=True)
class Linear(PhiMap):
    """``x -> k x`` for ``k > 0``."""

    k: float

    def __post_init__(self):
        k = float(self.k)
        if not (k > 0) or math.isinf(k):
            raise ValueError("linear transform slope must be positive and finite")
        object.__setattr__(self, "k", k)

    in_minf = True
    homogeneity_order = 1.0

    def _eval_pos(self, x):
        return self.k * x

    def _eval_array(self, x):
        return self.k * x

    def quasi_inverse(self):
        return Linear(1.0 / self.k)


@dataclass(frozen=True)
class CappedLinear(PhiMap):
    """Identity up to the cap ``b`` and infinite beyond it.

    The value at the cap itself is ``b`` so the map stays left-continuous.
    """

    b: float

    def __post_init__(self):
        b = float(self.b)
        if not (b > 0) or math.isinf(b):
            raise ValueError("cap must be positive and finite")
        object.__setattr__(self, "b", b)

    in_mb = True

    def _eval_pos(self, x):
        return x if x <= self.b else INF

    def _eval_array(self, x):
        return np.where(x <= self.b, x, INF)

    def quasi_inverse(self):
        return Clamped(self.b)

    def breakpoints(self):
        return (self.b,)


@dataclass(frozen=True)
class Clamped(PhiMap):
    """``x -> min(x, b)`` on finite arguments; arises as a quasi-inverse."""

    b: float

    def __post_init__(self):
        b = float(self.b)
        if not (b > 0) or math.isinf(b):
            raise ValueError("clamp level must be positive and finite")
        object.__setattr__(self, "b", b)

    @property
    def sup_finite(self):
        return self.b

    def _eval_pos(self, x):
        return min(x, self.b)

    def _eval_array(self, x):
        return np.minimum(x, self.b)

    def quasi_inverse(self):
        return CappedLinear(self.b)

    def breakpoints(self):
        return (self.b,)


@dataclass(frozen=True)
class ComposedPhi(PhiMap):
    """``x -> outer(inner(x))``; quasi-inverse composes in reverse order."""

    outer: PhiMap
    inner: PhiMap

    @property
    def in_minf(self):
        return self.outer.in_minf and self.inner.in_minf

    @property
    def in_mtilde(self):
        return self.outer.in_mtilde and self.inner.in_mtilde

    @property
    def sup_finite(self):
        s = self.inner.sup_finite
        if math.isinf(s):
            return self.outer.sup_finite
        return self.outer.eval(s)

    def _eval_pos(self, x):
        return self.outer.eval(self.inner.eval(x))

    def _eval_array(self, x):
        return self.outer.eval(self.inner.eval(x))

    def quasi_inverse(self):
        return ComposedPhi(self.inner.quasi_inverse(), self.outer.quasi_inverse())

    def breakpoints(self):
        inner_qi = self.inner.quasi_inverse()
        pts = [inner_qi.eval(b) for b in self.outer.breakpoints()]
        pts.extend(self.inner.breakpoints())
        return tuple(sorted({p for p in pts if math.isfinite(p)}))


@dataclass(frozen=True)
class CustomMonotone(PhiMap):
    """Piecewise-linear monotone transform from (x, left, right) triples.

    Beyond the last breakpoint the map continues linearly with ``end_slope``
    (a zero slope leaves it constant, so the finite supremum is the last right
    value).  A ``(0, 0, 0)`` anchor is implied when the first abscissa is
    positive.
    """

    points: tuple[tuple[float, float, float], ...]
    end_slope: float = 1.0

    def __post_init__(self):
        pts = tuple((float(x), float(v), float(w)) for x, v, w in self.points)
        if not pts:
            raise ValueError("breakpoint list must be nonempty")
        if pts[0][0] > 0:
            pts = ((0.0, 0.0, 0.0),) + pts
        xs = [p[0] for p in pts]
        if xs[0] != 0.0 or pts[0][1] != 0.0:
            raise ValueError("a monotone transform must start from (0, 0)")
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise ValueError("breakpoint abscissae must be strictly increasing")
        values = []
        for x, v, w in pts:
            if v < 0 or w < v:
                raise ValueError("breakpoint values must be nondecreasing and nonnegative")
            values.extend([v, w])
        if any(b < a - 1e-15 for a, b in zip(values, values[1:])):
            raise ValueError("breakpoint values must be nondecreasing")
        if float(self.end_slope) < 0:
            raise ValueError("end slope must be nonnegative")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "end_slope", float(self.end_slope))

    @property
    def in_mtilde(self):
        # positive beyond 0: either an immediate jump, or a rising first leg
        first = self.points[0]
        if first[2] > 0:
            return True
        if len(self.points) > 1:
            return self.points[1][1] > 0
        return self.end_slope > 0

    @property
    def in_minf(self):
        if self.end_slope <= 0:
            return False
        cont = all(v == w for _, v, w in self.points)
        rising = all(w0 < v1 for (_, _, w0), (_, v1, _) in zip(self.points, self.points[1:]))
        return cont and rising

    @property
    def sup_finite(self):
        return INF if self.end_slope > 0 else self.points[-1][2]

    def _eval_pos(self, x):
        xs = [p[0] for p in self.points]
        idx = np.searchsorted(xs, x, side="left")
        if idx < len(xs) and x == xs[idx]:
            return self.points[idx][1]
        i = idx - 1
        if i >= len(xs) - 1:
            xo, _, wo = self.points[-1]
            return wo + self.end_slope * (x - xo)
        x0, _, w0 = self.points[i]
        x1, v1, _ = self.points[i + 1]
        return w0 + (v1 - w0) * (x - x0) / (x1 - x0)

    def quasi_inverse(self):
        return NumericQuasiInversePhi(self)

    def breakpoints(self):
        return tuple(p[0] for p in self.points)


@dataclass(frozen=True)
class NumericQuasiInversePhi(PhiMap):
    """Quasi-inverse of an arbitrary admissible transform, by bisection."""

    source: PhiMap

    @property
    def in_mtilde(self):
        # positive for small arguments iff the source does not jump at 0
        return self.source.eval(1e-300) < INF or True

    @property
    def sup_finite(self):
        return INF

    def _eval_pos(self, t):
        src = self.source
        if t > src.sup_finite:
            return INF
        hi = 1.0
        while src.eval(hi) < t:
            hi *= 2.0
            if hi > 1e120:
                return INF
        lo = 0.0
        for _ in range(90):
            mid = 0.5 * (lo + hi)
            if src.eval(mid) < t:
                lo = mid
            else:
                hi = mid
        return lo

    def quasi_inverse(self):
        # double quasi-inverse recovers a left-continuous source
        return self.source


IDENTITY = Linear(1.0)


def require_admissible(phi: PhiMap) -> None:
    if not getattr(phi, "in_mtilde", False):
        raise ValueError("transform is not admissible: it must be nondecreasing, "
                         "left-continuous, vanish only at 0, and map inf to inf")


def quasi_inverse_phi(phi: PhiMap) -> PhiMap:
    """Left-continuous quasi-inverse ``phi^(t) = sup{u : phi(u) < t}``."""
    require_admissible(phi)
    return phi.quasi_inverse()


# ---------------------------------------------------------------------------
# Transforms of d.d.f.s
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Composed(DDF):
    """``x -> F(phi(x))``: a d.d.f. precomposed with an admissible transform."""

    base: DDF
    phi: PhiMap

    @property
    def tail_value(self) -> float:
        s = self.phi.sup_finite
        if math.isinf(s):
            return self.base.tail_value
        return self.base.eval(s)

    def _eval_core(self, x: np.ndarray) -> np.ndarray:
        return self.base.eval(self.phi.eval(x))

    def quasi_inverse(self) -> QuasiInverse:
        base_qi = self.base.quasi_inverse()
        phi_qi = self.phi.quasi_inverse()

        def fn(t):
            return phi_qi.eval(base_qi.eval(t))

        return QuasiInverse(fn=fn, tail=self.tail_value, vectorized=False)

    def breakpoints(self) -> tuple[float, ...]:
        phi_qi = self.phi.quasi_inverse()
        pts = [phi_qi.eval(b) for b in self.base.breakpoints() if math.isfinite(b)]
        pts.extend(self.phi.breakpoints())
        return tuple(sorted({p for p in pts if math.isfinite(p)}))


def transform_ddf(F: DDF, phi: PhiMap) -> DDF:
    """The composite ``x -> F(phi(x))``, again a valid d.d.f.

    Unit steps through bijective transforms stay unit steps (the threshold
    moves to ``phi^(a)``); the identity transform returns ``F`` unchanged.
    """
    require_admissible(phi)
    if isinstance(phi, Linear) and phi.k == 1.0:
        return F
    if isinstance(F, Step) and phi.in_minf:
        return Step(phi.quasi_inverse().eval(F.a))
    if is_eps0(F):
        return F
    return Composed(F, phi)


# ---------------------------------------------------------------------------
# Transforms of spaces
# ---------------------------------------------------------------------------

def transform_space(space, phi: PhiMap):
    """The transformed space: norm precomposed with ``phi`` and both triangle
    functions conjugated accordingly.

    For a bijective transform, transforming again by the inverse reproduces
    the original space pointwise.
    """
    require_admissible(phi)
    from .spaces import PNSpaceModel, Transformed
    from .triangle import phi_transform_triangle

    return PNSpaceModel(
        space.vector_space,
        Transformed(space.prob_norm, phi),
        phi_transform_triangle(space.tau, phi),
        phi_transform_triangle(space.tau_star, phi),
    )


def topology_refinement_probe(space, transformed, phi: PhiMap,
                              ms=(1, 2, 4, 8, 16), sample_count: int = 16,
                              seed: int = 0, max_n: int = 2 ** 20) -> CheckReport:
    """Probe that the base strong topology refines the transformed one.

    For each level ``m`` the probe finds ``n >= m`` with ``phi(1/m) > 1/n``
    and verifies on sampled points that the base neighborhood of radius 1/n
    lands inside the transformed neighborhood of radius 1/m.  When the
    quasi-inverse is positive on (0, inf) the reverse inclusion is probed the
    same way; since only finitely many neighborhoods are examined, coincidence
    is reported as not falsified rather than proved.
    """
    from .topology import neighborhood_contains

    report = CheckReport(title="topology-refinement-probe", seed=seed,
                         sample_count=sample_count)
    rng = rng_from_seed(seed)
    dim = space.vector_space.dim
    points = sample_vectors(rng, max(2, sample_count // 4), dim)
    qi = phi.quasi_inverse()
    reverse_applicable = qi.eval(1e-9) > 0.0 and qi.eval(1e-3) > 0.0

    fwd_worst: dict | None = None
    fwd_ok = True
    rev_ok = True
    rev_found_all = True
    table = []
    for m in ms:
        target = phi.eval(1.0 / m)
        if target <= 0:
            fwd_ok = False
            fwd_worst = {"m": m, "reason": "transform not positive at 1/m"}
            break
        n = m
        while n <= max_n and not (target > 1.0 / n):
            n *= 2
        n_fwd = n if n <= max_n else None
        n_rev = None
        if reverse_applicable:
            n = m
            while n <= max_n and not (phi.eval(1.0 / n) <= 1.0 / m):
                n *= 2
            n_rev = n if n <= max_n else None
            if n_rev is None:
                rev_found_all = False
        table.append({"m": m, "forward_n": n_fwd, "reverse_n": n_rev})
        for p in points:
            for _ in range(sample_count):
                q = p + sample_vectors(rng, 1, dim)[0] * rng.uniform(0.0, 2.0 / m)
                if n_fwd is not None and neighborhood_contains(space, p, 1.0 / n_fwd, q):
                    if not neighborhood_contains(transformed, p, 1.0 / m, q):
                        fwd_ok = False
                        fwd_worst = {"m": m, "n": n_fwd, "p": p.tolist(), "q": q.tolist()}
                if n_rev is not None and neighborhood_contains(transformed, p, 1.0 / n_rev, q):
                    if not neighborhood_contains(space, p, 1.0 / m, q):
                        rev_ok = False

    report.add("forward_refinement", fwd_ok, witness=fwd_worst)
    if reverse_applicable:
        report.add("reverse_refinement_not_falsified", rev_ok and rev_found_all)
        report.notes.append("quasi-inverse positive on (0, inf): coincidence probed "
                            "on finitely many neighborhoods, reported as not falsified")
    else:
        report.notes.append("quasi-inverse vanishes near 0: reverse inclusion not applicable")
    report.notes.append(f"witness table: {table}")
    return report
