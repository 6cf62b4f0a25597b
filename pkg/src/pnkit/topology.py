"""Strong neighborhoods, the induced semi-metric, probabilistic radius, and
the D-bounded / bounded classifiers.

The strong neighborhood of radius t at p collects the q with
``nu_{p-q}(t) > 1 - t``; the semi-metric is the Sibley distance between
``nu_{p-q}`` and the unit step at 0.  A set is D-bounded when its
probabilistic radius (the left-regularized pointwise infimum of the norms
over the set) has tail value 1.  Boundedness in the covering sense is decided
through the scaled-neighborhood criterion: for every n there is a k with
``nu_{p/k}(1/n) > 1 - 1/n`` on the whole set.  Over infinite sets both
classifiers work from the worst-case point of a monotone closed form; when no
monotone structure is available the verdict is "inconclusive", never a guess.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .ddf import DDF, EPS0, Step, is_in_Dplus, min_of, sibley_distance
from .extreal import INF
from .phi import PhiMap, require_admissible
from .report import CheckReport
from .sampling import rng_from_seed, x_grid, merged_breakpoints
from .spaces import EpsOfG, PNSpaceModel, check_serstnev
from .tolerances import TOL_EXACT

__all__ = [
    "SetSpec",
    "FiniteSet",
    "Singleton",
    "NormBall",
    "Ray",
    "RadiusResult",
    "BoundednessResult",
    "ClosedFormUnavailable",
    "neighborhood_contains",
    "delta",
    "probabilistic_radius",
    "is_D_bounded",
    "is_bounded",
    "scale_set",
    "check_dbounded_bounded_equivalence",
    "scalar_continuity_probe",
    "check_fnormed_dbounded_props",
]

_HUGE_MAGNITUDE = 1e30
_TINY_MAGNITUDE = 1e-300


class ClosedFormUnavailable(ValueError):
    """Raised when a (space, set) pair admits no closed-form classification."""


class SetSpec:
    pass


@dataclass(frozen=True)
class FiniteSet(SetSpec):
    points: tuple[tuple[float, ...], ...]

    def __post_init__(self):
        pts = tuple(tuple(float(c) for c in p) for p in self.points)
        if not pts:
            raise ValueError("finite set must be nonempty")
        object.__setattr__(self, "points", pts)


@dataclass(frozen=True)
class Singleton(SetSpec):
    point: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "point", tuple(float(c) for c in self.point))


@dataclass(frozen=True)
class NormBall(SetSpec):
    """Closed ball of the given radius centered at the origin."""

    radius: float

    def __post_init__(self):
        if not (float(self.radius) > 0):
            raise ValueError("ball radius must be positive")
        object.__setattr__(self, "radius", float(self.radius))


@dataclass(frozen=True)
class Ray(SetSpec):
    """Points ``m * direction`` for magnitudes m in [0, cap] or [0, inf)."""

    direction: tuple[float, ...]
    unbounded: bool = True
    magnitude_cap: float | None = None

    def __post_init__(self):
        d = tuple(float(c) for c in self.direction)
        if all(c == 0.0 for c in d):
            raise ValueError("ray direction must be nonzero")
        if not self.unbounded and not (self.magnitude_cap and self.magnitude_cap > 0):
            raise ValueError("a bounded ray needs a positive magnitude cap")
        object.__setattr__(self, "direction", d)


def _points_of(A: SetSpec) -> list[np.ndarray] | None:
    if isinstance(A, FiniteSet):
        return [np.asarray(p, dtype=float) for p in A.points]
    if isinstance(A, Singleton):
        return [np.asarray(A.point, dtype=float)]
    return None


def _is_infinite(A: SetSpec) -> bool:
    return isinstance(A, (NormBall, Ray))


def _magnitude_sup(A: SetSpec, space: PNSpaceModel) -> float:
    V = space.vector_space
    pts = _points_of(A)
    if pts is not None:
        return max(V.norm(p) for p in pts)
    if isinstance(A, NormBall):
        return A.radius
    if isinstance(A, Ray):
        if A.unbounded:
            return INF
        return A.magnitude_cap * V.norm(np.asarray(A.direction, dtype=float))
    raise TypeError(f"unknown set specification {A!r}")


def scale_set(A: SetSpec, k: float) -> SetSpec:
    """The dilated set ``k A``."""
    if not (k > 0):
        raise ValueError("scale factor must be positive")
    if isinstance(A, FiniteSet):
        return FiniteSet(tuple(tuple(k * c for c in p) for p in A.points))
    if isinstance(A, Singleton):
        return Singleton(tuple(k * c for c in A.point))
    if isinstance(A, NormBall):
        return NormBall(k * A.radius)
    if isinstance(A, Ray):
        cap = None if A.magnitude_cap is None else k * A.magnitude_cap
        return Ray(A.direction, A.unbounded, cap)
    raise TypeError(f"unknown set specification {A!r}")


# ---------------------------------------------------------------------------
# Neighborhoods and the semi-metric
# ---------------------------------------------------------------------------

def neighborhood_contains(space: PNSpaceModel, p, t: float, q) -> bool:
    """Membership of q in the strong neighborhood of radius t at p."""
    if not (t > 0):
        raise ValueError("neighborhood radius must be positive")
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    return float(space.nu(p - q).eval(t)) > 1.0 - t


def delta(space: PNSpaceModel, p, q) -> float:
    """Semi-metric: Sibley distance between nu_{p-q} and the unit step at 0."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    return sibley_distance(space.nu(p - q), EPS0)


# ---------------------------------------------------------------------------
# Probabilistic radius and D-boundedness
# ---------------------------------------------------------------------------

@dataclass
class RadiusResult:
    R: DDF
    in_dplus: bool
    witness_x: float | None
    note: str


def _dplus_witness(R: DDF) -> float | None:
    if R.tail_value != 1.0:
        return None
    x = 1.0
    while x < 1e30:
        if float(R.eval(x)) > 1.0 - 1e-6:
            return x
        x *= 4.0
    return None


def probabilistic_radius(space: PNSpaceModel, A: SetSpec) -> RadiusResult:
    """Left-regularized pointwise infimum of the norms over the set.

    Finite sets take the exact pointwise minimum of closed forms, on which the
    left regularization acts as the identity.  Balls reduce to the boundary
    magnitude; unbounded rays reduce to the magnitude-limit profile of the
    norm, which is stored in left-continuous form.
    """
    pts = _points_of(A)
    if pts is not None:
        R = min_of([space.nu(p) for p in pts])
        note = "finite pointwise minimum of left-continuous closed forms; " \
               "left regularization is the identity"
        return RadiusResult(R, is_in_Dplus(R), _dplus_witness(R), note)
    if not space.prob_norm.magnitude_monotone:
        raise ClosedFormUnavailable("no closed form; supply FiniteSet sample")
    if isinstance(A, NormBall):
        R = space.prob_norm.nu_magnitude(A.radius)
        return RadiusResult(R, is_in_Dplus(R), _dplus_witness(R),
                            "worst-case point at the ball boundary")
    if isinstance(A, Ray):
        if not A.unbounded:
            R = space.prob_norm.nu_magnitude(A.magnitude_cap)
            return RadiusResult(R, is_in_Dplus(R), _dplus_witness(R),
                                "worst-case point at the magnitude cap")
        R = space.prob_norm.nu_magnitude_limit()
        return RadiusResult(R, is_in_Dplus(R), _dplus_witness(R),
                            "magnitude-limit profile along the unbounded ray "
                            "(left-regularized)")
    raise ClosedFormUnavailable("no closed form; supply FiniteSet sample")


def is_D_bounded(space: PNSpaceModel, A: SetSpec) -> tuple[bool, RadiusResult]:
    """D-boundedness: the probabilistic radius has tail value exactly 1."""
    result = probabilistic_radius(space, A)
    return result.in_dplus, result


# ---------------------------------------------------------------------------
# Boundedness (covering criterion)
# ---------------------------------------------------------------------------

def _ray_inf_value(space: PNSpaceModel, x: float) -> tuple[float, bool]:
    """Raw infimum of ``nu_p(x)`` over an unbounded ray, with attainment flag.

    The infimum over magnitudes is invariant under dilations of the ray, so
    the scaled-neighborhood criterion is magnitude-scale free on such sets.
    """
    from .spaces import (AlphaSimple, Simple, Transformed, right_limit_at_zero)

    pn = space.prob_norm
    if isinstance(pn, Transformed):
        inner = PNSpaceModel(space.vector_space, pn.base, space.tau, space.tau_star)
        return _ray_inf_value(inner, pn.phi.eval(x))
    if isinstance(pn, (Simple, AlphaSimple)):
        G = pn.G
        if math.isinf(x):
            return G.tail_value, True
        level = right_limit_at_zero(G)
        attained = float(G.eval(_TINY_MAGNITUDE)) <= level
        return level, attained
    if isinstance(pn, EpsOfG):
        glim = pn.g.magnitude_limit
        if math.isinf(glim):
            return 0.0, True
        if math.isinf(x) or x > glim:
            return 1.0, True
        if x < glim:
            return 0.0, True
        return (0.0, True) if pn.g.attains_limit else (1.0, True)
    raise ClosedFormUnavailable("no closed form; supply FiniteSet sample")


def _criterion_a_value(space: PNSpaceModel, A: SetSpec, k: int, x: float) -> float:
    """inf over the set of ``nu_{p/k}(x)``, exact for the supported shapes."""
    pts = _points_of(A)
    if pts is not None:
        return min(float(space.nu(p / k).eval(x)) for p in pts)
    if not space.prob_norm.magnitude_monotone:
        raise ClosedFormUnavailable("no closed form; supply FiniteSet sample")
    m = _magnitude_sup(A, space)
    return float(space.prob_norm.nu_magnitude(m / k).eval(x))


@dataclass
class BoundednessResult:
    verdict: str  # "bounded" | "not_bounded" | "inconclusive"
    criterion_a: str  # "holds" | "fails" | "inconclusive"
    witness_table: list[dict]
    finite_fallback: bool
    certificate: dict | None
    notes: list[str]


def _neighborhood_norm_radius(space: PNSpaceModel, t: float) -> float:
    """sup of magnitudes inside the strong neighborhood of radius t at the
    origin, for magnitude-monotone norms (inf when unbounded)."""
    threshold = 1.0 - t

    def inside(m: float) -> bool:
        return float(space.prob_norm.nu_magnitude(m).eval(t)) > threshold

    if inside(_HUGE_MAGNITUDE):
        return INF
    if not inside(_TINY_MAGNITUDE):
        return 0.0
    lo, hi = _TINY_MAGNITUDE, _HUGE_MAGNITUDE
    for _ in range(200):
        mid = math.sqrt(lo * hi)
        if inside(mid):
            lo = mid
        else:
            hi = mid
    return hi


def is_bounded(space: PNSpaceModel, A: SetSpec, max_n: int = 64,
               max_k: int = 2 ** 20) -> BoundednessResult:
    """Covering-sense boundedness classifier.

    The primary criterion asks, for each n up to ``max_n``, for a k with
    ``nu_{p/k}(1/n) > 1 - 1/n`` across the set; the k-existence is monotone in
    n for the closed-form families, which makes the truncation sound for
    "bounded" verdicts there.  Finite sets are additionally bounded
    unconditionally (they cover themselves with k = 1).  A "not_bounded"
    verdict always carries a certificate: either a zero-radius neighborhood
    with an infinite set, or a finite-radius neighborhood with magnitudes
    unbounded over the set.  Without a certificate the classifier returns
    "inconclusive" rather than guessing.
    """
    if max_n < 1 or max_k < 1:
        raise ValueError("max_n and max_k must be at least 1")
    notes: list[str] = []
    table: list[dict] = []
    criterion = "holds"
    unbounded_ray = isinstance(A, Ray) and A.unbounded

    for n in range(1, max_n + 1):
        t = 1.0 / n
        threshold = 1.0 - t
        if unbounded_ray:
            value, attained = _ray_inf_value(space, t)
            ok = value > threshold or (value >= threshold and not attained)
            if ok:
                table.append({"n": n, "k": 1, "note": "scale-free on an unbounded ray"})
                continue
            criterion = "fails"
            table.append({"n": n, "k": None, "certificate": "ray infimum stays at "
                                                            f"{value} <= {threshold}"})
            break
        zero_limit = space.prob_norm.nu_zero_limit_value(t)
        if zero_limit <= threshold:
            criterion = "fails"
            table.append({"n": n, "k": None,
                          "certificate": f"limit value {zero_limit} <= {threshold} "
                                         "bounds every k"})
            break
        k = 1
        found = None
        while k <= max_k:
            if _criterion_a_value(space, A, k, t) > threshold:
                found = k
                break
            k *= 2
        if found is None:
            criterion = "inconclusive"
            table.append({"n": n, "k": None, "note": f"search exhausted max_k={max_k}"})
            break
        lo, hi = max(1, found // 2), found
        while lo < hi:
            mid = (lo + hi) // 2
            if _criterion_a_value(space, A, mid, t) > threshold:
                hi = mid
            else:
                lo = mid + 1
        table.append({"n": n, "k": hi})

    if criterion == "holds":
        notes.append("k-existence is monotone in n for the closed-form families, "
                     f"so truncation at max_n={max_n} is sound for this verdict")

    finite_fallback = _points_of(A) is not None
    if finite_fallback:
        notes.append("finite set: unconditionally bounded, covering itself with k = 1")
        return BoundednessResult("bounded", criterion, table, True, None, notes)

    if criterion == "holds":
        return BoundednessResult("bounded", criterion, table, False, None, notes)

    certificate = None
    if _is_infinite(A):
        for mm in (2, 4, 8, 16, 32, 64):
            radius = _neighborhood_norm_radius(space, 1.0 / mm)
            if radius == 0.0:
                certificate = {"kind": "zero_radius_neighborhood", "m": mm}
                break
            if math.isfinite(radius) and math.isinf(_magnitude_sup(A, space)):
                certificate = {"kind": "norm_bounded_neighborhood", "m": mm,
                               "radius": radius}
                break
    if certificate is not None:
        notes.append("covering by finitely many translated k-fold sums of a "
                     "norm-bounded neighborhood cannot reach the certificate set")
        return BoundednessResult("not_bounded", criterion, table, False,
                                 certificate, notes)
    return BoundednessResult("inconclusive", criterion, table, False, None, notes)


# ---------------------------------------------------------------------------
# Equivalence of D-boundedness and the covering criterion
# ---------------------------------------------------------------------------

def check_dbounded_bounded_equivalence(space: PNSpaceModel, phi: PhiMap, A: SetSpec,
                                       max_n: int = 64, max_k: int = 2 ** 20,
                                       sample_count: int = 40, seed: int = 0) -> CheckReport:
    """On a transform-law space whose quasi-inverse is unbounded, the scaled
    neighborhood criterion and D-boundedness must agree; both imply the
    covering-sense boundedness, which is strictly weaker in general.

    Hypothesis violations are reported before any evaluation; a disagreement
    produces a counterexample certificate.
    """
    require_admissible(phi)
    report = CheckReport(title="dbounded-bounded-equivalence", seed=seed,
                         sample_count=sample_count)
    qi_unbounded = math.isinf(phi.quasi_inverse().sup_finite)
    report.add("hypothesis_quasi_inverse_unbounded", qi_unbounded,
               witness=None if qi_unbounded else {"sup": phi.quasi_inverse().sup_finite})
    if not qi_unbounded:
        report.notes.append("hypothesis violated; equivalence not evaluated")
        return report
    law = check_serstnev(space, kind="phi", phi=phi, sample_count=sample_count,
                         seed=seed)
    report.add("hypothesis_transform_scaling_law", law.passed,
               witness=law.items[0].witness if not law.passed else None)
    if not law.passed:
        report.notes.append("hypothesis violated; equivalence not evaluated")
        return report

    bres = is_bounded(space, A, max_n=max_n, max_k=max_k)
    dbounded, radius = is_D_bounded(space, A)
    if bres.criterion_a == "inconclusive":
        report.add("equivalence_criterion_vs_dbounded", False,
                   witness={"criterion_a": bres.criterion_a, "d_bounded": dbounded})
        report.notes.append("inconclusive: criterion search exhausted its budget")
        return report
    a_holds = bres.criterion_a == "holds"
    report.add("equivalence_criterion_vs_dbounded", a_holds == dbounded,
               witness={"criterion_a": bres.criterion_a, "d_bounded": dbounded,
                        "radius_tail": radius.R.tail_value,
                        "table": bres.witness_table})
    if a_holds:
        report.add("criterion_implies_bounded", bres.verdict == "bounded",
                   witness={"verdict": bres.verdict})
    else:
        report.notes.append(f"covering verdict: {bres.verdict} "
                            "(boundedness does not imply the criterion in general)")
    return report


# ---------------------------------------------------------------------------
# Scalar-multiplication continuity probe
# ---------------------------------------------------------------------------

def scalar_continuity_probe(space: PNSpaceModel, points, null_sequences,
                            xs=None, probe_tol: float = 1e-3,
                            expect_law_link: bool = True) -> CheckReport:
    """For each point p, check numerically that ``nu_{lambda_i p}(x) -> 1``
    along the tail of each null-sequence prefix, and separately whether
    ``nu_p`` has tail value 1.  Under a transform scaling law the two verdicts
    must coincide pointwise.

    The numeric verdict is only as good as the supplied prefixes: they must be
    long enough for the scaling of the sampled points.
    """
    report = CheckReport(title="scalar-continuity-probe")
    sequences = [list(map(float, s)) for s in null_sequences]
    if not sequences or any(len(s) < 4 for s in sequences):
        raise ValueError("null sequences must have at least 4 terms")
    per_point = []
    agree = True
    worst_witness = None
    for p in points:
        p = np.asarray(p, dtype=float)
        F = space.nu(p)
        if xs is None:
            grid = x_grid(F.breakpoints(), count=6, lo=0.5, hi=4.0)
        else:
            grid = np.asarray(xs, dtype=float)
        if not np.any(p != 0.0):
            per_point.append({"p": p.tolist(), "continuous": True,
                              "dplus": True, "note": "origin: trivially continuous"})
            continue
        continuous = True
        for seq in sequences:
            tail_len = max(3, len(seq) // 4)
            tail = seq[-tail_len:]
            for x in grid:
                vals = [float(space.nu(lam * p).eval(float(x))) for lam in tail]
                if min(vals) < 1.0 - probe_tol:
                    continuous = False
                    break
            if not continuous:
                break
        dplus = is_in_Dplus(F)
        per_point.append({"p": p.tolist(), "continuous": continuous, "dplus": dplus})
        if continuous != dplus:
            agree = False
            worst_witness = per_point[-1]
    report.add("verdicts_agree_per_point", agree if expect_law_link else True,
               witness=worst_witness)
    report.notes.append(f"per-point verdicts: {per_point}")
    if not expect_law_link:
        report.notes.append("no scaling-law hypothesis supplied: agreement is "
                            "informational only")
    return report


# ---------------------------------------------------------------------------
# Step-valued (F-normed) boundedness propositions
# ---------------------------------------------------------------------------

def _sup_g(space: PNSpaceModel, A: SetSpec) -> float:
    g = space.prob_norm.g
    V = space.vector_space
    pts = _points_of(A)
    if pts is not None:
        return max(g.value(V, p) for p in pts)
    if isinstance(A, NormBall):
        return g.profile(A.radius)
    if isinstance(A, Ray):
        if A.unbounded:
            return g.magnitude_limit
        return g.profile(A.magnitude_cap * V.norm(np.asarray(A.direction, dtype=float)))
    raise ClosedFormUnavailable("no closed form; supply FiniteSet sample")


def check_fnormed_dbounded_props(space: PNSpaceModel, A: SetSpec,
                                 k_list=(2, 3, 5), max_n: int = 64,
                                 max_k: int = 2 ** 20) -> CheckReport:
    """Boundedness facts for step-valued norms built from a functional g:
    D-boundedness is equivalent to g staying bounded on the set, dilations
    preserve D-boundedness, and covering-sense boundedness implies it."""
    if not isinstance(space.prob_norm, EpsOfG):
        raise ValueError("these propositions need a step-valued probabilistic norm")
    report = CheckReport(title="fnormed-dbounded-props")
    sup_g = _sup_g(space, A)
    dbounded, radius = is_D_bounded(space, A)
    report.add("dbounded_iff_g_bounded", dbounded == (not math.isinf(sup_g)),
               witness={"sup_g": sup_g, "d_bounded": dbounded,
                        "radius_tail": radius.R.tail_value})
    for k in k_list:
        if dbounded:
            scaled_ok, _ = is_D_bounded(space, scale_set(A, k))
            report.add(f"dilation_preserves_dbounded[k={k}]", scaled_ok,
                       witness=None if scaled_ok else {"k": k})
        else:
            report.add(f"dilation_preserves_dbounded[k={k}]", True,
                       witness={"note": "antecedent false: set not D-bounded"})
    bres = is_bounded(space, A, max_n=max_n, max_k=max_k)
    if bres.verdict == "bounded":
        report.add("bounded_implies_dbounded", dbounded,
                   witness={"verdict": bres.verdict, "d_bounded": dbounded})
    else:
        report.add("bounded_implies_dbounded", True,
                   witness={"note": f"antecedent {bres.verdict}: implication vacuous"})
    return report
