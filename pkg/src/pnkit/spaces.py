"""Concrete probabilistic normed space models over R^n and their checkers.

A space model is a quadruple (vector space, probabilistic norm, tau, tau*)
with the norm axioms

    (N1) nu_p is the unit step at 0 exactly when p = 0,
    (N2) nu_{-p} = nu_p,
    (N3) nu_{p+q} >= tau(nu_p, nu_q),
    (N4) nu_p <= tau*(nu_{lambda p}, nu_{(1-lambda) p}) for lambda in [0, 1],

all checked pointwise on sampled vectors and grids.  Scaling-law checkers
cover the classical homogeneity condition nu_{lambda p}(x) = nu_p(x/|lambda|),
its power-law generalization with exponent alpha, and the transform-law
version driven by an admissible monotone map; each has an equivalent
quasi-inverse characterization that is verified on the same samples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from .ddf import (
    DDF,
    EPS0,
    Breakpoints,
    Exponential,
    HalfExponential,
    Scaled,
    Step,
    UniformUnit,
    is_eps0,
    scaled,
)
from .extreal import INF, close_ext, ext_gap
from .phi import Composed, PhiMap, require_admissible, transform_ddf
from .report import CheckReport
from .sampling import (
    rng_from_seed,
    sample_lambdas,
    sample_nonzero_scalars,
    sample_unit_interval,
    sample_vectors,
    x_grid,
    merged_breakpoints,
)
from .tnorms import FromPhiLOp, LOp, MinTNorm, PowerSumLOp, TConorm, dual, make_TG
from .tolerances import TOL_EXACT, TOL_GRID
from .triangle import (
    PointwiseM,
    TAU_M,
    TauT,
    TauTL,
    TauTStar,
    TriangleFn,
    apply,
    path_of,
    tolerance_of,
)

__all__ = [
    "VectorSpace",
    "FNorm",
    "PlainNorm",
    "NormPower",
    "NormRatio",
    "CustomFNorm",
    "ProbNorm",
    "Simple",
    "AlphaSimple",
    "EpsOfG",
    "Transformed",
    "PNSpaceModel",
    "nu",
    "check_norm_axioms",
    "check_fnorm_axioms",
    "check_pn_axioms",
    "check_serstnev",
    "check_phi_serstnev_characterization",
    "check_alpha_serstnev_characterization",
    "serstnev_beta",
    "better_than",
    "fnorm_pn_correspondence",
    "check_holder_menger",
    "check_tau_min_upgrade",
    "right_limit_at_zero",
]


@dataclass(frozen=True)
class VectorSpace:
    """R^n with one of the usual norms."""

    dim: int
    norm_kind: str = "l2"

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dimension must be at least 1")
        if self.norm_kind not in ("l1", "l2", "linf"):
            raise ValueError("norm_kind must be one of l1, l2, linf")

    def norm(self, p) -> float:
        v = np.asarray(p, dtype=float)
        if v.shape != (self.dim,):
            raise ValueError(f"expected a vector of dimension {self.dim}")
        if self.norm_kind == "l1":
            return float(np.sum(np.abs(v)))
        if self.norm_kind == "linf":
            return float(np.max(np.abs(v)))
        return float(np.linalg.norm(v))

    def zero(self) -> np.ndarray:
        return np.zeros(self.dim)


def check_norm_axioms(V: VectorSpace, sample_count: int = 50, seed: int = 0,
                      tol: float = 1e-9) -> CheckReport:
    rng = rng_from_seed(seed)
    report = CheckReport(title=f"norm-axioms[{V.norm_kind}]", seed=seed,
                         sample_count=sample_count)
    ps = sample_vectors(rng, sample_count, V.dim)
    report.add("positive_definite",
               V.norm(V.zero()) == 0.0 and all(V.norm(p) > 0 for p in ps))
    worst = max(abs(V.norm(c * p) - abs(c) * V.norm(p))
                for p in ps for c in (-2.0, -0.5, 0.5, 3.0))
    report.add("homogeneous", worst <= tol * 1e3, worst, tol * 1e3)
    worst = max(V.norm(p + q) - V.norm(p) - V.norm(q)
                for p, q in zip(ps, reversed(ps)))
    report.add("subadditive", worst <= tol * 1e3, worst, tol * 1e3)
    return report


# ---------------------------------------------------------------------------
# F-norms
# ---------------------------------------------------------------------------

class FNorm:
    """A vector functional built from a profile of the norm magnitude."""

    name = "fnorm"

    def profile(self, m: float) -> float:
        raise NotImplementedError

    def value(self, V: VectorSpace, p) -> float:
        return self.profile(V.norm(p))

    @property
    def magnitude_limit(self) -> float:
        """Limit of the profile as the magnitude grows without bound."""
        return INF

    @property
    def attains_limit(self) -> bool:
        """Whether the profile reaches its magnitude limit at a finite point."""
        return False


@dataclass(frozen=True)
class PlainNorm(FNorm):
    name = "plain"

    def profile(self, m):
        return m


@dataclass(frozen=True)
class NormPower(FNorm):
    """profile(m) = m**alpha; subadditive only for exponents at most 1."""

    alpha: float

    def __post_init__(self):
        if not (float(self.alpha) > 0):
            raise ValueError("power exponent must be positive")
        object.__setattr__(self, "alpha", float(self.alpha))

    @property
    def name(self):
        return f"norm_power({self.alpha})"

    def profile(self, m):
        return m ** self.alpha


@dataclass(frozen=True)
class NormRatio(FNorm):
    """profile(m) = m / (a + m); bounded by 1."""

    a: float

    def __post_init__(self):
        if not (float(self.a) > 0):
            raise ValueError("ratio offset must be positive")
        object.__setattr__(self, "a", float(self.a))

    @property
    def name(self):
        return f"norm_ratio({self.a})"

    def profile(self, m):
        return m / (self.a + m)

    @property
    def magnitude_limit(self):
        return 1.0


@dataclass(frozen=True, eq=False)
class CustomFNorm(FNorm):
    """Arbitrary functional; a magnitude profile is optional and, when absent,
    closed-form set classification is unavailable."""

    fn: Callable
    profile_fn: Callable | None = None
    limit: float = INF
    limit_attained: bool = False
    name = "custom"

    def profile(self, m):
        if self.profile_fn is None:
            raise ValueError("custom F-norm has no magnitude profile")
        return float(self.profile_fn(m))

    def value(self, V, p):
        return float(self.fn(np.asarray(p, dtype=float)))

    @property
    def magnitude_limit(self):
        return self.limit

    @property
    def attains_limit(self):
        return self.limit_attained


def check_fnorm_axioms(g: FNorm, V: VectorSpace, sample_count: int = 40,
                       seed: int = 0, tol: float = 1e-9) -> CheckReport:
    """Sampled F-norm axioms: vanishing only at the origin, contraction under
    scalars of modulus at most 1, and subadditivity."""
    rng = rng_from_seed(seed)
    report = CheckReport(title=f"fnorm-axioms[{g.name}]", seed=seed,
                         sample_count=sample_count)
    ps = sample_vectors(rng, sample_count, V.dim)
    definite = g.value(V, V.zero()) == 0.0 and all(g.value(V, p) > 0 for p in ps)
    report.add("definite", definite)
    worst, witness = 0.0, None
    for p in ps:
        gp = g.value(V, p)
        for lam in [-1.0, -0.5, 0.0, 0.25, 1.0] + list(rng.uniform(-1, 1, 4)):
            gap = g.value(V, lam * p) - gp
            if gap > worst:
                worst, witness = gap, {"p": p.tolist(), "lambda": float(lam)}
    report.add("contractive_under_unit_scalars", worst <= tol, worst, tol, witness)
    worst, witness = 0.0, None
    for p, q in zip(ps, reversed(ps)):
        gap = g.value(V, p + q) - g.value(V, p) - g.value(V, q)
        if gap > worst:
            worst, witness = gap, {"p": p.tolist(), "q": q.tolist()}
    report.add("subadditive", worst <= tol, worst, tol, witness)
    return report


# ---------------------------------------------------------------------------
# Probabilistic norms
# ---------------------------------------------------------------------------

def right_limit_at_zero(F: DDF) -> float:
    """The right limit of a d.d.f. at 0, computed structurally when possible."""
    if isinstance(F, Step):
        return 1.0 if F.a == 0.0 else 0.0
    if isinstance(F, Scaled):
        return right_limit_at_zero(F.base)
    if isinstance(F, (Exponential, UniformUnit, HalfExponential)):
        return 0.0
    if isinstance(F, Breakpoints):
        return F.points[0][2]
    return float(F.eval(1e-290))


def _flat_level_ddf(level: float) -> DDF:
    """Constant value ``level`` on (0, inf); the level-0 case is the step at inf."""
    if level <= 0.0:
        return Step(INF)
    return Breakpoints(((0.0, 0.0, min(level, 1.0)),))


def _validate_base(G: DDF) -> DDF:
    if isinstance(G, Step) and (G.a == 0.0 or math.isinf(G.a)):
        raise ValueError("base d.d.f. must differ from the unit step at 0 and "
                         "the identically-zero function")
    return G


class ProbNorm:
    """Maps vectors to d.d.f.s; the origin always maps to the unit step at 0."""

    name = "probnorm"
    #: nu_p(x) is nonincreasing in the magnitude of p
    magnitude_monotone = True

    def nu(self, V: VectorSpace, p) -> DDF:
        return self.nu_magnitude(V.norm(p))

    def nu_magnitude(self, m: float) -> DDF:
        raise NotImplementedError

    def nu_magnitude_limit(self) -> DDF:
        """Pointwise limit of nu at magnitude growing without bound."""
        raise NotImplementedError

    def nu_zero_limit_value(self, x: float) -> float:
        """Pointwise limit of nu_m(x) as the magnitude m shrinks to 0, x > 0."""
        raise NotImplementedError


@dataclass(frozen=True)
class Simple(ProbNorm):
    """nu_p = G(x / ||p||) for a fixed base d.d.f. G."""

    G: DDF

    def __post_init__(self):
        _validate_base(self.G)

    @property
    def name(self):
        return "simple"

    def nu_magnitude(self, m):
        if m == 0.0:
            return EPS0
        return scaled(self.G, max(m, 5e-324))

    def nu_magnitude_limit(self):
        return _flat_level_ddf(right_limit_at_zero(self.G))

    def nu_zero_limit_value(self, x):
        return self.G.tail_value


@dataclass(frozen=True)
class AlphaSimple(ProbNorm):
    """nu_p = G(x / ||p||**alpha) away from the origin, the step at 0 there."""

    G: DDF
    alpha: float

    def __post_init__(self):
        _validate_base(self.G)
        a = float(self.alpha)
        if not (a > 0) or math.isinf(a):
            raise ValueError("scaling exponent must be positive and finite")
        object.__setattr__(self, "alpha", a)

    @property
    def name(self):
        return f"alpha_simple({self.alpha})"

    def nu_magnitude(self, m):
        if m == 0.0:
            return EPS0
        # tiny magnitudes can underflow the power; keep the scale positive
        return scaled(self.G, max(m ** self.alpha, 5e-324))

    def nu_magnitude_limit(self):
        return _flat_level_ddf(right_limit_at_zero(self.G))

    def nu_zero_limit_value(self, x):
        return self.G.tail_value


@dataclass(frozen=True)
class EpsOfG(ProbNorm):
    """nu_p is the unit step at g(p) for an F-norm-style functional g."""

    g: FNorm

    @property
    def name(self):
        return f"eps_of_g[{self.g.name}]"

    def nu(self, V, p):
        return Step(self.g.value(V, p))

    def nu_magnitude(self, m):
        return Step(self.g.profile(m))

    def nu_magnitude_limit(self):
        return Step(self.g.magnitude_limit)

    def nu_zero_limit_value(self, x):
        threshold = self.g.profile(1e-290)
        return 1.0 if x > threshold else 0.0


@dataclass(frozen=True)
class Transformed(ProbNorm):
    """A probabilistic norm precomposed with an admissible monotone transform."""

    base: ProbNorm
    phi: PhiMap

    def __post_init__(self):
        require_admissible(self.phi)

    @property
    def name(self):
        return f"transformed[{self.base.name}]"

    @property
    def magnitude_monotone(self):
        return self.base.magnitude_monotone

    def nu(self, V, p):
        return transform_ddf(self.base.nu(V, p), self.phi)

    def nu_magnitude(self, m):
        return transform_ddf(self.base.nu_magnitude(m), self.phi)

    def nu_magnitude_limit(self):
        return transform_ddf(self.base.nu_magnitude_limit(), self.phi)

    def nu_zero_limit_value(self, x):
        return self.base.nu_zero_limit_value(self.phi.eval(x))


@dataclass(frozen=True)
class PNSpaceModel:
    """A vector space with a probabilistic norm and a pair of triangle functions."""

    vector_space: VectorSpace
    prob_norm: ProbNorm
    tau: TriangleFn
    tau_star: TriangleFn

    def nu(self, p) -> DDF:
        return self.prob_norm.nu(self.vector_space, p)

    def theta(self) -> np.ndarray:
        return self.vector_space.zero()


def nu(space: PNSpaceModel, p) -> DDF:
    return space.nu(p)


# ---------------------------------------------------------------------------
# Axiom checker
# ---------------------------------------------------------------------------

def _space_grid(space: PNSpaceModel, vectors, count: int = 16) -> np.ndarray:
    ddfs = [space.nu(p) for p in vectors[:6]]
    return x_grid(merged_breakpoints(*ddfs) if ddfs else (), count=count)


def check_pn_axioms(space: PNSpaceModel, sample_count: int = 30, seed: int = 0,
                    x_count: int = 16) -> CheckReport:
    """Pointwise check of (N1)-(N4) on sampled vectors, weights, and grids.

    Inequalities involving a grid-evaluated triangle function get grid slack;
    closed-form paths are held to the exact tolerance.
    """
    if sample_count < 1:
        raise ValueError("sample_count must be at least 1")
    rng = rng_from_seed(seed)
    V = space.vector_space
    report = CheckReport(title="pn-axioms", seed=seed, sample_count=sample_count)
    ps = sample_vectors(rng, sample_count, V.dim)
    theta = space.theta()

    nu_theta = space.nu(theta)
    origin_ok = is_eps0(nu_theta)
    worst, witness = 0.0, None
    for p in ps:
        F = space.nu(p)
        xs = x_grid(F.breakpoints(), count=x_count)
        vals = F.eval(xs)
        if bool(np.all(vals >= 1.0 - 1e-12)):
            worst, witness = 1.0, {"p": p.tolist(), "reason": "nu_p equals the step at 0 on the grid"}
            break
    report.add("N1_origin_and_definiteness", origin_ok and worst == 0.0,
               worst, 0.0, witness)

    tol = TOL_EXACT
    worst, witness = 0.0, None
    for p in ps:
        F, Fm = space.nu(p), space.nu(-p)
        xs = x_grid(F.breakpoints(), count=x_count)
        gap = float(np.max(np.abs(F.eval(xs) - Fm.eval(xs)), initial=0.0))
        if gap > worst:
            worst, witness = gap, {"p": p.tolist()}
    report.add("N2_symmetry", worst <= tol, worst, tol, witness)

    tau_tol = tolerance_of(space.tau)
    worst, witness = 0.0, None
    for p, q in zip(ps, list(ps[1:]) + [ps[0]]):
        Fp, Fq, Fpq = space.nu(p), space.nu(q), space.nu(p + q)
        R = apply(space.tau, Fp, Fq)
        xs = x_grid(merged_breakpoints(Fp, Fq, Fpq), count=x_count)
        gap = float(np.max(R.eval(xs) - Fpq.eval(xs), initial=0.0))
        if gap > worst:
            worst, witness = gap, {"p": p.tolist(), "q": q.tolist(),
                                   "x": float(xs[int(np.argmax(R.eval(xs) - Fpq.eval(xs)))])}
    report.add("N3_triangle", worst <= tau_tol, worst, tau_tol, witness,
               path=path_of(space.tau))

    star_tol = tolerance_of(space.tau_star)
    lambdas = sample_lambdas(rng, 8)
    worst, witness = 0.0, None
    for p in ps[: max(4, sample_count // 2)]:
        Fp = space.nu(p)
        for lam in lambdas:
            R = apply(space.tau_star, space.nu(lam * p), space.nu((1.0 - lam) * p))
            xs = x_grid(merged_breakpoints(Fp, R), count=x_count)
            gap = float(np.max(Fp.eval(xs) - R.eval(xs), initial=0.0))
            if gap > worst:
                worst, witness = gap, {"p": p.tolist(), "lambda": float(lam)}
    report.add("N4_convexity", worst <= star_tol, worst, star_tol, witness,
               path=path_of(space.tau_star))
    return report


# ---------------------------------------------------------------------------
# Scaling-law (Serstnev-type) checkers
# ---------------------------------------------------------------------------

def check_serstnev(space: PNSpaceModel, kind: str = "classic", alpha: float | None = None,
                   phi: PhiMap | None = None, sample_count: int = 60,
                   seed: int = 0, x_count: int = 12) -> CheckReport:
    """Scaling-law check over sampled (p, lambda != 0, x).

    ``kind``: "classic" for nu_{lp}(x) = nu_p(x/|l|), "alpha" for the
    power-law variant with exponent ``alpha``, "phi" for the transform-law
    variant nu_{lp}(x) = nu_p(phi^(phi(x)/|l|)).
    """
    if kind not in ("classic", "alpha", "phi"):
        raise ValueError("kind must be classic, alpha, or phi")
    if kind == "alpha" and (alpha is None or not alpha > 0):
        raise ValueError("the alpha variant needs a positive exponent")
    if kind == "phi":
        if phi is None:
            raise ValueError("the phi variant needs a transform")
        require_admissible(phi)
    rng = rng_from_seed(seed)
    V = space.vector_space
    ps = sample_vectors(rng, max(4, sample_count // 8), V.dim)
    lams = sample_nonzero_scalars(rng, max(4, sample_count // 8))
    phi_qi = phi.quasi_inverse() if kind == "phi" else None
    report = CheckReport(title=f"serstnev[{kind}]", seed=seed, sample_count=sample_count)

    worst, witness = 0.0, None
    checked = 0
    while checked < sample_count:
        for p in ps:
            for lam in lams:
                F_lp = space.nu(lam * p)
                F_p = space.nu(p)
                xs = x_grid(merged_breakpoints(F_lp, F_p), count=x_count)
                for x in xs:
                    lhs = F_lp.eval(x)
                    if kind == "classic":
                        rhs = F_p.eval(x / abs(lam))
                    elif kind == "alpha":
                        rhs = F_p.eval(x / abs(lam) ** alpha)
                    else:
                        rhs = F_p.eval(phi_qi.eval(phi.eval(x) / abs(lam)))
                    gap = abs(lhs - rhs)
                    if gap > worst:
                        worst, witness = gap, {"p": p.tolist(), "lambda": float(lam),
                                               "x": float(x), "lhs": lhs, "rhs": rhs}
                checked += 1
                if checked >= sample_count:
                    break
            if checked >= sample_count:
                break
    report.add("scaling_law", worst <= TOL_EXACT, worst, TOL_EXACT, witness)
    return report


def serstnev_beta(alpha: float, lam: float) -> float:
    """The contracted weight [lambda^alpha + (1-lambda)^alpha]^(1/alpha)."""
    return (lam ** alpha + (1.0 - lam) ** alpha) ** (1.0 / alpha)


def _qi_gap(a: float, b: float, tol: float) -> float:
    """Violation measure for quasi-inverse values: relative beyond O(1)."""
    if close_ext(a, b, abs_tol=tol, rel_tol=tol):
        return 0.0
    gap = ext_gap(a, b)
    scale = max(1.0, abs(a) if math.isfinite(a) else 1.0,
                abs(b) if math.isfinite(b) else 1.0)
    return gap / scale if math.isfinite(gap) else INF


def check_phi_serstnev_characterization(space: PNSpaceModel, phi: PhiMap,
                                        sample_count: int = 60, seed: int = 0) -> CheckReport:
    """Quasi-inverse form of the transform scaling law.

    With L the additive-generator operation of a bijective transform, the law
    holds exactly when ``nu_p^ = L(nu_{lambda p}^, nu_{(1-lambda) p}^)`` for
    every weight; both sides are evaluated on shared samples and the verdict
    is compared against the direct scaling-law check on the same seed.
    """
    require_admissible(phi)
    if not phi.in_minf:
        raise ValueError("the characterization needs a bijective transform")
    L = FromPhiLOp(phi)
    rng = rng_from_seed(seed)
    V = space.vector_space
    ps = sample_vectors(rng, max(4, sample_count // 10), V.dim)
    lams = sample_lambdas(rng, 8)
    ts = sample_unit_interval(rng, 10)
    report = CheckReport(title="phi-serstnev-characterization", seed=seed,
                         sample_count=sample_count)

    worst, witness = 0.0, None
    checked = 0
    for p in ps:
        qp = space.nu(p).quasi_inverse()
        for lam in lams:
            qa = space.nu(lam * p).quasi_inverse()
            qb = space.nu((1.0 - lam) * p).quasi_inverse()
            for t in ts:
                lhs = qp.eval(t)
                rhs = L.eval(qa.eval(t), qb.eval(t))
                gap = _qi_gap(lhs, rhs, TOL_EXACT)
                if gap > worst:
                    worst, witness = gap, {"p": p.tolist(), "lambda": float(lam),
                                           "t": float(t), "lhs": lhs, "rhs": rhs}
                checked += 1
            if checked >= sample_count:
                break
        if checked >= sample_count:
            break
    char_ok = worst <= TOL_EXACT
    report.add("quasi_inverse_identity", char_ok, worst, TOL_EXACT, witness)

    law = check_serstnev(space, kind="phi", phi=phi, sample_count=sample_count,
                         seed=seed)
    law_ok = law.passed
    report.add("agrees_with_scaling_law", char_ok == law_ok,
               witness={"characterization": char_ok, "scaling_law": law_ok,
                        "law_witness": law.items[0].witness})
    return report


def check_alpha_serstnev_characterization(space: PNSpaceModel, alpha: float,
                                          sample_count: int = 60, seed: int = 0,
                                          x_count: int = 8) -> CheckReport:
    """Power-law scaling via the contracted-weight identity.

    Checks the quasi-inverse additivity ``nu_{beta p}^ = nu_{lambda p}^ +
    nu_{(1-lambda) p}^`` with beta the contracted weight, and the equivalent
    min-convolution statement on the distribution side.
    """
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    rng = rng_from_seed(seed)
    V = space.vector_space
    ps = sample_vectors(rng, max(4, sample_count // 10), V.dim)
    lams = sample_lambdas(rng, 8)
    ts = sample_unit_interval(rng, 10)
    report = CheckReport(title=f"alpha-serstnev-characterization[{alpha}]",
                         seed=seed, sample_count=sample_count)

    worst, witness = 0.0, None
    checked = 0
    for p in ps:
        for lam in lams:
            beta = serstnev_beta(alpha, lam)
            qb = space.nu(beta * p).quasi_inverse()
            qa1 = space.nu(lam * p).quasi_inverse()
            qa2 = space.nu((1.0 - lam) * p).quasi_inverse()
            for t in ts:
                lhs = qb.eval(t)
                rhs = qa1.eval(t) + qa2.eval(t)
                gap = _qi_gap(lhs, rhs, TOL_EXACT)
                if gap > worst:
                    worst, witness = gap, {"p": p.tolist(), "lambda": float(lam),
                                           "t": float(t), "lhs": lhs, "rhs": rhs}
                checked += 1
            if checked >= sample_count:
                break
        if checked >= sample_count:
            break
    report.add("quasi_inverse_sum", worst <= TOL_EXACT, worst, TOL_EXACT, witness)

    worst, witness = 0.0, None
    for p in ps[:4]:
        for lam in lams[:5]:
            beta = serstnev_beta(alpha, lam)
            lhs_ddf = space.nu(beta * p)
            rhs_ddf = apply(TAU_M, space.nu(lam * p), space.nu((1.0 - lam) * p))
            xs = x_grid(merged_breakpoints(lhs_ddf, rhs_ddf), count=x_count)
            d = np.abs(lhs_ddf.eval(xs) - rhs_ddf.eval(xs))
            gap = float(np.max(d, initial=0.0))
            if gap > worst:
                worst, witness = gap, {"p": p.tolist(), "lambda": float(lam),
                                       "x": float(xs[int(np.argmax(d))])}
    report.add("min_convolution_form", worst <= TOL_EXACT, worst, TOL_EXACT,
               witness)
    return report


# ---------------------------------------------------------------------------
# The "better" partial order
# ---------------------------------------------------------------------------

@dataclass
class BetterResult:
    relation: str  # "better", "worse", "equal", "incomparable"
    report: CheckReport


def better_than(space1: PNSpaceModel, space2: PNSpaceModel,
                sample_count: int = 24, seed: int = 0, x_count: int = 12) -> BetterResult:
    """Compare two space structures sharing the vector space and the norm.

    The first is better when its tau dominates pointwise on sampled pairs and
    its tau* is dominated on sampled binary splittings.
    """
    if space1.vector_space != space2.vector_space:
        raise ValueError("spaces must share the vector space")
    rng = rng_from_seed(seed)
    V = space1.vector_space
    ps = sample_vectors(rng, max(4, sample_count), V.dim)
    for p in ps[:6]:
        F1, F2 = space1.nu(p), space2.nu(p)
        xs = x_grid(merged_breakpoints(F1, F2), count=x_count)
        if float(np.max(np.abs(F1.eval(xs) - F2.eval(xs)), initial=0.0)) > TOL_EXACT:
            raise ValueError("spaces must share the probabilistic norm")

    tol = max(tolerance_of(space1.tau), tolerance_of(space2.tau),
              tolerance_of(space1.tau_star), tolerance_of(space2.tau_star))
    report = CheckReport(title="better-order", seed=seed, sample_count=sample_count)

    tau_above = tau_below = 0.0
    wit_tau = None
    for p, q in zip(ps, list(ps[1:]) + [ps[0]]):
        F, G = space1.nu(p), space1.nu(q)
        A1 = apply(space1.tau, F, G)
        A2 = apply(space2.tau, F, G)
        xs = x_grid(merged_breakpoints(A1, A2), count=x_count)
        d = A1.eval(xs) - A2.eval(xs)
        tau_above = max(tau_above, float(np.max(d, initial=0.0)))
        below = float(np.max(-d, initial=0.0))
        if below > tau_below:
            tau_below, wit_tau = below, {"p": p.tolist(), "q": q.tolist(),
                                         "x": float(xs[int(np.argmax(-d))])}
    report.add("tau_dominates", tau_below <= tol, tau_below, tol, wit_tau,
               path="grid" if "grid" in (path_of(space1.tau), path_of(space2.tau)) else "exact")

    star_above = star_below = 0.0
    wit_star = None
    lams = sample_lambdas(rng, 6)
    for p in ps[: max(4, sample_count // 2)]:
        for lam in lams:
            Fa, Fb = space1.nu(lam * p), space1.nu((1.0 - lam) * p)
            B1 = apply(space1.tau_star, Fa, Fb)
            B2 = apply(space2.tau_star, Fa, Fb)
            xs = x_grid(merged_breakpoints(B1, B2), count=x_count)
            d = B1.eval(xs) - B2.eval(xs)
            star_below = max(star_below, float(np.max(-d, initial=0.0)))
            above = float(np.max(d, initial=0.0))
            if above > star_above:
                star_above, wit_star = above, {"p": p.tolist(), "lambda": float(lam),
                                               "x": float(xs[int(np.argmax(d))])}
    report.add("tau_star_dominated", star_above <= tol, star_above, tol, wit_star,
               path="grid" if "grid" in (path_of(space1.tau_star), path_of(space2.tau_star)) else "exact")

    forward = tau_below <= tol and star_above <= tol
    backward = tau_above <= tol and star_below <= tol
    if forward and backward:
        relation = "equal"
    elif forward:
        relation = "better"
    elif backward:
        relation = "worse"
    else:
        relation = "incomparable"
    report.notes.append(f"relation: {relation}")
    return BetterResult(relation, report)


# ---------------------------------------------------------------------------
# F-norm correspondence
# ---------------------------------------------------------------------------

def _is_norm_sampled(g: FNorm, V: VectorSpace, rng, count: int = 20,
                     tol: float = 1e-9) -> tuple[bool, dict | None]:
    ps = sample_vectors(rng, count, V.dim)
    for p in ps:
        gp = g.value(V, p)
        for lam in (-2.0, -0.5, 0.5, 3.0):
            gap = abs(g.value(V, lam * p) - abs(lam) * gp)
            if gap > tol * max(1.0, gp):
                return False, {"p": p.tolist(), "lambda": lam, "gap": gap}
    for p, q in zip(ps, reversed(ps)):
        if g.value(V, p + q) > g.value(V, p) + g.value(V, q) + tol:
            return False, {"p": p.tolist(), "q": q.tolist()}
    return True, None


def fnorm_pn_correspondence(subject, direction: str, vector_space: VectorSpace | None = None,
                            sample_count: int = 30, seed: int = 0) -> CheckReport:
    """Bridge between F-norms and step-valued probabilistic norms.

    ``forward``: from a functional g, build the space with nu_p the step at
    g(p), min-driven sup-convolution, and the maximal triangle function, and
    run the space axioms.  ``reverse``: from such a space, extract g and run
    the F-norm axioms.  Both directions also report whether "g is a norm" and
    the classical scaling law hold together, which applies whenever tau maps
    step pairs below the step at the summed thresholds.
    """
    rng = rng_from_seed(seed)
    if direction == "forward":
        if not isinstance(subject, FNorm):
            raise TypeError("forward direction expects an F-norm")
        V = vector_space or VectorSpace(1)
        space = PNSpaceModel(V, EpsOfG(subject), TAU_M, PointwiseM())
        g = subject
    elif direction == "reverse":
        if not isinstance(subject, PNSpaceModel):
            raise TypeError("reverse direction expects a space model")
        if not isinstance(subject.prob_norm, EpsOfG):
            raise ValueError("reverse direction needs a step-valued probabilistic norm")
        space = subject
        V = space.vector_space
        g = space.prob_norm.g
    else:
        raise ValueError("direction must be forward or reverse")

    report = CheckReport(title=f"fnorm-correspondence[{direction}]", seed=seed,
                         sample_count=sample_count)
    pn = check_pn_axioms(space, sample_count=sample_count, seed=seed)
    for item in pn.items:
        report.items.append(item)
    fn = check_fnorm_axioms(g, V, sample_count=sample_count, seed=seed)
    for item in fn.items:
        report.items.append(replace(item, name=f"fnorm_{item.name}"))
    report.add("axioms_agree", pn.passed == fn.passed,
               witness={"pn_axioms": pn.passed, "fnorm_axioms": fn.passed})

    # When tau maps step pairs at or below the summed-threshold step, the
    # functional is a norm exactly when the classical scaling law holds.
    worst = 0.0
    for a, b in zip(rng.uniform(0, 3, 10), rng.uniform(0, 3, 10)):
        out = apply(space.tau, Step(a), Step(b))
        xs = x_grid((a, b, a + b), count=10)
        worst = max(worst, float(np.max(out.eval(xs) - Step(a + b).eval(xs), initial=0.0)))
    if worst <= TOL_EXACT:
        is_norm, norm_wit = _is_norm_sampled(g, V, rng)
        law = check_serstnev(space, kind="classic", sample_count=sample_count, seed=seed)
        report.add("norm_iff_classic_scaling_law", is_norm == law.passed,
                   witness={"g_is_norm": is_norm, "scaling_law": law.passed,
                            "norm_witness": norm_wit})
    else:
        report.notes.append("tau exceeds the summed-threshold step on step pairs; "
                            "the norm/scaling-law equivalence is not applicable")
    return report


# ---------------------------------------------------------------------------
# Generated-t-norm (Menger) structure on power-scaled spaces
# ---------------------------------------------------------------------------

def check_holder_menger(G: DDF, alpha: float, vector_space: VectorSpace | None = None,
                        sample_count: int = 50, seed: int = 0, x_count: int = 12,
                        pair_count: int | None = None, conv_n: int = 2048) -> CheckReport:
    """Menger structure of a power-scaled space under the generated t-norm.

    Verifies (i) the scalar convexity inequality
    ``(a+b)^(1-alpha) <= lambda^alpha a^(1-alpha) + (1-lambda)^alpha b^(1-alpha)``
    for exponents above 1, (ii) that the generated-t-norm convolution stays
    below the exact min-convolution over the power-sum curve, and (iii) the
    space axioms with the generated pair.
    """
    if not alpha > 1:
        raise ValueError("the generated-t-norm structure needs an exponent above 1")
    V = vector_space or VectorSpace(2)
    rng = rng_from_seed(seed)
    report = CheckReport(title=f"holder-menger[{alpha}]", seed=seed,
                         sample_count=sample_count)

    worst, witness = 0.0, None
    for _ in range(sample_count):
        lam = float(rng.uniform(1e-6, 1.0 - 1e-6))
        a = 10.0 ** rng.uniform(-3, 3)
        b = 10.0 ** rng.uniform(-3, 3)
        lhs = (a + b) ** (1.0 - alpha)
        rhs = lam ** alpha * a ** (1.0 - alpha) + (1.0 - lam) ** alpha * b ** (1.0 - alpha)
        gap = lhs - rhs
        scale = max(1.0, abs(lhs), abs(rhs))
        if gap / scale > worst:
            worst, witness = gap / scale, {"lambda": lam, "a": a, "b": b}
    report.add("scalar_convexity_inequality", worst <= TOL_EXACT, worst,
               TOL_EXACT, witness)

    TG = make_TG(G, alpha)
    L = PowerSumLOp(alpha)
    tau_generated = TauT(TG)
    tau_min_curve = TauTL(MinTNorm(), L)
    norm = AlphaSimple(G, alpha)
    npairs = pair_count if pair_count is not None else max(6, sample_count // 6)
    worst, witness = 0.0, None
    for _ in range(npairs):
        p = sample_vectors(rng, 1, V.dim)[0]
        q = sample_vectors(rng, 1, V.dim)[0]
        Fp, Fq = norm.nu(V, p), norm.nu(V, q)
        from .triangle import GridConvolution

        A = GridConvolution("sup", TG, None, Fp, Fq, n=conv_n)
        B = apply(tau_min_curve, Fp, Fq)
        xs = x_grid(merged_breakpoints(Fp, Fq, B), count=x_count)
        d = A.eval(xs) - B.eval(xs)
        gap = float(np.max(d, initial=0.0))
        if gap > worst:
            worst, witness = gap, {"p": p.tolist(), "q": q.tolist(),
                                   "x": float(xs[int(np.argmax(d))])}
    report.add("generated_below_min_curve", worst <= TOL_GRID, worst, TOL_GRID,
               witness, path="grid")

    space = PNSpaceModel(V, norm, tau_generated, TauTStar(dual(TG)))
    pn = check_pn_axioms(space, sample_count=min(8, sample_count), seed=seed,
                         x_count=8)
    report.add("pn_axioms_generated_pair", pn.passed,
               witness=None if pn.passed else pn.to_dict())
    return report


# ---------------------------------------------------------------------------
# tau* upgrade to the min-convolution
# ---------------------------------------------------------------------------

def check_tau_min_upgrade(space: PNSpaceModel, alpha: float,
                          sample_count: int = 40, seed: int = 0,
                          x_count: int = 10) -> CheckReport:
    """For a power-law scaling space, replacing tau* by the min-convolution
    keeps the structure: nu_p <= nu_{beta p} = min-convolution of the split,
    and the resulting quadruple still satisfies the space axioms."""
    pre = check_serstnev(space, kind="alpha", alpha=alpha,
                         sample_count=sample_count, seed=seed)
    rng = rng_from_seed(seed)
    V = space.vector_space
    report = CheckReport(title=f"tau-min-upgrade[{alpha}]", seed=seed,
                         sample_count=sample_count)
    report.add("alpha_scaling_law_precondition", pre.passed,
               witness=pre.items[0].witness if not pre.passed else None)

    ps = sample_vectors(rng, max(4, sample_count // 6), V.dim)
    lams = sample_lambdas(rng, 6)
    worst_chain, wit_chain = 0.0, None
    worst_eq, wit_eq = 0.0, None
    for p in ps:
        Fp = space.nu(p)
        for lam in lams:
            beta = serstnev_beta(alpha, lam)
            Fb = space.nu(beta * p)
            conv = apply(TAU_M, space.nu(lam * p), space.nu((1.0 - lam) * p))
            xs = x_grid(merged_breakpoints(Fp, Fb, conv), count=x_count)
            chain = float(np.max(Fp.eval(xs) - Fb.eval(xs), initial=0.0))
            if chain > worst_chain:
                worst_chain, wit_chain = chain, {"p": p.tolist(), "lambda": float(lam)}
            eq = float(np.max(np.abs(Fb.eval(xs) - conv.eval(xs)), initial=0.0))
            if eq > worst_eq:
                worst_eq, wit_eq = eq, {"p": p.tolist(), "lambda": float(lam)}
    report.add("nu_below_contracted", worst_chain <= TOL_EXACT, worst_chain,
               TOL_EXACT, wit_chain)
    report.add("contracted_equals_min_convolution", worst_eq <= TOL_EXACT,
               worst_eq, TOL_EXACT, wit_eq)

    upgraded = replace(space, tau_star=TAU_M)
    pn = check_pn_axioms(upgraded, sample_count=min(12, sample_count), seed=seed)
    report.add("pn_axioms_with_min_tau_star", pn.passed,
               witness=None if pn.passed else pn.to_dict())
    return report
