"""t-norms, t-conorms, distribution-generated t-norms, and L-operations.

A t-norm is a commutative, associative, monotone binary operation on [0, 1]
with identity 1; its dual t-conorm is ``T*(x, y) = 1 - T(1-x, 1-y)``.
L-operations are surjective monotone binary operations on [0, inf] used as the
constraint curve of generalized convolutions; the additive one recovers plain
sup-convolution and the power-sum family arises from power transforms of the
half-line.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .ddf import DDF
from .extreal import INF, npow, xpow
from .report import CheckReport
from .sampling import rng_from_seed

__all__ = [
    "TNorm",
    "MinTNorm",
    "ProductTNorm",
    "LukasiewiczTNorm",
    "DrasticTNorm",
    "TGTNorm",
    "CustomTNorm",
    "TConorm",
    "dual",
    "make_TG",
    "eval_tnorm",
    "eval_conorm",
    "LOp",
    "SumLOp",
    "PowerSumLOp",
    "FromPhiLOp",
    "eval_lop",
    "check_tnorm_axioms",
    "M",
    "PRODUCT",
    "LUKASIEWICZ",
    "DRASTIC",
    "SUM_L",
]


def _check_unit(*vals: float) -> None:
    for v in vals:
        if math.isnan(v) or v < 0.0 or v > 1.0:
            raise ValueError("t-norm arguments must lie in [0, 1]")


class TNorm:
    name = "tnorm"

    def eval(self, x: float, y: float) -> float:
        raise NotImplementedError

    def eval_array(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        x, y = np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float))
        return np.array([self.eval(float(a), float(b)) for a, b in zip(x.ravel(), y.ravel())]).reshape(x.shape)


@dataclass(frozen=True)
class MinTNorm(TNorm):
    name = "M"

    def eval(self, x, y):
        _check_unit(x, y)
        return min(x, y)

    def eval_array(self, x, y):
        return np.minimum(x, y)


@dataclass(frozen=True)
class ProductTNorm(TNorm):
    name = "product"

    def eval(self, x, y):
        _check_unit(x, y)
        return x * y

    def eval_array(self, x, y):
        return np.asarray(x) * np.asarray(y)


@dataclass(frozen=True)
class LukasiewiczTNorm(TNorm):
    name = "lukasiewicz"

    def eval(self, x, y):
        _check_unit(x, y)
        return max(x + y - 1.0, 0.0)

    def eval_array(self, x, y):
        return np.maximum(np.asarray(x) + np.asarray(y) - 1.0, 0.0)


@dataclass(frozen=True)
class DrasticTNorm(TNorm):
    """The least t-norm: x if y = 1, y if x = 1, and 0 elsewhere."""

    name = "Z"

    def eval(self, x, y):
        _check_unit(x, y)
        if y == 1.0:
            return x
        if x == 1.0:
            return y
        return 0.0

    def eval_array(self, x, y):
        x, y = np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float))
        return np.where(y == 1.0, x, np.where(x == 1.0, y, 0.0))


@dataclass(frozen=True)
class CustomTNorm(TNorm):
    fn: Callable[[float, float], float]
    label: str = "custom"

    @property
    def name(self):
        return self.label

    def eval(self, x, y):
        _check_unit(x, y)
        return float(self.fn(x, y))


@dataclass(frozen=True, eq=False)
class TGTNorm(TNorm):
    """t-norm generated by a strictly increasing continuous d.d.f. ``G``.

    ``T(x, y) = G((u^c + v^c)^(1/c))`` with ``u = Ginv(x)``, ``v = Ginv(y)``
    and ``c = 1/(1 - alpha)``.  Endpoint arguments are handled by continuous
    extension: ``Ginv`` is the left-continuous quasi-inverse, so ``Ginv(1)``
    is infinite when G never attains 1, which makes 1 an exact identity.
    For exponents below 1 the formula is still evaluated but the identity
    axiom generally fails; construction emits a warning in that case.
    """

    base: DDF
    alpha: float

    def __post_init__(self):
        if not self.base.is_strictly_increasing:
            raise ValueError("generator of a TG t-norm must be strictly increasing")
        if not self.base.is_continuous:
            raise ValueError("generator of a TG t-norm must be continuous")
        a = float(self.alpha)
        if not (a > 0) or a == 1.0:
            raise ValueError("TG exponent must be positive and different from 1")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "_ginv", self.base.quasi_inverse())

    @property
    def name(self):
        return f"TG(alpha={self.alpha})"

    def eval(self, x, y):
        _check_unit(x, y)
        c = 1.0 / (1.0 - self.alpha)
        u = self._ginv.eval(x)
        v = self._ginv.eval(y)
        s = xpow(u, c) + xpow(v, c)
        return self.base.eval(xpow(s, 1.0 - self.alpha))

    def eval_array(self, x, y):
        x, y = np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float))
        c = 1.0 / (1.0 - self.alpha)
        u = self._ginv.eval_array(x)
        v = self._ginv.eval_array(y)
        s = npow(u, c) + npow(v, c)
        return self.base.eval(npow(s, 1.0 - self.alpha))


def make_TG(G: DDF, alpha: float) -> TGTNorm:
    """Build the generated t-norm; exponents below 1 are accepted with a warning."""
    if 0 < alpha < 1:
        warnings.warn(
            "TG with exponent below 1 rarely satisfies the identity axiom; "
            "the axiom checker will report what holds",
            stacklevel=2,
        )
    return TGTNorm(G, alpha)


@dataclass(frozen=True)
class TConorm:
    """Dual of a t-norm: ``T*(x, y) = 1 - T(1-x, 1-y)``; identity 0."""

    tnorm: TNorm

    @property
    def name(self):
        return f"{self.tnorm.name}*"

    def eval(self, x, y):
        _check_unit(x, y)
        return 1.0 - self.tnorm.eval(1.0 - x, 1.0 - y)

    def eval_array(self, x, y):
        x, y = np.asarray(x, float), np.asarray(y, float)
        return 1.0 - self.tnorm.eval_array(1.0 - x, 1.0 - y)


def dual(op):
    """Dual of a t-norm (a t-conorm) or of a t-conorm (its t-norm back)."""
    if isinstance(op, TConorm):
        return op.tnorm
    if isinstance(op, TNorm):
        return TConorm(op)
    raise TypeError("dual expects a t-norm or a t-conorm")


def eval_tnorm(T: TNorm, x: float, y: float) -> float:
    return T.eval(x, y)


def eval_conorm(Tstar: TConorm, x: float, y: float) -> float:
    return Tstar.eval(x, y)


M = MinTNorm()
PRODUCT = ProductTNorm()
LUKASIEWICZ = LukasiewiczTNorm()
DRASTIC = DrasticTNorm()


# ---------------------------------------------------------------------------
# L-operations on [0, inf]
# ---------------------------------------------------------------------------

def _check_ext(*vals: float) -> None:
    for v in vals:
        if math.isnan(v) or v < 0.0:
            raise ValueError("L-operation arguments must lie in [0, inf]")


class LOp:
    name = "lop"

    def eval(self, u: float, v: float) -> float:
        raise NotImplementedError

    def combine_scales(self, c1: float, c2: float) -> float | None:
        """``c`` with ``L(c1*q, c2*q) = c*q`` for every q, when one exists."""
        return None

    def section_inverse(self, u: float, x: float) -> float | None:
        """Solve ``L(u, v) = x`` for v, or None when no solution exists."""
        raise NotImplementedError


@dataclass(frozen=True)
class SumLOp(LOp):
    name = "sum"

    def eval(self, u, v):
        _check_ext(u, v)
        return u + v

    def combine_scales(self, c1, c2):
        return c1 + c2

    def section_inverse(self, u, x):
        return x - u if x >= u else None


@dataclass(frozen=True)
class PowerSumLOp(LOp):
    """``L(u, v) = (u^(1/alpha) + v^(1/alpha))^alpha``; additive at alpha = 1."""

    alpha: float

    def __post_init__(self):
        a = float(self.alpha)
        if not (a > 0) or math.isinf(a):
            raise ValueError("power-sum exponent must be positive and finite")
        object.__setattr__(self, "alpha", a)

    @property
    def name(self):
        return f"power_sum({self.alpha})"

    def eval(self, u, v):
        _check_ext(u, v)
        r = 1.0 / self.alpha
        return xpow(xpow(u, r) + xpow(v, r), self.alpha)

    def combine_scales(self, c1, c2):
        r = 1.0 / self.alpha
        return xpow(xpow(c1, r) + xpow(c2, r), self.alpha)

    def section_inverse(self, u, x):
        r = 1.0 / self.alpha
        d = xpow(x, r) - xpow(u, r)
        if d < 0:
            return None
        return xpow(d, self.alpha)


@dataclass(frozen=True, eq=False)
class FromPhiLOp(LOp):
    """``L(u, v) = phi_inv(phi(u) + phi(v))`` for a bijective monotone transform."""

    phi: object

    def __post_init__(self):
        if not getattr(self.phi, "in_minf", False):
            raise ValueError("an additive-generator L-operation needs a bijective transform")
        object.__setattr__(self, "_inv", self.phi.quasi_inverse())

    @property
    def name(self):
        return f"from_phi({self.phi!r})"

    def eval(self, u, v):
        _check_ext(u, v)
        return self._inv.eval(self.phi.eval(u) + self.phi.eval(v))

    def combine_scales(self, c1, c2):
        order = getattr(self.phi, "homogeneity_order", None)
        if order is None:
            return None
        s = xpow(c1, order) + xpow(c2, order)
        return xpow(s, 1.0 / order)

    def section_inverse(self, u, x):
        d = self.phi.eval(x) - self.phi.eval(u)
        if d < 0:
            return None
        return self._inv.eval(d)


SUM_L = SumLOp()


def eval_lop(L: LOp, u: float, v: float) -> float:
    return L.eval(u, v)


# ---------------------------------------------------------------------------
# Axiom checker
# ---------------------------------------------------------------------------

def check_tnorm_axioms(T: TNorm, sample_count: int = 200, seed: int = 0,
                       tol: float = 1e-9) -> CheckReport:
    """Sampled t-norm axiom check: commutativity, associativity, monotonicity,
    and 1 as identity, with the worst violating tuple as witness."""
    if sample_count < 1:
        raise ValueError("sample_count must be at least 1")
    rng = rng_from_seed(seed)
    xs = np.concatenate([[0.0, 0.25, 0.5, 0.75, 1.0], rng.uniform(0, 1, sample_count)])
    report = CheckReport(title=f"tnorm-axioms[{T.name}]", seed=seed,
                         sample_count=sample_count)

    worst = 0.0
    witness = None
    for _ in range(sample_count):
        x, y = rng.choice(xs), rng.choice(xs)
        gap = abs(T.eval(x, y) - T.eval(y, x))
        if gap > worst:
            worst, witness = gap, {"x": float(x), "y": float(y)}
    report.add("commutative", worst <= tol, worst, tol, witness)

    worst = 0.0
    witness = None
    for _ in range(sample_count):
        x, y, z = rng.choice(xs), rng.choice(xs), rng.choice(xs)
        gap = abs(T.eval(T.eval(x, y), z) - T.eval(x, T.eval(y, z)))
        if gap > worst:
            worst, witness = gap, {"x": float(x), "y": float(y), "z": float(z)}
    report.add("associative", worst <= tol, worst, tol, witness)

    worst = 0.0
    witness = None
    for _ in range(sample_count):
        x1, x2, y = rng.choice(xs), rng.choice(xs), rng.choice(xs)
        if x1 > x2:
            x1, x2 = x2, x1
        gap = T.eval(x1, y) - T.eval(x2, y)
        if gap > worst:
            worst, witness = gap, {"x1": float(x1), "x2": float(x2), "y": float(y)}
    report.add("nondecreasing", worst <= tol, worst, tol, witness)

    worst = 0.0
    witness = None
    for x in xs:
        gap = abs(T.eval(float(x), 1.0) - float(x))
        if gap > worst:
            worst, witness = gap, {"x": float(x), "y": 1.0}
    report.add("identity_one", worst <= tol, worst, tol, witness)
    return report
