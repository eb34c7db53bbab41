"""Holomorphic test functions on the unit disc.

Three constructible families, all evaluated by numpy-vectorized closures:

* finite Blaschke products  f(z) = C * prod_j ((a_j - z)/(1 - conj(a_j) z))^{m_j},
  with fully known zero sets,
* growth exponentials       f(z) = exp(D * w(z)),
  w(z) = (2/(1 - z*conj(zeta)))^p * prod_j (eta_j/(eta_j - z))^{q_j},
  zero-free with an explicit envelope log+|f| <= K / ((1-|z|^2)^p |R(z)|),
* products of the above.

Every spec carries a stable log-modulus evaluator (sum of factor logs, never
log of a product of factors), which is what the integration layers consume
near the boundary where the plain evaluator may overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import DomainError, UnsatisfiableNormalizationError

__all__ = [
    "ComplexPoint",
    "GrowthBound",
    "AnalyticFunctionSpec",
    "make_blaschke_product",
    "make_constant",
    "make_growth_function",
    "multiply",
    "log_plus",
    "log_minus",
    "eval_log_modulus",
    "LOG_FLOOR",
]

# A point of the plane; complex is the native representation throughout.
ComplexPoint = complex

# Floor used by integrand assemblers so an exact node hit on a zero gives a
# huge negative log instead of -inf (the dip is integrable; the substitution
# only affects a measure-zero event).
LOG_FLOOR = -745.0

FAMILIES = frozenset({"blaschke_product", "growth_exponential", "product", "constant"})

_UNIT_TOL = 1e-12


def _as_z(z) -> np.ndarray:
    """Coerce to a complex array of points."""
    return np.asarray(z, dtype=complex)


def _require_inside(zz: np.ndarray) -> np.ndarray:
    """Reject points on or outside the unit circle.

    The families are neither defined nor extrapolated there, so the public
    evaluation surfaces refuse instead of returning a continuation.  The
    search and quadrature internals call the raw closures directly: winding
    contours around Cartesian cells and transient Newton iterates may step
    slightly past the circle, where the closed-form expressions still
    evaluate, without ever reporting such points as function values.
    """
    if np.any(np.abs(zz) >= 1.0):
        worst = float(np.max(np.abs(zz)))
        raise DomainError(f"evaluation outside the open unit disc (|z| = {worst})")
    return zz


def log_plus(x):
    """max(x, 0) applied to an already-computed log-modulus."""
    return np.maximum(x, 0.0)


def log_minus(x):
    """max(-x, 0), so that x = log_plus(x) - log_minus(x)."""
    return np.maximum(-x, 0.0)


@dataclass(frozen=True)
class GrowthBound:
    """Parameters of the growth envelope exp(D * w) built by
    :func:`make_growth_function`.

    D >= 0 scales the exponent, p >= 0 is the boundary power, and
    singular_points lists (eta_j, q_j) with |eta_j| = 1 and q_j > 0.  The
    resulting function satisfies

        log+|f(z)| <= effective_constant / ((1-|z|^2)^p * prod_j |z-eta_j|^{q_j})

    with effective_constant = D * 4^p: one factor 2^p from the base of
    (2/(1-z*conj(zeta)))^p and another from (1-|z|^2) <= 2|1-z*conj(zeta)|.
    The ratio approaches 4^p radially toward zeta, so the constant is sharp.
    """

    D: float
    p: float
    singular_points: tuple[tuple[complex, float], ...]
    zeta: complex = 1.0 + 0.0j

    def __post_init__(self):
        if self.D < 0:
            raise DomainError(f"growth scale D must be >= 0, got {self.D}")
        if self.p < 0:
            raise DomainError(f"boundary power p must be >= 0, got {self.p}")
        if abs(abs(self.zeta) - 1.0) > _UNIT_TOL:
            raise DomainError(f"zeta must lie on the unit circle, got |zeta| = {abs(self.zeta)}")
        for eta, q in self.singular_points:
            if abs(abs(eta) - 1.0) > _UNIT_TOL:
                raise DomainError(f"singular point {eta} is not on the unit circle")
            if q <= 0:
                raise DomainError(f"growth exponent at {eta} must be > 0, got {q}")

    @property
    def effective_constant(self) -> float:
        return self.D * 4.0 ** self.p

    def envelope(self, z, constant: Optional[float] = None):
        """constant / ((1-|z|^2)^p * prod |z-eta_j|^{q_j}), the admissible
        upper bound for log+|f| at z (constant defaults to the effective
        one)."""
        zz = _require_inside(_as_z(z))
        c = self.effective_constant if constant is None else constant
        denom = (1.0 - np.abs(zz) ** 2) ** self.p
        for eta, q in self.singular_points:
            denom = denom * np.abs(zz - eta) ** q
        return c / denom


@dataclass
class AnalyticFunctionSpec:
    """A holomorphic function packaged with everything the verification
    layers need: a vectorized evaluator, an optional closed-form derivative,
    a stable log-modulus evaluator, and the zero set when it is known by
    construction.

    known_zeros is None when unknown and an explicit (possibly empty) tuple
    of (zero, multiplicity) pairs when known.  normalization records the
    positive scalar the raw product was divided by.  modulus_bound, when not
    None, is a proven sup-norm bound on |f| over the closed disc.
    growth_constant, when not None, is a constant K with
    log+|f(z)| <= K / ((1-|z|^2)^p |R(z)|) for the profile in `growth`.
    """

    evaluator: Callable[[np.ndarray], np.ndarray]
    derivative: Optional[Callable[[np.ndarray], np.ndarray]]
    log_modulus: Optional[Callable[[np.ndarray], np.ndarray]]
    known_zeros: Optional[tuple[tuple[complex, int], ...]]
    family: str
    normalization: float = 1.0
    modulus_bound: Optional[float] = None
    growth: Optional[GrowthBound] = None
    growth_constant: Optional[float] = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise DomainError(f"unknown function family {self.family!r}")
        if not (self.normalization > 0):
            raise DomainError("normalization must be a positive real")

    def __call__(self, z):
        return self.evaluator(_require_inside(_as_z(z)))


def eval_log_modulus(f: AnalyticFunctionSpec, z):
    """log|f(z)| through the spec's stable path when available.

    Falls back to log(abs(evaluator)) for specs without a dedicated
    log-modulus closure.  May return -inf exactly at a zero; integrand
    assemblers clamp with LOG_FLOOR.
    """
    zz = _require_inside(_as_z(z))
    if f.log_modulus is not None:
        return f.log_modulus(zz)
    with np.errstate(divide="ignore"):
        return np.log(np.abs(f.evaluator(zz)))


def make_constant(value: complex) -> AnalyticFunctionSpec:
    """The constant function f = value (value != 0), zero-free by fiat."""
    if value == 0:
        raise DomainError("constant family requires a nonzero value")
    c = complex(value)
    logc = math.log(abs(c))

    def _eval(z):
        zz = _as_z(z)
        return np.full_like(zz, c)

    def _deriv(z):
        zz = _as_z(z)
        return np.zeros_like(zz)

    def _logmod(z):
        zz = _as_z(z)
        return np.full(zz.shape, logc, dtype=float)

    return AnalyticFunctionSpec(
        evaluator=_eval,
        derivative=_deriv,
        log_modulus=_logmod,
        known_zeros=(),
        family="constant",
        normalization=1.0,
        modulus_bound=abs(c),
    )


def make_blaschke_product(
    zeros: Sequence[tuple[complex, int]],
    normalize: bool = True,
) -> AnalyticFunctionSpec:
    """Finite Blaschke product with prescribed zeros and multiplicities.

    f(z) = C * prod_j b_j(z)^{m_j},  b_j(z) = (a_j - z)/(1 - conj(a_j) z).

    No unimodular phase factor is attached to the factors, so b_j(0) = a_j
    rather than |a_j|.  With normalize=True the constant C = 1/prod|a_j|^{m_j}
    makes |f(0)| = 1; the product is then no longer bounded by 1.  With
    normalize=False, C = 1 and |f| <= 1 on the closed disc.

    An empty zero list yields f == 1.
    """
    zs: list[tuple[complex, int]] = []
    for a, m in zeros:
        a = complex(a)
        m = int(m)
        if abs(a) >= 1.0:
            raise DomainError(f"Blaschke zero {a} must lie strictly inside the unit disc")
        if m < 1:
            raise DomainError(f"multiplicity must be a positive integer, got {m}")
        zs.append((a, m))

    if normalize:
        if any(a == 0 for a, _ in zs):
            raise UnsatisfiableNormalizationError(
                "cannot normalize |f(0)| = 1: the product has a zero at the origin",
                )
        norm = 1.0
        for a, m in zs:
            norm *= abs(a) ** m
    else:
        norm = 1.0
    prefactor = 1.0 / norm

    a_arr = np.array([a for a, _ in zs], dtype=complex)
    m_arr = np.array([m for _, m in zs], dtype=float)
    ac_arr = a_arr.conj()

    def _factors(zz):
        # shape (n, *zz.shape); b_j(z) for every factor
        z_b = zz[np.newaxis, ...]
        return (a_arr.reshape((-1,) + (1,) * zz.ndim) - z_b) / (
            1.0 - ac_arr.reshape((-1,) + (1,) * zz.ndim) * z_b
        )

    def _eval(z):
        zz = _as_z(z)
        if not zs:
            return np.ones_like(zz)
        b = _factors(zz)
        out = np.prod(b ** m_arr.reshape((-1,) + (1,) * zz.ndim), axis=0)
        return prefactor * out

    def _deriv(z):
        zz = _as_z(z)
        if not zs:
            return np.zeros_like(zz)
        shape = (-1,) + (1,) * zz.ndim
        b = _factors(zz)
        bprime = (np.abs(a_arr) ** 2 - 1.0).reshape(shape) / (
            1.0 - ac_arr.reshape(shape) * zz[np.newaxis, ...]
        ) ** 2
        total = np.zeros_like(zz)
        # product rule, written so the result stays finite at each zero
        for j in range(len(zs)):
            term = m_arr[j] * b[j] ** (m_arr[j] - 1.0) * bprime[j]
            for k in range(len(zs)):
                if k != j:
                    term = term * b[k] ** m_arr[k]
            total = total + term
        return prefactor * total

    def _logmod(z):
        zz = _as_z(z)
        out = np.full(zz.shape, -math.log(norm) if normalize else 0.0, dtype=float)
        with np.errstate(divide="ignore"):
            for a, m in zs:
                out = out + m * (np.log(np.abs(a - zz)) - np.log(np.abs(1.0 - np.conj(a) * zz)))
        return out

    return AnalyticFunctionSpec(
        evaluator=_eval,
        derivative=_deriv,
        log_modulus=_logmod,
        known_zeros=tuple(zs),
        family="blaschke_product",
        normalization=norm,
        modulus_bound=prefactor,
    )


def make_growth_function(bound: GrowthBound) -> AnalyticFunctionSpec:
    """Zero-free exponential f = exp(D * w) realizing a prescribed growth
    envelope.

    w(z) = (2/(1 - z*conj(zeta)))^p * prod_j (eta_j/(eta_j - z))^{q_j}

    with principal powers; both bases map the disc into the right half
    plane, so the powers are single-valued and holomorphic.  log|f| is
    evaluated as D * Re(w) directly, which stays finite long after exp(D*w)
    has overflowed.
    """
    D = float(bound.D)
    p = float(bound.p)
    zeta_c = np.conj(complex(bound.zeta))
    etas = np.array([e for e, _ in bound.singular_points], dtype=complex)
    qs = np.array([q for _, q in bound.singular_points], dtype=float)
    eta_c = etas.conj()

    def _w(zz):
        # log w = p*log(2/(1-z*conj(zeta))) + sum_j q_j*log(1/(1-z*conj(eta_j)))
        logw = p * (math.log(2.0) - np.log(1.0 - zz * zeta_c))
        for j in range(len(qs)):
            logw = logw - qs[j] * np.log(1.0 - zz * eta_c[j])
        return np.exp(logw)

    def _wlogderiv(zz):
        # w'(z)/w(z)
        out = p * zeta_c / (1.0 - zz * zeta_c)
        for j in range(len(qs)):
            out = out + qs[j] * eta_c[j] / (1.0 - zz * eta_c[j])
        return out

    def _eval(z):
        zz = _as_z(z)
        return np.exp(D * _w(zz))

    def _deriv(z):
        zz = _as_z(z)
        w = _w(zz)
        return D * w * _wlogderiv(zz) * np.exp(D * w)

    def _logmod(z):
        zz = _as_z(z)
        return D * np.real(_w(zz))

    return AnalyticFunctionSpec(
        evaluator=_eval,
        derivative=_deriv,
        log_modulus=_logmod,
        known_zeros=(),
        family="growth_exponential",
        normalization=1.0,
        modulus_bound=None,
        growth=bound,
        growth_constant=bound.effective_constant,
    )


def _merge_zeros(
    za: Optional[tuple[tuple[complex, int], ...]],
    zb: Optional[tuple[tuple[complex, int], ...]],
) -> Optional[tuple[tuple[complex, int], ...]]:
    if za is None or zb is None:
        return None
    merged: list[tuple[complex, int]] = list(za)
    for b, m in zb:
        for i, (a, ma) in enumerate(merged):
            if a == b:
                merged[i] = (a, ma + m)
                break
        else:
            merged.append((b, m))
    return tuple(merged)


def multiply(
    f: AnalyticFunctionSpec,
    g: AnalyticFunctionSpec,
    renormalize: bool = False,
) -> AnalyticFunctionSpec:
    """Pointwise product f * g, optionally rescaled so |(f*g)(0)| = 1.

    Zero sets merge when both are known.  Log-moduli add.  When exactly one
    factor carries a growth envelope and the other a finite sup-norm bound B,
    the product keeps the envelope profile with constant

        K' = K + (log+ B + log+ (1/|v0|)) * 2^{sum_j q_j},

    where v0 is the renormalization divisor (1 if renormalize=False): the
    additive lift is absorbed into the envelope through
    (1-|z|^2)^p |R(z)| <= 2^{sum q_j} on the disc.
    """
    norm_extra = 1.0
    if renormalize:
        v0 = complex(f.evaluator(_as_z(0.0 + 0.0j))) * complex(g.evaluator(_as_z(0.0 + 0.0j)))
        if v0 == 0:
            raise UnsatisfiableNormalizationError(
                "cannot renormalize the product: value at the origin is zero"
            )
        norm_extra = abs(v0)
    scale = 1.0 / norm_extra

    fe, ge = f.evaluator, g.evaluator
    fd, gd = f.derivative, g.derivative
    flm = f.log_modulus if f.log_modulus is not None else (lambda zz: np.log(np.abs(fe(zz))))
    glm = g.log_modulus if g.log_modulus is not None else (lambda zz: np.log(np.abs(ge(zz))))

    def _eval(z):
        zz = _as_z(z)
        return scale * fe(zz) * ge(zz)

    _deriv = None
    if fd is not None and gd is not None:
        def _deriv(z):
            zz = _as_z(z)
            return scale * (fd(zz) * ge(zz) + fe(zz) * gd(zz))

    log_scale = math.log(scale)

    def _logmod(z):
        zz = _as_z(z)
        return flm(zz) + glm(zz) + log_scale

    bound = None
    if f.modulus_bound is not None and g.modulus_bound is not None:
        bound = f.modulus_bound * g.modulus_bound * scale

    growth = None
    growth_constant = None
    if (f.growth is None) != (g.growth is None):
        grower, other = (f, g) if f.growth is not None else (g, f)
        if other.modulus_bound is not None:
            qsum = sum(q for _, q in grower.growth.singular_points)
            lift = max(0.0, math.log(other.modulus_bound)) + max(0.0, -math.log(norm_extra))
            growth = grower.growth
            growth_constant = grower.growth_constant + lift * 2.0 ** qsum

    return AnalyticFunctionSpec(
        evaluator=_eval,
        derivative=_deriv,
        log_modulus=_logmod,
        known_zeros=_merge_zeros(f.known_zeros, g.known_zeros),
        family="product",
        normalization=f.normalization * g.normalization * norm_extra,
        modulus_bound=bound,
        growth=growth,
        growth_constant=growth_constant,
    )
