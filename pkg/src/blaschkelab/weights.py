"""Boundary weights: rational moduli |R|, singular sums gamma, exponent
transforms, closed boundary sets with regularized distances, and the mixed
weight |R|^2 h^q built from both."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import DomainError, SingularEvaluationError

__all__ = [
    "RationalWeightSpec",
    "ClosedArcSet",
    "MixedWeightSpec",
    "eval_R_modulus",
    "eval_gamma",
    "eval_gamma_intro",
    "tilde_transform",
    "epsilon_transform",
    "distance_to_set",
    "eval_h",
    "eval_mixed",
    "TILDE_MODES",
]

_UNIT_TOL = 1e-12
_TWO_PI = 2.0 * math.pi

TILDE_MODES = ("p_positive", "p_zero", "linfty_p_positive")


def _as_z(z) -> np.ndarray:
    return np.asarray(z, dtype=complex)


@dataclass(frozen=True)
class RationalWeightSpec:
    """|R(z)| = prod_j |z - eta_j|^{q_j} with distinct eta_j on the unit
    circle and real exponents q_j of either sign.  An empty spec is the
    weight 1."""

    points: tuple[complex, ...]
    exponents: tuple[float, ...]

    def __post_init__(self):
        if len(self.points) != len(self.exponents):
            raise DomainError("points and exponents must have equal length")
        pts = tuple(complex(e) for e in self.points)
        for eta in pts:
            if abs(abs(eta) - 1.0) > _UNIT_TOL:
                raise DomainError(f"weight point {eta} is not on the unit circle")
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                if abs(pts[i] - pts[j]) <= _UNIT_TOL:
                    raise DomainError(f"weight points {i} and {j} coincide")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "exponents", tuple(float(q) for q in self.exponents))

    @property
    def q_total_abs(self) -> float:
        """sum_j |q_j|"""
        return float(sum(abs(q) for q in self.exponents))

    @property
    def q_max_abs(self) -> float:
        """max_j |q_j| (0 for the empty weight)"""
        return float(max((abs(q) for q in self.exponents), default=0.0))

    @property
    def angles(self) -> tuple[float, ...]:
        return tuple(math.atan2(e.imag, e.real) % _TWO_PI for e in self.points)

    @property
    def arc_separation(self) -> float:
        """Minimal pairwise angular distance of the singular points,
        recomputed from the points themselves.  Convention: 2*pi when there
        are fewer than two points."""
        angs = self.angles
        if len(angs) < 2:
            return _TWO_PI
        best = _TWO_PI
        for i in range(len(angs)):
            for j in range(i + 1, len(angs)):
                d = abs(angs[i] - angs[j]) % _TWO_PI
                best = min(best, min(d, _TWO_PI - d))
        return best


def _check_finite(out: np.ndarray, zz: np.ndarray, what: str) -> np.ndarray:
    bad = ~np.isfinite(out)
    if np.any(bad):
        pt = zz[bad].ravel()[0] if zz.shape == out.shape else None
        raise SingularEvaluationError(
            f"{what} is singular at an evaluation point", None if pt is None else complex(pt)
        )
    return out


def eval_R_modulus(spec: RationalWeightSpec, z, power: float = 1.0):
    """prod_j |z - eta_j|^{q_j * power}.

    power = 2 gives |R|^2, power = 1 gives |R|.  Evaluating exactly at a
    singular point with a negative effective exponent raises; with a
    positive one the factor is an honest zero.
    """
    zz = _as_z(z)
    out = np.ones(zz.shape, dtype=float)
    with np.errstate(divide="ignore"):
        for eta, q in zip(spec.points, spec.exponents):
            e = q * power
            if e == 0.0:
                continue
            out = out * np.abs(zz - eta) ** e
    return _check_finite(out, zz, "|R|^power")


def eval_gamma(spec: RationalWeightSpec, z):
    """gamma(z) = sum_j |q_j| / |z - eta_j|, the singular sum the p = 0
    norms integrate against (the primary form)."""
    zz = _as_z(z)
    out = np.zeros(zz.shape, dtype=float)
    with np.errstate(divide="ignore"):
        for eta, q in zip(spec.points, spec.exponents):
            out = out + abs(q) / np.abs(zz - eta)
    return _check_finite(out, zz, "gamma")


def eval_gamma_intro(spec: RationalWeightSpec, z):
    """|sum_j q_j (z - eta_j)^{-1}|, the signed-sum diagnostic variant;
    dominated pointwise by eval_gamma via the triangle inequality."""
    zz = _as_z(z)
    acc = np.zeros(zz.shape, dtype=complex)
    with np.errstate(divide="ignore", invalid="ignore"):
        for eta, q in zip(spec.points, spec.exponents):
            acc = acc + q / (zz - eta)
    return _check_finite(np.abs(acc), zz, "gamma (signed form)")


def tilde_transform(
    spec: RationalWeightSpec,
    p: float,
    mode: str,
    kappa: float = 0.01,
) -> RationalWeightSpec:
    """Exponent surgery that restores summability for exponents at or below
    the admissibility threshold.

    p_positive          q~_j = q_j if q_j > -p/2, else -p/2 + kappa
    p_zero              q~_j = max(q_j, 0)
    linfty_p_positive   returns the shifted exponents q~_j - 1:
                        q_j - 1 if q_j - 1 > -p/2, else -p/2 + kappa

    kappa > 0 restores the strict inequality lost at the threshold.
    """
    if mode not in TILDE_MODES:
        raise DomainError(f"unknown tilde mode {mode!r}; expected one of {TILDE_MODES}")
    if kappa <= 0:
        raise DomainError(f"kappa must be > 0, got {kappa}")
    if mode in ("p_positive", "linfty_p_positive") and not p > 0:
        raise DomainError(f"mode {mode} requires p > 0, got p = {p}")
    out = []
    for q in spec.exponents:
        if mode == "p_positive":
            out.append(q if q > -p / 2.0 else -p / 2.0 + kappa)
        elif mode == "p_zero":
            out.append(max(q, 0.0))
        else:
            out.append(q - 1.0 if q - 1.0 > -p / 2.0 else -p / 2.0 + kappa)
    return RationalWeightSpec(points=spec.points, exponents=tuple(out))


def epsilon_transform(
    spec: RationalWeightSpec,
    epsilon: float,
    clamp: bool = False,
) -> RationalWeightSpec:
    """Exponents q_j - 1 + epsilon, optionally clamped at 0 from below."""
    if epsilon <= 0:
        raise DomainError(f"epsilon must be > 0, got {epsilon}")
    out = tuple(
        max(0.0, q - 1.0 + epsilon) if clamp else q - 1.0 + epsilon for q in spec.exponents
    )
    return RationalWeightSpec(points=spec.points, exponents=out)


@dataclass(frozen=True)
class ClosedArcSet:
    """A nonempty closed subset of the unit circle: a finite union of
    pairwise disjoint closed arcs, each given as (start, end) in radians
    with start <= end and end - start <= 2*pi.  Degenerate arcs
    (start == end) are single points."""

    arcs: tuple[tuple[float, float], ...]

    def __post_init__(self):
        if not self.arcs:
            raise DomainError("a closed arc set needs at least one arc")
        norm = []
        for a, b in self.arcs:
            a, b = float(a), float(b)
            if b < a:
                raise DomainError(f"arc ({a}, {b}) has end < start")
            if b - a > _TWO_PI:
                raise DomainError(f"arc ({a}, {b}) is longer than the full circle")
            a0 = a % _TWO_PI
            norm.append((a0, a0 + (b - a)))
        norm.sort()
        for i in range(len(norm) - 1):
            if norm[i][1] >= norm[i + 1][0]:
                raise DomainError("arcs overlap or touch; merge them first")
        if len(norm) > 1:
            # wrap check: last arc against first arc shifted by a full turn
            if norm[-1][1] >= norm[0][0] + _TWO_PI:
                raise DomainError("arcs overlap or touch across the cut; merge them first")
        object.__setattr__(self, "arcs", tuple(norm))

    def contains_angle(self, theta: float) -> bool:
        t = theta % _TWO_PI
        for a, b in self.arcs:
            if (t - a) % _TWO_PI <= b - a:
                return True
        return False

    def complementary_arcs(self) -> tuple[tuple[float, float], ...]:
        """The open arcs of the complement, contiguous by construction
        (empty when the set covers the circle)."""
        out = []
        n = len(self.arcs)
        for i in range(n):
            b = self.arcs[i][1]
            a_next = self.arcs[(i + 1) % n][0] + (_TWO_PI if i == n - 1 else 0.0)
            if a_next > b:
                out.append((b, a_next))
        return tuple(out)

    @property
    def endpoints(self) -> tuple[complex, ...]:
        out = []
        for a, b in self.arcs:
            out.append(complex(math.cos(a), math.sin(a)))
            if b > a:
                out.append(complex(math.cos(b), math.sin(b)))
        return tuple(out)


def distance_to_set(E: ClosedArcSet, z):
    """Euclidean distance from z to the closed arc set E.

    For each arc the nearest point is the radial projection when arg(z)
    falls inside the angular span and the nearer endpoint otherwise; the
    distance to E is the minimum over arcs.
    """
    zz = _as_z(z)
    r = np.abs(zz)
    psi = np.mod(np.angle(zz), _TWO_PI)
    best = None
    for a, b in E.arcs:
        inside = np.mod(psi - a, _TWO_PI) <= (b - a)
        ea = complex(math.cos(a), math.sin(a))
        eb = complex(math.cos(b), math.sin(b))
        d_end = np.minimum(np.abs(zz - ea), np.abs(zz - eb))
        d = np.where(inside, np.abs(r - 1.0), d_end)
        best = d if best is None else np.minimum(best, d)
    return best


def eval_h(E: ClosedArcSet, z):
    """Regularized distance h(z) = sqrt(d(z,E)^2 + (1-|z|^2)^2).

    Comparable to the bare distance: d <= h <= sqrt(5) d on the closed disc,
    because E sits on the circle, so d(z,E) >= 1-|z| >= (1-|z|^2)/2.
    """
    zz = _as_z(z)
    d = distance_to_set(E, zz)
    t = 1.0 - np.abs(zz) ** 2
    return np.sqrt(d * d + t * t)


@dataclass(frozen=True)
class MixedWeightSpec:
    """phi(z) = |R(z)|^2 * h(z)^q_dist: a rational boundary weight combined
    with a power of the regularized distance to a closed arc set.  The
    singular points of R must stay off E; mu = min_j d(eta_j, E)/2 measures
    the clearance."""

    rational: RationalWeightSpec
    closed_set: ClosedArcSet
    q_dist: float

    def __post_init__(self):
        if self.rational.points:
            dmin = min(
                float(distance_to_set(self.closed_set, np.asarray(eta, dtype=complex)))
                for eta in self.rational.points
            )
            if dmin <= _UNIT_TOL:
                raise DomainError("a singular point of R lies on the closed set")

    @property
    def mu(self) -> float:
        if not self.rational.points:
            return math.inf
        return 0.5 * min(
            float(distance_to_set(self.closed_set, np.asarray(eta, dtype=complex)))
            for eta in self.rational.points
        )


def eval_mixed(spec: MixedWeightSpec, z):
    """phi(z) = |R(z)|^2 h(z)^{q_dist}"""
    zz = _as_z(z)
    return eval_R_modulus(spec.rational, zz, power=2.0) * eval_h(spec.closed_set, zz) ** spec.q_dist
