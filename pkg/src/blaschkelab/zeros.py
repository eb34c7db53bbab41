"""Zero location by the argument principle.

winding_count evaluates (1/2*pi*i) times the contour integral of f'/f over a
region boundary and certifies the nearest integer.  locate_zeros recursively
quadrisects the region (Cartesian quadrants for discs, polar cells for
annulus sectors) until every cell holds at most one zero, polishes simple
zeros by Newton iteration, and reports unseparated clusters below the
resolution tolerance as a single point with aggregated multiplicity.

The full search assumes f is analytic on the closed bounding square of the
region (for a disc region the quadrants poke outside the inscribed circle).
Keep a margin between the region and any pole: a Blaschke product with a
zero at a has a pole at 1/conj(a).  A negative cell winding means a pole got
inside and raises immediately.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import (
    ContourTooCloseError,
    DomainError,
    NonIntegralWindingError,
    QuadratureEvaluationError,
)

# the three ways a contour can graze a zero: the sampled proximity guard
# trips, the winding fails to certify, or an adaptive node lands exactly on
# the zero between guard samples; all are cured by the same jitter retry
_CONTOUR_RETRY = (ContourTooCloseError, NonIntegralWindingError, QuadratureEvaluationError)
from .funcs import AnalyticFunctionSpec
from .quad import _integrate_complex_interval

__all__ = ["Region", "ZeroSet", "winding_count", "locate_zeros"]

_TWO_PI = 2.0 * math.pi

# deterministic contour perturbation schedule, as fractions of the local scale
_JITTER = (1e-4, -1e-4, 3e-4, -3e-4, 9e-4, -9e-4, 2.7e-3, -2.7e-3)

_PROXIMITY = 1e-9


@dataclass(frozen=True)
class Region:
    """disc(center, radius) or annulus_sector(rho_lo, rho_hi, theta_lo,
    theta_hi); sectors are centered at the origin.  Regions must sit inside
    the closed unit disc."""

    kind: str
    center: complex = 0.0 + 0.0j
    radius: float = 0.0
    rho_lo: float = 0.0
    rho_hi: float = 0.0
    theta_lo: float = 0.0
    theta_hi: float = 0.0

    @staticmethod
    def disc(center: complex, radius: float) -> "Region":
        center = complex(center)
        if not (radius > 0):
            raise DomainError(f"disc radius must be > 0, got {radius}")
        if abs(center) + radius > 1.0 + 1e-12:
            raise DomainError("disc region must stay inside the closed unit disc")
        return Region(kind="disc", center=center, radius=float(radius))

    @staticmethod
    def annulus_sector(rho_lo: float, rho_hi: float,
                       theta_lo: float, theta_hi: float) -> "Region":
        if not (0.0 <= rho_lo < rho_hi <= 1.0):
            raise DomainError("need 0 <= rho_lo < rho_hi <= 1")
        if not (theta_lo < theta_hi <= theta_lo + _TWO_PI):
            raise DomainError("need theta_lo < theta_hi <= theta_lo + 2*pi")
        return Region(kind="annulus_sector", rho_lo=float(rho_lo), rho_hi=float(rho_hi),
                      theta_lo=float(theta_lo), theta_hi=float(theta_hi))

    def contains(self, z: complex, pad: float = 1e-12) -> bool:
        if self.kind == "disc":
            return abs(z - self.center) <= self.radius + pad
        r = abs(z)
        if not (self.rho_lo - pad <= r <= self.rho_hi + pad):
            return False
        if r == 0.0:
            return self.rho_lo <= pad
        t = math.atan2(z.imag, z.real)
        for shift in (0.0, _TWO_PI, -_TWO_PI):
            if self.theta_lo - pad <= t + shift <= self.theta_hi + pad:
                return True
        return False

    @property
    def diameter(self) -> float:
        if self.kind == "disc":
            return 2.0 * self.radius
        return max(self.rho_hi - self.rho_lo, self.rho_hi * (self.theta_hi - self.theta_lo))


@dataclass(frozen=True)
class ZeroSet:
    """Zeros with multiplicities inside a region.  certified_count is the
    winding number of the region boundary and always equals the sum of
    multiplicities.  unresolved lists cells the subdivision depth limit left
    uncertified (empty on success)."""

    zeros: tuple[tuple[complex, int], ...]
    certified_count: int
    region: Region
    unresolved: tuple = ()

    @property
    def total_multiplicity(self) -> int:
        return sum(m for _, m in self.zeros)


def _derivative_of(f: AnalyticFunctionSpec, scale: float):
    if f.derivative is not None:
        return f.derivative
    h = 1e-7 * max(scale, 1e-12)

    def _fd(z):
        zz = np.asarray(z, dtype=complex)
        return (f.evaluator(zz + h) - f.evaluator(zz - h)) / (2.0 * h)

    return _fd


def _edges_disc(center: complex, radius: float):
    def z(t):
        return center + radius * np.exp(2j * math.pi * t)

    def dz(t):
        return 2j * math.pi * radius * np.exp(2j * math.pi * t)

    return [(z, dz)]


def _edges_rect(x0: float, x1: float, y0: float, y1: float):
    corners = [complex(x0, y0), complex(x1, y0), complex(x1, y1), complex(x0, y1)]
    edges = []
    for a, b in zip(corners, corners[1:] + corners[:1]):
        edges.append((
            (lambda t, a=a, b=b: a + (b - a) * np.asarray(t)),
            (lambda t, a=a, b=b: np.full(np.shape(t), b - a, dtype=complex)),
        ))
    return edges


def _edges_sector(rho_lo: float, rho_hi: float, theta_lo: float, theta_hi: float):
    dth = theta_hi - theta_lo
    edges = [(
        lambda t: rho_hi * np.exp(1j * (theta_lo + dth * np.asarray(t))),
        lambda t: rho_hi * 1j * dth * np.exp(1j * (theta_lo + dth * np.asarray(t))),
    ), (
        lambda t: (rho_hi + (rho_lo - rho_hi) * np.asarray(t)) * np.exp(1j * theta_hi),
        lambda t: np.full(np.shape(t), (rho_lo - rho_hi) * np.exp(1j * theta_hi), dtype=complex),
    )]
    if rho_lo > 0.0:
        edges.append((
            lambda t: rho_lo * np.exp(1j * (theta_hi - dth * np.asarray(t))),
            lambda t: -rho_lo * 1j * dth * np.exp(1j * (theta_hi - dth * np.asarray(t))),
        ))
    edges.append((
        lambda t: (rho_lo + (rho_hi - rho_lo) * np.asarray(t)) * np.exp(1j * theta_lo),
        lambda t: np.full(np.shape(t), (rho_hi - rho_lo) * np.exp(1j * theta_lo), dtype=complex),
    ))
    return edges


def _winding_over_edges(f: AnalyticFunctionSpec, edges, scale: float) -> complex:
    """(1/2*pi*i) * sum of contour integrals of f'/f along the edges.

    Raises ContourTooCloseError when sampled |f| dips below the proximity
    threshold relative to its maximum along the contour.
    """
    # a zero at distance d from the contour carves a V-shaped dip of depth
    # ~d into |f| at one sample; smooth modulus variation (growth functions
    # swing by e^40 along an arc) never drops a single sample this far below
    # both of its neighbors
    tsamp = np.linspace(0.0, 1.0, 33)
    for z_of, _ in edges:
        s = np.abs(f.evaluator(z_of(tsamp)))
        if not np.all(np.isfinite(s)):
            raise ContourTooCloseError("contour hits a non-finite value of f")
        if np.any(s == 0.0):
            raise ContourTooCloseError("contour passes through a zero of f")
        floor = _PROXIMITY * np.minimum(s[:-2], s[2:])
        if np.any(s[1:-1] < floor):
            raise ContourTooCloseError(
                "contour passes within the proximity threshold of a zero"
            )

    fd = _derivative_of(f, scale)
    total = 0.0 + 0.0j
    err_total = 0.0
    for z_of, dz_of in edges:
        def integrand(t, z_of=z_of, dz_of=dz_of):
            zz = z_of(t)
            # a node exactly on a zero divides by 0; the caller's jitter
            # retry handles the resulting non-finite value, so no warning
            with np.errstate(divide="ignore", invalid="ignore"):
                return fd(zz) / f.evaluator(zz) * dz_of(t)

        # the certification margin is 0.25, so modest accuracy suffices; a
        # contour grazing a zero leaves cancellation noise in the integrand
        # that tighter tolerances could never meet
        val, err, _, _ = _integrate_complex_interval(
            integrand, 0.0, 1.0, rel_tol=1e-6, abs_tol=1e-4, max_cells=4000
        )
        total += val
        err_total += err
    if err_total > 0.05 * _TWO_PI:
        raise NonIntegralWindingError(
            "contour integral of f'/f failed to converge", total / (2j * math.pi)
        )
    return total / (2j * math.pi)


def _certify(I: complex) -> int:
    n = int(round(I.real))
    if abs(I - n) > 0.25:
        raise NonIntegralWindingError(
            f"winding integral {I} is not within 0.25 of an integer", I
        )
    return n


def winding_count(f: AnalyticFunctionSpec, region: Region) -> int:
    """Certified winding number of f along the region boundary.

    Exact for analytic f by the argument principle; a residual above 0.25
    from the nearest integer raises instead of rounding blindly.
    """
    if region.kind == "disc":
        edges = _edges_disc(region.center, region.radius)
    else:
        edges = _edges_sector(region.rho_lo, region.rho_hi, region.theta_lo, region.theta_hi)
    I = _winding_over_edges(f, edges, region.diameter)
    return _certify(I)


def _region_winding_with_retry(f: AnalyticFunctionSpec, region: Region) -> int:
    attempts = [None] + list(_JITTER)
    last: Exception | None = None
    for j in attempts:
        try:
            if j is None:
                return winding_count(f, region)
            if region.kind == "disc":
                r = Region.disc(region.center, region.radius * (1.0 + j))
            else:
                pad = j * (region.rho_hi - region.rho_lo)
                r = Region.annulus_sector(
                    max(region.rho_lo - pad, 0.0), min(region.rho_hi + pad, 1.0),
                    region.theta_lo - j, region.theta_hi + j,
                )
            return winding_count(f, r)
        except _CONTOUR_RETRY as exc:
            last = exc
    raise last


def _newton_polish(f: AnalyticFunctionSpec, z0: complex, diam: float,
                   tol: float) -> Optional[complex]:
    """Newton iteration from z0; None when it fails to settle near z0."""
    fd = _derivative_of(f, diam)
    z = complex(z0)
    for _ in range(60):
        fv = complex(f.evaluator(np.asarray(z, dtype=complex)))
        if fv == 0.0:
            return z
        dv = complex(fd(np.asarray(z, dtype=complex)))
        if dv == 0.0 or not (math.isfinite(dv.real) and math.isfinite(dv.imag)):
            return None
        step = fv / dv
        z = z - step
        if abs(z - z0) > 2.0 * diam:
            return None
        if abs(step) < 1e-16 * (1.0 + abs(z)):
            return z
    fv = complex(f.evaluator(np.asarray(z, dtype=complex)))
    dv = complex(fd(np.asarray(z, dtype=complex)))
    if abs(fv) <= 1e-10 * max(1.0, abs(dv)) * max(diam, tol):
        return z
    return None


@dataclass
class _Cell:
    kind: str
    # rect bounds or sector bounds, reused by kind
    a0: float = 0.0
    a1: float = 0.0
    b0: float = 0.0
    b1: float = 0.0
    depth: int = 0

    @property
    def diameter(self) -> float:
        if self.kind == "rect":
            return math.hypot(self.a1 - self.a0, self.b1 - self.b0)
        return max(self.a1 - self.a0, self.a1 * (self.b1 - self.b0))

    @property
    def center(self) -> complex:
        if self.kind == "rect":
            return complex(0.5 * (self.a0 + self.a1), 0.5 * (self.b0 + self.b1))
        r = 0.5 * (self.a0 + self.a1)
        t = 0.5 * (self.b0 + self.b1)
        return r * math.cos(t) + 1j * r * math.sin(t)

    def contains(self, z: complex, pad: float = 0.0) -> bool:
        if self.kind == "rect":
            return (self.a0 - pad <= z.real <= self.a1 + pad
                    and self.b0 - pad <= z.imag <= self.b1 + pad)
        r = abs(z)
        if not (self.a0 - pad <= r <= self.a1 + pad):
            return False
        t = math.atan2(z.imag, z.real)
        for shift in (0.0, _TWO_PI, -_TWO_PI):
            if self.b0 - pad <= t + shift <= self.b1 + pad:
                return True
        return False

    def edges(self):
        if self.kind == "rect":
            return _edges_rect(self.a0, self.a1, self.b0, self.b1)
        return _edges_sector(self.a0, self.a1, self.b0, self.b1)

    def winding(self, f: AnalyticFunctionSpec) -> int:
        I = _winding_over_edges(f, self.edges(), self.diameter)
        n = _certify(I)
        if n < 0:
            raise DomainError(
                "negative winding: a pole lies inside a search cell; "
                "shrink the region away from the singularities of f"
            )
        return n

    def children(self, jitter: float) -> list["_Cell"]:
        fa = 0.5 + jitter
        am = self.a0 + fa * (self.a1 - self.a0)
        bm = self.b0 + fa * (self.b1 - self.b0)
        return [
            _Cell(self.kind, self.a0, am, self.b0, bm, self.depth + 1),
            _Cell(self.kind, am, self.a1, self.b0, bm, self.depth + 1),
            _Cell(self.kind, self.a0, am, bm, self.b1, self.depth + 1),
            _Cell(self.kind, am, self.a1, bm, self.b1, self.depth + 1),
        ]


def locate_zeros(
    f: AnalyticFunctionSpec,
    region: Region,
    tol: float = 1e-9,
    use_known: bool = True,
    max_depth: int = 60,
) -> ZeroSet:
    """All zeros of f in the region with multiplicities.

    With use_known=True and a spec whose zero set is known by construction,
    the stored list is filtered to the region and returned directly (the
    certified count is still the sum over the filtered list).  Otherwise the
    region winding is certified first and a quadrisection search runs until
    every zero is isolated (winding 1, Newton-polished) or clustered below
    tol (reported at the cell center with the cell winding as multiplicity).

    Cell splits whose contour lands too close to a zero are retried through
    a deterministic jitter schedule of the split position.
    """
    if tol <= 0:
        raise DomainError(f"tol must be > 0, got {tol}")

    if use_known and f.known_zeros is not None:
        found = [(a, m) for a, m in f.known_zeros if region.contains(a)]
        found.sort(key=lambda t: (t[0].real, t[0].imag))
        return ZeroSet(zeros=tuple(found), certified_count=sum(m for _, m in found),
                       region=region)

    n_region = _region_winding_with_retry(f, region)
    if region.kind == "disc":
        c, r = region.center, region.radius
        root = _Cell("rect", c.real - r, c.real + r, c.imag - r, c.imag + r)

        def touches(cell: _Cell) -> bool:
            dx = max(cell.a0 - c.real, 0.0, c.real - cell.a1)
            dy = max(cell.b0 - c.imag, 0.0, c.imag - cell.b1)
            return math.hypot(dx, dy) <= r + tol
    else:
        root = _Cell("sector", region.rho_lo, region.rho_hi,
                     region.theta_lo, region.theta_hi)

        def touches(cell: _Cell) -> bool:
            return True

    found: list[tuple[complex, int]] = []
    unresolved: list[_Cell] = []

    def handle(cell: _Cell, known_winding: int) -> None:
        if not touches(cell):
            return
        w = known_winding
        if w == 0:
            return
        if w == 1 and cell.diameter > tol:
            z = _newton_polish(f, cell.center, cell.diameter, tol)
            if z is not None and cell.contains(z):
                found.append((z, 1))
                return
        if cell.diameter <= tol:
            found.append((cell.center, w))
            return
        if cell.depth >= max_depth:
            unresolved.append(cell)
            return
        for j in (0.0,) + _JITTER:
            try:
                kids = cell.children(j)
                evaluated = [touches(k) for k in kids]
                ws = [k.winding(f) if ev else 0
                      for k, ev in zip(kids, evaluated)]
                break
            except _CONTOUR_RETRY:
                continue
        else:
            if cell.diameter <= 8.0 * tol:
                # every jittered split grazes the zero cluster; the cell
                # winding itself is certified, so report the cluster here
                found.append((cell.center, w))
            else:
                unresolved.append(cell)
            return
        if all(evaluated) and sum(ws) != w:
            # a zero sits on the jittered partition boundary without
            # tripping the proximity guard; do not miscount
            unresolved.append(cell)
            return
        for k, wk in zip(kids, ws):
            handle(k, known_winding=wk)

    for j in (0.0,) + _JITTER:
        try:
            if root.kind == "rect":
                pad = j * root.diameter
                seed = _Cell("rect", root.a0 - pad, root.a1 + pad,
                             root.b0 - pad, root.b1 + pad)
            else:
                pad = j * (root.a1 - root.a0)
                seed = _Cell("sector", max(root.a0 - pad, 0.0),
                             min(root.a1 + pad, 1.0),
                             root.b0 - j, root.b1 + j)
            w_root = seed.winding(f)
            break
        except _CONTOUR_RETRY:
            continue
    else:
        raise NonIntegralWindingError(
            "could not certify a winding for the search root after jittering"
        )
    handle(seed, w_root)

    inside = [(z, m) for z, m in found if region.contains(z)]
    inside.sort(key=lambda t: (t[0].real, t[0].imag))
    total = sum(m for _, m in inside)
    if not unresolved and total != n_region:
        raise NonIntegralWindingError(
            f"located multiplicities sum to {total} but the region winding is {n_region}"
        )
    return ZeroSet(zeros=tuple(inside), certified_count=n_region, region=region,
                   unresolved=tuple(
                       Region.disc(u.center, 0.5 * u.diameter) if u.kind == "rect"
                       else Region.annulus_sector(u.a0, u.a1, u.b0, u.b1)
                       for u in unresolved))
