"""Closed-form geometric quantities of the twisted spheres/cones and the
density functionals used by the non-minimizing argument.

Conventions: ``sphere_volume(n)`` is the volume of the unit n-sphere (the
normalization of the closed-form volume ratio), ``ball_volume(d)`` the volume
of the unit ball in R^d (the normalization of the density functional).  Both
appear in the source material under the same symbol; they are kept apart here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from scipy.integrate import quad
from scipy.optimize import brentq

from .errors import DomainTooShort
from .params import LomseParams


def sphere_volume(n: int) -> float:
    """Volume of the unit n-sphere: 2 pi^{(n+1)/2} / Gamma((n+1)/2)."""
    return 2.0 * math.pi ** ((n + 1) / 2) / math.gamma((n + 1) / 2)


def ball_volume(d: int) -> float:
    """Volume of the unit ball in R^d: pi^{d/2} / Gamma(d/2 + 1)."""
    return math.pi ** (d / 2) / math.gamma(d / 2 + 1)


def _half_power(base: Fraction, twice_exponent: int) -> float:
    """base^(twice_exponent/2) with the integer part done in exact rationals."""
    whole, rem = divmod(twice_exponent, 2)
    out = float(base**whole)
    if rem:
        out *= math.sqrt(float(base))
    return out


def normal_angle_cos(params: LomseParams) -> float:
    """Cosine of the constant acute angle between normal planes and the
    reference plane: cos(theta) * ((n-p)/(K-p))^(p/2)."""
    n, p, K = params.n, params.p, params.K
    cos2_theta = Fraction((n - p) * K, n * (K - p))
    return math.sqrt(float(cos2_theta)) * _half_power(Fraction(n - p, K - p), p)


def _volume_ratio(n: int, p: int, K: Fraction) -> float:
    return _half_power(Fraction(K, n), p) * _half_power(
        Fraction((n - p) * K, n * (K - p)), n - p
    )


def los_volume_ratio(params: LomseParams) -> float:
    """Volume of the twisted sphere divided by the volume of the unit n-sphere:
    (K/n)^(p/2) * ((1-p/n)/(1-p/K))^((n-p)/2)."""
    return _volume_ratio(params.n, params.p, Fraction(params.K))


def volume_ratio_product(theta: float, lam2: float, n: int, p: int) -> float:
    """Volume ratio as the product of the per-direction stretch factors
    sqrt(cos^2 t + sin^2 t l_j^2): an oracle independent of the closed form,
    valid for any twist angle and singular value (1 when lambda = 1)."""
    c2 = math.cos(theta) ** 2
    s2 = math.sin(theta) ** 2
    return (c2 + lam2 * s2) ** (p / 2) * math.cos(theta) ** (n - p)


def jordan_angles(params: LomseParams) -> list[tuple[float, int]]:
    """Tangent Jordan angles of the cone with multiplicities (p, 1, n-p)."""
    n, p, K = params.n, params.p, params.K
    return [
        (math.acos(math.sqrt((n - p) / (K - p))), p),
        (params.theta, 1),
        (0.0, n - p),
    ]


def slope_function(params: LomseParams) -> float:
    """Constant slope of the cone graph: sec of the normal-plane angle."""
    return 1.0 / normal_angle_cos(params)


@dataclass(frozen=True)
class GeometryReport:
    cos_alpha: float
    volume_ratio: float
    jordan_angles: list[tuple[float, int]]
    slope_W: float


def geometry_report(params: LomseParams) -> GeometryReport:
    return GeometryReport(
        cos_alpha=normal_angle_cos(params),
        volume_ratio=los_volume_ratio(params),
        jordan_angles=jordan_angles(params),
        slope_W=slope_function(params),
    )


def cone_density(params: LomseParams) -> float:
    """Density of the cone: (1+lambda^2 phi0^2)^(p/2) / (1+phi0^2)^(n/2).

    Not stated in closed form in the source material; derived here and
    cross-checked against the volume ratio and direct quadrature in tests.
    """
    one_plus_l2p2 = 1 + params.lambda2 * params.phi0_sq
    one_plus_p2 = 1 + params.phi0_sq
    return _half_power(one_plus_l2p2, params.p) / _half_power(one_plus_p2, params.n)


def _volume_integrand(profile, params: LomseParams):
    n, p = params.n, params.p
    lam2 = float(params.lambda2)

    def w(r: float) -> float:
        rho = profile.rho_at(r)
        rho_r = profile.rho_r_at(r)
        return (
            math.sqrt(1.0 + rho_r * rho_r)
            * (r * r + lam2 * rho * rho) ** (p / 2)
            * r ** (n - p)
        )

    return w


def graph_volume(
    profile, params: LomseParams, R: float, rel_tol: float = 1e-8
) -> float:
    """Volume of the graph over the radial slab 0 < r <= R.

    omega_n * integral_0^R sqrt(1+rho_r^2) (r^2 + lambda^2 rho^2)^(p/2)
    r^(n-p) dr, by adaptive quadrature.  The integration range can span many
    decades, so it is split into logarithmic segments; each segment uses
    Gauss-Kronrod with a tolerance safely below ``rel_tol``.
    """
    if R > profile.r_max:
        raise DomainTooShort(f"R={R} exceeds profile range r_max={profile.r_max}")
    w = _volume_integrand(profile, params)
    eps = min(rel_tol, 1e-8) * 1e-2
    r_lo = min(max(profile.r_min, 0.0), R)
    total = 0.0
    if r_lo > 0.0:
        total += quad(w, 0.0, r_lo, epsabs=0.0, epsrel=eps, limit=200)[0]
    if R > r_lo:
        start = r_lo if r_lo > 0.0 else R * 1e-12
        if r_lo == 0.0:
            total += quad(w, 0.0, start, epsabs=0.0, epsrel=eps, limit=200)[0]
        n_seg = max(1, int(math.ceil(math.log(R / start))))
        edges = [start * (R / start) ** (j / n_seg) for j in range(n_seg + 1)]
        edges[-1] = R
        for a, b in zip(edges[:-1], edges[1:]):
            total += quad(w, a, b, epsabs=0.0, epsrel=eps, limit=200)[0]
    return sphere_volume(params.n) * total


def density_at(
    profile, params: LomseParams, R: float, rel_tol: float = 1e-8
) -> float:
    """Density at extrinsic radius R: Vol(M cap B(R)) / (ball_{n+1} R^{n+1})."""
    n = params.n

    def radius_excess(r: float) -> float:
        rho = profile.rho_at(r)
        return r * r + rho * rho - R * R

    if radius_excess(min(R, profile.r_max)) <= 0.0:
        r_star = min(R, profile.r_max)
    else:
        r_star = brentq(radius_excess, 0.0, min(R, profile.r_max), xtol=1e-14 * R)
    vol = graph_volume(profile, params, r_star, rel_tol=rel_tol)
    return vol / (ball_volume(n + 1) * R ** (n + 1))


class Verdict(Enum):
    NON_MINIMIZING = "NonMinimizing"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class DensityReport:
    theta_seq: list[float]
    theta_cone: float
    verdict: Verdict


def density_report(
    profile, params: LomseParams, radii: list[float], rel_tol: float = 1e-8
) -> DensityReport:
    """Density sequence at R_i = sqrt(d_i^2 + rho(d_i)^2) for the rescaling
    radii d_i, compared against the cone density.

    The cone is declared non-minimizing when the first density sits strictly
    below the cone density by more than ten quadrature tolerances.
    """
    n = params.n
    thetas = []
    for d in sorted(radii):
        rho_d = profile.rho_at(d)
        R = math.hypot(d, rho_d)
        vol = graph_volume(profile, params, d, rel_tol=rel_tol)
        thetas.append(vol / (ball_volume(n + 1) * R ** (n + 1)))
    theta0 = cone_density(params)
    if thetas and thetas[0] < theta0 - 10.0 * rel_tol:
        verdict = Verdict.NON_MINIMIZING
    else:
        verdict = Verdict.INCONCLUSIVE
    return DensityReport(theta_seq=thetas, theta_cone=theta0, verdict=verdict)
