"""Phase-plane dynamics of the radial minimal-graph equation.

The second-order profile equation for rho(r) is rewritten with
phi = rho/r, t = log r, psi = phi_t as the autonomous system

    phi_t = psi
    psi_t = -psi - (f2(phi) psi - f1(phi) phi) (1 + (phi+psi)^2)

whose equilibria are the origin and (+-phi0, 0).  This module integrates
orbits on the unstable manifold of the origin, records psi-zero and
phi0-crossing events, converts converged orbits back into graph profiles,
and certifies the invariant-region barriers for both stability types.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import minimize_scalar

from .errors import (
    InsufficientEvents,
    NonFiniteState,
    NotConverged,
    StepSizeUnderflow,
    WrongCase,
)
from .params import LomseParams, Stability, spectra


@dataclass(frozen=True)
class PhasePoint:
    phi: float
    psi: float
    t: float = 0.0


@dataclass(frozen=True)
class Tolerances:
    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    event_tol: float = 1e-12
    conv_radius: float = 1e-9


class EventKind(Enum):
    PSI_ZERO = "PsiZero"
    PHI_EQUALS_PHI0 = "PhiEqualsPhi0"


@dataclass(frozen=True)
class Event:
    kind: EventKind
    t: float
    point: PhasePoint


class Terminal(Enum):
    CONVERGED_TO_P1 = "ConvergedToP1"
    LEFT_DOMAIN = "LeftDomain"
    MAX_TIME_REACHED = "MaxTimeReached"


def f1(phi: float, params: LomseParams) -> float:
    """(lambda^2-1) p / (1 + lambda^2 phi^2) - (n - p); vanishes at phi0."""
    lam2 = float(params.lambda2)
    return (lam2 - 1.0) * params.p / (1.0 + lam2 * phi * phi) - (params.n - params.p)


def f2(phi: float, params: LomseParams) -> float:
    """(n - p) + p / (1 + lambda^2 phi^2); strictly positive."""
    lam2 = float(params.lambda2)
    return params.n - params.p + params.p / (1.0 + lam2 * phi * phi)


def _f1_prime(phi: float, params: LomseParams) -> float:
    lam2 = float(params.lambda2)
    denom = 1.0 + lam2 * phi * phi
    return -(lam2 - 1.0) * params.p * 2.0 * lam2 * phi / (denom * denom)


def vector_field(point: PhasePoint, params: LomseParams) -> tuple[float, float]:
    """The field X = (X1, X2); exactly antisymmetric under (phi,psi) -> -(phi,psi)."""
    phi, psi = point.phi, point.psi
    s = phi + psi
    x2 = -psi - (f2(phi, params) * psi - f1(phi, params) * phi) * (1.0 + s * s)
    return psi, x2


def seed_unstable(params: LomseParams, epsilon: float = 1e-8) -> PhasePoint:
    """Point on the linear unstable eigendirection V1 = (1, k-1) at t = 0.

    The system is autonomous, so the t-translation gauge is fixed here once
    and for all; translation invariance of the orbit shape is a test property.
    """
    if not epsilon > 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    return PhasePoint(phi=epsilon, psi=epsilon * (params.k - 1), t=0.0)


@dataclass(frozen=True)
class Orbit:
    """An integrated orbit with its dense-output interpolant."""

    t: np.ndarray
    phi: np.ndarray
    psi: np.ndarray
    events: list[Event]
    terminal: Terminal
    params: LomseParams
    tolerances: Tolerances
    interpolant: object = field(repr=False)

    def point_at(self, t: float) -> PhasePoint:
        y = self.interpolant(t)
        return PhasePoint(phi=float(y[0]), psi=float(y[1]), t=float(t))

    def psi_t_at(self, t: float) -> float:
        """d(psi)/dt recovered by exact differentiation of the dense-output
        segment polynomial (not by substituting the vector field, which would
        make downstream residual checks vacuous)."""
        ts = self.interpolant.ts
        i = int(np.clip(np.searchsorted(ts, t, side="right") - 1, 0, len(ts) - 2))
        ta, tb = ts[i], ts[i + 1]
        if tb <= ta:
            raise NonFiniteState("degenerate interpolation segment")
        # the per-step interpolant is a degree-7 polynomial: 9 Chebyshev
        # nodes recover it exactly, in the scaled variable for conditioning
        u = np.cos(np.pi * np.arange(9) / 8)
        tt = 0.5 * (ta + tb) + 0.5 * (tb - ta) * u
        psis = np.array([self.interpolant(x)[1] for x in tt])
        coeffs = np.polyfit(u, psis, 8)
        dcoeffs = np.polyder(coeffs)
        u0 = (2.0 * t - (ta + tb)) / (tb - ta)
        return float(np.polyval(dcoeffs, u0)) * 2.0 / (tb - ta)

    def events_of(self, kind: EventKind) -> list[Event]:
        return [e for e in self.events if e.kind is kind]


def integrate_orbit(
    params: LomseParams,
    seed: PhasePoint,
    t_max: float = 200.0,
    tolerances: Tolerances | None = None,
) -> Orbit:
    """Integrate the system forward from ``seed`` until convergence to
    (phi0, 0), domain exit, or t_max.

    Uses an 8th-order adaptive explicit scheme with dense output.  Events
    (psi = 0 crossings, phi = phi0 crossings) are located by root-finding on
    the interpolant.  Convergence is declared when the state enters the ball
    of radius ``conv_radius`` around (phi0, 0), the linearization there is
    contracting, and the distance was decreasing over the last samples.
    """
    tol = tolerances or Tolerances()
    if not (math.isfinite(seed.phi) and math.isfinite(seed.psi)
            and math.isfinite(seed.t)):
        raise NonFiniteState(f"seed is not finite: {seed}")
    phi0 = params.phi0
    cap_phi = max(5.0 * phi0, 1.0)
    cap_psi = max(5.0 * phi0, 10.0)

    def rhs(t, y):
        return vector_field(PhasePoint(y[0], y[1], t), params)

    def ev_psi_zero(t, y):
        return y[1]

    def ev_phi_cross(t, y):
        return y[0] - phi0

    def ev_converged(t, y):
        return math.hypot(y[0] - phi0, y[1]) - tol.conv_radius

    ev_converged.terminal = True
    ev_converged.direction = -1

    def ev_leave(t, y):
        return max(abs(y[0]) / cap_phi, abs(y[1]) / cap_psi) - 1.0

    ev_leave.terminal = True
    ev_leave.direction = 1

    sol = solve_ivp(
        rhs,
        (seed.t, seed.t + t_max),
        [seed.phi, seed.psi],
        method="DOP853",
        dense_output=True,
        rtol=tol.rel_tol,
        atol=tol.abs_tol,
        events=[ev_psi_zero, ev_phi_cross, ev_converged, ev_leave],
    )
    if not sol.success:
        if not np.all(np.isfinite(sol.y)):
            raise NonFiniteState(f"non-finite state during integration: {sol.message}")
        raise StepSizeUnderflow(sol.message)
    if not np.all(np.isfinite(sol.y)):
        raise NonFiniteState("integration produced non-finite samples")

    events: list[Event] = []
    for kind, t_ev in (
        (EventKind.PSI_ZERO, sol.t_events[0]),
        (EventKind.PHI_EQUALS_PHI0, sol.t_events[1]),
    ):
        for te in t_ev:
            y = sol.sol(te)
            events.append(Event(kind, float(te), PhasePoint(float(y[0]), float(y[1]), float(te))))
    events.sort(key=lambda e: e.t)

    if sol.status == 1 and len(sol.t_events[2]) > 0:
        spec = spectra(params)
        contracting = spec.mu3.real < 0 and spec.mu4.real < 0
        tail = min(10, sol.t.shape[0])
        dist = np.hypot(sol.y[0, -tail:] - phi0, sol.y[1, -tail:])
        decreasing = bool(np.all(np.diff(dist) < tol.conv_radius))
        terminal = (
            Terminal.CONVERGED_TO_P1
            if (contracting and decreasing)
            else Terminal.MAX_TIME_REACHED
        )
    elif sol.status == 1:
        terminal = Terminal.LEFT_DOMAIN
    else:
        terminal = Terminal.MAX_TIME_REACHED

    return Orbit(
        t=sol.t,
        phi=sol.y[0],
        psi=sol.y[1],
        events=events,
        terminal=terminal,
        params=params,
        tolerances=tol,
        interpolant=sol.sol,
    )


def oscillation_record(orbit: Orbit) -> tuple[list[float], list[float]]:
    """Times T_i of the psi-zero crossings and the values phi(T_i).

    Only the numerically resolvable crossings are reported; their amplitudes
    decay geometrically, so the tail beyond event tolerance is extrapolated
    elsewhere, never enumerated.
    """
    evs = orbit.events_of(EventKind.PSI_ZERO)
    if len(evs) < 2:
        raise InsufficientEvents(
            f"need >= 2 psi-zero events, found {len(evs)} "
            f"(terminal={orbit.terminal.value})"
        )
    return [e.t for e in evs], [e.point.phi for e in evs]


def ode1_residual(
    rho: float, rho_r: float, rho_rr: float, r: float, params: LomseParams
) -> float:
    """Left side of the radial minimal-graph equation at one sample."""
    n, p = params.n, params.p
    lam2 = float(params.lambda2)
    q = rho / r
    return (
        rho_rr / (1.0 + rho_r * rho_r)
        + (n - p) * rho_r / r
        + p * (rho_r / r - lam2 * rho / (r * r)) / (1.0 + lam2 * q * q)
    )


@dataclass(frozen=True)
class Profile:
    """A graph profile rho(r) recovered from a converged orbit.

    Below ``r_min`` (the seed radius) the profile continues by its leading
    power law rho ~ c r^k, matching value and slope at the seed because the
    seed lies on the linear eigendirection.
    """

    r_samples: np.ndarray
    rho: np.ndarray
    rho_r: np.ndarray
    residuals: np.ndarray
    r_min: float
    r_max: float
    small_r_slope: float
    params: LomseParams
    orbit: Orbit = field(repr=False)
    _c_ext: float = field(repr=False, default=0.0)

    def rho_at(self, r: float) -> float:
        if r <= 0.0:
            return 0.0
        if r < self.r_min:
            return self._c_ext * r**self.params.k
        t = math.log(min(r, self.r_max))
        return r * self.orbit.point_at(t).phi

    def rho_r_at(self, r: float) -> float:
        k = self.params.k
        if r <= 0.0:
            return 0.0
        if r < self.r_min:
            return self._c_ext * k * r ** (k - 1)
        t = math.log(min(r, self.r_max))
        pt = self.orbit.point_at(t)
        return pt.phi + pt.psi

    def rho_rr_at(self, r: float) -> float:
        k = self.params.k
        if r <= 0.0:
            return 0.0
        if r < self.r_min:
            return self._c_ext * k * (k - 1) * r ** (k - 2)
        t = math.log(min(r, self.r_max))
        psi = self.orbit.point_at(t).psi
        return (self.orbit.psi_t_at(t) + psi) / r


def extract_profile(orbit: Orbit, params: LomseParams) -> Profile:
    """Convert a converged orbit into the profile rho(r) = e^t phi(t).

    The residual of the radial equation is evaluated at every interior
    solver sample, with rho_rr taken from the differentiated interpolant so
    the check is a genuine consistency test of the integration.
    """
    if orbit.terminal is not Terminal.CONVERGED_TO_P1:
        raise NotConverged(f"orbit terminal is {orbit.terminal.value}")

    t = orbit.t
    r = np.exp(t)
    rho = r * orbit.phi
    rho_r = orbit.phi + orbit.psi
    residuals = np.empty_like(rho)
    residuals[0] = residuals[-1] = 0.0
    for i in range(1, len(t) - 1):
        rho_rr = (orbit.psi_t_at(t[i]) + orbit.psi[i]) / r[i]
        residuals[i] = ode1_residual(rho[i], rho_r[i], rho_rr, r[i], params)

    # leading-order fit: while phi is still tiny the orbit is linear and
    # log rho vs log r has slope k
    linear = orbit.phi < max(1e-4, 100.0 * orbit.phi[0])
    linear[0] = True
    m = int(np.sum(linear))
    if m >= 3:
        slope = float(np.polyfit(t[:m], np.log(rho[:m]), 1)[0])
    else:
        slope = float(params.k)

    r_min = float(r[0])
    return Profile(
        r_samples=r,
        rho=rho,
        rho_r=rho_r,
        residuals=residuals,
        r_min=r_min,
        r_max=float(r[-1]),
        small_r_slope=slope,
        params=params,
        orbit=orbit,
        _c_ext=float(rho[0] / r_min**params.k),
    )


# ---------------------------------------------------------------------------
# barrier certificates


class CaseId(Enum):
    A3_CASE1 = "A3Case1"
    A3_CASE2 = "A3Case2"
    A3_CASE3 = "A3Case3"
    A3_CASE4 = "A3Case4"
    A4 = "A4"


@dataclass(frozen=True)
class Check:
    name: str
    value: object
    required_sign: str
    passed: bool


@dataclass(frozen=True)
class BarrierCertificate:
    case_id: CaseId
    c: Fraction | None
    checks: list[Check]
    grid_resolution: int
    passed: bool


def _signed_check(name: str, value, required_sign: str) -> Check:
    if required_sign == ">0":
        ok = value > 0
    elif required_sign == ">=0":
        ok = value >= 0
    elif required_sign == "<0":
        ok = value < 0
    elif required_sign == "==0":
        ok = value == 0
    else:
        raise ValueError(required_sign)
    return Check(name=name, value=value, required_sign=required_sign, passed=bool(ok))


def _a3_case(params: LomseParams) -> tuple[CaseId, Fraction]:
    n, p, k = params.n, params.p, params.k
    if (n, p, k) == (3, 2, 2):
        return CaseId.A3_CASE1, Fraction(1)
    if (n, p, k) == (5, 4, 2):
        return CaseId.A3_CASE2, Fraction(1)
    if (n, p, k) == (5, 4, 4):
        return CaseId.A3_CASE3, Fraction(6, 7)
    return CaseId.A3_CASE4, Fraction(1, 2)


def _barrier_inequality_margin(
    params: LomseParams, curve, curve_prime, n_grid: int
) -> float:
    """Min over a grid in (0, phi0) of curve'(phi) - X2/X1 at (phi, curve(phi)).

    Positive margin certifies that the field points inward along the curve.
    """
    phi0 = params.phi0
    worst = math.inf
    for j in range(1, n_grid + 1):
        phi = phi0 * j / (n_grid + 1)
        h = curve(phi)
        x1, x2 = vector_field(PhasePoint(phi, h), params)
        worst = min(worst, curve_prime(phi) - x2 / x1)
    return worst


def _bottom_edge_margin(params: LomseParams, n_grid: int) -> float:
    """Min of X2(phi, 0) over a grid in (0, phi0); positive means the field
    crosses the phi-axis upward inside the region."""
    phi0 = params.phi0
    worst = math.inf
    for j in range(1, n_grid + 1):
        phi = phi0 * j / (n_grid + 1)
        worst = min(worst, vector_field(PhasePoint(phi, 0.0), params)[1])
    return worst


def barrier_certificate_A3(
    params: LomseParams, grid_resolution: int = 2048
) -> BarrierCertificate:
    """Invariant-region certificate for the node (TypeI) cases.

    The region is bounded by psi = h(phi) = f1(phi) phi / (c (n-p)) over
    (0, phi0).  The decisive scalars F(0), G(0), G(lambda^2 phi0^2) are
    evaluated in exact rational arithmetic; the inward-pointing inequalities
    are additionally sampled on a dense grid as a redundant check.
    """
    if params.stability is not Stability.TYPE_I:
        raise WrongCase(f"{params} is TypeII; use barrier_certificate_A4")
    case_id, c = _a3_case(params)
    n, p = params.n, params.p
    lam2 = params.lambda2

    F0 = 1 + n - 2 * (lam2 * p - n) / (c * (lam2 - 1) * p) - c * (lam2 - 1) * n / lam2
    G0 = (
        (1 / c - 1) * p
        - 1 / c
        + (Fraction(4 - p) / c - p) * (n - p) / (lam2 * p - p)
        + ((c + 2) * n - c * p) / lam2
    )
    Gend = 1 / c + c * (n - p) / lam2 + 2 * (n - p) / (c * (lam2 - 1) * p)

    cnp = float(c) * (n - p)

    def h(phi: float) -> float:
        return f1(phi, params) * phi / cnp

    def h_prime(phi: float) -> float:
        return (_f1_prime(phi, params) * phi + f1(phi, params)) / cnp

    margin_b = _barrier_inequality_margin(params, h, h_prime, grid_resolution)
    margin_a = _bottom_edge_margin(params, grid_resolution)

    checks = [
        _signed_check("F(0)", F0, ">=0"),
        _signed_check("G(0)", G0, ">0"),
        _signed_check("G(lambda^2 phi0^2)", Gend, ">0"),
        _signed_check("inward margin on psi=h(phi)", margin_b, ">0"),
        _signed_check("X2 on psi=0 edge", margin_a, ">0"),
    ]
    return BarrierCertificate(
        case_id=case_id,
        c=c,
        checks=checks,
        grid_resolution=grid_resolution,
        passed=all(ch.passed for ch in checks),
    )


def _F_spiral(s: float) -> float:
    return (4.0 / 25.0) * ((3.0 + 5.0 * s) / (1.0 + s)) ** 2 * (1.0 + 5.0 * s) / (
        1.0 + 10.0 * s
    )


def barrier_certificate_A4(
    params: LomseParams, grid_resolution: int = 2048
) -> BarrierCertificate:
    """Invariant-region certificate for the spiral (TypeII) cases.

    Checks, in order: the exact value F(1/5) = 32/27 of the rational bound,
    its numerical global minimality over s > 0, the inward inequality for
    the barrier g(phi) = (2 f1(phi) + 1/5) phi on (0, phi0), the bottom edge,
    and the no-limit-cycle inequality Y2 + X2 < 0 over the quarter strip
    phi >= sqrt((3p-n-1)/(3(n-p))), psi > 0.
    """
    if params.stability is not Stability.TYPE_II:
        raise WrongCase(f"{params} is TypeI; use barrier_certificate_A3")
    n, p = params.n, params.p
    phi0 = params.phi0

    s = Fraction(1, 5)
    F_exact = (
        Fraction(4, 25) * ((3 + 5 * s) / (1 + s)) ** 2 * (1 + 5 * s) / (1 + 10 * s)
    )
    res = minimize_scalar(_F_spiral, bounds=(1e-12, 50.0), method="bounded",
                          options={"xatol": 1e-12})
    min_dev = abs(res.fun - 32.0 / 27.0)

    def g(phi: float) -> float:
        return (2.0 * f1(phi, params) + 0.2) * phi

    def g_prime(phi: float) -> float:
        return 2.0 * _f1_prime(phi, params) * phi + 2.0 * f1(phi, params) + 0.2

    margin_b = _barrier_inequality_margin(params, g, g_prime, grid_resolution)
    margin_a = _bottom_edge_margin(params, grid_resolution)

    phi_th = math.sqrt((3 * p - n - 1) / (3 * (n - p)))
    m2 = max(100, int(math.isqrt(grid_resolution * 5)))
    worst_lem = -math.inf
    for i in range(m2):
        phi = phi_th + (3.0 * phi0 - phi_th) * i / (m2 - 1)
        for j in range(1, m2 + 1):
            psi = 3.0 * phi0 * j / m2
            _, x2 = vector_field(PhasePoint(phi, psi), params)
            y2 = -psi - (f2(phi, params) * psi + f1(phi, params) * phi) * (
                1.0 + (phi - psi) ** 2
            )
            worst_lem = max(worst_lem, y2 + x2)

    checks = [
        _signed_check("F(1/5) - 32/27 exact", F_exact - Fraction(32, 27), "==0"),
        _signed_check("1e-10 - |min F - 32/27|", 1e-10 - min_dev, ">0"),
        _signed_check("inward margin on psi=g(phi)", margin_b, ">0"),
        _signed_check("X2 on psi=0 edge", margin_a, ">0"),
        _signed_check("max(Y2+X2) on quarter strip", worst_lem, "<0"),
    ]
    return BarrierCertificate(
        case_id=CaseId.A4,
        c=None,
        checks=checks,
        grid_resolution=grid_resolution,
        passed=all(ch.passed for ch in checks),
    )
