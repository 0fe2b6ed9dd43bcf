"""Multiplicity of the radial Dirichlet problem on the unit ball.

A converged orbit encodes, through its level crossings phi(t) = phi_b, the
rescaled solutions rho_d(r) = rho(d r)/d with boundary slope phi_b at r = 1.
Counting crossings therefore counts analytic solutions; at phi_b = phi0 the
spiral (TypeII) produces an accumulating sequence d_i = e^{t_i}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.optimize import brentq

from . import geometry
from .dynamics import EventKind, Orbit, Profile, Terminal
from .errors import NotConverged, WrongType
from .params import LomseParams, Stability

PHI0_MATCH_TOL = 1e-9


class MultiplicityKind(Enum):
    ZERO = "Zero"
    FINITE = "Finite"
    UNBOUNDED_SEQUENCE = "UnboundedSequence"


@dataclass(frozen=True)
class Multiplicity:
    kind: MultiplicityKind
    count: int | None = None

    def __str__(self) -> str:
        if self.kind is MultiplicityKind.FINITE:
            return f"Finite({self.count})"
        return self.kind.value


@dataclass(frozen=True)
class DirichletReport:
    phi_boundary: float
    crossing_ts: list[float]
    d_values: list[float]
    multiplicity: Multiplicity
    phi1: float
    phi2: float | None
    epsilon_window: float | None
    decay_rate: float | None
    cone_solution: bool


def _find_crossings(orbit: Orbit, level: float, refine: int = 8) -> list[float]:
    """All t with phi(t) = level, located by root-finding on the dense output.

    Each solver step is subdivided so that sign changes inside long steps are
    not missed; duplicate roots from adjacent subintervals are merged.
    """
    ts = orbit.t
    if len(ts) < 2:
        return []
    roots: list[float] = []
    for i in range(len(ts) - 1):
        grid = np.linspace(ts[i], ts[i + 1], refine + 1)
        vals = np.array([orbit.point_at(t).phi - level for t in grid])
        for j in range(refine):
            a, b = grid[j], grid[j + 1]
            fa, fb = vals[j], vals[j + 1]
            if fa == 0.0:
                roots.append(float(a))
            elif fa * fb < 0.0:
                roots.append(
                    float(brentq(lambda t: orbit.point_at(t).phi - level, a, b,
                                 xtol=1e-13, rtol=1e-15))
                )
    if vals[-1] == 0.0:
        roots.append(float(ts[-1]))
    merged: list[float] = []
    for t in sorted(roots):
        if not merged or t - merged[-1] > 1e-10:
            merged.append(t)
    return merged


def _phi_extrema(orbit: Orbit, params: LomseParams) -> tuple[float, float | None]:
    """phi1 = max phi over the orbit; phi2 = min phi after the first psi-zero
    event (TypeII only, None otherwise)."""
    psi_events = orbit.events_of(EventKind.PSI_ZERO)
    phi1 = float(np.max(orbit.phi))
    if psi_events:
        phi1 = max(phi1, max(e.point.phi for e in psi_events))
    if params.stability is Stability.TYPE_I or not psi_events:
        return phi1, None
    t1 = psi_events[0].t
    after = orbit.phi[orbit.t >= t1]
    phi2 = float(np.min(after)) if after.size else psi_events[0].point.phi
    phi2 = min(phi2, min(e.point.phi for e in psi_events))
    return phi1, phi2


def _decay_rate(orbit: Orbit, params: LomseParams) -> float | None:
    """Geometric decay rate of |phi(T_i) - phi0| fitted over the resolvable
    psi-zero events; None when fewer than two are resolvable."""
    amps = [
        abs(e.point.phi - params.phi0)
        for e in orbit.events_of(EventKind.PSI_ZERO)
    ]
    amps = [a for a in amps if a > 0.0]
    if len(amps) < 2:
        return None
    slope = np.polyfit(np.arange(len(amps)), np.log(amps), 1)[0]
    return float(math.exp(slope))


def dirichlet_multiplicity(
    orbit: Orbit, params: LomseParams, phi_boundary: float
) -> DirichletReport:
    """Count analytic solutions to the Dirichlet problem with boundary slope
    ``phi_boundary``.

    Zero when the amplitude exceeds the orbit maximum phi1; Finite(count)
    from the located crossings otherwise; UnboundedSequence when the
    amplitude equals phi0 within tolerance and the equilibrium is a spiral,
    in which case only the resolvable prefix of d_i is listed together with
    the fitted geometric decay rate.  The Lipschitz cone solution existing
    exactly at phi0 is flagged separately; it is not an orbit crossing.
    """
    if orbit.terminal is not Terminal.CONVERGED_TO_P1:
        raise NotConverged(f"orbit terminal is {orbit.terminal.value}")
    if phi_boundary < 0:
        raise ValueError("phi_boundary must be nonnegative")

    phi0 = params.phi0
    phi1, phi2 = _phi_extrema(orbit, params)
    is_type2 = params.stability is Stability.TYPE_II
    at_phi0 = abs(phi_boundary - phi0) < PHI0_MATCH_TOL
    eps_window = (phi1 - phi0) if is_type2 else None

    if at_phi0 and is_type2:
        crossings = [e.t for e in orbit.events_of(EventKind.PHI_EQUALS_PHI0)]
        if not crossings:
            crossings = _find_crossings(orbit, phi0)
        mult = Multiplicity(MultiplicityKind.UNBOUNDED_SEQUENCE)
        rate = _decay_rate(orbit, params)
    elif phi_boundary > phi1:
        crossings = []
        mult = Multiplicity(MultiplicityKind.ZERO)
        rate = None
    else:
        crossings = _find_crossings(orbit, phi_boundary)
        mult = Multiplicity(MultiplicityKind.FINITE, count=len(crossings))
        rate = None

    return DirichletReport(
        phi_boundary=phi_boundary,
        crossing_ts=crossings,
        d_values=[math.exp(t) for t in crossings],
        multiplicity=mult,
        phi1=phi1,
        phi2=phi2,
        epsilon_window=eps_window,
        decay_rate=rate,
        cone_solution=at_phi0,
    )


def epsilon_window(orbit: Orbit, params: LomseParams) -> float:
    """Width phi1 - phi0 of the amplitude window above the cone slope for
    which the spiral guarantees solvability."""
    if params.stability is not Stability.TYPE_II:
        raise WrongType(f"{params} is TypeI; the window is a spiral feature")
    if orbit.terminal is not Terminal.CONVERGED_TO_P1:
        raise NotConverged(f"orbit terminal is {orbit.terminal.value}")
    phi1, _ = _phi_extrema(orbit, params)
    return phi1 - params.phi0


def nonminimizing_verdict(
    profile: Profile, orbit: Orbit, params: LomseParams, rel_tol: float = 1e-8
) -> geometry.DensityReport:
    """Density comparison certifying that the cone is not area-minimizing.

    The rescaling radii are the d_i = e^{t_i} at the phi0 crossings; the
    density at the first of them sits strictly below the cone density.
    """
    if params.stability is not Stability.TYPE_II:
        raise WrongType(f"{params} is TypeI; no density gap is expected")
    report = dirichlet_multiplicity(orbit, params, params.phi0)
    radii = [d for d in report.d_values if d <= profile.r_max]
    if not radii:
        raise NotConverged("no phi0 crossings within the profile range")
    return geometry.density_report(profile, params, radii, rel_tol=rel_tol)
