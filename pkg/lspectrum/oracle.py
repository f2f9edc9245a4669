"""
Brute-force Lorentz spectra straight from the geometric definitions.

Nothing here goes through the four algebraic systems.  Boundary
L-eigenvalues come from a sweep of unit vectors ``ξ(θ)``: for fixed ``ξ`` the
equation ``(A - λI)[ξ; 1] = s[-ξ; 1]`` is linear in ``(λ, s)`` and its first
two rows say that ``Ãξ + u`` is parallel to ``ξ``.  Interior ones come from
null spaces of ``A - λI`` at the standard eigenvalues.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from .conf import get_config
from .exceptions import NumericalFailure
from .smallmat import Mat3, absmax
from .spectrum import Interval, LEigenvalue, Spectrum

logger = logging.getLogger(__name__)


class OracleConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    theta_steps: int = Field(default=100000, ge=1)
    residual_tol: float = Field(default=1e-9, gt=0)
    cluster_gap: float = Field(default=1e-6, gt=0)
    eigvec_cutoff: float = Field(default=1e-7, gt=0)
    bisection_steps: int = Field(default=40, ge=1)

    @classmethod
    def from_settings(cls, **overrides) -> "OracleConfig":
        config = get_config()
        values = {
            "theta_steps": config.theta_steps,
            "residual_tol": config.residual_tol,
            "cluster_gap": config.cluster_gap,
            "eigvec_cutoff": config.eigvec_cutoff,
            "bisection_steps": config.bisection_steps,
        }
        values.update({key: value for key, value in overrides.items() if value is not None})
        return cls(**values)


class _Sweep:
    """Closed-form least squares for ``(λ, s)`` along ``ξ(θ) = (cos θ, sin θ)``."""

    def __init__(self, A: Mat3):
        self.T, self.u, self.v, self.a = A.tilde, A.u, A.v, A.a

    def __call__(self, theta):
        theta = np.asarray(theta, dtype=float)
        xi = np.stack([np.cos(theta), np.sin(theta)])
        w = self.T @ xi + self.u[:, None]
        g = -xi[1] * w[0] + xi[0] * w[1]
        mu = xi[0] * w[0] + xi[1] * w[1]
        y3 = self.v @ xi + self.a
        return g, mu, 0.5 * (mu + y3), 0.5 * (y3 - mu)


def _bisect(f, lo, hi, steps: int):
    # vectorised bisection on brackets where f(lo) and f(hi) differ in sign
    f_lo = f(lo)
    for _ in range(steps):
        mid = 0.5 * (lo + hi)
        f_mid = f(mid)
        left = np.signbit(f_mid) == np.signbit(f_lo)
        lo = np.where(left, mid, lo)
        f_lo = np.where(left, f_mid, f_lo)
        hi = np.where(left, hi, mid)
    return 0.5 * (lo + hi)


def _sign_change_brackets(theta, values):
    nxt = np.roll(values, -1)
    idx = np.flatnonzero(values * nxt < 0.0)
    step = theta[1] - theta[0] if theta.size > 1 else 2.0 * math.pi
    return theta[idx], theta[idx] + step


def _boundary_samples(A: Mat3, cfg: OracleConfig):
    sweep = _Sweep(A)
    scale = max(1.0, absmax(A.entries))
    gate = cfg.residual_tol * scale
    theta = np.linspace(0.0, 2.0 * math.pi, cfg.theta_steps, endpoint=False)
    g, mu, lam, s = sweep(theta)

    if np.max(np.abs(g)) <= gate:
        # Ã = cI and u = 0: every direction solves the first two rows
        keep = s >= -gate
        thetas = [theta[keep]]
        lo, hi = _sign_change_brackets(theta, s)
        if lo.size:
            thetas.append(_bisect(lambda t: sweep(t)[3], lo, hi, cfg.bisection_steps))
        logger.debug("degenerate sweep: %d of %d directions accepted", int(keep.sum()), theta.size)
    else:
        lo, hi = _sign_change_brackets(theta, g)
        thetas = [theta[np.abs(g) <= gate]]
        if lo.size:
            thetas.append(_bisect(lambda t: sweep(t)[0], lo, hi, cfg.bisection_steps))
        logger.debug("sweep found %d residual sign changes", lo.size)

    candidates = np.concatenate(thetas) if thetas else np.empty(0)
    g, mu, lam, s = sweep(candidates)
    keep = s >= -gate
    return candidates[keep], g[keep], mu[keep], lam[keep], s[keep]


def _cluster(samples, cfg: OracleConfig, scale: float):
    theta, g, mu, lam, s = samples
    gap = max(cfg.cluster_gap, 4.0 * math.pi * scale / cfg.theta_steps)
    order = np.argsort(lam, kind="stable")
    points, intervals = [], []
    start = 0
    for stop in range(1, order.size + 1):
        if stop < order.size and lam[order[stop]] - lam[order[stop - 1]] <= gap:
            continue
        members = order[start:stop]
        span = lam[members[-1]] - lam[members[0]]
        if span > gap:
            intervals.append(Interval(float(lam[members[0]]), float(lam[members[-1]])))
        else:
            best = members[np.argmin(np.abs(g[members]))]
            xi = (math.cos(theta[best]), math.sin(theta[best]))
            points.append(
                LEigenvalue(
                    float(lam[best]),
                    boundary=True,
                    boundary_witness=np.array([xi[0], xi[1], 1.0]),
                    mu=float(mu[best]),
                    s=float(s[best]),
                )
            )
        start = stop
    return points, intervals


def _null_space_point(E: np.ndarray, lam: float, cfg: OracleConfig, null_gate: float) -> Optional[LEigenvalue]:
    _, sigma, vt = np.linalg.svd(E - lam * np.eye(3))
    if sigma[-1] > null_gate:
        return None
    null = vt[sigma <= null_gate]
    n3 = null[:, 2]
    norm = float(np.linalg.norm(n3))
    if norm <= cfg.eigvec_cutoff or norm * norm <= 0.5:
        return None
    # smallest ‖ξ‖ over the eigenspace slice x3 = 1
    x = null.T @ (n3 / (norm * norm))
    return LEigenvalue(lam, interior=True, interior_witness=x / x[2])


def _interior_points(A: Mat3, cfg: OracleConfig) -> list[LEigenvalue]:
    E = A.entries
    scale = max(1.0, absmax(E))
    gate = get_config().root_imag_gate
    null_gate = math.sqrt(cfg.residual_tol) * scale
    found: list[LEigenvalue] = []
    # every computed eigenvalue on its own; only values within cluster_gap are one point
    for z in sorted(np.linalg.eigvals(E), key=lambda z: z.real):
        if abs(z.imag) > gate * scale:
            continue
        if found and abs(z.real - found[-1].value) <= cfg.cluster_gap * max(1.0, abs(z.real)):
            continue
        pt = _null_space_point(E, float(z.real), cfg, null_gate)
        if pt is not None:
            found.append(pt)
    return found


def oracle_spectrum(A, cfg: Optional[OracleConfig] = None) -> Spectrum:
    """L-spectrum of ``A`` by sweeping the boundary circle and scanning eigenvectors."""
    cfg = cfg or OracleConfig.from_settings()
    A = Mat3.coerce(A)
    scale = max(1.0, absmax(A.entries))
    try:
        points, intervals = _cluster(_boundary_samples(A, cfg), cfg, scale)
        interior = _interior_points(A, cfg)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure(f"eigenvalue scan failed for {A!r}: {exc}") from exc
    return Spectrum.canonical(interior + points, intervals)


@dataclass(frozen=True)
class SpectrumDiff:
    hausdorff_distance: float
    missing: list[float] = field(default_factory=list)
    extra: list[float] = field(default_factory=list)
    tol: float = 0.0

    @property
    def equal(self) -> bool:
        return self.hausdorff_distance <= self.tol


def _components(spectrum: Spectrum) -> list[tuple[float, float]]:
    comps = [(p.value, p.value) for p in spectrum.points] + [(iv.lo, iv.hi) for iv in spectrum.intervals]
    return sorted(comps)


def _distance_to(x: float, comps) -> float:
    return min(0.0 if lo <= x <= hi else min(abs(x - lo), abs(x - hi)) for lo, hi in comps)


def _one_sided(source, target, tol: float):
    # sup over source of the distance to target is attained at a component
    # endpoint or where a source component crosses the middle of a target gap
    if not source:
        return 0.0, []
    if not target:
        return math.inf, [lo for lo, _ in source]
    gaps = [0.5 * (target[i][1] + target[i + 1][0]) for i in range(len(target) - 1)]
    worst, witnesses = 0.0, []
    for lo, hi in source:
        candidates = {lo, hi}
        candidates.update(min(max(m, lo), hi) for m in gaps)
        for x in sorted(candidates):
            d = _distance_to(x, target)
            worst = max(worst, d)
            if d > tol:
                witnesses.append(float(x))
    return worst, witnesses


def spectra_equal(s1: Spectrum, s2: Spectrum, tol: Optional[float] = None) -> SpectrumDiff:
    """Hausdorff comparison of two spectra viewed as closed subsets of the real line."""
    tol = get_config().tol if tol is None else tol
    c1, c2 = _components(s1), _components(s2)
    forward, missing = _one_sided(c1, c2, tol)
    backward, extra = _one_sided(c2, c1, tol)
    return SpectrumDiff(max(forward, backward), missing, extra, tol)


def in_lorentz_cone(x, tol: float = 0.0) -> bool:
    x = np.asarray(x, dtype=float)
    return bool(np.linalg.norm(x[:2]) <= x[2] + tol)


def is_lorentz_eigenpair(A, lam: float, x, tol: float = 1e-8) -> bool:
    """
    The complementarity problem itself: ``x`` in the cone, ``(A - λI)x`` in
    the (self-dual) cone, and the two orthogonal.
    """
    A = Mat3.coerce(A)
    x = np.asarray(x, dtype=float)
    if np.linalg.norm(x) <= tol:
        return False
    y = (A.entries - lam * np.eye(3)) @ x
    scale = max(1.0, absmax(A.entries), abs(lam)) * max(1.0, float(np.linalg.norm(x)))
    return (
        in_lorentz_cone(x, tol)
        and in_lorentz_cone(y, tol * scale)
        and abs(float(x @ y)) <= tol * scale * max(1.0, float(np.linalg.norm(x)))
    )
