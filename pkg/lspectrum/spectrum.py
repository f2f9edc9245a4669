"""
Lorentz spectrum of 3x3 real matrices.

For ``A = [[Ã, u], [vᵀ, a]]`` a real ``λ`` is an L-eigenvalue when some
``x = [ξ; 1]`` with ``‖ξ‖ <= 1`` satisfies the complementarity conditions
on the Lorentz cone.  Two natures exist:

* interior: ``(A - λI)[ξ; 1] = 0`` with ``‖ξ‖ < 1``;
* boundary: ``(A - λI)[ξ; 1] = s[-ξ; 1]`` with ``‖ξ‖ = 1`` and ``s >= 0``.

Writing ``λ = μ + s`` the boundary equation splits into
``(Ã - μI)ξ = -u`` and ``vᵀξ = -(a - μ - 2s)``.  Depending on whether
``μ`` is an eigenvalue of ``Ã`` (and on range membership of ``u`` and
``v``) one of four algebraic systems applies; ``solve_system_I`` and
``solve_systems_II_III_IV`` implement them and ``boundary_spectrum``
takes their union.  The only way to get infinitely many L-eigenvalues is
``A = [[cI, 0], [vᵀ, a]]`` with ``v != 0`` and ``c < a + ‖v‖``.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from typing import Iterable, Optional, Sequence, Union

import numpy as np
from tqdm import tqdm

from .conf import get_config
from .exceptions import DomainError, InvalidMu, NumericalFailure, UnsupportedFamily
from .smallmat import (
    Mat3,
    RealPoly,
    absmax,
    adj2,
    det2,
    eig2_real,
    pinv_small,
    real_eigenvalues,
    real_roots,
    scaled_tol,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ScalarBlock:
    """``(μ, v, a)`` of a matrix ``[[μI, 0], [vᵀ, a]]`` whose boundary L-eigenvalues form an interval."""

    mu: float
    v: tuple[float, float]
    a: float

    def witness(self, lam: float) -> LEigenvalue:
        # any unit ξ with vᵀξ = 2s - (a - μ), s = λ - μ
        v = np.array(self.v)
        nv = float(np.linalg.norm(v))
        s = lam - self.mu
        t = float(np.clip((2.0 * s - (self.a - self.mu)) / nv, -1.0, 1.0))
        xi = (t * v + np.sqrt(1.0 - t * t) * np.array([-v[1], v[0]])) / nv
        return LEigenvalue(lam, boundary=True, boundary_witness=_lift(xi), mu=self.mu, s=s)

    def shifted(self, gamma: float) -> "ScalarBlock":
        return ScalarBlock(self.mu + gamma, self.v, self.a + gamma)


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float
    block: Optional[ScalarBlock] = field(default=None, compare=False, repr=False)

    def contains(self, x: float, tol: float = 0.0) -> bool:
        return self.lo - tol <= x <= self.hi + tol

    def shifted(self, gamma: float) -> "Interval":
        block = None if self.block is None else self.block.shifted(gamma)
        return Interval(self.lo + gamma, self.hi + gamma, block)

    def point(self, lam: float) -> LEigenvalue:
        if self.block is None:
            return LEigenvalue(lam, boundary=True)
        return self.block.witness(lam)


@dataclass(frozen=True, eq=False)
class LEigenvalue:
    """An L-eigenvalue with its nature flags and witnesses ``[ξ; 1]``."""

    value: float
    interior: bool = False
    boundary: bool = False
    interior_witness: Optional[np.ndarray] = None
    boundary_witness: Optional[np.ndarray] = None
    mu: Optional[float] = None
    s: Optional[float] = None

    def __post_init__(self):
        if not (self.interior or self.boundary):
            raise ValueError("an L-eigenvalue needs at least one nature flag")

    @property
    def witness(self) -> Optional[np.ndarray]:
        return self.interior_witness if self.interior_witness is not None else self.boundary_witness

    def merged(self, other: "LEigenvalue") -> "LEigenvalue":
        return LEigenvalue(
            value=self.value,
            interior=self.interior or other.interior,
            boundary=self.boundary or other.boundary,
            interior_witness=self.interior_witness if self.interior_witness is not None else other.interior_witness,
            boundary_witness=self.boundary_witness if self.boundary_witness is not None else other.boundary_witness,
            mu=self.mu if self.mu is not None else other.mu,
            s=self.s if self.s is not None else other.s,
        )

    def shifted(self, gamma: float) -> "LEigenvalue":
        return replace(
            self,
            value=self.value + gamma,
            mu=None if self.mu is None else self.mu + gamma,
        )


def _lift(xi) -> np.ndarray:
    # witnesses are stored with third coordinate exactly 1
    return np.array([float(xi[0]), float(xi[1]), 1.0])


@dataclass(frozen=True)
class Spectrum:
    """
    Canonical L-spectrum: sorted points plus sorted disjoint closed intervals.

    Intervals are always boundary-natured.  A point inside an interval is
    kept only when it is interior (it is then flagged boundary as well).
    """

    points: tuple[LEigenvalue, ...] = ()
    intervals: tuple[Interval, ...] = ()

    @classmethod
    def canonical(
        cls,
        points: Iterable[LEigenvalue] = (),
        intervals: Iterable[Interval] = (),
        dedup_tol: Optional[float] = None,
        degenerate: Optional[float] = None,
    ) -> "Spectrum":
        config = get_config()
        dedup_tol = config.dedup_tol if dedup_tol is None else dedup_tol
        degenerate = config.degenerate_interval if degenerate is None else degenerate

        points = list(points)
        kept: list[Interval] = []
        for iv in sorted(intervals, key=lambda iv: (iv.lo, iv.hi)):
            if iv.hi - iv.lo <= degenerate:
                points.append(iv.point(0.5 * (iv.lo + iv.hi)))
                continue
            if kept and iv.lo <= kept[-1].hi + dedup_tol * max(1.0, abs(iv.lo)):
                kept[-1] = replace(kept[-1], hi=max(kept[-1].hi, iv.hi))
            else:
                kept.append(iv)

        merged: list[LEigenvalue] = []
        for pt in sorted(points, key=lambda p: p.value):
            if merged and abs(pt.value - merged[-1].value) <= dedup_tol * max(1.0, abs(pt.value)):
                merged[-1] = merged[-1].merged(pt)
            else:
                merged.append(pt)

        final: list[LEigenvalue] = []
        for pt in merged:
            home = next((iv for iv in kept if iv.contains(pt.value, dedup_tol * max(1.0, abs(pt.value)))), None)
            if home is None:
                final.append(pt)
            elif pt.interior:
                final.append(pt.merged(home.point(pt.value)))
        return cls(tuple(final), tuple(kept))

    @property
    def infinite(self) -> bool:
        return bool(self.intervals)

    def is_empty(self) -> bool:
        return not self.points and not self.intervals

    def values(self) -> list[float]:
        return [pt.value for pt in self.points]

    def interior(self) -> "Spectrum":
        return Spectrum(tuple(pt for pt in self.points if pt.interior), ())

    def boundary(self) -> "Spectrum":
        pts = [replace(pt, interior=False, interior_witness=None) for pt in self.points if pt.boundary]
        return Spectrum.canonical(pts, self.intervals)

    def shifted(self, gamma: float) -> "Spectrum":
        return Spectrum(
            tuple(pt.shifted(gamma) for pt in self.points),
            tuple(iv.shifted(gamma) for iv in self.intervals),
        )


def _resolve_tol(tol: Optional[float]) -> float:
    tol = get_config().tol if tol is None else tol
    if tol <= 0:
        raise ValueError("tol must be positive")
    return tol


def _eigen_gate(T, tol: float) -> float:
    # μ counts as an eigenvalue of Ã when |det(Ã - μI)| is below this
    return tol * (1.0 + float(np.linalg.norm(T)) ** 2)


def interior_spectrum(A, tol: Optional[float] = None) -> list[LEigenvalue]:
    """Interior L-eigenvalues: standard eigenvalues with an eigenvector ``[ξ; 1]``, ``‖ξ‖ < 1``."""
    tol = _resolve_tol(tol)
    config = get_config()
    A = Mat3.coerce(A)
    E = A.entries
    scale = max(1.0, absmax(E))
    verify = config.verify_tol * scale

    def solve(lam: float):
        B = np.vstack([A.tilde - lam * np.eye(2), A.v])
        rhs = np.concatenate([-A.u, [lam - A.a]])
        xi = pinv_small(B, tol) @ rhs
        if np.linalg.norm(B @ xi - rhs) > verify:
            return None
        return xi

    found = []
    for eig in real_eigenvalues(E, tol, config.root_imag_gate):
        xi = solve(eig.value)
        # None: every eigenvector has a vanishing third coordinate
        if xi is not None and np.linalg.norm(xi) < 1.0 - config.strict_tol:
            found.append(LEigenvalue(eig.value, interior=True, interior_witness=_lift(xi)))
    return found


def solve_system_I(A, tol: Optional[float] = None) -> list[LEigenvalue]:
    """Boundary L-eigenvalues whose ``μ`` is not an eigenvalue of ``Ã``."""
    tol = _resolve_tol(tol)
    config = get_config()
    A = Mat3.coerce(A)
    T, u, v, a = A.tilde, A.u, A.v, A.a
    tau = scaled_tol(tol, A.entries)
    if np.linalg.norm(u) <= tau:
        return []

    # det(Ã-μI)² - ‖adj(Ã-μI)u‖² with adj(Ã-μI) = adj(Ã) - μI
    w = adj2(T) @ u
    det_poly = np.array([det2(T), -np.trace(T), 1.0])
    norm_poly = np.array([w @ w, -2.0 * (w @ u), u @ u])
    resolvent = np.polynomial.polynomial.polysub(np.polynomial.polynomial.polymul(det_poly, det_poly), norm_poly)

    gate = _eigen_gate(T, tol)
    found = []
    roots = real_roots(RealPoly(tuple(resolvent)), tol, config.root_imag_gate, config.newton_steps)
    for root in roots:
        mu = root.value
        M = T - mu * np.eye(2)
        d = det2(M)
        if abs(d) <= gate:
            logger.debug("system I root mu=%r is an eigenvalue of the leading block", mu)
            continue
        xi = -(adj2(M) @ u) / d
        s = 0.5 * (a - mu + v @ xi)
        if s < -tau:
            continue
        found.append(LEigenvalue(mu + s, boundary=True, boundary_witness=_lift(xi), mu=mu, s=s))
    return found


def _unit_completion(B: np.ndarray, xi0: np.ndarray, tau: float) -> np.ndarray:
    # ξ0 is the min-norm solution; add the component along ker(B) to reach ‖ξ‖ = 1
    row = max(B, key=lambda r: float(np.linalg.norm(r)))
    if np.linalg.norm(row) <= tau:
        k = np.array([1.0, 0.0])
        if np.linalg.norm(xi0) > 0.0:
            k = np.array([-xi0[1], xi0[0]]) / np.linalg.norm(xi0)
    else:
        k = np.array([-row[1], row[0]]) / np.linalg.norm(row)
    t = np.sqrt(max(0.0, 1.0 - float(xi0 @ xi0)))
    return xi0 + t * k


def solve_systems_II_III_IV(A, mu: float, tol: Optional[float] = None):
    """
    Boundary L-eigenvalues ``λ = μ + s`` for an eigenvalue ``μ`` of ``Ã``.

    Returns ``(points, interval)`` where ``interval`` is an ``Interval`` only
    on the infinite-spectrum branch.
    """
    tol = _resolve_tol(tol)
    A = Mat3.coerce(A)
    T, u, v, a = A.tilde, A.u, A.v, A.a
    M = T - mu * np.eye(2)
    if abs(det2(M)) > _eigen_gate(T, tol):
        raise InvalidMu(mu)
    tau = scaled_tol(tol, A.entries)
    scalar_block = absmax(M) <= tol * max(1.0, absmax(T))

    Mp = pinv_small(M, tol)
    if np.linalg.norm(M @ Mp @ u - u) > tau:
        return [], None
    MTp = pinv_small(M.T, tol)
    v_in_range = np.linalg.norm(M.T @ MTp @ v - v) <= tau

    B = np.vstack([M, v])
    Bp = pinv_small(B, tol)

    if v_in_range:
        s = 0.5 * (a - mu - v @ Mp @ u)
        if s < -tau:
            return [], None
        xi0 = -Bp @ np.concatenate([u, [a - mu - 2.0 * s]])
        if np.linalg.norm(xi0) > 1.0 + tau:
            return [], None
        xi = _unit_completion(B, xi0, tau)
        return [LEigenvalue(mu + s, boundary=True, boundary_witness=_lift(xi), mu=mu, s=s)], None

    if not scalar_block:
        # ξ(s) = α + sβ is affine in s; ‖ξ(s)‖ = 1 is a quadratic in s
        alpha = -Bp @ np.concatenate([u, [a - mu]])
        beta = 2.0 * Bp[:, 2]
        quad = RealPoly.of(alpha @ alpha - 1.0, 2.0 * (alpha @ beta), beta @ beta)
        points = []
        for root in real_roots(quad, tol):
            s = root.value
            if s < -tau:
                continue
            xi = alpha + s * beta
            points.append(LEigenvalue(mu + s, boundary=True, boundary_witness=_lift(xi), mu=mu, s=s))
        return points, None

    # Ã = μI, u = 0, v != 0: every unit ξ works, so |a - μ - 2s| <= ‖v‖
    nv = float(np.linalg.norm(v))
    gap = a - mu + nv
    if gap < -tau:
        return [], None
    if gap <= tau:
        return [LEigenvalue(mu, boundary=True, boundary_witness=_lift(v / nv), mu=mu, s=0.0)], None
    lo = mu + max(0.0, 0.5 * (a - mu - nv))
    hi = mu + 0.5 * (a - mu + nv)
    return [], Interval(lo, hi, ScalarBlock(mu, (float(v[0]), float(v[1])), a))


def _verify_boundary(A: Mat3, pt: LEigenvalue, tol: float) -> bool:
    xi = pt.boundary_witness[:2]
    x = pt.boundary_witness
    residual = (A.entries - pt.value * np.eye(3)) @ x - pt.s * np.array([-xi[0], -xi[1], 1.0])
    return (
        float(np.linalg.norm(residual)) <= tol
        and abs(float(np.linalg.norm(xi)) - 1.0) <= tol
        and pt.s >= -tol
        and abs(pt.value - (pt.mu + pt.s)) <= tol
    )


def boundary_spectrum(A, tol: Optional[float] = None):
    """
    Union of Systems I-IV as ``(points, intervals)``.

    Every point is re-verified against its witness; points are then
    deduplicated, intervals merged, and points inside an interval dropped.
    """
    tol = _resolve_tol(tol)
    config = get_config()
    A = Mat3.coerce(A)
    verify = config.verify_tol * max(1.0, absmax(A.entries))

    candidates = solve_system_I(A, tol)
    intervals = []
    for eig in eig2_real(A.tilde, tol):
        try:
            points, interval = solve_systems_II_III_IV(A, eig.value, tol)
        except InvalidMu:
            logger.debug("eigenvalue %r of the leading block failed the dispatch gate", eig.value)
            continue
        candidates.extend(points)
        if interval is not None:
            intervals.append(interval)

    points = []
    for pt in candidates:
        if _verify_boundary(A, pt, verify):
            points.append(pt)
        else:
            logger.warning("dropping boundary candidate %r: witness fails re-verification", pt.value)
    union = Spectrum.canonical(points, intervals)
    return list(union.points), list(union.intervals)


def detect_infinite(A, tol: Optional[float] = None) -> Optional[Interval]:
    """The interval of boundary L-eigenvalues when ``A = [[cI, 0], [vᵀ, a]]``, ``v != 0``, ``c < a + ‖v‖``."""
    tol = _resolve_tol(tol)
    A = Mat3.coerce(A)
    T = A.tilde
    tau = scaled_tol(tol, A.entries)
    c = 0.5 * float(T[0, 0] + T[1, 1])
    if absmax(T - c * np.eye(2)) > tol * max(1.0, absmax(T)):
        return None
    nv = float(np.linalg.norm(A.v))
    if np.linalg.norm(A.u) > tau or nv <= tau:
        return None
    a = A.a
    if not c < a + nv - tau:
        return None
    return Interval(max(c, 0.5 * (a + c - nv)), 0.5 * (a + c + nv), ScalarBlock(c, (float(A.v[0]), float(A.v[1])), a))


def full_spectrum(A, tol: Optional[float] = None) -> Spectrum:
    """``σ_L(A)``: interior and boundary parts merged, values found by both carry both flags."""
    tol = _resolve_tol(tol)
    A = Mat3.coerce(A)
    try:
        points, intervals = boundary_spectrum(A, tol)
        interior = interior_spectrum(A, tol)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure(f"linear algebra failed for {A!r}: {exc}") from exc
    return Spectrum.canonical(interior + points, intervals)


def full_spectra(matrices: Sequence, tol: Optional[float] = None, progress: Optional[bool] = None) -> list[Spectrum]:
    """``full_spectrum`` over many matrices, results in input order."""
    if progress is None:
        progress = get_config().show_progress
    return [full_spectrum(A, tol) for A in tqdm(matrices, desc="spectra", disable=not progress)]


# Closed-form families


def _vec(values, name: str) -> tuple[float, float]:
    arr = np.asarray(values, dtype=float)
    if arr.shape != (2,) or not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} must be two finite reals")
    return float(arr[0]), float(arr[1])


def _finite(*values: float) -> None:
    if not all(np.isfinite(values)):
        raise ValueError("family parameters must be finite")


@dataclass(frozen=True)
class DiagCA:
    """``diag(c, c, a)``."""

    c: float
    a: float

    def __post_init__(self):
        _finite(self.c, self.a)

    def matrix(self) -> Mat3:
        return Mat3(np.diag([self.c, self.c, self.a]))


@dataclass(frozen=True)
class ZeroTilde:
    """``[[0, u], [vᵀ, a]]``."""

    u: tuple[float, float]
    v: tuple[float, float]
    a: float

    def __post_init__(self):
        object.__setattr__(self, "u", _vec(self.u, "u"))
        object.__setattr__(self, "v", _vec(self.v, "v"))
        _finite(self.a)

    def matrix(self) -> Mat3:
        return Mat3.from_blocks(np.zeros((2, 2)), self.u, self.v, self.a)


@dataclass(frozen=True)
class CIva:
    """``[[cI, 0], [vᵀ, a]]``."""

    c: float
    v: tuple[float, float]
    a: float

    def __post_init__(self):
        object.__setattr__(self, "v", _vec(self.v, "v"))
        _finite(self.c, self.a)

    def matrix(self) -> Mat3:
        return Mat3.from_blocks(self.c * np.eye(2), (0.0, 0.0), self.v, self.a)


@dataclass(frozen=True)
class OffDiag:
    """``[[0, c, 0], [d, 0, 0], [v1, v2, a]]``."""

    c: float
    d: float
    v1: float
    v2: float
    a: float

    def __post_init__(self):
        _finite(self.c, self.d, self.v1, self.v2, self.a)

    def matrix(self) -> Mat3:
        return Mat3([[0.0, self.c, 0.0], [self.d, 0.0, 0.0], [self.v1, self.v2, self.a]])


@dataclass(frozen=True)
class General:
    A: Mat3 = field(default_factory=lambda: Mat3(np.zeros((3, 3))))

    def matrix(self) -> Mat3:
        return Mat3.coerce(self.A)


FamilyTag = Union[DiagCA, ZeroTilde, CIva, OffDiag, General]


def _diag_ca(f: DiagCA) -> Spectrum:
    pts = [LEigenvalue(f.a, interior=True, interior_witness=_lift((0.0, 0.0)))]
    if f.c <= f.a:
        s = 0.5 * (f.a - f.c)
        pts.append(LEigenvalue(0.5 * (f.a + f.c), boundary=True, boundary_witness=_lift((1.0, 0.0)), mu=f.c, s=s))
    return Spectrum.canonical(pts)


def _zero_tilde(f: ZeroTilde) -> Spectrum:
    u, v, a = np.array(f.u), np.array(f.v), f.a
    nu, nv = float(np.linalg.norm(u)), float(np.linalg.norm(v))
    if nu == 0.0 and nv == 0.0:
        raise DomainError("u and v must not both be zero")
    vu = float(v @ u)
    pts: list[LEigenvalue] = []
    intervals: list[Interval] = []

    # standard eigenvalue 0
    if nu == 0.0:
        if abs(a) < nv:
            pts.append(LEigenvalue(0.0, interior=True, interior_witness=_lift(-a * v / nv**2)))
        if abs(a) <= nv:
            t = np.sqrt(max(0.0, 1.0 - (a / nv) ** 2))
            xi = (-a * v / nv + t * np.array([-v[1], v[0]])) / nv
            pts.append(LEigenvalue(0.0, boundary=True, boundary_witness=_lift(xi), mu=0.0, s=0.0))

    # standard eigenvalues λ != 0 solve λ² - aλ - vᵀu = 0 with ξ = u/λ
    disc = a * a + 4.0 * vu
    if disc >= 0.0:
        for lam in {0.5 * (a - np.sqrt(disc)), 0.5 * (a + np.sqrt(disc))}:
            if lam == 0.0:
                continue
            if abs(lam) > nu and not np.isclose(abs(lam), nu, rtol=1e-12, atol=1e-12):
                pts.append(LEigenvalue(lam, interior=True, interior_witness=_lift(u / lam)))
            elif np.isclose(abs(lam), nu, rtol=1e-12, atol=1e-12):
                pts.append(LEigenvalue(lam, boundary=True, boundary_witness=_lift(u / lam), mu=lam, s=0.0))

    # nonstandard (s > 0) boundary eigenvalues
    if nu > 0.0:
        if vu + a * nu - nu**2 > 0.0:
            lam = (a * nu + nu**2 + vu) / (2.0 * nu)
            pts.append(LEigenvalue(lam, boundary=True, boundary_witness=_lift(u / nu), mu=nu, s=lam - nu))
        if nu**2 + a * nu - vu > 0.0:
            lam = (a * nu - nu**2 - vu) / (2.0 * nu)
            pts.append(LEigenvalue(lam, boundary=True, boundary_witness=_lift(-u / nu), mu=-nu, s=lam + nu))
    else:
        lo, hi = 0.5 * (a - nv), 0.5 * (a + nv)
        if hi > 0.0:
            intervals.append(Interval(max(lo, 0.0), hi, ScalarBlock(0.0, f.v, a)))
    return Spectrum.canonical(pts, intervals)


def _ci_va(f: CIva) -> Spectrum:
    c, a = f.c, f.a
    v = np.array(f.v)
    nv = float(np.linalg.norm(v))
    if nv == 0.0:
        raise DomainError("v must be nonzero")
    block = ScalarBlock(c, f.v, a)
    interior = [LEigenvalue(a, interior=True, interior_witness=_lift((0.0, 0.0)))]
    intervals: list[Interval] = []
    points: list[LEigenvalue] = []
    if c < a - nv:
        intervals.append(Interval(0.5 * (c + a - nv), 0.5 * (c + a + nv), block))
    elif c == a - nv:
        intervals.append(Interval(c, nv + c, block))
    elif c < a + nv:
        interior.append(LEigenvalue(c, interior=True, interior_witness=_lift((c - a) * v / nv**2)))
        intervals.append(Interval(c, 0.5 * (c + a + nv), block))
    elif c == a + nv:
        points.append(LEigenvalue(c, boundary=True, boundary_witness=_lift(v / nv), mu=c, s=0.0))
    return Spectrum.canonical(interior + points, intervals)


def _offdiag_kernel(c: float, d: float, mu: float) -> np.ndarray:
    # unit kernel vector of [[-μ, c], [d, -μ]]
    k = np.array([c, mu]) if (c, mu) != (0.0, 0.0) else np.array([mu, d])
    return k / np.linalg.norm(k)


def _off_diag(f: OffDiag) -> Spectrum:
    c, d, a = f.c, f.d, f.a
    if c * d < 0.0:
        raise DomainError(f"off-diagonal family needs cd >= 0, got c={c!r}, d={d!r}")
    if c == 0.0 and d == 0.0:
        raise DomainError("off-diagonal family needs c and d not both zero")
    v = np.array([f.v1, f.v2])
    root = float(np.sqrt(c * d))
    pts = [LEigenvalue(a, interior=True, interior_witness=_lift((0.0, 0.0)))]
    for mu in sorted({root, -root}):
        k = _offdiag_kernel(c, d, mu)
        vk = float(v @ k)
        for sign in (1.0, -1.0):
            s = 0.5 * (sign * vk + a - mu)
            if s >= 0.0:
                pts.append(LEigenvalue(mu + s, boundary=True, boundary_witness=_lift(sign * k), mu=mu, s=s))
        if mu == a:
            pts.append(LEigenvalue(mu, interior=True, interior_witness=_lift((0.0, 0.0))))
        elif abs(mu - a) < abs(vk):
            pts.append(LEigenvalue(mu, interior=True, interior_witness=_lift((mu - a) / vk * k)))
    return Spectrum.canonical(pts)


def closed_form_spectrum(f: FamilyTag) -> Spectrum:
    """The L-spectrum of a structured family, straight from its closed form."""
    if isinstance(f, DiagCA):
        return _diag_ca(f)
    if isinstance(f, ZeroTilde):
        return _zero_tilde(f)
    if isinstance(f, CIva):
        return _ci_va(f)
    if isinstance(f, OffDiag):
        return _off_diag(f)
    raise UnsupportedFamily(f"no closed form for {type(f).__name__}")
