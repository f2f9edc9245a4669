"""
Exact-shape dense linear algebra for dimensions up to 3.

Everything here is a pure function of its inputs.  Matrices are plain
``numpy`` float arrays; ``Mat3`` adds the block view
``A = [[Ã, u], [vᵀ, a]]`` used throughout the spectrum solvers.

Rank and multiplicity decisions use the relative tolerance
``τ = tol · max(1, largest absolute entry)`` so that they are scale
invariant.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np
import numpy.typing as npt
from numpy.polynomial import polynomial as P

from .exceptions import ZeroPolynomial

logger = logging.getLogger(__name__)

Mat2 = npt.NDArray[np.float64]
Vec2 = npt.NDArray[np.float64]

EPS = float(np.finfo(float).eps)
# backward error of the companion eigenvalues, in units of EPS·Σ|p_i||μ|^i
ROUNDING_SLACK = 1e3


def absmax(*arrays) -> float:
    """Largest absolute entry over all given arrays (0.0 when all are empty)."""
    best = 0.0
    for arr in arrays:
        arr = np.asarray(arr, dtype=float)
        if arr.size:
            best = max(best, float(np.max(np.abs(arr))))
    return best


def scaled_tol(tol: float, *arrays) -> float:
    return tol * max(1.0, absmax(*arrays))


def _finite_array(values, shape: tuple[int, ...], name: str) -> np.ndarray:
    arr = np.array(values, dtype=float)
    if arr.shape != shape:
        raise ValueError(f"{name} must have shape {shape}, got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} entries must be finite")
    arr.setflags(write=False)
    return arr


def as_mat2(values) -> Mat2:
    return _finite_array(values, (2, 2), "Mat2")


def as_vec2(values) -> Vec2:
    return _finite_array(values, (2,), "Vec2")


@dataclass(frozen=True, eq=False)
class Mat3:
    """A finite 3x3 real matrix together with its block partition."""

    entries: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "entries", _finite_array(self.entries, (3, 3), "Mat3"))

    @classmethod
    def coerce(cls, value) -> "Mat3":
        return value if isinstance(value, cls) else cls(value)

    @classmethod
    def from_blocks(cls, tilde, u, v, a: float) -> "Mat3":
        out = np.zeros((3, 3))
        out[:2, :2] = as_mat2(tilde)
        out[:2, 2] = as_vec2(u)
        out[2, :2] = as_vec2(v)
        out[2, 2] = float(a)
        return cls(out)

    @property
    def tilde(self) -> Mat2:
        return self.entries[:2, :2]

    @property
    def u(self) -> Vec2:
        return self.entries[:2, 2]

    @property
    def v(self) -> Vec2:
        return self.entries[2, :2]

    @property
    def a(self) -> float:
        return float(self.entries[2, 2])

    def __array__(self, dtype=None, copy=None):
        return np.array(self.entries, dtype=dtype)

    def __eq__(self, other):
        if not isinstance(other, Mat3):
            return NotImplemented
        return bool(np.array_equal(self.entries, other.entries))

    def __hash__(self):
        return hash(self.entries.tobytes())

    def __repr__(self):
        return f"Mat3({self.entries.tolist()!r})"

    def tolist(self) -> list[list[float]]:
        return self.entries.tolist()


def det2(M) -> float:
    M = np.asarray(M, dtype=float)
    return float(M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0])


def adj2(M) -> Mat2:
    """Adjugate of a 2x2 matrix: ``M @ adj2(M) == det(M) * I``."""
    M = np.asarray(M, dtype=float)
    return np.array([[M[1, 1], -M[0, 1]], [-M[1, 0], M[0, 0]]])


class Eig2(NamedTuple):
    value: float
    multiplicity: int
    vector: Vec2


def _kernel_vector(N) -> Vec2:
    # unit vector orthogonal to the dominant row of a rank-1 2x2 matrix
    N = np.asarray(N, dtype=float)
    row = N[0] if np.linalg.norm(N[0]) >= np.linalg.norm(N[1]) else N[1]
    k = np.array([-row[1], row[0]])
    norm = np.linalg.norm(k)
    if norm == 0.0:
        return np.array([1.0, 0.0])
    return k / norm


def eig2_real(M, tol: float) -> list[Eig2]:
    """
    Real eigenvalues of a 2x2 matrix with geometric multiplicity and a unit eigenvector.

    A complex pair gives an empty list.  A double root is reported with
    multiplicity 2 only when ``M`` is a scalar matrix at tolerance; two
    roots are one only when they differ by at most ``tol·max(1, ‖M‖_max)``.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    M = np.asarray(M, dtype=float)
    scale = max(1.0, absmax(M))
    tr = float(M[0, 0] + M[1, 1])
    det = det2(M)
    # tr² - 4 det without the cancellation; the roots differ by sqrt(|disc|)
    disc = float((M[0, 0] - M[1, 1]) ** 2 + 4.0 * M[0, 1] * M[1, 0])
    gate = (tol * scale) ** 2

    mu = tr / 2.0
    N = M - mu * np.eye(2)
    if absmax(N) <= tol * scale:
        return [Eig2(mu, 2, np.array([1.0, 0.0]))]
    if disc < -gate:
        return []
    if disc <= gate:
        return [Eig2(mu, 1, _kernel_vector(N))]

    # stable quadratic formula for t^2 - tr t + det
    root = np.sqrt(disc)
    q = 0.5 * (tr + np.copysign(root, tr))
    values = sorted([q, det / q])
    return [Eig2(float(mu), 1, _kernel_vector(M - mu * np.eye(2))) for mu in values]


def pinv_small(M, tol: float) -> np.ndarray:
    """
    Moore-Penrose pseudoinverse of a matrix with at most 3 rows and 2 columns.

    Square invertible inputs use the exact inverse; numerically rank-1 inputs
    use ``Mᵀ / tr(MᵀM)``; everything else goes through a compact SVD.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    M = np.atleast_2d(np.asarray(M, dtype=float))
    rows, cols = M.shape
    if rows > 3 or cols > 2:
        raise ValueError(f"pinv_small handles at most 3x2 inputs, got {M.shape}")
    tau = scaled_tol(tol, M)

    if rows == cols == 1 and abs(M[0, 0]) > tau:
        return np.array([[1.0 / M[0, 0]]])
    if rows == cols == 2:
        det = det2(M)
        if abs(det) > tau * max(1.0, absmax(M)):
            return adj2(M) / det

    U, sigma, Vt = np.linalg.svd(M, full_matrices=False)
    rank = int(np.sum(sigma > tau))
    if rank == 0:
        return np.zeros((cols, rows))
    if rank == 1:
        return M.T / float(np.trace(M.T @ M))
    return (Vt.T / sigma) @ U.T


class RealPoly(NamedTuple):
    """Real polynomial, coefficients in ascending degree (at most 5 of them)."""

    coefficients: tuple[float, ...]

    @classmethod
    def of(cls, *coefficients: float) -> "RealPoly":
        if len(coefficients) > 5:
            raise ValueError("RealPoly holds at most degree 4")
        return cls(tuple(float(c) for c in coefficients))

    def __call__(self, x: float) -> float:
        return float(P.polyval(x, self.coefficients))

    def trimmed(self, tol: float) -> np.ndarray:
        coeffs = np.array(self.coefficients, dtype=float)
        if coeffs.size == 0 or absmax(coeffs) <= tol:
            raise ZeroPolynomial()
        cutoff = tol * max(1.0, absmax(coeffs))
        last = int(np.flatnonzero(np.abs(coeffs) > cutoff)[-1])
        return coeffs[: last + 1]


class Root(NamedTuple):
    value: float
    multiplicity: int


def cluster_roots(values, gate: float, joins: Callable[[complex, list[complex]], bool]) -> list[tuple[complex, int]]:
    """
    Group computed eigenvalues that are one multiple root scattered by rounding.

    A multiple eigenvalue comes out of LAPACK as a tight cluster whose
    centroid is far more accurate than any member.  Values are visited by
    real part; a value joins the current group only when the enlarged group
    stays within ``gate`` (relative) of its centroid and ``joins(centroid,
    members)`` confirms the centroid is a multiple root.  Close but distinct
    roots therefore stay apart.
    """
    groups: list[list[complex]] = []
    for z in sorted((complex(z) for z in values), key=lambda z: (z.real, z.imag)):
        if groups:
            candidate = groups[-1] + [z]
            center = complex(np.mean(candidate))
            spread = max(abs(w - center) for w in candidate)
            if spread <= gate * max(1.0, abs(center)) and joins(center, candidate):
                groups[-1] = candidate
                continue
        groups.append([z])
    return [(complex(np.mean(group)), len(group)) for group in groups]


def _scatter_radius(coeffs: np.ndarray, center: complex, m: int) -> float:
    # rounding scatters an m-fold root over (β / |p^(m)(c)/m!|)^(1/m)
    weight = float(np.sum(np.abs(coeffs) * max(1.0, abs(center)) ** np.arange(coeffs.size)))
    beta = ROUNDING_SLACK * EPS * weight
    lead = abs(complex(P.polyval(center, P.polyder(coeffs, m)))) / math.factorial(m)
    if lead == 0.0:
        return math.inf
    return (beta / lead) ** (1.0 / m)


def real_eigenvalues(E, tol: float, imag_gate: float = 1e-4) -> list[Root]:
    """
    Real eigenvalues of a small square matrix with algebraic multiplicities.

    Computed eigenvalues form one cluster only while the cluster centroid is
    an eigenvalue up to rounding, ``σ_min(E - cI) <= ROUNDING_SLACK·EPS·max(1,
    ‖E‖_max)``; the surviving values are merged when within ``tol``.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    E = np.asarray(E, dtype=float)
    floor = scaled_tol(ROUNDING_SLACK * EPS, E)
    eye = np.eye(E.shape[0])

    def joins(center: complex, members: list[complex]) -> bool:
        return float(np.linalg.svd(E - center.real * eye, compute_uv=False)[-1]) <= floor

    found = []
    for center, count in cluster_roots(np.linalg.eigvals(E), imag_gate, joins):
        if abs(center.imag) <= imag_gate * max(1.0, abs(center)):
            found.append(Root(float(center.real), count))
    return _merge_within(found, tol)


def _merge_within(roots: list[Root], tol: float) -> list[Root]:
    roots = sorted(roots, key=lambda r: r.value)
    merged: list[Root] = []
    for root in roots:
        if merged and abs(root.value - merged[-1].value) <= tol * max(1.0, abs(root.value)):
            prev = merged.pop()
            root = Root(prev.value, prev.multiplicity + root.multiplicity)
        merged.append(root)
    return merged


def _polish(coeffs: np.ndarray, x: float, order: int, steps: int) -> float:
    # Newton on the (order)-th derivative: a root of multiplicity m is simple for p^(m-1)
    g = P.polyder(coeffs, order) if order else coeffs
    dg = P.polyder(g)
    for _ in range(steps):
        slope = P.polyval(x, dg)
        if slope == 0.0:
            break
        candidate = x - P.polyval(x, g) / slope
        if abs(P.polyval(candidate, coeffs)) <= abs(P.polyval(x, coeffs)):
            x = float(candidate)
    return x


def real_roots(p: RealPoly, tol: float, imag_gate: float = 1e-4, newton_steps: int = 2) -> list[Root]:
    """
    All real roots of a polynomial of degree <= 4, with multiplicities.

    Roots come from the companion matrix (``numpy.polynomial.polyroots``).
    Companion eigenvalues are one cluster only when their spread is what
    rounding does to a multiple root there; the centroid is then the root
    and the cluster size its multiplicity.  A candidate is kept only if it
    is (nearly) real and passes the residual test
    ``|p(μ)| <= tol (1 + ‖p‖₁ max(1,|μ|)^4)``; candidates within ``tol`` of
    each other are merged.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if not isinstance(p, RealPoly):
        p = RealPoly(tuple(float(c) for c in p))
    coeffs = p.trimmed(tol)
    degree = coeffs.size - 1
    if degree > 4:
        raise ValueError("real_roots handles degree <= 4")
    if degree == 0:
        return []

    # exact zero roots are factored out before the companion step
    zeros = int(np.flatnonzero(coeffs != 0.0)[0])
    eigs = [0j] * zeros
    if degree > zeros:
        eigs.extend(complex(z) for z in np.atleast_1d(P.polyroots(coeffs[zeros:])))

    norm1 = float(np.sum(np.abs(coeffs)))
    roots: list[Root] = []

    def joins(center: complex, members: list[complex]) -> bool:
        spread = max(abs(z - center) for z in members)
        return spread <= _scatter_radius(coeffs, center, len(members))

    for center, count in cluster_roots(eigs, imag_gate, joins):
        if abs(center.imag) > imag_gate * max(1.0, abs(center)):
            continue
        x = _polish(coeffs, center.real, count - 1, newton_steps)
        bound = tol * (1.0 + norm1 * max(1.0, abs(x)) ** 4)
        if abs(P.polyval(x, coeffs)) <= bound:
            roots.append(Root(x, count))
        else:
            logger.debug("discarding near-real root %r (residual above %g)", x, bound)

    return _merge_within(roots, tol)
