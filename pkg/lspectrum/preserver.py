"""
Linear maps on 3x3 matrices that preserve the Lorentz spectrum.

Every such map is a congruence ``A -> Q̂ A Q̂ᵀ`` with ``Q̂ = Q ⊕ [1]`` and
``Q`` a 2x2 orthogonal matrix.  Maps are stored as 9x9 matrices acting on
``vec(A)`` in column-major order, so the basis order is
``E11, E21, E31, E12, E22, E32, E13, E23, E33``.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from tqdm import tqdm

from .conf import get_config
from .exceptions import NotCanonical, NotOrthogonal
from .oracle import spectra_equal
from .smallmat import Mat3, absmax
from .spectrum import Spectrum, full_spectrum

logger = logging.getLogger(__name__)

ORTHO_TOL = 1e-10
BASIS = "colmajor-eij"


def vec(A) -> np.ndarray:
    return np.asarray(A, dtype=float).reshape(9, order="F")


def unvec(x) -> Mat3:
    return Mat3(np.asarray(x, dtype=float).reshape((3, 3), order="F"))


def unit_matrix(i: int, j: int) -> Mat3:
    """``E_ij`` with 1-based indices, as in ``E31``."""
    out = np.zeros((3, 3))
    out[i - 1, j - 1] = 1.0
    return Mat3(out)


def basis_label(k: int) -> str:
    return f"E{k % 3 + 1}{k // 3 + 1}"


@dataclass(frozen=True, eq=False)
class LinearMap3:
    matrix: np.ndarray

    def __post_init__(self):
        arr = np.array(self.matrix, dtype=float)
        if arr.shape != (9, 9):
            raise ValueError(f"a linear map on M3 is a 9x9 matrix, got {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("linear map entries must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "matrix", arr)

    @classmethod
    def from_function(cls, f: Callable[[np.ndarray], np.ndarray]) -> "LinearMap3":
        """Tabulate a linear ``f`` on the basis ``E_ij``."""
        columns = [vec(f(np.eye(9)[k].reshape((3, 3), order="F"))) for k in range(9)]
        return cls(np.column_stack(columns))

    @classmethod
    def identity(cls) -> "LinearMap3":
        return cls(np.eye(9))

    @classmethod
    def transpose(cls) -> "LinearMap3":
        return cls.from_function(lambda A: A.T)

    @classmethod
    def scaling(cls, factor: float) -> "LinearMap3":
        return cls(factor * np.eye(9))

    def apply(self, A) -> Mat3:
        return unvec(self.matrix @ vec(A))

    def compose(self, other: "LinearMap3") -> "LinearMap3":
        """``self ∘ other``."""
        return LinearMap3(self.matrix @ other.matrix)


def apply_map(m: LinearMap3, A) -> Mat3:
    return m.apply(A)


@dataclass(frozen=True, eq=False)
class OrthoQ:
    q: np.ndarray

    def __post_init__(self):
        arr = np.array(self.q, dtype=float)
        if arr.shape != (2, 2) or not np.all(np.isfinite(arr)):
            raise NotOrthogonal("Q must be a finite 2x2 matrix")
        err = absmax(arr.T @ arr - np.eye(2))
        if err > ORTHO_TOL:
            raise NotOrthogonal(f"max |QᵀQ - I| = {err:.3g} exceeds {ORTHO_TOL:g}")
        arr.setflags(write=False)
        object.__setattr__(self, "q", arr)

    @property
    def hat(self) -> np.ndarray:
        """``Q ⊕ [1]``."""
        out = np.eye(3)
        out[:2, :2] = self.q
        return out


def random_orthogonal(rng: np.random.Generator) -> OrthoQ:
    """Givens rotation with a uniform angle, second column flipped with probability 1/2."""
    t = rng.uniform(0.0, 2.0 * math.pi)
    q = np.array([[math.cos(t), -math.sin(t)], [math.sin(t), math.cos(t)]])
    if rng.integers(2):
        q[:, 1] = -q[:, 1]
    return OrthoQ(q)


def make_preserver(q) -> LinearMap3:
    if not isinstance(q, OrthoQ):
        q = OrthoQ(q)
    hat = q.hat
    # vec(Q̂ A Q̂ᵀ) = (Q̂ ⊗ Q̂) vec(A) for column-major vec
    return LinearMap3(np.kron(hat, hat))


@dataclass(frozen=True)
class PreserverVerdict:
    is_preserver: bool
    witness: Optional[Mat3] = None
    spectra: Optional[tuple[Spectrum, Spectrum]] = None
    q_recovered: Optional[OrthoQ] = None
    reason: str = ""
    witness_label: Optional[str] = None


# Battery


def _s1(v, a: float) -> Mat3:
    return Mat3.from_blocks(np.zeros((2, 2)), (0.0, 0.0), v, a)


def _nonzero_vec(rng: np.random.Generator) -> np.ndarray:
    v = rng.uniform(-1.0, 1.0, 2)
    while np.linalg.norm(v) < 0.1:
        v = rng.uniform(-1.0, 1.0, 2)
    return v


def battery_entries(seed: int = 0, count: Optional[int] = None) -> list[tuple[str, Mat3]]:
    """
    Labelled test matrices: the structural families first, dense random ones after.

    The order is fixed so that a failing map reports the most telling witness:
    the transpose map, for instance, first fails on ``E31``.
    """
    count = get_config().battery_count if count is None else count
    if count < 30:
        raise ValueError(f"a battery needs at least 30 matrices, got {count}")
    rng = np.random.default_rng(seed)

    entries: list[tuple[str, Mat3]] = [
        ("identity", Mat3(np.eye(3))),
        ("scaled-identity", Mat3(2.0 * np.eye(3))),
        ("scaled-identity", Mat3(-np.eye(3))),
        ("E31", unit_matrix(3, 1)),
        ("E32", unit_matrix(3, 2)),
        ("E13", unit_matrix(1, 3)),
        ("E23", unit_matrix(2, 3)),
    ]

    v = _nonzero_vec(rng)
    nv = float(np.linalg.norm(v))
    entries += [
        ("C1", _s1(v, -0.5 * nv)),
        ("C2", _s1(v, -nv)),
        ("C3", _s1(v, -2.0 * nv - 0.5)),
        ("C4", _s1((0.0, 0.0), rng.uniform(0.5, 2.0))),
        ("C5", _s1((0.0, 0.0), -rng.uniform(0.0, 2.0))),
    ]

    for shift in (-0.5, 1.0, 2.0):
        c = rng.uniform(-1.0, 1.0)
        w = _nonzero_vec(rng)
        nw = float(np.linalg.norm(w))
        entries.append(("infinite", Mat3.from_blocks(c * np.eye(2), (0.0, 0.0), w, c + shift * nw)))

    entries += [
        ("S2", Mat3.from_blocks(rng.uniform(-2.0, 2.0, (2, 2)), (0.0, 0.0), (0.0, 0.0), 0.0)),
        ("S3", Mat3.from_blocks(np.zeros((2, 2)), rng.uniform(-2.0, 2.0, 2), (0.0, 0.0), 0.0)),
    ]
    u = _nonzero_vec(rng)
    entries.append(("symmetric-zero-block", Mat3.from_blocks(np.zeros((2, 2)), u, u, rng.uniform(-1.0, 1.0))))

    while len(entries) < count:
        entries.append(("dense", Mat3(rng.uniform(-2.0, 2.0, (3, 3)))))
    logger.info("battery: seed=%d, %d matrices", seed, len(entries))
    return entries[:count]


def battery_gen(seed: int = 0, count: Optional[int] = None) -> list[Mat3]:
    return [A for _, A in battery_entries(seed, count)]


def s1_class(A, tol: float = 1e-8) -> Optional[str]:
    """Which of the classes ``C1``..``C5`` a matrix ``[[0, 0], [vᵀ, a]]`` belongs to."""
    A = Mat3.coerce(A)
    tau = tol * max(1.0, absmax(A.entries))
    if absmax(A.tilde, A.u) > tau:
        return None
    nv = float(np.linalg.norm(A.v))
    a = A.a
    if nv > tau:
        if a + nv > tau:
            return "C1"
        if a + nv >= -tau:
            return "C2"
        return "C3"
    return "C4" if a > tau else "C5"


# Verdicts


def _resolve_tol(tol: Optional[float]) -> float:
    tol = get_config().tol if tol is None else tol
    if tol <= 0:
        raise ValueError("tol must be positive")
    return tol


def _spectra(m: LinearMap3, A: Mat3, tol: float) -> tuple[Spectrum, Spectrum]:
    return full_spectrum(A, tol), full_spectrum(m.apply(A), tol)


def _failure(m: LinearMap3, A: Mat3, tol: float, reason: str, label: Optional[str] = None, q=None) -> PreserverVerdict:
    logger.info("not a preserver: %s", reason)
    return PreserverVerdict(False, A, _spectra(m, A, tol), q, reason, label)


def _battery_loop(m: LinearMap3, seed: int, count: Optional[int], tol: float, compare) -> Optional[PreserverVerdict]:
    entries = battery_entries(seed, count)
    show = get_config().show_progress
    for index, (label, A) in enumerate(tqdm(entries, desc="battery", disable=not show)):
        before, after = _spectra(m, A, tol)
        problem = compare(before, after)
        if problem:
            logger.info("battery entry %d (%s) fails: %s", index, label, problem)
            return PreserverVerdict(False, A, (before, after), None, f"entry {index} ({label}): {problem}", label)
    return None


def recover_q(m: LinearMap3, tol: Optional[float] = None) -> OrthoQ:
    """Read ``Q`` off the images of ``E31`` and ``E32``."""
    tol = _resolve_tol(tol)
    columns = []
    for j in (1, 2):
        B = m.apply(unit_matrix(3, j)).entries.copy()
        bottom = B[2, :2].copy()
        B[2, :2] = 0.0
        if absmax(B) > tol:
            raise NotCanonical(f"image of E3{j} has entries outside its bottom-left block")
        columns.append(bottom)
    q = np.column_stack(columns)
    err = absmax(q.T @ q - np.eye(2))
    if err > tol:
        raise NotCanonical(f"[p q] is not orthogonal (max |QᵀQ - I| = {err:.3g})")
    try:
        return OrthoQ(q)
    except NotOrthogonal as exc:
        raise NotCanonical(str(exc)) from exc


def check_preserver(m: LinearMap3, seed: int = 0, count: Optional[int] = None, tol: Optional[float] = None) -> PreserverVerdict:
    """
    Sampling check of ``σ_L(m(A)) = σ_L(A)``, closed by an exact check of the canonical form.

    A map that survives the battery must still equal ``make_preserver(q)``
    for the ``q`` read off ``m``; otherwise the verdict is negative and the
    witness is the basis matrix whose image differs the most.
    """
    tol = _resolve_tol(tol)
    identity = Mat3(np.eye(3))
    if absmax(m.apply(identity).entries - np.eye(3)) > tol:
        return _failure(m, identity, tol, "map(I) != I", "identity")

    if np.linalg.matrix_rank(m.matrix, tol=tol) < 9:
        kernel = unvec(np.linalg.svd(m.matrix)[2][-1])
        return _failure(m, kernel, tol, "map is not invertible", "kernel")

    def compare(before: Spectrum, after: Spectrum) -> str:
        diff = spectra_equal(before, after, tol)
        return "" if diff.equal else f"Hausdorff distance {diff.hausdorff_distance:.3g}"

    verdict = _battery_loop(m, seed, count, tol, compare)
    if verdict is not None:
        return verdict

    try:
        q = recover_q(m, tol)
    except NotCanonical as exc:
        return _failure(m, unit_matrix(3, 1), tol, f"battery passed but {exc}", "E31")
    try:
        canonical = make_preserver(q)
    except NotOrthogonal as exc:
        return _failure(m, unit_matrix(3, 1), tol, f"battery passed but {exc}", "E31", q)

    column_error = np.max(np.abs(m.matrix - canonical.matrix), axis=0)
    worst = int(np.argmax(column_error))
    if column_error[worst] > tol:
        reason = f"battery passed but the map differs from the canonical one by {column_error[worst]:.3g}"
        return _failure(m, unvec(np.eye(9)[worst]), tol, reason, basis_label(worst), q)
    return PreserverVerdict(True, q_recovered=q)


def check_nature(m: LinearMap3, seed: int = 0, count: Optional[int] = None, tol: Optional[float] = None) -> PreserverVerdict:
    """Compare interior and boundary spectra separately across the battery."""
    tol = _resolve_tol(tol)

    def compare(before: Spectrum, after: Spectrum) -> str:
        if not spectra_equal(before.interior(), after.interior(), tol).equal:
            return "interior spectra differ"
        if not spectra_equal(before.boundary(), after.boundary(), tol).equal:
            return "boundary spectra differ"
        return ""

    return _battery_loop(m, seed, count, tol, compare) or PreserverVerdict(True)
