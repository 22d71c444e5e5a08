"""Diagonalization and bulk/edge/corner classification of eigenmodes.

A mode counts as a corner mode when its energy sits inside a window
around zero AND enough of its weight lives in the corner patches; the
energy test alone is not reliable because dispersive bands can reach
E = 0 near the gap-closing lines. Degenerate eigenvalues come with an
arbitrary basis, so each degenerate block is rotated to diagonalize the
corner-patch weight operator before thresholding; the resulting
corner-mode count is basis independent.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SpectrumError
from .lattice import HERMITICITY_TOL, LatticeSpec, physical_coords

# relative width used to group eigenvalues into degenerate blocks
DEGENERACY_TOL = 1e-8


@dataclass
class EigenSystem:
    """Ascending eigenvalues and matching orthonormal eigenvectors (columns)."""

    energies: np.ndarray
    vectors: np.ndarray

    @property
    def n(self) -> int:
        return self.energies.size


@dataclass(frozen=True)
class ClassifierThresholds:
    """Tunable windows for the bulk/edge/corner labeling."""

    eps_zero: float = 0.05  # |E| window for corner candidates
    w_corner: float = 0.5  # min weight in the corner patches
    w_edge: float = 0.6  # min weight in the boundary region
    corner_patch: int = 3  # corner patch is a patch x patch site square
    boundary_ring: int = 2  # outermost rows counted as boundary

    def __post_init__(self):
        if not (0 < self.w_corner <= 1 and 0 < self.w_edge <= 1):
            raise SpectrumError("weight thresholds must be in (0, 1]")
        if self.eps_zero <= 0 or self.corner_patch < 1 or self.boundary_ring < 1:
            raise SpectrumError("thresholds out of range")


@dataclass
class ModeCatalog:
    """Per-mode classification and localization metrics.

    vectors holds the (possibly block-rotated) eigenbasis actually used
    for the labels; classes entries are 'bulk', 'edge', or 'corner'.
    """

    energies: np.ndarray
    vectors: np.ndarray
    classes: np.ndarray
    corner_weight: np.ndarray
    boundary_weight: np.ndarray
    ipr: np.ndarray

    @property
    def zecm_count(self) -> int:
        return int(np.sum(self.classes == "corner"))

    def counts(self) -> dict[str, int]:
        return {c: int(np.sum(self.classes == c)) for c in ("bulk", "edge", "corner")}

    def zecm_vectors(self) -> np.ndarray:
        """Columns of the corner-class modes (possibly empty)."""
        return self.vectors[:, self.classes == "corner"]


def diagonalize(H: np.ndarray) -> EigenSystem:
    """Full spectrum of a Hermitian matrix; rejects non-Hermitian input."""
    dev = np.max(np.abs(H - H.conj().T))
    if dev > HERMITICITY_TOL:
        raise SpectrumError(f"matrix is not Hermitian: max |H - H^dag| = {dev:.3e}")
    energies, vectors = np.linalg.eigh(H)
    return EigenSystem(energies, vectors)


def eigenvalues(H: np.ndarray) -> np.ndarray:
    """Eigenvalues only; cheaper than diagonalize for gap scans."""
    dev = np.max(np.abs(H - H.conj().T))
    if dev > HERMITICITY_TOL:
        raise SpectrumError(f"matrix is not Hermitian: max |H - H^dag| = {dev:.3e}")
    return np.linalg.eigvalsh(H)


def ipr(vector: np.ndarray) -> float:
    """Inverse participation ratio sum |v|^4; 1 = one site, 1/N = uniform."""
    v = np.asarray(vector, dtype=complex)
    norm2 = float(np.sum(np.abs(v) ** 2))
    if norm2 == 0:
        raise SpectrumError("cannot take IPR of a zero vector")
    p = np.abs(v) ** 2 / norm2
    return float(np.sum(p**2))


def corner_patch_masks(spec: LatticeSpec, patch: int) -> np.ndarray:
    """(4, n_sites) booleans for the patch x patch squares at corners A, B, C, D."""
    X, Y = physical_coords(spec).T
    W, H = spec.width, spec.height
    return np.array(
        [
            (X < patch) & (Y < patch),  # A: bottom-left
            (X < patch) & (Y >= H - patch),  # B: top-left
            (X >= W - patch) & (Y < patch),  # C: bottom-right
            (X >= W - patch) & (Y >= H - patch),  # D: top-right
        ]
    )


def boundary_mask(spec: LatticeSpec, th: ClassifierThresholds) -> np.ndarray:
    """Outermost boundary_ring rows, extended with the corner patches.

    The union keeps corner patches a subset of the boundary region even
    when the patch reaches deeper than the ring, so corner_weight <=
    boundary_weight always holds.
    """
    X, Y = physical_coords(spec).T
    W, H = spec.width, spec.height
    ring = np.minimum.reduce([X, Y, W - 1 - X, H - 1 - Y]) < th.boundary_ring
    return ring | corner_patch_masks(spec, th.corner_patch).any(axis=0)


def _rotate_degenerate_blocks(es: EigenSystem, corner_any: np.ndarray) -> np.ndarray:
    """Diagonalize the corner-patch weight inside each degenerate block."""
    V = es.vectors.copy()
    E = es.energies
    tol = DEGENERACY_TOL * max(1.0, float(np.max(np.abs(E))) if E.size else 1.0)
    start = 0
    for k in range(1, E.size + 1):
        if k == E.size or E[k] - E[k - 1] > tol:
            if k - start > 1:
                block = V[:, start:k]
                w_op = block.conj().T @ (corner_any[:, None] * block)
                _, rot = np.linalg.eigh(w_op)
                V[:, start:k] = block @ rot
            start = k
    return V


def classify_modes(
    es: EigenSystem, spec: LatticeSpec, th: ClassifierThresholds | None = None
) -> ModeCatalog:
    """Label every mode bulk/edge/corner; total over classes is n_sites."""
    if spec.boundary != "open":
        raise SpectrumError("mode classification needs an open-boundary lattice")
    th = th or ClassifierThresholds()
    corner_any = corner_patch_masks(spec, th.corner_patch).any(axis=0).astype(float)
    boundary = boundary_mask(spec, th).astype(float)

    V = _rotate_degenerate_blocks(es, corner_any)
    intensity = np.abs(V) ** 2
    corner_w = corner_any @ intensity
    boundary_w = boundary @ intensity
    ipr_v = np.sum(intensity**2, axis=0)

    classes = np.full(es.n, "bulk", dtype="<U6")
    is_corner = (np.abs(es.energies) <= th.eps_zero) & (corner_w >= th.w_corner)
    classes[boundary_w >= th.w_edge] = "edge"
    classes[is_corner] = "corner"
    return ModeCatalog(es.energies.copy(), V, classes, corner_w, boundary_w, ipr_v)


def zero_gap(energies_or_es) -> float:
    """Fifth-smallest |E|: the gap edge at zero, robust to up to 4 corner modes."""
    E = energies_or_es.energies if isinstance(energies_or_es, EigenSystem) else energies_or_es
    E = np.asarray(E, dtype=float)
    if E.size < 5:
        raise SpectrumError(f"need at least 5 modes, got {E.size}")
    return float(np.sort(np.abs(E))[4])


def count_zecm(cat: ModeCatalog) -> int:
    """Number of corner-class modes; 0, 2, or 4 away from phase boundaries."""
    return cat.zecm_count


def zecm_patch_weights(cat: ModeCatalog, spec: LatticeSpec, patch: int = 3) -> np.ndarray:
    """Share of the summed corner-mode intensity in each corner patch (A,B,C,D).

    Uses the basis-invariant total intensity of the corner-class modes,
    so degenerate corner modes do not scramble the location signature.
    Returns zeros when there are no corner modes.
    """
    zv = cat.zecm_vectors()
    if zv.shape[1] == 0:
        return np.zeros(4)
    total = np.sum(np.abs(zv) ** 2, axis=1)
    masks = corner_patch_masks(spec, patch)
    w = masks @ total
    return w / np.sum(total)
