"""Driven-dissipative steady state, photon-number maps, and corner concentration.

With a coherent monochromatic pump P, uniform decay kappa, and detuning
omega_p (rotating-frame units), the per-site amplitudes solve

    [B - (omega_p + i*kappa/2) I] <a> + P = 0,

where B is the hopping matrix. kappa > 0 shifts the Hermitian spectrum
off the real axis, so the system always has one solution. The steady
state photon number (SSPN) is |<a_s>|^2, and the concentration factor
R = n_corner / (sum over the corner and its few neighbors) flags corner
modes when it stays above an empirical threshold (0.7 by default
elsewhere in the package).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SteadyStateError
from .lattice import CouplingSpec, LatticeSpec, SiteId, hamiltonian, physical_coords, site_index

RESIDUAL_REL_TOL = 1e-10

NEIGHBORHOOD_STRATEGIES = ("nearest6", "manhattan2", "patch3x3")


@dataclass(frozen=True)
class PumpSpec:
    """Driven sites with complex amplitudes, plus the pump detuning."""

    drives: tuple[tuple[SiteId, complex], ...]
    detuning: float = 0.0

    def __post_init__(self):
        if not self.drives or all(a == 0 for _, a in self.drives):
            raise SteadyStateError("pump needs at least one nonzero drive")

    @classmethod
    def corners(cls, spec: LatticeSpec, amplitude: complex = 1.0, detuning: float = 0.0):
        """Equal-amplitude drive on all four lattice corners."""
        return cls(tuple((c, amplitude) for c in spec.corners()), detuning)

    @classmethod
    def single(cls, site: SiteId, amplitude: complex = 1.0, detuning: float = 0.0):
        return cls(((site, amplitude),), detuning)

    def vector(self, spec: LatticeSpec) -> np.ndarray:
        p = np.zeros(spec.n_sites, dtype=complex)
        for site, amp in self.drives:
            p[site_index(site, spec)] += amp
        return p


@dataclass(frozen=True)
class DissipationSpec:
    """Uniform decay rate, units of the reference hop."""

    kappa: float = 0.03

    def __post_init__(self):
        if self.kappa <= 0:
            raise SteadyStateError(f"kappa must be > 0, got {self.kappa}")


@dataclass
class SteadyStateField:
    """Solved per-site amplitudes, SSPN, and the solve residual |Mx + P|."""

    amplitudes: np.ndarray
    sspn: np.ndarray
    residual: float


@dataclass
class ConcentrationReport:
    corner: SiteId
    neighborhood: list[SiteId]
    n_corner: float
    n_patch: float

    @property
    def ratio(self) -> float:
        return self.n_corner / self.n_patch


def solve_steady_state(
    H: np.ndarray, pump: PumpSpec, diss: DissipationSpec, spec: LatticeSpec
) -> SteadyStateField:
    """Solve x = -M^{-1} P with M = B - (omega_p + i*kappa/2) I."""
    p = pump.vector(spec)
    M = H - (pump.detuning + 0.5j * diss.kappa) * np.eye(spec.n_sites)
    x = np.linalg.solve(M, -p)
    # one refinement step keeps the residual well under the contract
    # even for kappa ~ 1e-4 where M is poorly conditioned
    r = M @ x + p
    x -= np.linalg.solve(M, r)
    residual = float(np.linalg.norm(M @ x + p))
    return SteadyStateField(x, np.abs(x) ** 2, residual)


def _corner_direction(corner: SiteId, spec: LatticeSpec) -> tuple[int, int, int, int]:
    """Corner physical coords plus inward unit steps (sx, sy)."""
    cx, cy = corner.physical
    sx = 1 if cx == 0 else -1
    sy = 1 if cy == 0 else -1
    if cx not in (0, spec.width - 1) or cy not in (0, spec.height - 1):
        raise SteadyStateError(f"{corner} is not a lattice corner")
    return cx, cy, sx, sy


def corner_neighborhood(
    corner: SiteId, spec: LatticeSpec, strategy: str = "nearest6"
) -> list[SiteId]:
    """The corner plus its few nearest sites, by one of three strategies.

    nearest6    corner + six closest sites (Euclidean, ties broken by the
                inward (dx, dy) offset), 7 sites total
    manhattan2  corner + all sites within Manhattan distance 2, 6 sites
    patch3x3    the 3x3 corner square minus its far diagonal site, 8 sites

    Offsets are measured inward from the corner, so the four corner
    neighborhoods are reflections of one another.
    """
    cx, cy, sx, sy = _corner_direction(corner, spec)
    coords = physical_coords(spec)
    lookup = {(int(x), int(y)): i for i, (x, y) in enumerate(coords)}

    def site_at(dx: int, dy: int) -> SiteId | None:
        from .lattice import site_of_index

        key = (cx + sx * dx, cy + sy * dy)
        return site_of_index(lookup[key], spec) if key in lookup else None

    if strategy == "nearest6":
        offsets = [(dx, dy) for dx in range(spec.width) for dy in range(spec.height)]
        offsets.sort(key=lambda o: (o[0] ** 2 + o[1] ** 2, o[0], o[1]))
        picked = []
        for dx, dy in offsets:
            if (dx, dy) == (0, 0):
                continue
            s = site_at(dx, dy)
            if s is not None:
                picked.append(s)
            if len(picked) == 6:
                break
        return [corner] + picked
    if strategy == "manhattan2":
        offsets = [(0, 1), (0, 2), (1, 0), (1, 1), (2, 0)]
        return [corner] + [site_at(dx, dy) for dx, dy in offsets if site_at(dx, dy)]
    if strategy == "patch3x3":
        offsets = [(dx, dy) for dy in range(3) for dx in range(3) if (dx, dy) not in ((0, 0), (2, 2))]
        return [corner] + [site_at(dx, dy) for dx, dy in offsets if site_at(dx, dy)]
    raise SteadyStateError(f"unknown neighborhood strategy {strategy!r}")


def concentration_factor(
    field: SteadyStateField, corner: SiteId, nbhd: list[SiteId], spec: LatticeSpec
) -> ConcentrationReport:
    """R = n_corner / N_patch over the given neighborhood (must include corner)."""
    if corner not in nbhd:
        raise SteadyStateError("neighborhood must contain the corner site")
    idx = [site_index(s, spec) for s in nbhd]
    n_patch = float(np.sum(field.sspn[idx]))
    if n_patch == 0:
        raise SteadyStateError("zero photon number on the patch: R undefined")
    n_corner = float(field.sspn[site_index(corner, spec)])
    return ConcentrationReport(corner, list(nbhd), n_corner, n_patch)


def corner_ratios(
    field: SteadyStateField, spec: LatticeSpec, strategy: str = "nearest6"
) -> np.ndarray:
    """R at the four corners (A, B, C, D order)."""
    out = []
    for corner in spec.corners():
        nbhd = corner_neighborhood(corner, spec, strategy)
        out.append(concentration_factor(field, corner, nbhd, spec).ratio)
    return np.array(out)


def r_vs_phi(
    phi_grid: np.ndarray,
    gamma: float,
    kappa: float,
    spec: LatticeSpec,
    coupling: CouplingSpec | None = None,
    strategy: str = "nearest6",
) -> np.ndarray:
    """(len(phi_grid), 4) per-corner R for the four-corner, zero-detuning pump."""
    coupling = coupling or CouplingSpec(gamma=gamma)
    coupling = coupling.with_gamma(gamma)
    pump = PumpSpec.corners(spec)
    diss = DissipationSpec(kappa)
    rows = []
    for phi in phi_grid:
        H = hamiltonian(spec, coupling.with_phi(float(phi)))
        field = solve_steady_state(H, pump, diss, spec)
        rows.append(corner_ratios(field, spec, strategy))
    return np.array(rows)


def threshold_crossings(phi_grid: np.ndarray, r_curve: np.ndarray, threshold: float) -> list[float]:
    """Linear-interpolated phi values where the curve crosses the threshold."""
    out = []
    for k in range(len(phi_grid) - 1):
        a, b = r_curve[k] - threshold, r_curve[k + 1] - threshold
        if a == 0.0:
            continue
        if a * b < 0:
            t = a / (a - b)
            out.append(float(phi_grid[k] + t * (phi_grid[k + 1] - phi_grid[k])))
    return out


def sspn_map(field: SteadyStateField, spec: LatticeSpec) -> np.ndarray:
    """SSPN per physical coordinate, shape (height, width), row Y, column X."""
    grid = np.zeros((spec.height, spec.width))
    for i, (x, y) in enumerate(physical_coords(spec)):
        grid[y, x] = field.sspn[i]
    return grid
