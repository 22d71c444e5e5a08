"""Geometry and Hamiltonian assembly for the four-site-cell SSH lattice.

Unit cells are indexed by (cell_x, cell_y) starting at 1. Each cell holds
four sites A, B, C, D at physical offsets A=(0,0), B=(0,1), C=(1,0),
D=(1,1), so an nx-by-ny cell lattice is a (2*nx)-by-(2*ny) grid of sites
with integer coordinates and the four lattice corners are A(1,1),
B(1,ny), C(nx,1), D(nx,ny). Nearest neighbors couple with strength gamma
inside a cell and lambda_1..lambda_4 between cells:

    lambda1   C(x,y) -- A(x+1,y)   horizontal, bottom row of the cells
    lambda2   D(x,y) -- B(x+1,y)   horizontal, top row
    lambda3   B(x,y) -- A(x,y+1)   vertical, left column
    lambda4   D(x,y) -- C(x,y+1)   vertical, right column

Magnetic flux enters through Peierls phases. Pattern "uniform" threads
flux phi through every elementary plaquette, in the Landau gauge: an
upward hop in physical column X carries phase phi*X, horizontal hops
carry none. Pattern "intracell-only" threads phi through the intra-cell
plaquettes and none of the inter-cell ones; that requires a staircase
gauge with phase (cell_x - 1)*phi on A-B links and cell_x*phi on C-D
links (all other links phase-free).

Matrix convention: H[j, i] = t * exp(1j*theta) is the amplitude for
hopping from site i to site j; plaquette fluxes are directed phase sums
taken counterclockwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import LatticeError

SUBLATTICES = ("A", "B", "C", "D")

# physical offset of each sublattice inside its cell
_OFFSET = {"A": (0, 0), "B": (0, 1), "C": (1, 0), "D": (1, 1)}

HERMITICITY_TOL = 1e-12


@dataclass(frozen=True)
class SiteId:
    """One lattice site / resonator: unit cell plus sublattice label."""

    cell_x: int
    cell_y: int
    sublattice: str

    def __post_init__(self):
        if self.sublattice not in SUBLATTICES:
            raise LatticeError(f"unknown sublattice {self.sublattice!r}")

    @property
    def physical(self) -> tuple[int, int]:
        ox, oy = _OFFSET[self.sublattice]
        return 2 * (self.cell_x - 1) + ox, 2 * (self.cell_y - 1) + oy

    def __str__(self) -> str:
        return f"{self.sublattice}({self.cell_x},{self.cell_y})"


@dataclass(frozen=True)
class LatticeSpec:
    """Lattice extent in unit cells and boundary condition."""

    nx: int = 8
    ny: int = 8
    boundary: str = "open"

    def __post_init__(self):
        if self.nx < 1 or self.ny < 1:
            raise LatticeError(f"lattice must have at least 1x1 cells, got {self.nx}x{self.ny}")
        if self.boundary not in ("open", "periodic"):
            raise LatticeError(f"boundary must be 'open' or 'periodic', got {self.boundary!r}")

    @property
    def n_sites(self) -> int:
        return 4 * self.nx * self.ny

    @property
    def width(self) -> int:
        """Number of physical columns (2*nx)."""
        return 2 * self.nx

    @property
    def height(self) -> int:
        """Number of physical rows (2*ny)."""
        return 2 * self.ny

    def contains(self, site: SiteId) -> bool:
        return 1 <= site.cell_x <= self.nx and 1 <= site.cell_y <= self.ny

    def corners(self) -> tuple[SiteId, SiteId, SiteId, SiteId]:
        """The four lattice corners in sublattice order A, B, C, D."""
        return (
            SiteId(1, 1, "A"),
            SiteId(1, self.ny, "B"),
            SiteId(self.nx, 1, "C"),
            SiteId(self.nx, self.ny, "D"),
        )


@dataclass(frozen=True)
class CouplingSpec:
    """Hopping strengths and flux, in units of the reference inter-cell hop."""

    gamma: float = 0.5
    lam: tuple[float, float, float, float] = (1.0, 1.0, 1.0, 1.0)
    phi: float = 0.0
    flux_pattern: str = "uniform"

    def __post_init__(self):
        if self.gamma < 0:
            raise LatticeError(f"gamma must be >= 0, got {self.gamma}")
        if len(self.lam) != 4 or any(v < 0 for v in self.lam):
            raise LatticeError(f"lam must be four values >= 0, got {self.lam!r}")
        if self.flux_pattern not in ("uniform", "intracell-only"):
            raise LatticeError(f"unknown flux_pattern {self.flux_pattern!r}")
        object.__setattr__(self, "lam", tuple(float(v) for v in self.lam))
        object.__setattr__(self, "phi", float(self.phi) % (2.0 * np.pi))

    def with_phi(self, phi: float) -> "CouplingSpec":
        return CouplingSpec(self.gamma, self.lam, phi, self.flux_pattern)

    def with_gamma(self, gamma: float) -> "CouplingSpec":
        return CouplingSpec(gamma, self.lam, self.phi, self.flux_pattern)


@dataclass(frozen=True)
class HoppingTerm:
    """One undirected link, stored once; the Hermitian conjugate is implied."""

    from_site: SiteId
    to_site: SiteId
    amplitude: float
    phase: float
    kind: str = ""  # "gamma" or "lambda1".."lambda4"


def site_index(site: SiteId, spec: LatticeSpec) -> int:
    """Row index of a site: row-major over cells, then A, B, C, D."""
    if not spec.contains(site):
        raise LatticeError(f"site {site} outside {spec.nx}x{spec.ny} lattice")
    cell = (site.cell_y - 1) * spec.nx + (site.cell_x - 1)
    return 4 * cell + SUBLATTICES.index(site.sublattice)


def site_of_index(index: int, spec: LatticeSpec) -> SiteId:
    """Inverse of site_index."""
    if not 0 <= index < spec.n_sites:
        raise LatticeError(f"site index {index} out of range 0..{spec.n_sites - 1}")
    cell, sub = divmod(index, 4)
    cy, cx = divmod(cell, spec.nx)
    return SiteId(cx + 1, cy + 1, SUBLATTICES[sub])


def all_sites(spec: LatticeSpec) -> list[SiteId]:
    return [site_of_index(i, spec) for i in range(spec.n_sites)]


def physical_coords(spec: LatticeSpec) -> np.ndarray:
    """(n_sites, 2) integer array of physical (X, Y) in site-index order."""
    coords = np.empty((spec.n_sites, 2), dtype=int)
    for i in range(spec.n_sites):
        coords[i] = site_of_index(i, spec).physical
    return coords


def _vertical_phase(column_x: int, coupling: CouplingSpec, intra: bool) -> float:
    if coupling.flux_pattern == "uniform":
        return coupling.phi * column_x
    # intracell-only staircase: A-B of cell column x gets (x-1)*phi,
    # C-D gets x*phi, inter-cell verticals stay phase-free
    if not intra:
        return 0.0
    cell_x = column_x // 2 + 1
    return coupling.phi * (cell_x if column_x % 2 else cell_x - 1)


def enumerate_links(spec: LatticeSpec, coupling: CouplingSpec) -> list[HoppingTerm]:
    """All undirected hopping links with amplitudes and Peierls phases.

    Deterministic order: cells row-major, intra-cell links first
    (A-B, C-D, A-C, B-D), then inter-cell lambda1..lambda4, then any
    periodic wrap links.
    """
    if spec.boundary == "periodic":
        _check_commensurate(spec, coupling)
    l1, l2, l3, l4 = coupling.lam
    g = coupling.gamma
    links: list[HoppingTerm] = []

    def vert(a: SiteId, b: SiteId, amp: float, kind: str, intra: bool):
        x = a.physical[0]
        links.append(HoppingTerm(a, b, amp, _vertical_phase(x, coupling, intra), kind))

    def horiz(a: SiteId, b: SiteId, amp: float, kind: str):
        links.append(HoppingTerm(a, b, amp, 0.0, kind))

    for cy in range(1, spec.ny + 1):
        for cx in range(1, spec.nx + 1):
            A = SiteId(cx, cy, "A")
            B = SiteId(cx, cy, "B")
            C = SiteId(cx, cy, "C")
            D = SiteId(cx, cy, "D")
            vert(A, B, g, "gamma", intra=True)
            vert(C, D, g, "gamma", intra=True)
            horiz(A, C, g, "gamma")
            horiz(B, D, g, "gamma")
            if cx < spec.nx:
                horiz(C, SiteId(cx + 1, cy, "A"), l1, "lambda1")
                horiz(D, SiteId(cx + 1, cy, "B"), l2, "lambda2")
            if cy < spec.ny:
                vert(B, SiteId(cx, cy + 1, "A"), l3, "lambda3", intra=False)
                vert(D, SiteId(cx, cy + 1, "C"), l4, "lambda4", intra=False)

    if spec.boundary == "periodic":
        for cy in range(1, spec.ny + 1):
            horiz(SiteId(spec.nx, cy, "C"), SiteId(1, cy, "A"), l1, "lambda1")
            horiz(SiteId(spec.nx, cy, "D"), SiteId(1, cy, "B"), l2, "lambda2")
        for cx in range(1, spec.nx + 1):
            vert(SiteId(cx, spec.ny, "B"), SiteId(cx, 1, "A"), l3, "lambda3", intra=False)
            vert(SiteId(cx, spec.ny, "D"), SiteId(cx, 1, "C"), l4, "lambda4", intra=False)
    return links


def _check_commensurate(spec: LatticeSpec, coupling: CouplingSpec, tol: float = 1e-9):
    """Periodic wrap must not change the flux of any wrap plaquette."""
    if coupling.flux_pattern == "uniform":
        period = spec.width  # phases grow by phi per column over 2*nx columns
    else:
        period = spec.nx
    residue = (coupling.phi * period) % (2.0 * np.pi)
    if min(residue, 2.0 * np.pi - residue) > tol:
        raise LatticeError(
            f"periodic boundary needs phi*{period} = 0 mod 2pi, got phi={coupling.phi}"
        )


def build_hamiltonian(links: list[HoppingTerm], spec: LatticeSpec) -> np.ndarray:
    """Assemble the dense Hermitian hopping matrix from a link list."""
    n = spec.n_sites
    H = np.zeros((n, n), dtype=complex)
    seen: set[frozenset[int]] = set()
    for link in links:
        i = site_index(link.from_site, spec)
        j = site_index(link.to_site, spec)
        if i == j:
            raise LatticeError(f"self-loop at {link.from_site}")
        key = frozenset((i, j))
        if key in seen:
            raise LatticeError(f"duplicate link {link.from_site} -- {link.to_site}")
        seen.add(key)
        H[j, i] += link.amplitude * np.exp(1j * link.phase)
        H[i, j] = np.conj(H[j, i])
    return H


def hamiltonian(spec: LatticeSpec, coupling: CouplingSpec) -> np.ndarray:
    """Convenience: enumerate links and assemble the matrix in one call."""
    return build_hamiltonian(enumerate_links(spec, coupling), spec)


def gauge_transform(H: np.ndarray, site_phases: np.ndarray) -> np.ndarray:
    """Apply U H U^dag with U = diag(exp(1j*chi)); fluxes are unchanged."""
    chi = np.asarray(site_phases, dtype=float)
    if chi.shape != (H.shape[0],):
        raise LatticeError(f"need one phase per site, got shape {chi.shape} for {H.shape[0]} sites")
    u = np.exp(1j * chi)
    return (u[:, None] * H) * np.conj(u)[None, :]


def plaquette_fluxes(H: np.ndarray, spec: LatticeSpec) -> list[tuple[tuple[int, int], float]]:
    """Directed phase sum around each elementary square, reduced to [0, 2pi).

    Plaquettes are labelled by the physical (X, Y) of their lower-left
    site. Raises if any of the four links of a loop is absent from H.
    """
    if H.shape != (spec.n_sites, spec.n_sites):
        raise LatticeError(f"matrix shape {H.shape} does not match {spec.n_sites} sites")
    index_by_coord = {}
    for i in range(spec.n_sites):
        index_by_coord[site_of_index(i, spec).physical] = i
    wrap = spec.boundary == "periodic"
    W, Hh = spec.width, spec.height
    nx_p = W if wrap else W - 1
    ny_p = Hh if wrap else Hh - 1

    def hop_phase(a: int, b: int) -> float:
        v = H[b, a]
        if v == 0:
            raise LatticeError("incomplete plaquette: missing link in Hamiltonian")
        return float(np.angle(v))

    out = []
    for Y in range(ny_p):
        for X in range(nx_p):
            s1 = index_by_coord[(X, Y)]
            s2 = index_by_coord[((X + 1) % W, Y)]
            s3 = index_by_coord[((X + 1) % W, (Y + 1) % Hh)]
            s4 = index_by_coord[(X, (Y + 1) % Hh)]
            total = (
                hop_phase(s1, s2) + hop_phase(s2, s3) + hop_phase(s3, s4) + hop_phase(s4, s1)
            )
            out.append(((X, Y), float(total % (2.0 * np.pi))))
    return out


def links_to_csv_rows(links: list[HoppingTerm]) -> list[tuple[str, str, float, float]]:
    """Rows (from, to, amplitude, phase) for CSV export."""
    return [(str(l.from_site), str(l.to_site), l.amplitude, l.phase) for l in links]
