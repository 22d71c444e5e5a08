"""2D SSH lattice simulator: spectra, corner-mode phase maps, steady states."""

from .errors import (
    ConfigError,
    HardwareRangeError,
    LatticeError,
    SimulatorError,
    SpectrumError,
    SteadyStateError,
)
from .lattice import (
    CouplingSpec,
    HoppingTerm,
    LatticeSpec,
    SiteId,
    build_hamiltonian,
    enumerate_links,
    gauge_transform,
    hamiltonian,
    plaquette_fluxes,
    site_index,
    site_of_index,
)
from .spectrum import (
    ClassifierThresholds,
    EigenSystem,
    ModeCatalog,
    classify_modes,
    count_zecm,
    diagonalize,
    ipr,
    zero_gap,
)
from .steady import (
    ConcentrationReport,
    DissipationSpec,
    PumpSpec,
    SteadyStateField,
    concentration_factor,
    corner_neighborhood,
    r_vs_phi,
    solve_steady_state,
    sspn_map,
)

__version__ = "0.1.0"
