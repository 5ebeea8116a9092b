"""Exact diagonalization of Heisenberg chains with weakly attached qubits.

Computes the parity-dependent effective couplings an antiferromagnetic
spin-1/2 chain induces between external qubits (central-spin route for odd
chains, RKKY route for even ones, nonperturbative gap extraction for both)
together with the associated entanglement measures.
"""

from .basis import SectorBasis, enumerate_sector, rank_of
from .errors import CapacityError, ConvergenceError, ParityError
from .measures import (
    ConcurrenceMap,
    PureState,
    TwoSiteDensity,
    concurrence,
    concurrence_map,
    local_moment,
    reduced_density,
    spin_correlation,
)
from .model import Attachment, SparseOperator, SystemSpec, build_chain, build_full, matvec
from .spectra import GroundManifold, dense_spectrum, ground_manifold, lowest_eigenpairs
from .effective import (
    EffectiveCoupling,
    ThreeSpinModel,
    central_spin_coupling,
    coupling_from_gap,
    rkky_approx,
    rkky_exact,
    sign_map,
    three_spin_model,
)

__all__ = [
    "Attachment",
    "CapacityError",
    "ConcurrenceMap",
    "ConvergenceError",
    "EffectiveCoupling",
    "GroundManifold",
    "ParityError",
    "PureState",
    "SectorBasis",
    "SparseOperator",
    "SystemSpec",
    "ThreeSpinModel",
    "TwoSiteDensity",
    "build_chain",
    "build_full",
    "central_spin_coupling",
    "concurrence",
    "concurrence_map",
    "coupling_from_gap",
    "dense_spectrum",
    "enumerate_sector",
    "ground_manifold",
    "local_moment",
    "lowest_eigenpairs",
    "matvec",
    "rank_of",
    "reduced_density",
    "rkky_approx",
    "rkky_exact",
    "sign_map",
    "spin_correlation",
    "three_spin_model",
]

__version__ = "0.1.0"
