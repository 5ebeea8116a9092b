"""Observables and entanglement measures on pure spin states.

States are carried as sparse amplitude lists over bit patterns (PureState),
which covers single Sz sectors, full-space states, and cross-sector
superpositions without materialising 2^M vectors.  All site arguments are
1-based, matching the rest of the public API.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .basis import SectorBasis

NORM_TOL = 1e-8
PSD_FLOOR = -1e-10  # eigenvalue round-off floor for partial traces

# sigma_y (x) sigma_y in the pair basis {uu, ud, du, dd}
_YY = np.array(
    [
        [0.0, 0.0, 0.0, -1.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
    ]
)


@dataclass(frozen=True)
class PureState:
    """Normalized pure state as (bit pattern, amplitude) pairs, patterns sorted."""

    n_sites: int
    states: np.ndarray = field(repr=False)
    amps: np.ndarray = field(repr=False)

    @classmethod
    def from_sector(cls, vector: np.ndarray, sector: SectorBasis) -> "PureState":
        if len(vector) != sector.dim:
            raise ValueError("vector length does not match sector dimension")
        return cls(n_sites=sector.n_sites, states=sector.states, amps=np.asarray(vector, dtype=float))

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def check_normalized(self):
        if abs(self.norm - 1.0) > NORM_TOL:
            raise ValueError(f"state is not normalized (norm {self.norm!r})")

    def _site_bit(self, site: int) -> np.ndarray:
        if not 1 <= site <= self.n_sites:
            raise ValueError(f"site {site} outside [1, {self.n_sites}]")
        return (self.states >> (site - 1)) & 1


def superpose(ca: float, a: PureState, cb: float, b: PureState) -> PureState:
    """Normalized ca|a> + cb|b>; the inputs may live in different sectors."""
    if a.n_sites != b.n_sites:
        raise ValueError("cannot superpose states on different site counts")
    states = np.concatenate([a.states, b.states])
    amps = np.concatenate([ca * a.amps, cb * b.amps])
    uniq, inv = np.unique(states, return_inverse=True)
    merged = np.zeros(len(uniq))
    np.add.at(merged, inv, amps)
    norm = np.linalg.norm(merged)
    if norm < 1e-14:
        raise ValueError("superposition vanished")
    return PureState(n_sites=a.n_sites, states=uniq, amps=merged / norm)


def lower_total_sz(state: PureState) -> PureState:
    """Normalized image of the total lowering operator S^- = sum_i s_i^-.

    For a total-spin-1/2 doublet the s_z = +1/2 member maps onto the -1/2
    member with unit Clebsch-Gordan weight, so this fixes the relative phase
    of the pair deterministically from the gauge of the input.
    """
    parts_states = []
    parts_amps = []
    for site in range(state.n_sites):
        up = (state.states >> site) & 1 == 0
        parts_states.append(state.states[up] | (1 << site))
        parts_amps.append(state.amps[up])
    states = np.concatenate(parts_states)
    amps = np.concatenate(parts_amps)
    uniq, inv = np.unique(states, return_inverse=True)
    merged = np.zeros(len(uniq))
    np.add.at(merged, inv, amps)
    norm = np.linalg.norm(merged)
    if norm < 1e-12:
        raise ValueError("lowering annihilated the state")
    return PureState(n_sites=state.n_sites, states=uniq, amps=merged / norm)


def local_moment(state: PureState, site: int) -> float:
    """<sigma_z> at the given site, in [-1, 1]."""
    state.check_normalized()
    bits = state._site_bit(site)
    return float(np.sum(state.amps**2 * (1.0 - 2.0 * bits)))


def _flip_overlap(state: PureState, mask: int, phase: np.ndarray | float) -> float:
    """<psi| P |psi> where P maps |s> -> phase(s) |s ^ mask>."""
    flipped = state.states ^ mask
    idx = np.searchsorted(state.states, flipped)
    idx = np.clip(idx, 0, len(state.states) - 1)
    hit = state.states[idx] == flipped
    return float(np.sum(state.amps[idx[hit]] * phase[hit] * state.amps[hit]))


def spin_correlation(state: PureState, i: int, j: int, axis: str = "z") -> float:
    """<sigma_i^mu sigma_j^mu> for mu in {x, y, z}."""
    if i == j:
        raise ValueError("correlation of a site with itself is trivially 1; pick i != j")
    state.check_normalized()
    bi = state._site_bit(i)
    bj = state._site_bit(j)
    if axis == "z":
        return float(np.sum(state.amps**2 * (1.0 - 2.0 * bi) * (1.0 - 2.0 * bj)))
    mask = (1 << (i - 1)) | (1 << (j - 1))
    if axis == "x":
        phase = np.ones(len(state.states))
    elif axis == "y":
        # sigma_y sigma_y |s>: -1 on aligned pairs, +1 on anti-aligned
        phase = np.where(bi == bj, -1.0, 1.0)
    else:
        raise ValueError(f"axis must be one of x, y, z, got {axis!r}")
    return _flip_overlap(state, mask, phase)


def sigma_cross_element(bra: PureState, ket: PureState, site: int, axis: str = "x") -> float:
    """<bra| sigma_site^mu |ket> for states that may live in different sectors."""
    if bra.n_sites != ket.n_sites:
        raise ValueError("states on different site counts")
    if axis == "z":
        bits = ket._site_bit(site)
        sign = 1.0 - 2.0 * bits
        idx = np.searchsorted(bra.states, ket.states)
        idx = np.clip(idx, 0, len(bra.states) - 1)
        hit = bra.states[idx] == ket.states
        return float(np.sum(bra.amps[idx[hit]] * sign[hit] * ket.amps[hit]))
    if axis != "x":
        raise ValueError("cross elements are provided for x and z only")
    flipped = ket.states ^ (1 << (site - 1))
    idx = np.searchsorted(bra.states, flipped)
    idx = np.clip(idx, 0, len(bra.states) - 1)
    hit = bra.states[idx] == flipped
    return float(np.sum(bra.amps[idx[hit]] * ket.amps[hit]))


@dataclass(frozen=True)
class TwoSiteDensity:
    """4x4 density matrix of a site pair in the basis {uu, ud, du, dd}.

    The first slot always belongs to the lower global site index.
    """

    matrix: np.ndarray = field(repr=False)
    site_a: int
    site_b: int

    def __post_init__(self):
        m = self.matrix
        if m.shape != (4, 4):
            raise ValueError("two-site density must be 4x4")
        if np.max(np.abs(m - m.conj().T)) > 1e-10:
            raise ValueError("density matrix is not Hermitian")
        if abs(np.trace(m).real - 1.0) > 1e-12:
            raise ValueError(f"trace must be 1, got {np.trace(m)!r}")
        if np.min(np.linalg.eigvalsh(m)) < PSD_FLOOR:
            raise ValueError("density matrix has a negative eigenvalue beyond round-off")


def _remove_bit(words: np.ndarray, k: int) -> np.ndarray:
    return ((words >> (k + 1)) << k) | (words & ((1 << k) - 1))


def _pair_amplitude_table(state: PureState, a: int, b: int):
    """Amplitudes grouped by environment pattern: rows index the traced-out
    configuration, columns the pair configuration {uu, ud, du, dd}."""
    lo, hi = min(a, b) - 1, max(a, b) - 1
    b_first = (state.states >> (min(a, b) - 1)) & 1
    b_second = (state.states >> (max(a, b) - 1)) & 1
    config = 2 * b_first + b_second
    rest = _remove_bit(_remove_bit(state.states, hi), lo)
    uniq, inv = np.unique(rest, return_inverse=True)
    table = np.zeros((len(uniq), 4))
    table[inv, config] = state.amps
    return table


def reduced_density(state: PureState, site_a: int, site_b: int) -> TwoSiteDensity:
    """Partial trace onto the pair (site_a, site_b)."""
    if site_a == site_b:
        raise ValueError("need two distinct sites")
    state.check_normalized()
    table = _pair_amplitude_table(state, site_a, site_b)
    rho = table.T @ table
    rho = _clip_psd(rho)
    return TwoSiteDensity(matrix=rho, site_a=min(site_a, site_b), site_b=max(site_a, site_b))


def reduced_density_mixture(
    weighted: Sequence[tuple[float, PureState]], site_a: int, site_b: int
) -> TwoSiteDensity:
    """Partial trace of sum_k w_k |psi_k><psi_k| onto the pair."""
    if site_a == site_b:
        raise ValueError("need two distinct sites")
    weights = np.array([w for w, _ in weighted])
    if np.any(weights < 0) or abs(weights.sum() - 1.0) > 1e-10:
        raise ValueError("weights must be non-negative and sum to 1")
    rho = np.zeros((4, 4))
    for w, psi in weighted:
        psi.check_normalized()
        table = _pair_amplitude_table(psi, site_a, site_b)
        rho += w * (table.T @ table)
    rho = _clip_psd(rho)
    return TwoSiteDensity(matrix=rho, site_a=min(site_a, site_b), site_b=max(site_a, site_b))


def _clip_psd(rho: np.ndarray) -> np.ndarray:
    """Remove contraction round-off: symmetrize and renormalize the trace."""
    rho = 0.5 * (rho + rho.conj().T)
    tr = np.trace(rho).real
    if abs(tr - 1.0) > 1e-9:
        raise ValueError(f"partial trace lost normalization: trace {tr!r}")
    return rho / tr


def concurrence(rho: TwoSiteDensity) -> float:
    """Wootters concurrence of a two-site density matrix.

    Uses the Hermitian form sqrt(rho) (yy rho* yy) sqrt(rho), whose
    eigenvalues are the squared singular values of the standard construction;
    this stays stable where the plain non-Hermitian product drifts complex
    near C = 0.
    """
    m = rho.matrix
    w, u = np.linalg.eigh(m)
    if w[0] < PSD_FLOOR:
        raise ValueError("density matrix not positive semidefinite")
    sqrt_rho = (u * np.sqrt(np.clip(w, 0.0, None))) @ u.conj().T
    flipped = _YY @ m.conj() @ _YY
    herm = sqrt_rho @ flipped @ sqrt_rho
    ev = np.clip(np.linalg.eigvalsh(herm), 0.0, None)
    # round-off turns exact zeros into ~1e-16, which the square root would
    # inflate to 1e-8 errors in C; scrub them relative to the top eigenvalue
    if ev[-1] > 0.0:
        ev[ev < 1e-12 * ev[-1]] = 0.0
    lam = np.sqrt(ev)
    c = 2.0 * lam[-1] - np.sum(lam)
    return float(max(0.0, min(1.0, c)))


@dataclass(frozen=True)
class ConcurrenceMap:
    """Symmetric matrix of pairwise concurrences over a site set (diagonal 0)."""

    sites: tuple[int, ...]
    values: np.ndarray = field(repr=False)

    def at(self, site_i: int, site_j: int) -> float:
        i = self.sites.index(site_i)
        j = self.sites.index(site_j)
        return float(self.values[i, j])

    def pairs(self) -> Iterable[tuple[int, int, float]]:
        for i in range(len(self.sites)):
            for j in range(i + 1, len(self.sites)):
                yield self.sites[i], self.sites[j], float(self.values[i, j])


def concurrence_map(state: PureState, sites: Sequence[int]) -> ConcurrenceMap:
    """All-pairs concurrence over the given sites for one pure state."""
    return _map_from(lambda a, b: reduced_density(state, a, b), sites)


def concurrence_map_mixture(
    weighted: Sequence[tuple[float, PureState]], sites: Sequence[int]
) -> ConcurrenceMap:
    """All-pairs concurrence for a statistical mixture of pure states."""
    return _map_from(lambda a, b: reduced_density_mixture(weighted, a, b), sites)


def _map_from(rho_of, sites: Sequence[int]) -> ConcurrenceMap:
    sites = tuple(sites)
    if len(sites) < 2:
        raise ValueError("need at least two sites")
    if len(set(sites)) != len(sites):
        raise ValueError("sites must be distinct")
    n = len(sites)
    values = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            c = concurrence(rho_of(sites[i], sites[j]))
            values[i, j] = values[j, i] = c
    return ConcurrenceMap(sites=sites, values=values)


def trace_distance(rho: TwoSiteDensity, sigma: np.ndarray) -> float:
    """(1/2) ||rho - sigma||_1 against a reference 4x4 matrix."""
    diff = rho.matrix - sigma
    return float(0.5 * np.sum(np.abs(np.linalg.eigvalsh(diff))))


def singlet_projector() -> np.ndarray:
    """|psi-><psi-| in the pair basis {uu, ud, du, dd}."""
    psi = np.array([0.0, 1.0, -1.0, 0.0]) / np.sqrt(2.0)
    return np.outer(psi, psi)
