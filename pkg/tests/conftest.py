"""Shared oracles built along an independent route.

Everything here constructs operators and density matrices through dense
Kronecker products over the full 2^M space, with no use of the package's
sector machinery, so agreement between the two paths is a real cross-check
rather than a tautology.
"""

from __future__ import annotations

import numpy as np
import pytest

from spinbus.measures import PureState

# single-site operators in the (up, down) basis
SZ = np.array([[0.5, 0.0], [0.0, -0.5]])
SP = np.array([[0.0, 1.0], [0.0, 0.0]])
SM = SP.T.copy()
ID2 = np.eye(2)


def op_at(n_sites: int, site: int, op: np.ndarray) -> np.ndarray:
    """Embed a single-site operator; site 0 is the least-significant factor."""
    out = np.array([[1.0]])
    for s in range(n_sites - 1, -1, -1):
        out = np.kron(out, op if s == site else ID2)
    return out


def kron_heisenberg(n_sites: int, bonds) -> np.ndarray:
    """Full-space sum of J s_a . s_b over (0-based) bonds via Kronecker products."""
    dim = 2**n_sites
    h = np.zeros((dim, dim))
    for a, b, j in bonds:
        h += j * (
            op_at(n_sites, a, SZ) @ op_at(n_sites, b, SZ)
            + 0.5 * (op_at(n_sites, a, SP) @ op_at(n_sites, b, SM))
            + 0.5 * (op_at(n_sites, a, SM) @ op_at(n_sites, b, SP))
        )
    return h


def sector_indices(n_sites: int, n_down: int) -> np.ndarray:
    """Full-space indices whose bit patterns carry n_down set bits, ascending."""
    idx = np.arange(2**n_sites)
    counts = np.array([int(i).bit_count() for i in idx])
    return idx[counts == n_down]


def kron_sector_block(n_sites: int, bonds, n_down: int) -> np.ndarray:
    h = kron_heisenberg(n_sites, bonds)
    idx = sector_indices(n_sites, n_down)
    return h[np.ix_(idx, idx)]


def to_full_vector(state: PureState) -> np.ndarray:
    vec = np.zeros(2**state.n_sites)
    vec[state.states] = state.amps
    return vec


def reduced_density_oracle(full_vec: np.ndarray, n_sites: int, site_a: int, site_b: int):
    """Partial trace onto a 1-based site pair via tensor reshape."""
    first, second = min(site_a, site_b), max(site_a, site_b)
    tensor = full_vec.reshape([2] * n_sites)
    ax_first = n_sites - first  # axis 0 is the most significant site
    ax_second = n_sites - second
    moved = np.moveaxis(tensor, (ax_first, ax_second), (0, 1))
    m = moved.reshape(4, -1)
    return m @ m.conj().T


def concurrence_oracle(rho: np.ndarray) -> float:
    """Wootters concurrence through the plain non-Hermitian eigenvalue route."""
    yy = np.kron(np.array([[0, -1j], [1j, 0]]), np.array([[0, -1j], [1j, 0]]))
    prod = rho @ yy @ rho.conj() @ yy
    lam = np.sort(np.sqrt(np.abs(np.linalg.eigvals(prod).real)))[::-1]
    return max(0.0, float(lam[0] - lam[1] - lam[2] - lam[3]))


@pytest.fixture
def rng():
    return np.random.default_rng(0x5EED)
