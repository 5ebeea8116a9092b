"""Sz-sector bases of spin-1/2 systems as sorted bit patterns.

Bit convention: bit b = 1 means site b carries a down spin (s_z = -1/2);
site 0 occupies the least-significant bit.  The all-up state is then the
zero word and a spin flip is a single XOR, so operator application never
branches on site order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb

import numpy as np

MAX_SITES = 24  # binomial(24, 12) ~ 2.7M amplitudes: the desk-scale ceiling


def popcount(bits):
    """Number of set bits (= down spins), elementwise for arrays."""
    return np.bitwise_count(np.asarray(bits, dtype=np.uint64)).astype(np.int64)


@dataclass(frozen=True)
class SectorBasis:
    """All basis states of ``n_sites`` spins with exactly ``n_down`` down spins.

    ``states`` is strictly increasing by bit pattern, so the rank of a state
    is recovered by binary search and enumeration order is reproducible.
    """

    n_sites: int
    n_down: int
    states: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.states)

    @property
    def sz(self) -> float:
        """Total S_z of the sector in units of hbar."""
        return 0.5 * (self.n_sites - 2 * self.n_down)

    def rank_of(self, state: int) -> int:
        """Index of ``state`` in this sector; raises if it does not belong."""
        state = int(state)
        if state.bit_count() != self.n_down:
            raise ValueError(
                f"state {state:#x} has {state.bit_count()} down spins, "
                f"sector holds {self.n_down}"
            )
        k = int(np.searchsorted(self.states, state))
        if k >= self.dim or self.states[k] != state:
            raise ValueError(f"state {state:#x} not in sector")
        return k

    def rank_many(self, states: np.ndarray) -> np.ndarray:
        """Vectorised rank lookup; every input must belong to the sector."""
        ranks = np.searchsorted(self.states, states)
        if not np.array_equal(self.states[ranks], states):
            raise ValueError("some states are not members of this sector")
        return ranks


def enumerate_sector(n_sites: int, n_down: int) -> SectorBasis:
    """Enumerate the total-Sz sector with ``n_down`` down spins, sorted ascending."""
    if not 0 <= n_sites <= MAX_SITES:
        raise ValueError(f"n_sites must lie in [0, {MAX_SITES}], got {n_sites}")
    if not 0 <= n_down <= n_sites:
        raise ValueError(f"n_down must lie in [0, {n_sites}], got {n_down}")
    words = np.fromiter(
        (sum(1 << p for p in combo) for combo in itertools.combinations(range(n_sites), n_down)),
        dtype=np.int64,
        count=comb(n_sites, n_down),
    )
    words.sort()
    words.flags.writeable = False
    return SectorBasis(n_sites=n_sites, n_down=n_down, states=words)


def rank_of(basis: SectorBasis, state: int) -> int:
    """Module-level alias for :meth:`SectorBasis.rank_of`."""
    return basis.rank_of(state)
