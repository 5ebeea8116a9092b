"""Heisenberg chain plus attached-qubit Hamiltonians, blocked by total Sz.

Couplings are isotropic Heisenberg bonds J s_a . s_b with s = sigma/2 and
hbar = 1, so every energy is reported in units of the chain exchange J0.
Qubits are appended after the chain in bit order: chain sites occupy bits
0..N-1, qubit q occupies bit N+q.  Site indices are 1-based at every public
interface and 0-based internally.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy import sparse

from .basis import MAX_SITES, SectorBasis, enumerate_sector
from .errors import CapacityError


@dataclass(frozen=True)
class Attachment:
    """One external qubit coupled to a chain site with bare strength j_bare (units J0)."""

    label: str
    site: int
    j_bare: float


@dataclass(frozen=True)
class SystemSpec:
    """Declarative description of a chain plus any weakly attached qubits.

    j_chain gives per-bond couplings in units of J0 (defaults to all 1.0);
    open chains have N-1 bonds, rings N with bond N closing sites N and 1.
    A ring with N=2 keeps both bonds between the same pair of sites: that is
    the literal closure rule, and it is excluded from the experiments.
    """

    n_chain: int
    boundary: str = "open"
    j_chain: tuple[float, ...] | None = None
    attachments: tuple[Attachment, ...] = ()

    def __post_init__(self):
        if self.n_chain < 1:
            raise ValueError("n_chain must be at least 1")
        if self.boundary not in ("open", "ring"):
            raise ValueError(f"boundary must be 'open' or 'ring', got {self.boundary!r}")
        if self.boundary == "ring" and self.n_chain < 2:
            raise ValueError("a ring needs at least 2 sites")
        object.__setattr__(self, "attachments", tuple(self.attachments))
        if self.j_chain is not None:
            object.__setattr__(self, "j_chain", tuple(float(j) for j in self.j_chain))
            if len(self.j_chain) != self.n_bonds:
                raise ValueError(
                    f"{self.boundary} chain of {self.n_chain} sites needs "
                    f"{self.n_bonds} bond couplings, got {len(self.j_chain)}"
                )
        labels = [a.label for a in self.attachments]
        if len(set(labels)) != len(labels):
            raise ValueError(f"qubit labels must be distinct, got {labels}")
        for a in self.attachments:
            if not 1 <= a.site <= self.n_chain:
                raise ValueError(f"attachment site {a.site} outside chain [1, {self.n_chain}]")
            if a.j_bare < 0:
                raise ValueError(f"bare coupling must be non-negative, got {a.j_bare}")

    @property
    def n_bonds(self) -> int:
        return self.n_chain - 1 if self.boundary == "open" else self.n_chain

    @property
    def n_qubits(self) -> int:
        return len(self.attachments)

    @property
    def n_sites(self) -> int:
        """Total spins: chain plus attached qubits."""
        return self.n_chain + self.n_qubits

    def qubit_site(self, label: str) -> int:
        """Global 1-based site index of the qubit with the given label."""
        for q, a in enumerate(self.attachments):
            if a.label == label:
                return self.n_chain + q + 1
        raise KeyError(f"no attachment labelled {label!r}")

    def chain_bonds(self) -> list[tuple[int, int, float]]:
        """Chain bonds as (site_a, site_b, J) with 0-based sites."""
        js = self.j_chain if self.j_chain is not None else (1.0,) * self.n_bonds
        bonds = [(i, i + 1, js[i]) for i in range(self.n_chain - 1)]
        if self.boundary == "ring":
            bonds.append((self.n_chain - 1, 0, js[self.n_chain - 1]))
        return bonds

    def all_bonds(self) -> list[tuple[int, int, float]]:
        """Chain bonds plus one bond per attachment, 0-based sites."""
        bonds = self.chain_bonds()
        for q, a in enumerate(self.attachments):
            bonds.append((a.site - 1, self.n_chain + q, a.j_bare))
        return bonds

    def to_dict(self) -> dict:
        return {
            "n_chain": self.n_chain,
            "boundary": self.boundary,
            "j_chain": list(self.j_chain) if self.j_chain is not None else None,
            "attachments": [[a.label, a.site, a.j_bare] for a in self.attachments],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SystemSpec":
        return cls(
            n_chain=int(d["n_chain"]),
            boundary=d.get("boundary", "open"),
            j_chain=tuple(d["j_chain"]) if d.get("j_chain") is not None else None,
            attachments=tuple(
                Attachment(label=str(a[0]), site=int(a[1]), j_bare=float(a[2]))
                for a in d.get("attachments", ())
            ),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "SystemSpec":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class SparseOperator:
    """Real Hermitian operator on one Sz sector, stored as CSR."""

    matrix: sparse.csr_matrix = field(repr=False)
    sector: SectorBasis

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def matvec(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x)
        if x.shape != (self.dim,):
            raise ValueError(f"vector of length {x.shape} against operator of dim {self.dim}")
        return self.matrix @ x

    def to_dense(self) -> np.ndarray:
        return self.matrix.toarray()


def matvec(op: SparseOperator, x: np.ndarray) -> np.ndarray:
    """y = H x on the operator's sector."""
    return op.matvec(x)


def build_bond_operator(
    sector: SectorBasis, bonds: Sequence[tuple[int, int, float]]
) -> SparseOperator:
    """Assemble sum_b J_b s_a . s_b over the given (0-based) bonds.

    Per bond: diagonal s_z s_z gives +J/4 (-J/4) for aligned (anti-aligned)
    pairs, and the flip-flop (s+s- + s-s+)/2 moves J/2 between the two
    anti-aligned configurations.  Duplicate bonds accumulate.
    """
    states = sector.states
    dim = sector.dim
    if dim == 0:
        raise ValueError("empty sector")
    diag = np.zeros(dim)
    rows: list[np.ndarray] = []
    cols: list[np.ndarray] = []
    vals: list[np.ndarray] = []
    for a, b, j in bonds:
        if not (0 <= a < sector.n_sites and 0 <= b < sector.n_sites):
            raise ValueError(f"bond ({a}, {b}) outside {sector.n_sites} sites")
        if a == b:
            raise ValueError(f"self-bond on site {a}")
        if j == 0.0:
            continue
        bits_a = (states >> a) & 1
        bits_b = (states >> b) & 1
        aligned = bits_a == bits_b
        diag += 0.25 * j * np.where(aligned, 1.0, -1.0)
        src = np.nonzero(~aligned)[0]
        flipped = states[src] ^ ((1 << a) | (1 << b))
        dst = sector.rank_many(flipped)
        rows.append(dst)
        cols.append(src)
        vals.append(np.full(len(src), 0.5 * j))
    if rows:
        mat = sparse.coo_matrix(
            (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
            shape=(dim, dim),
        ).tocsr()
    else:
        mat = sparse.csr_matrix((dim, dim))
    mat = mat + sparse.diags(diag, format="csr")
    mat.sum_duplicates()
    mat.sort_indices()
    return SparseOperator(matrix=mat, sector=sector)


def build_chain(spec: SystemSpec, n_down: int) -> SparseOperator:
    """Chain Hamiltonian alone (attachments ignored), in the given sector."""
    sector = enumerate_sector(spec.n_chain, n_down)
    return build_bond_operator(sector, spec.chain_bonds())


def build_full(spec: SystemSpec, n_down: int) -> SparseOperator:
    """Chain plus qubit-coupling Hamiltonian on all N + n_qubits spins."""
    if not spec.attachments:
        raise ValueError("build_full needs at least one attachment; use build_chain")
    if spec.n_sites > MAX_SITES:
        raise CapacityError(f"{spec.n_sites} spins exceed the {MAX_SITES}-site ceiling")
    sector = enumerate_sector(spec.n_sites, n_down)
    return build_bond_operator(sector, spec.all_bonds())


def total_spin_squared(sector: SectorBasis) -> SparseOperator:
    """S^2 of all sites, assembled from the same bond machinery.

    S^2 = (3M/4) I + 2 sum_{a<b} s_a . s_b.
    """
    m = sector.n_sites
    bonds = [(a, b, 2.0) for a in range(m) for b in range(a + 1, m)]
    op = build_bond_operator(sector, bonds) if bonds else None
    shift = sparse.identity(sector.dim, format="csr") * (0.75 * m)
    mat = shift if op is None else op.matrix + shift
    return SparseOperator(matrix=mat.tocsr(), sector=sector)
