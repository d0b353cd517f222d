"""Lattice Hamiltonians built from the gauge-group bond operators.

2D:  H = -lam * sum of ZZ bonds along rows and XX bonds along columns.
3D:  H = -lam * sum of XX bonds along x and y plus ZZ bonds along y and z.

Every bond is a gauge-group generator, so H commutes with the stabilizer
group and block-diagonalizes over the stabilizer sectors; within each sector
it acts as (block) tensor identity on the protected qubit, which forces every
eigenvalue of the full matrix to have even multiplicity.  Small instances are
diagonalized exactly; the 3D model is treated through its mean-field error
energetics, where a pattern of errors costs 2*lam times the c-weighted count
of bonds it anticommutes with (a perimeter law for connected domains).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from itertools import product

import numpy as np

from .codes import CodeLayout
from .pauli import PauliOperator

__all__ = [
    "HamiltonianTerm",
    "HamiltonianSpec",
    "MeanFieldParams",
    "SectorInfo",
    "SectorReport",
    "InfeasibleSizeError",
    "build_hamiltonian",
    "diagonalize_small",
    "mean_field_delta_e",
    "MAX_DENSE_SITES",
]

MAX_DENSE_SITES = 14  # dense diagonalization guard: 2**14 dimensional at most

_ID2 = np.eye(2)
_X2 = np.array([[0.0, 1.0], [1.0, 0.0]])
_Z2 = np.array([[1.0, 0.0], [0.0, -1.0]])


class InfeasibleSizeError(Exception):
    """Instance too large for exact dense diagonalization."""


@dataclass(frozen=True)
class HamiltonianTerm:
    operator: PauliOperator  # two-site XX or ZZ bond
    orientation: str  # 2D: xx-col | zz-row; 3D: xx | xy | zy | zz


@dataclass(frozen=True)
class HamiltonianSpec:
    layout: CodeLayout
    lam: float  # coupling strength, energy units
    terms: tuple[HamiltonianTerm, ...]


@dataclass(frozen=True)
class MeanFieldParams:
    """Assumed ground-state bond expectation values, all positive."""

    c_xx: float = 1.0
    c_xy: float = 1.0
    c_zy: float = 1.0
    c_zz: float = 1.0

    def __post_init__(self):
        for name in ("c_xx", "c_xy", "c_zy", "c_zz"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be positive (ordered phase)")

    def for_orientation(self, orientation: str) -> float:
        return {
            "xx": self.c_xx,
            "xy": self.c_xy,
            "zy": self.c_zy,
            "zz": self.c_zz,
        }[orientation]


@dataclass(frozen=True)
class SectorInfo:
    s_x: tuple[int, ...]  # +1/-1 eigenvalues of the X-type stabilizers
    s_z: tuple[int, ...]
    min_energy: float


@dataclass(frozen=True)
class SectorReport:
    n: int
    dimension: int
    lam: float
    eigenvalues: tuple[tuple[float, int], ...]  # (value, multiplicity)
    sectors: tuple[SectorInfo, ...]
    ground_energy: float
    ground_multiplicity: int
    ground_sectors: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "dimension": self.dimension,
            "lambda": self.lam,
            "eigenvalues": [
                {"value": value, "multiplicity": mult}
                for value, mult in self.eigenvalues
            ],
            "ground_energy": self.ground_energy,
            "ground_multiplicity": self.ground_multiplicity,
            "ground_sector": {
                "s_x": list(self.ground_sectors[0][0]),
                "s_z": list(self.ground_sectors[0][1]),
            },
            "ground_sectors": [
                {"s_x": list(sx), "s_z": list(sz)} for sx, sz in self.ground_sectors
            ],
            "sectors": [
                {
                    "s_x": list(info.s_x),
                    "s_z": list(info.s_z),
                    "min_energy": info.min_energy,
                }
                for info in self.sectors
            ],
        }


def _bond(layout: CodeLayout, site_a: int, site_b: int, pauli: str, tag: str) -> HamiltonianTerm:
    mask = (1 << site_a) | (1 << site_b)
    op = PauliOperator(layout.num_sites, 0, mask if pauli == "X" else 0, mask if pauli == "Z" else 0)
    return HamiltonianTerm(op, tag)


def build_hamiltonian(layout: CodeLayout, lam: float) -> HamiltonianSpec:
    """Term list for H = -lam * sum(bonds)."""
    n = layout.n
    terms = []
    if layout.dimension == 2:
        for i in range(n):
            for j in range(n - 1):
                terms.append(_bond(layout, layout.site_index(i, j), layout.site_index(i, j + 1), "Z", "zz-row"))
                terms.append(_bond(layout, layout.site_index(j, i), layout.site_index(j + 1, i), "X", "xx-col"))
    else:
        for i, j in product(range(n), repeat=2):
            for k in range(n - 1):
                terms.append(_bond(layout, layout.site_index(k, i, j), layout.site_index(k + 1, i, j), "X", "xx"))
                terms.append(_bond(layout, layout.site_index(i, k, j), layout.site_index(i, k + 1, j), "X", "xy"))
                terms.append(_bond(layout, layout.site_index(i, k, j), layout.site_index(i, k + 1, j), "Z", "zy"))
                terms.append(_bond(layout, layout.site_index(i, j, k), layout.site_index(i, j, k + 1), "Z", "zz"))
    return HamiltonianSpec(layout, lam, tuple(terms))


def _real_pauli_matrix(op: PauliOperator, num_sites: int) -> np.ndarray:
    """Dense matrix of an X/Z-only Pauli product (site 0 = leftmost factor)."""
    if op.a & op.b:
        raise ValueError("expected a product of X and Z factors only")
    factors = []
    for site in range(num_sites):
        if (op.a >> site) & 1:
            factors.append(_X2)
        elif (op.b >> site) & 1:
            factors.append(_Z2)
        else:
            factors.append(_ID2)
    return reduce(np.kron, factors)


def dense_matrix(spec: HamiltonianSpec) -> np.ndarray:
    n_sites = spec.layout.num_sites
    if n_sites > MAX_DENSE_SITES:
        raise InfeasibleSizeError(
            f"{n_sites} sites exceed the dense-diagonalization bound of "
            f"{MAX_DENSE_SITES} (2**{MAX_DENSE_SITES}-dimensional)"
        )
    dim = 1 << n_sites
    h = np.zeros((dim, dim))
    for term in spec.terms:
        h -= spec.lam * _real_pauli_matrix(term.operator, n_sites)
    return h


def _cluster_eigenvalues(values: np.ndarray, rel_tol: float) -> list[tuple[float, int]]:
    scale = max(1.0, float(np.max(np.abs(values))))
    tol = rel_tol * scale
    clusters: list[tuple[float, int]] = []
    for value in values:  # eigvalsh output is sorted
        if clusters and value - clusters[-1][0] <= tol:
            prev, count = clusters[-1]
            clusters[-1] = (prev, count + 1)
        else:
            clusters.append((float(value), 1))
    return clusters


def diagonalize_small(spec: HamiltonianSpec, rel_tol: float = 1e-8) -> SectorReport:
    """Exact spectrum, per-sector minima, and the ground-state report.

    Sectors are labelled by the +/-1 stabilizer eigenvalues; the restriction
    of H to a sector is obtained through the joint eigenprojector.  Raises if
    any eigenvalue cluster has odd multiplicity, which the gauge structure
    forbids.
    """
    layout = spec.layout
    h = dense_matrix(spec)
    dim = h.shape[0]

    eigenvalues = np.linalg.eigvalsh(h)
    clusters = _cluster_eigenvalues(eigenvalues, rel_tol)
    for value, mult in clusters:
        if mult % 2 != 0:
            raise RuntimeError(
                f"eigenvalue {value} has odd multiplicity {mult}; "
                "the protected-qubit pairing is violated"
            )

    x_stabs = [_real_pauli_matrix(s, layout.num_sites) for s in layout.x_stabilizer_generators]
    z_stabs = [_real_pauli_matrix(s, layout.num_sites) for s in layout.z_stabilizer_generators]

    sectors = []
    ground_energy = float(eigenvalues[0])
    scale = max(1.0, float(np.max(np.abs(eigenvalues))))
    for signs_x in product((1, -1), repeat=len(x_stabs)):
        for signs_z in product((1, -1), repeat=len(z_stabs)):
            projector = np.eye(dim)
            for sign, stab in zip(signs_x + signs_z, x_stabs + z_stabs):
                projector = projector @ ((np.eye(dim) + sign * stab) / 2.0)
            w, v = np.linalg.eigh(projector)
            basis = v[:, w > 0.5]
            restricted = basis.T @ h @ basis
            sector_min = float(np.linalg.eigvalsh(restricted)[0])
            sectors.append(SectorInfo(signs_x, signs_z, sector_min))

    ground_sectors = tuple(
        (info.s_x, info.s_z)
        for info in sectors
        if info.min_energy - ground_energy <= rel_tol * scale
    )
    ground_multiplicity = clusters[0][1]
    return SectorReport(
        n=layout.n,
        dimension=layout.dimension,
        lam=spec.lam,
        eigenvalues=tuple(clusters),
        sectors=tuple(sectors),
        ground_energy=ground_energy,
        ground_multiplicity=ground_multiplicity,
        ground_sectors=ground_sectors,
    )


def mean_field_delta_e(
    spec: HamiltonianSpec, error: PauliOperator, params: MeanFieldParams
) -> float:
    """Expected energy increase of an error pattern over the ordered state.

    Each bond whose expectation the error flips (anticommutes with)
    contributes 2 * lam * c(orientation).  Boundary sites simply have fewer
    incident bonds, so no special casing is needed.
    """
    if spec.layout.dimension != 3:
        raise ValueError("mean-field energetics are defined for the 3D model")
    if error.num_sites != spec.layout.num_sites:
        raise ValueError("error size does not match the lattice")
    delta = 0.0
    for term in spec.terms:
        if not error.commutes_with(term.operator):
            delta += 2.0 * spec.lam * params.for_orientation(term.orientation)
    return delta
