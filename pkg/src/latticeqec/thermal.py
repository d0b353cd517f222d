"""Classical Metropolis dynamics for the memory models.

Two systems share the same single-spin-flip machinery:

* open-boundary ferromagnetic Ising chains and squares, used to contrast the
  1D memory (no barrier, magnetization decays at any T > 0) with the 2D one
  (magnetization persists below the ordering temperature);
* the mean-field error model of the 3D code: under the bond-expectation
  energetics, thermal X-error dynamics decouples into n independent
  anisotropic 2D Ising planes (couplings lam*c_zy along y and lam*c_zz along
  z).  The encoded readout is corrected through the plane parities exactly as
  the decoder would, flipping the answer when the minimum-weight codeword is
  the wrong one.

A sweep makes L^d single-site attempts at uniformly drawn sites (random-scan
Metropolis).  Deterministic scan order is not used: zero-cost proposals are
accepted with probability one, and on small degenerate lattices a fixed scan
then traps the chain in closed deterministic cycles that never relax to the
Boltzmann distribution.  Site choices and uniforms are consumed at a fixed
rate independent of the state, so a run is reproducible from its seed and
negating every spin while replaying the same stream negates the trajectory
exactly.  Temperatures are in energy units (Boltzmann constant 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .decoder import min_weight_preimage
from .hamiltonian import MeanFieldParams
from .streams import substream

__all__ = [
    "IsingConfig",
    "MeanFieldCodeState",
    "OrderParameterSample",
    "BifurcationRecord",
    "metropolis_sweep",
    "meanfield_sweep",
    "simulate_ising_memory",
    "simulate_meanfield_code",
    "bifurcation_scan",
    "ising_series_to_csv",
    "bifurcation_records_to_csv",
    "ISING_CSV_HEADER",
    "BIFURCATION_CSV_HEADER",
]

ISING_CSV_HEADER = "dim,L,J,T,sweep,magnetization"
BIFURCATION_CSV_HEADER = "n,lambda,c_zy,c_zz,T,encoded,samples,order_parameter,stderr,seed"

# Uniform draws are in [0, 1), so comparing u < 1.0 accepts unconditionally.
_ACCEPT_ALWAYS = 1.0


def _acceptance(delta_e: float, temperature: float) -> float:
    """min(1, exp(-dE/T)) without overflowing for downhill moves."""
    if delta_e <= 0.0:
        return _ACCEPT_ALWAYS
    return math.exp(-delta_e / temperature)


def _check_temperature(t: float):
    if t <= 0.0:
        raise ValueError("temperature must be positive")


@dataclass
class IsingConfig:
    """Mutable open-boundary Ising lattice with tracked energy/magnetization."""

    dimensionality: int
    size: int
    coupling: float
    temperature: float
    spins: list[int]
    energy: float = field(init=False)
    magnetization: int = field(init=False)

    def __post_init__(self):
        if self.dimensionality not in (1, 2):
            raise ValueError("dimensionality must be 1 or 2")
        if self.size < 1:
            raise ValueError("side length must be positive")
        _check_temperature(self.temperature)
        if len(self.spins) != self.num_spins or any(s not in (-1, 1) for s in self.spins):
            raise ValueError(f"spins must be {self.num_spins} values of +/-1")
        self._neighbors = self._build_neighbors()
        kmax = 2 * self.dimensionality
        self._kmax = kmax
        self._accept = [
            _acceptance(2.0 * self.coupling * k, self.temperature)
            for k in range(-kmax, kmax + 1)
        ]
        self.energy = self.recompute_energy()
        self.magnetization = sum(self.spins)

    @property
    def num_spins(self) -> int:
        return self.size ** self.dimensionality

    @classmethod
    def ordered(cls, dimensionality: int, size: int, coupling: float, temperature: float) -> "IsingConfig":
        return cls(dimensionality, size, coupling, temperature, [1] * size ** dimensionality)

    def _build_neighbors(self) -> list[tuple[int, ...]]:
        L = self.size
        table = []
        if self.dimensionality == 1:
            for i in range(L):
                nbrs = []
                if i > 0:
                    nbrs.append(i - 1)
                if i < L - 1:
                    nbrs.append(i + 1)
                table.append(tuple(nbrs))
        else:
            for i in range(L):
                for j in range(L):
                    nbrs = []
                    if i > 0:
                        nbrs.append((i - 1) * L + j)
                    if i < L - 1:
                        nbrs.append((i + 1) * L + j)
                    if j > 0:
                        nbrs.append(i * L + j - 1)
                    if j < L - 1:
                        nbrs.append(i * L + j + 1)
                    table.append(tuple(nbrs))
        return table

    def recompute_energy(self) -> float:
        total = 0
        L = self.size
        if self.dimensionality == 1:
            for i in range(L - 1):
                total += self.spins[i] * self.spins[i + 1]
        else:
            for i in range(L):
                for j in range(L):
                    if i < L - 1:
                        total += self.spins[i * L + j] * self.spins[(i + 1) * L + j]
                    if j < L - 1:
                        total += self.spins[i * L + j] * self.spins[i * L + j + 1]
        return -self.coupling * total


def _run_ising_sweeps(config: IsingConfig, rng, num_sweeps: int, record: list | None = None):
    spins = config.spins
    neighbors = config._neighbors
    accept = config._accept
    kmax = config._kmax
    n = config.num_spins
    energy = config.energy
    mag = config.magnetization
    two_j = 2.0 * config.coupling
    for _ in range(num_sweeps):
        sites = rng.integers(0, n, size=n).tolist()
        u = rng.random(n).tolist()
        for attempt in range(n):
            idx = sites[attempt]
            s = spins[idx]
            h = 0
            for nb in neighbors[idx]:
                h += spins[nb]
            k = s * h
            if u[attempt] < accept[k + kmax]:
                spins[idx] = -s
                energy += two_j * k
                mag -= 2 * s
        if record is not None:
            record.append(mag / n)
    config.energy = energy
    config.magnetization = mag


def metropolis_sweep(config: IsingConfig, rng) -> IsingConfig:
    """One sweep: L^d single-site Metropolis attempts at random sites."""
    _check_temperature(config.temperature)
    _run_ising_sweeps(config, rng, 1)
    return config


def simulate_ising_memory(
    dimensionality: int, size: int, coupling: float, temperature: float,
    sweeps: int, seed: int,
) -> np.ndarray:
    """Per-sweep magnetization density from the all-up start."""
    config = IsingConfig.ordered(dimensionality, size, coupling, temperature)
    rng = substream(seed)
    series: list[float] = []
    _run_ising_sweeps(config, rng, sweeps, record=series)
    return np.asarray(series)


def ising_series_to_csv(
    dimensionality: int, size: int, coupling: float, temperature: float,
    series: np.ndarray,
) -> str:
    lines = [ISING_CSV_HEADER]
    for sweep, m in enumerate(series, start=1):
        lines.append(
            f"{dimensionality},{size},{coupling!r},{temperature!r},{sweep},{float(m)!r}"
        )
    return "\n".join(lines) + "\n"


@dataclass
class MeanFieldCodeState:
    """X-error field of the 3D model: n decoupled anisotropic Ising planes.

    Plane p holds the error bits of the yz-plane x = p; spin = +1 means no
    error.  Site (p, y, z) maps to flat index (p*n + y)*n + z.
    """

    n: int
    j_y: float
    j_z: float
    temperature: float
    encoded_value: int
    spins: list[int]
    energy: float = field(init=False)

    def __post_init__(self):
        if self.n % 2 == 0:
            raise ValueError("plane count n must be odd")
        _check_temperature(self.temperature)
        if self.encoded_value not in (-1, 1):
            raise ValueError("encoded_value must be +1 or -1")
        if len(self.spins) != self.n**3 or any(s not in (-1, 1) for s in self.spins):
            raise ValueError(f"spins must be {self.n ** 3} values of +/-1")
        self._y_neighbors, self._z_neighbors = self._build_neighbors()
        # Acceptance and energy-step tables indexed by (s*hy, s*hz).
        accept = []
        delta = []
        for ky in range(-2, 3):
            for kz in range(-2, 3):
                d = 2.0 * (self.j_y * ky + self.j_z * kz)
                delta.append(d)
                accept.append(_acceptance(d, self.temperature))
        self._accept = accept
        self._delta = delta
        self.energy = self.recompute_energy()

    @classmethod
    def ordered(
        cls, n: int, params: MeanFieldParams, lam: float, temperature: float,
        encoded_value: int,
    ) -> "MeanFieldCodeState":
        return cls(
            n, lam * params.c_zy, lam * params.c_zz, temperature, encoded_value,
            [1] * n**3,
        )

    def site_index(self, plane: int, y: int, z: int) -> int:
        return (plane * self.n + y) * self.n + z

    def _build_neighbors(self):
        n = self.n
        y_table = []
        z_table = []
        for p in range(n):
            for y in range(n):
                for z in range(n):
                    ys = []
                    if y > 0:
                        ys.append(self.site_index(p, y - 1, z))
                    if y < n - 1:
                        ys.append(self.site_index(p, y + 1, z))
                    zs = []
                    if z > 0:
                        zs.append(self.site_index(p, y, z - 1))
                    if z < n - 1:
                        zs.append(self.site_index(p, y, z + 1))
                    y_table.append(tuple(ys))
                    z_table.append(tuple(zs))
        return y_table, z_table

    def recompute_energy(self) -> float:
        n = self.n
        total = 0.0
        for p in range(n):
            for y in range(n):
                for z in range(n):
                    s = self.spins[self.site_index(p, y, z)]
                    if y < n - 1:
                        total -= self.j_y * s * self.spins[self.site_index(p, y + 1, z)]
                    if z < n - 1:
                        total -= self.j_z * s * self.spins[self.site_index(p, y, z + 1)]
        return total

    def plane_parities(self) -> int:
        """Mask of e_k: parity of error bits at fixed z = k across all planes."""
        n = self.n
        spins = self.spins
        mask = 0
        for k in range(n):
            sign = 1
            for p in range(n):
                base = p * n * n + k
                for y in range(n):
                    sign *= spins[base + y * n]
            if sign < 0:
                mask |= 1 << k
        return mask


def meanfield_sweep(state: MeanFieldCodeState, rng) -> MeanFieldCodeState:
    _run_meanfield_sweeps(state, rng, 1)
    return state


def _run_meanfield_sweeps(state: MeanFieldCodeState, rng, num_sweeps: int):
    spins = state.spins
    y_neighbors = state._y_neighbors
    z_neighbors = state._z_neighbors
    accept = state._accept
    delta = state._delta
    n_sites = len(spins)
    energy = state.energy
    for _ in range(num_sweeps):
        sites = rng.integers(0, n_sites, size=n_sites).tolist()
        u = rng.random(n_sites).tolist()
        for attempt in range(n_sites):
            idx = sites[attempt]
            s = spins[idx]
            hy = 0
            for nb in y_neighbors[idx]:
                hy += spins[nb]
            hz = 0
            for nb in z_neighbors[idx]:
                hz += spins[nb]
            key = (s * hy + 2) * 5 + s * hz + 2
            if u[attempt] < accept[key]:
                spins[idx] = -s
                energy += delta[key]
    state.energy = energy


@dataclass(frozen=True)
class OrderParameterSample:
    sweep: int
    decoded_value: int
    e_bits: tuple[int, ...]


def _decoded_value(state: MeanFieldCodeState) -> tuple[int, tuple[int, ...]]:
    n = state.n
    e_mask = state.plane_parities()
    checks = (e_mask ^ (e_mask >> 1)) & ((1 << (n - 1)) - 1)
    reconstructed = min_weight_preimage(checks, n)
    correct = reconstructed == e_mask
    value = state.encoded_value if correct else -state.encoded_value
    return value, tuple((e_mask >> k) & 1 for k in range(n))


def simulate_meanfield_code(
    n: int,
    params: MeanFieldParams,
    lam: float,
    temperature: float,
    sweeps: int,
    sample_every: int,
    seed: int,
    encoded_value: int,
    equilibration: int = 0,
    stream_path: tuple[int, ...] = (),
) -> list[OrderParameterSample]:
    """Thermal trajectory of the syndrome-adjusted encoded readout.

    Starts from the error-free state, runs ``equilibration`` unsampled
    sweeps, then records one sample every ``sample_every`` of the next
    ``sweeps`` sweeps.
    """
    if sample_every < 1:
        raise ValueError("sample_every must be positive")
    state = MeanFieldCodeState.ordered(n, params, lam, temperature, encoded_value)
    rng = substream(seed, *stream_path)
    if equilibration:
        _run_meanfield_sweeps(state, rng, equilibration)
    samples = []
    for sweep in range(1, sweeps + 1):
        _run_meanfield_sweeps(state, rng, 1)
        if sweep % sample_every == 0:
            value, e_bits = _decoded_value(state)
            samples.append(OrderParameterSample(sweep, value, e_bits))
    return samples


@dataclass(frozen=True)
class BifurcationRecord:
    n: int
    lam: float
    c_zy: float
    c_zz: float
    temperature: float
    encoded: int
    samples: int
    order_parameter: float
    stderr: float
    seed: int

    def csv_row(self) -> str:
        return ",".join([
            str(self.n), repr(self.lam), repr(self.c_zy), repr(self.c_zz),
            repr(self.temperature), str(self.encoded), str(self.samples),
            repr(self.order_parameter), repr(self.stderr), str(self.seed),
        ])


def bifurcation_scan(
    n: int,
    params: MeanFieldParams,
    lam: float,
    t_list: list[float],
    sweeps: int,
    seed: int,
    sample_every: int = 1,
    equilibration: int = 0,
) -> list[BifurcationRecord]:
    """Order parameter against temperature for both encodings.

    The two encodings of a given temperature replay the same stream, so
    their error-field trajectories coincide and the records mirror exactly.
    """
    records = []
    for t_index, temperature in enumerate(t_list):
        for encoded in (1, -1):
            samples = simulate_meanfield_code(
                n, params, lam, temperature, sweeps, sample_every, seed,
                encoded, equilibration=equilibration, stream_path=(t_index,),
            )
            values = [s.decoded_value for s in samples]
            count = len(values)
            mean = sum(values) / count
            variance = max(0.0, 1.0 - mean * mean)  # values are +/-1
            stderr = math.sqrt(variance / count)
            records.append(BifurcationRecord(
                n, lam, params.c_zy, params.c_zz, temperature, encoded,
                count, mean, stderr, seed,
            ))
    return records


def bifurcation_records_to_csv(records: list[BifurcationRecord]) -> str:
    lines = [BIFURCATION_CSV_HEADER]
    lines.extend(record.csv_row() for record in records)
    return "\n".join(lines) + "\n"
