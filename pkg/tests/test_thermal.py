"""Metropolis dynamics: exactness, symmetry, bookkeeping, and the memory
contrast (light versions; the full-size runs live in the acceptance suite)."""

import math
from collections import Counter

import numpy as np
import pytest

from latticeqec.codes import build_code
from latticeqec.decoder import min_weight_preimage
from latticeqec.hamiltonian import MeanFieldParams, build_hamiltonian, mean_field_delta_e
from latticeqec.pauli import PauliOperator
from latticeqec.streams import substream
from latticeqec.thermal import (
    BIFURCATION_CSV_HEADER,
    ISING_CSV_HEADER,
    IsingConfig,
    MeanFieldCodeState,
    bifurcation_records_to_csv,
    bifurcation_scan,
    ising_series_to_csv,
    meanfield_sweep,
    metropolis_sweep,
    simulate_ising_memory,
    simulate_meanfield_code,
)

UNIT = MeanFieldParams(1.0, 1.0, 1.0, 1.0)


def boltzmann_distribution(size, coupling, temperature):
    """Exact Boltzmann weights of every spin configuration of a 2D lattice."""
    n = size * size
    weights = {}
    total = 0.0
    for idx in range(1 << n):
        spins = [1 if (idx >> i) & 1 else -1 for i in range(n)]
        config = IsingConfig(2, size, coupling, temperature, spins)
        w = math.exp(-config.energy / temperature)
        weights[tuple(spins)] = w
        total += w
    return {k: v / total for k, v in weights.items()}


class TestMetropolisSweep:
    def test_frozen_at_near_zero_temperature(self):
        config = IsingConfig.ordered(2, 8, 1.0, 1e-6)
        rng = substream(1)
        for _ in range(100):
            metropolis_sweep(config, rng)
            assert config.magnetization == 64

    def test_single_spin_flips_every_attempt(self):
        # no bonds, so every proposal has zero cost and is accepted
        config = IsingConfig(1, 1, 1.0, 1.0, [1])
        rng = substream(2)
        for sweep in range(1, 6):
            metropolis_sweep(config, rng)
            assert config.spins[0] == (-1) ** sweep

    def test_invalid_temperature_rejected(self):
        with pytest.raises(ValueError):
            IsingConfig.ordered(2, 4, 1.0, 0.0)

    def test_invalid_spins_rejected(self):
        with pytest.raises(ValueError):
            IsingConfig(2, 2, 1.0, 1.0, [1, 1, 1, 2])

    def test_two_by_two_histogram_matches_boltzmann(self):
        exact = boltzmann_distribution(2, 1.0, 2.0)
        config = IsingConfig.ordered(2, 2, 1.0, 2.0)
        rng = substream(5)
        counts = Counter()
        sweeps = 200_000
        for _ in range(sweeps):
            metropolis_sweep(config, rng)
            counts[tuple(config.spins)] += 1
        tv = 0.5 * sum(
            abs(counts.get(state, 0) / sweeps - p) for state, p in exact.items()
        )
        assert tv < 0.03

    def test_global_flip_symmetry_is_exact(self):
        rng_spins = np.random.default_rng(73)
        spins = [int(s) for s in rng_spins.choice([-1, 1], size=36)]
        up = IsingConfig(2, 6, 1.0, 2.2, list(spins))
        down = IsingConfig(2, 6, 1.0, 2.2, [-s for s in spins])
        rng_a, rng_b = substream(9), substream(9)
        for _ in range(50):
            metropolis_sweep(up, rng_a)
            metropolis_sweep(down, rng_b)
            assert down.spins == [-s for s in up.spins]
            assert down.magnetization == -up.magnetization

    def test_energy_bookkeeping(self):
        config = IsingConfig.ordered(2, 8, 2.5, 2.5)
        rng = substream(13)
        for _ in range(3):
            for _ in range(1000):
                metropolis_sweep(config, rng)
            recomputed = config.recompute_energy()
            assert config.energy == pytest.approx(recomputed, rel=1e-9, abs=1e-9)


class TestIsingMemory:
    def test_reproducible(self):
        a = simulate_ising_memory(2, 8, 1.0, 2.0, 200, 21)
        b = simulate_ising_memory(2, 8, 1.0, 2.0, 200, 21)
        assert np.array_equal(a, b)

    def test_series_length_and_start(self):
        series = simulate_ising_memory(2, 4, 1.0, 1e-6, 50, 3)
        assert len(series) == 50
        assert np.all(series == 1.0)

    def test_ordered_phase_retains_magnetization(self):
        series = simulate_ising_memory(2, 16, 1.0, 1.5, 1000, 42)
        assert np.mean(np.abs(series)) > 0.8

    def test_disordered_phase_loses_magnetization(self):
        series = simulate_ising_memory(2, 16, 1.0, 3.5, 2000, 42)
        assert abs(np.mean(series[500:])) < 0.15

    def test_csv_format(self):
        series = simulate_ising_memory(1, 8, 1.0, 0.5, 5, 2)
        text = ising_series_to_csv(1, 8, 1.0, 0.5, series)
        lines = text.strip().split("\n")
        assert lines[0] == ISING_CSV_HEADER == "dim,L,J,T,sweep,magnetization"
        assert len(lines) == 6
        first = lines[1].split(",")
        assert first[:5] == ["1", "8", "1.0", "0.5", "1"]


class TestMeanFieldState:
    def test_even_n_rejected(self):
        with pytest.raises(ValueError):
            MeanFieldCodeState.ordered(4, UNIT, 1.0, 1.0, 1)

    def test_bad_encoding_rejected(self):
        with pytest.raises(ValueError):
            MeanFieldCodeState.ordered(3, UNIT, 1.0, 1.0, 0)

    def test_ordered_state_has_no_parities(self):
        state = MeanFieldCodeState.ordered(5, UNIT, 1.0, 1.0, 1)
        assert state.plane_parities() == 0

    def test_plane_parities_track_single_flip(self):
        state = MeanFieldCodeState.ordered(3, UNIT, 1.0, 1.0, 1)
        state.spins[state.site_index(1, 2, 0)] = -1
        assert state.plane_parities() == 0b001
        state.spins[state.site_index(2, 0, 2)] = -1
        assert state.plane_parities() == 0b101

    def test_energy_bookkeeping(self):
        state = MeanFieldCodeState.ordered(5, MeanFieldParams(1.0, 1.0, 0.8, 0.5), 1.3, 2.0, 1)
        rng = substream(17)
        for _ in range(3):
            for _ in range(200):
                meanfield_sweep(state, rng)
            assert state.energy == pytest.approx(state.recompute_energy(), rel=1e-9, abs=1e-9)

    def test_flip_cost_matches_mean_field_formula(self):
        # The Metropolis step of the plane model must reproduce the 3D
        # mean-field bond energetics for the corresponding X toggle.
        n = 3
        layout = build_code(3, n)
        params = MeanFieldParams(1.0, 1.0, 0.7, 0.4)
        lam = 1.1
        spec = build_hamiltonian(layout, lam)
        rng = np.random.default_rng(79)
        for _ in range(100):
            spins = [int(s) for s in rng.choice([-1, 1], size=n**3)]
            state = MeanFieldCodeState(n, lam * params.c_zy, lam * params.c_zz, 1.0, 1, list(spins))
            site = int(rng.integers(0, n**3))
            flipped = list(spins)
            flipped[site] = -flipped[site]
            thermal_delta = (
                MeanFieldCodeState(n, lam * params.c_zy, lam * params.c_zz, 1.0, 1, flipped).energy
                - state.energy
            )
            mask_before = sum(1 << i for i, s in enumerate(spins) if s < 0)
            mask_after = mask_before ^ (1 << site)
            mf_before = mean_field_delta_e(spec, PauliOperator(n**3, 0, mask_before, 0), params)
            mf_after = mean_field_delta_e(spec, PauliOperator(n**3, 0, mask_after, 0), params)
            assert thermal_delta == pytest.approx(mf_after - mf_before, rel=1e-9, abs=1e-9)


class TestSimulateMeanFieldCode:
    def test_cold_readout_equals_encoding_exactly(self):
        for encoded in (1, -1):
            samples = simulate_meanfield_code(3, UNIT, 1.0, 1e-6, 100, 1, 7, encoded)
            assert [s.decoded_value for s in samples] == [encoded] * 100

    def test_sample_indices_respect_sample_every(self):
        samples = simulate_meanfield_code(3, UNIT, 1.0, 1.0, 20, 5, 7, 1)
        assert [s.sweep for s in samples] == [5, 10, 15, 20]

    def test_matches_exact_plane_parity_distribution(self):
        # n=3 at T=2: the three planes are independent 3x3 lattices whose
        # parity-string distribution can be enumerated exactly; convolving
        # them gives the distribution of the measured e string.
        n, t = 3, 2.0
        plane_weights = {}
        total = 0.0
        for idx in range(1 << 9):
            bits = [1 if (idx >> i) & 1 else -1 for i in range(9)]
            energy = 0.0
            for y in range(3):
                for z in range(3):
                    s = bits[y * 3 + z]
                    if y < 2:
                        energy -= s * bits[(y + 1) * 3 + z]
                    if z < 2:
                        energy -= s * bits[y * 3 + z + 1]
            w = math.exp(-energy / t)
            par = tuple(
                0 if bits[z] * bits[3 + z] * bits[6 + z] > 0 else 1 for z in range(3)
            )
            plane_weights[par] = plane_weights.get(par, 0.0) + w
            total += w
        plane_weights = {k: v / total for k, v in plane_weights.items()}
        exact = {(0, 0, 0): 1.0}
        for _ in range(n):
            new = {}
            for acc, p_acc in exact.items():
                for par, p in plane_weights.items():
                    key = tuple(a ^ b for a, b in zip(acc, par))
                    new[key] = new.get(key, 0.0) + p_acc * p
            exact = new

        samples = simulate_meanfield_code(n, UNIT, 1.0, t, 40_000, 1, 3, 1, equilibration=500)
        counts = Counter(s.e_bits for s in samples)
        tv = 0.5 * sum(
            abs(counts.get(e, 0) / len(samples) - p) for e, p in exact.items()
        )
        assert tv < 0.03

    def test_decoded_value_reuses_min_weight_rule(self):
        samples = simulate_meanfield_code(5, UNIT, 1.0, 3.0, 300, 1, 11, 1)
        for s in samples:
            mask = sum(b << i for i, b in enumerate(s.e_bits))
            checks = (mask ^ (mask >> 1)) & 0b1111
            expected = 1 if min_weight_preimage(checks, 5) == mask else -1
            assert s.decoded_value == expected


class TestBifurcationScan:
    def test_encodings_mirror_exactly(self):
        records = bifurcation_scan(5, UNIT, 1.0, [1.0, 3.0], 200, 13, equilibration=50)
        assert len(records) == 4
        by_key = {(r.temperature, r.encoded): r for r in records}
        for t in (1.0, 3.0):
            plus, minus = by_key[(t, 1)], by_key[(t, -1)]
            assert plus.order_parameter == -minus.order_parameter
            assert plus.stderr == minus.stderr

    def test_two_phase_contrast(self):
        records = bifurcation_scan(5, UNIT, 1.0, [1.0, 3.5], 400, 42, equilibration=100)
        by_key = {(r.temperature, r.encoded): r for r in records}
        assert abs(by_key[(1.0, 1)].order_parameter) - abs(by_key[(3.5, 1)].order_parameter) > 0.8

    def test_csv_deterministic_and_well_formed(self):
        args = (3, UNIT, 1.0, [1.5], 100, 5)
        a = bifurcation_records_to_csv(bifurcation_scan(*args))
        b = bifurcation_records_to_csv(bifurcation_scan(*args))
        assert a == b
        lines = a.strip().split("\n")
        assert lines[0] == BIFURCATION_CSV_HEADER == (
            "n,lambda,c_zy,c_zz,T,encoded,samples,order_parameter,stderr,seed"
        )
        assert len(lines) == 3
        assert all(len(line.split(",")) == 10 for line in lines)
