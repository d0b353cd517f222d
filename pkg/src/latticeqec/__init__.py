"""Subsystem codes on square and cubic lattices, with decoding, Monte-Carlo
failure-rate estimation, exact small-instance Hamiltonian spectra, and the
classical thermal dynamics of the associated memory models."""

from .codes import Classification, CodeLayout, ErrorStrings, LogicalClass, build_code
from .decoder import (
    DecodeOutcome,
    Syndrome,
    adjudicate,
    analytic_failure_prob,
    decode_syndrome,
    measure_syndrome,
)
from .hamiltonian import (
    HamiltonianSpec,
    HamiltonianTerm,
    InfeasibleSizeError,
    MeanFieldParams,
    SectorReport,
    build_hamiltonian,
    diagonalize_small,
    mean_field_delta_e,
)
from .noise import NoiseModel, ScanRecord, TrialStats, run_trials, sample_error, threshold_scan
from .pauli import PauliFormatError, PauliOperator, conjugate_transversal_cnot
from .streams import substream
from .thermal import (
    BifurcationRecord,
    IsingConfig,
    MeanFieldCodeState,
    OrderParameterSample,
    bifurcation_scan,
    metropolis_sweep,
    simulate_ising_memory,
    simulate_meanfield_code,
)

__version__ = "0.1.0"

__all__ = [
    "Classification",
    "CodeLayout",
    "ErrorStrings",
    "LogicalClass",
    "build_code",
    "DecodeOutcome",
    "Syndrome",
    "adjudicate",
    "analytic_failure_prob",
    "decode_syndrome",
    "measure_syndrome",
    "HamiltonianSpec",
    "HamiltonianTerm",
    "InfeasibleSizeError",
    "MeanFieldParams",
    "SectorReport",
    "build_hamiltonian",
    "diagonalize_small",
    "mean_field_delta_e",
    "NoiseModel",
    "ScanRecord",
    "TrialStats",
    "run_trials",
    "sample_error",
    "threshold_scan",
    "PauliFormatError",
    "PauliOperator",
    "conjugate_transversal_cnot",
    "substream",
    "BifurcationRecord",
    "IsingConfig",
    "MeanFieldCodeState",
    "OrderParameterSample",
    "bifurcation_scan",
    "metropolis_sweep",
    "simulate_ising_memory",
    "simulate_meanfield_code",
    "__version__",
]
