"""Noise channels and seeded Monte-Carlo estimation of logical failure rates."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .codes import CodeLayout, LogicalClass
from .decoder import adjudicate, decode_syndrome, measure_syndrome
from .pauli import PauliOperator
from .streams import substream

__all__ = [
    "NoiseModel",
    "TrialStats",
    "ScanRecord",
    "sample_error",
    "run_trials",
    "threshold_scan",
    "wilson_interval",
    "scan_records_to_csv",
    "SCAN_CSV_HEADER",
]

SCAN_CSV_HEADER = (
    "dimension,n,p_x,p_z,trials,seed,count_gauge,count_lx,count_ly,count_lz,"
    "failure_rate,ci_low,ci_high"
)

_WILSON_Z = 1.959963984540054  # two-sided 95%


@dataclass(frozen=True)
class NoiseModel:
    """Per-site iid channel.

    ``independent_xz`` applies the X component with probability px and the
    Z component with probability pz, independently (both fire: Y).
    ``depolarizing`` applies each of X, Y, Z with probability p/3.
    """

    kind: str
    px: float = 0.0
    pz: float = 0.0
    p: float = 0.0

    def __post_init__(self):
        if self.kind not in ("independent_xz", "depolarizing"):
            raise ValueError(f"unknown noise kind {self.kind!r}")
        for value in (self.px, self.pz, self.p):
            if not 0.0 <= value <= 1.0:
                raise ValueError("probabilities must lie in [0, 1]")

    @classmethod
    def independent_xz(cls, px: float, pz: float) -> "NoiseModel":
        return cls("independent_xz", px=px, pz=pz)

    @classmethod
    def depolarizing(cls, p: float) -> "NoiseModel":
        return cls("depolarizing", p=p)


@dataclass(frozen=True)
class TrialStats:
    trials: int
    seed: int
    count_gauge: int
    count_lx: int
    count_ly: int
    count_lz: int
    failure_rate: float
    ci_low: float
    ci_high: float


@dataclass(frozen=True)
class ScanRecord:
    dimension: int
    n: int
    p_x: float
    p_z: float
    stats: TrialStats

    def csv_row(self) -> str:
        s = self.stats
        fields = [
            self.dimension, self.n, self.p_x, self.p_z, s.trials, s.seed,
            s.count_gauge, s.count_lx, s.count_ly, s.count_lz,
            s.failure_rate, s.ci_low, s.ci_high,
        ]
        return ",".join(repr(v) if isinstance(v, float) else str(v) for v in fields)


def wilson_interval(successes: int, trials: int, z: float = _WILSON_Z) -> tuple[float, float]:
    """95% Wilson score interval for a binomial proportion."""
    if trials < 1:
        raise ValueError("trials must be positive")
    phat = successes / trials
    denom = 1.0 + z * z / trials
    centre = (phat + z * z / (2 * trials)) / denom
    half = z * math.sqrt(phat * (1.0 - phat) / trials + z * z / (4 * trials * trials)) / denom
    # The Wilson interval always contains the point estimate; clamp away
    # floating-point residue so that stays exactly true at the endpoints.
    return min(max(0.0, centre - half), phat), max(min(1.0, centre + half), phat)


def sample_error(model: NoiseModel, layout: CodeLayout, rng) -> PauliOperator:
    """Draw one iid error.  Always consumes the same number of uniforms for
    a given (model, layout), so trial streams stay aligned."""
    n_sites = layout.num_sites
    a = b = 0
    phase = 0
    if model.kind == "independent_xz":
        u = rng.random(2 * n_sites)
        for site in range(n_sites):
            if u[site] < model.px:
                a |= 1 << site
            if u[n_sites + site] < model.pz:
                b |= 1 << site
    else:
        third = model.p / 3.0
        u = rng.random(n_sites)
        for site in range(n_sites):
            v = u[site]
            if v >= model.p:
                continue
            if v < third:
                a |= 1 << site
            elif v < 2.0 * third:
                a |= 1 << site
                b |= 1 << site
                phase += 1
            else:
                b |= 1 << site
    return PauliOperator(n_sites, phase % 4, a, b)


def run_trials(
    layout: CodeLayout,
    model: NoiseModel,
    trials: int,
    master_seed: int,
    stream_path: tuple[int, ...] = (),
) -> TrialStats:
    """Sample, decode and adjudicate ``trials`` independent errors.

    Trial t draws from ``substream(master_seed, *stream_path, t)``; results
    do not depend on execution order or on how trials are batched.
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    counts = {
        LogicalClass.GAUGE: 0,
        LogicalClass.LOGICAL_X: 0,
        LogicalClass.LOGICAL_Y: 0,
        LogicalClass.LOGICAL_Z: 0,
    }
    for t in range(trials):
        rng = substream(master_seed, *stream_path, t)
        error = sample_error(model, layout, rng)
        outcome = decode_syndrome(layout, measure_syndrome(layout, error))
        counts[adjudicate(layout, error, outcome).kind] += 1
    failures = trials - counts[LogicalClass.GAUGE]
    ci_low, ci_high = wilson_interval(failures, trials)
    return TrialStats(
        trials=trials,
        seed=master_seed,
        count_gauge=counts[LogicalClass.GAUGE],
        count_lx=counts[LogicalClass.LOGICAL_X],
        count_ly=counts[LogicalClass.LOGICAL_Y],
        count_lz=counts[LogicalClass.LOGICAL_Z],
        failure_rate=failures / trials,
        ci_low=ci_low,
        ci_high=ci_high,
    )


def _model_for(noise: str, p: float) -> tuple[NoiseModel, float, float]:
    """Channel plus the (p_x, p_z) columns recorded in the CSV."""
    if noise == "z":
        return NoiseModel.independent_xz(0.0, p), 0.0, p
    if noise == "x":
        return NoiseModel.independent_xz(p, 0.0), p, 0.0
    if noise == "xz":
        return NoiseModel.independent_xz(p, p), p, p
    if noise == "depolarizing":
        return NoiseModel.depolarizing(p), p, p
    raise ValueError(f"unknown noise kind {noise!r}")


def threshold_scan(
    dimension: int,
    n_list: list[int],
    p_list: list[float],
    trials: int,
    master_seed: int,
    noise: str = "z",
) -> list[ScanRecord]:
    """One Monte-Carlo cell per (n, p); each cell gets its own stream branch."""
    if not n_list or not p_list:
        raise ValueError("n_list and p_list must be non-empty")
    records = []
    for cell, (n, p) in enumerate((n, p) for n in n_list for p in p_list):
        layout = CodeLayout(dimension, n)
        model, p_x, p_z = _model_for(noise, p)
        stats = run_trials(layout, model, trials, master_seed, stream_path=(cell,))
        records.append(ScanRecord(dimension, n, p_x, p_z, stats))
    return records


def scan_records_to_csv(records: list[ScanRecord]) -> str:
    lines = [SCAN_CSV_HEADER]
    lines.extend(record.csv_row() for record in records)
    return "\n".join(lines) + "\n"
