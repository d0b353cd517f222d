"""Syndrome decoding for the lattice subsystem codes.

The stabilizer measurements only reveal nearest-neighbour parities of the
error strings, so each of e and f is known up to complement.  Decoding
reconstructs the candidate anchored at first bit 0 by prefix sums, takes the
complement if that lowers the Hamming weight (ties keep the anchored
candidate), and applies a correction supported on one fixed column (2D) or
one fixed line of sites (3D).  Success means the corrected operator lands in
the gauge group; failure leaves one of the all-ones strings, i.e. a logical
error on the encoded qubit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .codes import Classification, CodeLayout, LogicalClass
from .pauli import PauliOperator

__all__ = [
    "Syndrome",
    "DecodeOutcome",
    "measure_syndrome",
    "decode_syndrome",
    "adjudicate",
    "analytic_failure_prob",
    "min_weight_preimage",
]


@dataclass(frozen=True)
class Syndrome:
    """Stabilizer outcomes as (n-1)-bit masks: sx_i = f_i ^ f_{i+1} etc."""

    n: int
    sx: int
    sz: int

    def sx_bits(self) -> tuple[int, ...]:
        return tuple((self.sx >> i) & 1 for i in range(self.n - 1))

    def sz_bits(self) -> tuple[int, ...]:
        return tuple((self.sz >> i) & 1 for i in range(self.n - 1))


@dataclass(frozen=True)
class DecodeOutcome:
    """Correction operator plus the inferred error strings it realises."""

    correction: PauliOperator
    inferred_e: int
    inferred_f: int


def measure_syndrome(layout: CodeLayout, error: PauliOperator) -> Syndrome:
    """Syndrome of ``error``; bit i is 1 iff the matching stabilizer
    generator anticommutes with the error."""
    sx, sz = layout.syndrome_bits(error)
    return Syndrome(layout.n, sx, sz)


def min_weight_preimage(syndrome_mask: int, n: int) -> int:
    """Minimum-weight n-bit string whose adjacent-pair XORs equal the mask.

    Exactly two strings are consistent with the n-1 parity bits: the one
    anchored at first bit 0 and its complement.  Returns the lighter one;
    on ties (possible only for even n) the anchored string wins.
    """
    anchored = 0
    current = 0
    for i in range(n - 1):
        current ^= (syndrome_mask >> i) & 1
        anchored |= current << (i + 1)
    complement = anchored ^ ((1 << n) - 1)
    if complement.bit_count() < anchored.bit_count():
        return complement
    return anchored


def decode_syndrome(layout: CodeLayout, syndrome: Syndrome) -> DecodeOutcome:
    """Reconstruct minimum-weight error strings and build the correction.

    The correction applies Z on sites in column 0 (row i for every inferred
    f_i = 1) and X on sites in row 0 (column j for every inferred e_j = 1);
    in 3D the supports are the line (i, 0, 0) and the line (0, 0, k).
    """
    if syndrome.n != layout.n:
        raise ValueError("syndrome length does not match layout")
    n = layout.n
    inferred_f = min_weight_preimage(syndrome.sx, n)
    inferred_e = min_weight_preimage(syndrome.sz, n)
    a_mask = b_mask = 0
    for i in range(n):
        if (inferred_f >> i) & 1:
            site = layout.site_index(i, 0) if layout.dimension == 2 else layout.site_index(i, 0, 0)
            b_mask |= 1 << site
        if (inferred_e >> i) & 1:
            site = layout.site_index(0, i) if layout.dimension == 2 else layout.site_index(0, 0, i)
            a_mask |= 1 << site
    correction = PauliOperator(layout.num_sites, 0, a_mask, b_mask)
    return DecodeOutcome(correction, inferred_e, inferred_f)


def adjudicate(layout: CodeLayout, error: PauliOperator, outcome: DecodeOutcome) -> Classification:
    """Residual logical class of correction * error.

    GAUGE means the recovery succeeded (identity on the encoded qubit); the
    LOGICAL_* classes name the encoded error left behind.  The outcome must
    have been produced from this error's syndrome.
    """
    if layout.syndrome_bits(outcome.correction) != layout.syndrome_bits(error):
        raise ValueError("decode outcome does not match the error's syndrome")
    residual = layout.classify(outcome.correction * error)
    if residual.kind is LogicalClass.DETECTABLE:
        raise AssertionError("correction must cancel the syndrome")
    return residual


def analytic_failure_prob(layout: CodeLayout, p_flip: float) -> float:
    """Exact failure probability of one decoding sector under iid flips.

    Each of the n parity bits is the XOR of m = n (2D) or n**2 (3D)
    independent flips of probability ``p_flip``, so it is set with
    probability q = (1 - (1 - 2 p)^m) / 2.  Decoding picks the wrong
    repetition codeword exactly when more than half the parity bits are set.
    Stated for Z flips and the f string; X flips and e behave identically.
    """
    if layout.n % 2 == 0:
        raise ValueError("closed form requires odd n (ties are rule dependent)")
    if not 0.0 <= p_flip <= 1.0:
        raise ValueError("p_flip must lie in [0, 1]")
    n = layout.n
    m = n ** (layout.dimension - 1)
    q = (1.0 - (1.0 - 2.0 * p_flip) ** m) / 2.0
    return sum(
        math.comb(n, k) * q**k * (1.0 - q) ** (n - k)
        for k in range((n + 1) // 2, n + 1)
    )
