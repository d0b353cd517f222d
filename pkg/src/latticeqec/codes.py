"""Subsystem codes on square (n x n) and cubic (n x n x n) qubit lattices.

The code on each lattice is described by three operator families:

* gauge group: generated by nearest-neighbour two-site operators.  In 2D
  these are XX pairs along columns and ZZ pairs along rows; in 3D, XX pairs
  along x and y and ZZ pairs along z and y.  Gauge elements act only on the
  unprotected subsystem and are harmless.
* stabilizer group: 2(n-1) commuting generators.  In 2D an X-type generator
  is two adjacent full rows of X and a Z-type generator two adjacent full
  columns of Z; in 3D, two adjacent yz-planes of X and two adjacent
  xy-planes of Z.
* logical operators: a single row/column (2D) or plane (3D) of X or Z,
  acting as the encoded X and Z on the protected qubit.

Every Pauli error P(a, b) reduces to two parity strings of length n: ``e``
holds the X-part parities (per column in 2D, per xy-plane in 3D) and ``f``
the Z-part parities (per row in 2D, per yz-plane in 3D).  Errors commuting
with the stabilizer have constant strings, and the residues (all-zero or
all-one) of e and f fix the logical action, which is how ``classify`` works.

Site indexing is row-major in 2D ((row, col) -> row*n + col) and x-major in
3D ((x, y, z) -> (x*n + y)*n + z).  Coordinates are 0-based throughout.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property
from itertools import product

from .pauli import PauliOperator

__all__ = [
    "CodeLayout",
    "ErrorStrings",
    "LogicalClass",
    "Classification",
    "build_code",
]


class LogicalClass(enum.Enum):
    """Action of a Pauli operator on the encoded qubit."""

    GAUGE = "gauge"
    LOGICAL_X = "logical_x"
    LOGICAL_Y = "logical_y"
    LOGICAL_Z = "logical_z"
    DETECTABLE = "detectable"


@dataclass(frozen=True)
class Classification:
    """Logical class plus, for detectable errors, the syndrome bit masks."""

    kind: LogicalClass
    sx: int = 0
    sz: int = 0


@dataclass(frozen=True)
class ErrorStrings:
    """Parity strings e (X part) and f (Z part), stored as n-bit masks.

    The strings of a product of operators are the XOR of the factors'
    strings, hence the ``^`` operator.
    """

    n: int
    e: int
    f: int

    def __xor__(self, other: "ErrorStrings") -> "ErrorStrings":
        if self.n != other.n:
            raise ValueError("length mismatch")
        return ErrorStrings(self.n, self.e ^ other.e, self.f ^ other.f)

    def e_bits(self) -> tuple[int, ...]:
        return tuple((self.e >> i) & 1 for i in range(self.n))

    def f_bits(self) -> tuple[int, ...]:
        return tuple((self.f >> i) & 1 for i in range(self.n))


def _parity(mask: int) -> int:
    return mask.bit_count() & 1


@dataclass(frozen=True)
class CodeLayout:
    """Lattice geometry plus the derived operator families (cached)."""

    dimension: int
    n: int

    def __post_init__(self):
        if self.dimension not in (2, 3):
            raise ValueError(f"dimension must be 2 or 3, got {self.dimension}")
        if self.n < 2:
            raise ValueError(f"side length must be at least 2, got {self.n}")
        if self.dimension == 3 and self.n % 2 == 0:
            # With even n the logical X and Z planes would overlap on an even
            # number of sites and commute, destroying the encoded qubit.
            raise ValueError("cubic lattices require odd side length")

    @property
    def num_sites(self) -> int:
        return self.n ** self.dimension

    def site_index(self, *coords: int) -> int:
        if len(coords) != self.dimension:
            raise ValueError(f"expected {self.dimension} coordinates")
        for c in coords:
            if not 0 <= c < self.n:
                raise ValueError(f"coordinate {c} outside 0..{self.n - 1}")
        idx = 0
        for c in coords:
            idx = idx * self.n + c
        return idx

    def site_coords(self, index: int) -> tuple[int, ...]:
        if not 0 <= index < self.num_sites:
            raise ValueError("site index out of range")
        coords = []
        for _ in range(self.dimension):
            coords.append(index % self.n)
            index //= self.n
        return tuple(reversed(coords))

    # -- parity masks --------------------------------------------------

    @cached_property
    def _e_masks(self) -> tuple[int, ...]:
        """Mask j selects the sites whose X part feeds e_j."""
        n = self.n
        masks = []
        if self.dimension == 2:
            for col in range(n):  # e_j = parity of column j
                m = 0
                for row in range(n):
                    m |= 1 << self.site_index(row, col)
                masks.append(m)
        else:
            for z in range(n):  # e_k = parity of xy-plane z = k
                m = 0
                for x, y in product(range(n), repeat=2):
                    m |= 1 << self.site_index(x, y, z)
                masks.append(m)
        return tuple(masks)

    @cached_property
    def _f_masks(self) -> tuple[int, ...]:
        """Mask i selects the sites whose Z part feeds f_i."""
        n = self.n
        masks = []
        if self.dimension == 2:
            for row in range(n):  # f_i = parity of row i
                m = 0
                for col in range(n):
                    m |= 1 << self.site_index(row, col)
                masks.append(m)
        else:
            for x in range(n):  # f_i = parity of yz-plane x = i
                m = 0
                for y, z in product(range(n), repeat=2):
                    m |= 1 << self.site_index(x, y, z)
                masks.append(m)
        return tuple(masks)

    # -- operator families ----------------------------------------------

    @cached_property
    def gauge_generators(self) -> tuple[PauliOperator, ...]:
        """Nearest-neighbour two-site generators of the gauge group."""
        n, N = self.n, self.num_sites
        ops = []
        if self.dimension == 2:
            for i in range(n - 1):  # XX pairs along columns
                for j in range(n):
                    mask = (1 << self.site_index(i, j)) | (1 << self.site_index(i + 1, j))
                    ops.append(PauliOperator(N, 0, mask, 0))
            for i in range(n):  # ZZ pairs along rows
                for j in range(n - 1):
                    mask = (1 << self.site_index(i, j)) | (1 << self.site_index(i, j + 1))
                    ops.append(PauliOperator(N, 0, 0, mask))
        else:
            for y, z in product(range(n), repeat=2):  # XX along x
                for x in range(n - 1):
                    mask = (1 << self.site_index(x, y, z)) | (1 << self.site_index(x + 1, y, z))
                    ops.append(PauliOperator(N, 0, mask, 0))
            for x, z in product(range(n), repeat=2):  # XX along y
                for y in range(n - 1):
                    mask = (1 << self.site_index(x, y, z)) | (1 << self.site_index(x, y + 1, z))
                    ops.append(PauliOperator(N, 0, mask, 0))
            for x, z in product(range(n), repeat=2):  # ZZ along y
                for y in range(n - 1):
                    mask = (1 << self.site_index(x, y, z)) | (1 << self.site_index(x, y + 1, z))
                    ops.append(PauliOperator(N, 0, 0, mask))
            for x, y in product(range(n), repeat=2):  # ZZ along z
                for z in range(n - 1):
                    mask = (1 << self.site_index(x, y, z)) | (1 << self.site_index(x, y, z + 1))
                    ops.append(PauliOperator(N, 0, 0, mask))
        return tuple(ops)

    @cached_property
    def x_stabilizer_generators(self) -> tuple[PauliOperator, ...]:
        """X-type stabilizers; generator i detects f_i xor f_{i+1}."""
        N = self.n ** self.dimension
        ops = []
        for i in range(self.n - 1):
            mask = self._f_masks[i] | self._f_masks[i + 1]
            ops.append(PauliOperator(N, 0, mask, 0))
        return tuple(ops)

    @cached_property
    def z_stabilizer_generators(self) -> tuple[PauliOperator, ...]:
        """Z-type stabilizers; generator j detects e_j xor e_{j+1}."""
        N = self.n ** self.dimension
        ops = []
        for j in range(self.n - 1):
            mask = self._e_masks[j] | self._e_masks[j + 1]
            ops.append(PauliOperator(N, 0, 0, mask))
        return tuple(ops)

    @cached_property
    def stabilizer_generators(self) -> tuple[PauliOperator, ...]:
        return self.x_stabilizer_generators + self.z_stabilizer_generators

    @cached_property
    def logical_operators(self) -> tuple[PauliOperator, PauliOperator, PauliOperator]:
        """(X, Z, Y) logical representatives.

        The logical X is one full row (2D) or yz-plane (3D) of X; the logical
        Z one full column or xy-plane of Z.  Their supports overlap on one
        site (2D) or n sites (3D, n odd), so they anticommute.  The logical Y
        is i * X * Z, the phase making it Hermitian.
        """
        N = self.num_sites
        logical_x = PauliOperator(N, 0, self._f_masks[0], 0)
        logical_z = PauliOperator(N, 0, 0, self._e_masks[0])
        product_xz = logical_x * logical_z
        logical_y = PauliOperator(N, product_xz.phase_exp + 1, product_xz.a, product_xz.b)
        return logical_x, logical_z, logical_y

    @cached_property
    def gauge_qubit_pairs(self) -> tuple[tuple[PauliOperator, PauliOperator], ...]:
        """(n-1)^2 anticommuting (Z-like, X-like) gauge qubit pairs (2D only).

        Pair (i, j) is Z_{i,j} Z_{i,j+1} together with X on rows i and n-1
        restricted to columns 0..j.  Within a pair the operators overlap on
        the single site (i, j); operators from distinct pairs commute.
        """
        if self.dimension != 2:
            raise ValueError("gauge qubit pairs are only constructed for 2D layouts")
        n, N = self.n, self.num_sites
        pairs = []
        for i in range(n - 1):
            for j in range(n - 1):
                z_mask = (1 << self.site_index(i, j)) | (1 << self.site_index(i, j + 1))
                x_mask = 0
                for col in range(j + 1):
                    x_mask |= 1 << self.site_index(i, col)
                    x_mask |= 1 << self.site_index(n - 1, col)
                pairs.append(
                    (PauliOperator(N, 0, 0, z_mask), PauliOperator(N, 0, x_mask, 0))
                )
        return tuple(pairs)

    # -- error analysis ---------------------------------------------------

    def error_strings(self, p: PauliOperator) -> ErrorStrings:
        if p.num_sites != self.num_sites:
            raise ValueError(
                f"operator has {p.num_sites} sites, layout has {self.num_sites}"
            )
        e = f = 0
        for idx in range(self.n):
            e |= _parity(p.a & self._e_masks[idx]) << idx
            f |= _parity(p.b & self._f_masks[idx]) << idx
        return ErrorStrings(self.n, e, f)

    def syndrome_bits(self, p: PauliOperator) -> tuple[int, int]:
        """(sx, sz) masks of the n-1 X-type and Z-type stabilizer outcomes."""
        strings = self.error_strings(p)
        low = (1 << (self.n - 1)) - 1
        sx = (strings.f ^ (strings.f >> 1)) & low
        sz = (strings.e ^ (strings.e >> 1)) & low
        return sx, sz

    def classify(self, p: PauliOperator) -> Classification:
        """Classify by stabilizer syndrome and error-string residues."""
        sx, sz = self.syndrome_bits(p)
        if sx or sz:
            return Classification(LogicalClass.DETECTABLE, sx, sz)
        strings = self.error_strings(p)
        full = (1 << self.n) - 1
        if strings.e not in (0, full) or strings.f not in (0, full):
            raise AssertionError("zero syndrome must force constant error strings")
        if strings.e and strings.f:
            return Classification(LogicalClass.LOGICAL_Y)
        if strings.e:
            return Classification(LogicalClass.LOGICAL_X)
        if strings.f:
            return Classification(LogicalClass.LOGICAL_Z)
        return Classification(LogicalClass.GAUGE)


def build_code(dimension: int, n: int) -> CodeLayout:
    """Construct the layout, rejecting invalid (dimension, n) combinations."""
    return CodeLayout(dimension, n)
