"""Phase-tracked Pauli operators in symplectic (bit mask) form.

An operator on ``num_sites`` qubits is stored as two integer bit masks
``a`` (X part) and ``b`` (Z part) together with a power of i:

    operator = i**phase_exp * prod_over_sites X_s**a_s Z_s**b_s

with the X factor applied after the Z factor at each site.  Under this
ordering a site with a_s = b_s = 1 carries the matrix X @ Z = -iY, so the
Hermitian letter Y corresponds to the site pattern (1, 1) plus one extra
factor of i in ``phase_exp``.

Tracking the phase mod 4 (rather than just a sign) keeps multiplication an
exact matrix homomorphism: moving a Z past an X on the same site costs a
factor of -1 = i**2, and products of (1,1) sites generate +/-i.
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = ["PauliOperator", "PauliFormatError", "conjugate_transversal_cnot"]

_LETTER_TO_BITS = {"I": (0, 0), "X": (1, 0), "Z": (0, 1), "Y": (1, 1)}
_BITS_TO_LETTER = {v: k for k, v in _LETTER_TO_BITS.items()}
# Phase prefix written before the site letters; +1 is left implicit.
_PHASE_TOKEN = {0: "", 1: "+i", 2: "-1", 3: "-i"}
_TOKEN_PHASE = {"+1": 0, "+i": 1, "-1": 2, "-i": 3}


class PauliFormatError(ValueError):
    """Raised when a Pauli text string cannot be parsed."""


@dataclass(frozen=True)
class PauliOperator:
    """Immutable n-site Pauli operator i**phase_exp * X^a Z^b."""

    num_sites: int
    phase_exp: int = 0
    a: int = 0
    b: int = 0

    def __post_init__(self):
        if self.num_sites < 1:
            raise ValueError(f"num_sites must be positive, got {self.num_sites}")
        full = (1 << self.num_sites) - 1
        if not 0 <= self.a <= full:
            raise ValueError("X mask has bits outside the site range")
        if not 0 <= self.b <= full:
            raise ValueError("Z mask has bits outside the site range")
        object.__setattr__(self, "phase_exp", self.phase_exp % 4)

    # -- constructors ------------------------------------------------------

    @classmethod
    def identity(cls, num_sites: int) -> "PauliOperator":
        return cls(num_sites)

    @classmethod
    def single(cls, num_sites: int, site: int, letter: str) -> "PauliOperator":
        """Operator with one Hermitian Pauli ``letter`` at ``site``."""
        if not 0 <= site < num_sites:
            raise ValueError(f"site {site} outside range 0..{num_sites - 1}")
        try:
            a_bit, b_bit = _LETTER_TO_BITS[letter]
        except KeyError:
            raise PauliFormatError(f"unknown Pauli letter {letter!r}") from None
        phase = 1 if letter == "Y" else 0
        return cls(num_sites, phase, a_bit << site, b_bit << site)

    @classmethod
    def from_string(cls, text: str, num_sites: int | None = None) -> "PauliOperator":
        """Parse ``[phase]letters`` where phase is one of +1, -1, +i, -i."""
        body = text.strip()
        phase = 0
        for token, value in _TOKEN_PHASE.items():
            if body.startswith(token):
                phase = value
                body = body[len(token):]
                break
        if not body:
            raise PauliFormatError(f"no site letters in {text!r}")
        if num_sites is not None and len(body) != num_sites:
            raise PauliFormatError(
                f"expected {num_sites} site letters, got {len(body)} in {text!r}"
            )
        a = b = 0
        for site, letter in enumerate(body):
            if letter not in _LETTER_TO_BITS:
                raise PauliFormatError(f"unknown Pauli letter {letter!r} in {text!r}")
            a_bit, b_bit = _LETTER_TO_BITS[letter]
            a |= a_bit << site
            b |= b_bit << site
            if letter == "Y":
                phase += 1
        return cls(len(body), phase % 4, a, b)

    # -- algebra -----------------------------------------------------------

    def __mul__(self, other: "PauliOperator") -> "PauliOperator":
        """Group product; matrix(self * other) == matrix(self) @ matrix(other)."""
        if not isinstance(other, PauliOperator):
            return NotImplemented
        if self.num_sites != other.num_sites:
            raise ValueError(
                f"size mismatch: {self.num_sites} vs {other.num_sites} sites"
            )
        # Z^b X^a' = (-1)^{b.a'} X^a' Z^b site by site.
        phase = self.phase_exp + other.phase_exp + 2 * (self.b & other.a).bit_count()
        return PauliOperator(self.num_sites, phase % 4, self.a ^ other.a, self.b ^ other.b)

    def inverse(self) -> "PauliOperator":
        """(X^a Z^b)^-1 = Z^b X^a = (-1)^{|a&b|} X^a Z^b."""
        phase = -self.phase_exp + 2 * (self.a & self.b).bit_count()
        return PauliOperator(self.num_sites, phase % 4, self.a, self.b)

    def commutes_with(self, other: "PauliOperator") -> bool:
        """Symplectic form: <a, b'> + <b, a'> = 0 mod 2."""
        if self.num_sites != other.num_sites:
            raise ValueError(
                f"size mismatch: {self.num_sites} vs {other.num_sites} sites"
            )
        return ((self.a & other.b).bit_count() + (self.b & other.a).bit_count()) % 2 == 0

    def weight(self) -> int:
        """Number of sites acted on non-trivially."""
        return (self.a | self.b).bit_count()

    def is_identity(self) -> bool:
        return self.a == 0 and self.b == 0 and self.phase_exp == 0

    # -- formatting --------------------------------------------------------

    def to_string(self) -> str:
        letters = []
        y_count = 0
        for site in range(self.num_sites):
            bits = ((self.a >> site) & 1, (self.b >> site) & 1)
            letters.append(_BITS_TO_LETTER[bits])
            if bits == (1, 1):
                y_count += 1
        display_phase = (self.phase_exp - y_count) % 4
        return _PHASE_TOKEN[display_phase] + "".join(letters)

    def __str__(self) -> str:
        return self.to_string()


def conjugate_transversal_cnot(
    p_control: PauliOperator, p_target: PauliOperator
) -> tuple[PauliOperator, PauliOperator]:
    """Conjugate the pair (control, target) by CNOTs applied site by site.

    Each site of the control operator is the control of a CNOT whose target
    is the matching site of the target operator.  The propagation per site is
    X_c -> X_c X_t, Z_t -> Z_c Z_t, with X_t and Z_c unchanged.  In the
    X^a Z^b ordering this update is phase free, so the component phases pass
    through untouched.
    """
    if p_control.num_sites != p_target.num_sites:
        raise ValueError(
            f"size mismatch: {p_control.num_sites} vs {p_target.num_sites} sites"
        )
    n = p_control.num_sites
    new_control = PauliOperator(
        n, p_control.phase_exp, p_control.a, p_control.b ^ p_target.b
    )
    new_target = PauliOperator(
        n, p_target.phase_exp, p_target.a ^ p_control.a, p_target.b
    )
    return new_control, new_target
