"""Application layers: hash-bound commitments, challenge-response
authentication, and constraint-embedded puzzles with a desk-scale solver.
"""

from __future__ import annotations

import hmac
import random
from dataclasses import dataclass

from . import cr_scheme, disc_scheme
from .codec import TAG_COMMIT, hash_to_field, integrity_tag
from .errors import (
    DegenerateDenominator,
    DistinctnessViolation,
    IbcError,
    NoSolution,
)
from .field import FieldElement, FieldParams
from .messages import CrMessage, DiscMessage, Nonce, SharedSecret, TAG_SIZE
from .projective import cross_ratio, solve_fourth


# --- commitments ---------------------------------------------------------------


@dataclass(frozen=True)
class Commitment:
    """A published discriminant-scheme encoding whose hidden offset is the
    hash of the committed object; opening means revealing the object."""

    encoding: DiscMessage
    context: Nonce


def commit(secret: SharedSecret, data: bytes, params: FieldParams,
           rng) -> Commitment:
    """Commit to `data`: embed its field-valued hash as the hidden offset of
    a fresh authenticated exchange message."""
    nonce = Nonce.random(rng)
    embedded = hash_to_field(TAG_COMMIT, [data], params)
    msg, _, _ = disc_scheme.generate(secret, nonce, params, rng,
                                     with_auth=True, offset=embedded)
    return Commitment(msg, nonce)


def verify_commitment(secret: SharedSecret, data: bytes, commitment: Commitment,
                      params: FieldParams) -> bool:
    """Check that the commitment opens to exactly the hash of `data`.
    Never raises: any recovery failure is a verification failure."""
    expected = hash_to_field(TAG_COMMIT, [data], params)
    try:
        recovered = disc_scheme.recover(secret, commitment.encoding, params,
                                        random.Random(0))
    except IbcError:
        return False
    return recovered == {expected}


# --- challenge-response -----------------------------------------------------------


def cr_challenge(secret: SharedSecret, params: FieldParams, rng,
                 ) -> tuple[CrMessage, bytes]:
    """Build a masked cross-ratio instance with the fourth point withheld.
    Returns (challenge, expected_response_tag); the prover must reconstruct
    the fourth point to reproduce the tag."""
    nonce = Nonce.random(rng)
    challenge, fourth = cr_scheme.generate(secret, nonce, params, rng,
                                           use_mask=True, use_check=True)
    expected = integrity_tag("auth", secret, nonce, [fourth])
    return challenge, expected


def cr_respond(secret: SharedSecret, challenge: CrMessage,
               params: FieldParams) -> bytes:
    """Prover side: recover the withheld point and answer with a tag that
    binds it to the secret and nonce without revealing either."""
    fourth = cr_scheme.recover(secret, challenge, params, use_mask=True)
    return integrity_tag("auth", secret, challenge.nonce, [fourth])


def cr_check(expected: bytes, response: bytes) -> bool:
    """Verifier side: constant-time tag comparison."""
    return len(response) == TAG_SIZE and hmac.compare_digest(expected, response)


# --- puzzles ------------------------------------------------------------------------


@dataclass(frozen=True)
class Puzzle:
    """Find (z3, z4) with CR(z1, z2; z3, z4) = invariant and
    z3^lift(z4) = target."""

    z1: FieldElement
    z2: FieldElement
    invariant: FieldElement
    target: FieldElement
    params: FieldParams

    def __post_init__(self):
        if self.z1 == self.z2:
            raise ValueError("known points must be distinct")
        if self.invariant.is_zero():
            raise ValueError("invariant must be nonzero")

    def to_dict(self) -> dict:
        return {
            "p": f"{self.params.p:#x}",
            "n": self.params.n,
            "irreducible": list(self.params.irreducible) if self.params.irreducible else None,
            "z1": self.z1.to_bytes().hex(),
            "z2": self.z2.to_bytes().hex(),
            "invariant": self.invariant.to_bytes().hex(),
            "target": self.target.to_bytes().hex(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> Puzzle:
        params = FieldParams(int(d["p"], 16), d.get("n") or 1, d.get("irreducible"))
        return cls(
            params.element_from_bytes(bytes.fromhex(d["z1"])),
            params.element_from_bytes(bytes.fromhex(d["z2"])),
            params.element_from_bytes(bytes.fromhex(d["invariant"])),
            params.element_from_bytes(bytes.fromhex(d["target"])),
            params,
        )


PUZZLE_SOLVE_CAP = 1 << 20


def puzzle_make(params: FieldParams, rng) -> tuple[Puzzle, tuple[FieldElement, FieldElement]]:
    """Generate a puzzle with a known witness.

    The exponent constraint lifts z4 to its canonical integer representative
    before exponentiation.
    """
    while True:
        z1 = params.random_element(rng)
        z2 = params.random_element(rng)
        if z1 != z2:
            break
    while True:
        invariant = params.random_element(rng)
        if not invariant.is_zero():
            break
    while True:
        z3 = params.random_element(rng)
        if z3 == z1 or z3 == z2:
            continue
        try:
            z4 = solve_fourth(z1, z2, z3, invariant)
        except DegenerateDenominator:
            continue
        break
    target = z3 ** z4.lift()
    return Puzzle(z1, z2, invariant, target, params), (z3, z4)


def puzzle_verify(puzzle: Puzzle, z3: FieldElement, z4: FieldElement) -> bool:
    """Exact check of both constraints; degenerate inputs simply fail."""
    try:
        if cross_ratio(puzzle.z1, puzzle.z2, z3, z4) != puzzle.invariant:
            return False
    except IbcError:
        return False
    return z3 ** z4.lift() == puzzle.target


def puzzle_solve(puzzle: Puzzle) -> tuple[FieldElement, FieldElement]:
    """Brute-force scan in ascending z3 order.

    Each z3 determines at most one z4 through the cross-ratio identity, so
    the scan tests the exponent constraint once per field element, skipping
    degenerate candidates silently.  Raises NoSolution after a full scan.
    """
    params = puzzle.params
    if params.q > PUZZLE_SOLVE_CAP:
        raise ValueError(f"solver is desk-scale only: field order <= {PUZZLE_SOLVE_CAP}")
    for rank in range(params.q):
        z3 = params.element_from_lift(rank)
        try:
            z4 = solve_fourth(puzzle.z1, puzzle.z2, z3, puzzle.invariant)
        except (DegenerateDenominator, DistinctnessViolation):
            continue
        if z3 ** z4.lift() == puzzle.target:
            return z3, z4
    raise NoSolution("no witness satisfies both constraints")
