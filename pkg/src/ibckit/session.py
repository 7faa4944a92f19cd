"""Session modes with invariant reuse.

Derived-invariant mode never transmits the discriminant: both sides derive
it from (secret, nonce) and every message carries just two open roots and a
shifted evaluation.  Shared-root mode recovers the hidden root once at
initialization, then streams bare (root2, root3, offset) triples from which
both sides compute the same evaluation value.

Per the scheme's message shapes these payloads carry no hash tags; they
assume an authenticated transport or a prior full-exchange handshake.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .codec import derive_eval_point, derive_invariant
from .errors import (
    AmbiguousInit,
    DegenerateRoots,
    NoCandidateRoot,
    NoShiftSolution,
    SamplingFailure,
    UninitializedSession,
)
from .field import FieldElement, FieldParams
from .messages import MinimalMessage, Nonce, SharedRootInitMessage, SharedSecret, StreamMessage
from .poly import discriminant_cubic, from_roots, solve_hidden_root, solve_offset

DERIVED_INVARIANT = "derived_invariant"
SHARED_ROOT = "shared_root"

TRIPLE_RETRY_CAP = 1024


@dataclass
class SessionState:
    """Per-party context: one instance per party per session, single-owner.

    The evaluation point is always derived; the session discriminant only
    exists in derived-invariant mode, and the shared root only after a
    shared-root initialization.  The message counter orders transcripts and
    never influences derived values.
    """

    secret: SharedSecret
    nonce: Nonce
    params: FieldParams
    mode: str
    eval_point: FieldElement
    disc: FieldElement | None = None
    shared_root: FieldElement | None = None
    msg_counter: int = 0

    @classmethod
    def create(cls, secret: SharedSecret, nonce: Nonce, params: FieldParams,
               mode: str) -> SessionState:
        if mode not in (DERIVED_INVARIANT, SHARED_ROOT):
            raise ValueError(f"unknown session mode {mode!r}")
        disc = derive_invariant(secret, nonce, params) if mode == DERIVED_INVARIANT else None
        return cls(secret=secret, nonce=nonce, params=params, mode=mode,
                   eval_point=derive_eval_point(secret, nonce, params), disc=disc)

    def _require_mode(self, mode: str) -> None:
        if self.mode != mode:
            raise ValueError(f"operation requires {mode} mode, session is {self.mode}")


def _choose(items: list, rng):
    """Uniform pick using only rng.getrandbits (rejection on the index)."""
    k = len(items)
    if k == 1:
        return items[0]
    bits = (k - 1).bit_length()
    while True:
        i = rng.getrandbits(bits)
        if i < k:
            return items[i]


def invariant_is_sampleable(disc: FieldElement) -> bool:
    """Whether any in-field root triple attains this discriminant.

    The discriminant of a triple is a squared product of differences, so it
    is always a square: a non-square session invariant admits no triple at
    all.  Hash-derived invariants land on a non-square for about half of all
    nonces; callers that need a derived-invariant session should screen
    nonces with this predicate.
    """
    return disc.is_square() and not disc.is_zero()


def sample_root_triple(disc: FieldElement, params: FieldParams, rng,
                       ) -> tuple[FieldElement, FieldElement, FieldElement]:
    """A uniform root triple whose cubic discriminant equals `disc` exactly:
    open roots are drawn freely and the hidden root is picked among the
    discriminant-identity solutions, resampling when none exist (roughly half
    of the open pairs admit one).

    A non-square discriminant is unattainable and fails fast instead of
    burning the retry budget.
    """
    if disc.is_zero():
        raise ValueError("discriminant must be nonzero")
    if not disc.is_square():
        raise SamplingFailure(
            "session invariant is not a square; no in-field triple attains it"
        )
    for _ in range(TRIPLE_RETRY_CAP):
        r2 = params.random_element(rng)
        r3 = params.random_element(rng)
        if r2 == r3:
            continue
        candidates = sorted(solve_hidden_root(r2, r3, disc))
        if candidates:
            return _choose(candidates, rng), r2, r3
    raise SamplingFailure(f"no admissible triple after {TRIPLE_RETRY_CAP} draws")


# --- derived-invariant (minimal transmission) mode -----------------------------


def minimal_send(state: SessionState, rng) -> tuple[MinimalMessage, FieldElement]:
    """Sample a triple on the session discriminant, hide the offset in the
    shifted evaluation, and emit only (root2, root3, value)."""
    state._require_mode(DERIVED_INVARIANT)
    r1, r2, r3 = sample_root_triple(state.disc, state.params, rng)
    offset = state.params.random_element(rng)
    value = from_roots([r1, r2, r3]).evaluate(state.eval_point + offset)
    state.msg_counter += 1
    return MinimalMessage(r2, r3, value), offset


def minimal_receive(state: SessionState, msg: MinimalMessage,
                    rng=None) -> set[FieldElement]:
    """Recover the offset set from a minimal message using the derived
    discriminant.  Failures signal tampering or desynchronized secrets."""
    state._require_mode(DERIVED_INVARIANT)
    if rng is None:
        rng = random.Random(0)
    try:
        candidates = solve_hidden_root(msg.root2, msg.root3, state.disc)
    except DegenerateRoots:
        raise NoCandidateRoot("open roots coincide") from None
    if not candidates:
        raise NoCandidateRoot("no hidden root matches the session discriminant")
    offsets: set[FieldElement] = set()
    for r1 in sorted(candidates):
        P = from_roots([r1, msg.root2, msg.root3])
        offsets |= solve_offset(P, state.eval_point, msg.value, rng)
    if not offsets:
        raise NoShiftSolution("no offset satisfies the shifted evaluation")
    state.msg_counter += 1
    return offsets


# --- shared-root mode ------------------------------------------------------------


def shared_root_init_send(state: SessionState, rng,
                          ) -> tuple[SharedRootInitMessage, FieldElement, FieldElement]:
    """Initialization: a full tagless exchange establishing the shared root
    on the sender side.  Returns (message, offset, shared_root)."""
    state._require_mode(SHARED_ROOT)
    if state.shared_root is not None:
        raise ValueError("session already initialized")
    while True:
        r1 = state.params.random_element(rng)
        r2 = state.params.random_element(rng)
        r3 = state.params.random_element(rng)
        if r1 != r2 and r1 != r3 and r2 != r3:
            break
    offset = state.params.random_element(rng)
    P = from_roots([r1, r2, r3])
    disc = discriminant_cubic(P)
    value = P.evaluate(state.eval_point + offset)
    state.shared_root = r1
    state.msg_counter += 1
    return SharedRootInitMessage(r2, r3, disc, value), offset, r1


def shared_root_init_receive(state: SessionState, msg: SharedRootInitMessage,
                             rng=None) -> set[tuple[FieldElement, FieldElement]]:
    """Initialization receive: commits the shared root only when exactly one
    hidden-root candidate admits offset solutions; otherwise the init is
    ambiguous and nothing is committed."""
    state._require_mode(SHARED_ROOT)
    if state.shared_root is not None:
        raise ValueError("session already initialized")
    if rng is None:
        rng = random.Random(0)
    candidates = solve_hidden_root(msg.root2, msg.root3, msg.disc)
    if not candidates:
        raise NoCandidateRoot("discriminant identity has no hidden-root solution")
    viable: dict[FieldElement, set[FieldElement]] = {}
    for r1 in sorted(candidates):
        P = from_roots([r1, msg.root2, msg.root3])
        offsets = solve_offset(P, state.eval_point, msg.value, rng)
        if offsets:
            viable[r1] = offsets
    if not viable:
        raise NoShiftSolution("no candidate root admits an offset solution")
    if len(viable) > 1:
        raise AmbiguousInit(f"{len(viable)} candidate roots are viable; refusing to guess")
    (root, offsets), = viable.items()
    state.shared_root = root
    state.msg_counter += 1
    return {(root, offset) for offset in offsets}


def stream_send(state: SessionState, rng) -> tuple[StreamMessage, FieldElement]:
    """Streaming: fresh open roots and offset in the clear; the returned
    value is the shared evaluation both sides compute."""
    state._require_mode(SHARED_ROOT)
    if state.shared_root is None:
        raise UninitializedSession("stream before shared-root initialization")
    while True:
        r2 = state.params.random_element(rng)
        r3 = state.params.random_element(rng)
        if r2 != r3:
            break
    offset = state.params.random_element(rng)
    P = from_roots([state.shared_root, r2, r3])
    value = P.evaluate(state.eval_point + offset)
    state.msg_counter += 1
    return StreamMessage(r2, r3, offset), value


def stream_receive(state: SessionState, msg: StreamMessage) -> FieldElement:
    """Streaming receive: rebuild the cubic with the shared root and evaluate."""
    state._require_mode(SHARED_ROOT)
    if state.shared_root is None:
        raise UninitializedSession("stream before shared-root initialization")
    P = from_roots([state.shared_root, msg.root2, msg.root3])
    value = P.evaluate(state.eval_point + msg.offset)
    state.msg_counter += 1
    return value
