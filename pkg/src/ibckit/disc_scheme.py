"""The discriminant-based exchange.

The sender hides one root of a cubic and a random evaluation offset; the
receiver reconstructs hidden-root candidates from the transmitted
discriminant, solves the shifted-evaluation equation for each, and (when the
auth tag is present) keeps exactly the offset that the tag binds.
"""

from __future__ import annotations

import hmac
import random

from .codec import derive_eval_point, integrity_tag
from .errors import AmbiguousAuth, IntegrityFailure, NoCandidateRoot, NoShiftSolution
from .field import FieldElement, FieldParams
from .messages import DiscMessage, Nonce, SharedSecret
from .poly import discriminant_cubic, from_roots, solve_hidden_root, solve_offset


def generate(secret: SharedSecret, nonce: Nonce, params: FieldParams, rng,
             with_auth: bool = True,
             offset: FieldElement | None = None,
             ) -> tuple[DiscMessage, FieldElement, FieldElement]:
    """Build a full exchange message.

    Returns (message, offset, hidden_root); the secrets are explicit outputs
    so tests and higher layers (commitments) can use them, and a production
    wrapper can discard them.  `offset` may be forced by the caller (the
    commitment scheme embeds a hash there); by default it is sampled fresh.
    """
    t = derive_eval_point(secret, nonce, params)
    while True:
        r1 = params.random_element(rng)
        r2 = params.random_element(rng)
        r3 = params.random_element(rng)
        # Distinct roots guarantee a nonzero discriminant; on any collision
        # all three are redrawn.
        if r1 != r2 and r1 != r3 and r2 != r3:
            break
    if offset is None:
        offset = params.random_element(rng)
    P = from_roots([r1, r2, r3])
    disc = discriminant_cubic(P)
    value = P.evaluate(t + offset)
    check = integrity_tag("check", secret, nonce, [r2, r3, disc, value])
    auth = integrity_tag("auth", secret, nonce, [offset]) if with_auth else None
    msg = DiscMessage(r2, r3, disc, value, nonce, check, auth)
    return msg, offset, r1


def recover(secret: SharedSecret, msg: DiscMessage, params: FieldParams,
            rng=None) -> set[FieldElement]:
    """Verify the binding tag and recover the hidden offset(s).

    Without an auth tag, every offset consistent with some hidden-root
    candidate is returned.  With one, exactly one offset must match it: zero
    matches mean the auth tag itself fails to authenticate (IntegrityFailure),
    several matches are AmbiguousAuth.
    """
    if rng is None:
        rng = random.Random(0)
    expect = integrity_tag("check", secret, msg.nonce,
                           [msg.root2, msg.root3, msg.disc, msg.value])
    if not hmac.compare_digest(expect, msg.check_tag):
        raise IntegrityFailure("check tag mismatch: message tampered or wrong secret")
    t = derive_eval_point(secret, msg.nonce, params)
    candidates = solve_hidden_root(msg.root2, msg.root3, msg.disc)
    if not candidates:
        raise NoCandidateRoot("discriminant identity has no hidden-root solution")
    offsets: set[FieldElement] = set()
    for r1 in sorted(candidates):
        P = from_roots([r1, msg.root2, msg.root3])
        offsets |= solve_offset(P, t, msg.value, rng)
    if not offsets:
        raise NoShiftSolution("no offset satisfies the shifted evaluation")
    if msg.auth_tag is not None:
        matching = {
            h for h in offsets
            if hmac.compare_digest(integrity_tag("auth", secret, msg.nonce, [h]),
                                   msg.auth_tag)
        }
        if not matching:
            raise IntegrityFailure("auth tag matches no recovered offset")
        if len(matching) > 1:
            raise AmbiguousAuth(f"auth tag matched {len(matching)} offsets, need exactly 1")
        return matching
    return offsets
