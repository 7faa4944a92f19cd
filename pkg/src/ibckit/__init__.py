"""ibckit: invariant-based symmetric cryptography toolkit.

Symmetric schemes built on preserved algebraic relations over finite
fields: a discriminant-bound cubic exchange, compact session modes that
reuse the invariant, a cross-ratio exchange under projective masking, and
constraint-embedded puzzles.  A CLI (`ibckit`) runs full two-party demos,
sessions, puzzles, and a desk-scale masking experiment.
"""

from . import applications, codec, cr_scheme, disc_scheme, errors, poly, session
from .applications import (
    Commitment,
    Puzzle,
    commit,
    cr_challenge,
    cr_check,
    cr_respond,
    puzzle_make,
    puzzle_solve,
    puzzle_verify,
    verify_commitment,
)
from .codec import (
    decode_message,
    derive_eval_point,
    derive_invariant,
    derive_mask,
    encode_message,
    hash_to_field,
    integrity_tag,
)
from .field import FieldElement, FieldParams
from .messages import (
    CrMessage,
    DiscMessage,
    MinimalMessage,
    Nonce,
    SessionMessage,
    SharedRootInitMessage,
    SharedSecret,
    StreamMessage,
)
from .poly import (
    Polynomial,
    discriminant_cubic,
    from_roots,
    roots_in_field,
    solve_hidden_root,
    solve_offset,
)
from .projective import (
    INFINITY,
    MobiusMap,
    ProjPoint,
    apply_mask,
    cross_ratio,
    invert_mask,
    solve_fourth,
)
from .session import (
    DERIVED_INVARIANT,
    SHARED_ROOT,
    SessionState,
    invariant_is_sampleable,
    minimal_receive,
    minimal_send,
    sample_root_triple,
    shared_root_init_receive,
    shared_root_init_send,
    stream_receive,
    stream_send,
)

__version__ = "0.1.0"

SECP256K1_PRIME = 2**256 - 2**32 - 977
