"""Wire-level protocol payloads.

One dataclass per message type; construction enforces the structural
invariants (distinct transmitted roots, nonzero discriminant, tag sizes).
The byte framing lives in codec.encode_message / codec.decode_message.
"""

from __future__ import annotations

from dataclasses import dataclass

from .field import FieldElement

SECRET_SIZE = 32
NONCE_SIZE = 32
TAG_SIZE = 32


@dataclass(frozen=True)
class SharedSecret:
    """The 256-bit symmetric secret shared by both parties."""

    value: bytes

    def __post_init__(self):
        if len(self.value) != SECRET_SIZE:
            raise ValueError(f"shared secret must be {SECRET_SIZE} bytes")

    @classmethod
    def random(cls, rng) -> SharedSecret:
        return cls(rng.getrandbits(8 * SECRET_SIZE).to_bytes(SECRET_SIZE, "big"))

    def __repr__(self):
        return "SharedSecret(...)"


@dataclass(frozen=True)
class Nonce:
    """A 256-bit session nonce."""

    value: bytes

    def __post_init__(self):
        if len(self.value) != NONCE_SIZE:
            raise ValueError(f"nonce must be {NONCE_SIZE} bytes")

    @classmethod
    def random(cls, rng) -> Nonce:
        return cls(rng.getrandbits(8 * NONCE_SIZE).to_bytes(NONCE_SIZE, "big"))

    def __repr__(self):
        return f"Nonce({self.value.hex()})"


def _check_tag(tag: bytes, name: str) -> None:
    if not isinstance(tag, bytes) or len(tag) != TAG_SIZE:
        raise ValueError(f"{name} must be {TAG_SIZE} bytes")


@dataclass(frozen=True)
class DiscMessage:
    """Full discriminant-scheme payload: two open roots, the discriminant,
    the shifted evaluation, the nonce, and the binding tags."""

    root2: FieldElement
    root3: FieldElement
    disc: FieldElement
    value: FieldElement
    nonce: Nonce
    check_tag: bytes
    auth_tag: bytes | None = None

    def __post_init__(self):
        if self.root2 == self.root3:
            raise ValueError("open roots must be distinct")
        if self.disc.is_zero():
            raise ValueError("discriminant must be nonzero")
        _check_tag(self.check_tag, "check_tag")
        if self.auth_tag is not None:
            _check_tag(self.auth_tag, "auth_tag")


@dataclass(frozen=True)
class MinimalMessage:
    """Derived-invariant session payload: just the open roots and the
    shifted evaluation (the discriminant is never transmitted)."""

    root2: FieldElement
    root3: FieldElement
    value: FieldElement

    def __post_init__(self):
        if self.root2 == self.root3:
            raise ValueError("open roots must be distinct")


@dataclass(frozen=True)
class SharedRootInitMessage:
    """Shared-root session initialization: like DiscMessage but tagless."""

    root2: FieldElement
    root3: FieldElement
    disc: FieldElement
    value: FieldElement

    def __post_init__(self):
        if self.root2 == self.root3:
            raise ValueError("open roots must be distinct")
        if self.disc.is_zero():
            raise ValueError("discriminant must be nonzero")


@dataclass(frozen=True)
class StreamMessage:
    """Shared-root streaming payload: fresh open roots plus the offset in
    the clear; the derived value never travels."""

    root2: FieldElement
    root3: FieldElement
    offset: FieldElement

    def __post_init__(self):
        if self.root2 == self.root3:
            raise ValueError("open roots must be distinct")


@dataclass(frozen=True)
class CrMessage:
    """Cross-ratio payload: three (optionally masked) points, the nonce,
    and an optional binding tag."""

    m1: FieldElement
    m2: FieldElement
    m3: FieldElement
    nonce: Nonce
    check_tag: bytes | None = None

    def __post_init__(self):
        if self.m1 == self.m2 or self.m1 == self.m3 or self.m2 == self.m3:
            raise ValueError("transmitted points must be pairwise distinct")
        if self.check_tag is not None:
            _check_tag(self.check_tag, "check_tag")


SessionMessage = MinimalMessage | SharedRootInitMessage | StreamMessage

Message = DiscMessage | MinimalMessage | SharedRootInitMessage | StreamMessage | CrMessage
