"""Hash derivations with strict domain separation, and the wire format.

Every derivation is a pure function of its inputs.  The hash framing is
bit-exact:

    SHA-256( tag || 0x00 || ctr || len32(part_1) || part_1 || ... )

with `ctr` a single-byte counter (one digest per extension coefficient; the
counter base advances by n when a nonzero-constrained draw hits zero).
Field elements enter hashes and the wire in their canonical byte encoding.
"""

from __future__ import annotations

import hashlib

from .errors import (
    BadMagic,
    BadVersion,
    InternalError,
    MalformedMessage,
    Truncated,
    UnknownTag,
    UnknownType,
)
from .field import FieldElement, FieldParams
from .messages import (
    CrMessage,
    DiscMessage,
    Message,
    MinimalMessage,
    Nonce,
    NONCE_SIZE,
    SharedRootInitMessage,
    SharedSecret,
    StreamMessage,
    TAG_SIZE,
)
from .projective import MobiusMap

TAG_EVAL_POINT = b"IBC/t"
TAG_INVARIANT = b"IBC/inv"
TAG_MASK = b"IBC/mask"
TAG_COMMIT = b"IBC/commit"
_FIELD_TAGS = frozenset({TAG_EVAL_POINT, TAG_INVARIANT, TAG_MASK, TAG_COMMIT})

_INTEGRITY_TAGS = {"check": b"IBC/check", "auth": b"IBC/auth"}

MASK_ATTEMPT_CAP = 256


def _len32(part: bytes) -> bytes:
    return len(part).to_bytes(4, "big")


def _digest(tag: bytes, ctr: int, parts) -> bytes:
    h = hashlib.sha256()
    h.update(tag)
    h.update(b"\x00")
    h.update(bytes([ctr]))
    for part in parts:
        h.update(_len32(part))
        h.update(part)
    return h.digest()


def hash_to_field(tag: bytes, parts, params: FieldParams,
                  constraint: str = "any") -> FieldElement:
    """Map tagged byte strings to a field element.

    Each coefficient comes from one digest (big-endian integer reduced mod
    p); under constraint="nonzero" a zero result bumps the counter base and
    redraws, so the output is never zero.
    """
    if tag not in _FIELD_TAGS:
        raise UnknownTag(f"unregistered derivation tag {tag!r}")
    if constraint not in ("any", "nonzero"):
        raise ValueError("constraint must be 'any' or 'nonzero'")
    parts = [bytes(p) for p in parts]
    base = 0
    while True:
        if base + params.n - 1 > 0xFF:
            raise InternalError("hash-to-field counter exhausted")
        coeffs = tuple(
            int.from_bytes(_digest(tag, base + i, parts), "big") % params.p
            for i in range(params.n)
        )
        elem = FieldElement(params, coeffs)
        if constraint == "nonzero" and elem.is_zero():
            base += params.n
            continue
        return elem


def derive_eval_point(secret: SharedSecret, nonce: Nonce,
                      params: FieldParams) -> FieldElement:
    """The shared evaluation point, derived from secret and nonce."""
    return hash_to_field(TAG_EVAL_POINT, [secret.value, nonce.value], params)


def derive_invariant(secret: SharedSecret, nonce: Nonce,
                     params: FieldParams) -> FieldElement:
    """The session invariant: nonzero by construction.  Serves as the
    session discriminant in derived-invariant mode and as the target
    cross-ratio in the cross-ratio scheme."""
    return hash_to_field(TAG_INVARIANT, [secret.value, nonce.value], params,
                         constraint="nonzero")


def derive_mask(secret: SharedSecret, nonce: Nonce,
                params: FieldParams) -> MobiusMap:
    """The session masking map: four sub-indexed draws for (a, b, c, d),
    redrawn with a bumped attempt byte until the determinant is nonzero."""
    for attempt in range(MASK_ATTEMPT_CAP):
        a, b, c, d = (
            hash_to_field(
                TAG_MASK,
                [secret.value, nonce.value, bytes([i]), bytes([attempt])],
                params,
            )
            for i in range(4)
        )
        if not (a * d - b * c).is_zero():
            return MobiusMap(a, b, c, d)
    raise InternalError("mask derivation failed to find an invertible map")


def _encode_part(part) -> bytes:
    if isinstance(part, FieldElement):
        return part.to_bytes()
    if isinstance(part, (bytes, bytearray)):
        return bytes(part)
    raise TypeError(f"cannot hash part of type {type(part).__name__}")


def integrity_tag(kind: str, secret: SharedSecret, nonce: Nonce,
                  parts) -> bytes:
    """32-byte binding tag over secret, nonce, and the listed parts.

    kind "check" binds transmitted message fields; kind "auth" binds the
    recovered secret value for disambiguation.
    """
    try:
        tag = _INTEGRITY_TAGS[kind]
    except KeyError:
        raise UnknownTag(f"unknown integrity tag kind {kind!r}") from None
    h = hashlib.sha256()
    h.update(tag)
    h.update(b"\x00")
    for part in (secret.value, nonce.value, *map(_encode_part, parts)):
        h.update(_len32(part))
        h.update(part)
    return h.digest()


# --- wire format --------------------------------------------------------------

MAGIC = b"IBC1"
VERSION = 0x01

TYPE_DISC_FULL = 0x01
TYPE_DISC_MINIMAL = 0x02
TYPE_SHARED_ROOT_INIT = 0x03
TYPE_SHARED_ROOT_STREAM = 0x04
TYPE_CROSS_RATIO = 0x05

_TYPE_CODES = {
    DiscMessage: TYPE_DISC_FULL,
    MinimalMessage: TYPE_DISC_MINIMAL,
    SharedRootInitMessage: TYPE_SHARED_ROOT_INIT,
    StreamMessage: TYPE_SHARED_ROOT_STREAM,
    CrMessage: TYPE_CROSS_RATIO,
}


def _message_fields(msg: Message) -> list[bytes]:
    if isinstance(msg, DiscMessage):
        fields = [msg.root2.to_bytes(), msg.root3.to_bytes(), msg.disc.to_bytes(),
                  msg.value.to_bytes(), msg.nonce.value, msg.check_tag]
        if msg.auth_tag is not None:
            fields.append(msg.auth_tag)
        return fields
    if isinstance(msg, MinimalMessage):
        return [msg.root2.to_bytes(), msg.root3.to_bytes(), msg.value.to_bytes()]
    if isinstance(msg, SharedRootInitMessage):
        return [msg.root2.to_bytes(), msg.root3.to_bytes(), msg.disc.to_bytes(),
                msg.value.to_bytes()]
    if isinstance(msg, StreamMessage):
        return [msg.root2.to_bytes(), msg.root3.to_bytes(), msg.offset.to_bytes()]
    if isinstance(msg, CrMessage):
        fields = [msg.m1.to_bytes(), msg.m2.to_bytes(), msg.m3.to_bytes(),
                  msg.nonce.value]
        if msg.check_tag is not None:
            fields.append(msg.check_tag)
        return fields
    raise TypeError(f"not a protocol message: {type(msg).__name__}")


def encode_message(msg: Message) -> bytes:
    """Frame a message: magic, version, type byte, big-endian u16 field
    count, then u32-length-prefixed canonical field bytes."""
    code = _TYPE_CODES[type(msg)]
    fields = _message_fields(msg)
    out = bytearray()
    out += MAGIC
    out.append(VERSION)
    out.append(code)
    out += len(fields).to_bytes(2, "big")
    for field in fields:
        out += _len32(field)
        out += field
    return bytes(out)


def _take(data: bytes, offset: int, size: int) -> tuple[bytes, int]:
    if offset + size > len(data):
        raise Truncated(f"need {size} bytes at offset {offset}, have {len(data) - offset}")
    return data[offset:offset + size], offset + size


def decode_message(data: bytes, params: FieldParams) -> Message:
    """Inverse of encode_message; field elements are validated against the
    supplied parameters (canonical residues only)."""
    off = 0
    magic, off = _take(data, off, 4)
    if magic != MAGIC:
        raise BadMagic(f"bad magic {magic!r}")
    version, off = _take(data, off, 1)
    if version[0] != VERSION:
        raise BadVersion(f"unsupported version {version[0]}")
    code, off = _take(data, off, 1)
    code = code[0]
    count_b, off = _take(data, off, 2)
    count = int.from_bytes(count_b, "big")
    fields = []
    for _ in range(count):
        size_b, off = _take(data, off, 4)
        field, off = _take(data, off, int.from_bytes(size_b, "big"))
        fields.append(field)
    if off != len(data):
        raise MalformedMessage(f"{len(data) - off} trailing bytes")

    def elem(i: int) -> FieldElement:
        if len(fields[i]) != params.element_size:
            raise MalformedMessage(f"field {i}: expected a field element")
        try:
            return params.element_from_bytes(fields[i])
        except ValueError as exc:
            raise MalformedMessage(f"field {i}: {exc}") from None

    def raw(i: int, size: int) -> bytes:
        if len(fields[i]) != size:
            raise MalformedMessage(f"field {i}: expected {size} bytes")
        return fields[i]

    try:
        if code == TYPE_DISC_FULL:
            if count not in (6, 7):
                raise MalformedMessage(f"disc-full message has {count} fields")
            auth = raw(6, TAG_SIZE) if count == 7 else None
            return DiscMessage(elem(0), elem(1), elem(2), elem(3),
                               Nonce(raw(4, NONCE_SIZE)), raw(5, TAG_SIZE), auth)
        if code == TYPE_DISC_MINIMAL:
            if count != 3:
                raise MalformedMessage(f"minimal message has {count} fields")
            return MinimalMessage(elem(0), elem(1), elem(2))
        if code == TYPE_SHARED_ROOT_INIT:
            if count != 4:
                raise MalformedMessage(f"init message has {count} fields")
            return SharedRootInitMessage(elem(0), elem(1), elem(2), elem(3))
        if code == TYPE_SHARED_ROOT_STREAM:
            if count != 3:
                raise MalformedMessage(f"stream message has {count} fields")
            return StreamMessage(elem(0), elem(1), elem(2))
        if code == TYPE_CROSS_RATIO:
            if count not in (4, 5):
                raise MalformedMessage(f"cross-ratio message has {count} fields")
            check = raw(4, TAG_SIZE) if count == 5 else None
            return CrMessage(elem(0), elem(1), elem(2),
                             Nonce(raw(3, NONCE_SIZE)), check)
    except ValueError as exc:
        raise MalformedMessage(str(exc)) from None
    raise UnknownType(f"unknown message type {code:#04x}")
