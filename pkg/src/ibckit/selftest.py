"""Built-in desk-scale property suites behind `ibckit selftest`.

Each check is small enough to run in a second or two; the pytest suite under
tests/ is the full verification, this is the quick field check.
"""

from __future__ import annotations

import random

from . import applications, cr_scheme, disc_scheme, session
from .codec import decode_message, derive_invariant, encode_message
from .errors import BadMagic, IntegrityFailure, Truncated, UnknownType
from .field import FieldParams
from .messages import Nonce, SharedSecret
from .poly import Polynomial, discriminant_cubic, from_roots, roots_in_field
from .projective import apply_mask, cross_ratio, solve_fourth


def _check_field_axioms():
    rng = random.Random(11)
    for params in (FieldParams(13), FieldParams(3, 5, [1, 2, 0, 0, 0, 1])):
        one = params.one()
        for _ in range(500):
            a = params.random_element(rng)
            b = params.random_element(rng)
            c = params.random_element(rng)
            assert (a + b) + c == a + (b + c)
            assert a * b == b * a
            assert a * (b + c) == a * b + a * c
            assert a + (-a) == params.zero()
            if not a.is_zero():
                assert a * a.inverse() == one
                assert a ** (params.q - 1) == one


def _check_sqrt():
    params = FieldParams(101)
    squares = {(params.element(i) * params.element(i)) for i in range(101)}
    for i in range(101):
        x = params.element(i)
        if x in squares:
            r = x.sqrt()
            assert r * r == x
        else:
            try:
                x.sqrt()
                raise AssertionError(f"sqrt accepted non-residue {i}")
            except Exception:
                pass


def _check_roots_roundtrip():
    params = FieldParams(251)
    rng = random.Random(12)
    for _ in range(50):
        roots = [params.random_element(rng) for _ in range(rng.randrange(1, 6))]
        P = from_roots(roots)
        assert roots_in_field(P, rng) == set(roots)


def _check_discriminant():
    params = FieldParams(10007)
    rng = random.Random(13)
    for _ in range(200):
        triple = [params.random_element(rng) for _ in range(3)]
        d = discriminant_cubic(from_roots(triple))
        prod = params.one()
        for i in range(3):
            for j in range(i + 1, 3):
                prod = prod * (triple[i] - triple[j])
        assert d == prod * prod


def _check_disc_exchange():
    params = FieldParams(10007)
    rng = random.Random(14)
    secret = SharedSecret.random(rng)
    for _ in range(50):
        nonce = Nonce.random(rng)
        msg, offset, _ = disc_scheme.generate(secret, nonce, params, rng, with_auth=True)
        assert disc_scheme.recover(secret, msg, params, rng) == {offset}


def _check_tamper_detection():
    params = FieldParams(10007)
    rng = random.Random(15)
    secret = SharedSecret.random(rng)
    nonce = Nonce.random(rng)
    msg, _, _ = disc_scheme.generate(secret, nonce, params, rng)
    bumped = msg.root2 + params.one()
    if bumped == msg.root3:
        bumped = bumped + params.one()
    tampered = type(msg)(bumped, msg.root3, msg.disc, msg.value,
                         msg.nonce, msg.check_tag, msg.auth_tag)
    try:
        disc_scheme.recover(secret, tampered, params, rng)
        raise AssertionError("tampered message accepted")
    except IntegrityFailure:
        pass


def _check_cross_ratio_invariance():
    params = FieldParams(10007)
    rng = random.Random(16)
    for _ in range(300):
        pts = []
        while len(pts) < 4:
            x = params.random_element(rng)
            if x not in pts:
                pts.append(x)
        mask = cr_scheme._uniform_mask(params, rng)
        masked = [apply_mask(mask, z) for z in pts]
        assert cross_ratio(*masked) == cross_ratio(*pts)
        target = cross_ratio(*pts)
        if not target.is_zero():
            assert solve_fourth(pts[0], pts[1], pts[2], target) == pts[3]


def _check_cr_exchange():
    params = FieldParams(10007)
    rng = random.Random(17)
    secret = SharedSecret.random(rng)
    for _ in range(100):
        nonce = Nonce.random(rng)
        msg, fourth = cr_scheme.generate(secret, nonce, params, rng)
        assert cr_scheme.recover(secret, msg, params) == fourth


def _check_sessions():
    params = FieldParams(10007)
    rng = random.Random(18)
    secret = SharedSecret.random(rng)
    ctr = 0
    while True:
        nonce = Nonce(ctr.to_bytes(32, "big"))
        if session.invariant_is_sampleable(derive_invariant(secret, nonce, params)):
            break
        ctr += 1
    sender = session.SessionState.create(secret, nonce, params, session.DERIVED_INVARIANT)
    receiver = session.SessionState.create(secret, nonce, params, session.DERIVED_INVARIANT)
    for _ in range(50):
        msg, offset = session.minimal_send(sender, rng)
        assert offset in session.minimal_receive(receiver, msg)
    for attempt in range(64):
        nonce = Nonce((1000 + attempt).to_bytes(32, "big"))
        sender = session.SessionState.create(secret, nonce, params, session.SHARED_ROOT)
        receiver = session.SessionState.create(secret, nonce, params, session.SHARED_ROOT)
        init, _, _ = session.shared_root_init_send(sender, rng)
        try:
            session.shared_root_init_receive(receiver, init)
            break
        except session.AmbiguousInit:
            continue
    else:
        raise AssertionError("no unambiguous init in 64 attempts")
    assert sender.shared_root == receiver.shared_root
    for _ in range(50):
        msg, value = session.stream_send(sender, rng)
        assert session.stream_receive(receiver, msg) == value


def _check_codec():
    params = FieldParams(10007)
    rng = random.Random(19)
    secret = SharedSecret.random(rng)
    nonce = Nonce.random(rng)
    msg, _, _ = disc_scheme.generate(secret, nonce, params, rng)
    wire = encode_message(msg)
    assert decode_message(wire, params) == msg
    try:
        decode_message(b"XXXX" + wire[4:], params)
        raise AssertionError("bad magic accepted")
    except BadMagic:
        pass
    try:
        decode_message(wire[:10], params)
        raise AssertionError("truncated buffer accepted")
    except Truncated:
        pass
    try:
        decode_message(wire[:5] + b"\x7f" + wire[6:], params)
        raise AssertionError("unknown type accepted")
    except UnknownType:
        pass


def _check_puzzles():
    params = FieldParams(101)
    rng = random.Random(20)
    for _ in range(5):
        puzzle, (z3, z4) = applications.puzzle_make(params, rng)
        assert applications.puzzle_verify(puzzle, z3, z4)
        s3, s4 = applications.puzzle_solve(puzzle)
        assert applications.puzzle_verify(puzzle, s3, s4)


def _check_commitments():
    params = FieldParams(10007)
    rng = random.Random(21)
    secret = SharedSecret.random(rng)
    other = SharedSecret.random(rng)
    c = applications.commit(secret, b"object", params, rng)
    assert applications.verify_commitment(secret, b"object", c, params)
    assert not applications.verify_commitment(secret, b"different", c, params)
    assert not applications.verify_commitment(other, b"object", c, params)


CHECKS = [
    ("field-axioms", _check_field_axioms),
    ("sqrt-exhaustive", _check_sqrt),
    ("roots-roundtrip", _check_roots_roundtrip),
    ("discriminant-identity", _check_discriminant),
    ("disc-exchange", _check_disc_exchange),
    ("tamper-detection", _check_tamper_detection),
    ("cross-ratio-invariance", _check_cross_ratio_invariance),
    ("cr-exchange", _check_cr_exchange),
    ("session-modes", _check_sessions),
    ("codec", _check_codec),
    ("puzzles", _check_puzzles),
    ("commitments", _check_commitments),
]


def run_selftest(verbose: bool = True) -> int:
    failures = 0
    for name, check in CHECKS:
        try:
            check()
        except Exception as exc:  # noqa: BLE001 - report and keep going
            failures += 1
            print(f"FAIL {name}: {type(exc).__name__}: {exc}")
            continue
        if verbose:
            print(f"ok   {name}")
    if failures:
        print(f"{failures}/{len(CHECKS)} suites failed")
        return 1
    print(f"all {len(CHECKS)} suites passed")
    return 0
