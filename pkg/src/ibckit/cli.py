"""Command-line front end: two-party demos, sessions, puzzles, the masking
experiment, and a self-test, all run in-process with deterministic seeds.

Exit codes: 0 success, 1 protocol failure (integrity, recovery, ambiguity),
2 usage error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import random
import sys

from . import applications, cr_scheme, disc_scheme, session
from .codec import decode_message, derive_invariant, encode_message
from .errors import AmbiguousInit, DecodeError, IbcError, ProtocolError
from .field import FieldParams
from .messages import (
    CrMessage,
    DiscMessage,
    MinimalMessage,
    Nonce,
    SharedRootInitMessage,
    SharedSecret,
    StreamMessage,
)

SECP256K1_PRIME = 2**256 - 2**32 - 977

NAMED_MODULI = {
    "demo13": 13,
    "demo10007": 10007,
    "p256k1": SECP256K1_PRIME,
}

_TYPE_NAMES = {
    DiscMessage: "disc-full",
    MinimalMessage: "disc-minimal",
    SharedRootInitMessage: "shared-root-init",
    StreamMessage: "shared-root-stream",
    CrMessage: "cross-ratio",
}


# --- configuration -------------------------------------------------------------


def _parse_modulus(text: str) -> int:
    if text in NAMED_MODULI:
        return NAMED_MODULI[text]
    if text.lower().startswith("0x"):
        return int(text, 16)
    raise argparse.ArgumentTypeError(
        f"modulus must be one of {sorted(NAMED_MODULI)} or a 0x-prefixed hex literal"
    )


def _parse_hex32(text: str) -> bytes:
    data = bytes.fromhex(text)
    if len(data) != 32:
        raise argparse.ArgumentTypeError("expected exactly 32 hex-encoded bytes")
    return data


def _build_params(args) -> FieldParams:
    if args.ext_degree:
        if not args.ext_irreducible:
            raise argparse.ArgumentTypeError("--ext-degree needs --ext-irreducible")
        coeffs = [int(c) for c in args.ext_irreducible.split(",")]
        return FieldParams(args.modulus, args.ext_degree, coeffs)
    return FieldParams(args.modulus)


def _secret(args) -> SharedSecret:
    if args.secret is not None:
        return SharedSecret(args.secret)
    seed = args.seed.to_bytes(8, "big", signed=False)
    return SharedSecret(hashlib.sha256(b"IBC/cli/secret" + seed).digest())


def _nonce(args, counter: int = 0) -> Nonce:
    if args.nonce is not None and counter == 0:
        return Nonce(args.nonce)
    base = args.nonce if args.nonce is not None else args.seed.to_bytes(8, "big")
    return Nonce(hashlib.sha256(b"IBC/cli/nonce" + base + counter.to_bytes(4, "big")).digest())


def _hex(elem) -> str:
    return elem.to_bytes().hex()


def _decoded(msg) -> dict:
    if isinstance(msg, DiscMessage):
        return {
            "root2": _hex(msg.root2), "root3": _hex(msg.root3),
            "disc": _hex(msg.disc), "value": _hex(msg.value),
            "nonce": msg.nonce.value.hex(), "check_tag": msg.check_tag.hex(),
            "auth_tag": msg.auth_tag.hex() if msg.auth_tag else None,
        }
    if isinstance(msg, MinimalMessage):
        return {"root2": _hex(msg.root2), "root3": _hex(msg.root3), "value": _hex(msg.value)}
    if isinstance(msg, SharedRootInitMessage):
        return {"root2": _hex(msg.root2), "root3": _hex(msg.root3),
                "disc": _hex(msg.disc), "value": _hex(msg.value)}
    if isinstance(msg, StreamMessage):
        return {"root2": _hex(msg.root2), "root3": _hex(msg.root3), "offset": _hex(msg.offset)}
    if isinstance(msg, CrMessage):
        return {
            "m1": _hex(msg.m1), "m2": _hex(msg.m2), "m3": _hex(msg.m3),
            "nonce": msg.nonce.value.hex(),
            "check_tag": msg.check_tag.hex() if msg.check_tag else None,
        }
    raise TypeError(type(msg).__name__)


def _record(msg) -> dict:
    return {
        "type": _TYPE_NAMES[type(msg)],
        "hex": encode_message(msg).hex(),
        "decoded": _decoded(msg),
    }


def _tamper_wire(wire: bytes, params: FieldParams) -> bytes:
    """Flip one bit inside the first field payload (the low bit of its last
    byte, or the next bit up when the flip would leave the residue
    non-canonical)."""
    offset = 4 + 1 + 1 + 2 + 4  # magic, version, type, count, first length
    index = offset + params.element_size - 1
    for bit in (0, 1):
        out = bytearray(wire)
        out[index] ^= 1 << bit
        try:
            decode_message(bytes(out), params)
        except DecodeError:
            continue
        return bytes(out)
    raise IbcError("could not tamper while keeping the message decodable")


class _Transcript:
    def __init__(self, mode: str, args, params: FieldParams):
        self.data = {
            "mode": mode,
            "modulus_hex": f"{params.p:#x}",
            "seed": args.seed,
            "messages": [],
            "result": {},
        }
        if params.n > 1:
            self.data["extension"] = {"degree": params.n,
                                      "irreducible": list(params.irreducible)}
        self.json = args.json

    def add_message(self, msg) -> None:
        self.data["messages"].append(_record(msg))

    def finish(self, ok: bool, **result) -> int:
        self.data["result"] = {"status": "ok" if ok else "failed", **result}
        if self.json:
            print(json.dumps(self.data, indent=2))
        else:
            print(f"mode: {self.data['mode']}  modulus: {self.data['modulus_hex']}")
            for i, m in enumerate(self.data["messages"]):
                print(f"message[{i}] {m['type']}: {m['hex']}")
            for k, v in self.data["result"].items():
                print(f"{k}: {v}")
        return 0 if ok else 1


# --- subcommands ------------------------------------------------------------------


def _cmd_demo_disc(args) -> int:
    params = _build_params(args)
    rng = random.Random(args.seed)
    secret = _secret(args)
    nonce = _nonce(args)
    transcript = _Transcript("demo-disc", args, params)
    msg, offset, hidden = disc_scheme.generate(
        secret, nonce, params, rng, with_auth=not args.no_auth)
    wire = encode_message(msg)
    if args.tamper:
        wire = _tamper_wire(wire, params)
    delivered = decode_message(wire, params)
    transcript.add_message(delivered)
    try:
        recovered = disc_scheme.recover(secret, delivered, params, rng)
    except ProtocolError as exc:
        return transcript.finish(False, error=type(exc).__name__, detail=str(exc))
    ok = offset in recovered
    return transcript.finish(
        ok,
        sender_offset=_hex(offset),
        recovered=[_hex(h) for h in sorted(recovered)],
        exact=recovered == {offset},
    )


def _cmd_demo_cr(args) -> int:
    params = _build_params(args)
    rng = random.Random(args.seed)
    secret = _secret(args)
    nonce = _nonce(args)
    transcript = _Transcript("demo-cr", args, params)
    use_mask = not args.no_mask
    msg, fourth = cr_scheme.generate(secret, nonce, params, rng,
                                     use_mask=use_mask, use_check=not args.no_check)
    wire = encode_message(msg)
    if args.tamper:
        wire = _tamper_wire(wire, params)
    delivered = decode_message(wire, params)
    transcript.add_message(delivered)
    try:
        recovered = cr_scheme.recover(secret, delivered, params, use_mask=use_mask)
    except (ProtocolError, IbcError) as exc:
        return transcript.finish(False, error=type(exc).__name__, detail=str(exc))
    return transcript.finish(
        recovered == fourth,
        sender_fourth=_hex(fourth),
        recovered=_hex(recovered),
    )


def _cmd_session_minimal(args) -> int:
    params = _build_params(args)
    rng = random.Random(args.seed)
    secret = _secret(args)
    counter = 0
    while True:  # screen nonces: half of derived invariants admit no triple
        nonce = _nonce(args, counter)
        if session.invariant_is_sampleable(derive_invariant(secret, nonce, params)):
            break
        counter += 1
    sender = session.SessionState.create(secret, nonce, params, session.DERIVED_INVARIANT)
    receiver = session.SessionState.create(secret, nonce, params, session.DERIVED_INVARIANT)
    transcript = _Transcript("session-minimal", args, params)
    transcript.data["nonce_counter"] = counter
    delivered = 0
    offsets = []
    for _ in range(args.count):
        msg, offset = session.minimal_send(sender, rng)
        transcript.add_message(msg)
        try:
            recovered = session.minimal_receive(receiver, msg)
        except ProtocolError as exc:
            return transcript.finish(False, error=type(exc).__name__, detail=str(exc))
        if offset in recovered:
            delivered += 1
        offsets.append({
            "offset": _hex(offset) if args.reveal else "[redacted]",
            "recovered": [_hex(h) for h in sorted(recovered)] if args.reveal else "[redacted]",
        })
    return transcript.finish(delivered == args.count,
                             delivered=delivered, total=args.count, exchanges=offsets)


def _cmd_session_shared_root(args) -> int:
    params = _build_params(args)
    rng = random.Random(args.seed)
    secret = _secret(args)
    transcript = _Transcript("session-shared-root", args, params)
    init_msg = None
    sender = receiver = None
    for attempt in range(32):  # ambiguous inits are re-keyed with a fresh nonce
        nonce = _nonce(args, attempt)
        sender = session.SessionState.create(secret, nonce, params, session.SHARED_ROOT)
        receiver = session.SessionState.create(secret, nonce, params, session.SHARED_ROOT)
        init_msg, _, _ = session.shared_root_init_send(sender, rng)
        try:
            session.shared_root_init_receive(receiver, init_msg)
        except AmbiguousInit:
            continue
        except ProtocolError as exc:
            return transcript.finish(False, error=type(exc).__name__, detail=str(exc))
        transcript.data["init_attempts"] = attempt + 1
        break
    else:
        return transcript.finish(False, error="AmbiguousInit",
                                 detail="no unambiguous init in 32 attempts")
    transcript.add_message(init_msg)
    matches = 0
    values = []
    for _ in range(args.count):
        msg, value = session.stream_send(sender, rng)
        transcript.add_message(msg)
        got = session.stream_receive(receiver, msg)
        if got == value:
            matches += 1
        values.append(_hex(value) if args.reveal else "[redacted]")
    return transcript.finish(matches == args.count,
                             shared_root_agreed=sender.shared_root == receiver.shared_root,
                             stream_matches=matches, total=args.count, values=values)


def _load_json(path: str) -> dict:
    if path == "-":
        return json.load(sys.stdin)
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _cmd_puzzle(args) -> int:
    if args.action == "make":
        params = _build_params(args)
        rng = random.Random(args.seed)
        puzzle, (z3, z4) = applications.puzzle_make(params, rng)
        print(json.dumps({
            "puzzle": puzzle.to_dict(),
            "witness": {"z3": _hex(z3), "z4": _hex(z4)},
        }, indent=2))
        return 0
    doc = _load_json(args.puzzle)
    puzzle = applications.Puzzle.from_dict(doc.get("puzzle", doc))
    if args.action == "solve":
        try:
            z3, z4 = applications.puzzle_solve(puzzle)
        except IbcError as exc:
            print(json.dumps({"error": type(exc).__name__, "detail": str(exc)}))
            return 1
        print(json.dumps({"witness": {"z3": _hex(z3), "z4": _hex(z4)},
                          "verified": applications.puzzle_verify(puzzle, z3, z4)}, indent=2))
        return 0
    # verify
    wdoc = _load_json(args.witness) if args.witness else doc
    witness = wdoc.get("witness", wdoc)
    z3 = puzzle.params.element_from_bytes(bytes.fromhex(witness["z3"]))
    z4 = puzzle.params.element_from_bytes(bytes.fromhex(witness["z4"]))
    valid = applications.puzzle_verify(puzzle, z3, z4)
    print(json.dumps({"valid": valid}))
    return 0 if valid else 1


def _cmd_experiment(args) -> int:
    report = cr_scheme.indistinguishability_experiment(args.p, args.sessions, args.seed)
    if args.json:
        print(report.to_json(indent=2))
    else:
        print(f"experiment p={report.p} N={report.sessions} seed={report.seed} "
              f"bins={report.bins}")
        for c in report.coordinates:
            print(f"coordinate {c.index}: chi2={c.chi2:.2f} dof={c.dof} p_value={c.p_value:.4f}")
        print(f"unmasked control: fixed arm {report.control_fixed_distinct_cr} distinct "
              f"cross-ratios, random arm {report.control_random_distinct_cr}, "
              f"distinguished={report.control_distinguished}")
    return 0


def _cmd_selftest(args) -> int:
    from .selftest import run_selftest
    return run_selftest(verbose=not args.json)


# --- argument parsing -----------------------------------------------------------------


def _add_common(sub, default_modulus: str = "demo10007") -> None:
    sub.add_argument("--modulus", type=_parse_modulus, default=NAMED_MODULI[default_modulus],
                     help=f"named modulus {sorted(NAMED_MODULI)} or 0x-prefixed hex prime")
    sub.add_argument("--ext-degree", type=int, default=0,
                     help="extension degree n for GF(p^n)")
    sub.add_argument("--ext-irreducible", default=None,
                     help="comma-separated ascending coefficients of a monic irreducible")
    sub.add_argument("--seed", type=int, default=0, help="deterministic RNG seed")
    sub.add_argument("--secret", type=_parse_hex32, default=None,
                     help="shared secret, 32 bytes hex (default: derived from seed)")
    sub.add_argument("--nonce", type=_parse_hex32, default=None,
                     help="session nonce, 32 bytes hex (default: derived from seed)")
    sub.add_argument("--json", action="store_true", help="emit a JSON transcript")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ibckit",
        description="Invariant-based symmetric cryptography demos and experiments.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("demo-disc", help="full discriminant exchange, both parties in-process")
    _add_common(p)
    p.add_argument("--no-auth", action="store_true", help="omit the auth tag")
    p.add_argument("--tamper", action="store_true", help="flip one message bit in transit")
    p.set_defaults(func=_cmd_demo_disc)

    p = subs.add_parser("demo-cr", help="cross-ratio exchange under projective masking")
    _add_common(p)
    p.add_argument("--no-mask", action="store_true", help="disable projective masking")
    p.add_argument("--no-check", action="store_true", help="omit the integrity tag")
    p.add_argument("--tamper", action="store_true", help="flip one message bit in transit")
    p.set_defaults(func=_cmd_demo_cr)

    p = subs.add_parser("session", help="run a multi-message session")
    session_subs = p.add_subparsers(dest="session_mode", required=True)
    sm = session_subs.add_parser("minimal", help="derived-invariant minimal transmission")
    _add_common(sm)
    sm.add_argument("--count", type=int, default=5, help="messages to exchange")
    sm.add_argument("--reveal", action="store_true", help="include derived values")
    sm.set_defaults(func=_cmd_session_minimal)
    ss = session_subs.add_parser("shared-root", help="shared-root init plus streaming")
    _add_common(ss)
    ss.add_argument("--count", type=int, default=5, help="stream messages after init")
    ss.add_argument("--reveal", action="store_true", help="include derived values")
    ss.set_defaults(func=_cmd_session_shared_root)

    p = subs.add_parser("puzzle", help="constraint-embedded puzzles")
    p.add_argument("action", choices=["make", "solve", "verify"])
    _add_common(p)
    p.add_argument("--puzzle", default=None, help="puzzle JSON file ('-' for stdin)")
    p.add_argument("--witness", default=None, help="witness JSON file (verify)")
    p.set_defaults(func=_cmd_puzzle)

    p = subs.add_parser("experiment", help="masked invariant indistinguishability experiment")
    p.add_argument("--p", type=int, default=10007, help="desk-scale prime modulus")
    p.add_argument("--sessions", type=int, default=2000, help="sessions per arm")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_experiment)

    p = subs.add_parser("selftest", help="run the built-in property suites")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_selftest)

    return parser


def run(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except argparse.ArgumentTypeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ProtocolError, DecodeError) as exc:
        print(f"protocol failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
