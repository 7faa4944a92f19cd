import pytest

from ibckit.codec import derive_eval_point, derive_invariant
from ibckit.field import FieldParams
from ibckit.messages import Nonce, SharedSecret
from ibckit.session import invariant_is_sampleable

SECP256K1 = 2**256 - 2**32 - 977

_PARAMS_CACHE = {}


def get_params(p, n=1, irreducible=None):
    key = (p, n, tuple(irreducible) if irreducible else None)
    if key not in _PARAMS_CACHE:
        _PARAMS_CACHE[key] = FieldParams(p, n, irreducible)
    return _PARAMS_CACHE[key]


@pytest.fixture(scope="session")
def f13():
    return get_params(13)


@pytest.fixture(scope="session")
def f31():
    return get_params(31)


@pytest.fixture(scope="session")
def f101():
    return get_params(101)


@pytest.fixture(scope="session")
def f10007():
    return get_params(10007)


@pytest.fixture(scope="session")
def f256():
    return get_params(SECP256K1)


@pytest.fixture(scope="session")
def f8():
    # GF(2^3) with x^3 + x + 1
    return get_params(2, 3, [1, 1, 0, 1])


@pytest.fixture(scope="session")
def f243():
    # GF(3^5) with x^5 + 2x + 1
    return get_params(3, 5, [1, 2, 0, 0, 0, 1])


def find_nonce(predicate, start=0):
    """First counter-derived nonce satisfying the predicate (deterministic)."""
    ctr = start
    while True:
        nonce = Nonce(ctr.to_bytes(32, "big"))
        if predicate(nonce):
            return nonce
        ctr += 1


def nonce_with_eval_point(secret, params, target):
    """Nonce whose derived evaluation point equals `target`."""
    return find_nonce(lambda z: derive_eval_point(secret, z, params) == target)


def feasible_nonce(secret, params, start=0):
    """Nonce whose derived invariant is a square (triple sampling feasible)."""
    return find_nonce(
        lambda z: invariant_is_sampleable(derive_invariant(secret, z, params)),
        start=start,
    )
