"""Field layer: arithmetic, inversion, exponentiation, square roots,
sampling, parameter validation."""

import random

import pytest

from conftest import SECP256K1, get_params
from ibckit.errors import MismatchedField, NonInvertible, NonResidue
from ibckit.field import FieldParams


def xgcd(a, b):
    """Independent extended-Euclid oracle for inverses."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def schoolbook_ext_mul(a, b, f, p):
    """Independent oracle: schoolbook polynomial product reduced mod f."""
    n = len(f) - 1
    prod = [0] * (2 * n - 1)
    for i in range(n):
        for j in range(n):
            prod[i + j] += a[i] * b[j]
    prod = [c % p for c in prod]
    for k in range(2 * n - 2, n - 1, -1):
        c = prod[k]
        if c:
            for i in range(n + 1):
                prod[k - n + i] = (prod[k - n + i] - c * f[i]) % p
    return tuple(prod[:n])


# --- basic arithmetic -------------------------------------------------------


def test_add_wraps_to_zero(f13):
    assert f13.element(1) + f13.element(12) == f13.zero()


def test_mul_identity(f13):
    rng = random.Random(0)
    one = f13.one()
    for _ in range(100):
        x = f13.random_element(rng)
        assert x * one == x


def test_ext_mul_gf8(f8):
    # x * x^2 = x^3 = x + 1 (reduction table for x^3 + x + 1)
    x = f8.element([0, 1, 0])
    x2 = f8.element([0, 0, 1])
    assert x * x2 == f8.element([1, 1, 0])


def test_ext_mul_matches_schoolbook_oracle(f243):
    rng = random.Random(1)
    f = list(f243.irreducible)
    for _ in range(1000):
        a = f243.random_element(rng)
        b = f243.random_element(rng)
        assert (a * b).coeffs == schoolbook_ext_mul(a.coeffs, b.coeffs, f, 3)


def test_mismatched_field_rejected(f13, f31):
    with pytest.raises(MismatchedField):
        f13.element(1) + f31.element(1)
    with pytest.raises(MismatchedField):
        f13.element(2) * f31.element(2)


def test_field_axioms_random_triples(f13, f243):
    rng = random.Random(2)
    for params in (f13, f243):
        zero, one = params.zero(), params.one()
        for _ in range(2000):
            a = params.random_element(rng)
            b = params.random_element(rng)
            c = params.random_element(rng)
            assert (a + b) + c == a + (b + c)
            assert a + b == b + a
            assert (a * b) * c == a * (b * c)
            assert a * b == b * a
            assert a * (b + c) == a * b + a * c
            assert a + (-a) == zero
            if not a.is_zero():
                assert a * a.inverse() == one


# --- inversion ----------------------------------------------------------------


def test_inv_one(f13):
    assert f13.one().inverse() == f13.one()


def test_inv_three_mod_13(f13):
    g, x, _ = xgcd(3, 13)
    assert g == 1 and x % 13 == 9
    assert f13.element(3).inverse() == f13.element(9)


def test_inv_zero_raises(f13, f243):
    for params in (f13, f243):
        with pytest.raises(NonInvertible):
            params.zero().inverse()


def test_inv_matches_xgcd_oracle(f10007):
    rng = random.Random(3)
    for _ in range(200):
        x = f10007.random_element(rng)
        if x.is_zero():
            continue
        _, s, _ = xgcd(x.coeffs[0], 10007)
        assert x.inverse() == f10007.element(s % 10007)


# --- exponentiation ---------------------------------------------------------------


def test_pow_zero_exponent(f13):
    assert f13.element(7) ** 0 == f13.one()
    assert f13.zero() ** 0 == f13.one()  # 0^0 = 1 by convention


def test_pow_fermat(f13):
    assert f13.element(2) ** 12 == f13.one()


def test_pow_value(f13):
    assert f13.element(3) ** 4 == f13.element(81 % 13)


def test_pow_order_annihilates(f13, f243, f8):
    rng = random.Random(4)
    for params in (f13, f243, f8):
        for _ in range(50):
            x = params.random_element(rng)
            if x.is_zero():
                continue
            assert x ** (params.q - 1) == params.one()


def test_pow_negative_exponent(f13):
    assert f13.element(3) ** -1 == f13.element(9)
    assert f13.element(2) ** -2 == (f13.element(4)).inverse()


# --- square roots ----------------------------------------------------------------------


def test_sqrt_zero(f13):
    assert f13.zero().sqrt() == f13.zero()


def test_sqrt_four(f13):
    r = f13.element(4).sqrt()
    assert r == f13.element(2)  # canonical: 2 < 11 = -2
    assert -r == f13.element(11)


def test_sqrt_nonresidue(f13):
    squares = {(i * i) % 13 for i in range(13)}
    assert 5 not in squares
    with pytest.raises(NonResidue):
        f13.element(5).sqrt()


@pytest.mark.parametrize("p", [13, 17, 101, 1009, 4093])
def test_sqrt_matches_residue_table(p):
    params = get_params(p)
    squares = {(i * i) % p for i in range(p)}
    for v in range(p):
        x = params.element(v)
        if v in squares:
            r = x.sqrt()
            assert r * r == x
            assert r.coeffs <= (-r).coeffs  # canonical representative
        else:
            with pytest.raises(NonResidue):
                x.sqrt()


def test_sqrt_extension_field(f243):
    squares = set()
    for rank in range(243):
        e = f243.element_from_lift(rank)
        squares.add(e * e)
    for rank in range(243):
        x = f243.element_from_lift(rank)
        if x in squares:
            r = x.sqrt()
            assert r * r == x
            assert r.coeffs <= (-r).coeffs
            assert x.is_square()
        else:
            assert not x.is_square()
            with pytest.raises(NonResidue):
                x.sqrt()


def test_sqrt_char2_always_exists(f8):
    for rank in range(8):
        x = f8.element_from_lift(rank)
        r = x.sqrt()
        assert r * r == x


def test_sqrt_large_prime(f256):
    rng = random.Random(5)
    for _ in range(20):
        x = f256.random_element(rng)
        sq = x * x
        r = sq.sqrt()
        assert r * r == sq
        assert r in (x, -x)


# --- sampling -------------------------------------------------------------------------


def test_random_element_deterministic(f256):
    a = [f256.random_element(random.Random(7)) for _ in range(10)]
    b = [f256.random_element(random.Random(7)) for _ in range(10)]
    assert a == b


def test_random_element_seed_sensitivity(f256):
    assert f256.random_element(random.Random(1)) != f256.random_element(random.Random(2))


def test_random_element_uniform(f13):
    # Each residue frequency within 5 sigma of uniform.
    rng = random.Random(8)
    n = 10_000
    counts = [0] * 13
    for _ in range(n):
        counts[f13.random_element(rng).coeffs[0]] += 1
    expected = n / 13
    sigma = (n * (1 / 13) * (12 / 13)) ** 0.5
    for c in counts:
        assert abs(c - expected) < 5 * sigma


def test_random_element_canonical(f243):
    rng = random.Random(9)
    for _ in range(200):
        x = f243.random_element(rng)
        assert all(0 <= c < 3 for c in x.coeffs)


# --- parameters and encoding -------------------------------------------------------------


def test_composite_modulus_rejected():
    with pytest.raises(ValueError):
        FieldParams(15)
    with pytest.raises(ValueError):
        FieldParams(2**256 - 2**32 - 976)


def test_tiny_field_rejected():
    with pytest.raises(ValueError):
        FieldParams(3)  # q = 3 < 5
    with pytest.raises(ValueError):
        FieldParams(2, 2, [1, 1, 1])  # q = 4 < 5


def test_reducible_polynomial_rejected():
    # x^2 + 1 = (x + 2)(x + 3) mod 5
    with pytest.raises(ValueError):
        FieldParams(5, 2, [1, 0, 1])
    # x^2 - 1 has roots over F_7
    with pytest.raises(ValueError):
        FieldParams(7, 2, [6, 0, 1])


def test_nonmonic_polynomial_rejected():
    with pytest.raises(ValueError):
        FieldParams(5, 2, [1, 0, 2])


def test_irreducible_accepted():
    FieldParams(3, 2, [1, 0, 1])  # x^2 + 1, -1 is a non-residue mod 3
    FieldParams(5, 3, [1, 1, 0, 1])  # x^3 + x + 1 has no roots mod 5


def test_miller_rabin_knowns():
    from ibckit.field import is_probable_prime

    assert is_probable_prime(SECP256K1)
    assert is_probable_prime(10007)
    assert not is_probable_prime(10007 * 10009)
    assert not is_probable_prime(3215031751)  # strong pseudoprime to bases 2,3,5,7


def test_element_bytes_roundtrip(f13, f256, f243):
    rng = random.Random(10)
    for params in (f13, f256, f243):
        for _ in range(50):
            x = params.random_element(rng)
            data = x.to_bytes()
            assert len(data) == params.element_size
            assert params.element_from_bytes(data) == x


def test_element_bytes_width(f13, f256):
    assert f13.element_size == 1
    assert f256.element_size == 32


def test_noncanonical_bytes_rejected(f13):
    with pytest.raises(ValueError):
        f13.element_from_bytes(b"\x0d")  # 13 >= p


def test_lift_roundtrip(f243):
    for rank in (0, 1, 2, 3, 100, 242):
        assert f243.element_from_lift(rank).lift() == rank
