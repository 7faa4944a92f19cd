"""Polynomial layer: construction from roots, evaluation, discriminants,
root enumeration, and the two scheme solvers, each checked against an
independent brute-force oracle."""

import random

import pytest

from conftest import get_params
from ibckit.errors import DegenerateRoots, WrongDegree, ZeroDiscriminant
from ibckit.poly import (
    Polynomial,
    discriminant_cubic,
    from_roots,
    roots_in_field,
    solve_hidden_root,
    solve_offset,
)


def poly_of_ints(params, coeffs):
    return Polynomial(params, [params.element(c) for c in coeffs])


def brute_roots(P):
    """Oracle: exhaustive evaluation over the whole field."""
    params = P.params
    return {
        params.element_from_lift(r)
        for r in range(params.q)
        if P.evaluate(params.element_from_lift(r)).is_zero()
    }


def brute_hidden_roots(params, r2, r3, disc):
    """Oracle: scan for every r1 with ((r1-r2)(r1-r3)(r2-r3))^2 = disc."""
    out = set()
    for r in range(params.q):
        r1 = params.element_from_lift(r)
        prod = (r1 - r2) * (r1 - r3) * (r2 - r3)
        if prod * prod == disc:
            out.add(r1)
    return out


# --- from_roots -------------------------------------------------------------


def test_from_roots_single_zero(f13):
    P = from_roots([f13.zero()])
    assert P == poly_of_ints(f13, [0, 1])


def test_from_roots_double(f13):
    a = f13.element(5)
    P = from_roots([a, a])
    assert P == poly_of_ints(f13, [25 % 13, (-10) % 13, 1])


def test_from_roots_123(f13):
    P = from_roots([f13.element(1), f13.element(2), f13.element(3)])
    assert [c.coeffs[0] for c in P.coeffs] == [7, 11, 7, 1]


def test_from_roots_empty_rejected(f13):
    with pytest.raises(ValueError):
        from_roots([])


# --- evaluate ------------------------------------------------------------------


def test_evaluate_identity(f13):
    X = poly_of_ints(f13, [0, 1])
    assert X.evaluate(f13.element(5)) == f13.element(5)


def test_evaluate_at_roots(f10007):
    rng = random.Random(0)
    roots = [f10007.random_element(rng) for _ in range(3)]
    P = from_roots(roots)
    for r in roots:
        assert P.evaluate(r).is_zero()


def test_evaluate_shifted(f13):
    P = from_roots([f13.element(1), f13.element(2), f13.element(3)])
    assert P.evaluate(f13.element(12)) == f13.element((11 * 10 * 9) % 13)


# --- discriminant -----------------------------------------------------------------


def test_discriminant_repeated_root_vanishes(f13):
    P = from_roots([f13.element(2), f13.element(2), f13.element(5)])
    assert discriminant_cubic(P).is_zero()


def test_discriminant_123(f13):
    P = from_roots([f13.element(1), f13.element(2), f13.element(3)])
    assert discriminant_cubic(P) == f13.element(4)  # ((1-2)(1-3)(2-3))^2 = 4


def test_discriminant_equals_root_product(f10007):
    rng = random.Random(1)
    for _ in range(1000):
        triple = [f10007.random_element(rng) for _ in range(3)]
        prod = (triple[0] - triple[1]) * (triple[0] - triple[2]) * (triple[1] - triple[2])
        assert discriminant_cubic(from_roots(triple)) == prod * prod


def test_discriminant_nonmonic_scaling(f10007):
    # disc(c*P) = c^4 * disc(P) for cubics; exercises the general formula.
    rng = random.Random(2)
    for _ in range(200):
        triple = [f10007.random_element(rng) for _ in range(3)]
        c = f10007.random_element(rng)
        if c.is_zero():
            continue
        P = from_roots(triple)
        scaled = Polynomial(f10007, [c * k for k in P.coeffs])
        assert discriminant_cubic(scaled) == (c ** 4) * discriminant_cubic(P)


def test_discriminant_wrong_degree(f13):
    with pytest.raises(WrongDegree):
        discriminant_cubic(poly_of_ints(f13, [1, 1]))
    with pytest.raises(WrongDegree):
        discriminant_cubic(poly_of_ints(f13, [1, 1, 1, 1, 1]))


# --- roots_in_field ------------------------------------------------------------------


def test_roots_roundtrip_construction(f13):
    rng = random.Random(3)
    roots = {f13.element(1), f13.element(2), f13.element(3)}
    assert roots_in_field(from_roots(roots), rng) == roots


def test_roots_x2_plus_1_f13(f13):
    rng = random.Random(4)
    P = poly_of_ints(f13, [1, 0, 1])
    assert {25 % 13, 64 % 13} == {12, 12}  # 5 and 8 square to -1
    assert roots_in_field(P, rng) == {f13.element(5), f13.element(8)}


def test_roots_x2_plus_1_f7_empty():
    f7 = get_params(7)
    rng = random.Random(5)
    P = poly_of_ints(f7, [1, 0, 1])
    assert {(i * i) % 7 for i in range(7)} == {0, 1, 2, 4}  # -1 = 6 not a square
    assert roots_in_field(P, rng) == set()


@pytest.mark.parametrize("p", [13, 251, 4093])
def test_roots_random_multisets_vs_bruteforce(p):
    params = get_params(p)
    rng = random.Random(p)
    for _ in range(100):
        degree = rng.randrange(1, 7)
        roots = [params.random_element(rng) for _ in range(degree)]
        P = from_roots(roots)
        assert roots_in_field(P, rng) == set(roots) == brute_roots(P)


def test_roots_random_coeff_polys_vs_bruteforce(f101):
    rng = random.Random(6)
    for _ in range(100):
        degree = rng.randrange(1, 7)
        coeffs = [f101.random_element(rng) for _ in range(degree)]
        coeffs.append(f101.element(rng.randrange(1, 101)))
        P = Polynomial(f101, coeffs)
        assert roots_in_field(P, rng) == brute_roots(P)


def test_roots_extension_field(f243):
    rng = random.Random(7)
    for _ in range(25):
        degree = rng.randrange(1, 6)
        roots = [f243.random_element(rng) for _ in range(degree)]
        P = from_roots(roots)
        assert roots_in_field(P, rng) == set(roots)
    # random coefficient polynomials against the exhaustive oracle
    for _ in range(10):
        coeffs = [f243.random_element(rng) for _ in range(4)] + [f243.one()]
        P = Polynomial(f243, coeffs)
        assert roots_in_field(P, rng) == brute_roots(P)


def test_roots_char2_extension(f8):
    rng = random.Random(8)
    for _ in range(25):
        degree = rng.randrange(1, 5)
        roots = [f8.random_element(rng) for _ in range(degree)]
        P = from_roots(roots)
        assert roots_in_field(P, rng) == set(roots)


def test_roots_degree_cap(f13):
    rng = random.Random(9)
    P = poly_of_ints(f13, [1] * 10)  # degree 9
    with pytest.raises(WrongDegree):
        roots_in_field(P, rng)


def test_roots_zero_poly_rejected(f13):
    with pytest.raises(ValueError):
        roots_in_field(Polynomial(f13, []), random.Random(0))


def test_roots_constant_poly_empty(f13):
    assert roots_in_field(poly_of_ints(f13, [5]), random.Random(0)) == set()


# --- solve_hidden_root ------------------------------------------------------------------


def test_hidden_root_example(f13):
    got = solve_hidden_root(f13.element(2), f13.element(3), f13.element(4))
    oracle = brute_hidden_roots(f13, f13.element(2), f13.element(3), f13.element(4))
    assert got == oracle == {f13.element(1), f13.element(4)}


def test_hidden_root_postcondition(f10007):
    rng = random.Random(10)
    for _ in range(100):
        r2 = f10007.random_element(rng)
        r3 = f10007.random_element(rng)
        if r2 == r3:
            continue
        disc = f10007.random_element(rng)
        if disc.is_zero():
            continue
        for r1 in solve_hidden_root(r2, r3, disc):
            assert discriminant_cubic(from_roots([r1, r2, r3])) == disc


def test_hidden_root_no_solution_case(f13):
    # Scan for a (r2, r3, disc) with no solution; the non-residue disc 2 works.
    r2, r3 = f13.element(2), f13.element(3)
    disc = f13.element(2)
    assert brute_hidden_roots(f13, r2, r3, disc) == set()
    assert solve_hidden_root(r2, r3, disc) == set()


def test_hidden_root_exhaustive_f13(f13):
    for a2 in range(13):
        for a3 in range(13):
            if a2 == a3:
                continue
            r2, r3 = f13.element(a2), f13.element(a3)
            for d in range(1, 13):
                disc = f13.element(d)
                got = solve_hidden_root(r2, r3, disc)
                assert got == brute_hidden_roots(f13, r2, r3, disc)
                assert len(got) <= 4


def test_hidden_root_char2_exhaustive(f8):
    for a2 in range(8):
        for a3 in range(8):
            if a2 == a3:
                continue
            r2, r3 = f8.element_from_lift(a2), f8.element_from_lift(a3)
            for d in range(1, 8):
                disc = f8.element_from_lift(d)
                got = solve_hidden_root(r2, r3, disc)
                assert got == brute_hidden_roots(f8, r2, r3, disc)


def test_hidden_root_errors(f13):
    with pytest.raises(DegenerateRoots):
        solve_hidden_root(f13.element(2), f13.element(2), f13.element(4))
    with pytest.raises(ZeroDiscriminant):
        solve_hidden_root(f13.element(2), f13.element(3), f13.zero())


# --- solve_offset -----------------------------------------------------------------------


def test_offset_contains_zero_at_true_eval(f10007):
    rng = random.Random(11)
    triple = [f10007.element(v) for v in (3, 7, 11)]
    P = from_roots(triple)
    t = f10007.element(20)
    assert f10007.zero() in solve_offset(P, t, P.evaluate(t), rng)


def test_offset_example_f13(f13):
    rng = random.Random(12)
    P = from_roots([f13.element(1), f13.element(2), f13.element(3)])
    got = solve_offset(P, f13.element(5), f13.element(2), rng)
    oracle = {
        f13.element(h)
        for h in range(13)
        if P.evaluate(f13.element(5 + h)) == f13.element(2)
    }
    assert got == oracle == {f13.element(7), f13.element(3)}


def test_offset_unreachable_value(f13):
    # Scan F_13 for a value the cubic misses.
    rng = random.Random(13)
    P = from_roots([f13.element(1), f13.element(2), f13.element(3)])
    image = {P.evaluate(f13.element(u)).coeffs[0] for u in range(13)}
    missing = next(v for v in range(13) if v not in image)
    assert solve_offset(P, f13.element(5), f13.element(missing), rng) == set()


def test_offset_exhaustive_small_prime():
    params = get_params(127)
    rng = random.Random(14)
    for _ in range(50):
        triple = [params.random_element(rng) for _ in range(3)]
        P = from_roots(triple)
        t = params.random_element(rng)
        y = params.random_element(rng)
        oracle = {
            params.element(h)
            for h in range(127)
            if P.evaluate(t + params.element(h)) == y
        }
        assert solve_offset(P, t, y, rng) == oracle
        assert len(oracle) <= 3


def test_offset_requires_cubic(f13):
    with pytest.raises(WrongDegree):
        solve_offset(poly_of_ints(f13, [1, 1]), f13.element(1), f13.element(1),
                     random.Random(0))
