"""Univariate polynomials over GF(p^n) and the scheme solvers.

Root finding follows the classic two-step recipe: gcd with x^q - x isolates
the product of distinct linear factors, then randomized equal-degree
splitting (quadratic-residue probes for odd q, trace-map probes in
characteristic 2) peels off the roots.  Prime fields take a raw-int fast
path through _gfpoly; extension fields run the same algorithm on
FieldElement coefficients.
"""

from __future__ import annotations

import random

from . import _gfpoly
from .errors import (
    DegenerateRoots,
    InternalError,
    MismatchedField,
    NonResidue,
    WrongDegree,
    ZeroDiscriminant,
)
from .field import FieldElement, FieldParams, _sqrt_prime

ROOT_DEGREE_CAP = 8
SPLIT_PROBE_CAP = 64


class Polynomial:
    """Dense polynomial, ascending coefficients, trailing zeros stripped.

    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("params", "coeffs")

    def __init__(self, params: FieldParams, coeffs):
        coeffs = list(coeffs)
        for c in coeffs:
            if not isinstance(c, FieldElement) or c.params != params:
                raise MismatchedField("coefficients must share one field")
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        self.params = params
        self.coeffs = tuple(coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> FieldElement:
        if self.is_zero():
            raise WrongDegree("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def evaluate(self, x: FieldElement) -> FieldElement:
        """Horner evaluation."""
        acc = self.params.zero()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __call__(self, x: FieldElement) -> FieldElement:
        return self.evaluate(x)

    def __add__(self, other: Polynomial) -> Polynomial:
        n = max(len(self.coeffs), len(other.coeffs))
        zero = self.params.zero()
        out = []
        for i in range(n):
            a = self.coeffs[i] if i < len(self.coeffs) else zero
            b = other.coeffs[i] if i < len(other.coeffs) else zero
            out.append(a + b)
        return Polynomial(self.params, out)

    def __sub__(self, other: Polynomial) -> Polynomial:
        return self + (-other)

    def __neg__(self) -> Polynomial:
        return Polynomial(self.params, [-c for c in self.coeffs])

    def __mul__(self, other: Polynomial) -> Polynomial:
        if self.is_zero() or other.is_zero():
            return Polynomial(self.params, [])
        zero = self.params.zero()
        out = [zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Polynomial(self.params, out)

    def divmod(self, other: Polynomial) -> tuple[Polynomial, Polynomial]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        dg = other.degree
        if self.degree < dg:
            return Polynomial(self.params, []), self
        inv_lc = other.leading().inverse()
        zero = self.params.zero()
        q = [zero] * (len(r) - dg)
        for k in range(len(r) - 1, dg - 1, -1):
            c = r[k]
            if c.is_zero():
                continue
            c = c * inv_lc
            q[k - dg] = c
            for i in range(dg + 1):
                r[k - dg + i] = r[k - dg + i] - c * other.coeffs[i]
        return Polynomial(self.params, q), Polynomial(self.params, r)

    def __mod__(self, other: Polynomial) -> Polynomial:
        return self.divmod(other)[1]

    def monic(self) -> Polynomial:
        if self.is_zero():
            return self
        inv = self.leading().inverse()
        return Polynomial(self.params, [c * inv for c in self.coeffs])

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.params == other.params and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.params, self.coeffs))

    def __repr__(self):
        return f"Polynomial({[c.coeffs for c in self.coeffs]})"


def from_roots(roots) -> Polynomial:
    """Monic polynomial vanishing exactly on the given root multiset."""
    roots = list(roots)
    if not roots:
        raise ValueError("need at least one root")
    params = roots[0].params
    prod = Polynomial(params, [params.one()])
    for r in roots:
        if r.params != params:
            raise MismatchedField("roots must share one field")
        prod = prod * Polynomial(params, [-r, params.one()])
    return prod


def discriminant_cubic(P: Polynomial) -> FieldElement:
    """Discriminant of a degree-3 polynomial.

    For a*x^3 + b*x^2 + c*x + d this is
    18abcd - 4b^3d + b^2c^2 - 4ac^3 - 27a^2d^2; for a monic cubic built from
    roots it equals the squared product of root differences, and vanishes iff
    a root repeats.
    """
    if P.degree != 3:
        raise WrongDegree(f"discriminant_cubic needs degree 3, got {P.degree}")
    d, c, b, a = P.coeffs
    params = P.params
    k18 = params.element(18)
    k4 = params.element(4)
    k27 = params.element(27)
    return (
        k18 * a * b * c * d
        - k4 * b * b * b * d
        + b * b * c * c
        - k4 * a * c * c * c
        - k27 * a * a * d * d
    )


# --- root enumeration ------------------------------------------------------


def roots_in_field(P: Polynomial, rng) -> set[FieldElement]:
    """All x in GF(q) with P(x) = 0, multiplicity discarded.

    Degree is capped at 8 (the schemes never exceed 6); the cap keeps the
    x^q exponentiation cheap.  `rng` drives the equal-degree splitting
    probes and never affects the result.
    """
    if P.is_zero():
        raise ValueError("zero polynomial vanishes everywhere")
    if P.degree > ROOT_DEGREE_CAP:
        raise WrongDegree(f"degree {P.degree} above root-finder cap {ROOT_DEGREE_CAP}")
    if P.degree == 0:
        return set()
    params = P.params
    if params.n == 1:
        p = params.p
        f = _gfpoly.monic([c.coeffs[0] for c in P.coeffs], p)
        if len(f) == 2:
            return {FieldElement(params, ((-f[0]) % p,))}
        x = [0, 1]
        xq = _gfpoly.pow_linear_mod(0, p, f, p)
        g = _gfpoly.gcd(_gfpoly.sub(xq, x, p), f, p)
        return {FieldElement(params, (r,)) for r in _split_linear_int(g, p, rng)}
    x = Polynomial(params, [params.zero(), params.one()])
    f = P.monic()
    if f.degree == 1:
        return {-f.coeffs[0]}
    xq = _pow_mod(x, params.q, f)
    g = _poly_gcd(xq - x, f)
    return set(_split_linear(g, rng))


def _split_linear_int(g, p, rng):
    """Roots of a monic squarefree product of linear factors over GF(p),
    p odd.  Degree 2 splits by the quadratic formula (the discriminant is a
    nonzero square by construction); higher degrees use quadratic-residue
    probes gcd(g, (x+c)^((p-1)/2) - 1)."""
    deg = len(g) - 1
    if deg <= 0:
        return []
    if deg == 1:
        return [(-g[0]) % p]
    if deg == 2:
        b, c = g[1], g[0]
        d = _sqrt_prime((b * b - 4 * c) % p, p)
        inv2 = pow(2, -1, p)
        return [((-b + d) * inv2) % p, ((-b - d) * inv2) % p]
    e = (p - 1) // 2
    for _ in range(SPLIT_PROBE_CAP):
        c = rng.randrange(p)
        h = _gfpoly.pow_linear_mod(c, e, g, p)
        d = _gfpoly.gcd(_gfpoly.sub(h, [1], p), g, p)
        if 0 < len(d) - 1 < deg:
            rest = _gfpoly.quo(g, d, p)
            return _split_linear_int(d, p, rng) + _split_linear_int(rest, p, rng)
    raise InternalError("equal-degree splitting did not converge")


def _pow_mod(f: Polynomial, e: int, m: Polynomial) -> Polynomial:
    result = Polynomial(m.params, [m.params.one()])
    base = f % m
    while e:
        if e & 1:
            result = (result * base) % m
        e >>= 1
        if e:
            base = (base * base) % m
    return result


def _poly_gcd(f: Polynomial, g: Polynomial) -> Polynomial:
    while not g.is_zero():
        f, g = g, f % g
    return f.monic()


def _split_linear(g: Polynomial, rng) -> list[FieldElement]:
    """Extension-field analogue of _split_linear_int.  Odd q uses residue
    probes; characteristic 2 uses the absolute trace y + y^2 + ... + y^(q/2)
    of a random polynomial, which maps each root into GF(2)."""
    params = g.params
    deg = g.degree
    if deg <= 0:
        return []
    if deg == 1:
        return [-(g.coeffs[0] * g.coeffs[1].inverse())]
    if deg == 2 and params.p != 2:
        b, c = g.coeffs[1], g.coeffs[0]
        d = (b * b - params.element(4) * c).sqrt()
        half = params.element(2).inverse()
        return [(-b + d) * half, (-b - d) * half]
    one = Polynomial(params, [params.one()])
    for _ in range(SPLIT_PROBE_CAP):
        if params.p == 2:
            u = Polynomial(params, [params.random_element(rng) for _ in range(deg)])
            acc = u % g
            h = acc
            for _ in range(params.n - 1):
                acc = (acc * acc) % g
                h = h + acc
        else:
            c = params.random_element(rng)
            probe = Polynomial(params, [c, params.one()])
            h = _pow_mod(probe, (params.q - 1) // 2, g) - one
        d = _poly_gcd(h, g)
        if 0 < d.degree < deg:
            rest = g.divmod(d)[0]
            return _split_linear(d, rng) + _split_linear(rest, rng)
    raise InternalError("equal-degree splitting did not converge")


# --- scheme solvers ----------------------------------------------------------


def _quadratic_roots(B: FieldElement, C: FieldElement) -> set[FieldElement]:
    """Roots of x^2 + Bx + C.  Odd characteristic uses the quadratic formula;
    characteristic 2 (where division by 2 fails) falls back to the generic
    root finder with a fixed probe stream."""
    params = B.params
    if params.p == 2:
        Q = Polynomial(params, [C, B, params.one()])
        return roots_in_field(Q, random.Random(0))
    try:
        d = (B * B - params.element(4) * C).sqrt()
    except NonResidue:
        return set()
    half = params.element(2).inverse()
    return {(-B + d) * half, (-B - d) * half}


def solve_hidden_root(root2: FieldElement, root3: FieldElement,
                      disc: FieldElement) -> set[FieldElement]:
    """All r1 such that the triple (r1, root2, root3) has cubic discriminant
    `disc`.

    With m = root2 - root3 the identity reads ((r1-root2)(r1-root3)m)^2 =
    disc, so (r1-root2)(r1-root3) = +-sqrt(disc/m^2) and each sign leaves a
    quadratic in r1: between 0 and 4 candidates.  Candidates colliding with
    root2 or root3 would force a zero discriminant and are dropped.
    """
    if root2 == root3:
        raise DegenerateRoots("transmitted roots must be distinct")
    if disc.is_zero():
        raise ZeroDiscriminant("discriminant must be nonzero")
    m = root2 - root3
    w = disc * (m * m).inverse()
    try:
        s = w.sqrt()
    except NonResidue:
        return set()
    out: set[FieldElement] = set()
    for sign in {s, -s}:
        # (r1 - root2)(r1 - root3) = sign, i.e.
        # r1^2 - (root2+root3) r1 + (root2*root3 - sign) = 0.
        out |= _quadratic_roots(-(root2 + root3), root2 * root3 - sign)
    return {r for r in out if r != root2 and r != root3}


def solve_offset(P: Polynomial, eval_point: FieldElement, value: FieldElement,
                 rng) -> set[FieldElement]:
    """All offsets h with P(eval_point + h) = value: the roots of P - value,
    shifted back by the evaluation point.  0 to 3 values for a cubic."""
    if P.degree != 3:
        raise WrongDegree(f"offset solver expects a cubic, got degree {P.degree}")
    params = P.params
    shifted = list(P.coeffs)
    shifted[0] = shifted[0] - value
    Q = Polynomial(params, shifted)
    return {u - eval_point for u in roots_in_field(Q, rng)}
