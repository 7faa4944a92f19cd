"""Arithmetic in prime fields GF(p) and extension fields GF(p^n).

Elements are immutable and always fully reduced, so equality is coefficient-
wise and the byte encoding is unambiguous.  Extension fields are realized as
GF(p)[x]/(f) for a monic irreducible f supplied with the parameters.
"""

from __future__ import annotations

import random

from . import _gfpoly
from .errors import MismatchedField, NonInvertible, NonResidue

_SMALL_PRIMES = (
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67,
    71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131, 137, 139, 149,
)

MILLER_RABIN_ROUNDS = 64


def is_probable_prime(n: int, rounds: int = MILLER_RABIN_ROUNDS) -> bool:
    """Miller-Rabin with `rounds` pseudo-random bases (error < 4**-rounds)."""
    if n < 2:
        return False
    for q in _SMALL_PRIMES:
        if n == q:
            return True
        if n % q == 0:
            return False
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # Bases from an n-seeded stream: deterministic verdict per candidate.
    rng = random.Random(n)
    for _ in range(rounds):
        a = rng.randrange(2, n - 1)
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = (x * x) % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _check_irreducible(f: list[int], n: int, p: int) -> None:
    """f is irreducible over GF(p) iff no factor has degree <= n/2, i.e.
    gcd(f, x^(p^k) - x) = 1 for every k up to n/2."""
    x = [0, 1]
    t = list(x)
    for k in range(1, n // 2 + 1):
        t = _gfpoly.pow_mod(t, p, f, p)  # t = x^(p^k) mod f
        if _gfpoly.gcd(_gfpoly.sub(t, x, p), f, p) != [1]:
            raise ValueError(
                f"polynomial has an irreducible factor of degree {k}; "
                "extension modulus must be irreducible"
            )


class FieldParams:
    """Parameters of the field GF(p^n).

    For n = 1 no modulus polynomial is given; for n > 1 `irreducible` lists
    the n+1 ascending coefficients of a monic irreducible degree-n polynomial
    over GF(p).  Construction validates primality (64 Miller-Rabin rounds)
    and irreducibility, and rejects fields of order below 5 (the schemes need
    at least four distinct points).
    """

    __slots__ = ("p", "n", "irreducible", "q", "coeff_bytes")

    def __init__(self, p: int, n: int = 1, irreducible=None):
        if not isinstance(p, int) or not is_probable_prime(p):
            raise ValueError("modulus must be prime (composite rings are out of scope)")
        if n < 1:
            raise ValueError("extension degree must be at least 1")
        if n == 1:
            if irreducible is not None:
                raise ValueError("irreducible polynomial only applies to n > 1")
            self.irreducible = None
        else:
            if irreducible is None:
                raise ValueError("extension fields need an irreducible polynomial")
            f = [int(c) % p for c in irreducible]
            if len(f) != n + 1 or f[-1] != 1:
                raise ValueError(f"irreducible must be monic of degree {n}")
            _check_irreducible(f, n, p)
            self.irreducible = tuple(f)
        self.p = p
        self.n = n
        self.q = p ** n
        if self.q < 5:
            raise ValueError("field order must be at least 5")
        self.coeff_bytes = (p.bit_length() + 7) // 8

    # -- constructors -----------------------------------------------------

    def element(self, value) -> FieldElement:
        """Build an element from an int (n = 1 embeds via the prime subfield)
        or from a sequence of n coefficient ints, reducing mod p."""
        if isinstance(value, FieldElement):
            if value.params != self:
                raise MismatchedField("element belongs to a different field")
            return value
        if isinstance(value, int):
            coeffs = [value % self.p] + [0] * (self.n - 1)
        else:
            coeffs = [int(c) % self.p for c in value]
            if len(coeffs) != self.n:
                raise ValueError(f"expected {self.n} coefficients")
        return FieldElement(self, tuple(coeffs))

    def zero(self) -> FieldElement:
        return FieldElement(self, (0,) * self.n)

    def one(self) -> FieldElement:
        return FieldElement(self, (1,) + (0,) * (self.n - 1))

    def element_from_lift(self, r: int) -> FieldElement:
        """Inverse of FieldElement.lift(): base-p digits of r, low digit first."""
        if not 0 <= r < self.q:
            raise ValueError("lift out of range")
        coeffs = []
        for _ in range(self.n):
            coeffs.append(r % self.p)
            r //= self.p
        return FieldElement(self, tuple(coeffs))

    def random_element(self, rng) -> FieldElement:
        """Uniform element via rejection sampling on fixed-width bit draws
        (no modulo bias).  `rng` needs only getrandbits()."""
        bits = self.p.bit_length()
        coeffs = []
        for _ in range(self.n):
            while True:
                v = rng.getrandbits(bits)
                if v < self.p:
                    coeffs.append(v)
                    break
        return FieldElement(self, tuple(coeffs))

    # -- byte encoding -----------------------------------------------------

    @property
    def element_size(self) -> int:
        """Wire size of one element: n fixed-width big-endian residues."""
        return self.n * self.coeff_bytes

    def element_from_bytes(self, data: bytes) -> FieldElement:
        if len(data) != self.element_size:
            raise ValueError(f"expected {self.element_size} bytes")
        w = self.coeff_bytes
        coeffs = []
        for i in range(self.n):
            v = int.from_bytes(data[i * w:(i + 1) * w], "big")
            if v >= self.p:
                raise ValueError("non-canonical residue")
            coeffs.append(v)
        return FieldElement(self, tuple(coeffs))

    # -- identity ----------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, FieldParams):
            return NotImplemented
        return (self.p, self.n, self.irreducible) == (other.p, other.n, other.irreducible)

    def __hash__(self):
        return hash((self.p, self.n, self.irreducible))

    def __repr__(self):
        if self.n == 1:
            return f"FieldParams(p={self.p:#x})"
        return f"FieldParams(p={self.p:#x}, n={self.n}, irreducible={list(self.irreducible)})"


class FieldElement:
    """An element of GF(p^n): n residues, low degree first, fully reduced.

    Instances are immutable; use FieldParams.element() rather than the raw
    constructor, which trusts its inputs.
    """

    __slots__ = ("params", "coeffs")

    def __init__(self, params: FieldParams, coeffs: tuple):
        self.params = params
        self.coeffs = coeffs

    def _same_field(self, other) -> FieldElement:
        if not isinstance(other, FieldElement):
            raise TypeError(f"expected FieldElement, got {type(other).__name__}")
        if other.params != self.params:
            raise MismatchedField("operands belong to different fields")
        return other

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        other = self._same_field(other)
        p = self.params.p
        if self.params.n == 1:
            return FieldElement(self.params, ((self.coeffs[0] + other.coeffs[0]) % p,))
        return FieldElement(
            self.params,
            tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)),
        )

    def __sub__(self, other):
        other = self._same_field(other)
        p = self.params.p
        if self.params.n == 1:
            return FieldElement(self.params, ((self.coeffs[0] - other.coeffs[0]) % p,))
        return FieldElement(
            self.params,
            tuple((a - b) % p for a, b in zip(self.coeffs, other.coeffs)),
        )

    def __neg__(self):
        p = self.params.p
        return FieldElement(self.params, tuple((-a) % p for a in self.coeffs))

    def __mul__(self, other):
        other = self._same_field(other)
        params = self.params
        p = params.p
        n = params.n
        if n == 1:
            return FieldElement(params, ((self.coeffs[0] * other.coeffs[0]) % p,))
        # Schoolbook product, then fold degrees >= n back with the monic
        # field polynomial: x^n = -(f_0 + f_1 x + ... + f_{n-1} x^{n-1}).
        prod = [0] * (2 * n - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                prod[i + j] += a * b
        f = params.irreducible
        for k in range(2 * n - 2, n - 1, -1):
            c = prod[k] % p
            if c:
                for i in range(n):
                    prod[k - n + i] -= c * f[i]
            prod[k] = 0
        return FieldElement(params, tuple(c % p for c in prod[:n]))

    def __truediv__(self, other):
        other = self._same_field(other)
        return self * other.inverse()

    def __pow__(self, e: int):
        params = self.params
        if e < 0:
            return self.inverse() ** (-e)
        if params.n == 1:
            return FieldElement(params, (pow(self.coeffs[0], e, params.p),))
        result = params.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def inverse(self) -> FieldElement:
        """Multiplicative inverse; NonInvertible on zero."""
        params = self.params
        if self.is_zero():
            raise NonInvertible("zero has no multiplicative inverse")
        if params.n == 1:
            return FieldElement(params, (pow(self.coeffs[0], -1, params.p),))
        inv = _gfpoly.invert(_gfpoly.trim(list(self.coeffs)), list(params.irreducible), params.p)
        return FieldElement(params, tuple(inv + [0] * (params.n - len(inv))))

    # -- square roots --------------------------------------------------------

    def is_square(self) -> bool:
        """Euler criterion; in characteristic 2 squaring is a bijection, so
        every element is a square."""
        params = self.params
        if self.is_zero() or params.p == 2:
            return True
        if params.n == 1:
            return pow(self.coeffs[0], (params.p - 1) // 2, params.p) == 1
        return (self ** ((params.q - 1) // 2)) == params.one()

    def sqrt(self) -> FieldElement:
        """A square root, canonicalized to the lexicographically smaller of
        {r, -r} on the coefficient vector.  Raises NonResidue when the field
        order is odd and no root exists; in characteristic 2 every element
        has the unique root x^(q/2)."""
        params = self.params
        if params.p == 2:
            return self ** (params.q // 2)
        if params.n == 1:
            r = _sqrt_prime(self.coeffs[0], params.p)
            return FieldElement(params, (min(r, params.p - r) if r else 0,))
        r = _sqrt_ext(self)
        return min(r, -r, key=lambda e: e.coeffs)

    # -- structure -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def lift(self) -> int:
        """Integer rank in [0, q): sum of coefficients weighted by powers of p."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * self.params.p + c
        return acc

    def to_bytes(self) -> bytes:
        """Canonical encoding: each residue big-endian at fixed width, degree-0
        coefficient first.  Feeds both hashing and the wire format."""
        w = self.params.coeff_bytes
        return b"".join(c.to_bytes(w, "big") for c in self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.params == other.params and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.coeffs, self.params.p, self.params.n))

    def __lt__(self, other):
        other = self._same_field(other)
        return self.coeffs < other.coeffs

    def __repr__(self):
        if self.params.n == 1:
            return f"FieldElement({self.coeffs[0]} mod {self.params.p:#x})"
        return f"FieldElement({list(self.coeffs)} over GF({self.params.p}^{self.params.n}))"


def _sqrt_prime(a: int, p: int) -> int:
    """Tonelli-Shanks square root mod an odd prime (some root, not canonical).

    Raises NonResidue when the Euler criterion fails.
    """
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        raise NonResidue(f"{a:#x} is not a square mod the field prime")
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    # Write p - 1 = d * 2^s with d odd.
    d, s = p - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    c = pow(z, d, p)
    x = pow(a, (d + 1) // 2, p)
    t = pow(a, d, p)
    m = s
    while t != 1:
        t2i = t
        i = 0
        for i in range(1, m):
            t2i = (t2i * t2i) % p
            if t2i == 1:
                break
        b = pow(c, 1 << (m - i - 1), p)
        x = (x * b) % p
        c = (b * b) % p
        t = (t * c) % p
        m = i
    return x


def _nonresidue(params: FieldParams) -> FieldElement:
    """First quadratic non-residue in deterministic lift order."""
    exp = (params.q - 1) // 2
    one = params.one()
    for r in range(1, params.q):
        e = params.element_from_lift(r)
        if (e ** exp) != one:
            return e
    raise NonResidue("field has no quadratic non-residue")  # unreachable for q > 1


def _sqrt_ext(x: FieldElement) -> FieldElement:
    """Tonelli-Shanks in GF(p^n) for odd p, using field exponentiation."""
    params = x.params
    if x.is_zero():
        return x
    q = params.q
    one = params.one()
    if (x ** ((q - 1) // 2)) != one:
        raise NonResidue("element is not a square in the extension field")
    if q % 4 == 3:
        return x ** ((q + 1) // 4)
    d, s = q - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    c = _nonresidue(params) ** d
    r = x ** ((d + 1) // 2)
    t = x ** d
    m = s
    while t != one:
        t2i = t
        i = 0
        for i in range(1, m):
            t2i = t2i * t2i
            if t2i == one:
                break
        b = c ** (1 << (m - i - 1))
        r = r * b
        c = b * b
        t = t * c
        m = i
    return r
