"""Low-level univariate polynomial arithmetic over GF(p).

Polynomials are plain lists of ints in [0, p), ascending degree, with
trailing zeros stripped ([] is the zero polynomial).  This module is the
hot path for prime-field root finding and for validating irreducible
polynomials, so it stays on raw ints.
"""

from .errors import NonInvertible


def trim(f):
    i = len(f)
    while i and f[i - 1] == 0:
        i -= 1
    return f[:i]


def add(f, g, p):
    if len(f) < len(g):
        f, g = g, f
    out = list(f)
    for i, c in enumerate(g):
        out[i] = (out[i] + c) % p
    return trim(out)


def sub(f, g, p):
    n = max(len(f), len(g))
    out = [0] * n
    for i in range(n):
        a = f[i] if i < len(f) else 0
        b = g[i] if i < len(g) else 0
        out[i] = (a - b) % p
    return trim(out)


def mul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            out[i + j] += a * b
    return trim([c % p for c in out])


def scalar_mul(f, c, p):
    c %= p
    if c == 0:
        return []
    return trim([(a * c) % p for a in f])


def monic(f, p):
    if not f:
        return []
    lc = f[-1]
    if lc == 1:
        return list(f)
    inv = pow(lc, -1, p)
    return [(a * inv) % p for a in f]


def divmod_(f, g, p):
    """Long division: returns (q, r) with f = q*g + r, deg r < deg g."""
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(f)
    dg = len(g) - 1
    if len(r) - 1 < dg:
        return [], trim(r)
    inv_lc = pow(g[-1], -1, p)
    q = [0] * (len(r) - dg)
    for k in range(len(r) - 1, dg - 1, -1):
        c = r[k]
        if c == 0:
            continue
        c = (c * inv_lc) % p
        q[k - dg] = c
        for i in range(dg + 1):
            r[k - dg + i] = (r[k - dg + i] - c * g[i]) % p
    return trim(q), trim(r)


def rem(f, g, p):
    return divmod_(f, g, p)[1]


def quo(f, g, p):
    return divmod_(f, g, p)[0]


def gcd(f, g, p):
    """Monic greatest common divisor."""
    while g:
        f, g = g, rem(f, g, p)
    return monic(f, p)


def pow_mod(f, e, m, p):
    """f**e modulo m by square-and-multiply."""
    result = [1]
    base = rem(f, m, p)
    while e:
        if e & 1:
            result = rem(mul(result, base, p), m, p)
        e >>= 1
        if e:
            base = rem(mul(base, base, p), m, p)
    return result


def sq_mod(f, m, p):
    """f*f mod m with m monic; coefficient folds stay lazy until the end."""
    if not f:
        return []
    dm = len(m) - 1
    out = [0] * (2 * len(f) - 1)
    for i, fi in enumerate(f):
        if not fi:
            continue
        out[2 * i] += fi * fi
        t = 2 * fi
        for j in range(i + 1, len(f)):
            out[i + j] += t * f[j]
    for k in range(len(out) - 1, dm - 1, -1):
        c = out[k] % p
        out[k] = 0
        if c:
            base = k - dm
            for i in range(dm):
                out[base + i] -= c * m[i]
    return trim([v % p for v in out[:dm]])


def mul_linear_mod(f, c, m, p):
    """f * (x + c) mod m with m monic."""
    if not f:
        return []
    dm = len(m) - 1
    out = [0] * (len(f) + 1)
    for i, fi in enumerate(f):
        out[i + 1] += fi
        if c:
            out[i] += fi * c
    for k in range(len(out) - 1, dm - 1, -1):
        cc = out[k] % p
        out[k] = 0
        if cc:
            base = k - dm
            for i in range(dm):
                out[base + i] -= cc * m[i]
    return trim([v % p for v in out[:dm]])


def pow_linear_mod(c, e, m, p):
    """(x + c)**e mod m, m monic of degree >= 2.

    Left-to-right square-and-multiply keeps every multiply step linear,
    which is what makes the x^q and residue-probe exponentiations cheap.
    """
    if e == 0:
        return [1]
    c %= p
    r = [c, 1]
    for bit in bin(e)[3:]:
        r = sq_mod(r, m, p)
        if bit == "1":
            r = mul_linear_mod(r, c, m, p)
    return r


def xgcd(f, g, p):
    """Extended Euclid: returns (d, s, t) with s*f + t*g = d, d monic."""
    r0, r1 = list(f), list(g)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = divmod_(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1, p), p)
        t0, t1 = t1, sub(t0, mul(q, t1, p), p)
    if r0:
        lc_inv = pow(r0[-1], -1, p)
        r0 = scalar_mul(r0, lc_inv, p)
        s0 = scalar_mul(s0, lc_inv, p)
        t0 = scalar_mul(t0, lc_inv, p)
    return r0, s0, t0


def invert(f, m, p):
    """Inverse of f in GF(p)[x]/(m)."""
    d, s, _ = xgcd(f, m, p)
    if d != [1]:
        raise NonInvertible("element has no inverse modulo the field polynomial")
    return rem(s, m, p)


def eval_at(f, x, p):
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % p
    return acc
