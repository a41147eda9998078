"""Dense univariate polynomials over a finite field.

A polynomial is a list of field-encoded ints, lowest degree first, with no
trailing zeros (``[]`` is the zero polynomial).  Every function takes the
field object ``F`` explicitly; nothing here knows how elements are encoded.
"""

import random
from math import lcm


def trim(f):
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def degree(f):
    return len(f) - 1


def add(F, f, g):
    n = max(len(f), len(g))
    out = []
    for i in range(n):
        a = f[i] if i < len(f) else 0
        b = g[i] if i < len(g) else 0
        out.append(F.add(a, b))
    return trim(out)


def sub(F, f, g):
    n = max(len(f), len(g))
    out = []
    for i in range(n):
        a = f[i] if i < len(f) else 0
        b = g[i] if i < len(g) else 0
        out.append(F.sub(a, b))
    return trim(out)


def scale(F, f, c):
    if c == 0:
        return []
    return trim([F.mul(a, c) for a in f])


def mul(F, f, g):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            if b:
                out[i + j] = F.add(out[i + j], F.mul(a, b))
    return trim(out)


def divmod_(F, f, g):
    if not g:
        raise ZeroDivisionError("division by the zero polynomial")
    f = list(f)
    dg = len(g) - 1
    inv_lead = F.inv(g[-1])
    q = [0] * max(len(f) - dg, 0)
    while len(f) - 1 >= dg and f:
        shift = len(f) - 1 - dg
        c = F.mul(f[-1], inv_lead)
        q[shift] = c
        for j, b in enumerate(g):
            f[shift + j] = F.sub(f[shift + j], F.mul(c, b))
        f = trim(f)
    return trim(q), f


def mod(F, f, g):
    return divmod_(F, f, g)[1]


def monic(F, f):
    if not f:
        return []
    return scale(F, f, F.inv(f[-1]))


def gcd(F, f, g):
    f, g = trim(f), trim(g)
    while g:
        f, g = g, mod(F, f, g)
    return monic(F, f)


def powmod(F, base, e, modulus):
    result = [1]
    base = mod(F, base, modulus)
    while e:
        if e & 1:
            result = mod(F, mul(F, result, base), modulus)
        e >>= 1
        if e:
            base = mod(F, mul(F, base, base), modulus)
    return result


def evaluate(F, f, x):
    acc = 0
    for c in reversed(f):
        acc = F.add(F.mul(acc, x), c)
    return acc


def frobenius_gcd_degrees(F, f):
    """Distinct-degree split of ``f``.

    Returns ``{d: g_d}`` where ``g_d`` is the product of the distinct monic
    irreducible factors of degree ``d``.  Repeated factors are stripped as
    they are found, so multiplicities never shift a factor to a wrong degree.
    """
    f = monic(F, trim(f))
    out = {}
    x = [0, 1]
    h = x
    i = 0
    while degree(f) > 0:
        i += 1
        h = powmod(F, h, F.q, f)
        g = gcd(F, f, sub(F, h, x))
        if degree(g) > 0:
            out[i] = g
            f = _strip(F, f, g)
            if degree(f) > 0:
                h = mod(F, h, f)
    return out


def _strip(F, f, g):
    while degree(g) > 0:
        f = divmod_(F, f, g)[0]
        g = gcd(F, f, g)
    return f


def splitting_degree(F, f):
    """Smallest k such that ``f`` splits into linear factors over F_{q^k}."""
    degs = frobenius_gcd_degrees(F, f)
    k = 1
    for d in degs:
        k = lcm(k, d)
    return k


def roots(F, f, rng=None, exhaustive_limit=100_000):
    """Distinct roots of ``f`` lying in ``F`` (sorted by encoding)."""
    f = monic(F, trim(f))
    if degree(f) <= 0:
        return []
    if F.q <= exhaustive_limit:
        return [a for a in range(F.q) if evaluate(F, f, a) == 0]
    # linear part: gcd with x^q - x, then equal-degree splitting
    lin = gcd(F, f, sub(F, powmod(F, [0, 1], F.q, f), [0, 1]))
    found = []
    _split_linear(F, lin, rng, found)
    return sorted(found)


def _split_linear(F, f, rng, out):
    rng = rng or random.Random(0)
    if degree(f) <= 0:
        return
    if degree(f) == 1:
        out.append(F.neg(F.mul(f[0], F.inv(f[1]))))
        return
    while True:
        a = rng.randrange(F.q)
        if F.char == 2:
            # trace polynomial of a*x
            t = [0, a]
            acc = list(t)
            for _ in range(F.degree - 1):
                t = mod(F, mul(F, t, t), f)
                acc = add(F, acc, t)
            g = gcd(F, f, acc)
        else:
            t = powmod(F, [a, 1], (F.q - 1) // 2, f)
            g = gcd(F, f, sub(F, t, [1]))
        if 0 < degree(g) < degree(f):
            _split_linear(F, g, rng, out)
            _split_linear(F, divmod_(F, f, g)[0], rng, out)
            return
