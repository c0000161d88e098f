"""Pure-Python Groebner kernels.

Polynomials here are lists of terms ``(key, exp, coeff)`` sorted by ``key``
in decreasing order, with integer coefficients.  ``key`` is the image of the
exponent tuple under a linear monomial-order map, so ``key(a*b)`` is the
componentwise sum of the keys; ``key_of`` maps an exponent tuple to its
key.  The compiled module ``_kernels`` exposes the
same functions.
"""

from math import gcd

BACKEND = "python"


def add_tuples(a, b):
    return tuple([x + y for x, y in zip(a, b)])


def sub_tuples(a, b):
    return tuple([x - y for x, y in zip(a, b)])


def divides(a, b):
    """True when exponent tuple ``a`` divides ``b``."""
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def lcm_exp(a, b):
    return tuple([x if x >= y else y for x, y in zip(a, b)])


def content(f):
    g = 0
    for t in f:
        g = gcd(g, t[2])
        if g == 1:
            return 1
    return g


def primitive(f):
    """Divide by the content and make the leading coefficient positive."""
    if not f:
        return f
    g = content(f)
    if f[0][2] < 0:
        g = -g
    if g == 1:
        return f
    return [(k, e, c // g) for k, e, c in f]


def lincomb(a, f, b, g):
    """Return ``a*f + b*g`` for sorted term lists ``f`` and ``g``."""
    out = []
    i = j = 0
    nf, ng = len(f), len(g)
    while i < nf and j < ng:
        kf = f[i][0]
        kg = g[j][0]
        if kf > kg:
            t = f[i]
            out.append((t[0], t[1], a * t[2]))
            i += 1
        elif kg > kf:
            t = g[j]
            out.append((t[0], t[1], b * t[2]))
            j += 1
        else:
            c = a * f[i][2] + b * g[j][2]
            if c:
                out.append((kf, f[i][1], c))
            i += 1
            j += 1
    while i < nf:
        t = f[i]
        out.append((t[0], t[1], a * t[2]))
        i += 1
    while j < ng:
        t = g[j]
        out.append((t[0], t[1], b * t[2]))
        j += 1
    return out


def shift(g, key, exp):
    """Multiply every term of ``g`` by the monomial with ``key``/``exp``."""
    return [(add_tuples(k, key), add_tuples(e, exp), c) for k, e, c in g]


def spoly(f, g, key_of):
    """S-polynomial of two term lists (integer-scaled, primitive)."""
    ef, eg = f[0][1], g[0][1]
    l = lcm_exp(ef, eg)
    mf = sub_tuples(l, ef)
    mg = sub_tuples(l, eg)
    cf, cg = f[0][2], g[0][2]
    h = gcd(cf, cg)
    s = lincomb(cg // h, shift(f, key_of(mf), mf), -(cf // h), shift(g, key_of(mg), mg))
    return primitive(s)


def reduce(f, basis, key_of, full=True):
    """Reduce ``f`` modulo ``basis``; return a primitive remainder.

    The remainder equals ``u*f - sum(q_i*g_i)`` for a nonzero integer ``u``.
    With ``full=False`` only the leading term is reduced (top reduction).
    """
    if not f or not basis:
        return primitive(f)
    leads = [g[0][1] for g in basis]
    nb = len(basis)
    f = list(f)
    i = 0
    steps = 0
    while i < len(f):
        k, e, c = f[i]
        hit = -1
        for j in range(nb):
            if divides(leads[j], e):
                hit = j
                break
        if hit < 0:
            if not full:
                break
            i += 1
            continue
        g = basis[hit]
        m = sub_tuples(e, leads[hit])
        cg = g[0][2]
        h = gcd(c, cg)
        a = cg // h
        b = -(c // h)
        # the head f[:i] is already irreducible; scale it and merge the tail
        head = f[:i]
        if a != 1:
            head = [(hk, he, a * hc) for hk, he, hc in head]
        tail = lincomb(a, f[i:], b, shift(g, key_of(m), m))
        f = head + tail
        steps += 1
        if steps % 16 == 0:
            f = primitive(f)
    return primitive(f)
