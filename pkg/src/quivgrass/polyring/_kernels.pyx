# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled Groebner kernels; same contract as ``_kernels_py``."""

from math import gcd

BACKEND = "cython"


cdef tuple add_tuples(tuple a, tuple b):
    cdef Py_ssize_t i, n = len(a)
    cdef list out = [None] * n
    for i in range(n):
        out[i] = <long long>a[i] + <long long>b[i]
    return tuple(out)


cdef tuple sub_tuples_c(tuple a, tuple b):
    cdef Py_ssize_t i, n = len(a)
    cdef list out = [None] * n
    for i in range(n):
        out[i] = <long long>a[i] - <long long>b[i]
    return tuple(out)


def sub_tuples(tuple a, tuple b):
    return sub_tuples_c(a, b)


cdef bint divides_c(tuple a, tuple b):
    cdef Py_ssize_t i, n = len(a)
    for i in range(n):
        if <long long>a[i] > <long long>b[i]:
            return False
    return True


def divides(tuple a, tuple b):
    """True when exponent tuple ``a`` divides ``b``."""
    return divides_c(a, b)


def lcm_exp(tuple a, tuple b):
    cdef Py_ssize_t i, n = len(a)
    cdef list out = [None] * n
    cdef long long x, y
    for i in range(n):
        x = a[i]
        y = b[i]
        out[i] = x if x >= y else y
    return tuple(out)


def content(list f):
    g = 0
    for t in f:
        g = gcd(g, (<tuple>t)[2])
        if g == 1:
            return 1
    return g


def primitive(list f):
    """Divide by the content and make the leading coefficient positive."""
    if not f:
        return f
    g = content(f)
    if (<tuple>f[0])[2] < 0:
        g = -g
    if g == 1:
        return f
    return [(t[0], t[1], t[2] // g) for t in f]


cdef list lincomb_c(object a, list f, object b, list g):
    cdef list out = []
    cdef Py_ssize_t i = 0, j = 0, nf = len(f), ng = len(g)
    cdef tuple tf, tg
    while i < nf and j < ng:
        tf = <tuple>f[i]
        tg = <tuple>g[j]
        kf = tf[0]
        kg = tg[0]
        if kf > kg:
            out.append((kf, tf[1], a * tf[2]))
            i += 1
        elif kg > kf:
            out.append((kg, tg[1], b * tg[2]))
            j += 1
        else:
            c = a * tf[2] + b * tg[2]
            if c:
                out.append((kf, tf[1], c))
            i += 1
            j += 1
    while i < nf:
        tf = <tuple>f[i]
        out.append((tf[0], tf[1], a * tf[2]))
        i += 1
    while j < ng:
        tg = <tuple>g[j]
        out.append((tg[0], tg[1], b * tg[2]))
        j += 1
    return out


def lincomb(a, list f, b, list g):
    """Return ``a*f + b*g`` for sorted term lists ``f`` and ``g``."""
    return lincomb_c(a, f, b, g)


cdef list shift_c(list g, tuple key, tuple exp):
    cdef list out = []
    cdef tuple t
    for t in g:
        out.append((add_tuples(<tuple>t[0], key), add_tuples(<tuple>t[1], exp), t[2]))
    return out


def shift(list g, tuple key, tuple exp):
    """Multiply every term of ``g`` by the monomial with ``key``/``exp``."""
    return shift_c(g, key, exp)


def spoly(list f, list g, key_of):
    """S-polynomial of two term lists (integer-scaled, primitive)."""
    cdef tuple ef = (<tuple>f[0])[1]
    cdef tuple eg = (<tuple>g[0])[1]
    cdef tuple l = lcm_exp(ef, eg)
    cdef tuple mf = sub_tuples_c(l, ef)
    cdef tuple mg = sub_tuples_c(l, eg)
    cf = (<tuple>f[0])[2]
    cg = (<tuple>g[0])[2]
    h = gcd(cf, cg)
    s = lincomb_c(cg // h, shift_c(f, key_of(mf), mf), -(cf // h), shift_c(g, key_of(mg), mg))
    return primitive(s)


def reduce(list f, list basis, key_of, bint full=True):
    """Reduce ``f`` modulo ``basis``; return a primitive remainder."""
    if not f or not basis:
        return primitive(f)
    cdef list leads = [(<tuple>(<list>g)[0])[1] for g in basis]
    cdef Py_ssize_t nb = len(basis)
    cdef Py_ssize_t i = 0, j, hit
    cdef long steps = 0
    cdef tuple t, e, m
    cdef list head, g
    f = list(f)
    while i < len(f):
        t = <tuple>f[i]
        e = <tuple>t[1]
        c = t[2]
        hit = -1
        for j in range(nb):
            if divides_c(<tuple>leads[j], e):
                hit = j
                break
        if hit < 0:
            if not full:
                break
            i += 1
            continue
        g = <list>basis[hit]
        m = sub_tuples_c(e, <tuple>leads[hit])
        cg = (<tuple>g[0])[2]
        h = gcd(c, cg)
        a = cg // h
        b = -(c // h)
        head = f[:i]
        if a != 1:
            head = [(ht[0], ht[1], a * ht[2]) for ht in head]
        f = head + lincomb_c(a, f[i:], b, shift_c(g, key_of(m), m))
        steps += 1
        if steps % 16 == 0:
            f = primitive(f)
    return primitive(f)
