# cython: language_level=3
"""Cython compute kernel; mirror of ``pencilforms._core_py``.

Same representation and behavior as the pure backend: Gaussian rationals as
4-tuples of (arbitrary-precision) ints in lowest terms, polynomials as dicts
from exponent tuples to nonzero coefficients. Keep the two files in sync.
"""

from math import gcd

BACKEND = "cython"

Q_ZERO = (0, 1, 0, 1)
Q_ONE = (1, 1, 0, 1)


cdef inline tuple _frac(object n, object d):
    if d == 0:
        raise ZeroDivisionError("zero denominator")
    if n == 0:
        return (0, 1)
    if d < 0:
        n = -n
        d = -d
    g = gcd(n, d)
    return (n // g, d // g)


def qnorm(an, ad, bn, bd):
    cdef tuple re = _frac(an, ad)
    cdef tuple im = _frac(bn, bd)
    return (re[0], re[1], im[0], im[1])


cpdef tuple qadd(tuple a, tuple b):
    cdef tuple re = _frac(a[0] * b[1] + b[0] * a[1], a[1] * b[1])
    cdef tuple im = _frac(a[2] * b[3] + b[2] * a[3], a[3] * b[3])
    return (re[0], re[1], im[0], im[1])


cpdef tuple qneg(tuple a):
    return (-a[0], a[1], -a[2], a[3])


cpdef tuple qsub(tuple a, tuple b):
    return qadd(a, qneg(b))


cpdef tuple qmul(tuple a, tuple b):
    cdef object an = a[0], ad = a[1], bn = a[2], bd = a[3]
    cdef object cn = b[0], cd = b[1], dn = b[2], dd = b[3]
    cdef tuple re = _frac(an * cn * bd * dd - bn * dn * ad * cd,
                          ad * cd * bd * dd)
    cdef tuple im = _frac(an * dn * bd * cd + bn * cn * ad * dd,
                          ad * cd * bd * dd)
    return (re[0], re[1], im[0], im[1])


cpdef tuple qinv(tuple a):
    cdef object an = a[0], ad = a[1], bn = a[2], bd = a[3]
    if an == 0 and bn == 0:
        raise ZeroDivisionError("inverse of zero")
    nn = an * an * bd * bd + bn * bn * ad * ad
    cdef tuple re = _frac(an * ad * bd * bd, nn)
    cdef tuple im = _frac(-bn * ad * ad * bd, nn)
    return (re[0], re[1], im[0], im[1])


cpdef tuple exp_add(tuple e1, tuple e2):
    cdef Py_ssize_t i, m = len(e1)
    cdef list out = [0] * m
    for i in range(m):
        out[i] = e1[i] + e2[i]
    return tuple(out)


def poly_add(dict p, dict q):
    cdef dict out = dict(p)
    cdef tuple s
    for e, c in q.items():
        old = out.get(e)
        if old is None:
            out[e] = c
        else:
            s = qadd(<tuple> old, <tuple> c)
            if s[0] == 0 and s[2] == 0:
                del out[e]
            else:
                out[e] = s
    return out


def poly_neg(dict p):
    cdef dict out = {}
    for e, c in p.items():
        out[e] = qneg(<tuple> c)
    return out


def poly_sub(dict p, dict q):
    return poly_add(p, poly_neg(q))


def poly_scale(dict p, tuple c):
    if c[0] == 0 and c[2] == 0:
        return {}
    cdef dict out = {}
    for e, v in p.items():
        out[e] = qmul(<tuple> v, c)
    return out


def poly_mul_term(dict p, tuple exps, tuple c):
    if c[0] == 0 and c[2] == 0:
        return {}
    cdef dict out = {}
    for e, v in p.items():
        out[exp_add(<tuple> e, exps)] = qmul(<tuple> v, c)
    return out


def poly_mul(dict p, dict q):
    cdef dict out = {}
    cdef dict a = p, b = q
    cdef tuple e, c, s
    if len(p) > len(q):
        a, b = q, p
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = exp_add(<tuple> e1, <tuple> e2)
            c = qmul(<tuple> c1, <tuple> c2)
            old = out.get(e)
            if old is None:
                out[e] = c
            else:
                s = qadd(<tuple> old, c)
                if s[0] == 0 and s[2] == 0:
                    del out[e]
                else:
                    out[e] = s
    return out
