"""Pure-Python compute kernel: Gaussian-rational and monomial-dict arithmetic.

A Gaussian rational is a 4-tuple of ints ``(an, ad, bn, bd)`` standing for
``an/ad + (bn/bd)*i``, kept in lowest terms with positive denominators.
A polynomial is a dict mapping exponent tuples to nonzero Gaussian rationals.

`pencilforms._core_cy` implements the same functions in Cython; the two must
stay behaviorally identical. Every function returns fresh objects and never
mutates its arguments.
"""

from __future__ import annotations

from math import gcd

BACKEND = "python"

Q_ZERO = (0, 1, 0, 1)
Q_ONE = (1, 1, 0, 1)


def _frac(n, d):
    """Reduce n/d to lowest terms with a positive denominator."""
    if d == 0:
        raise ZeroDivisionError("zero denominator")
    if n == 0:
        return 0, 1
    if d < 0:
        n, d = -n, -d
    g = gcd(n, d)
    return n // g, d // g


def qnorm(an, ad, bn, bd):
    ra, da = _frac(an, ad)
    rb, db = _frac(bn, bd)
    return (ra, da, rb, db)


def qadd(a, b):
    an, ad, bn, bd = a
    cn, cd, dn, dd = b
    re = _frac(an * cd + cn * ad, ad * cd)
    im = _frac(bn * dd + dn * bd, bd * dd)
    return re + im


def qneg(a):
    return (-a[0], a[1], -a[2], a[3])


def qsub(a, b):
    return qadd(a, qneg(b))


def qmul(a, b):
    an, ad, bn, bd = a
    cn, cd, dn, dd = b
    # (x + yi)(u + vi) = (xu - yv) + (xv + yu)i
    re = _frac(an * cn * bd * dd - bn * dn * ad * cd, ad * cd * bd * dd)
    im = _frac(an * dn * bd * cd + bn * cn * ad * dd, ad * cd * bd * dd)
    return re + im


def qinv(a):
    an, ad, bn, bd = a
    if an == 0 and bn == 0:
        raise ZeroDivisionError("inverse of zero")
    # 1/(x + yi) = (x - yi) / (x^2 + y^2)
    nn = an * an * bd * bd + bn * bn * ad * ad
    re = _frac(an * ad * bd * bd, nn)
    im = _frac(-bn * ad * ad * bd, nn)
    return re + im


def exp_add(e1, e2):
    return tuple(x + y for x, y in zip(e1, e2))


def poly_add(p, q):
    out = dict(p)
    for e, c in q.items():
        old = out.get(e)
        if old is None:
            out[e] = c
        else:
            s = qadd(old, c)
            if s[0] == 0 and s[2] == 0:
                del out[e]
            else:
                out[e] = s
    return out


def poly_neg(p):
    return {e: qneg(c) for e, c in p.items()}


def poly_sub(p, q):
    return poly_add(p, poly_neg(q))


def poly_scale(p, c):
    if c[0] == 0 and c[2] == 0:
        return {}
    return {e: qmul(v, c) for e, v in p.items()}


def poly_mul_term(p, exps, c):
    """p times the single term c * z^exps."""
    if c[0] == 0 and c[2] == 0:
        return {}
    return {exp_add(e, exps): qmul(v, c) for e, v in p.items()}


def poly_mul(p, q):
    if len(p) > len(q):
        p, q = q, p
    out = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = exp_add(e1, e2)
            c = qmul(c1, c2)
            old = out.get(e)
            if old is None:
                out[e] = c
            else:
                s = qadd(old, c)
                if s[0] == 0 and s[2] == 0:
                    del out[e]
                else:
                    out[e] = s
    return out
