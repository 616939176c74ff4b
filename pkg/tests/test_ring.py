"""Exact scalar, polynomial, and rational-function arithmetic."""

import random
from fractions import Fraction

import pytest

from pencilforms.ring import CycloElement, I, MultiPoly, RatFn, Scalar


def rand_scalar(rng, imag_prob=0.4):
    re = Fraction(rng.randint(-6, 6), rng.choice([1, 1, 2, 3]))
    im = Fraction(0)
    if rng.random() < imag_prob:
        im = Fraction(rng.randint(-6, 6), rng.choice([1, 1, 2, 3]))
    return Scalar(re, im)


def rand_poly(rng, n, max_deg=2, nterms=4):
    terms = {}
    for _ in range(nterms):
        exps = tuple(rng.randint(0, max_deg) for _ in range(n))
        terms[exps] = terms.get(exps, Scalar(0)) + rand_scalar(rng)
    return MultiPoly.from_terms(n, terms)


# -- Scalar ------------------------------------------------------------------


def test_scalar_ops_match_fraction_oracle():
    rng = random.Random(101)
    for _ in range(200):
        a, b = rand_scalar(rng), rand_scalar(rng)
        ar, ai, br, bi = a.real, a.imag, b.real, b.imag
        s = a + b
        assert (s.real, s.imag) == (ar + br, ai + bi)
        p = a * b
        assert (p.real, p.imag) == (ar * br - ai * bi, ar * bi + ai * br)
        if not b.is_zero:
            q = a / b
            assert q * b == a


def test_scalar_conjugate_product():
    a = Scalar(Fraction(1, 2), Fraction(1, 2))
    assert a * a.conjugate() == Scalar(Fraction(1, 2))


def test_scalar_inverse_and_zero_division():
    assert Scalar(2, 3).inverse() * Scalar(2, 3) == Scalar(1)
    with pytest.raises(ZeroDivisionError):
        Scalar(0).inverse()
    with pytest.raises(ZeroDivisionError):
        Scalar(1) / Scalar(0)


def test_scalar_text_round_trip():
    rng = random.Random(102)
    for _ in range(200):
        a = rand_scalar(rng, imag_prob=0.6)
        assert Scalar.parse(str(a)) == a
    for text, value in [
        ("0", Scalar(0)),
        ("-3", Scalar(-3)),
        ("3/2", Scalar(Fraction(3, 2))),
        ("i", I),
        ("-i", -I),
        ("2*i", Scalar(0, 2)),
        ("1/2+1/2*i", Scalar(Fraction(1, 2), Fraction(1, 2))),
        ("1/2-i", Scalar(Fraction(1, 2), -1)),
    ]:
        assert Scalar.parse(text) == value


def test_scalar_parse_rejects_garbage():
    for text in ["", "1+2", "i*i", "1//2", "2i+3i", "1/2+1/2", "x"]:
        with pytest.raises(ValueError):
            Scalar.parse(text)


# -- CycloElement ------------------------------------------------------------


def test_root_of_unity_power_wraps():
    t = CycloElement.root(4)
    assert t * t ** 3 == CycloElement.one(4)
    assert t ** 5 == t


def test_cyclo_ring_axioms():
    rng = random.Random(103)
    for q in (3, 4, 5):
        for _ in range(40):
            a = CycloElement(q, [rand_scalar(rng) for _ in range(q)])
            b = CycloElement(q, [rand_scalar(rng) for _ in range(q)])
            c = CycloElement(q, [rand_scalar(rng) for _ in range(q)])
            assert a * b == b * a
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c


def test_cyclo_inverse_round_trip():
    rng = random.Random(104)
    found = 0
    for q in (3, 4, 5):
        for _ in range(30):
            a = CycloElement(q, [rand_scalar(rng) for _ in range(q)])
            try:
                inv = a.inverse()
            except ValueError:
                continue
            assert a * inv == CycloElement.one(q)
            found += 1
    assert found > 20


def test_cyclo_non_unit_is_named():
    bad = CycloElement(4, [Scalar(1), Scalar(1), Scalar(0), Scalar(0)])
    with pytest.raises(ValueError, match="not a unit"):
        bad.inverse()


def test_cyclo_scalar_promotion():
    t = CycloElement.root(3)
    assert Scalar(2) * t + 1 == CycloElement(3, [Scalar(1), Scalar(2), Scalar(0)])


# -- MultiPoly ---------------------------------------------------------------


def test_poly_ring_axioms():
    rng = random.Random(105)
    for _ in range(200):
        n = rng.choice([2, 3, 4])
        p, q, r = (rand_poly(rng, n) for _ in range(3))
        assert p + q == q + p
        assert p * q == q * p
        assert (p * q) * r == p * (q * r)
        assert p * (q + r) == p * q + p * r
        assert p - p == MultiPoly.zero(n)


def test_poly_text_round_trip_and_grlex_order():
    rng = random.Random(106)
    for _ in range(150):
        n = rng.choice([2, 3, 4])
        p = rand_poly(rng, n)
        assert MultiPoly.parse(str(p), n) == p
    assert str(MultiPoly.parse("z2+z1", 2)) == "z1+z2"
    assert str(MultiPoly.parse("1+z1+z2^2+z1*z2+z1^2", 2)) \
        == "z1^2+z1*z2+z2^2+z1+1"
    assert str(MultiPoly.parse("z1*z4-z2*z3", 4)) == "z1*z4-z2*z3"


def test_poly_parse_rejects_bad_input():
    with pytest.raises(ValueError):
        MultiPoly.parse("z5", 4)
    with pytest.raises(ValueError):
        MultiPoly.parse("z1++z2", 3)
    with pytest.raises(ValueError):
        MultiPoly.parse("", 2)


def test_partial_derivative_product_rule():
    rng = random.Random(107)
    for _ in range(100):
        n = rng.choice([2, 3])
        p, q = rand_poly(rng, n), rand_poly(rng, n)
        for var in range(1, n + 1):
            lhs = (p * q).partial(var)
            rhs = p.partial(var) * q + p * q.partial(var)
            assert lhs == rhs


def test_euler_identity_for_homogeneous():
    rng = random.Random(108)
    for _ in range(60):
        n = rng.choice([2, 3, 4])
        deg = rng.choice([1, 2, 3])
        terms = {}
        for _ in range(4):
            exps = [0] * n
            for _ in range(deg):
                exps[rng.randrange(n)] += 1
            terms[tuple(exps)] = rand_scalar(rng)
        p = MultiPoly.from_terms(n, terms)
        if p.is_zero:
            continue
        assert p.homogeneity_degree() == deg
        total = MultiPoly.zero(n)
        for var in range(1, n + 1):
            total = total + MultiPoly.variable(n, var) * p.partial(var)
        assert total == p * deg


def test_homogeneity_detection():
    assert MultiPoly.parse("z1*z4-z2*z3", 4).homogeneity_degree() == 2
    assert MultiPoly.parse("z1^2+z2", 2).homogeneity_degree() is None
    with pytest.raises(ValueError):
        MultiPoly.zero(3).homogeneity_degree()


def test_exact_divide_round_trip():
    rng = random.Random(109)
    done = 0
    while done < 100:
        n = rng.choice([2, 3, 4])
        p, d = rand_poly(rng, n), rand_poly(rng, n)
        if d.is_zero or d.is_constant:
            continue
        assert (p * d).exact_divide(d) == p
        # p*d + 1 is never divisible by a nonconstant d when p*d is
        if not p.is_zero:
            assert (p * d + 1).exact_divide(d) is None
        done += 1


def test_exact_divide_pinned_cases():
    s = MultiPoly.parse("z1+z2", 2)
    assert (s * s).exact_divide(s) == s
    assert MultiPoly.parse("z1^2+z2^2", 2).exact_divide(s) is None
    with pytest.raises(ZeroDivisionError):
        s.exact_divide(MultiPoly.zero(2))


def test_poly_evaluate():
    det = MultiPoly.parse("z1*z4-z2*z3", 4)
    assert det.evaluate([1, 2, 3, 4]) == pytest.approx(-2 + 0j)
    rng = random.Random(110)
    for _ in range(50):
        p = rand_poly(rng, 3)
        q = rand_poly(rng, 3)
        z = [complex(rng.uniform(-2, 2), rng.uniform(-2, 2)) for _ in range(3)]
        lhs = (p * q).evaluate(z)
        rhs = p.evaluate(z) * q.evaluate(z)
        assert lhs == pytest.approx(rhs, rel=1e-9, abs=1e-9)


# -- RatFn -------------------------------------------------------------------


def test_ratfn_equality_cross_multiplied():
    rng = random.Random(111)
    for _ in range(100):
        n = rng.choice([2, 3])
        p, d = rand_poly(rng, n), rand_poly(rng, n)
        g = rand_poly(rng, n)
        if d.is_zero or g.is_zero:
            continue
        assert RatFn(p, d) == RatFn(p * g, d * g)
        if not p.is_zero:
            assert RatFn(p, d) != RatFn(p * g + d, d * g)


def test_ratfn_field_ops():
    rng = random.Random(112)
    for _ in range(80):
        n = 2
        p, q, d = rand_poly(rng, n), rand_poly(rng, n), rand_poly(rng, n)
        if d.is_zero:
            continue
        a, b = RatFn(p, d), RatFn(q, d)
        assert a + b == RatFn(p + q, d)
        assert a * b == RatFn(p * q, d * d)
        if not q.is_zero:
            assert (a / b) * b == a


def test_ratfn_partial_quotient_rule_numeric():
    rng = random.Random(113)
    checked = 0
    while checked < 30:
        p, d = rand_poly(rng, 2), rand_poly(rng, 2)
        if d.is_zero:
            continue
        r = RatFn(p, d)
        dr = r.partial(1)
        z = [complex(rng.uniform(0.5, 1.5), rng.uniform(0.2, 0.8)),
             complex(rng.uniform(0.5, 1.5), rng.uniform(0.2, 0.8))]
        try:
            h = 1e-6
            fd = (r.evaluate([z[0] + h, z[1]]) - r.evaluate([z[0] - h, z[1]])) / (2 * h)
            exact = dr.evaluate(z)
        except ZeroDivisionError:
            continue
        assert exact == pytest.approx(fd, rel=1e-4, abs=1e-4)
        checked += 1


def test_ratfn_power_tracking_and_reduce():
    det = MultiPoly.parse("z1*z4-z2*z3", 4)
    r = RatFn.over_power(det * det * MultiPoly.variable(4, 1), det, 3)
    reduced = r.reduce()
    assert reduced.den_pow == 1
    assert reduced == r
    assert reduced.num == MultiPoly.variable(4, 1)
    dr = RatFn.over_power(MultiPoly.one(4), det, 1).partial(1)
    assert dr == RatFn(-det.partial(1), det * det)


def test_ratfn_as_polynomial():
    det = MultiPoly.parse("z1*z4-z2*z3", 4)
    r = RatFn.over_power(det ** 3, det, 2)
    assert r.as_polynomial() == det
    assert RatFn.over_power(MultiPoly.variable(4, 1), det, 1).as_polynomial() is None


# -- kernel backend parity ----------------------------------------------------


def test_backends_agree():
    from pencilforms import _core_py

    try:
        from pencilforms import _core_cy
    except ImportError:
        pytest.skip("compiled kernel not built")
    rng = random.Random(114)
    for _ in range(100):
        p = {tuple(rng.randint(0, 3) for _ in range(3)):
             (rng.randint(-5, 5), rng.randint(1, 4), rng.randint(-5, 5),
              rng.randint(1, 4)) for _ in range(4)}
        q = {tuple(rng.randint(0, 3) for _ in range(3)):
             (rng.randint(-5, 5), rng.randint(1, 4), rng.randint(-5, 5),
              rng.randint(1, 4)) for _ in range(4)}
        p = {e: _core_py.qnorm(*c) for e, c in p.items() if _core_py.qnorm(*c) != _core_py.Q_ZERO}
        q = {e: _core_py.qnorm(*c) for e, c in q.items() if _core_py.qnorm(*c) != _core_py.Q_ZERO}
        assert _core_py.poly_mul(p, q) == _core_cy.poly_mul(p, q)
        assert _core_py.poly_add(p, q) == _core_cy.poly_add(p, q)
        for c1 in p.values():
            assert _core_py.qinv(c1) == _core_cy.qinv(c1)
