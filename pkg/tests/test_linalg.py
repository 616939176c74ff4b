"""Exact matrix algebra: determinants, adjugates, pencils, minor identities."""

import random
from itertools import permutations

import pytest

from pencilforms.linalg import (
    MatrixTuple,
    PolyMatrix,
    adjugate_double_minor_check,
    grid_det,
    grid_double_minor,
    grid_minor,
)
from pencilforms.ring import MultiPoly, Scalar

from test_ring import rand_poly, rand_scalar


def perm_sign(perm):
    sign = 1
    for a in range(len(perm)):
        for b in range(a + 1, len(perm)):
            if perm[a] > perm[b]:
                sign = -sign
    return sign


def leibniz_det(rows, zero):
    """Independent determinant oracle: the full permutation sum."""
    k = len(rows)
    total = zero
    for perm in permutations(range(k)):
        term = rows[0][perm[0]]
        for r in range(1, k):
            term = term * rows[r][perm[r]]
        total = total + term * perm_sign(perm)
    return total


def rand_scalar_grid(rng, k):
    return tuple(tuple(rand_scalar(rng) for _ in range(k)) for _ in range(k))


def rand_tuple(rng, n, k):
    """A random matrix tuple whose pencil has a nonzero determinant."""
    while True:
        t = MatrixTuple([[[rng.randint(-3, 3) for _ in range(k)]
                          for _ in range(k)] for _ in range(n)])
        if not t.pencil().det().is_zero:
            return t


def test_det_matches_permutation_sum_oracle():
    rng = random.Random(201)
    for _ in range(20):
        k = rng.choice([2, 3])
        n = rng.choice([2, 3])
        m = PolyMatrix(n, [[rand_poly(rng, n, max_deg=1, nterms=2)
                            for _ in range(k)] for _ in range(k)])
        assert m.det() == leibniz_det(m.rows, MultiPoly.zero(n))
    for _ in range(20):
        k = rng.choice([2, 3, 4])
        g = rand_scalar_grid(rng, k)
        assert grid_det(g, Scalar(1)) == leibniz_det(g, Scalar(0))


def test_det_is_multiplicative():
    rng = random.Random(202)
    for _ in range(25):
        k = rng.choice([2, 3])
        a = PolyMatrix.constant(2, rand_scalar_grid(rng, k))
        b = PolyMatrix.constant(2, rand_scalar_grid(rng, k))
        assert (a * b).det() == a.det() * b.det()


def test_adjugate_identity():
    rng = random.Random(203)
    for _ in range(20):
        k = rng.choice([1, 2, 3])
        n = rng.choice([2, 3])
        m = PolyMatrix(n, [[rand_poly(rng, n, max_deg=1, nterms=2)
                            for _ in range(k)] for _ in range(k)])
        prod = m.adjugate() * m
        expect = PolyMatrix.identity(n, k) * m.det()
        assert prod == expect
        assert m * m.adjugate() == expect


def test_pencil_of_matrix_units():
    t = MatrixTuple.matrix_units(2)
    p = t.pencil()
    assert str(p.entry(0, 0)) == "z1"
    assert str(p.entry(0, 1)) == "z2"
    assert str(p.entry(1, 0)) == "z3"
    assert str(p.entry(1, 1)) == "z4"
    assert str(p.det()) == "z1*z4-z2*z3"
    assert p.det().homogeneity_degree() == 2


def test_pencil_det_homogeneous_of_degree_k():
    rng = random.Random(204)
    for _ in range(20):
        n, k = rng.choice([2, 3, 4]), rng.choice([2, 3])
        t = rand_tuple(rng, n, k)
        det = t.pencil().det()
        assert det.homogeneity_degree() == k


def test_double_minor_removes_rows_and_columns():
    g = tuple(tuple(Scalar(4 * r + c + 1) for c in range(4)) for r in range(4))
    # removing rows 1,2 and columns 3,4 leaves [[9,10],[13,14]]
    m = grid_minor(g, (1, 2), (3, 4))
    assert m == ((Scalar(9), Scalar(10)), (Scalar(13), Scalar(14)))
    assert grid_double_minor(g, (1, 2), (3, 4), Scalar(1)) \
        == Scalar(9 * 14 - 10 * 13)
    with pytest.raises(ValueError):
        grid_double_minor(g, (1, 1), (2, 3), Scalar(1))
    with pytest.raises(ValueError):
        grid_double_minor(g, (0, 1), (2, 3), Scalar(1))


def test_adjugate_double_minor_identity_random():
    rng = random.Random(205)
    for k in (2, 3, 4, 5):
        for _ in range(25):
            g = rand_scalar_grid(rng, k)
            assert adjugate_double_minor_check(g, Scalar(1))


def test_adjugate_double_minor_identity_polynomial():
    rng = random.Random(206)
    for _ in range(5):
        m = PolyMatrix(2, [[rand_poly(rng, 2, max_deg=1, nterms=2)
                            for _ in range(3)] for _ in range(3)])
        assert adjugate_double_minor_check(m.rows, MultiPoly.one(2))


def test_naive_statement_of_double_minor_identity_fails():
    # the row/column-swapped, signless reading is false on generic matrices
    g = ((Scalar(1), Scalar(2), Scalar(0)),
         (Scalar(0), Scalar(1), Scalar(0)),
         (Scalar(0), Scalar(0), Scalar(1)))
    from pencilforms.linalg import grid_adjugate
    adj = grid_adjugate(g, Scalar(1))
    i, p, j, q = 1, 3, 2, 3
    lhs = adj[i - 1][j - 1] * adj[p - 1][q - 1] \
        - adj[i - 1][q - 1] * adj[p - 1][j - 1]
    det = grid_det(g, Scalar(1))
    naive = det * grid_det(grid_minor(g, (i, p), (j, q)), Scalar(1))
    assert lhs != naive


def test_matrix_tuple_validation_and_diagonal():
    with pytest.raises(ValueError):
        MatrixTuple([])
    with pytest.raises(ValueError):
        MatrixTuple([[[1, 2], [3, 4]], [[1]]])
    diag = MatrixTuple([[[1, 0], [0, 2]], [[3, 0], [0, 4]]])
    assert diag.is_diagonal
    assert not MatrixTuple.matrix_units(2).is_diagonal


def test_poly_matrix_partial_and_trace():
    t = MatrixTuple.matrix_units(2)
    p = t.pencil()
    for j in range(1, 5):
        assert p.partial(j) == PolyMatrix.constant(4, t.matrix(j))
    assert p.trace() == MultiPoly.parse("z1+z4", 4)
