"""Exact linear algebra kernel: RREF, kernels, polynomials, HNF lattices.

Oracle strategy: random matrices are checked against identities that an
independent implementation would also satisfy (A * A^-1 = I, A * ker = 0,
p_min(A) = 0, index multiplicativity), plus a handful of hand-computed
fixtures.
"""

import random

import pytest
from hypothesis import given, settings, strategies as st

from carnot.exactlin import (
    QQ, SingularMatrixError, Subspace, ZLattice, char_poly, det, hnf,
    hnf_lattice, identity, integer_kernel, kernel, lattice_index,
    lattice_intersect_subspace, mat_inverse, mat_mul, mat_vec,
    minimal_polynomial, poly_eval_matrix, q_diagonalizable_roots, rank,
    rref, semisimple_part, solve_affine, sparse_kernel, sparse_solve_affine,
    try_solve_affine,
)


def _rand_mat(rng, r, c, den=2):
    return [[QQ(rng.randint(-4, 4), rng.randint(1, den)) for _ in range(c)]
            for _ in range(r)]


qq_small = st.builds(QQ, st.integers(-6, 6), st.integers(1, 4))


# ---------------------------------------------------------------------------
# RREF / rank / kernel.


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(qq_small, min_size=3, max_size=3),
                min_size=1, max_size=4))
def test_kernel_annihilates_and_has_complementary_dim(m):
    k = kernel(m)
    assert len(k) == 3 - rank(m)
    for v in k:
        assert all(x == 0 for x in mat_vec(m, v))


def test_rref_idempotent_and_pivots():
    rng = random.Random(11)
    for _ in range(40):
        m = _rand_mat(rng, rng.randint(1, 5), rng.randint(1, 5))
        r1, p1 = rref(m)
        r2, p2 = rref(r1)
        assert r1 == r2 and p1 == p2
        for i, p in enumerate(p1):
            assert r1[i][p] == 1
            assert all(r1[t][p] == 0 for t in range(len(r1)) if t != i)


def test_solve_affine_roundtrip():
    rng = random.Random(5)
    for _ in range(40):
        m = _rand_mat(rng, rng.randint(1, 4), rng.randint(1, 4))
        x = [QQ(rng.randint(-3, 3)) for _ in range(len(m[0]))]
        b = mat_vec(m, x)
        sol, kern = solve_affine(m, b)
        assert mat_vec(m, sol) == b
        assert len(kern) == len(m[0]) - rank(m)


def test_try_solve_affine_infeasible():
    assert try_solve_affine([[1, 0], [1, 0]], [1, 2]) is None


def test_sparse_agrees_with_dense():
    rng = random.Random(7)
    for _ in range(30):
        r, c = rng.randint(1, 5), rng.randint(1, 5)
        m = _rand_mat(rng, r, c)
        rows = [{j: m[i][j] for j in range(c) if m[i][j] != 0}
                for i in range(r)]
        dense_ker = kernel(m)
        sparse_ker = sparse_kernel(rows, c)
        assert Subspace(c, dense_ker) == Subspace(c, sparse_ker)
        x = [QQ(rng.randint(-2, 2)) for _ in range(c)]
        b = mat_vec(m, x)
        got = sparse_solve_affine(rows, b, c)
        assert got is not None and mat_vec(m, got[0]) == b


# ---------------------------------------------------------------------------
# Determinant, inverse, polynomials.


def test_inverse_and_det():
    rng = random.Random(3)
    for _ in range(30):
        n = rng.randint(1, 5)
        m = _rand_mat(rng, n, n)
        d = det(m)
        if d == 0:
            with pytest.raises(SingularMatrixError):
                mat_inverse(m)
            continue
        assert mat_mul(m, mat_inverse(m)) == identity(n)


def test_det_multiplicative():
    rng = random.Random(9)
    for _ in range(20):
        n = rng.randint(1, 4)
        a, b = _rand_mat(rng, n, n), _rand_mat(rng, n, n)
        assert det(mat_mul(a, b)) == det(a) * det(b)


def test_char_poly_and_minpoly_annihilate():
    rng = random.Random(13)
    for _ in range(25):
        n = rng.randint(1, 4)
        m = _rand_mat(rng, n, n)
        cp = char_poly(m)
        assert len(cp) == n + 1 and cp[-1] == 1
        assert all(all(x == 0 for x in row)
                   for row in poly_eval_matrix(cp, m))
        mp = minimal_polynomial(m)
        assert all(all(x == 0 for x in row)
                   for row in poly_eval_matrix(mp, m))
        # minimal polynomial divides the characteristic polynomial
        from carnot.exactlin import poly_divmod
        _, rem = poly_divmod(cp, mp)
        assert all(c == 0 for c in rem)


def test_char_poly_companion_fixture():
    # companion of x^3 - 2x + 5
    m = [[0, 0, -5], [1, 0, 2], [0, 1, 0]]
    assert char_poly([[QQ(x) for x in r] for r in m]) == \
        [QQ(5), QQ(-2), QQ(0), QQ(1)]


def test_semisimple_part_properties():
    rng = random.Random(17)
    for _ in range(20):
        n = rng.randint(1, 4)
        m = _rand_mat(rng, n, n, den=1)
        s = semisimple_part(m)
        # s commutes with m, m - s is nilpotent, s has squarefree minpoly
        assert mat_mul(s, m) == mat_mul(m, s)
        nilp = [[m[i][j] - s[i][j] for j in range(n)] for i in range(n)]
        p = nilp
        for _ in range(n):
            p = mat_mul(p, nilp)
        assert all(all(x == 0 for x in row) for row in p)
        mp = minimal_polynomial(s)
        from carnot.exactlin import poly_deriv, poly_gcd
        g = poly_gcd(mp, poly_deriv(mp))
        assert len(g) == 1


def test_q_diagonalizable_detection():
    d = [[QQ(2), QQ(0)], [QQ(0), QQ(-3)]]
    assert q_diagonalizable_roots(d) == [QQ(-3), QQ(2)]
    jordan = [[QQ(1), QQ(1)], [QQ(0), QQ(1)]]
    assert q_diagonalizable_roots(jordan) is None
    rot = [[QQ(0), QQ(-1)], [QQ(1), QQ(0)]]        # eigenvalues +-i
    assert q_diagonalizable_roots(rot) is None


# ---------------------------------------------------------------------------
# Subspaces.


def test_subspace_canonical_and_operations():
    rng = random.Random(19)
    for _ in range(25):
        d = rng.randint(1, 5)
        u = Subspace(d, _rand_mat(rng, rng.randint(0, d), d))
        v = Subspace(d, _rand_mat(rng, rng.randint(0, d), d))
        # Grassmann identity
        assert u.add(v).dim + u.intersect(v).dim == u.dim + v.dim
        assert u <= u.add(v) and u.intersect(v) <= u
        # canonical form: same space from a scrambled basis
        if u.dim:
            scr = []
            for _ in range(u.dim):
                coeffs = [QQ(rng.randint(-2, 2)) for _ in range(u.dim)]
                scr.append([sum(c * b[t] for c, b in zip(coeffs, u.basis()))
                            for t in range(d)])
            assert Subspace(d, u.basis() + scr) == u
        ann = u.annihilator()
        assert len(ann) == d - u.dim
        for f in ann:
            for b in u.basis():
                assert sum(x * y for x, y in zip(f, b)) == 0


def test_subspace_nested_pivots():
    # RREF pivots of a subspace of V are a subset of V's pivots
    rng = random.Random(23)
    for _ in range(25):
        d = rng.randint(2, 6)
        v = Subspace(d, _rand_mat(rng, rng.randint(1, d), d))
        if v.dim < 1:
            continue
        take = rng.randint(1, v.dim)
        u = Subspace(d, v.basis()[:take])
        assert set(u.pivots) <= set(v.pivots)


def test_subspace_coords_and_contains():
    v = Subspace(3, [[1, 0, 1], [0, 1, 0]])
    assert v.contains([2, 3, 2])
    assert not v.contains([1, 0, 0])
    c = v.coords([2, 3, 2])
    back = [sum(ci * b[j] for ci, b in zip(c, v.basis())) for j in range(3)]
    assert [QQ(x) for x in back] == [QQ(2), QQ(3), QQ(2)]


# ---------------------------------------------------------------------------
# HNF and lattices.


def test_hnf_canonical_under_unimodular_scramble():
    rng = random.Random(29)
    for _ in range(25):
        d = rng.randint(1, 4)
        rows = [[rng.randint(-5, 5) for _ in range(d)]
                for _ in range(rng.randint(1, d + 1))]
        h = hnf(rows)
        # scramble by integer row operations, HNF must not change
        scr = [list(r) for r in rows]
        for _ in range(6):
            i, j = rng.randrange(len(scr)), rng.randrange(len(scr))
            if i != j:
                c = rng.randint(-2, 2)
                scr[i] = [x + c * y for x, y in zip(scr[i], scr[j])]
        assert hnf(scr) == h


def test_lattice_index_multiplicative():
    rng = random.Random(31)
    for _ in range(20):
        d = rng.randint(1, 3)
        l1 = hnf_lattice(identity(d))
        m2 = [[QQ(rng.randint(1, 3)) if i == j else QQ(0)
               for j in range(d)] for i in range(d)]
        l2 = l1.apply(m2)
        l3 = l2.apply(m2)
        i12 = lattice_index(l1, l2)
        i23 = lattice_index(l2, l3)
        assert lattice_index(l1, l3) == i12 * i23


def test_lattice_index_heisenberg_style_fixture():
    l1 = hnf_lattice([[QQ(1), QQ(0)], [QQ(0), QQ(1, 2)]])
    l2 = hnf_lattice([[QQ(3), QQ(0)], [QQ(0), QQ(3, 2)]])
    assert lattice_index(l1, l2) == 9


def test_lattice_membership_and_scale():
    lat = hnf_lattice([[QQ(1, 2), QQ(0)], [QQ(0), QQ(1)]])
    assert lat.contains([QQ(3, 2), QQ(4)])
    assert not lat.contains([QQ(1, 3), QQ(0)])
    assert lat.scale == 2


def test_lattice_intersect_subspace():
    lat = hnf_lattice(identity(3))
    sub = Subspace(3, [[1, 1, 0]])
    seg = lattice_intersect_subspace(lat, sub)
    assert seg.rank == 1
    b = seg.basis()[0]
    assert [abs(x) for x in b] == [QQ(1), QQ(1), QQ(0)]


def test_integer_kernel():
    # left kernel {c in Z^2 : c m = 0} of the column (1/2, -1/3)
    m = [[QQ(1, 2)], [QQ(-1, 3)]]
    k = integer_kernel(m)
    assert len(k) == 1
    c = k[0]
    assert all(QQ(x).denominator == 1 for x in c)
    assert sum(QQ(ci) * row[0] for ci, row in zip(c, m)) == 0
    # primitive (saturated) generator
    import math
    assert math.gcd(*(abs(int(x)) for x in c)) == 1
