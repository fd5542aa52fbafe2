"""BCH group law, dilations, lattice subgroups, Guivarc'h lengths,
systole machinery.

The BCH implementation is checked against an independent oracle: the
truncated free associative algebra on two letters, where
log(exp x exp y) is computed directly from the power series.
"""

import math

import pytest

from carnot.algebra import Algebra, lower_series
from carnot.catalog import get
from carnot.exactlin import QQ, hnf_lattice, identity, lattice_index, mat_vec
from carnot.nilgroup import (
    BadGradingError, BoxBudgetError, ClassTooLargeError, GuivarchLength,
    LatticeSubgroup, NilGroup, bch_coefficients, defendo_modulus, dilation,
    growth_degree, guivarch_length, systole_estimate, systolic_experiment,
    uppersys_family,
)
from carnot.gradings import carnot_test

from conftest import (
    bch_associative, expand_bracket_word, seeded_rng,
)


def _rand_vec(rng, d, sparse=None):
    if sparse is None:
        return [QQ(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(d)]
    v = [QQ(0)] * d
    for i in rng.sample(range(d), sparse):
        v[i] = QQ(rng.randint(-3, 3), rng.randint(1, 3))
    return v


# ---------------------------------------------------------------------------
# BCH coefficients against the free-associative oracle.


def test_bch_table_matches_associative_log():
    # expanding every bracket word associatively must reproduce
    # log(exp x exp y) exactly, degree by degree
    for cap in (2, 3, 4, 5):
        table = bch_coefficients(cap)
        got = {}
        for word, c in table.items():
            for w, x in expand_bracket_word(word).items():
                got[w] = got.get(w, QQ(0)) + c * x
        got = {w: c for w, c in got.items() if c != 0}
        assert got == bch_associative(cap), f"cap {cap}"


def test_low_degree_bch_coefficients_pinned():
    # independent oracle: associative-word coefficients of log(exp x exp y)
    z = bch_associative(3)
    assert z[(0,)] == 1 and z[(1,)] == 1
    assert z[(0, 1)] == QQ(1, 2) and z[(1, 0)] == QQ(-1, 2)
    assert z[(0, 0, 1)] == QQ(1, 12) and z[(1, 1, 0)] == QQ(1, 12)
    assert z[(0, 1, 0)] == QQ(-1, 6) and z[(1, 0, 1)] == QQ(-1, 6)


def test_bch_class2_and_class3_on_free_nilpotent():
    # free class-3 algebra on X1, X2: product coordinates are the BCH
    # coefficients on the Hall basis [X1,X2], [X1,[X1,X2]], [X2,[X1,X2]]
    a = get("freenil23")
    g = NilGroup.from_algebra(a)
    z = g.multiply(a.basis_vector(0), a.basis_vector(1))
    assert z == [QQ(1), QQ(1), QQ(1, 2), QQ(1, 12), QQ(-1, 12)]


def test_heisenberg_product_and_commutator():
    g = NilGroup.from_algebra(get("heisenberg3"))
    x, y = [1, 0, 0], [0, 1, 0]
    assert g.multiply(x, y) == [QQ(1), QQ(1), QQ(1, 2)]
    assert g.multiply(y, x) == [QQ(1), QQ(1), QQ(-1, 2)]
    # group commutator x y x^-1 y^-1 = exp([X1, X2])
    c = g.multiply(g.multiply(x, y),
                   g.multiply(g.inverse(x), g.inverse(y)))
    assert c == [QQ(0), QQ(0), QQ(1)]


def test_identity_inverse_power_laws():
    rng = seeded_rng("bch-laws")
    for n in ("heisenberg3", "l56", "g7102", "freenil23"):
        a = get(n)
        g = NilGroup.from_algebra(a)
        e = [QQ(0)] * a.dim
        for _ in range(20):
            x = _rand_vec(rng, a.dim)
            assert g.multiply(x, e) == x and g.multiply(e, x) == x
            assert g.multiply(x, g.inverse(x)) == e
            assert g.multiply(g.inverse(x), x) == e
            # power law: x^m computed by repeated products equals m x
            acc = e
            for _ in range(4):
                acc = g.multiply(acc, x)
            assert acc == g.power(x, 4)


def test_associativity_random_triples():
    rng = seeded_rng("bch-assoc-module")
    for n in ("heisenberg3", "l55", "l56", "g7102"):
        a = get(n)
        g = NilGroup.from_algebra(a)
        for _ in range(25):
            x, y, z = (_rand_vec(rng, a.dim) for _ in range(3))
            assert g.multiply(g.multiply(x, y), z) == \
                g.multiply(x, g.multiply(y, z)), n


def test_class_cap_enforced():
    with pytest.raises(ClassTooLargeError):
        NilGroup.from_algebra(get("h12"))           # class 11 > default cap
    g = NilGroup.from_algebra(get("h12"), class_cap=11)
    assert g.nclass == 11


# ---------------------------------------------------------------------------
# Dilations.


def test_dilation_is_automorphism_and_graded_scalar():
    a = get("heisenberg3")
    g = NilGroup.from_algebra(a)
    gr = carnot_test(a).grading
    d3 = dilation(g, gr, 3)
    assert mat_vec(d3, [1, 0, 0]) == [QQ(3), QQ(0), QQ(0)]
    assert mat_vec(d3, [0, 0, 1]) == [QQ(0), QQ(0), QQ(9)]
    # multiplicativity on group elements (automorphism of the group law)
    rng = seeded_rng("dilation")
    for _ in range(10):
        x, y = _rand_vec(rng, 3), _rand_vec(rng, 3)
        assert mat_vec(d3, g.multiply(x, y)) == \
            g.multiply(mat_vec(d3, x), mat_vec(d3, y))


def test_dilation_rejects_negative_grading():
    from carnot.gradings import cartan_grading
    a = get("g12")
    g = NilGroup.from_algebra(a)
    _, gr = cartan_grading(a, seed=0)       # has negative weights
    with pytest.raises(BadGradingError):
        dilation(g, gr, 2)


# ---------------------------------------------------------------------------
# Lattice subgroups, uppersys family, defendo modulus.


def test_uppersys_lattice_is_closed_and_index_law():
    for name in ("heisenberg3", "l55", "l56"):
        a = get(name)
        g = NilGroup.from_algebra(a)
        series = lower_series(a)
        c = len(series) - 1
        dim_ab = a.dim - series[1].dim
        big_d = dim_ab + c * series[1].dim
        for n in (2, 3):
            lat_n, base = uppersys_family(g, n)
            assert lat_n.verified
            lat_1, _ = uppersys_family(g, 1, k_divisor=base)
            assert lattice_index(lat_1.log_lattice, lat_n.log_lattice) == \
                n ** big_d, (name, n)


def test_lattice_verify_rejects_open_set():
    g = NilGroup.from_algebra(get("heisenberg3"))
    # Z^3 is not closed under the Heisenberg BCH law at odd products?
    # It is closed (1/2 * integer products of integer brackets can leave);
    # use a genuinely open lattice: spacing 1 in x, y and 3 in z
    lat = LatticeSubgroup(g, hnf_lattice(
        [[QQ(1), QQ(0), QQ(0)], [QQ(0), QQ(1), QQ(0)],
         [QQ(0), QQ(0), QQ(3)]]))
    assert not lat.verify()


def test_growth_degree_fixtures():
    assert growth_degree(get("heisenberg3")) == 4
    assert growth_degree(get("l55")) == 8
    assert growth_degree(get("l56")) == 11
    assert growth_degree(get("l57")) == 11
    assert growth_degree(Algebra.from_brackets(3, {})) == 3


def test_defendo_modulus_heisenberg():
    a = get("heisenberg3")
    g = NilGroup.from_algebra(a)
    gr = carnot_test(a).grading
    lat, _ = uppersys_family(g, 1)
    k0, cert = defendo_modulus(g, gr, lat)
    assert cert["images_in_lattice"]
    assert cert["m"] == k0 + 1
    # the dilation by 2 k0 + 1 also maps the lattice into itself
    d = dilation(g, gr, 2 * k0 + 1)
    assert all(lat.log_lattice.contains(mat_vec(d, b))
               for b in lat.log_lattice.basis())
    # and the index is m^delta with delta the growth degree
    for m in (k0 + 1, 2 * k0 + 1):
        dm = dilation(g, gr, m)
        img = lat.log_lattice.apply(dm)
        assert lattice_index(lat.log_lattice, img) == m ** 4


# ---------------------------------------------------------------------------
# Guivarc'h length and systoles.


def test_guivarch_length_exact_comparisons():
    a = GuivarchLength(QQ(2), 1)        # 2
    b = GuivarchLength(QQ(5), 2)        # sqrt(5) ~ 2.236
    c = GuivarchLength(QQ(4), 2)        # 2
    assert a < b and a == c and not (b <= a)
    assert a.scale(3) == GuivarchLength(QQ(6), 1)
    assert b.scale(2) == GuivarchLength(QQ(20), 2)
    assert float(b) == pytest.approx(5 ** 0.5)


def test_guivarch_length_heisenberg():
    a = get("heisenberg3")
    g = NilGroup.from_algebra(a)
    gr = carnot_test(a).grading
    assert guivarch_length(g, gr, [3, -2, 0]) == GuivarchLength(QQ(3), 1)
    assert guivarch_length(g, gr, [0, 0, 9]) == GuivarchLength(QQ(9), 2)
    # degree-2 coordinate dominates only beyond the square
    assert guivarch_length(g, gr, [2, 0, 9]) == GuivarchLength(QQ(9), 2)
    assert guivarch_length(g, gr, [4, 0, 9]) == GuivarchLength(QQ(4), 1)


def test_systole_estimate_heisenberg_unit():
    a = get("heisenberg3")
    g = NilGroup.from_algebra(a)
    gr = carnot_test(a).grading
    lat, _ = uppersys_family(g, 1)
    s, wit = systole_estimate(g, gr, lat, 2)
    # shortest element is the derived generator (0, 0, 1/4)
    assert s == GuivarchLength(QQ(1, 4), 2)
    assert wit is not None and guivarch_length(g, gr, wit) == s


def test_systole_budget_error():
    a = get("heisenberg3")
    g = NilGroup.from_algebra(a)
    gr = carnot_test(a).grading
    lat, _ = uppersys_family(g, 1)
    with pytest.raises(BoxBudgetError):
        systole_estimate(g, gr, lat, 40, budget=100)


def test_systolic_experiment_scaling_and_slope():
    a = get("heisenberg3")
    g = NilGroup.from_algebra(a)
    gr = carnot_test(a).grading
    lat, _ = uppersys_family(g, 1)
    exp = systolic_experiment(g, gr, lat, [2, 3, 4, 5, 6])
    # dilation indices are m^4 exactly
    for row in exp["rows"]:
        assert row["index"] == row["m"] ** 4
    assert abs(exp["slope"] - 4.0) < 1e-9
    assert "quasi-isometry" in exp["caveat"]
