"""Radicals cni / cni+, the cohopfian classification of lattices in a
nilpotent Lie group, and the lattice-endomorphism toolkit (lattice
stabilization criteria, absolute grading, iterated-image intersections)."""

from __future__ import annotations

from dataclasses import dataclass, field

import sympy

from .algebra import (
    NotLieError, NotNilpotentError, largest_invariant_subideal, lower_series,
)
from .cones import is_positive_weight_lineality
from .deriv import PROVEN, derivations, maximal_split_torus
from .exactlin import (
    QQ, SingularMatrixError, Subspace, ZLattice, det, hnf_lattice,
    lattice_intersect_subspace, mat_vec, minimal_polynomial, char_poly,
    poly_eval_matrix, mat_mul, identity, kernel,
)
from .gradings import cartan_grading, cone_flags, contractive_decomposition

__all__ = [
    "CohopfReport", "AbsoluteGrading", "DoesNotStabilizeError",
    "PrecisionExhaustedError", "ExactnessUnknownError", "cni_plus", "cni",
    "classify", "stabilizes_some_lattice", "preserves_some_lattice",
    "lattice_saturation_oracle", "absolute_grading", "intersection_lattice",
]


class DoesNotStabilizeError(ValueError):
    pass


class PrecisionExhaustedError(RuntimeError):
    pass


class ExactnessUnknownError(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# Radicals.


def cni_plus(a, seed=0):
    """The largest characteristic bilateral ideal contained in g_[0], the
    uncontracted part of the contractive decomposition of the Cartan
    grading.  Exact for Lie algebras (invariant under extension of
    scalars); for other kinds the same computation is returned with a
    heuristic caveat by `classify`."""
    _, gr = cartan_grading(a, seed=seed)
    cd = contractive_decomposition(gr)
    return largest_invariant_subideal(a, cd.zero_part, derivations(a))


def cni(a, seed=0):
    """The largest characteristic ideal inside the zero-weight space of the
    computed maximal split torus.

    This equals the intersection of kernels of all semisimple derivations
    when the torus is split-maximal over the algebraic closure; over Q it is
    an upper bound whenever anisotropic semisimple derivations exist, which
    the accompanying report flags as a caveat.
    """
    if a.kind != "lie":
        raise NotLieError("cni is defined for Lie algebras")
    torus, gr = cartan_grading(a, seed=seed)
    zero = gr.component((0,) * torus.rank)
    return largest_invariant_subideal(a, zero, derivations(a))


@dataclass
class CohopfReport:
    semicontractable: bool
    contractable: bool
    essentially_contractable: bool
    uncontracted_dim: int
    cni_plus: Subspace
    cni: Subspace
    flags: dict                 # cohopfian / non-cohopfian / dis-cohopfian /
                                # weakly-dis-cohopfian
    classification: str
    certificate_level: str
    min_intersection_hirsch_length: int
    cni_caveat: str = ""

    def __post_init__(self):
        f = self.flags
        if f["dis-cohopfian"]:
            assert f["weakly-dis-cohopfian"]
        if f["weakly-dis-cohopfian"]:
            assert f["non-cohopfian"]
        if self.contractable:
            assert self.uncontracted_dim == 0
        assert self.cni <= self.cni_plus


def classify(a, seed=0):
    """Cohopfian classification of the lattices of the corresponding
    simply connected nilpotent Lie group.

    Rests on the contractive data of the Cartan grading: the lattices are
    non-cohopfian iff g is semicontractable, dis-cohopfian iff g is
    contractable, weakly dis-cohopfian iff cni+(g) = 0.  The uncontracted
    dimension is the smallest Hirsch length of an iterated-image
    intersection over all injective endomorphisms.
    """
    if a.kind != "lie":
        raise NotLieError("classification requires a Lie algebra")
    lower_series(a)             # raises NotNilpotentError when appropriate
    torus, gr = cartan_grading(a, seed=seed)
    flags = cone_flags(gr)
    cd = contractive_decomposition(gr)
    cp = largest_invariant_subideal(a, cd.zero_part, derivations(a))
    zero_wt = gr.component((0,) * torus.rank)
    cn = largest_invariant_subideal(a, zero_wt, derivations(a))
    assert cn <= cp
    semicontractable = flags["semicontractable"]
    contractable = flags["contractable"]
    ess_contr = cp.dim == 0
    out_flags = {
        "cohopfian": not semicontractable,
        "non-cohopfian": semicontractable,
        "dis-cohopfian": contractable,
        "weakly-dis-cohopfian": ess_contr and a.dim > 0,
    }
    if contractable:
        label = "dis-cohopfian"
    elif out_flags["weakly-dis-cohopfian"]:
        label = "weakly-dis-cohopfian"
    elif semicontractable:
        label = "non-cohopfian"
    else:
        label = "cohopfian"
    caveat = ""
    if torus.certificate != PROVEN:
        caveat = ("torus maximality is heuristic; cni/cni+ may be "
                  "overestimates")
    elif cn.dim > 0:
        caveat = ("cni computed from the Q-split torus; anisotropic "
                  "semisimple derivations, if any, could shrink it")
    return CohopfReport(
        semicontractable=semicontractable,
        contractable=contractable,
        essentially_contractable=ess_contr,
        uncontracted_dim=cd.uncontracted_dim,
        cni_plus=cp,
        cni=cn,
        flags=out_flags,
        classification=label,
        certificate_level=torus.certificate,
        min_intersection_hirsch_length=cd.uncontracted_dim,
        cni_caveat=caveat,
    )


# ---------------------------------------------------------------------------
# Lattice stabilization criteria for a rational matrix.


def _minpoly_integral(xi):
    p = minimal_polynomial(xi)
    return all(QQ(c).denominator == 1 for c in p)


def stabilizes_some_lattice(xi):
    """Does xi map some full lattice into itself?

    Holds iff the minimal polynomial has integer coefficients (the matrix
    is then integral on the Z[xi]-module generated by any basis).
    """
    if det(xi) == 0:
        raise SingularMatrixError("criterion stated for invertible matrices")
    return _minpoly_integral(xi)


def preserves_some_lattice(xi):
    """Does xi map some full lattice onto itself?

    Needs xi and its inverse integral on the same module: minimal
    polynomial in Z[X] with constant term +-1.
    """
    if det(xi) == 0:
        raise SingularMatrixError("criterion stated for invertible matrices")
    p = minimal_polynomial(xi)
    if any(QQ(c).denominator != 1 for c in p):
        return False
    return abs(QQ(p[0])) == 1


def lattice_saturation_oracle(xi, max_iter=50, scale_cap=10 ** 40):
    """Independent oracle: saturate Z^d under xi to an HNF fixpoint.

    Returns True when the module M = Z-span{xi^i e_j} stabilizes within the
    iteration cap, False when the denominators keep growing (or the cap is
    hit).  Used to cross-check `stabilizes_some_lattice`.
    """
    d = len(xi)
    lat = hnf_lattice(identity(d))
    for _ in range(max_iter):
        img = lat.apply(xi)
        nxt = lat.add(img)
        if nxt == lat:
            return True
        if nxt.scale > scale_cap:
            return False
        lat = nxt
    return False


# ---------------------------------------------------------------------------
# Absolute grading of a rational matrix: group generalized eigenspaces by
# the modulus class of their eigenvalues relative to 1.


@dataclass
class AbsoluteGrading:
    xi: list
    components: list            # (factor coeffs low->high, multiplicity,
                                # modulus_class, Subspace)
    zero_part: Subspace         # sum of certified modulus-1 eigenspaces
    exact: bool                 # False when a factor mixes moduli across 1


def _factor_modulus_class(coeffs, precision_budget=4):
    """Classify the root moduli of an irreducible monic integer polynomial
    relative to 1: 'eq1', 'lt1', 'gt1' or 'mixed'.

    Roots on the unit circle are counted exactly: they occur only for
    self-reciprocal factors, where the substitution t = x + 1/x reduces the
    count to real roots of a half-degree polynomial in (-2, 2) (Sturm).
    Off-circle roots are separated from 1 by interval arithmetic with a
    doubling precision budget (they are certified off-circle, so the
    separation terminates).
    """
    x = sympy.Symbol("x")
    p = sympy.Poly(list(reversed([sympy.Rational(str(c)) for c in coeffs])),
                   x)
    n = p.degree()
    if n == 1:
        r = sympy.Rational(-p.all_coeffs()[1], p.all_coeffs()[0])
        if abs(r) == 1:
            return "eq1", n
        return ("lt1", 0) if abs(r) < 1 else ("gt1", 0)
    # self-reciprocal test: x^n p(1/x) == +- p(x)
    rev = sympy.Poly(list(reversed(p.all_coeffs())), x)
    monic = p.monic()
    circle = 0
    if rev.monic() == monic or (-rev).monic() == monic:
        # x^m q(x + 1/x) form exists for even degree
        if n % 2 == 0:
            t = sympy.Symbol("t")
            q = _to_chebyshev_like(p, n)
            circle = 2 * sympy.polys.polytools.count_roots(
                sympy.Poly(q, t), -2, 2)
            # exclude endpoint roots (t = +-2 <-> x = +-1, excluded since
            # irreducible of degree > 1 cannot vanish at +-1)
        else:
            circle = 0
    if circle == n:
        return "eq1", circle
    # off-circle moduli via adaptive-precision numeric roots
    import mpmath
    prec = 50
    for _ in range(precision_budget):
        mpmath.mp.dps = prec
        try:
            roots = mpmath.polyroots(
                [mpmath.mpf(c.p) / mpmath.mpf(c.q)
                 for c in map(sympy.Rational, p.all_coeffs())],
                maxsteps=200, extraprec=prec)
        except mpmath.libmp.NoConvergence:
            prec *= 2
            continue
        lt = gt = amb = 0
        for r in roots:
            m = abs(r)
            err = mpmath.mpf(10) ** (-(prec // 2))
            if m < 1 - err:
                lt += 1
            elif m > 1 + err:
                gt += 1
            else:
                amb += 1
        if amb <= circle:
            if circle:
                return ("mixed", circle) if (lt or gt) else ("eq1", circle)
            if lt and gt:
                return "mixed", 0
            return ("lt1", 0) if lt else ("gt1", 0)
        prec *= 2
    raise PrecisionExhaustedError(
        "could not separate root moduli from 1 within the precision budget")


def _to_chebyshev_like(p, n):
    """For a self-reciprocal p of even degree n, the polynomial q with
    p(x) = x^(n/2) q(x + 1/x)."""
    x = sympy.Symbol("x")
    t = sympy.Symbol("t")
    m = n // 2
    coeffs = p.all_coeffs()          # high -> low
    # work with the symmetric Laurent expression sum a_k (x^k + x^-k)
    expr = sympy.expand(p.as_expr() / x ** m)
    # z_k = x^k + x^-k satisfies z_k = t z_{k-1} - z_{k-2}
    z = [sympy.Integer(2), t]
    for k in range(2, m + 1):
        z.append(sympy.expand(t * z[-1] - z[-2]))
    out = sympy.Integer(0)
    a = [coeffs[i] for i in range(n + 1)]   # a[0] x^n ... a[n] x^0
    for k in range(m + 1):
        c = a[m - k]                        # coefficient of x^k in p / x^m
        if k == 0:
            out += c * sympy.Rational(1)
        else:
            out += c * z[k]
    # constant adjusted: x^0 term contributes once, z_0 = 2 was not used
    return sympy.expand(out)


def absolute_grading(xi, precision_budget=4):
    """Group the generalized eigenspaces of xi by root-modulus class of the
    irreducible factors of its characteristic polynomial."""
    d = len(xi)
    cp = char_poly(xi)
    x = sympy.Symbol("x")
    poly = sympy.Poly(list(reversed([sympy.Rational(str(c)) for c in cp])), x)
    comps = []
    zero = Subspace.zero(d)
    exact = True
    for fac, mult in poly.factor_list()[1]:
        fc = [QQ(str(c)) for c in reversed(fac.monic().all_coeffs())]
        cls, circle = _factor_modulus_class(fc, precision_budget)
        powm = poly_eval_matrix(fc, xi)
        gen = powm
        for _ in range(mult - 1):
            gen = mat_mul(gen, powm)
        sub = Subspace(d, kernel(gen))
        comps.append((fc, mult, cls, sub))
        if cls == "eq1":
            zero = zero.add(sub)
        elif cls == "mixed" and circle:
            exact = False
    return AbsoluteGrading(xi, comps, zero, exact)


def intersection_lattice(xi, lat, precision_budget=4):
    """The intersection of the iterated images xi^n(lat), n >= 0: equals
    lat intersected with the modulus-1 part of the absolute grading."""
    for b in lat.basis():
        if not lat.contains(mat_vec(xi, b)):
            raise DoesNotStabilizeError("xi does not stabilize the lattice")
    ag = absolute_grading(xi, precision_budget)
    if not ag.exact:
        raise ExactnessUnknownError(
            "modulus-1 part is not a rational subspace (mixed-modulus factor)")
    return lattice_intersect_subspace(lat, ag.zero_part)
