"""Gradings as first-class objects: the associated Carnot-graded algebra,
the Carnot decision procedure, cone flags and contractive decompositions."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .algebra import (
    Algebra, NotNilpotentError, base_change, lower_series, product_subspace,
)
from .cones import (
    is_positive_weight_lineality, nonneg_integer_functional, fm_solve,
)
from .deriv import maximal_split_torus, weight_decomposition
from .exactlin import (
    QQ, Subspace, identity, kernel, mat_mul, mat_vec, sparse_solve_affine,
    transpose, try_solve_affine,
)

__all__ = [
    "Grading", "ContractiveDecomposition", "CarnotResult", "BadComplementError",
    "NotAutomorphismError", "NotCarnotError", "grading_from_torus", "car",
    "carnot_test", "carnot_with_prescribed_v1", "invariant_carnot",
    "cone_flags", "fine_cocharacter", "contractive_decomposition",
    "fine_nonneg_grading", "cartan_grading",
]


class BadComplementError(ValueError):
    pass


class NotAutomorphismError(ValueError):
    pass


class NotCarnotError(ValueError):
    pass


@dataclass
class Grading:
    """Grading of an algebra by Z^rank: weight tuple -> component subspace.

    Components direct-sum to the whole space, satisfy g_a g_b <= g_{a+b}
    exactly, and no zero-dimensional components are stored.
    """
    algebra: Algebra
    rank: int
    components: dict
    _flags: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.components = {tuple(w): s for w, s in self.components.items()
                           if s.dim > 0}
        self.check()

    def check(self):
        a = self.algebra
        total = 0
        span = Subspace.zero(a.dim)
        for w, s in self.components.items():
            assert len(w) == self.rank, "weight length differs from rank"
            total += s.dim
            span = span.add(s)
        assert total == a.dim and span.dim == a.dim, \
            "components do not direct-sum to the whole space"
        for wa, sa in self.components.items():
            for wb, sb in self.components.items():
                target = tuple(x + y for x, y in zip(wa, wb))
                prod = product_subspace(a, sa, sb)
                if prod.dim == 0:
                    continue
                tgt = self.components.get(target)
                assert tgt is not None and prod <= tgt, \
                    f"product of weights {wa},{wb} escapes component {target}"

    def weights(self):
        return sorted(self.components)

    def weight_multiset(self):
        """Each weight repeated by its component dimension (sorted)."""
        out = []
        for w in sorted(self.components):
            out.extend([w] * self.components[w].dim)
        return out

    def component(self, w):
        return self.components.get(tuple(w),
                                   Subspace.zero(self.algebra.dim))

    def _flag(self, name, compute):
        if name not in self._flags:
            self._flags[name] = compute()
        return self._flags[name]

    @property
    def is_nonnegative(self):
        return self._flag("nonneg", lambda: self.rank <= 1 and all(
            all(x >= 0 for x in w) for w in self.components))

    @property
    def is_positive(self):
        return self._flag("pos", lambda: self.rank <= 1 and all(
            all(x >= 1 for x in w) for w in self.components))

    @property
    def is_invertible(self):
        """No zero component (g_0 = 0)."""
        return self._flag("inv", lambda: all(
            any(x != 0 for x in w) for w in self.components))

    @property
    def is_carnot_grading(self):
        """N-grading generated by its degree-1 component."""
        def compute():
            if self.rank != 1 or not self.is_positive:
                return False
            a = self.algebra
            g1 = self.component((1,))
            gen = g1
            cur = g1
            while cur.dim > 0:
                cur = product_subspace(a, g1, cur)
                gen = gen.add(cur)
            return gen.dim == a.dim
        return self._flag("carnot", compute)


@dataclass
class ContractiveDecomposition:
    zero_part: Subspace        # sum of non-positive-weight components
    plus_part: Subspace        # sum of positive-weight components
    uncontracted_dim: int
    contracted_dim: int
    witness: list              # fine non-negative integer functional


@dataclass
class CarnotResult:
    is_carnot: bool
    witness: object = None     # derivation matrix inducing id on g/g^(2)
    grading: Grading = None
    certificate: str = ""


def grading_from_torus(torus):
    """Cartan grading: joint weight decomposition of a maximal split torus."""
    comp = {w: s for w, s in weight_decomposition(torus)}
    return Grading(torus.algebra, torus.rank, comp)


def cartan_grading(a, seed=0):
    torus = maximal_split_torus(a, seed=seed)
    return torus, grading_from_torus(torus)


# ---------------------------------------------------------------------------
# The associated Carnot-graded algebra.


def _layer_basis(series):
    """Adapted basis: for each i, the RREF basis vectors of g^(i) whose
    pivot is not a pivot of g^(i+1).  Returns (vectors, degrees)."""
    vecs, degs = [], []
    for i in range(len(series) - 1):
        nxt_pivots = set(series[i + 1].pivots)
        for row, p in zip(series[i].rows, series[i].pivots):
            if p not in nxt_pivots:
                vecs.append(list(row))
                degs.append(i + 1)
    return vecs, degs


def car(a):
    """The associated Carnot-graded algebra on sum_i g^(i)/g^(i+1).

    Returns (graded_algebra, grading); the grading is Carnot by
    construction.  Raises NotNilpotentError if a is not nilpotent.
    """
    series = lower_series(a)
    vecs, degs = _layer_basis(series)
    p = transpose(vecs)                       # columns = adapted basis
    b = base_change(a, p)
    d = a.dim
    sc = [[[QQ(0)] * d for _ in range(d)] for _ in range(d)]
    for i in range(d):
        for j in range(d):
            tdeg = degs[i] + degs[j]
            for k in range(d):
                if degs[k] == tdeg:
                    sc[i][j][k] = b.sc[i][j][k]
    graded = Algebra(d, tuple(tuple(tuple(r) for r in pl) for pl in sc),
                     a.kind, a.basis_names)
    comps = {}
    for deg in sorted(set(degs)):
        idx = [i for i, dg in enumerate(degs) if dg == deg]
        comps[(deg,)] = Subspace(d, [[QQ(1) if j == i else QQ(0)
                                      for j in range(d)] for i in idx])
    return graded, Grading(graded, 1, comps)


# ---------------------------------------------------------------------------
# The Carnot decision procedure: a nilpotent algebra is Carnot iff it has a
# derivation inducing the identity on g/g^(2); such a derivation satisfies
# (D-1)...(D-c) = 0, so its eigenspace decomposition is a Carnot grading.


def _leibniz_rows(a):
    from .deriv import _leibniz_rows as rows
    return rows(a)


def _identity_mod_rows(a, g2):
    """Affine rows forcing (D - I) e_j in g2, as (sparse_row, rhs) pairs in
    the d^2 unknowns D[p][q]."""
    d = a.dim
    ann = g2.annihilator()
    rows, rhs = [], []
    for j in range(d):
        for f in ann:
            row = {p * d + j: f[p] for p in range(d) if f[p] != 0}
            rows.append(row)
            rhs.append(f[j])
    return rows, rhs


def _solve_derivation_system(a, extra_rows=(), extra_rhs=()):
    """Solve {Leibniz, D = id mod g^(2)} plus extra affine constraints."""
    d = a.dim
    series = lower_series(a)
    g2 = series[1] if len(series) > 1 else Subspace.zero(d)
    rows = _leibniz_rows(a)
    rhs = [QQ(0)] * len(rows)
    r2, b2 = _identity_mod_rows(a, g2)
    rows += r2
    rhs += b2
    rows += list(extra_rows)
    rhs += list(extra_rhs)
    sol = sparse_solve_affine(rows, rhs, d * d)
    if sol is None:
        return None
    part, _ = sol
    return [part[p * d:(p + 1) * d] for p in range(d)]


def _eigenspace_grading(a, dmat, nclass):
    comps = {}
    d = a.dim
    for lam in range(1, nclass + 1):
        shifted = [[dmat[i][j] - (lam if i == j else 0) for j in range(d)]
                   for i in range(d)]
        vecs = kernel(shifted)
        if vecs:
            comps[(lam,)] = Subspace(d, vecs)
    return Grading(a, 1, comps)


def carnot_test(a):
    """Decide whether a admits a Carnot grading (char-0 criterion).

    Yes-answers carry the witness derivation and the eigenspace grading,
    which is re-certified (degree-1 component generates).  No-answers carry
    the inconsistent-system certificate.
    """
    series = lower_series(a)
    nclass = len(series) - 1
    dmat = _solve_derivation_system(a)
    if dmat is None:
        return CarnotResult(False, certificate=(
            "the affine system {Leibniz; D = id on g/g^(2)} is inconsistent"))
    gr = _eigenspace_grading(a, dmat, max(nclass, 1))
    assert gr.is_carnot_grading, "witness eigenspace grading not Carnot"
    return CarnotResult(True, witness=dmat, grading=gr)


def carnot_with_prescribed_v1(a, v):
    """Is there a Carnot grading whose degree-1 part is the subspace v?

    v must be a complement of g^(2); adds the constraint D = id on v to the
    derivation system.
    """
    d = a.dim
    series = lower_series(a)
    g2 = series[1] if len(series) > 1 else Subspace.zero(d)
    if v.dim + g2.dim != d or v.add(g2).dim != d:
        raise BadComplementError("v is not a complement of g^(2)")
    rows, rhs = [], []
    for x in v.basis():
        for p in range(d):
            row = {p * d + q: x[q] for q in range(d) if x[q] != 0}
            rows.append(row)
            rhs.append(x[p])
    dmat = _solve_derivation_system(a, rows, rhs)
    if dmat is None:
        return CarnotResult(False, certificate=(
            "no derivation is the identity on v and on g/g^(2)"))
    gr = _eigenspace_grading(a, dmat, len(series) - 1)
    assert gr.is_carnot_grading and v <= gr.component((1,))
    return CarnotResult(True, witness=dmat, grading=gr)


def _is_automorphism(a, s):
    d = a.dim
    cols = [[s[i][j] for i in range(d)] for j in range(d)]
    for i in range(d):
        for j in range(d):
            lhs = a.product(cols[i], cols[j])
            rhs = mat_vec(s, a.product(a.basis_vector(i), a.basis_vector(j)))
            if lhs != rhs:
                return False
    return True


def invariant_carnot(a, autos):
    """A Carnot grading whose components are stable under the given finite
    set of automorphisms, or None if a is Carnot but no invariant witness
    exists (cannot happen for a finite group: the averaged witness works).

    Raises NotAutomorphismError / NotCarnotError on bad input.
    """
    d = a.dim
    for s in autos:
        if not _is_automorphism(a, s):
            raise NotAutomorphismError("matrix is not an automorphism")
    if not carnot_test(a).is_carnot:
        raise NotCarnotError("algebra is not Carnot")
    rows, rhs = [], []
    for s in autos:
        # s D - D s = 0: entry (p,q): sum_m s[p][m] D[m][q] - D[p][m] s[m][q]
        for p in range(d):
            for q in range(d):
                row = {}
                for m in range(d):
                    if s[p][m] != 0:
                        key = m * d + q
                        row[key] = row.get(key, QQ(0)) + s[p][m]
                    if s[m][q] != 0:
                        key = p * d + m
                        row[key] = row.get(key, QQ(0)) - s[m][q]
                row = {k: v for k, v in row.items() if v != 0}
                if row:
                    rows.append(row)
                    rhs.append(QQ(0))
    dmat = _solve_derivation_system(a, rows, rhs)
    if dmat is None:
        return None
    gr = _eigenspace_grading(a, dmat, len(lower_series(a)) - 1)
    assert gr.is_carnot_grading
    for s in autos:
        for w, sub in gr.components.items():
            assert sub.apply(s) <= sub, "component not stable under S"
    return gr


# ---------------------------------------------------------------------------
# Cone analysis of torus-induced gradings.


def _principal_weights(gr):
    """Weights of the induced grading on g/g^(2)."""
    series = lower_series(gr.algebra)
    g2 = series[1] if len(series) > 1 else Subspace.zero(gr.algebra.dim)
    out = []
    for w, s in gr.components.items():
        if s.add(g2).dim > g2.dim:
            out.append(w)
    return sorted(out)


def cone_flags(gr):
    """Polyhedral flags of a torus-induced grading's weight set."""
    ws = gr.weights()
    pos = {w: is_positive_weight_lineality(ws, w) for w in ws}
    contractable = bool(ws) and all(pos.values())
    semicontractable = any(pos.values())
    flexible_split = gr.is_invertible
    principal = _principal_weights(gr)
    carnot_by_weights = False
    if principal and gr.rank >= 1:
        sol = try_solve_affine(
            [list(map(QQ, w)) for w in principal],
            [QQ(1)] * len(principal))
        carnot_by_weights = sol is not None
    return {
        "contractable": contractable,
        "semicontractable": semicontractable,
        "flexible_split": flexible_split,
        "carnot_possible_by_weights": carnot_by_weights,
    }


def fine_cocharacter(gr):
    """Integer functional non-negative on all weights and positive exactly
    on the positive ones (sum of per-weight supporting functionals)."""
    ws = gr.weights()
    return nonneg_integer_functional(ws) if ws else []


def contractive_decomposition(gr):
    """Split off the non-positive-weight part g_[0] from the positive part
    g_[+]; g_[0] is a subalgebra and g_[+] a bilateral ideal."""
    a = gr.algebra
    ws = gr.weights()
    f = fine_cocharacter(gr)
    zero = Subspace.zero(a.dim)
    plus = Subspace.zero(a.dim)
    for w, s in gr.components.items():
        if is_positive_weight_lineality(ws, w):
            plus = plus.add(s)
        else:
            zero = zero.add(s)
    assert zero.dim + plus.dim == a.dim
    assert product_subspace(a, zero, zero) <= zero, "g_[0] not a subalgebra"
    full = Subspace.full(a.dim)
    assert product_subspace(a, full, plus) <= plus
    assert product_subspace(a, plus, full) <= plus, "g_[+] not an ideal"
    return ContractiveDecomposition(zero, plus, zero.dim, plus.dim, f)


def fine_nonneg_grading(a, seed=0):
    """N-grading whose zero component is the g_[0] of a contractive
    decomposition (the Cartan grading pushed through a fine cocharacter)."""
    torus, gr = cartan_grading(a, seed=seed)
    f = fine_cocharacter(gr)
    comps = {}
    for w, s in gr.components.items():
        n = sum(c * x for c, x in zip(f, w)) if f else 0
        key = (int(n),)
        comps[key] = comps.get(key, Subspace.zero(a.dim)).add(s)
    return Grading(a, 1, comps)
