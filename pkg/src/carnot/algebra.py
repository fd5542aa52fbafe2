"""Finite-dimensional algebras over Q given by structure constants.

An algebra is a dense tensor c[i][j][k] meaning e_i * e_j = sum_k c_ijk e_k,
with kind 'lie' (bracket, validated antisymmetric + Jacobi) or 'general'
(no axioms beyond bilinearity).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .exactlin import (
    QQ, Subspace, identity, kernel, mat_inverse, mat_mul, mat_vec,
)

__all__ = [
    "Algebra", "ValidationReport", "NotLieError", "NotNilpotentError",
    "validate", "product_subspace", "lower_series", "center", "is_ideal",
    "largest_invariant_subideal", "base_change", "direct_product",
    "nilpotency_class",
]


class NotLieError(ValueError):
    pass


class NotNilpotentError(ValueError):
    pass


@dataclass(frozen=True)
class Algebra:
    dim: int
    sc: tuple          # sc[i][j][k] : e_i e_j = sum_k sc[i][j][k] e_k
    kind: str = "lie"
    basis_names: tuple = ()

    @classmethod
    def from_brackets(cls, dim, entries, kind="lie", names=None):
        """Build from sparse entries {(i,j,k): value} (0-based).

        For kind='lie' only one orientation per pair is needed; the
        antisymmetric counterpart is filled in automatically.
        """
        c = [[[QQ(0)] * dim for _ in range(dim)] for _ in range(dim)]
        for (i, j, k), v in entries.items():
            c[i][j][k] = c[i][j][k] + QQ(v)
        if kind == "lie":
            for i in range(dim):
                for j in range(i):
                    for k in range(dim):
                        if c[i][j][k] == 0 and c[j][i][k] != 0:
                            c[i][j][k] = -c[j][i][k]
                        elif c[j][i][k] == 0 and c[i][j][k] != 0:
                            c[j][i][k] = -c[i][j][k]
        sc = tuple(tuple(tuple(row) for row in plane) for plane in c)
        if names is None:
            names = tuple(f"e{i+1}" for i in range(dim))
        return cls(dim, sc, kind, tuple(names))

    def product(self, u, v):
        """u * v for coefficient vectors u, v."""
        d = self.dim
        out = [QQ(0)] * d
        for i in range(d):
            ui = u[i]
            if ui == 0:
                continue
            plane = self.sc[i]
            for j in range(d):
                vj = v[j]
                if vj == 0:
                    continue
                cij = plane[j]
                f = ui * vj
                for k in range(d):
                    if cij[k]:
                        out[k] += f * cij[k]
        return out

    bracket = product

    def left_mult(self, i):
        """Matrix of x -> e_i * x."""
        d = self.dim
        return [[self.sc[i][j][k] for j in range(d)] for k in range(d)]

    def right_mult(self, i):
        """Matrix of x -> x * e_i."""
        d = self.dim
        return [[self.sc[j][i][k] for j in range(d)] for k in range(d)]

    def basis_vector(self, i):
        v = [QQ(0)] * self.dim
        v[i] = QQ(1)
        return v

    def __repr__(self):
        return f"Algebra(dim={self.dim}, kind={self.kind!r})"


@dataclass
class ValidationReport:
    ok: bool
    violations: list = field(default_factory=list)


def validate(a):
    """Check the axioms of a.kind; violations carry a witness triple."""
    violations = []
    d = a.dim
    if a.kind == "lie":
        for i in range(d):
            for j in range(i + 1):
                for k in range(d):
                    if a.sc[i][j][k] != -a.sc[j][i][k]:
                        violations.append(("antisymmetry", (i, j, k)))
        for i in range(d):
            for j in range(i + 1, d):
                for k in range(j + 1, d):
                    ei, ej, ek = (a.basis_vector(t) for t in (i, j, k))
                    s = a.product(ei, a.product(ej, ek))
                    s2 = a.product(ej, a.product(ek, ei))
                    s3 = a.product(ek, a.product(ei, ej))
                    if any(x + y + z != 0 for x, y, z in zip(s, s2, s3)):
                        violations.append(("jacobi", (i, j, k)))
    elif a.kind != "general":
        violations.append(("unknown-kind", a.kind))
    return ValidationReport(not violations, violations)


def product_subspace(a, u, w):
    """Span of {x*y : x in u, y in w} (plus w*u is NOT included)."""
    vecs = []
    for x in u.basis():
        for y in w.basis():
            vecs.append(a.product(x, y))
    return Subspace(a.dim, vecs)


def lower_series(a):
    """Descending series g^(1) = g, g^(k) = sum_{i+j=k} g^(i) g^(j).

    Returns the list of subspaces down to (and including) the first zero
    term when the algebra is nilpotent; raises NotNilpotentError otherwise.
    """
    full = Subspace.full(a.dim)
    terms = [full]
    while terms[-1].dim > 0:
        k = len(terms) + 1
        nxt = Subspace.zero(a.dim)
        for i in range(1, k):
            j = k - i
            if i <= len(terms) and j <= len(terms):
                nxt = nxt.add(product_subspace(a, terms[i - 1], terms[j - 1]))
        if nxt.dim >= terms[-1].dim and nxt.dim > 0:
            raise NotNilpotentError("lower series stabilizes at a nonzero term")
        terms.append(nxt)
    return terms


def nilpotency_class(a):
    return len(lower_series(a)) - 1


def center(a):
    """Two-sided annihilator {x : x*g = g*x = 0}."""
    rows = []
    for i in range(a.dim):
        rows.extend(a.left_mult(i))
        rows.extend(a.right_mult(i))
    return Subspace(a.dim, kernel(rows))


def is_ideal(a, u):
    """Is u a two-sided ideal (g*u and u*g inside u)?"""
    full = Subspace.full(a.dim)
    return (product_subspace(a, full, u) <= u
            and product_subspace(a, u, full) <= u)


def largest_invariant_subideal(a, u, operators=()):
    """Largest two-sided ideal of a contained in u and invariant under the
    given matrices (descending fixpoint of preimage intersections)."""
    ops = [a.left_mult(i) for i in range(a.dim)]
    ops += [a.right_mult(i) for i in range(a.dim)]
    ops += [op for op in operators]
    w = u
    while True:
        nxt = w
        for op in ops:
            if nxt.dim == 0:
                break
            nxt = nxt.intersect(nxt.preimage(op))
        if nxt == w:
            return w
        w = nxt


def base_change(a, p):
    """Algebra in the new basis whose j-th vector is column j of p."""
    pinv = mat_inverse(p)
    d = a.dim
    cols = [[p[i][j] for i in range(d)] for j in range(d)]
    sc = []
    for i in range(d):
        plane = []
        for j in range(d):
            prod = a.product(cols[i], cols[j])
            plane.append(tuple(mat_vec(pinv, prod)))
        sc.append(tuple(plane))
    return Algebra(d, tuple(sc), a.kind, a.basis_names)


def direct_product(a, b):
    d = a.dim + b.dim
    c = [[[QQ(0)] * d for _ in range(d)] for _ in range(d)]
    for i in range(a.dim):
        for j in range(a.dim):
            for k in range(a.dim):
                c[i][j][k] = a.sc[i][j][k]
    for i in range(b.dim):
        for j in range(b.dim):
            for k in range(b.dim):
                c[a.dim + i][a.dim + j][a.dim + k] = b.sc[i][j][k]
    sc = tuple(tuple(tuple(row) for row in plane) for plane in c)
    names = tuple(f"a.{n}" for n in a.basis_names) + \
        tuple(f"b.{n}" for n in b.basis_names)
    kind = a.kind if a.kind == b.kind else "general"
    return Algebra(d, sc, kind, names)
