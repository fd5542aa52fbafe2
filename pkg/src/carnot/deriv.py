"""Derivation algebras and maximal Q-split tori.

A derivation is a matrix D with D(xy) = (Dx)y + x(Dy).  A split torus is a
commuting family of Q-diagonalizable derivations; maximality is certified
when the semisimple parts of a centralizer basis all lie in the family's
span (proven-maximal), otherwise the result is heuristic-maximal.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .exactlin import (
    QQ, Subspace, identity, kernel, mat_mul, mat_sub, mat_vec,
    minimal_polynomial, q_diagonalizable_roots, rref, semisimple_part,
    sparse_kernel, try_solve_affine, transpose,
)

__all__ = ["derivations", "SplitTorus", "maximal_split_torus",
           "weight_decomposition", "PROVEN", "HEURISTIC"]

PROVEN = "proven-maximal"
HEURISTIC = "heuristic-maximal"


def _leibniz_rows(a):
    """Sparse rows of the Leibniz system in the d^2 unknowns D[p][q]
    (variable index p*d+q)."""
    d = a.dim
    rows = []
    for i in range(d):
        for j in range(d):
            cij = a.sc[i][j]
            for k in range(d):
                row = {}
                # D applied to the product: sum_m c_ijm D[k][m]
                for m in range(d):
                    if cij[m]:
                        row[k * d + m] = row.get(k * d + m, QQ(0)) + cij[m]
                # -(D e_i) e_j: -sum_m D[m][i] c_mjk
                for m in range(d):
                    cm = a.sc[m][j][k]
                    if cm:
                        key = m * d + i
                        row[key] = row.get(key, QQ(0)) - cm
                # -e_i (D e_j): -sum_m D[m][j] c_imk
                for m in range(d):
                    cm = a.sc[i][m][k]
                    if cm:
                        key = m * d + j
                        row[key] = row.get(key, QQ(0)) - cm
                row = {c: v for c, v in row.items() if v != 0}
                if row:
                    rows.append(row)
    return rows


def derivations(a):
    """Canonical basis (list of matrices) of the derivation algebra."""
    d = a.dim
    basis = sparse_kernel(_leibniz_rows(a), d * d)
    return [[v[p * d:(p + 1) * d] for p in range(d)] for v in basis]


@dataclass
class SplitTorus:
    algebra: object
    generators: list      # commuting Q-diagonalizable derivations
    rank: int
    certificate: str      # PROVEN or HEURISTIC

    def __repr__(self):
        return f"SplitTorus(rank={self.rank}, certificate={self.certificate!r})"


def _flatten(m):
    return [x for row in m for x in row]


def _in_span(mats, m):
    if not mats:
        return all(x == 0 for x in _flatten(m))
    return try_solve_affine(transpose([_flatten(x) for x in mats]),
                            _flatten(m)) is not None


def _commutes(x, y):
    return mat_mul(x, y) == mat_mul(y, x)


def _centralizer(der_basis, family, dim):
    """Basis of {sum t_i B_i : commutes with every family member}."""
    if not family:
        return list(der_basis)
    n = len(der_basis)
    rows = []
    for f in family:
        # [sum t_i B_i, f] = 0 : d^2 scalar equations in t
        comms = [_flatten(mat_sub(mat_mul(b, f), mat_mul(f, b)))
                 for b in der_basis]
        for c in range(dim * dim):
            row = {i: comms[i][c] for i in range(n) if comms[i][c] != 0}
            if row:
                rows.append(row)
    coeffs = sparse_kernel(rows, n)
    out = []
    for t in coeffs:
        m = [[sum((t[i] * der_basis[i][p][q] for i in range(n)), QQ(0))
              for q in range(dim)] for p in range(dim)]
        out.append(m)
    return out


def maximal_split_torus(a, seed=0, draws=24):
    """Greedy maximal commuting family of Q-diagonalizable derivations."""
    d = a.dim
    der = derivations(a)
    rng = random.Random(seed)
    family = []
    while True:
        cent = _centralizer(der, family, d)
        added = False
        candidates = list(cent)
        for _ in range(draws):
            if not cent:
                break
            coefs = [QQ(rng.randint(-2, 2)) for _ in cent]
            comb = [[sum((c * b[p][q] for c, b in zip(coefs, cent)), QQ(0))
                     for q in range(d)] for p in range(d)]
            candidates.append(comb)
        for cand in candidates:
            if all(x == 0 for x in _flatten(cand)):
                continue
            s = semisimple_part(cand)
            if all(x == 0 for x in _flatten(s)):
                continue
            if q_diagonalizable_roots(s) is None:
                continue
            if _in_span(family, s):
                continue
            # s is a polynomial in cand, so it commutes with the family
            family.append(s)
            added = True
            break
        if not added:
            break
    # certificate: semisimple parts of a centralizer basis lie in span(family)
    cent = _centralizer(der, family, d)
    cert = PROVEN
    for z in cent:
        if not _in_span(family, semisimple_part(z)):
            cert = HEURISTIC
            break
    return SplitTorus(a, family, len(family), cert)


def _restricted_matrix(m, sub):
    """Matrix of m on the invariant subspace sub, in sub's RREF basis."""
    basis = sub.basis()
    return transpose([sub.coords(mat_vec(m, b)) for b in basis])


def _split_by_eigenvalues(sub, m_restricted):
    """Split sub into eigenspaces of the (Q-diagonalizable) restriction."""
    roots = q_diagonalizable_roots(m_restricted)
    if roots is None:
        raise AssertionError("restriction of torus generator not split")
    basis = sub.basis()
    k = len(basis)
    out = []
    for lam in sorted(roots):
        shifted = [[m_restricted[i][j] - (lam if i == j else 0)
                    for j in range(k)] for i in range(k)]
        vecs = []
        for cvec in kernel(shifted):
            v = [sum((cvec[i] * basis[i][j] for i in range(k)), QQ(0))
                 for j in range(sub.ambient)]
            vecs.append(v)
        out.append((lam, Subspace(sub.ambient, vecs)))
    return out


def weight_decomposition(torus):
    """Joint eigenspace decomposition with integer weights.

    Returns a list of (weight_tuple, Subspace); weights are canonicalized to
    primitive coordinates (they span Z^rank) via an HNF basis of the lattice
    they generate; for rank 1 the residual sign is fixed by taking the
    lexicographically larger sorted weight tuple.
    """
    a = torus.algebra
    d = a.dim
    if torus.rank == 0:
        return [((), Subspace.full(d))]
    pieces = [((), Subspace.full(d))]
    for t in torus.generators:
        nxt = []
        for wt, sub in pieces:
            restr = _restricted_matrix(t, sub)
            for lam, piece in _split_by_eigenvalues(sub, restr):
                nxt.append((wt + (lam,), piece))
        pieces = nxt
    return _canonicalize_weights(pieces, torus.rank)


def _canonicalize_weights(pieces, r):
    from .exactlin import hnf, mat_inverse, mat
    import math
    # scale each coordinate to integers (rescales the generator: harmless)
    weights = [list(w) for w, _ in pieces]
    for c in range(r):
        dens = [int(QQ(w[c]).denominator) for w in weights]
        mlt = math.lcm(*dens) if dens else 1
        for w in weights:
            w[c] = int(QQ(w[c]) * mlt)
    lat_rows, pivots = hnf(weights)
    if len(lat_rows) != r:
        raise AssertionError("weight lattice rank below torus rank")
    hinv = mat_inverse(mat(lat_rows))
    new = []
    for w in weights:
        coords = [sum((QQ(w[i]) * hinv[i][j] for i in range(r)), QQ(0))
                  for j in range(r)]
        assert all(x.denominator == 1 for x in coords)
        new.append(tuple(int(x) for x in coords))
    if r == 1:
        pos = sorted(w[0] for w in new)
        neg = sorted(-w[0] for w in new)
        if neg > pos:
            new = [(-w[0],) for w in new]
    out = list(zip(new, (s for _, s in pieces)))
    out.sort(key=lambda p: p[0])
    return out
