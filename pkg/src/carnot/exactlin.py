"""Exact rational linear algebra: RREF, kernels, minimal polynomials,
semisimple parts, and Hermite-normal-form lattices.

Matrices are lists of lists of exact rationals; vectors are lists.  All
eliminations are exact (no floating point anywhere in this module).
"""

from __future__ import annotations

import itertools
import math

try:
    from gmpy2 import mpq as QQ
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    from fractions import Fraction as QQ

__all__ = [
    "QQ", "q", "SingularMatrixError", "InfeasibleError", "NotSublatticeError",
    "mat", "identity", "zeros", "mat_mul", "mat_vec", "mat_add", "mat_sub",
    "mat_scale", "mat_pow", "transpose", "mat_eq", "is_zero_matrix",
    "mat_inverse", "det", "rref", "rank", "kernel", "solve_affine",
    "try_solve_affine", "sparse_kernel", "sparse_solve_affine",
    "poly_eval_matrix", "poly_mul", "poly_divmod", "poly_gcd", "poly_deriv",
    "squarefree_part", "rational_roots", "minimal_polynomial",
    "char_poly", "semisimple_part", "q_diagonalizable_roots", "eigenspace",
    "Subspace", "ZLattice", "hnf_lattice", "lattice_index", "hnf",
    "integer_kernel", "lattice_intersect_subspace",
]


class SingularMatrixError(ValueError):
    pass


class InfeasibleError(ValueError):
    pass


class NotSublatticeError(ValueError):
    pass


def q(x):
    """Coerce to an exact rational (accepts int, str like '3/4', rationals)."""
    return QQ(x)


# ---------------------------------------------------------------------------
# dense matrices

def mat(rows):
    return [[QQ(x) for x in row] for row in rows]


def identity(n):
    return [[QQ(1) if i == j else QQ(0) for j in range(n)] for i in range(n)]


def zeros(r, c):
    return [[QQ(0)] * c for _ in range(r)]


def transpose(m):
    return [list(col) for col in zip(*m)]


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    bt = transpose(b)
    return [[sum((arow[t] * bcol[t] for t in range(k)), QQ(0))
             for bcol in bt] for arow in a]


def mat_vec(a, v):
    return [sum((row[j] * v[j] for j in range(len(v))), QQ(0)) for row in a]


def mat_add(a, b):
    return [[x + y for x, y in zip(r, s)] for r, s in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(r, s)] for r, s in zip(a, b)]


def mat_scale(a, c):
    c = QQ(c)
    return [[c * x for x in row] for row in a]


def mat_pow(a, k):
    n = len(a)
    out = identity(n)
    base = a
    while k:
        if k & 1:
            out = mat_mul(out, base)
        base = mat_mul(base, base) if k > 1 else base
        k >>= 1
    return out


def mat_eq(a, b):
    return a == b or all(x == y for r, s in zip(a, b) for x, y in zip(r, s))


def is_zero_matrix(a):
    return all(x == 0 for row in a for x in row)


def rref(m):
    """Canonical reduced row echelon form.

    Returns (rows, pivot_columns); zero rows are dropped.  Pivots are chosen
    leftmost-first, pivot entries are 1, and pivot columns are cleared.
    """
    rows = [list(map(QQ, r)) for r in m]
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    pivots = []
    pr = 0
    for pc in range(ncols):
        piv = None
        for r in range(pr, nrows):
            if rows[r][pc] != 0:
                piv = r
                break
        if piv is None:
            continue
        rows[pr], rows[piv] = rows[piv], rows[pr]
        inv = 1 / rows[pr][pc]
        rows[pr] = [x * inv for x in rows[pr]]
        for r in range(nrows):
            if r != pr and rows[r][pc] != 0:
                f = rows[r][pc]
                prow = rows[pr]
                rows[r] = [x - f * y for x, y in zip(rows[r], prow)]
        pivots.append(pc)
        pr += 1
        if pr == nrows:
            break
    return rows[:pr], pivots


def rank(m):
    return len(rref(m)[1])


def kernel(m):
    """Basis of the right nullspace {v : m v = 0} (canonical, from RREF)."""
    if not m:
        return []
    ncols = len(m[0])
    rows, pivots = rref(m)
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    basis = []
    for f in free:
        v = [QQ(0)] * ncols
        v[f] = QQ(1)
        for r, pc in enumerate(pivots):
            v[pc] = -rows[r][f]
        basis.append(v)
    return basis


def solve_affine(a, b):
    """Solve a x = b; return (particular, kernel_basis).

    Raises InfeasibleError when the system has no solution.
    """
    sol = try_solve_affine(a, b)
    if sol is None:
        raise InfeasibleError("linear system is infeasible")
    return sol


def try_solve_affine(a, b):
    if not a:
        return [], []
    ncols = len(a[0])
    aug = [list(map(QQ, row)) + [QQ(bi)] for row, bi in zip(a, b)]
    rows, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [QQ(0)] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = rows[r][-1]
    return x, kernel(a)


def mat_inverse(a):
    n = len(a)
    aug = [list(map(QQ, row)) + list(e) for row, e in zip(a, identity(n))]
    rows, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise SingularMatrixError("matrix is singular")
    return [row[n:] for row in rows]


def det(a):
    """Determinant by fraction-preserving Gaussian elimination."""
    n = len(a)
    rows = [list(map(QQ, r)) for r in a]
    sign = 1
    out = QQ(1)
    for c in range(n):
        piv = None
        for r in range(c, n):
            if rows[r][c] != 0:
                piv = r
                break
        if piv is None:
            return QQ(0)
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            sign = -sign
        out *= rows[c][c]
        inv = 1 / rows[c][c]
        for r in range(c + 1, n):
            if rows[r][c] != 0:
                f = rows[r][c] * inv
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[c])]
    return out * sign


# ---------------------------------------------------------------------------
# sparse elimination (for the d^3 x d^2 Leibniz-type systems)

def _sparse_eliminate(rows, rhs=None):
    """Gaussian elimination on sparse rows (dicts col->QQ).

    Returns (pivot_rows, pivot_cols, infeasible) where pivot_rows are reduced
    so each pivot column appears in exactly one row with coefficient 1.  When
    rhs is given, each pivot row carries its rhs under key -1; infeasible is
    True when a zero row has nonzero rhs.
    """
    work = []
    for i, row in enumerate(rows):
        r = {c: v for c, v in row.items() if v != 0}
        if rhs is not None and rhs[i] != 0:
            r[-1] = QQ(rhs[i])
        if r:
            work.append(r)
    piv_rows = []   # list of dicts, fully reduced
    piv_cols = []   # pivot column of each
    col_of = {}     # pivot col -> index in piv_rows
    infeasible = False
    for r in work:
        # reduce against existing pivots
        for c in sorted(k for k in r if k != -1):
            if c in col_of and r.get(c):
                f = r[c]
                prow = piv_rows[col_of[c]]
                for cc, vv in prow.items():
                    nv = r.get(cc, QQ(0)) - f * vv
                    if nv:
                        r[cc] = nv
                    else:
                        r.pop(cc, None)
        r = {c: v for c, v in r.items() if v != 0}
        support = [c for c in r if c != -1]
        if not support:
            if -1 in r:
                infeasible = True
            continue
        pc = min(support)
        inv = 1 / r[pc]
        r = {c: v * inv for c, v in r.items()}
        # back-substitute into existing pivot rows containing pc
        for j, prow in enumerate(piv_rows):
            if pc in prow:
                f = prow[pc]
                for cc, vv in r.items():
                    nv = prow.get(cc, QQ(0)) - f * vv
                    if nv:
                        prow[cc] = nv
                    else:
                        prow.pop(cc, None)
        piv_rows.append(r)
        piv_cols.append(pc)
        col_of[pc] = len(piv_rows) - 1
    return piv_rows, piv_cols, infeasible


def sparse_kernel(rows, ncols):
    """Kernel basis of a sparsely-given homogeneous system (canonical)."""
    piv_rows, piv_cols, _ = _sparse_eliminate(rows)
    pivset = set(piv_cols)
    order = sorted(range(len(piv_cols)), key=lambda i: piv_cols[i])
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [QQ(0)] * ncols
        v[f] = QQ(1)
        for i in order:
            coef = piv_rows[i].get(f)
            if coef:
                v[piv_cols[i]] = -coef
        basis.append(v)
    return basis


def sparse_solve_affine(rows, rhs, ncols):
    """Solve sparse system; return (particular, kernel_basis) or None."""
    piv_rows, piv_cols, infeasible = _sparse_eliminate(rows, rhs)
    if infeasible:
        return None
    x = [QQ(0)] * ncols
    for prow, pc in zip(piv_rows, piv_cols):
        x[pc] = prow.get(-1, QQ(0))
    pivset = set(piv_cols)
    order = sorted(range(len(piv_cols)), key=lambda i: piv_cols[i])
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [QQ(0)] * ncols
        v[f] = QQ(1)
        for i in order:
            coef = piv_rows[i].get(f)
            if coef:
                v[piv_cols[i]] = -coef
        basis.append(v)
    return x, basis


# ---------------------------------------------------------------------------
# polynomials over Q: coefficient lists, low degree first

def poly_trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def poly_mul(p, r):
    out = [QQ(0)] * (len(p) + len(r) - 1) if p and r else []
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(r):
                out[i + j] += a * b
    return poly_trim(out)


def poly_divmod(p, d):
    p = [QQ(x) for x in p]
    d = [QQ(x) for x in d]
    poly_trim(p)
    poly_trim(d)
    if not d:
        raise ZeroDivisionError("polynomial division by zero")
    quot = [QQ(0)] * max(0, len(p) - len(d) + 1)
    while len(p) >= len(d):
        f = p[-1] / d[-1]
        k = len(p) - len(d)
        quot[k] = f
        for i, c in enumerate(d):
            p[k + i] -= f * c
        poly_trim(p)
        if not p:
            break
    return poly_trim(quot), p


def poly_gcd(p, r):
    p = poly_trim([QQ(x) for x in p])
    r = poly_trim([QQ(x) for x in r])
    while r:
        p, r = r, poly_divmod(p, r)[1]
    if p:
        lead = p[-1]
        p = [c / lead for c in p]
    return p


def poly_deriv(p):
    return [QQ(i) * c for i, c in enumerate(p)][1:]


def squarefree_part(p):
    """Monic squarefree polynomial with the same roots as p."""
    g = poly_gcd(p, poly_deriv(p))
    sf, _ = poly_divmod(p, g)
    lead = sf[-1]
    return [c / lead for c in sf]


def rational_roots(p):
    """All rational roots of p with multiplicities.

    Returns (roots, cofactor) where roots is a list of (root, multiplicity)
    and cofactor is the monic polynomial left after dividing the roots out
    (it has no rational roots).
    """
    p = poly_trim([QQ(x) for x in p])
    if not p:
        raise ValueError("zero polynomial")
    roots = []
    # strip root 0
    z = 0
    while p[0] == 0:
        z += 1
        p = p[1:]
    if z:
        roots.append((QQ(0), z))
    # clear denominators -> integer polynomial
    den = math.lcm(*[int(c.denominator) for c in p]) if p else 1
    ip = [int(c * den) for c in p]
    g = math.gcd(*[abs(c) for c in ip])
    ip = [c // g for c in ip]
    a0, an = abs(ip[0]), abs(ip[-1])

    def divisors(n):
        out = []
        i = 1
        while i * i <= n:
            if n % i == 0:
                out.append(i)
                if i != n // i:
                    out.append(n // i)
            i += 1
        return sorted(out)

    cands = sorted({QQ(s * pnum, qden)
                    for pnum in divisors(a0) for qden in divisors(an)
                    for s in (1, -1)}) if a0 else []
    cur = [QQ(c) for c in ip]
    for r in cands:
        mult = 0
        while True:
            quot, rem = poly_divmod(cur, [-r, QQ(1)])
            if rem:
                break
            cur = quot
            mult += 1
        if mult:
            roots.append((r, mult))
    lead = cur[-1]
    cof = [c / lead for c in cur]
    return roots, cof


def poly_eval_matrix(p, m):
    n = len(m)
    out = zeros(n, n)
    power = identity(n)
    for i, c in enumerate(p):
        if c:
            out = mat_add(out, mat_scale(power, c))
        if i + 1 < len(p):
            power = mat_mul(power, m)
    return out


def minimal_polynomial(m):
    """Monic minimal polynomial, low-degree-first coefficient list.

    Krylov-style: find the first linear dependence among flattened powers.
    """
    n = len(m)
    powers = []
    cur = identity(n)
    while True:
        flat = [x for row in cur for x in row]
        # does flat lie in span(powers)?  solve via dense system
        if powers:
            sol = try_solve_affine(transpose(powers), flat)
            if sol is not None:
                coeffs = sol[0]
                p = [-c for c in coeffs] + [QQ(1)]
                return poly_trim(p)
        powers.append(flat)
        cur = mat_mul(cur, m)
        if len(powers) > n:  # cannot happen: minpoly degree <= n
            raise AssertionError("minimal polynomial search overran")


def char_poly(m):
    """Characteristic polynomial det(xI - m) via Faddeev-LeVerrier."""
    n = len(m)
    out = [QQ(0)] * (n + 1)
    out[n] = QQ(1)
    mwork = identity(n)
    for k in range(1, n + 1):
        mwork = mat_mul(m, mwork)
        tr = sum((mwork[i][i] for i in range(n)), QQ(0))
        c = -tr / k
        out[n - k] = c
        for i in range(n):
            mwork[i][i] += c
    return out


def q_diagonalizable_roots(m, minpoly=None):
    """If m is diagonalizable over Q return its eigenvalue list, else None."""
    p = minpoly if minpoly is not None else minimal_polynomial(m)
    if poly_gcd(p, poly_deriv(p)) != [QQ(1)]:
        return None
    roots, cof = rational_roots(p)
    if len(cof) > 1:
        return None
    return [r for r, _ in roots]


def semisimple_part(m):
    """Semisimple part of the Jordan-Chevalley decomposition over Q.

    Newton iteration on the squarefree part of the minimal polynomial; the
    result is a polynomial in m, and m - semisimple_part(m) is nilpotent.
    """
    p = minimal_polynomial(m)
    sf = squarefree_part(p)
    if sf == p:
        return [row[:] for row in m]
    # h = inverse of sf' modulo sf (exists: sf squarefree)
    dp = poly_deriv(sf)
    # extended euclid: u*dp + v*sf = 1
    r0, r1 = sf, dp
    s0, s1 = [QQ(0)], [QQ(1)]
    while True:
        quot, rem = poly_divmod(r0, r1)
        if not rem:
            break
        r0, r1 = r1, rem
        s0, s1 = s1, poly_trim([a - b for a, b in
                                itertools.zip_longest(s0, poly_mul(quot, s1),
                                                      fillvalue=QQ(0))])
    lead = r1[-1] if r1 else QQ(1)
    if len(r1) != 1:
        raise AssertionError("squarefree part not coprime with derivative")
    h = [c / lead for c in s1]  # dp * h = 1 mod sf
    s = [row[:] for row in m]
    n = len(m)
    for _ in range(max(1, n.bit_length() + 1)):
        val = poly_eval_matrix(sf, s)
        if is_zero_matrix(val):
            return s
        corr = mat_mul(val, poly_eval_matrix(h, s))
        s = mat_sub(s, corr)
    val = poly_eval_matrix(sf, s)
    if not is_zero_matrix(val):
        raise AssertionError("Jordan-Chevalley iteration did not converge")
    return s


def eigenspace(m, lam):
    n = len(m)
    shifted = [[m[i][j] - (lam if i == j else 0) for j in range(n)]
               for i in range(n)]
    return kernel(shifted)


# ---------------------------------------------------------------------------
# subspaces (canonical RREF representation)

class Subspace:
    """Linear subspace of Q^n with a canonical RREF basis."""

    __slots__ = ("ambient", "rows", "pivots")

    def __init__(self, ambient, vectors):
        self.ambient = ambient
        if vectors:
            rows, pivots = rref(vectors)
        else:
            rows, pivots = [], []
        self.rows = tuple(tuple(r) for r in rows)
        self.pivots = tuple(pivots)

    @classmethod
    def span(cls, vectors, ambient=None):
        vectors = list(vectors)
        if ambient is None:
            if not vectors:
                raise ValueError("ambient dimension required for empty span")
            ambient = len(vectors[0])
        return cls(ambient, vectors)

    @classmethod
    def zero(cls, ambient):
        return cls(ambient, [])

    @classmethod
    def full(cls, ambient):
        return cls(ambient, identity(ambient))

    @property
    def dim(self):
        return len(self.rows)

    def basis(self):
        return [list(r) for r in self.rows]

    def contains(self, v):
        v = [QQ(x) for x in v]
        for row, pc in zip(self.rows, self.pivots):
            c = v[pc]
            if c:
                v = [x - c * y for x, y in zip(v, row)]
        return all(x == 0 for x in v)

    def coords(self, v):
        """Coordinates of v in the RREF basis (raises if not contained)."""
        v = [QQ(x) for x in v]
        out = []
        for row, pc in zip(self.rows, self.pivots):
            c = v[pc]
            out.append(c)
            if c:
                v = [x - c * y for x, y in zip(v, row)]
        if any(x != 0 for x in v):
            raise ValueError("vector not in subspace")
        return out

    def __le__(self, other):
        return all(other.contains(r) for r in self.rows)

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.ambient == other.ambient
                and self.rows == other.rows)

    def __hash__(self):
        return hash((self.ambient, self.rows))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"

    def add(self, other):
        return Subspace(self.ambient, self.basis() + other.basis())

    def intersect(self, other):
        """Intersection via the kernel of [B1^T | -B2^T]."""
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ambient)
        b1, b2 = self.basis(), other.basis()
        sys_rows = [list(r1) + [-x for x in r2]
                    for r1, r2 in zip(transpose(b1), transpose(b2))]
        vecs = []
        for k in kernel(sys_rows):
            coef = k[:len(b1)]
            v = [sum((coef[i] * b1[i][j] for i in range(len(b1))), QQ(0))
                 for j in range(self.ambient)]
            vecs.append(v)
        return Subspace(self.ambient, vecs)

    def annihilator(self):
        """Basis of linear functionals vanishing on this subspace."""
        if self.dim == 0:
            return identity(self.ambient)
        return kernel(self.basis())

    def apply(self, m):
        """Image of the subspace under the matrix m."""
        return Subspace(self.ambient, [mat_vec(m, list(r)) for r in self.rows])

    def preimage(self, m):
        """{v : m v in self} computed via the annihilator."""
        ann = self.annihilator()
        if not ann:
            return Subspace.full(self.ambient)
        sys_rows = [[sum((f[i] * m[i][j] for i in range(len(m))), QQ(0))
                     for j in range(self.ambient)] for f in ann]
        return Subspace(self.ambient, kernel(sys_rows))


# ---------------------------------------------------------------------------
# integer lattices via Hermite normal form

def hnf(rows):
    """Canonical row-style Hermite normal form of an integer matrix.

    Pivots positive, entries above pivots reduced into [0, pivot); zero rows
    dropped.  Returns (rows, pivot_columns).
    """
    work = [list(map(int, r)) for r in rows if any(r)]
    if not work:
        return [], []
    ncols = len(work[0])
    out = []
    pivots = []
    r0 = 0
    for c in range(ncols):
        # gather rows with nonzero entry in column c at or below r0
        idx = [i for i in range(r0, len(work)) if work[i][c] != 0]
        if not idx:
            continue
        # euclidean reduction within the column
        while len(idx) > 1:
            idx.sort(key=lambda i: abs(work[i][c]))
            base = idx[0]
            for i in idx[1:]:
                f = work[i][c] // work[base][c]
                work[i] = [a - f * b for a, b in zip(work[i], work[base])]
            idx = [i for i in idx if work[i][c] != 0]
        piv = idx[0]
        work[r0], work[piv] = work[piv], work[r0]
        if work[r0][c] < 0:
            work[r0] = [-x for x in work[r0]]
        # reduce entries above
        for i in range(r0):
            f = work[i][c] // work[r0][c]
            if f:
                work[i] = [a - f * b for a, b in zip(work[i], work[r0])]
        pivots.append(c)
        r0 += 1
        work = [w for k, w in enumerate(work) if k < r0 or any(w)]
        if r0 == len(work):
            break
    return work[:r0], pivots


def hnf_with_transform(rows):
    """HNF with unimodular transform: returns (H, U, pivots), U*rows == H
    including the zero rows of H (len(U) == len(rows))."""
    m = [list(map(int, r)) for r in rows]
    n = len(m)
    if n == 0:
        return [], [], []
    ncols = len(m[0])
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    r0 = 0
    pivots = []
    for c in range(ncols):
        idx = [i for i in range(r0, n) if m[i][c] != 0]
        if not idx:
            continue
        while len(idx) > 1:
            idx.sort(key=lambda i: abs(m[i][c]))
            base = idx[0]
            for i in idx[1:]:
                f = m[i][c] // m[base][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[base])]
                u[i] = [a - f * b for a, b in zip(u[i], u[base])]
            idx = [i for i in idx if m[i][c] != 0]
        piv = idx[0]
        m[r0], m[piv] = m[piv], m[r0]
        u[r0], u[piv] = u[piv], u[r0]
        if m[r0][c] < 0:
            m[r0] = [-x for x in m[r0]]
            u[r0] = [-x for x in u[r0]]
        for i in range(r0):
            f = m[i][c] // m[r0][c]
            if f:
                m[i] = [a - f * b for a, b in zip(m[i], m[r0])]
                u[i] = [a - f * b for a, b in zip(u[i], u[r0])]
        pivots.append(c)
        r0 += 1
    return m, u, pivots


def integer_kernel(a):
    """Z-basis of {c in Z^k : c a = 0} (c row vectors), saturated.

    Rational input is cleared to an integer matrix first (same kernel).
    """
    import math
    a = [[QQ(x) for x in row] for row in a]
    mult = math.lcm(*(int(x.denominator) for row in a for x in row)) \
        if a and a[0] else 1
    a = [[x * mult for x in row] for row in a]
    h, u, pivots = hnf_with_transform(a)
    rank_ = len(pivots)
    return [u[i] for i in range(rank_, len(u))]


class ZLattice:
    """Finitely generated subgroup of Q^n: (1/scale) * (integer HNF rows)."""

    __slots__ = ("ambient", "rows", "pivots", "scale")

    def __init__(self, ambient, int_rows, pivots, scale):
        self.ambient = ambient
        self.rows = tuple(tuple(r) for r in int_rows)
        self.pivots = tuple(pivots)
        self.scale = scale

    @property
    def rank(self):
        return len(self.rows)

    def basis(self):
        """Rational basis vectors."""
        s = QQ(1, self.scale) if self.scale != 1 else QQ(1)
        return [[QQ(x) * s for x in row] for row in self.rows]

    def contains(self, v):
        w = [QQ(x) * self.scale for x in v]
        for row, pc in zip(self.rows, self.pivots):
            c = w[pc] / row[pc]
            if c.denominator != 1:
                return False
            if c:
                w = [x - c * y for x, y in zip(w, row)]
        return all(x == 0 for x in w)

    def coords(self, v):
        """Integer coordinates of v in the HNF basis (None if not a member)."""
        w = [QQ(x) * self.scale for x in v]
        out = []
        for row, pc in zip(self.rows, self.pivots):
            c = w[pc] / row[pc]
            if c.denominator != 1:
                return None
            out.append(int(c))
            if c:
                w = [x - c * y for x, y in zip(w, row)]
        if any(x != 0 for x in w):
            return None
        return out

    def __eq__(self, other):
        return (isinstance(other, ZLattice) and self.ambient == other.ambient
                and self.scale == other.scale and self.rows == other.rows)

    def __hash__(self):
        return hash((self.ambient, self.scale, self.rows))

    def __repr__(self):
        return (f"ZLattice(rank={self.rank}, ambient={self.ambient}, "
                f"scale={self.scale})")

    def span_subspace(self):
        return Subspace(self.ambient, self.basis())

    def add(self, other):
        return hnf_lattice(self.basis() + other.basis(), self.ambient)

    def apply(self, m):
        return hnf_lattice([mat_vec(m, b) for b in self.basis()], self.ambient)


def hnf_lattice(generators, ambient=None):
    """Canonical lattice from rational generators."""
    gens = [[QQ(x) for x in g] for g in generators]
    if ambient is None:
        if not gens:
            raise ValueError("ambient dimension required")
        ambient = len(gens[0])
    if not gens:
        return ZLattice(ambient, [], [], 1)
    denoms = [int(x.denominator) for g in gens for x in g]
    scale = math.lcm(*denoms) if denoms else 1
    int_rows = [[int(x * scale) for x in g] for g in gens]
    h, pivots = hnf(int_rows)
    # normalize: divide out common content shared with scale
    if h:
        g = math.gcd(scale, *[abs(x) for row in h for x in row])
        if g > 1:
            scale //= g
            h = [[x // g for x in row] for row in h]
    return ZLattice(ambient, h, pivots, scale)


def lattice_index(l1, l2):
    """Index [l1 : l2] for a finite-index sublattice l2 <= l1.

    Raises NotSublatticeError if l2 is not contained in l1 or ranks differ.
    """
    if l2.rank != l1.rank:
        raise NotSublatticeError("ranks differ; index would be infinite")
    coords = []
    for b in l2.basis():
        c = l1.coords(b)
        if c is None:
            raise NotSublatticeError("not a sublattice")
        coords.append(c)
    d = det(mat(coords))
    if d == 0:
        raise NotSublatticeError("degenerate sublattice")
    return abs(d)


def lattice_intersect_subspace(lat, sub):
    """The lattice of points of lat lying in the subspace sub."""
    if lat.rank == 0 or sub.dim == lat.ambient:
        return lat
    if sub.dim == 0:
        return ZLattice(lat.ambient, [], [], 1)
    ann = sub.annihilator()
    basis = lat.basis()
    # rows c (integer) with sum_i c_i <basis_i, f> = 0 for all functionals f
    a = [[sum((QQ(b[j]) * f[j] for j in range(lat.ambient)), QQ(0))
          for f in ann] for b in basis]
    dens = [int(x.denominator) for row in a for x in row]
    mlt = math.lcm(*dens) if dens else 1
    int_a = [[int(x * mlt) for x in row] for row in a]
    ker = integer_kernel(int_a)
    vecs = []
    for c in ker:
        v = [sum((QQ(c[i]) * basis[i][j] for i in range(len(basis))), QQ(0))
             for j in range(lat.ambient)]
        vecs.append(v)
    return hnf_lattice(vecs, lat.ambient)
