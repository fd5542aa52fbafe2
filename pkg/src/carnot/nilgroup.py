"""The nilpotent group layer: exact Baker-Campbell-Hausdorff multiplication
in logarithmic coordinates, graded dilations, lattice subgroups, the
lattice-stabilizing dilation modulus, Guivarc'h length, systole estimation
and the systolic-growth experiment."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import NotNilpotentError, lower_series
from .exactlin import (
    QQ, Subspace, ZLattice, hnf_lattice, identity, lattice_index,
    lattice_intersect_subspace, mat_inverse, mat_mul, mat_vec, transpose,
)

__all__ = [
    "NilGroup", "LatticeSubgroup", "ClassTooLargeError", "BadGradingError",
    "BoxBudgetError", "GuivarchLength", "bch_coefficients", "growth_degree",
    "dilation", "defendo_modulus", "guivarch_length", "systole_estimate",
    "uppersys_family", "systolic_experiment",
]

CLASS_CAP = 10


class ClassTooLargeError(ValueError):
    pass


class BadGradingError(ValueError):
    pass


class BoxBudgetError(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# Dynkin coefficients: bch(x, y) = sum over words w in {x, y}* of coeff(w)
# times the right-nested bracket [w_1, [w_2, [..., w_k]]].


def _dynkin_words(cap):
    """Aggregate Dynkin-series coefficients per letter word up to length cap.

    Terms are indexed by block sequences ((r_1, s_1), ..., (r_n, s_n)) with
    r_i + s_i > 0; the word x^{r_1} y^{s_1} ... x^{r_n} y^{s_n} receives
    (-1)^(n-1) / (n * m * prod r_i! s_i!) with m the word length.  Words
    whose right-nested bracket vanishes identically (last block ending in
    y^{s} with s > 1, or in x^{r} with r > 1) are skipped.
    """
    coeffs = {}

    def rec(blocks, length):
        if blocks:
            n = len(blocks)
            last_r, last_s = blocks[-1]
            degenerate = (last_s > 1) or (last_s == 0 and last_r > 1)
            if not degenerate:
                denom = n * length
                for r, s in blocks:
                    denom *= math.factorial(r) * math.factorial(s)
                c = QQ((-1) ** (n - 1), denom)
                word = tuple(
                    l for r, s in blocks for l in (0,) * r + (1,) * s)
                coeffs[word] = coeffs.get(word, QQ(0)) + c
        if length >= cap:
            return
        for r in range(0, cap - length + 1):
            for s in range(0, cap - length - r + 1):
                if r + s == 0:
                    continue
                rec(blocks + [(r, s)], length + r + s)

    rec([], 0)
    return {w: c for w, c in coeffs.items() if c != 0}


_BCH_CACHE = {}


def bch_coefficients(cap):
    """Coefficient of each letter word (0 = x, 1 = y) in the BCH series,
    truncated at total degree `cap` (cached)."""
    if cap not in _BCH_CACHE:
        _BCH_CACHE[cap] = _dynkin_words(cap)
    return _BCH_CACHE[cap]


@dataclass
class NilGroup:
    """Simply connected nilpotent Lie group in logarithmic coordinates.

    Elements are rational coordinate vectors; the product is the exact BCH
    polynomial truncated at the algebra's nilpotency class.
    """
    algebra: object
    nclass: int = 0
    bch_table: dict = field(default_factory=dict, repr=False)

    @classmethod
    def from_algebra(cls, a, class_cap=CLASS_CAP):
        series = lower_series(a)
        c = len(series) - 1
        if c > class_cap:
            raise ClassTooLargeError(f"nilpotency class {c} exceeds cap "
                                     f"{class_cap}")
        return cls(a, c, bch_coefficients(max(c, 1)))

    def multiply(self, x, y):
        """Exact BCH product of coordinate vectors."""
        a = self.algebra
        x = [QQ(v) for v in x]
        y = [QQ(v) for v in y]
        vecs = (x, y)
        zero = [QQ(0)] * a.dim
        # words share suffixes, so memoize the right-nested partial products
        cache = {(0,): x, (1,): y}

        def suffix(word):
            v = cache.get(word)
            if v is None:
                tail = suffix(word[1:])
                v = zero if tail is zero else a.product(vecs[word[0]], tail)
                if v is not zero and all(t == 0 for t in v):
                    v = zero
                cache[word] = v
            return v

        out = [QQ(0)] * a.dim
        for word, c in self.bch_table.items():
            v = suffix(word)
            if v is zero:
                continue
            for i in range(a.dim):
                if v[i]:
                    out[i] += c * v[i]
        return out

    def inverse(self, x):
        return [-QQ(v) for v in x]

    def power(self, x, m):
        """x^(*m) = m x in logarithmic coordinates."""
        return [QQ(m) * QQ(v) for v in x]


@dataclass
class LatticeSubgroup:
    group: NilGroup
    log_lattice: ZLattice
    verified: bool = False

    def verify(self):
        """Certify closure under the group law on the lattice basis."""
        basis = self.log_lattice.basis()
        for u in basis:
            for v in basis:
                if not self.log_lattice.contains(self.group.multiply(u, v)):
                    self.verified = False
                    return False
        self.verified = True
        return True


def growth_degree(a):
    """Polynomial growth degree: sum of i * dim(g^(i)/g^(i+1))."""
    dims = [s.dim for s in lower_series(a)]
    return sum(i * (dims[i - 1] - dims[i]) for i in range(1, len(dims)))


# ---------------------------------------------------------------------------
# Dilations of a grading in N.


def _grading_degrees(grading):
    for w in grading.weights():
        if len(w) != 1 or w[0] < 0:
            raise BadGradingError("dilations need a grading in N")
    return grading


def dilation(group, grading, t):
    """The automorphism multiplying the degree-n component by t^n."""
    _grading_degrees(grading)
    a = group.algebra
    d = a.dim
    cols = []
    scales = []
    for w, s in sorted(grading.components.items()):
        for b in s.basis():
            cols.append(b)
            scales.append(QQ(t) ** w[0])
    p = transpose(cols)
    pinv = mat_inverse(p)
    scaled = [[scales[j] * p[i][j] for j in range(d)] for i in range(d)]
    m = mat_mul(scaled, pinv)
    if QQ(t) != 0:
        for i in range(d):
            for j in range(d):
                ei, ej = a.basis_vector(i), a.basis_vector(j)
                lhs = mat_vec(m, a.product(ei, ej))
                rhs = a.product(mat_vec(m, ei), mat_vec(m, ej))
                assert lhs == rhs, "dilation is not an automorphism"
    return m


def defendo_modulus(group, grading, lattice):
    """Positive integer k0 such that the dilation by any m in k0 N + 1 maps
    the lattice into itself; k0 = s * k^d * k' where s clears the BCH
    denominators up to the class, and k, k' sandwich the log-lattice
    between (1/k) Z^d and k' Z^d in the graded basis.

    Returns (k0, certificate) where the certificate records the exact
    membership check of the generator images for m = k0 + 1.
    """
    _grading_degrees(grading)
    if not lattice.verified and not lattice.verify():
        raise ValueError("lattice subgroup failed closure verification")
    a = group.algebra
    d = a.dim
    dens = [int(QQ(c).denominator) for c in group.bch_table.values()]
    s = math.lcm(*dens) if dens else 1
    lat = lattice.log_lattice
    k = int(lat.scale)
    kps = []
    for j in range(d):
        line = Subspace(d, [a.basis_vector(j)])
        seg = lattice_intersect_subspace(lat, line)
        assert seg.rank == 1, "lattice not full in the graded basis"
        t = [x for x in seg.basis()[0] if x != 0][0]
        t = abs(QQ(t))
        kps.append(int(t.numerator) // math.gcd(int(t.numerator),
                                                int(t.denominator)))
    kp = math.lcm(*kps)
    k0 = s * k ** d * kp
    m = k0 + 1
    dm = dilation(group, grading, m)
    cert = {"k0": k0, "s": s, "k": k, "k_prime": kp, "m": m,
            "images_in_lattice": all(
                lat.contains(mat_vec(dm, b)) for b in lat.basis())}
    assert cert["images_in_lattice"], "dilation certificate failed"
    return k0, cert


# ---------------------------------------------------------------------------
# Guivarc'h length: l(x) = max_n |x_n|^(1/n) over graded components.


class GuivarchLength:
    """Exact representation of max-norm^(1/degree): a value q^(1/n).

    Comparisons cross-power: q^(1/n) <= p^(1/m) iff q^m <= p^n.
    """

    __slots__ = ("base", "deg")

    def __init__(self, base, deg):
        self.base = QQ(base)      # non-negative rational
        self.deg = int(deg)       # >= 1

    @classmethod
    def zero(cls):
        return cls(QQ(0), 1)

    def __le__(self, other):
        if isinstance(other, GuivarchLength):
            return self.base ** other.deg <= other.base ** self.deg
        return self.base <= QQ(other) ** self.deg

    def __lt__(self, other):
        if isinstance(other, GuivarchLength):
            return self.base ** other.deg < other.base ** self.deg
        return self.base < QQ(other) ** self.deg

    def __eq__(self, other):
        return (isinstance(other, GuivarchLength)
                and self.base ** other.deg == other.base ** self.deg)

    def __hash__(self):
        return hash(float(self))

    def __float__(self):
        return float(Fraction(int(self.base.numerator),
                              int(self.base.denominator))
                     ** Fraction(1, self.deg))

    def scale(self, m):
        """Length of the image under the dilation by m: m * value."""
        return GuivarchLength(self.base * QQ(m) ** self.deg, self.deg)

    def __repr__(self):
        return f"GuivarchLength({self.base}^(1/{self.deg}))"


def _component_degrees(grading):
    """Degree of each coordinate; requires coordinate-aligned components."""
    d = grading.algebra.dim
    degs = [None] * d
    for w, s in grading.components.items():
        if len(w) != 1 or w[0] < 1:
            raise BadGradingError("Guivarc'h length needs a positive grading")
        for row, p in zip(s.rows, s.pivots):
            if any(x != 0 and j != p for j, x in enumerate(row)):
                raise BadGradingError("grading components must be "
                                      "coordinate subspaces")
            degs[p] = w[0]
    if any(t is None for t in degs):
        raise BadGradingError("grading does not cover all coordinates")
    return degs


def guivarch_length(group, grading, x):
    """l(x) = max over components of (max-norm of x_n)^(1/n), exactly."""
    degs = _component_degrees(grading)
    best = GuivarchLength.zero()
    for n in sorted(set(degs)):
        norm = max((abs(QQ(x[j])) for j in range(len(degs))
                    if degs[j] == n), default=QQ(0))
        cand = GuivarchLength(norm, n)
        if best < cand:
            best = cand
    return best


def _box_points(lattice, bounds, budget):
    """All lattice points with |coord_j| <= bounds[j], by triangular
    enumeration over the HNF basis (pivot coordinates determine the
    coefficients)."""
    basis = lattice.basis()
    pivots = lattice.pivots
    r = len(basis)
    out = []
    visited = [0]

    def rec(i, acc):
        if visited[0] > budget:
            raise BoxBudgetError("lattice box enumeration budget exceeded")
        if i == r:
            if all(abs(acc[j]) <= bounds[j] for j in range(len(acc))):
                out.append(list(acc))
            return
        p = pivots[i]
        step = basis[i][p]
        lo = (-bounds[p] - acc[p]) / step
        hi = (bounds[p] - acc[p]) / step
        if lo > hi:
            lo, hi = hi, lo
        c = math.ceil(lo)
        while QQ(c) <= hi:
            visited[0] += 1
            if visited[0] > budget:
                raise BoxBudgetError("lattice box enumeration budget "
                                     "exceeded")
            nxt = [acc[j] + QQ(c) * basis[i][j] for j in range(len(acc))]
            rec(i + 1, nxt)
            c += 1

    rec(0, [QQ(0)] * lattice.ambient)
    return out


def systole_estimate(group, grading, lattice, bound, budget=10 ** 7):
    """Minimum Guivarc'h length over nonzero lattice points with l <= bound.

    Returns (length, witness) or (None, None) when the box contains no
    nonzero point.  Raises BoxBudgetError when the enumeration budget is
    exceeded.
    """
    degs = _component_degrees(grading)
    lat = lattice.log_lattice if isinstance(lattice, LatticeSubgroup) \
        else lattice
    b = QQ(bound)
    bounds = [b ** degs[j] for j in range(len(degs))]
    best = None
    witness = None
    for pt in _box_points(lat, bounds, budget):
        if all(x == 0 for x in pt):
            continue
        l = guivarch_length(group, grading, pt)
        if not (l <= b):
            continue
        if best is None or l < best:
            best, witness = l, pt
    return best, witness


# ---------------------------------------------------------------------------
# Lattice families and the systolic-growth experiment.


def uppersys_family(group, n, k_divisor=None, search_cap=400):
    """The lattice with basis n v_i on a complement of the derived
    subalgebra and (n^c / K) w_j on the derived subalgebra, where the fixed
    denominator K (a rescaling of the derived basis) absorbs the BCH
    denominators so the family is closed under the group law.

    Returns (lattice, K).  Two members built with the same K satisfy the
    exact index law [L_1 : L_n] = n^D with
    D = dim(g/[g,g]) + c * dim [g,g].
    """
    a = group.algebra
    series = lower_series(a)
    c = len(series) - 1
    derived = series[1] if len(series) > 1 else Subspace.zero(a.dim)
    der_pivots = set(derived.pivots)
    # filtration depth of each derived coordinate: deeper coordinates carry
    # higher powers of the rescaling base so brackets stay inside
    depth = {}
    for j in der_pivots:
        depth[j] = max(i + 1 for i, s_ in enumerate(series[:-1])
                       if j in s_.pivots)
    dens = [int(QQ(v).denominator) for v in group.bch_table.values()]
    s = math.lcm(*dens) if dens else 1

    def build(base):
        gens = []
        for j in range(a.dim):
            v = a.basis_vector(j)
            if j in der_pivots:
                k = base ** (depth[j] - 1)
                gens.append([QQ(n) ** c / k * x for x in v])
            else:
                gens.append([QQ(n) * x for x in v])
        return LatticeSubgroup(group, hnf_lattice(gens, a.dim))

    if k_divisor is not None:
        lat = build(k_divisor)
        if not lat.verify():
            raise ValueError("uppersys lattice fails closure for the given "
                             "derived-basis denominator")
        return lat, k_divisor
    for m in range(1, search_cap + 1):
        base = s * m
        lat = build(base)
        if lat.verify():
            return lat, base
    raise ValueError("no derived-basis denominator up to the search cap "
                     "closes the uppersys lattice")


def _fit_slope(xs, ys):
    """Least-squares slope of ys against xs (with intercept)."""
    n = len(xs)
    mx = sum(xs) / n
    my = sum(ys) / n
    num = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    den = sum((x - mx) ** 2 for x in xs)
    return num / den


def systolic_experiment(group, grading, lattice, m_list, budget=10 ** 7):
    """Dilate the lattice by each m, record exact index and box-enumerated
    systole, and fit the log-log slope of index against systole.

    The systole uses the Guivarc'h quasi-length, which is quasi-isometric
    to (but not equal to) the word metric; slopes inherit that caveat.
    """
    base = lattice.log_lattice if isinstance(lattice, LatticeSubgroup) \
        else lattice
    sys0, wit0 = None, None
    bound = QQ(1)
    while sys0 is None:
        sys0, wit0 = systole_estimate(group, grading, base, bound, budget)
        bound *= 2
    rows = []
    for m in m_list:
        dm = dilation(group, grading, m)
        img = base.apply(dm)
        index = lattice_index(base, img)
        # scaling identity l(delta(m) h) = m l(h) gives a tight search box
        target = sys0.scale(m)
        sys_m, wit = systole_estimate(
            group, grading, img,
            _rational_upper_root(target), budget)
        assert sys_m is not None
        assert sys_m == target, "systole scaling identity violated"
        rows.append({"m": m, "index": int(index),
                     "systole": float(sys_m), "witness": wit})
    xs = [math.log(r["systole"]) for r in rows]
    ys = [math.log(r["index"]) for r in rows]
    slope = _fit_slope(xs, ys) if len(rows) >= 2 else float("nan")
    return {"rows": rows, "slope": slope,
            "caveat": "lengths are Guivarc'h quasi-lengths, equivalent "
                      "to the word metric up to quasi-isometry"}


def _rational_upper_root(glen):
    """A rational bound >= the exact length value q^(1/n), close to it."""
    f = Fraction(int(glen.base.numerator), int(glen.base.denominator))
    approx = Fraction(float(f ** Fraction(1, glen.deg))).limit_denominator(
        10 ** 6)
    b = QQ(approx.numerator, approx.denominator)
    while b ** glen.deg < glen.base:
        b += QQ(1, 10 ** 3)
    return b
