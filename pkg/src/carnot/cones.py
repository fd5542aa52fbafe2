"""Exact rational polyhedral helpers for weight-cone analysis.

Two independent routes decide whether a weight is positive (i.e. some
non-negative functional on the weight set is strictly positive on it):

* the lineality route: alpha is non-positive iff -alpha lies in the convex
  cone generated by the weights (membership by Caratheodory enumeration);
* the LP route: alpha is positive iff the system {f.w >= 0 for all weights,
  f.alpha >= 1} is feasible (Fourier-Motzkin elimination over Q).

Both are exported and cross-checked in the test suite.
"""

from __future__ import annotations

import itertools

from .exactlin import QQ, q, rank, try_solve_affine, transpose

__all__ = [
    "fm_solve", "fm_feasible", "cone_contains", "is_positive_weight_lp",
    "is_positive_weight_lineality", "positive_weights", "weight_cone_flags",
    "nonneg_integer_functional", "supporting_functional",
]


# ---------------------------------------------------------------------------
# Fourier-Motzkin elimination.  A system is a list of rows (a, b) encoding
# the inequality  a . x >= b.


def _canonical(a, b):
    """Scale the row (a, b) by a positive rational to primitive integers."""
    import math
    dens = [int(x.denominator) for x in a] + [int(QQ(b).denominator)]
    mult = math.lcm(*dens)
    ai = [int(x * mult) for x in a]
    bi = int(QQ(b) * mult)
    g = math.gcd(*(abs(x) for x in ai), abs(bi))
    if g > 1:
        ai = [x // g for x in ai]
        bi //= g
    return tuple(QQ(x) for x in ai), QQ(bi)


def _eliminate(rows, j):
    """Eliminate variable j from the system, returning the projected rows."""
    pos, neg, zero = [], [], []
    for a, b in rows:
        if a[j] > 0:
            pos.append((a, b))
        elif a[j] < 0:
            neg.append((a, b))
        else:
            zero.append((a, b))
    out = list(zero)
    for ap, bp in pos:
        for an, bn in neg:
            # ap[j] * (an-row) - an[j] * (ap-row) cancels x_j; signs keep >=
            cp, cn = ap[j], -an[j]
            a = tuple(cn * x + cp * y for x, y in zip(ap, an))
            out.append((a, cn * bp + cp * bn))
    # canonicalize and drop duplicates / trivially true rows to tame growth
    seen = set()
    dedup = []
    for a, b in out:
        a, b = _canonical(a, b)
        if b <= 0 and all(x == 0 for x in a):
            continue            # 0 >= b with b <= 0: always true
        key = (a, b)
        if key not in seen:
            seen.add(key)
            dedup.append((a, b))
    return dedup


def fm_solve(rows, nvars):
    """Solve {a . x >= b} exactly; return a witness vector or None."""
    rows = [_canonical([QQ(x) for x in a], b) for a, b in rows]
    # eliminate in greedy order: fewest pos x neg combinations first
    cur = rows
    steps = []                  # (variable, system before its elimination)
    remaining = list(range(nvars))
    while remaining:
        def cost(j):
            p = sum(1 for a, _ in cur if a[j] > 0)
            q = sum(1 for a, _ in cur if a[j] < 0)
            return p * q - (p + q)
        j = min(remaining, key=cost)
        steps.append((j, cur))
        cur = _eliminate(cur, j)
        remaining.remove(j)
    for a, b in cur:
        if b > 0:       # 0 >= b with b > 0: infeasible
            return None
    # back-substitute in reverse elimination order
    x = [QQ(0)] * nvars
    for j, system in reversed(steps):
        lo, hi = None, None
        for a, b in system:
            rest = b - sum(a[t] * x[t] for t in range(nvars) if t != j)
            if a[j] > 0:
                bound = rest / a[j]
                lo = bound if lo is None or bound > lo else lo
            elif a[j] < 0:
                bound = rest / a[j]
                hi = bound if hi is None or bound < hi else hi
        if lo is None and hi is None:
            x[j] = QQ(0)
        elif lo is None:
            x[j] = min(QQ(0), hi)
        elif hi is None:
            x[j] = max(QQ(0), lo)
        else:
            assert lo <= hi, "back-substitution bounds crossed"
            x[j] = (lo + hi) / 2
    for a, b in rows:
        assert sum(c * v for c, v in zip(a, x)) >= b
    return x


def fm_feasible(rows, nvars):
    return fm_solve(rows, nvars) is not None


# ---------------------------------------------------------------------------
# Cone membership (Caratheodory: v is in cone(gens) iff it is a non-negative
# combination of some linearly independent subset).


def cone_contains(gens, v):
    """Is v in the convex cone generated by gens (exact)?"""
    v = [q(x) for x in v]
    if all(x == 0 for x in v):
        return True
    gens = [tuple(q(x) for x in g) for g in gens]
    gens = [g for g in gens if any(x != 0 for x in g)]
    r = rank([list(g) for g in gens]) if gens else 0
    for k in range(1, r + 1):
        for sub in itertools.combinations(gens, k):
            if rank([list(g) for g in sub]) < k:
                continue
            sol = try_solve_affine(transpose([list(g) for g in sub]), v)
            if sol is not None:
                coeffs, kern = sol
                # independent subset: solution is unique
                if all(c >= 0 for c in coeffs):
                    return True
    return False


# ---------------------------------------------------------------------------
# Positive weights, two ways.


def is_positive_weight_lp(weights, alpha):
    """Positive iff {f.w >= 0 for all w, f.alpha >= 1} is feasible."""
    alpha = tuple(q(x) for x in alpha)
    if not alpha:
        return False
    rows = [(tuple(w), QQ(0)) for w in weights]
    rows.append((alpha, QQ(1)))
    return fm_feasible(rows, len(alpha))


def is_positive_weight_lineality(weights, alpha):
    """Positive iff alpha is outside the lineality space of the weight cone,
    i.e. -alpha is not itself in the cone."""
    alpha = tuple(q(x) for x in alpha)
    if not alpha or all(x == 0 for x in alpha):
        return False
    return not cone_contains(weights, [-x for x in alpha])


def positive_weights(weights):
    """The subset of positive weights (lineality route)."""
    return [w for w in weights if is_positive_weight_lineality(weights, w)]


def supporting_functional(weights, alpha):
    """A rational f with f.w >= 0 for all weights and f.alpha >= 1, or None."""
    alpha = tuple(q(x) for x in alpha)
    if not alpha:
        return None
    rows = [(tuple(q(x) for x in w), QQ(0)) for w in weights]
    rows.append((alpha, QQ(1)))
    return fm_solve(rows, len(alpha))


def nonneg_integer_functional(weights):
    """Integer functional f with f.w >= 0 on all weights and f.w >= 1 on all
    positive weights (the sum of per-weight supporting functionals, scaled).

    Returns the zero functional when no weight is positive.
    """
    r = len(weights[0]) if weights else 0
    total = [QQ(0)] * r
    for w in weights:
        if is_positive_weight_lineality(weights, w):
            f = supporting_functional(weights, w)
            assert f is not None, "positive weight without supporting functional"
            total = [a + b for a, b in zip(total, f)]
    import math
    dens = [int(x.denominator) for x in total]
    mlt = math.lcm(*dens) if dens else 1
    out = [int(x * mlt) for x in total]
    g = math.gcd(*(abs(x) for x in out)) if any(out) else 1
    out = [x // g for x in out]
    assert all(sum(c * q(x) for c, x in zip(out, w)) >= 0 for w in weights)
    return out


def weight_cone_flags(weights):
    """Cone-level grading flags for a weight multiset in Z^r.

    contractable: every weight positive (equivalently a single functional is
    >= 1 on all of them); semicontractable: at least one positive weight;
    flexible_split: no zero weight.
    """
    weights = [tuple(q(x) for x in w) for w in weights]
    pos = [is_positive_weight_lineality(weights, w) for w in weights]
    return {
        "contractable": bool(weights) and all(pos),
        "semicontractable": any(pos),
        "flexible_split": all(any(x != 0 for x in w) for w in weights),
    }
