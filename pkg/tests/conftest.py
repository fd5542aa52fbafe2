"""Shared helpers for the test suite.

Includes the independent free-associative BCH oracle, random base-change
generators, and seeded constructors for Carnot-graded example algebras.
"""

from __future__ import annotations

import random

from carnot.algebra import Algebra, direct_product
from carnot.exactlin import QQ, det

# ---------------------------------------------------------------------------
# Random base changes.


def transvection_matrix(d, rng, nops=6):
    """Random unimodular matrix: product of elementary transvections."""
    p = [[QQ(1 if i == j else 0) for j in range(d)] for i in range(d)]
    for _ in range(nops):
        i = rng.randrange(d)
        j = rng.randrange(d)
        if i == j:
            continue
        c = QQ(rng.randint(-2, 2))
        for k in range(d):
            p[i][k] += c * p[j][k]
    return p


def dense_invertible(d, rng, lo=-3, hi=3):
    """Random dense invertible rational matrix with small entries."""
    while True:
        p = [[QQ(rng.randint(lo, hi)) for _ in range(d)] for _ in range(d)]
        if det(p) != 0:
            return p


# ---------------------------------------------------------------------------
# Seeded Carnot-graded examples (for the round-trip property suite).
# Direct products of standard Carnot blocks, then scrambled by a random
# rational base change.

def _abelian(k):
    return Algebra.from_brackets(k, {})


def _heis():
    return Algebra.from_brackets(3, {(0, 1, 2): 1})


def _filiform(n):
    """String algebra [X1, Xi] = X_{i+1}, i = 2..n-1 (class n-1, Carnot)."""
    return Algebra.from_brackets(
        n, {(0, i, i + 1): 1 for i in range(1, n - 1)})


def _freenil23():
    return Algebra.from_brackets(
        5, {(0, 1, 2): 1, (0, 2, 3): 1, (1, 2, 4): 1})


_BLOCKS = [
    (_heis, 3, 2), (lambda: _filiform(4), 4, 3),
    (lambda: _filiform(5), 5, 4), (_freenil23, 5, 3),
]


def random_carnot_example(rng):
    """A scrambled direct product of Carnot blocks: dim 4-8, class 2-4.

    Returns (algebra, expected lower-series quotient dims).
    """
    while True:
        mk, d, c = _BLOCKS[rng.randrange(len(_BLOCKS))]
        a = mk()
        extra = rng.randint(0, 8 - d)
        if extra:
            a = direct_product(a, _abelian(extra))
        if rng.random() < 0.4 and a.dim <= 6:
            mk2, d2, c2 = _BLOCKS[rng.randrange(len(_BLOCKS))]
            if a.dim + d2 <= 8:
                a = direct_product(a, mk2())
        if 4 <= a.dim <= 8:
            break
    from carnot.algebra import base_change, lower_series
    dims = [s.dim for s in lower_series(a)]
    quotients = [dims[i] - dims[i + 1] for i in range(len(dims) - 1)]
    return base_change(a, dense_invertible(a.dim, rng)), quotients


def random_non_carnot_example(rng):
    """A scrambled series-breaking bracket pattern (l5,5 / l5,6 style)."""
    from carnot.algebra import base_change
    c = QQ(rng.choice([1, 2, 3, -1, -2]))
    kind = rng.randrange(3)
    if kind == 0:       # l5,5 pattern: [X1,X3]=X4, [X1,X4]=X5, [X2,X3]=c X5
        a = Algebra.from_brackets(
            5, {(0, 2, 3): 1, (0, 3, 4): 1, (1, 2, 4): c})
    elif kind == 1:     # l5,6 pattern: filiform string plus [X2,X3]=c X5
        a = Algebra.from_brackets(
            5, {(0, 1, 2): 1, (0, 2, 3): 1, (0, 3, 4): 1, (1, 2, 4): c})
    else:               # dim-6 string plus [X2,X3]=c X6
        a = Algebra.from_brackets(
            6, {(0, 1, 2): 1, (0, 2, 3): 1, (0, 3, 4): 1, (0, 4, 5): 1,
                (1, 2, 5): c})
    return base_change(a, dense_invertible(a.dim, rng))


# ---------------------------------------------------------------------------
# Independent BCH oracle: truncated free associative algebra on two letters.
# Elements are dicts word(tuple of 0/1) -> QQ; the empty word is the unit.


def assoc_mul(u, v, cap):
    out = {}
    for wu, cu in u.items():
        for wv, cv in v.items():
            w = wu + wv
            if len(w) > cap:
                continue
            out[w] = out.get(w, QQ(0)) + cu * cv
    return {w: c for w, c in out.items() if c != 0}


def assoc_exp(letter, cap):
    """exp of a single generator, truncated."""
    out = {(): QQ(1)}
    fact = 1
    for k in range(1, cap + 1):
        fact *= k
        out[(letter,) * k] = QQ(1, fact)
    return out


def assoc_log(u, cap):
    """log(u) for u = 1 + nilpotent, truncated."""
    n = {w: c for w, c in u.items() if w}       # u - 1
    assert u.get((), QQ(0)) == 1
    out = {}
    power = {(): QQ(1)}
    for k in range(1, cap + 1):
        power = assoc_mul(power, n, cap)
        sign = QQ((-1) ** (k + 1), k)
        for w, c in power.items():
            out[w] = out.get(w, QQ(0)) + sign * c
    return {w: c for w, c in out.items() if c != 0}


def bch_associative(cap):
    """log(exp x exp y) in the truncated free associative algebra."""
    z = assoc_mul(assoc_exp(0, cap), assoc_exp(1, cap), cap)
    return assoc_log(z, cap)


def expand_bracket_word(word):
    """Associative expansion of the right-nested bracket of a letter word."""
    out = {word[-1:]: QQ(1)} if len(word) == 1 else None
    if out is not None:
        return out
    inner = expand_bracket_word(word[1:])
    out = {}
    for w, c in inner.items():
        left = (word[0],) + w
        right = w + (word[0],)
        out[left] = out.get(left, QQ(0)) + c
        out[right] = out.get(right, QQ(0)) - c
    return {w: c for w, c in out.items() if c != 0}


def seeded_rng(name):
    return random.Random(f"carnot-tests:{name}")
