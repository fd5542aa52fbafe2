"""Built-in fixture algebras.

Each entry is a zero-argument constructor returning a fresh Algebra.  The
catalog doubles as the source for the shipped ``data/*.alg`` files and the
regression suite.
"""

from __future__ import annotations

from .algebra import Algebra

__all__ = ["CATALOG", "get", "names"]


def heisenberg3():
    """3-dim Heisenberg: [X1,X2]=X3."""
    return Algebra.from_brackets(3, {(0, 1, 2): 1},
                                 names=["X1", "X2", "X3"])


def l53():
    """Filiform string of length 3 times a line: [X1,X3]=X4, [X1,X4]=X5.

    This is the Carnot-graded algebra associated to l55; it splits off the
    abelian factor generated by X2.
    """
    return Algebra.from_brackets(
        5, {(0, 2, 3): 1, (0, 3, 4): 1},
        names=["X1", "X2", "X3", "X4", "X5"])


def l55():
    """5-dim class-3 algebra [X1,X3]=X4, [X1,X4]=X5, [X2,X3]=X5 (not Carnot)."""
    return Algebra.from_brackets(
        5, {(0, 2, 3): 1, (0, 3, 4): 1, (1, 2, 4): 1},
        names=["X1", "X2", "X3", "X4", "X5"])


def l56():
    """5-dim class-4 algebra [X1,Xi]=X_{i+1} (i=2,3,4), [X2,X3]=X5."""
    return Algebra.from_brackets(
        5, {(0, 1, 2): 1, (0, 2, 3): 1, (0, 3, 4): 1, (1, 2, 4): 1},
        names=["X1", "X2", "X3", "X4", "X5"])


def l57():
    """5-dim filiform [X1,Xi]=X_{i+1} (i=2,3,4): the Carnot companion of l56."""
    return Algebra.from_brackets(
        5, {(0, 1, 2): 1, (0, 2, 3): 1, (0, 3, 4): 1},
        names=["X1", "X2", "X3", "X4", "X5"])


def remdl5():
    """[X1,X2]=X3, [X1,X3]=X4, X5 a free direct factor.

    Carnot, but the complement span(X1,X2,X5+X3) of the derived subalgebra
    is not the degree-1 part of any Carnot grading.
    """
    return Algebra.from_brackets(
        5, {(0, 1, 2): 1, (0, 2, 3): 1},
        names=["X1", "X2", "X3", "X4", "X5"])


def assoc4():
    """4-dim commutative associative nilpotent, not Carnot.

    Basis (x,y,z,w), products x*x=z, x*z=z*x=w, y*y=w.
    """
    e = {(0, 0, 2): 1, (0, 2, 3): 1, (2, 0, 3): 1, (1, 1, 3): 1}
    return Algebra.from_brackets(4, e, kind="general",
                                 names=["x", "y", "z", "w"])


def nilder4():
    """4-dim nilpotent algebra in which every self-derivation is nilpotent.

    Basis (x1..x4), products x1*x1=x2, x1*x2=x3, x1*x3=x4, x2*x1=x4.
    """
    e = {(0, 0, 1): 1, (0, 1, 2): 1, (0, 2, 3): 1, (1, 0, 3): 1}
    return Algebra.from_brackets(4, e, kind="general",
                                 names=["x1", "x2", "x3", "x4"])


def g12():
    """12-dim class-8 Lie algebra with maximal split torus of rank exactly 1.

    Its (canonical) weight multiset is {-1, 1, 2, 3, 4, 5, 5, 6, 7, 8, 9}:
    no zero weight (so it admits an invertible diagonalizable derivation)
    and mixed signs (so no weight is positive, hence no nontrivial
    non-negative grading, hence the associated lattices are cohopfian).
    """
    names = ["x1", "x2", "x3", "x4", "x5", "x6", "w",
             "z5", "z6", "z7", "z8", "z9"]
    ix = {n: i for i, n in enumerate(names)}
    raw = {
        ("x1", "x2"): {"x3": 1},
        ("x1", "x3"): {"x4": 1},
        ("x1", "x4"): {"x5": 1},
        ("x2", "x3"): {"x5": 1, "z5": 4},
        ("x1", "x5"): {"z6": 1},
        ("x2", "x4"): {"z6": 5},
        ("x3", "x4"): {"z7": 2},
        ("x2", "x5"): {"z7": 3},
        ("x1", "x6"): {"z7": 1},
        ("x3", "x5"): {"z8": 2},
        ("x4", "x5"): {"z9": 1},
        ("w", "x6"): {"x5": 1, "z5": -1},
        ("x1", "z5"): {"z6": 1},
        ("x1", "z6"): {"z7": 1},
        ("x1", "z7"): {"z8": 1},
        ("x1", "z8"): {"z9": 1},
        ("x2", "z5"): {"z7": 3},
        ("x2", "z6"): {"z8": 1},
        ("x3", "z5"): {"z8": 2},
        ("x3", "z6"): {"z9": 1},
        ("x4", "z5"): {"z9": 1},
    }
    entries = {}
    for (a, b), tgt in raw.items():
        for t, v in tgt.items():
            entries[(ix[a], ix[b], ix[t])] = v
    return Algebra.from_brackets(12, entries, names=names)


def h12():
    """12-dim filiform Lie algebra with trivial maximal split torus.

    The chain [e1,ei]=e_{i+1} is deformed by two homogeneous cocycle
    families of degree shifts 3 and 5; the incompatible shifts force every
    derivation to be nilpotent (rank 0, proven), so the algebra is
    characteristically nilpotent and its lattices are cohopfian.
    """
    shift3 = {(2, 3): 18, (2, 4): 18, (2, 5): 12, (2, 6): 6, (2, 7): 2,
              (2, 9): -1, (3, 4): 6, (3, 5): 6, (3, 6): 4, (3, 7): 2,
              (3, 8): 1, (4, 5): 2, (4, 6): 2, (4, 7): 1, (5, 6): 1}
    shift5 = {(2, 3): 6, (2, 4): 6, (2, 5): 4, (2, 6): 2, (2, 7): 1,
              (3, 4): 2, (3, 5): 2, (3, 6): 1, (4, 5): 1}
    entries = {}
    for i in range(2, 12):
        entries[(0, i - 1, i)] = 1
    for (i, j), v in shift3.items():
        entries[(i - 1, j - 1, i + j)] = v
    for (i, j), v in shift5.items():
        key = (i - 1, j - 1, i + j + 2)
        entries[key] = entries.get(key, 0) + v
    return Algebra.from_brackets(12, entries,
                                 names=[f"e{i}" for i in range(1, 13)])


def g7102():
    """7-dim Lie algebra with Cartan weights {0,1,2,3}, multiplicities
    (1,3,2,1): weakly dis-cohopfian but not dis-cohopfian lattices."""
    names = ["Z1", "A2", "A3", "A4", "B5", "B6", "C7"]
    ix = {n: i for i, n in enumerate(names)}
    raw = {
        ("Z1", "A2"): {"A3": 1},
        ("Z1", "A3"): {"A4": 1},
        ("A2", "A3"): {"B5": 1},
        ("Z1", "B5"): {"B6": 1},
        ("A2", "A4"): {"B6": 1},
        ("A2", "B5"): {"C7": 1},
        ("A2", "B6"): {"C7": 1},
        ("A3", "B5"): {"C7": -1},
    }
    entries = {}
    for (a, b), tgt in raw.items():
        for t, v in tgt.items():
            entries[(ix[a], ix[b], ix[t])] = v
    return Algebra.from_brackets(7, entries, names=names)


def freenil23():
    """Free nilpotent Lie algebra of class 3 on 2 generators (dim 5)."""
    return Algebra.from_brackets(
        5, {(0, 1, 2): 1, (0, 2, 3): 1, (1, 2, 4): 1},
        names=["X1", "X2", "X12", "X112", "X212"])


CATALOG = {
    "heisenberg3": heisenberg3,
    "l53": l53,
    "l55": l55,
    "l56": l56,
    "l57": l57,
    "remdl5": remdl5,
    "assoc4": assoc4,
    "nilder4": nilder4,
    "g12": g12,
    "h12": h12,
    "g7102": g7102,
    "freenil23": freenil23,
}


def names():
    return sorted(CATALOG)


def get(name):
    try:
        return CATALOG[name]()
    except KeyError:
        raise KeyError(f"unknown catalog algebra {name!r}; "
                       f"available: {', '.join(names())}") from None
