"""Text file format for structure-constant algebras (.alg).

Line-oriented, 1-based indices, '#' comments::

    dim 5
    kind lie
    basis X1 X2 X3 X4 X5
    entry 1 3 4 1
    entry 2 3 5 -1/2

``entry i j k v`` means e_i e_j = ... + v e_k.  For kind ``lie`` only one
orientation of each pair is required; the antisymmetric counterpart is
filled in automatically.
"""

from __future__ import annotations

from .algebra import Algebra
from .exactlin import QQ

__all__ = ["ParseError", "load_algebra", "loads_algebra", "dumps_algebra",
           "save_algebra"]


class ParseError(ValueError):
    def __init__(self, message, line=None):
        self.line = line
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"{message}{where}")


def loads_algebra(text, name="<string>"):
    dim = None
    kind = "lie"
    names = None
    entries = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        head, args = parts[0], parts[1:]
        if head == "dim":
            if len(args) != 1 or not args[0].isdigit():
                raise ParseError("dim expects one positive integer", lineno)
            dim = int(args[0])
        elif head == "kind":
            if len(args) != 1 or args[0] not in ("lie", "general"):
                raise ParseError("kind must be 'lie' or 'general'", lineno)
            kind = args[0]
        elif head == "basis":
            names = args
        elif head == "entry":
            if dim is None:
                raise ParseError("entry before dim", lineno)
            if len(args) != 4:
                raise ParseError("entry expects i j k value", lineno)
            try:
                i, j, k = (int(t) for t in args[:3])
            except ValueError:
                raise ParseError("entry indices must be integers",
                                 lineno) from None
            for t in (i, j, k):
                if not 1 <= t <= dim:
                    raise ParseError(f"index {t} out of range 1..{dim}",
                                     lineno)
            try:
                v = QQ(args[3])
            except (ValueError, ZeroDivisionError):
                raise ParseError(f"bad rational {args[3]!r}", lineno) \
                    from None
            key = (i - 1, j - 1, k - 1)
            entries[key] = entries.get(key, QQ(0)) + v
        else:
            raise ParseError(f"unknown directive {head!r}", lineno)
    if dim is None:
        raise ParseError(f"{name}: missing 'dim' line")
    if names is not None and len(names) != dim:
        raise ParseError(f"{name}: basis names count differs from dim")
    return Algebra.from_brackets(dim, entries, kind=kind, names=names)


def load_algebra(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}") from None
    return loads_algebra(text, name=str(path))


def dumps_algebra(a):
    lines = [f"dim {a.dim}", f"kind {a.kind}",
             "basis " + " ".join(a.basis_names)]
    for i in range(a.dim):
        jstart = i + 1 if a.kind == "lie" else 0
        for j in range(jstart, a.dim):
            for k in range(a.dim):
                v = a.sc[i][j][k]
                if v != 0:
                    lines.append(f"entry {i + 1} {j + 1} {k + 1} {v}")
    return "\n".join(lines) + "\n"


def save_algebra(a, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_algebra(a))
