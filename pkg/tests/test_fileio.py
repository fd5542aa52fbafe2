"""The .alg text format: parsing, serialization, round trips, diagnostics."""

import pytest

from carnot.catalog import get, names
from carnot.fileio import (
    ParseError, dumps_algebra, load_algebra, loads_algebra, save_algebra,
)


def test_round_trip_all_catalog_fixtures(tmp_path):
    for n in names():
        a = get(n)
        p = tmp_path / f"{n}.alg"
        save_algebra(a, p)
        b = load_algebra(p)
        assert b.dim == a.dim and b.kind == a.kind
        assert b.sc == a.sc and b.basis_names == a.basis_names


def test_shipped_data_matches_catalog():
    import carnot
    from pathlib import Path
    data = Path(carnot.__file__).parent / "data"
    files = sorted(data.glob("*.alg"))
    assert {f.stem for f in files} == set(names())
    for f in files:
        a = load_algebra(f)
        c = get(f.stem)
        assert a.sc == c.sc and a.basis_names == c.basis_names, f.stem


def test_parse_basic_document():
    a = loads_algebra("""
# a comment
dim 3
kind lie
basis X Y Z
entry 1 2 3 1/2   # trailing comment
""")
    assert a.dim == 3
    assert a.basis_names == ("X", "Y", "Z")
    from carnot.exactlin import QQ
    assert a.sc[0][1][2] == QQ(1, 2)
    assert a.sc[1][0][2] == QQ(-1, 2)       # antisymmetric fill for lie


def test_parse_general_kind_no_fill():
    a = loads_algebra("dim 2\nkind general\nentry 1 1 2 1\n")
    from carnot.exactlin import QQ
    assert a.sc[0][0][1] == QQ(1)
    assert a.sc[0][1][0] == 0


def test_parse_errors_carry_line_numbers():
    cases = [
        ("dim x\n", 1, "dim"),
        ("dim 2\nentry 1 2\n", 2, "entry expects"),
        ("dim 2\nentry 1 2 3 1\n", 2, "out of range"),
        ("dim 2\nentry 1 2 2 1/0\n", 2, "bad rational"),
        ("dim 2\nentry a 2 2 1\n", 2, "indices"),
        ("dim 2\nfoo bar\n", 2, "unknown directive"),
        ("entry 1 1 1 1\n", 1, "entry before dim"),
        ("dim 2\nkind ring\n", 2, "kind"),
    ]
    for text, line, frag in cases:
        with pytest.raises(ParseError) as e:
            loads_algebra(text)
        assert e.value.line == line, text
        assert frag in str(e.value), text


def test_missing_dim_and_bad_basis_count():
    with pytest.raises(ParseError, match="missing 'dim'"):
        loads_algebra("kind lie\n")
    with pytest.raises(ParseError, match="basis names count"):
        loads_algebra("dim 3\nbasis a b\n")


def test_missing_file():
    with pytest.raises(ParseError, match="cannot read"):
        load_algebra("/nonexistent/path.alg")


def test_duplicate_entries_accumulate():
    a = loads_algebra("dim 3\nentry 1 2 3 1\nentry 1 2 3 1/2\n")
    from carnot.exactlin import QQ
    assert a.sc[0][1][2] == QQ(3, 2)


def test_dumps_only_upper_orientation_for_lie():
    text = dumps_algebra(get("heisenberg3"))
    assert "entry 1 2 3 1" in text
    assert "entry 2 1 3 -1" not in text
