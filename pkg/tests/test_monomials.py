"""Squarefree monomials over the grid of variables X[a,i], and their ideals."""

import pytest

from cmgraphs import (
    Monomial,
    MonomialIdeal,
    ParseError,
    RangeError,
    divides,
    minimalize,
    parse_monomial,
    quotient_generator,
    read_ideal,
    write_ideal,
)
from cmgraphs.monomials import slot, sort_gens


def mono(r, n, *variables):
    return Monomial.from_variables(r, n, variables)


def test_slot_layout_is_row_major():
    # X[a,i] occupies bit (a-1)*n + (i-1)
    assert slot(1, 1, 3) == 0
    assert slot(1, 3, 3) == 2
    assert slot(2, 1, 3) == 3
    assert slot(3, 3, 3) == 8


def test_variables_roundtrip():
    m = mono(3, 3, (2, 1), (1, 3), (3, 2))
    assert m.variables() == ((1, 3), (2, 1), (3, 2))
    assert m.degree() == 3
    assert m.has_variable(2, 1)
    assert not m.has_variable(2, 2)


def test_from_variables_bounds():
    with pytest.raises(RangeError):
        mono(2, 2, (3, 1))
    with pytest.raises(RangeError):
        mono(2, 2, (1, 0))


def test_str_and_parse_roundtrip():
    m = mono(2, 3, (1, 2), (2, 3))
    assert str(m) == "X[1,2]*X[2,3]"
    assert parse_monomial(str(m), 2, 3) == m
    unit = Monomial(2, 3, 0)
    assert str(unit) == "1"
    assert parse_monomial("1", 2, 3) == unit


def test_parse_monomial_tolerates_whitespace():
    assert parse_monomial("X[ 1 , 2 ] * X[2,1]", 2, 2) == mono(2, 2, (1, 2), (2, 1))


def test_parse_monomial_rejects_bad_input():
    with pytest.raises(ParseError):
        parse_monomial("X[1,2]+X[2,1]", 2, 2)
    with pytest.raises(ParseError):
        parse_monomial("X[1,1]*X[1,1]", 2, 2)  # squarefree: no repeats
    with pytest.raises(ParseError):
        parse_monomial("X[3,1]", 2, 2)  # index escapes the ring


def test_divides_and_quotient():
    u = mono(2, 2, (1, 1))
    v = mono(2, 2, (1, 1), (2, 1))
    assert divides(u, v)
    assert not divides(v, u)
    assert quotient_generator(v, u) == mono(2, 2, (2, 1))


def test_lcm_is_union_of_supports():
    u = mono(2, 2, (1, 1), (2, 2))
    v = mono(2, 2, (1, 2), (2, 2))
    assert u.lcm(v) == mono(2, 2, (1, 1), (1, 2), (2, 2))


def test_sort_is_degree_then_variable_sequence():
    # masks would order these the other way around: the bit pattern of
    # X[1,1]*X[2,3] is larger than that of X[1,2]*X[1,3]
    a = mono(2, 3, (1, 1), (2, 3))
    b = mono(2, 3, (1, 2), (1, 3))
    assert a.mask > b.mask
    assert sort_gens([b, a]) == (a, b)
    c = mono(2, 3, (1, 1))
    assert sort_gens([a, b, c]) == (c, a, b)


def test_minimalize_drops_multiples():
    gens = [
        mono(2, 2, (1, 1)),
        mono(2, 2, (1, 1), (2, 1)),
        mono(2, 2, (2, 2)),
        mono(2, 2, (2, 2)),
    ]
    ideal = minimalize(gens)
    assert ideal.gens == (mono(2, 2, (1, 1)), mono(2, 2, (2, 2)))


def test_minimalize_unit_and_zero():
    unit = minimalize([Monomial(1, 2, 0), mono(1, 2, (1, 1))])
    assert unit.is_unit()
    assert unit.gens == (Monomial(1, 2, 0),)
    zero = minimalize([], r=1, n=2)
    assert zero.is_zero()
    with pytest.raises(RangeError):
        minimalize([])  # ring dimensions unknown


def test_ideal_membership():
    ideal = MonomialIdeal(2, 2, (mono(2, 2, (1, 1)), mono(2, 2, (2, 1), (2, 2))))
    assert ideal.contains_monomial(mono(2, 2, (1, 1), (2, 2)))
    assert not ideal.contains_monomial(mono(2, 2, (2, 2)))
    assert not ideal.contains_monomial(Monomial(2, 2, 0))


def test_ideal_file_roundtrip(tmp_path):
    ideal = minimalize([mono(2, 3, (1, 1), (2, 2)), mono(2, 3, (1, 3))])
    path = tmp_path / "ideal.txt"
    write_ideal(path, ideal)
    text = path.read_text()
    assert "# ring: r=2 n=3" in text
    assert read_ideal(path, 2, 3) == ideal


def test_read_ideal_skips_comments_and_rejects_garbage(tmp_path):
    path = tmp_path / "ideal.txt"
    path.write_text("# comment\nX[1,1]*X[2,2]\n\nX[1,3]\n")
    ideal = read_ideal(path, 2, 3)
    assert len(ideal.gens) == 2
    path.write_text("X[1,1)*X[2,2]\n")
    with pytest.raises(ParseError):
        read_ideal(path, 2, 3)
