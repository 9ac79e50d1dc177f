"""Exact polynomial algebra: Euclid, Bezout, squarefree parts, orders."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from analine.errors import ParseError
from analine.polynomials import (ONE, T, ZERO, Poly, bezout_family, constant,
                                 divmod_poly, format_poly, from_ints,
                                 gcd_poly, generates_unit_ideal, ord_at,
                                 parse_poly, squarefree_part, xgcd_poly)
from analine.scalars import ExactComplex

small_q = st.fractions(min_value=-5, max_value=5, max_denominator=4)
polys = st.builds(
    lambda cs: Poly(tuple(cs)) + ZERO,
    st.lists(st.builds(ExactComplex, small_q, small_q), max_size=6))


@given(polys, polys)
def test_divmod_identity(a, b):
    if b.is_zero():
        return
    q, r = divmod_poly(a, b)
    assert q * b + r == a
    assert r.degree < b.degree


@given(polys, polys)
def test_gcd_divides_both(a, b):
    g = gcd_poly(a, b)
    if g.is_zero():
        assert a.is_zero() and b.is_zero()
        return
    assert divmod_poly(a, g)[1].is_zero()
    assert divmod_poly(b, g)[1].is_zero()


@given(polys, polys)
def test_xgcd_combination(a, b):
    g, u, v = xgcd_poly(a, b)
    assert u * a + v * b == g


def test_bezout_family_certificate():
    fam = [T, from_ints(-1, 1)]
    cs = bezout_family(fam)
    total = ZERO
    for c, f in zip(cs, fam):
        total = total + c * f
    assert total == ONE
    assert bezout_family([T, T * T]) is None
    assert generates_unit_ideal([T, from_ints(-1, 1), from_ints(5)])


def test_squarefree_part_collapses_multiplicity():
    p = T * T * from_ints(-1, 1)                # T^2 (T - 1)
    assert squarefree_part(p) == (T * from_ints(-1, 1)).monic()
    q = from_ints(1, 2, 1)                      # (T+1)^2
    assert squarefree_part(q) == from_ints(1, 1)


@given(polys, st.integers(min_value=0, max_value=3))
def test_ord_at_counts_attached_factors(p, k):
    if p.is_zero():
        return
    z = ExactComplex.of(Fraction(1, 2), -2)
    base = ord_at(p, z)
    factor = Poly((-z, ExactComplex.of(1)))
    shifted = p
    for _ in range(k):
        shifted = shifted * factor
    assert ord_at(shifted, z) == base + k


def test_ord_at_examples():
    assert ord_at(from_ints(0, 0, 1, 1), ExactComplex.of(0)) == 2
    assert ord_at(ONE, ExactComplex.of(3)) == 0
    assert ord_at(ZERO, ExactComplex.of(0)) is None


def test_parse_poly_rejects_negative_degrees():
    with pytest.raises(ParseError):
        parse_poly("-1:1")


@given(polys)
def test_poly_literal_roundtrip(p):
    assert parse_poly(format_poly(p)) == p
    assert parse_poly(format_poly(p, compact=True)) == p


def test_eval_horner():
    p = from_ints(1, 0, 1)
    assert p.eval(ExactComplex.of(0, 1)).is_zero()
    assert p.eval_complex(2j) == -3 + 0j
    assert constant(7).eval(ExactComplex.of(100)) == ExactComplex.of(7)
