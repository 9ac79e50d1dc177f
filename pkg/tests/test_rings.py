"""The analytic rings: norms, splitting, division, inversion, pairing."""

import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from analine.errors import DivisionPreconditionError, SupportError
from analine.rings import (NotEqual, divide_by_t_minus_u,
                           division_bound, dual_pairing, dual_pairing_bound,
                           geometric_holomorphic, holomorphic, invert_variable,
                           laurent_split, mul_by_t_minus_u, outer_tail,
                           overconvergent, polynomial_element,
                           random_series_poly, reassemble, recover_polynomial,
                           ring_norm, series_poly, strictness_certificate,
                           two_sided)
from analine.scalars import ExactComplex
from analine.series import add, make_series, parse_series

small_q = st.fractions(min_value=-6, max_value=6, max_denominator=4)
scalars = st.builds(ExactComplex, small_q, small_q)


# -- ring norms ----------------------------------------------------------------

def test_outer_norm_single_negative_term():
    x = outer_tail(parse_series("-1:1"), Fraction(1, 2))
    assert ring_norm(x).lo == 2


def test_outer_norm_max_of_sup_and_tail():
    # direct evaluation of the max/sum formula: max(|3|, |1| * (1/2)^-1)
    x = outer_tail(parse_series("0:3 -1:1"), Fraction(1, 2))
    assert ring_norm(x).lo == max(Fraction(3), Fraction(2))
    y = outer_tail(parse_series("0:1 -1:3"), Fraction(1, 2))
    assert ring_norm(y).lo == max(Fraction(1), Fraction(6))


def test_overconvergent_norm():
    x = overconvergent(parse_series("0:1 1:1"), 2)
    assert ring_norm(x).lo == 3


def test_two_sided_norm_is_sum_of_parts():
    h = two_sided(make_series({-2: 1, 0: 2, 3: 1}, 2), 2, Fraction(1, 2))
    # 2*2^0 + 1*2^3 for the inner part, 1*(1/2)^-2 for the outer part
    assert ring_norm(h).lo == 10 + 4


def test_polynomial_and_holomorphic_norms_need_radius():
    p = polynomial_element(parse_series("0:1 1:1"))
    with pytest.raises(ValueError):
        ring_norm(p)
    assert ring_norm(p, r=3).lo == 4
    h = geometric_holomorphic(12)
    with pytest.raises(ValueError):
        ring_norm(h)
    with pytest.raises(ValueError):
        ring_norm(h, r=2)


def test_geometric_holomorphic_norm_is_exact_at_every_truncation():
    # sum_n r^n = 1/(1-r); the tail certificate restores the omitted mass
    for terms in (1, 3, 8, 30):
        h = geometric_holomorphic(terms)
        nv = ring_norm(h, r=Fraction(1, 2))
        assert nv.lo == nv.hi == 2
        nv = ring_norm(h, r=Fraction(3, 4))
        assert nv.lo == 4


def test_witness_invariants():
    with pytest.raises(SupportError):
        overconvergent(parse_series("0:1"), Fraction(1, 2))
    with pytest.raises(SupportError):
        overconvergent(parse_series("-1:1"), 2)
    with pytest.raises(SupportError):
        outer_tail(parse_series("0:1"), 2)


# -- splitting and recovery -------------------------------------------------------

def test_split_sign_convention():
    h = two_sided(parse_series("1:1 0:1 -1:1", radius=2), 2, Fraction(1, 2))
    f, g = laurent_split(h)
    assert f.series.same_series(parse_series("0:1 1:1"))
    assert g.series.same_series(parse_series("-1:-1"))


def test_split_of_polynomial_has_zero_outer_part():
    h = two_sided(parse_series("0:2 3:1", radius=2), 2, Fraction(1, 2))
    f, g = laurent_split(h)
    assert g.series.is_zero()
    assert f.series.same_series(h.series)


@given(st.dictionaries(st.integers(min_value=-10, max_value=10), scalars,
                       min_size=1, max_size=12))
def test_split_reassembles_and_norms_bounded(coeffs):
    r, s = Fraction(3, 2), Fraction(2, 3)
    h = two_sided(make_series(coeffs, r), r, s)
    f, g = laurent_split(h)
    # coefficientwise reassembly oracle
    back = reassemble(f, g)
    assert back.series.same_series(h.series)
    nh = ring_norm(h)
    assert ring_norm(f).hi <= nh.hi
    assert ring_norm(g).hi <= nh.hi


def test_recover_polynomial_examples():
    r, s = 2, Fraction(1, 2)
    f = overconvergent(parse_series("0:1 1:1", radius=r), r)
    g2 = overconvergent(parse_series("0:1 1:1", radius=r), r)
    got = recover_polynomial(f, g2)
    assert got.series.same_series(f.series)

    g3 = outer_tail(parse_series("-1:1", radius=s), s)
    bad = recover_polynomial(f, g3)
    assert isinstance(bad, NotEqual) and bad.first_degree == -1
    assert not bad


@given(st.dictionaries(st.integers(min_value=0, max_value=9), scalars,
                       max_size=8))
def test_recover_polynomial_roundtrip(coeffs):
    p = make_series(coeffs, 2)
    a = overconvergent(p, 2)
    b = overconvergent(p, 2)
    got = recover_polynomial(a, b)
    assert got.series.same_series(p)


def test_recover_detects_first_differing_degree():
    a = overconvergent(parse_series("0:1 2:5", radius=2), 2)
    b = overconvergent(parse_series("0:1 2:5 4:1", radius=2), 2)
    got = recover_polynomial(a, b)
    assert isinstance(got, NotEqual) and got.first_degree == 4


# -- division by (T - U) ------------------------------------------------------------

def test_divide_linear_fixture():
    b = series_poly([{1: 1}, {0: -1}], Fraction(1, 2))     # T - U
    c = divide_by_t_minus_u(b)
    assert len(c.entries) == 1
    assert c.entries[0].same_series(make_series({0: 1}, Fraction(1, 2)))
    # norm comparison from the worked example: ||c|| = 1 <= (1+r)/(1-r)
    r = Fraction(1, 2)
    assert c.norm().hi <= (1 + r) / (1 - r)


def test_divide_difference_of_squares():
    b = series_poly([{2: 1}, {}, {0: -1}], Fraction(1, 2))     # T^2 - U^2
    c = divide_by_t_minus_u(b)
    assert c.entries[0].same_series(make_series({1: 1}, Fraction(1, 2)))
    assert c.entries[1].same_series(make_series({0: 1}, Fraction(1, 2)))


def test_divide_precondition_failure_carries_residual():
    b = series_poly([{0: 1}, {0: 1}], Fraction(1, 2))      # 1 + U, not in kernel
    with pytest.raises(DivisionPreconditionError) as err:
        divide_by_t_minus_u(b)
    assert err.value.residual_norm.value > 0


def test_divide_formula_matches_direct_sum():
    # c_i = -(sum_{k>i} T^(k-i-1) b_k), expanded by hand for a cubic
    r = Fraction(1, 3)
    rng = random.Random(11)
    c_prime = random_series_poly(rng, r, max_degree=3)
    b = mul_by_t_minus_u(c_prime)
    c = divide_by_t_minus_u(b)
    n = b.degree - 1
    for i in range(n + 1):
        acc = make_series({}, r)
        for k in range(i + 1, n + 2):
            acc = add(acc, b.entries[k].shift(k - i - 1))
        want = make_series({}, r) if acc.is_zero() else acc
        got_i = c.entries[i]
        assert got_i.same_series(
            make_series({d: -want.coeff(d)
                         for d in range(want.low, want.high + 1)}, r))


@given(st.integers(min_value=0, max_value=40))
def test_divide_multiplyback_and_bound_randomized(seed):
    rng = random.Random(seed)
    r = Fraction(rng.randint(1, 9), 10)
    c_prime = random_series_poly(rng, r, max_degree=20, t_degree=4)
    b = mul_by_t_minus_u(c_prime)
    c = divide_by_t_minus_u(b)
    back = mul_by_t_minus_u(c)
    assert all(x.same_series(y) for x, y in zip(back.entries, b.entries))
    assert all(x.same_series(y) for x, y in zip(c.entries, c_prime.entries))
    assert c.norm().hi <= division_bound(r) * b.norm().lo


def test_certificate_bounds_and_vacuous_run():
    rep = strictness_certificate(Fraction(1, 2), trials=50, max_degree=10,
                                 seed=5)
    assert rep.passed and rep.max_ratio <= 2
    rep9 = strictness_certificate(Fraction(9, 10), trials=50, max_degree=10,
                                  seed=5)
    assert rep9.passed and rep9.max_ratio <= 10
    empty = strictness_certificate(Fraction(1, 2), trials=0, max_degree=10)
    assert empty.passed and empty.vacuous


def test_certificate_report_fields():
    rep = strictness_certificate(Fraction(1, 2), trials=3, max_degree=5, seed=1)
    t = rep.trials[0]
    assert t.bound == 2.0
    assert t.ratio <= t.bound
    assert t.certified and t.exact_roundtrip


# -- inversion ------------------------------------------------------------------------

def test_invert_examples():
    x = overconvergent(parse_series("0:1 1:1", radius=2), 2)
    y = invert_variable(x)
    assert y.ring == "outer_tail" and y.witness == Fraction(1, 2)
    assert y.series.same_series(parse_series("0:1 -1:1"))
    const = overconvergent(parse_series("0:5", radius=2), 2)
    assert invert_variable(const).series.same_series(parse_series("0:5"))


@given(st.dictionaries(st.integers(min_value=0, max_value=10), scalars,
                       min_size=1, max_size=8))
def test_invert_is_involution(coeffs):
    x = overconvergent(make_series(coeffs, 2), 2)
    back = invert_variable(invert_variable(x))
    assert back.ring == x.ring
    assert back.witness == x.witness
    assert back.series.same_series(x.series)


def test_invert_norm_report():
    x = overconvergent(parse_series("0:1 1:1", radius=2), 2)
    y = invert_variable(x)
    # norm moves from sum to max/sum normalization
    assert ring_norm(x).lo == 3
    assert ring_norm(y).lo == max(Fraction(1), Fraction(2))


def test_invert_rejects_mixed_outer_support():
    y = outer_tail(parse_series("1:1 -1:1", radius=Fraction(1, 2)),
                   Fraction(1, 2))
    with pytest.raises(SupportError):
        invert_variable(y)


# -- duality pairing ------------------------------------------------------------------

def test_pairing_examples():
    r = Fraction(1, 2)
    g = outer_tail(parse_series("-1:1", radius=r), r)
    one = parse_series("0:1", radius=r)
    t = parse_series("1:1", radius=r)
    assert dual_pairing(one, g) == ExactComplex.of(1)
    assert dual_pairing(t, g) == ExactComplex.of(0)


def test_pairing_is_residue_coefficient():
    # the pairing equals the coefficient of T^-1 in f*g
    r = Fraction(1, 2)
    f = parse_series("0:2 1:3 2:-1", radius=r)
    g = outer_tail(parse_series("-1:5 -2:7 -3:1/2", radius=r), r)
    from analine.series import mul
    prod = mul(f, g.series)
    want = prod.coeff(-1)
    assert dual_pairing(f, g) == want


def test_pairing_support_violations():
    r = Fraction(1, 2)
    with pytest.raises(SupportError):
        dual_pairing(parse_series("0:1", radius=r),
                     outer_tail(parse_series("0:1 -1:1", radius=r), r))
    with pytest.raises(ValueError):
        dual_pairing(parse_series("0:1", radius=Fraction(1, 4)),
                     outer_tail(parse_series("-1:1", radius=r), r))


@given(st.dictionaries(st.integers(min_value=0, max_value=8), scalars,
                       max_size=6),
       st.dictionaries(st.integers(min_value=-8, max_value=-1), scalars,
                       min_size=1, max_size=6),
       st.sampled_from([Fraction(1, 2), Fraction(3, 4)]))
def test_pairing_bound_by_term_oracle(fc, gc, r):
    f = make_series(fc, r)
    g = outer_tail(make_series(gc, r), r)
    value = dual_pairing(f, g)
    # term-by-term triangle-inequality oracle
    oracle_hi = Fraction(0)
    for i, a in enumerate(f.coeffs):
        n = f.low + i
        b = g.series.coeff(-(n + 1))
        oracle_hi += (a * b).abs_interval().hi
    assert value.abs_interval().lo <= oracle_hi
    bound = dual_pairing_bound(f, g)
    # the oracle itself obeys the advertised bound
    assert oracle_hi <= bound.hi + Fraction(1, 2**40)
    # no certified violation of the pairing bound
    assert value.abs_interval().lo <= bound.hi


@given(st.dictionaries(st.integers(min_value=0, max_value=6), scalars,
                       max_size=5),
       st.dictionaries(st.integers(min_value=0, max_value=6), scalars,
                       max_size=5),
       st.dictionaries(st.integers(min_value=-6, max_value=-1), scalars,
                       min_size=1, max_size=5),
       scalars, scalars)
def test_pairing_bilinear(fc1, fc2, gc, k1, k2):
    r = Fraction(1, 2)
    f1, f2 = make_series(fc1, r), make_series(fc2, r)
    g = outer_tail(make_series(gc, r), r)
    from analine.series import scale
    lhs = dual_pairing(add(scale(f1, k1), scale(f2, k2)), g)
    rhs = k1 * dual_pairing(f1, g) + k2 * dual_pairing(f2, g)
    assert lhs == rhs


def test_holomorphic_custom_tail_cert():
    trunc = make_series({0: 1, 1: 1}, 1)
    h = holomorphic(trunc, tail_cert=lambda r: Fraction(0))
    assert ring_norm(h, r=Fraction(1, 2)).hi == Fraction(3, 2)


def test_ring_tagged_fixture_literals():
    from analine.rings import parse_ring_element
    x = parse_ring_element("0:1 1:1 ring=overconvergent witness=2")
    assert x.ring == "overconvergent" and ring_norm(x).lo == 3
    g = parse_ring_element("-1:1 ring=outer witness=1/2")
    assert ring_norm(g).lo == 2
    h = parse_ring_element("1:1 0:1 -1:1 ring=two_sided witness=2 inner=1/2")
    f, out = laurent_split(h)
    assert f.series.same_series(parse_series("0:1 1:1"))
    p = parse_ring_element("0:1 2:1 ring=poly")
    assert ring_norm(p, r=2).lo == 5
    with pytest.raises(ValueError):
        parse_ring_element("0:1")
    with pytest.raises(ValueError):
        parse_ring_element("0:1 ring=outer")
