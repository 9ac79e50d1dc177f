"""Spectrum points, seminorm axioms, rational subsets."""

import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from analine.berkovich import (AlgebraDescriptor, RationalSubsetSpec,
                               SpectrumPoint, SqrtValue, evaluation_seminorm,
                               gelfand_points, rational_membership,
                               seminorm_axiom_check)
from analine.errors import UnitIdealError
from analine.polynomials import (ONE, T, from_ints, parse_poly,
                                 squarefree_part)
from analine.scalars import ExactComplex


def test_quadratic_spectrum():
    spec = gelfand_points(AlgebraDescriptor((from_ints(1, 0, 1),)))
    assert spec.kind == "points" and len(spec.roots) == 2
    for enc in spec.roots:
        assert enc.radius <= 1e-10
        diff_i = (enc.point.z - ExactComplex.of(0, 1)).abs2()
        diff_mi = (enc.point.z - ExactComplex.of(0, -1)).abs2()
        assert min(diff_i, diff_mi) < Fraction(1, 10**16)


def test_single_root_is_exact():
    spec = gelfand_points(AlgebraDescriptor((T,)))
    assert len(spec.roots) == 1
    assert spec.roots[0].point.z == ExactComplex.of(0)
    assert spec.roots[0].radius == 0.0


def test_free_algebra_is_the_plane():
    assert gelfand_points(AlgebraDescriptor(())).kind == "plane"
    assert gelfand_points(AlgebraDescriptor((parse_poly("0:0"),))).kind == "plane"


def test_inconsistent_algebra_is_empty():
    spec = gelfand_points(AlgebraDescriptor((ONE,)))
    assert spec.kind == "empty" and not spec.roots


def test_relations_list_collapses_to_gcd():
    # (T^2 - 1, T - 1) generate (T - 1)
    A = AlgebraDescriptor((from_ints(-1, 0, 1), from_ints(-1, 1)))
    spec = gelfand_points(A)
    assert len(spec.roots) == 1
    assert (spec.roots[0].point.z - ExactComplex.of(1)).abs2() == 0


@given(st.integers(min_value=0, max_value=30))
def test_random_degree6_roots_verified_by_evaluation(seed):
    rng = random.Random(seed)
    p = from_ints(*[rng.randint(-5, 5) for _ in range(6)] + [1])
    spec = gelfand_points(AlgebraDescriptor((p,)))
    assert len(spec.roots) == squarefree_part(p).degree
    for enc in spec.roots:
        assert enc.residual < 1e-8


def test_multiplicity_collapsed():
    p = from_ints(-1, 1)
    spec = gelfand_points(AlgebraDescriptor((p * p * p,)))
    assert len(spec.roots) == 1


# -- seminorm axioms -------------------------------------------------------------

def test_evaluation_seminorm_passes():
    sem = evaluation_seminorm(SpectrumPoint(ExactComplex.of(2)))
    sample = [ONE, T, from_ints(1, 1), T * from_ints(1, 1)]
    report = seminorm_axiom_check({f: sem(f) for f in sample})
    assert report.passed and report.checked_pairs > 0


def test_degree_candidate_fails_multiplicativity():
    # the map deg(f)+1 multiplies 2*2 but lands on 3 at T*T
    cand = {T: 2.0, T * T: 3.0}
    report = seminorm_axiom_check(cand)
    assert not report.passed
    assert any(v.axiom == "multiplicativity" for v in report.violations)


def test_zero_map_vacuously_multiplicative():
    from analine.polynomials import ZERO
    cand = {ONE: 1.0, T: 0.0}
    assert seminorm_axiom_check(cand).passed
    bad = {ZERO: 0.5}
    assert not seminorm_axiom_check(bad).passed


def test_reference_norm_bound_checked_when_supplied():
    sem = evaluation_seminorm(SpectrumPoint(ExactComplex.of(4)))
    cand = {T: sem(T)}
    ok = seminorm_axiom_check(cand, reference_norm=lambda f: 100.0)
    assert ok.passed
    bad = seminorm_axiom_check(cand, reference_norm=lambda f: 1.0)
    assert any(v.axiom == "bounded" for v in bad.violations)


def test_sqrt_value_triangle_decision_is_exact():
    # sqrt(2) <= 1 + 1 but sqrt(5) > 2 * 1
    assert SqrtValue(Fraction(2)).triangle_le(SqrtValue(Fraction(1)),
                                              SqrtValue(Fraction(1)))
    assert not SqrtValue(Fraction(5)).triangle_le(SqrtValue(Fraction(1)),
                                                  SqrtValue(Fraction(1)))


@given(st.integers(min_value=0, max_value=25))
def test_evaluation_axioms_random_pairs_exact(seed):
    rng = random.Random(seed)
    z = ExactComplex.of(Fraction(rng.randint(-9, 9), rng.randint(1, 4)),
                        Fraction(rng.randint(-9, 9), rng.randint(1, 4)))
    a = from_ints(*[rng.randint(-9, 9) for _ in range(rng.randint(1, 9))])
    b = from_ints(*[rng.randint(-9, 9) for _ in range(rng.randint(1, 9))])
    va, vb = a.eval(z).abs2(), b.eval(z).abs2()
    assert (a * b).eval(z).abs2() == va * vb
    assert SqrtValue((a + b).eval(z).abs2()).triangle_le(SqrtValue(va),
                                                         SqrtValue(vb))


# -- rational subsets --------------------------------------------------------------

def test_disc_membership():
    spec = RationalSubsetSpec((T,), ONE)
    assert rational_membership(
        SpectrumPoint(ExactComplex.of(Fraction(1, 2))), spec)
    assert not rational_membership(SpectrumPoint(ExactComplex.of(2)), spec)


def test_boundary_equality_case():
    spec = RationalSubsetSpec((ONE,), T)
    for z in (ExactComplex.of(0, 1), ExactComplex.of(-1),
              ExactComplex.of(Fraction(3, 5), Fraction(4, 5))):
        assert z.abs2() == 1
        assert rational_membership(SpectrumPoint(z), spec)
    assert not rational_membership(
        SpectrumPoint(ExactComplex.of(Fraction(1, 2))), spec)


def test_unit_ideal_invariant_enforced():
    with pytest.raises(UnitIdealError):
        RationalSubsetSpec((T,), T * T)
    RationalSubsetSpec((T, from_ints(-1, 1)), ONE)


@given(st.fractions(min_value=-2, max_value=2, max_denominator=16),
       st.fractions(min_value=-2, max_value=2, max_denominator=16))
def test_disc_subset_agrees_with_unit_modulus_predicate(x, y):
    z = ExactComplex(x, y)
    spec = RationalSubsetSpec((T,), ONE)
    assert rational_membership(SpectrumPoint(z), spec) == (z.abs2() <= 1)
