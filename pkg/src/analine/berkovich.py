"""Evaluation-point model of the spectrum of finitely presented algebras.

For a discrete finitely generated complex algebra, the space of bounded
multiplicative seminorms coincides with the set of evaluation points
(Gelfand--Mazur), so the spectrum of C[T]/(p) is the root set of p.
Roots are located by companion-matrix eigenvalues in floating point and
then polished by exact Newton steps until a certified enclosure radius
of deg * |p(z)/p'(z)| falls below the requested tolerance.

Seminorm axioms are checked exactly for evaluation points by working
with squared moduli, which stay rational; arbitrary real-valued
candidates are checked with a float tolerance instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping

import numpy as np

from .errors import UnitIdealError
from .polynomials import (Poly, format_poly, gcd_poly,
                          generates_unit_ideal, squarefree_part)
from .scalars import ExactComplex, exact_from_complex


@dataclass(frozen=True)
class AlgebraDescriptor:
    """A one-variable algebra C[T]/(relations), principal-ideal case."""

    relations: tuple[Poly, ...] = ()

    def principal_generator(self) -> Poly:
        """gcd of the relation list (zero for the free algebra)."""
        g = Poly(())
        for p in self.relations:
            g = gcd_poly(g, p)
        return g


@dataclass(frozen=True)
class SpectrumPoint:
    """A multiplicative seminorm given by evaluation at a complex point."""

    z: ExactComplex

    def seminorm_sq(self, f: Poly) -> Fraction:
        """|f(z)|^2, exact."""
        return f.eval(self.z).abs2()

    def seminorm(self, f: Poly) -> float:
        return math.sqrt(float(self.seminorm_sq(f)))


@dataclass(frozen=True)
class RootEnclosure:
    point: SpectrumPoint
    radius: float
    residual: float


@dataclass(frozen=True)
class GelfandSpectrum:
    """Either a finite point set, the whole plane, or provably empty."""

    kind: str                     # 'points' | 'plane' | 'empty'
    roots: tuple[RootEnclosure, ...] = ()

    @property
    def points(self) -> tuple[SpectrumPoint, ...]:
        return tuple(r.point for r in self.roots)


def _newton_step(q: Poly, dq: Poly, z: ExactComplex) -> ExactComplex | None:
    dv = dq.eval(z)
    if dv.is_zero():
        return None
    return (z - q.eval(z) / dv).round_dyadic(192)


def _certified_radius_sq(q: Poly, dq: Poly, z: ExactComplex) -> Fraction | None:
    """(deg q)^2 |q(z)/q'(z)|^2: some root lies within the sqrt of this."""
    dv2 = dq.eval(z).abs2()
    if dv2 == 0:
        return None
    return Fraction(q.degree) ** 2 * q.eval(z).abs2() / dv2


def gelfand_points(algebra: AlgebraDescriptor, tol: float = 1e-10,
                   residual_tol: float = 1e-9,
                   max_steps: int = 60) -> GelfandSpectrum:
    """The spectrum of C[T]/(p): roots of p with multiplicity collapsed.

    Roots are polished until the certified enclosure radius drops below
    ``tol`` and the residual |p(z)| below ``residual_tol`` (a small
    radius alone does not bound the residual when |p'| is large).  A
    zero relation ideal yields the whole-plane marker; a nonzero
    constant relation means the algebra is the zero ring, reported as a
    distinct empty spectrum.
    """
    p = algebra.principal_generator()
    if p.is_zero():
        return GelfandSpectrum("plane")
    if p.is_constant():
        return GelfandSpectrum("empty")
    q = squarefree_part(p)
    dq = q.derivative()
    if q.degree == 1:
        z = -(q.coeff(0) / q.coeff(1))
        res = math.sqrt(float(p.eval(z).abs2()))
        return GelfandSpectrum(
            "points", (RootEnclosure(SpectrumPoint(z), 0.0, res),))
    approx = np.roots(np.array(list(reversed(q.to_complex_list())),
                               dtype=complex))
    tol_sq = Fraction(tol) ** 2
    res_sq = Fraction(residual_tol) ** 2
    enclosures = []
    for a in sorted(approx, key=lambda w: (round(w.real, 12), round(w.imag, 12))):
        z = exact_from_complex(complex(a))
        rad_sq = _certified_radius_sq(q, dq, z)
        steps = 0
        while steps < max_steps and (rad_sq is None or rad_sq > tol_sq
                                     or p.eval(z).abs2() > res_sq):
            nxt = _newton_step(q, dq, z)
            if nxt is None:
                break
            z = nxt
            rad_sq = _certified_radius_sq(q, dq, z)
            steps += 1
        radius = math.sqrt(float(rad_sq)) if rad_sq is not None else math.inf
        residual = math.sqrt(float(p.eval(z).abs2()))
        enclosures.append(RootEnclosure(SpectrumPoint(z), radius, residual))
    # collapse duplicates (clustered eigenvalue approximations)
    unique: list[RootEnclosure] = []
    for e in enclosures:
        dup = any(_close(e.point.z, u.point.z, 1e-7) for u in unique)
        if not dup:
            unique.append(e)
    return GelfandSpectrum("points", tuple(unique))


def _close(a: ExactComplex, b: ExactComplex, eps: float) -> bool:
    return (a - b).abs2() <= Fraction(eps) ** 2


# -- seminorm axioms ----------------------------------------------------

@dataclass(frozen=True)
class SqrtValue:
    """A nonnegative real known exactly through its square."""

    sq: Fraction

    def __post_init__(self):
        if self.sq < 0:
            raise ValueError("squared value must be nonnegative")

    def equals_product(self, a: "SqrtValue", b: "SqrtValue") -> bool:
        return self.sq == a.sq * b.sq

    def triangle_le(self, a: "SqrtValue", b: "SqrtValue") -> bool:
        """sqrt(self) <= sqrt(a) + sqrt(b), decided exactly."""
        x, y, z = self.sq, a.sq, b.sq
        if x <= y + z:
            return True
        return (x - y - z) ** 2 <= 4 * y * z

    def is_zero(self) -> bool:
        return self.sq == 0

    def is_one(self) -> bool:
        return self.sq == 1

    def as_float(self) -> float:
        return math.sqrt(float(self.sq))


def evaluation_seminorm(point: SpectrumPoint) -> Callable[[Poly], SqrtValue]:
    return lambda f: SqrtValue(point.seminorm_sq(f))


@dataclass
class AxiomViolation:
    axiom: str
    witnesses: tuple
    detail: str


@dataclass
class AxiomReport:
    checked_pairs: int = 0
    violations: list[AxiomViolation] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations


def _is_zero_val(v) -> bool:
    return v.is_zero() if isinstance(v, SqrtValue) else v == 0


def _is_one_val(v, tol) -> bool:
    if isinstance(v, SqrtValue):
        return v.is_one()
    return abs(v - 1) <= tol


def seminorm_axiom_check(candidate: Mapping[Poly, object],
                         reference_norm: Callable[[Poly], float] | None = None,
                         tol: float = 1e-9) -> AxiomReport:
    """Check the seminorm axioms on a finite element sample.

    Values may be :class:`SqrtValue` (exact decisions) or plain
    nonnegative reals (tolerance ``tol``).  Normalization and the
    multiplicative and triangle axioms are checked on every sampled
    pair whose product or sum is itself in the sample.  The bound
    against the ambient algebra norm is checked only when a reference
    norm is supplied; the discrete algebras here carry a radius-indexed
    family rather than a single norm.
    """
    report = AxiomReport()
    items = list(candidate.items())
    vals = dict(candidate)

    from .polynomials import ZERO, ONE
    if ZERO in vals and not _is_zero_val(vals[ZERO]):
        report.violations.append(AxiomViolation(
            "normalization", (ZERO,), "norm of 0 must be 0"))
    if ONE in vals and not _is_one_val(vals[ONE], tol):
        report.violations.append(AxiomViolation(
            "normalization", (ONE,), "norm of 1 must be 1"))

    for i, (a, va) in enumerate(items):
        for b, vb in items[i:]:
            prod = a * b
            if prod in vals:
                report.checked_pairs += 1
                vp = vals[prod]
                if isinstance(vp, SqrtValue):
                    ok = vp.equals_product(va, vb)
                else:
                    ok = abs(vp - va * vb) <= tol * (1 + abs(vp))
                if not ok:
                    report.violations.append(AxiomViolation(
                        "multiplicativity", (a, b),
                        f"|ab| != |a||b| at ({format_poly(a)}, {format_poly(b)})"))
            total = a + b
            if total in vals:
                report.checked_pairs += 1
                vs = vals[total]
                if isinstance(vs, SqrtValue):
                    ok = vs.triangle_le(va, vb)
                else:
                    ok = vs <= va + vb + tol * (1 + abs(vs))
                if not ok:
                    report.violations.append(AxiomViolation(
                        "triangle", (a, b),
                        f"|a+b| > |a|+|b| at ({format_poly(a)}, {format_poly(b)})"))

    if reference_norm is not None:
        for a, va in items:
            bound = reference_norm(a)
            v = va.as_float() if isinstance(va, SqrtValue) else va
            if v > bound + tol * (1 + abs(bound)):
                report.violations.append(AxiomViolation(
                    "bounded", (a,),
                    f"seminorm exceeds the ambient norm at {format_poly(a)}"))
    return report


# -- rational subsets ----------------------------------------------------

@dataclass(frozen=True)
class RationalSubsetSpec:
    """The locus |f_i(x)| <= |g(x)| for a unit-ideal family (f_1..f_n; g)."""

    numerators: tuple[Poly, ...]
    denominator: Poly

    def __post_init__(self):
        fam = list(self.numerators) + [self.denominator]
        if not generates_unit_ideal(fam):
            raise UnitIdealError(
                "numerators and denominator must generate the unit ideal",
                gcd_witness=format_poly(_family_gcd(fam)))


def _family_gcd(fs: list[Poly]) -> Poly:
    g = Poly(())
    for f in fs:
        g = gcd_poly(g, f)
    return g


def rational_membership(x: SpectrumPoint, spec: RationalSubsetSpec) -> bool:
    """|f_i(z)| <= |g(z)| for all i, decided exactly on squared moduli."""
    g_sq = x.seminorm_sq(spec.denominator)
    return all(x.seminorm_sq(f) <= g_sq for f in spec.numerators)


def spectrum_records(spectrum: GelfandSpectrum) -> list[str]:
    """Line-delimited point records: ``re im certified_radius``."""
    if spectrum.kind != "points":
        return [spectrum.kind]
    out = []
    for enc in spectrum.roots:
        z = enc.point.z.to_complex()
        out.append(f"{z.real!r} {z.imag!r} {enc.radius!r}")
    return out
