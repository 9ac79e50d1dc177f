"""Discrete Huber pairs over the one-variable complex polynomial ring.

A pair is a localization of C[T] (a finite set of formally inverted
polynomials) together with a finite generator list for the
distinguished subring.  Integral closure is formal: the subring is
represented by its generators with closure under products only, and
every comparison (localization composition, cover refinement) is made
at that saturated-generator level.  Constants are units over the
complex numbers and are normalized away.

Covers come in the two generated shapes: the two-piece cover at an
element f, and the Zariski cover of a family generating the unit ideal
(certified by an explicit Bezout combination).  Refinement asks that
every member of the finer cover factor through a member of the coarser
one, witnessed by a factoring assignment.

Valuations are rank one: trivial valuations supported at a point prime
or at the generic prime, and order-of-vanishing valuations gamma^ord_z
with gamma in (0,1).  These carry exact integer-exponent arithmetic,
enough to exercise every displayed axiom.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NotInAdicSpectrumError, ParseError, UnitIdealError
from .polynomials import (ONE, ZERO, Poly, bezout_family, divmod_poly,
                          format_poly, gcd_poly, ord_at, parse_poly)
from .scalars import ExactComplex, as_fraction


# -- elements of localized rings -----------------------------------------

@dataclass(frozen=True, slots=True)
class FracElem:
    """num/den in canonical form: coprime, both monic (units absorbed)."""

    num: Poly
    den: Poly

    @property
    def size(self) -> int:
        return self.num.degree + self.den.degree

    def is_one(self) -> bool:
        return self.num == ONE and self.den == ONE

    def __str__(self) -> str:
        if self.den == ONE:
            return format_poly(self.num, compact=True)
        return (f"({format_poly(self.num, compact=True)})/"
                f"({format_poly(self.den, compact=True)})")


def frac(num: Poly, den: Poly = ONE) -> FracElem:
    if den.is_zero():
        raise ZeroDivisionError("fraction with zero denominator")
    if num.is_zero():
        return FracElem(ZERO, ONE)
    g = gcd_poly(num, den)
    if not g.is_constant():
        num = divmod_poly(num, g)[0]
        den = divmod_poly(den, g)[0]
    return FracElem(num.monic(), den.monic())


def frac_mul(a: FracElem, b: FracElem) -> FracElem:
    return frac(a.num * b.num, a.den * b.den)


def frac_div(a: FracElem, b: FracElem) -> FracElem:
    return frac(a.num * b.den, a.den * b.num)


def product_member(q: FracElem, gens: frozenset[FracElem],
                   _seen=None) -> bool:
    """Is q a finite product of generators?

    Bounded search: only divisions that strictly shrink the combined
    numerator/denominator degree are explored, which terminates and
    covers the monomial-style generator sets the site produces.
    """
    if q.is_one():
        return True
    if _seen is None:
        _seen = set()
    if q in _seen:
        return False
    _seen.add(q)
    for g in gens:
        if g.is_one():
            continue
        q2 = frac_div(q, g)
        if q2.size < q.size and product_member(q2, gens, _seen):
            return True
    return False


def saturation_includes(sup: frozenset[FracElem],
                        sub: frozenset[FracElem]) -> tuple[bool, FracElem | None]:
    """Does the product closure of sup contain every generator of sub?"""
    for g in sub:
        if not product_member(g, sup):
            return False, g
    return True, None


# -- pairs ---------------------------------------------------------------

@dataclass(frozen=True)
class HuberPair:
    """(A, A+): a localization of C[T] and formal subring generators.

    ``inverted`` lists monic nonconstant polynomials made invertible;
    ``aplus`` always contains 1.  The subring is the formal product
    closure of ``aplus`` (integral closure is not computed).
    """

    inverted: frozenset[Poly] = frozenset()
    aplus: frozenset[FracElem] = frozenset({frac(ONE)})

    def __post_init__(self):
        object.__setattr__(self, "aplus", self.aplus | {frac(ONE)})
        normd = set()
        for p in self.inverted:
            if p.is_zero():
                raise ZeroDivisionError("cannot invert the zero polynomial")
            if not p.is_constant():
                normd.add(p.monic())
        object.__setattr__(self, "inverted", frozenset(normd))

    def describe(self) -> str:
        inv = ";".join(sorted(format_poly(p, compact=True)
                              for p in self.inverted)) or "-"
        ap = ";".join(sorted(str(a) for a in self.aplus))
        return f"inverted={inv} aplus={ap}"


BASE_PAIR = HuberPair()


def invertible_in(p: Poly, inverted: frozenset[Poly]) -> bool:
    """Is p a unit once the listed polynomials are inverted?

    Equivalent to: every irreducible factor of p divides some inverted
    generator.  Decided by repeated gcd reduction, no factorization.
    """
    if p.is_zero():
        return False
    q = p.monic()
    while not q.is_constant():
        progress = False
        for g in inverted:
            d = gcd_poly(q, g)
            if not d.is_constant():
                q = divmod_poly(q, d)[0]
                progress = True
                break
        if not progress:
            return False
    return True


def inverted_includes(sup: frozenset[Poly],
                      sub: frozenset[Poly]) -> tuple[bool, Poly | None]:
    for g in sub:
        if not invertible_in(g, sup):
            return False, g
    return True, None


def pairs_equivalent(a: HuberPair, b: HuberPair) -> bool:
    """Equality at the saturated-generator level."""
    return (inverted_includes(a.inverted, b.inverted)[0]
            and inverted_includes(b.inverted, a.inverted)[0]
            and saturation_includes(a.aplus, b.aplus)[0]
            and saturation_includes(b.aplus, a.aplus)[0])


def rational_localize(pair: HuberPair, numerators: list[Poly],
                      denominator: Poly) -> HuberPair:
    """The rational localization at (f_1, ..., f_n; g).

    Requires the family plus the denominator to generate the unit
    ideal.  Returns (A[1/g], A+ generators extended by the f_i/g),
    integral closure taken formally.  Composing two localizations
    agrees with the combined one at the saturated-generator level.
    """
    family = list(numerators) + [denominator]
    witness = bezout_family(family)
    if witness is None:
        g = ZERO
        for f in family:
            g = gcd_poly(g, f)
        raise UnitIdealError(
            "localization family does not generate the unit ideal",
            gcd_witness=format_poly(g))
    inverted = set(pair.inverted)
    if not denominator.is_constant():
        inverted.add(denominator.monic())
    aplus = set(pair.aplus)
    for f in numerators:
        aplus.add(frac(f, denominator))
    return HuberPair(frozenset(inverted), frozenset(aplus))


# -- covers ----------------------------------------------------------------

TWO_PIECE = "two_piece"
ZARISKI = "zariski"


@dataclass(frozen=True)
class CoverSpec:
    base: HuberPair
    kind: str
    data: tuple[Poly, ...]
    members: tuple[HuberPair, ...]
    certificate: tuple[Poly, ...] | None = None
    enlarge: tuple[FracElem, ...] = ()

    def __post_init__(self):
        if self.kind not in (TWO_PIECE, ZARISKI):
            raise ValueError(f"unknown cover kind {self.kind!r}")
        if self.kind == ZARISKI and self.certificate is None:
            raise UnitIdealError("Zariski covers require a Bezout certificate")


def _enlarged(pair: HuberPair, extra) -> HuberPair:
    return HuberPair(pair.inverted, pair.aplus | frozenset(extra))


def two_piece_cover(pair: HuberPair, f: Poly,
                    enlarge: tuple[FracElem, ...] = ()) -> CoverSpec:
    """The cover {adjoin f to A+} and {invert f, adjoin 1/f}."""
    if f.is_zero():
        raise ZeroDivisionError("two-piece cover at 0 would invert 0")
    first = HuberPair(pair.inverted, pair.aplus | {frac(f)})
    inv = set(pair.inverted)
    if not f.is_constant():
        inv.add(f.monic())
    second = HuberPair(frozenset(inv), pair.aplus | {frac(ONE, f)})
    members = tuple(_enlarged(m, enlarge) for m in (first, second))
    return CoverSpec(pair, TWO_PIECE, (f,), members, enlarge=enlarge)


def zariski_cover(pair: HuberPair, family: list[Poly],
                  enlarge: tuple[FracElem, ...] = ()) -> CoverSpec:
    """One member per f_i: invert f_i and adjoin 1/f_i.

    The family must generate the unit ideal; the Bezout combination is
    stored as the certificate.
    """
    witness = bezout_family(family)
    if witness is None:
        g = ZERO
        for f in family:
            g = gcd_poly(g, f)
        raise UnitIdealError("family does not generate the unit ideal",
                             gcd_witness=format_poly(g))
    members = []
    for f in family:
        inv = set(pair.inverted)
        if not f.is_constant():
            inv.add(f.monic())
        members.append(_enlarged(
            HuberPair(frozenset(inv), pair.aplus | {frac(ONE, f)}), enlarge))
    return CoverSpec(pair, ZARISKI, tuple(family), tuple(members),
                     certificate=tuple(witness), enlarge=enlarge)


def generate_covers(pair: HuberPair, f: Poly,
                    zariski_family: list[Poly] | None = None) -> list[CoverSpec]:
    """The generated covers at f, plus the family cover when given."""
    out = [two_piece_cover(pair, f)]
    if zariski_family is not None:
        out.append(zariski_cover(pair, zariski_family))
    return out


def factors_through(fine: HuberPair, coarse: HuberPair) -> bool:
    """Does the map into ``fine`` factor through ``coarse``?

    True when everything inverted in the coarse member stays invertible
    in the fine one and every coarse subring generator is a product of
    fine ones.
    """
    ok_inv, _ = inverted_includes(fine.inverted, coarse.inverted)
    if not ok_inv:
        return False
    ok_ap, _ = saturation_includes(fine.aplus, coarse.aplus)
    return ok_ap


@dataclass(frozen=True)
class RefinementResult:
    refines: bool
    assignment: tuple[int | None, ...]
    failing_member: int | None = None

    def __bool__(self) -> bool:
        return self.refines


def refines(c1: CoverSpec, c2: CoverSpec) -> RefinementResult:
    """Does every member of c1 factor through some member of c2?

    Both covers must sit over the same pair (saturated comparison).
    Returns the factoring assignment, or the index of the first member
    with no factorization.
    """
    if not pairs_equivalent(c1.base, c2.base):
        raise ValueError("refinement compares covers over the same pair")
    assignment: list[int | None] = []
    for i, m in enumerate(c1.members):
        target = None
        for j, n in enumerate(c2.members):
            if factors_through(m, n):
                target = j
                break
        if target is None:
            return RefinementResult(False, tuple(assignment), failing_member=i)
        assignment.append(target)
    return RefinementResult(True, tuple(assignment))


# -- valuations -------------------------------------------------------------

ORDER_AT_POINT = "order"
TRIVIAL = "trivial"


@dataclass(frozen=True, slots=True)
class ValExp:
    """gamma^exp, or the absorbing zero.  Ordered for gamma < 1."""

    zero: bool
    exp: int = 0

    def __mul__(self, other: "ValExp") -> "ValExp":
        if self.zero or other.zero:
            return VAL_ZERO
        return ValExp(False, self.exp + other.exp)

    def le(self, other: "ValExp") -> bool:
        if self.zero:
            return True
        if other.zero:
            return False
        return self.exp >= other.exp

    def max_with(self, other: "ValExp") -> "ValExp":
        return other if self.le(other) else self

    def le_one(self) -> bool:
        return self.le(VAL_ONE)

    def __str__(self) -> str:
        if self.zero:
            return "0"
        return f"gamma^{self.exp}"


VAL_ZERO = ValExp(True)
VAL_ONE = ValExp(False, 0)


@dataclass(frozen=True)
class Valuation:
    """Either order-of-vanishing at a point, or a trivial valuation.

    * ``order``: v(f) = gamma^ord_z(f) with gamma in (0,1), v(0) = 0;
      the rational gamma fixes the displayed value group gamma^Z.
    * ``trivial``: v(f) = 0 when f lies in the prime (vanishes at z, or
      f = 0 at the generic prime), otherwise 1.
    """

    kind: str
    z: ExactComplex | None = None
    gamma: Fraction | None = None

    def __post_init__(self):
        if self.kind not in (ORDER_AT_POINT, TRIVIAL):
            raise ValueError(f"unknown valuation kind {self.kind!r}")
        if self.kind == ORDER_AT_POINT:
            if self.z is None:
                raise ValueError("order valuations need a point")
            g = self.gamma
            if g is None or not 0 < g < 1:
                raise ValueError("order valuations need gamma in (0,1)")

    def of_poly(self, f: Poly) -> ValExp:
        if f.is_zero():
            return VAL_ZERO
        if self.kind == ORDER_AT_POINT:
            return ValExp(False, ord_at(f, self.z))
        if self.z is None:                      # generic prime
            return VAL_ONE
        return VAL_ZERO if f.eval(self.z).is_zero() else VAL_ONE

    def value(self, elem: Poly | FracElem) -> ValExp:
        """Extend along fractions: v(p/q) = v(p)/v(q), needing v(q) != 0."""
        if isinstance(elem, Poly):
            return self.of_poly(elem)
        vd = self.of_poly(elem.den)
        if vd.zero:
            raise ZeroDivisionError(
                f"valuation undefined: denominator {format_poly(elem.den)} "
                "has value 0")
        vn = self.of_poly(elem.num)
        if vn.zero:
            return VAL_ZERO
        return ValExp(False, vn.exp - vd.exp)

    def describe(self) -> str:
        if self.kind == TRIVIAL:
            at = "generic" if self.z is None else _fmt_point(self.z)
            return f"trivial at {at}"
        return f"order at {_fmt_point(self.z)} gamma={self.gamma}"


def _fmt_point(z: ExactComplex) -> str:
    from .scalars import format_scalar
    return format_scalar(z)


def order_valuation(z, gamma) -> Valuation:
    z = z if isinstance(z, ExactComplex) else ExactComplex.of(z)
    return Valuation(ORDER_AT_POINT, z, as_fraction(gamma))


def trivial_valuation(z=None) -> Valuation:
    if z is None:
        return Valuation(TRIVIAL)
    z = z if isinstance(z, ExactComplex) else ExactComplex.of(z)
    return Valuation(TRIVIAL, z)


@dataclass
class ValuationAxiomReport:
    checked_pairs: int = 0
    violations: list[str] = None

    def __post_init__(self):
        if self.violations is None:
            self.violations = []

    @property
    def passed(self) -> bool:
        return not self.violations


def valuation_axiom_check(v: Valuation,
                          sample: list[Poly]) -> ValuationAxiomReport:
    """v(0)=0, v(1)=1, multiplicativity, and the ultrametric bound.

    All checks are exact integer-exponent arithmetic on every pair from
    the sample.
    """
    report = ValuationAxiomReport()
    if not v.of_poly(ZERO).zero:
        report.violations.append("v(0) != 0")
    if v.of_poly(ONE) != VAL_ONE:
        report.violations.append("v(1) != 1")
    for i, a in enumerate(sample):
        for b in sample[i:]:
            report.checked_pairs += 1
            va, vb = v.of_poly(a), v.of_poly(b)
            if v.of_poly(a * b) != va * vb:
                report.violations.append(
                    f"v(ab) != v(a)v(b) at ({format_poly(a)}, {format_poly(b)})")
            if not v.of_poly(a + b).le(va.max_with(vb)):
                report.violations.append(
                    f"v(a+b) > max at ({format_poly(a)}, {format_poly(b)})")
    return report


def equivalence_check(v: Valuation, w: Valuation,
                      sample: list[Poly]) -> tuple[bool, tuple | None]:
    """The comparison characterization on all sampled pairs.

    v and w are judged equivalent when v(a) >= v(b) iff w(a) >= w(b)
    holds on the full pair set; the first failing pair is the witness.
    """
    for a in sample:
        for b in sample:
            if v.value(b).le(v.value(a)) != w.value(b).le(w.value(a)):
                return False, (a, b)
    return True, None


def spa_membership(v: Valuation, pair: HuberPair, numerators: list[Poly],
                   denominator: Poly) -> bool:
    """Membership of v in the rational subset (f_1..f_n; g) of Spa(A, A+).

    First checks v <= 1 on every subring generator; a failure raises
    :class:`NotInAdicSpectrumError` (the valuation is not a point of
    the spectrum at all, which is distinct from lying outside the
    subset).  Membership then means v(f_i) <= v(g) != 0 for all i.
    """
    for g in pair.inverted:
        if v.of_poly(g).zero:
            raise ZeroDivisionError(
                f"valuation does not extend: inverted element "
                f"{format_poly(g)} has value 0")
    for a in sorted(pair.aplus, key=str):
        if not v.value(a).le_one():
            raise NotInAdicSpectrumError(str(a))
    vg = v.of_poly(denominator)
    if vg.zero:
        return False
    return all(v.of_poly(f).le(vg) for f in numerators)


# -- fixture corpus ----------------------------------------------------------

def parse_frac_literal(text: str) -> FracElem:
    """``p`` or ``(p)/(q)`` with p, q in the compact polynomial format."""
    t = text.strip()
    if t.startswith("(") and ")/(" in t and t.endswith(")"):
        left, right = t[1:-1].split(")/(", 1)
        return frac(parse_poly(left), parse_poly(right))
    return frac(parse_poly(t))


def _parse_listfield(value: str, item_parser):
    value = value.strip()
    if not value or value == "-":
        return []
    return [item_parser(part) for part in value.split(";") if part.strip()]


def parse_fixtures(text: str) -> tuple[dict[str, HuberPair],
                                       dict[str, CoverSpec]]:
    """Load a fixture file of ``pair`` and ``cover`` records.

    Grammar (one record per line, # comments)::

        pair <name> ring=C[T] inverted=<p;p;...> aplus=<frac;frac;...>
        cover <name> pair=<pair> kind=two_piece f=<p> [enlarge=<fracs>]
        cover <name> pair=<pair> kind=zariski fs=<p;p;...> [enlarge=<fracs>]

    ``ring`` names the base polynomial ring (one variable over the
    complex numbers is the only supported value).  Polynomials use the
    compact comma-separated ``deg:coeff`` format.
    """
    pairs: dict[str, HuberPair] = {}
    covers: dict[str, CoverSpec] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        kind, name = tokens[0], tokens[1] if len(tokens) > 1 else ""
        fields = {}
        for tok in tokens[2:]:
            key, _, val = tok.partition("=")
            fields[key] = val
        try:
            if kind == "pair":
                ring = fields.get("ring", "C[T]")
                if ring != "C[T]":
                    raise ParseError(
                        f"unsupported base ring {ring!r} (only C[T])")
                inverted = frozenset(_parse_listfield(
                    fields.get("inverted", ""), parse_poly))
                aplus = frozenset(_parse_listfield(
                    fields.get("aplus", ""), parse_frac_literal))
                pairs[name] = HuberPair(inverted, aplus | {frac(ONE)})
            elif kind == "cover":
                base = pairs[fields["pair"]]
                enlarge = tuple(_parse_listfield(fields.get("enlarge", ""),
                                                 parse_frac_literal))
                if fields["kind"] == TWO_PIECE:
                    covers[name] = two_piece_cover(
                        base, parse_poly(fields["f"]), enlarge)
                elif fields["kind"] == ZARISKI:
                    fam = _parse_listfield(fields["fs"], parse_poly)
                    covers[name] = zariski_cover(base, fam, enlarge)
                else:
                    raise ParseError(f"unknown cover kind {fields['kind']!r}")
            else:
                raise ParseError(f"unknown record type {kind!r}")
        except KeyError as exc:
            raise ParseError(
                f"fixture line {lineno}: missing field {exc}") from None
    return pairs, covers


def load_fixture_file(path) -> tuple[dict[str, HuberPair],
                                     dict[str, CoverSpec]]:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_fixtures(fh.read())


def default_fixture_path():
    from importlib import resources
    return resources.files("analine").joinpath("fixtures/site.fixtures")
