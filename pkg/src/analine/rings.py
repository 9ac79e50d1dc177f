"""The analytic rings on the line and the explicit maps between them.

Five ring tags classify where a series lives:

* ``overconvergent``  -- support >= 0, witness radius r > 1, finite
  weighted l1 norm at r (functions convergent slightly beyond the
  closed unit disc);
* ``holomorphic``     -- support >= 0, a truncation plus a certified
  tail bound valid at every queried radius r < 1 (the inverse-limit
  ring of the open disc);
* ``outer_tail``      -- support <= m for some m >= 0, witness radius
  s < 1, norm max(sup of the polynomial part, sum over the strictly
  negative tail of |a_-n| s^-n);
* ``polynomial``      -- finite support >= 0, normed as the family of
  weighted norms over all radii;
* ``two_sided``       -- support of both signs with a witness pair
  (r > 1, s < 1), normed by the sum of the two one-sided norms.

The module also implements the splitting of a two-sided element into
(inner, outer) parts, exact recovery of a common polynomial, division
by (T - U) in the graded module of U-polynomials over a disc algebra
with its certified 1/(1-r) bound, variable inversion, and the residue
pairing between a disc algebra and the strictly-negative outer ring.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .errors import (BackendMismatchError, DivisionPreconditionError,
                     SupportError)
from .scalars import (DEFAULT_BITS, EXACT, ExactComplex, NormValue,
                      as_fraction, scalar_is_zero, scalar_zero)
from .series import (WeightedSeries, add, make_series, neg, sub,
                     weighted_norm, zero_series)

OVERCONVERGENT = "overconvergent"
HOLOMORPHIC = "holomorphic"
OUTER_TAIL = "outer_tail"
POLYNOMIAL = "polynomial"
TWO_SIDED = "two_sided"

RING_TAGS = (OVERCONVERGENT, HOLOMORPHIC, OUTER_TAIL, POLYNOMIAL, TWO_SIDED)


@dataclass(frozen=True, eq=False)
class RingElement:
    """A weighted series tagged with the ring it inhabits.

    Witness radii are explicit data, never inferred: ``witness`` is the
    Banach stage the element certifiably lives in.  Two-sided elements
    carry the pair (witness, inner_witness).  Holomorphic elements hold
    a truncation plus ``tail_cert``, a function of the queried radius
    r < 1 returning a rational upper bound for the omitted norm mass.
    """

    series: WeightedSeries
    ring: str
    witness: Fraction | float | None = None
    inner_witness: Fraction | float | None = None
    tail_cert: Callable | None = None

    def __post_init__(self):
        if self.ring not in RING_TAGS:
            raise ValueError(f"unknown ring tag {self.ring!r}")
        sup = self.series.support()
        w = self.witness
        if self.ring == OVERCONVERGENT:
            if w is None or w <= 1:
                raise SupportError("overconvergent elements need witness > 1")
            if sup and sup[0] < 0:
                raise SupportError("overconvergent support must be >= 0")
        elif self.ring == POLYNOMIAL:
            if sup and sup[0] < 0:
                raise SupportError("polynomial support must be >= 0")
            if self.series.tail:
                raise SupportError("polynomials carry no tail bound")
        elif self.ring == OUTER_TAIL:
            if w is None or not 0 < w < 1:
                raise SupportError("outer-tail elements need witness in (0,1)")
        elif self.ring == HOLOMORPHIC:
            if sup and sup[0] < 0:
                raise SupportError("holomorphic support must be >= 0")
        elif self.ring == TWO_SIDED:
            if w is None or w <= 1:
                raise SupportError("two-sided elements need outer witness > 1")
            s = self.inner_witness
            if s is None or not 0 < s < 1:
                raise SupportError("two-sided elements need inner witness in (0,1)")


def overconvergent(series: WeightedSeries, witness) -> RingElement:
    witness = _like_radius(series, witness)
    return RingElement(series.with_radius(witness), OVERCONVERGENT,
                       witness=witness)


def polynomial_element(series: WeightedSeries) -> RingElement:
    return RingElement(series.trim(), POLYNOMIAL)


def outer_tail(series: WeightedSeries, witness) -> RingElement:
    witness = _like_radius(series, witness)
    return RingElement(series.with_radius(witness), OUTER_TAIL,
                       witness=witness)


def two_sided(series: WeightedSeries, witness, inner_witness) -> RingElement:
    witness = _like_radius(series, witness)
    inner_witness = _like_radius(series, inner_witness)
    return RingElement(series, TWO_SIDED, witness=witness,
                       inner_witness=inner_witness)


def holomorphic(truncation: WeightedSeries,
                tail_cert: Callable | None = None) -> RingElement:
    """A holomorphic-disc element: truncation plus tail certificate.

    ``tail_cert(r)`` must bound the weighted norm at radius r < 1 of
    every omitted term.  ``None`` means the truncation is exact.
    """
    return RingElement(truncation, HOLOMORPHIC, tail_cert=tail_cert)


def geometric_holomorphic(terms: int, backend: str = EXACT) -> RingElement:
    """The series sum_n T^n truncated to ``terms`` coefficients.

    Its true norm at every r < 1 is 1/(1-r); the certificate returns
    the exact omitted mass r^terms/(1-r), so the reported norm is exact
    for every truncation length.
    """
    trunc = make_series({n: 1 for n in range(terms)}, 1, backend)

    def cert(r):
        r = as_fraction(r)
        return r ** terms / (1 - r)

    return holomorphic(trunc, cert)


def _like_radius(series: WeightedSeries, r):
    return as_fraction(r) if series.backend == EXACT else float(r)


_RING_ALIASES = {
    "overconvergent": OVERCONVERGENT, "inner": OVERCONVERGENT,
    "holomorphic": HOLOMORPHIC,
    "outer_tail": OUTER_TAIL, "outer": OUTER_TAIL,
    "polynomial": POLYNOMIAL, "poly": POLYNOMIAL,
    "two_sided": TWO_SIDED, "laurent": TWO_SIDED,
}


def parse_ring_element(text: str, backend: str = EXACT) -> RingElement:
    """Series fixture literal with ``ring=`` and ``witness=`` tags.

    Examples: ``0:1 1:1 ring=overconvergent witness=2`` or
    ``1:1 -2:3 ring=two_sided witness=2 inner=1/2``.  Holomorphic
    literals denote their exact truncation (no tail certificate).
    """
    from .series import parse_series_tagged
    series, tags = parse_series_tagged(text, backend=backend)
    ring = _RING_ALIASES.get(tags.get("ring", "").lower())
    if ring is None:
        raise ValueError(f"missing or unknown ring= tag in {text!r}")
    if ring == POLYNOMIAL:
        return polynomial_element(series)
    if ring == HOLOMORPHIC:
        return holomorphic(series)
    witness = tags.get("witness")
    if witness is None:
        raise ValueError("ring-tagged literals need a witness= radius")
    if ring == OVERCONVERGENT:
        return overconvergent(series, Fraction(witness))
    if ring == OUTER_TAIL:
        return outer_tail(series, Fraction(witness))
    inner = tags.get("inner")
    if inner is None:
        raise ValueError("two-sided literals need an inner= radius")
    return two_sided(series.with_radius(Fraction(witness)),
                     Fraction(witness), Fraction(inner))


def _max_abs(series: WeightedSeries, bits: int) -> NormValue:
    """sup of |a_n| over the stored coefficients (0 when empty)."""
    if series.backend == EXACT:
        out = NormValue.exact_point(Fraction(0))
        for c in series.coeffs:
            if not scalar_is_zero(c):
                iv = c.abs_interval(bits)
                out = out.max_with(NormValue(EXACT, iv.lo, iv.hi))
        return out
    best = 0.0
    for c in series.coeffs:
        best = max(best, abs(c))
    return NormValue.floating(best)


def ring_norm(x: RingElement, r=None, bits: int = DEFAULT_BITS) -> NormValue:
    """The norm of a ring element at its witness stage.

    Holomorphic and polynomial elements are radius-indexed families, so
    a caller-supplied ``r`` is mandatory for them (r < 1 in the
    holomorphic case).
    """
    s = x.series
    if x.ring == OVERCONVERGENT:
        return weighted_norm(s, bits)
    if x.ring == POLYNOMIAL:
        if r is None:
            raise ValueError("polynomial norms are radius-indexed; pass r")
        return weighted_norm(s, bits, radius=_like_radius(s, r))
    if x.ring == HOLOMORPHIC:
        if r is None:
            raise ValueError("holomorphic norms are radius-indexed; pass r < 1")
        r = _like_radius(s, r)
        if not 0 < r < 1:
            raise ValueError("holomorphic norms exist at radii r < 1 only")
        base = weighted_norm(s, bits, radius=r)
        if x.tail_cert is not None:
            t = x.tail_cert(r)
            if s.backend == EXACT:
                base = base + NormValue.exact_point(as_fraction(t))
            else:
                base = base + NormValue.floating(float(t))
        return base
    if x.ring == OUTER_TAIL:
        poly_sup = _max_abs(s.nonneg_part(), bits)
        tail_sum = weighted_norm(s.negative_part(), bits)
        return poly_sup.max_with(tail_sum)
    # two_sided: sum of the one-sided norms at the witness pair
    pos = weighted_norm(s.nonneg_part().with_radius(x.witness), bits)
    negs = weighted_norm(s.negative_part().with_radius(x.inner_witness), bits)
    return pos + negs


# -- splitting and recovery (the union fiber sequence, elementwise) ----

def laurent_split(h: RingElement) -> tuple[RingElement, RingElement]:
    """Split a two-sided element into (inner, outer) parts.

    Returns f = sum_{n>=0} a_n T^n as an overconvergent element and
    g = -sum_{n>=1} a_-n T^-n as an outer-tail element, so that
    f - g = h coefficientwise.  Both one-sided norms are bounded by the
    two-sided norm of h with constant 1; the bound is structural: the
    two-sided norm is computed as the sum of exactly these two parts.
    """
    if h.ring != TWO_SIDED:
        raise SupportError("laurent_split expects a two-sided element")
    f = overconvergent(h.series.nonneg_part(), h.witness)
    g = outer_tail(neg(h.series.negative_part()), h.inner_witness)
    return f, g


def reassemble(f: RingElement, g: RingElement, witness=None,
               inner_witness=None) -> RingElement:
    """Inverse of the splitting: the two-sided element f - g."""
    w = witness if witness is not None else f.witness
    s = inner_witness if inner_witness is not None else g.witness
    return two_sided(sub(f.series, g.series), w, s)


@dataclass(frozen=True)
class NotEqual:
    """Report that two one-sided elements do not agree as series."""

    first_degree: int

    def __bool__(self) -> bool:
        return False


def recover_polynomial(f: RingElement, g: RingElement) -> RingElement | NotEqual:
    """Decide membership in the kernel of the difference map.

    When f = g as two-sided series (exact backend) the common value has
    support pinched into finitely many nonnegative degrees, hence is a
    polynomial, and that polynomial is returned.  Otherwise the first
    differing degree is reported.
    """
    a, b = f.series.trim(), g.series.trim()
    if a.backend != b.backend:
        raise BackendMismatchError("cannot compare across backends")
    lows = [x.low for x in (a, b) if x.coeffs]
    highs = [x.high for x in (a, b) if x.coeffs]
    if not lows:
        return polynomial_element(zero_series(a.radius, a.backend))
    for n in range(min(lows), max(highs) + 1):
        if a.coeff(n) != b.coeff(n):
            return NotEqual(n)
    return polynomial_element(a)


# -- division by (T - U) in the U-polynomial module --------------------

@dataclass(frozen=True)
class SeriesPoly:
    """A polynomial in an auxiliary variable U with series coefficients.

    Entry i is the coefficient of U^i, a weighted series over a common
    disc-algebra stage of radius r < 1.  The module norm is the sum of
    the entry norms.
    """

    entries: tuple[WeightedSeries, ...]

    def __post_init__(self):
        if not self.entries:
            raise ValueError("at least one entry required")
        r0, b0 = self.entries[0].radius, self.entries[0].backend
        for e in self.entries:
            if e.backend != b0:
                raise BackendMismatchError("mixed backends in module element")
            if e.radius != r0:
                raise ValueError("entries must share one radius")

    @property
    def radius(self):
        return self.entries[0].radius

    @property
    def backend(self) -> str:
        return self.entries[0].backend

    @property
    def degree(self) -> int:
        return len(self.entries) - 1

    def norm(self, bits: int = DEFAULT_BITS) -> NormValue:
        total = weighted_norm(self.entries[0], bits)
        for e in self.entries[1:]:
            total = total + weighted_norm(e, bits)
        return total

    def collapse_at_diagonal(self) -> WeightedSeries:
        """Evaluate at U = T: sum_i entry_i * T^i as a single series."""
        acc = zero_series(self.radius, self.backend)
        for i, e in enumerate(self.entries):
            acc = add(acc, e.shift(i))
        return acc.trim()

    def is_zero(self) -> bool:
        return all(e.is_zero() for e in self.entries)


def series_poly(entries, radius=None, backend: str = EXACT) -> SeriesPoly:
    """Build a SeriesPoly from WeightedSeries or coefficient mappings."""
    out = []
    for e in entries:
        if isinstance(e, WeightedSeries):
            out.append(e if radius is None else e.with_radius(radius))
        else:
            out.append(make_series(e, radius, backend))
    return SeriesPoly(tuple(out))


def mul_by_t_minus_u(c: SeriesPoly) -> SeriesPoly:
    """(T - U) * c, one degree higher in U.  Oracle for the division."""
    n = c.degree
    zero = zero_series(c.radius, c.backend)
    entries = []
    for i in range(n + 2):
        t_part = c.entries[i].shift(1) if i <= n else zero
        u_part = c.entries[i - 1] if i >= 1 else zero
        entries.append(sub(t_part, u_part))
    return SeriesPoly(tuple(entries))


def divide_by_t_minus_u(b: SeriesPoly, bits: int = DEFAULT_BITS,
                        check: bool = True) -> SeriesPoly:
    """Divide b by (T - U) on the kernel of the diagonal collapse.

    The unique preimage has entries c_i = -(b_{i+1} + T b_{i+2} + ...
    + T^{n-i} b_{n+1}), computed here by the backward recurrence
    c_n = -b_{n+1}, c_i = T c_{i+1} - b_{i+1}.  The module norm
    satisfies ||c|| <= 1/(1-r) ||b||; callers certify via
    :func:`division_ratio_bound`.

    Raises :class:`DivisionPreconditionError` (carrying the residual
    norm) when b does not collapse to zero at the diagonal.
    """
    if check:
        residual = b.collapse_at_diagonal()
        if not residual.is_zero():
            raise DivisionPreconditionError(weighted_norm(residual, bits))
    n = b.degree - 1
    if n < 0:
        raise ValueError("divide needs degree >= 1 in the auxiliary variable")
    cs = [None] * (n + 1)
    cs[n] = neg(b.entries[n + 1])
    for i in range(n - 1, -1, -1):
        cs[i] = sub(cs[i + 1].shift(1), b.entries[i + 1])
    return SeriesPoly(tuple(cs))


def division_bound(radius) -> Fraction:
    """The certified bound 1/(1-r) for the division operator norm."""
    r = as_fraction(radius)
    if not 0 < r < 1:
        raise ValueError("the division bound requires 0 < r < 1")
    return 1 / (1 - r)


@dataclass(frozen=True)
class DivisionTrial:
    trial: int
    degree: int
    norm_b: float
    norm_c: float
    ratio: float
    bound: float
    certified: bool
    exact_roundtrip: bool

    @property
    def passed(self) -> bool:
        return self.certified and self.exact_roundtrip


@dataclass(frozen=True)
class CertificateReport:
    radius: Fraction
    bound: Fraction
    trials: tuple[DivisionTrial, ...]
    max_ratio: float
    violations: int

    @property
    def passed(self) -> bool:
        return self.violations == 0

    @property
    def vacuous(self) -> bool:
        return not self.trials


def random_series_poly(rng: random.Random, radius, max_degree: int,
                       t_degree: int = 3, coeff_bound: int = 4,
                       gaussian: bool = True) -> SeriesPoly:
    """A random nonzero U-polynomial with small Gaussian-integer coefficients."""
    n = rng.randint(0, max_degree)
    while True:
        entries = []
        for _ in range(n + 1):
            coeffs = {}
            for d in range(t_degree + 1):
                re = rng.randint(-coeff_bound, coeff_bound)
                im = rng.randint(-coeff_bound, coeff_bound) if gaussian else 0
                if re or im:
                    coeffs[d] = ExactComplex.of(re, im)
            entries.append(make_series(coeffs, radius))
        sp = SeriesPoly(tuple(entries))
        if not sp.is_zero():
            return sp


def strictness_certificate(radius, trials: int, max_degree: int,
                           seed: int = 0, bits: int = DEFAULT_BITS,
                           t_degree: int = 3) -> CertificateReport:
    """Randomized certificate for the division bound.

    Each trial draws a random quotient c', forms the kernel element
    b = (T - U) c', divides, and certifies both the exact multiply-back
    identity and the norm comparison ||c|| <= 1/(1-r) ||b||.  The
    comparison is interval-certified: upper bound of ||c|| against the
    bound times the lower bound of ||b||.
    """
    r = as_fraction(radius)
    bound = division_bound(r)
    rng = random.Random(seed)
    records = []
    violations = 0
    max_ratio = 0.0
    for t in range(trials):
        c_prime = random_series_poly(rng, r, max(0, max_degree - 1), t_degree)
        b = mul_by_t_minus_u(c_prime)
        c = divide_by_t_minus_u(b, bits)
        roundtrip = all(x.same_series(y)
                        for x, y in zip(c.entries, c_prime.entries))
        nb, nc = b.norm(bits), c.norm(bits)
        certified = nc.hi <= bound * nb.lo
        ratio = nc.value / nb.value if nb.value else 0.0
        max_ratio = max(max_ratio, ratio)
        ok = certified and roundtrip
        if not ok:
            violations += 1
        records.append(DivisionTrial(t, b.degree, nb.value, nc.value, ratio,
                                     float(bound), certified, roundtrip))
    return CertificateReport(r, bound, tuple(records), max_ratio, violations)


# -- variable inversion and the duality pairing ------------------------

def invert_variable(x: RingElement) -> RingElement:
    """Send the coefficient of T^n to T^-n.

    Overconvergent elements at witness r' > 1 land in the outer-tail
    ring at witness 1/r'; single-signed outer-tail elements (support
    <= 0) map back.  The map is an involution on supports and a
    bijection on coefficients.
    """
    s = x.series.trim()
    flipped = s.reverse_degrees()
    if x.ring == OVERCONVERGENT:
        return outer_tail(flipped, 1 / x.witness)
    if x.ring == POLYNOMIAL:
        raise SupportError("pick a witness radius first: polynomials are "
                           "radius-indexed families")
    if x.ring == OUTER_TAIL:
        sup = s.support()
        if sup and sup[-1] > 0:
            raise SupportError("inversion of an outer-tail element needs "
                               "support <= 0")
        return overconvergent(flipped, 1 / x.witness)
    raise SupportError(f"inversion undefined on ring tag {x.ring!r}")


def dual_pairing(f: WeightedSeries, g: RingElement):
    """The residue pairing between a disc-algebra stage and the outer ring.

    ``f`` lives in the disc algebra of radius r < 1 (support >= 0);
    ``g`` is an outer-tail element with strictly negative support at
    the same witness r.  The value is sum_{n>=0} a_n b_{-(n+1)}, the
    coefficient of T^-1 in f*g, and satisfies
    |pairing| <= r ||f||_r ring_norm(g).
    """
    if g.ring != OUTER_TAIL:
        raise SupportError("pairing expects an outer-tail second argument")
    gs = g.series.trim()
    sup = gs.support()
    if sup and sup[-1] > -1:
        raise SupportError("pairing needs strictly negative support")
    fs = f.trim()
    if fs.support() and fs.support()[0] < 0:
        raise SupportError("pairing needs nonnegative support on the left")
    if f.radius != g.witness:
        raise ValueError("pairing requires a shared radius parameter")
    acc = scalar_zero(fs.backend)
    for i, a in enumerate(fs.coeffs):
        n = fs.low + i
        bcoef = gs.coeff(-(n + 1))
        if not (scalar_is_zero(a) or scalar_is_zero(bcoef)):
            acc = acc + a * bcoef
    return acc


def dual_pairing_bound(f: WeightedSeries, g: RingElement,
                       bits: int = DEFAULT_BITS) -> NormValue:
    """The certified bound r * ||f||_r * ring_norm(g) for the pairing."""
    r = f.radius
    nf = weighted_norm(f, bits)
    ng = ring_norm(g, bits=bits)
    out = nf * ng
    return out.scale(r)
