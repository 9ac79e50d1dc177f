"""Symbolic regions of the line cut out by modulus constraints.

A region is a finite union of finite intersections of constraints
``|f| rel c`` with f a polynomial, rel one of <=, <, >=, >, and c a
positive rational.  The lattice operations are DNF product and
concatenation; the pointwise semantics over evaluation points is the
concrete shadow of the closed/open subset calculus the analytic rings
generate, and everything here is tested against that semantics.

Membership has two paths:

* exact: |f(z)|^2 is compared to c^2 in rational arithmetic, so single
  points are always decided;
* fast: vectorized float evaluation over sampled point batches with a
  guard band; points inside the band are reported undecided rather
  than silently classified, and any counterexample candidate is
  re-verified on the exact path before it is reported.

Verdicts are falsification results: a counterexample refutes a
containment, while NoCounterexampleFound is evidence, not proof.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import ConfigError, ParseError
from .polynomials import Poly, constant, format_poly, parse_poly
from .scalars import (ExactComplex, as_fraction, exact_from_complex,
                      format_rational)

RELATIONS = ("<=", "<", ">=", ">")

FALSE, TRUE, UNDECIDED = np.int8(0), np.int8(1), np.int8(2)


@dataclass(frozen=True, slots=True)
class Constraint:
    f: Poly
    rel: str
    c: Fraction

    def __post_init__(self):
        if self.rel not in RELATIONS:
            raise ValueError(f"unknown relation {self.rel!r}")
        if self.c <= 0:
            raise ValueError("constraint constants must be positive")
        if self.f.is_zero():
            raise ValueError("constraint polynomials must be nonzero")

    def holds_at(self, z: ExactComplex) -> bool:
        """Exact decision of |f(z)| rel c via squared moduli."""
        a2 = self.f.eval(z).abs2()
        c2 = self.c * self.c
        if self.rel == "<=":
            return a2 <= c2
        if self.rel == "<":
            return a2 < c2
        if self.rel == ">=":
            return a2 >= c2
        return a2 > c2

    def sort_key(self):
        fk = tuple((c.re.numerator, c.re.denominator,
                    c.im.numerator, c.im.denominator) for c in self.f.coeffs)
        return (fk, self.rel, self.c)

    def __str__(self) -> str:
        return f"|{format_poly(self.f, compact=True)}| {self.rel} " \
               f"{format_rational(self.c)}"


@dataclass(frozen=True, slots=True)
class RegionExpr:
    """DNF: a union of conjunctions.  () is empty, ((),) is everything."""

    terms: tuple[tuple[Constraint, ...], ...]

    def is_empty_literal(self) -> bool:
        return not self.terms

    def is_full_literal(self) -> bool:
        return any(not t for t in self.terms)

    def constraints(self) -> list[Constraint]:
        seen: dict[Constraint, None] = {}
        for t in self.terms:
            for c in t:
                seen.setdefault(c)
        return list(seen)

    def __str__(self) -> str:
        if not self.terms:
            return "empty"
        parts = []
        for t in self.terms:
            if not t:
                return "full"
            parts.append(" & ".join(str(c) for c in t))
        return " | ".join(f"({p})" if len(self.terms) > 1 and "&" in p else p
                          for p in parts)


EMPTY = RegionExpr(())
FULL = RegionExpr(((),))


def normalize(region: RegionExpr) -> RegionExpr:
    """Sort and deduplicate; absorb conjunctions refined by another.

    Purely syntactic and idempotent; the pointwise semantics is
    unchanged.
    """
    conjs = []
    for t in region.terms:
        uniq = sorted(set(t), key=Constraint.sort_key)
        conjs.append(tuple(uniq))
    # dedupe
    seen = []
    for t in conjs:
        if t not in seen:
            seen.append(t)
    # absorption: drop any conjunction whose constraint set contains
    # another one (the smaller set covers it)
    kept = []
    sets = [frozenset(t) for t in seen]
    for i, t in enumerate(seen):
        absorbed = any(j != i and sets[j] < sets[i] or
                       (sets[j] == sets[i] and j < i)
                       for j in range(len(seen)))
        if not absorbed:
            kept.append(t)
    kept.sort(key=lambda t: [c.sort_key() for c in t])
    if any(not t for t in kept):
        return FULL
    return RegionExpr(tuple(kept))


def region_atom(f: Poly, rel: str, c) -> RegionExpr:
    """A single-constraint region; constant polynomials collapse.

    |k| rel c has one truth value for constant k, decided exactly on
    squared moduli, so the region degenerates to Full or Empty.  This
    keeps the nonzero-f invariant on stored constraints and spares the
    sampler from constraints that sit identically on a boundary.
    """
    c = as_fraction(c)
    if f.is_constant():
        a2 = f.coeff(0).abs2()
        c2 = c * c
        holds = {"<=": a2 <= c2, "<": a2 < c2,
                 ">=": a2 >= c2, ">": a2 > c2}[rel]
        return FULL if holds else EMPTY
    return RegionExpr(((Constraint(f, rel, c),),))


def meet(a: RegionExpr, b: RegionExpr) -> RegionExpr:
    return normalize(RegionExpr(tuple(t1 + t2 for t1 in a.terms
                                      for t2 in b.terms)))


def join(a: RegionExpr, b: RegionExpr) -> RegionExpr:
    return normalize(RegionExpr(a.terms + b.terms))


def meet_all(regions: Iterable[RegionExpr]) -> RegionExpr:
    out = FULL
    for r in regions:
        out = meet(out, r)
    return out


def member(region: RegionExpr, z, mode: str = "certified",
           band: float = 1e-9) -> bool:
    """Pointwise membership.

    ``certified`` converts the point losslessly to exact coordinates
    and decides; ``fast`` uses float evaluation and raises
    :class:`~analine.errors.BoundaryUndecidedError` inside the guard
    band instead of returning a possibly wrong bool.
    """
    if mode == "certified":
        ze = z if isinstance(z, ExactComplex) else exact_from_complex(complex(z))
        return any(all(c.holds_at(ze) for c in t) for t in region.terms)
    if mode != "fast":
        raise ValueError(f"unknown membership mode {mode!r}")
    from .errors import BoundaryUndecidedError
    pts = np.array([complex(z) if not isinstance(z, ExactComplex)
                    else z.to_complex()])
    code = region_mask(region, pts, band=band)[0]
    if code == UNDECIDED:
        raise BoundaryUndecidedError(
            f"point within the guard band of a constraint boundary: {z}")
    return bool(code == TRUE)


# -- vectorized three-valued evaluation ---------------------------------

class _AbsCache(dict):
    """Memo of |f(points)| arrays keyed by polynomial."""

    def __init__(self, pts: np.ndarray):
        super().__init__()
        self.pts = pts

    def abs_values(self, f: Poly) -> np.ndarray:
        got = self.get(f)
        if got is None:
            coeffs = f.to_complex_list()
            acc = np.zeros(len(self.pts), dtype=complex)
            for c in reversed(coeffs):
                acc *= self.pts
                acc += c
            got = np.abs(acc)
            self[f] = got
        return got


def constraint_mask(con: Constraint, cache: _AbsCache,
                    band: float = 1e-9) -> np.ndarray:
    vals = cache.abs_values(con.f)
    c = float(con.c)
    guard = band * (vals + c) + 1e-15
    if con.rel in ("<=", "<"):
        true_m = vals < c - guard
        false_m = vals > c + guard
    else:
        true_m = vals > c + guard
        false_m = vals < c - guard
    out = np.full(vals.shape, UNDECIDED, dtype=np.int8)
    out[true_m] = TRUE
    out[false_m] = FALSE
    return out


def _and_masks(masks: Sequence[np.ndarray], n: int) -> np.ndarray:
    if not masks:
        return np.full(n, TRUE, dtype=np.int8)
    any_false = np.zeros(n, dtype=bool)
    any_undec = np.zeros(n, dtype=bool)
    for m in masks:
        any_false |= m == FALSE
        any_undec |= m == UNDECIDED
    out = np.full(n, TRUE, dtype=np.int8)
    out[any_undec] = UNDECIDED
    out[any_false] = FALSE
    return out


def region_mask(region: RegionExpr, pts: np.ndarray,
                cache: _AbsCache | None = None,
                band: float = 1e-9) -> np.ndarray:
    """Three-valued membership codes for a batch of float points."""
    cache = cache if cache is not None else _AbsCache(pts)
    n = len(pts)
    if not region.terms:
        return np.full(n, FALSE, dtype=np.int8)
    any_true = np.zeros(n, dtype=bool)
    any_undec = np.zeros(n, dtype=bool)
    for t in region.terms:
        m = _and_masks([constraint_mask(c, cache, band) for c in t], n)
        any_true |= m == TRUE
        any_undec |= m == UNDECIDED
    out = np.full(n, FALSE, dtype=np.int8)
    out[any_undec] = UNDECIDED
    out[any_true] = TRUE
    return out


# -- samplers and verdicts ----------------------------------------------

@dataclass(frozen=True)
class SamplerConfig:
    """A bounded window, a grid density, and a seeded random batch.

    Points are ordered grid first (row-major from the lower-left
    corner), then the random batch; the order depends only on the
    configuration, never on chunking.
    """

    window: tuple[Fraction, Fraction, Fraction, Fraction] = (
        Fraction(-4), Fraction(-4), Fraction(4), Fraction(4))
    grid_step: Fraction | None = Fraction(1, 32)
    random_points: int = 10_000
    seed: int = 0
    chunk_size: int = 16_384

    def __post_init__(self):
        x0, y0, x1, y1 = self.window
        if not (x0 < x1 and y0 < y1):
            raise ConfigError("window must be a nonempty rectangle")
        if self.grid_step is not None and self.grid_step <= 0:
            raise ConfigError("grid step must be positive")
        if self.random_points < 0:
            raise ConfigError("random point count must be nonnegative")


def sampler_config(window=(-4, -4, 4, 4), grid_step=Fraction(1, 32),
                   random_points: int = 10_000, seed: int = 0,
                   chunk_size: int = 16_384) -> SamplerConfig:
    win = tuple(as_fraction(w) for w in window)
    step = None if grid_step in (None, 0) else as_fraction(grid_step)
    return SamplerConfig(win, step, random_points, seed, chunk_size)


_POINT_CACHE: dict[SamplerConfig, np.ndarray] = {}


def sample_points(cfg: SamplerConfig) -> np.ndarray:
    """All sample points as one complex array, grid first.

    Cached per configuration; callers must treat the array as
    read-only.
    """
    cached = _POINT_CACHE.get(cfg)
    if cached is not None:
        return cached
    pts = _generate_points(cfg)
    if len(_POINT_CACHE) > 8:
        _POINT_CACHE.clear()
    _POINT_CACHE[cfg] = pts
    return pts


def _generate_points(cfg: SamplerConfig) -> np.ndarray:
    x0, y0, x1, y1 = cfg.window
    parts = []
    if cfg.grid_step is not None:
        step = cfg.grid_step
        nx = int((x1 - x0) / step) + 1
        ny = int((y1 - y0) / step) + 1
        xs = np.array([float(x0 + i * step) for i in range(nx)])
        ys = np.array([float(y0 + j * step) for j in range(ny)])
        grid = xs[None, :] + 1j * ys[:, None]
        parts.append(grid.reshape(-1))
    if cfg.random_points:
        rng = np.random.Generator(np.random.PCG64(cfg.seed))
        re = rng.uniform(float(x0), float(x1), cfg.random_points)
        im = rng.uniform(float(y0), float(y1), cfg.random_points)
        parts.append(re + 1j * im)
    if not parts:
        return np.zeros(0, dtype=complex)
    return np.concatenate(parts)


@dataclass(frozen=True)
class Counterexample:
    index: int
    z: complex
    detail: str


@dataclass(frozen=True)
class Verdict:
    samples: int
    undecided: int
    counterexample: Counterexample | None = None

    @property
    def outcome(self) -> str:
        return ("Counterexample" if self.counterexample is not None
                else "NoCounterexampleFound")

    @property
    def found(self) -> bool:
        return self.counterexample is not None

    @property
    def vacuous(self) -> bool:
        return self.samples == 0 and self.counterexample is None


def merge_verdicts(a: Verdict, b: Verdict) -> Verdict:
    """Associative merge; the earliest-index counterexample wins."""
    ce = a.counterexample
    if ce is None or (b.counterexample is not None
                      and b.counterexample.index < ce.index):
        ce = b.counterexample
    return Verdict(a.samples + b.samples, a.undecided + b.undecided, ce)


def _chunks(pts: np.ndarray, size: int):
    for start in range(0, len(pts), size):
        yield start, pts[start:start + size]


def _search(r1: RegionExpr, r2: RegionExpr, pts: np.ndarray,
            chunk_size: int, band: float, predicate) -> Verdict:
    """Partition-independent counterexample search.

    Masks are evaluated chunk by chunk and merged; candidate violations
    are then certified exactly in global index order, so the verdict
    (including the undecided count) does not depend on the chunking.
    """
    undecided = 0
    candidates: list[int] = []
    for base, chunk in _chunks(pts, chunk_size):
        cache = _AbsCache(chunk)
        m1 = region_mask(r1, chunk, cache, band)
        m2 = region_mask(r2, chunk, cache, band)
        undec = (m1 == UNDECIDED) | (m2 == UNDECIDED)
        viol = (~undec) & predicate(m1, m2)
        undecided += int(np.count_nonzero(undec))
        candidates.extend(base + int(i) for i in np.flatnonzero(viol))
    ce = None
    for idx in candidates:
        z = complex(pts[idx])
        ze = exact_from_complex(z)
        in1, in2 = member(r1, ze), member(r2, ze)
        confirmed = (in1 != in2) if predicate is _NE else (in1 and not in2)
        if confirmed:
            detail = (f"membership differs between {r1} and {r2}"
                      if predicate is _NE else f"in {r1} but not in {r2}")
            ce = Counterexample(idx, z, detail)
            break
        undecided += 1
    return Verdict(len(pts), undecided, ce)


def _GT(m1, m2):
    return (m1 == TRUE) & (m2 == FALSE)


def _NE(m1, m2):
    return m1 != m2


def includes(r1: RegionExpr, r2: RegionExpr, cfg: SamplerConfig,
             band: float = 1e-9) -> Verdict:
    """Search for a certified point of r1 outside r2.

    Falsification only: NoCounterexampleFound is not a containment
    proof.  Counterexamples are re-verified exactly before reporting.
    """
    return _search(r1, r2, sample_points(cfg), cfg.chunk_size, band, _GT)


def pointwise_equal(r1: RegionExpr, r2: RegionExpr, cfg: SamplerConfig,
                    band: float = 1e-9) -> Verdict:
    """Search for a certified point where memberships disagree."""
    return _search(r1, r2, sample_points(cfg), cfg.chunk_size, band, _NE)


def distributivity_check(r1: RegionExpr, r2: RegionExpr, r3: RegionExpr,
                         cfg: SamplerConfig, band: float = 1e-9) -> Verdict:
    """meet(r1, join(r2, r3)) vs join(meet(r1, r2), meet(r1, r3))."""
    lhs = meet(r1, join(r2, r3))
    rhs = join(meet(r1, r2), meet(r1, r3))
    return pointwise_equal(lhs, rhs, cfg, band)


# -- the axiom suite ------------------------------------------------------

#: Decreasing schedule of radii > 1 and the mirrored schedule < 1 used
#: for the finite stand-in of the limiting intersections of item (1).
SCHEDULE_ABOVE = (Fraction(2), Fraction(3, 2), Fraction(5, 4),
                  Fraction(9, 8), Fraction(17, 16))
SCHEDULE_BELOW = (Fraction(1, 2), Fraction(2, 3), Fraction(4, 5),
                  Fraction(8, 9), Fraction(16, 17))


@dataclass(frozen=True)
class ItemResult:
    item: str
    verdict: Verdict
    expect_counterexample: bool = False
    note: str = ""

    @property
    def passed(self) -> bool:
        if self.expect_counterexample:
            return self.verdict.found
        return not self.verdict.found


def gaga_axiom_suite(f: Poly, g: Poly, alpha: ExactComplex, r, s,
                     cfg: SamplerConfig, items: Sequence[int] | None = None,
                     negate: Sequence[int] = (),
                     band: float = 1e-9) -> list[ItemResult]:
    """Pointwise falsification suite for the six subset relations.

    Items:
      1  the unit constraint agrees with every stage of the finite
         radius schedule, in the testable direction (the limiting
         equality itself is a falsification-only statement);
      2  the closed inside and closed outside of the unit level cover
         everything;
      3  for r < 1 the r-disc and the outside of 1 are disjoint (when
         the whole suite runs with r >= 1 this item falls back to a
         documented branch radius of 1/2; selecting item 3 explicitly
         with r >= 1 is a usage error);
      4  products: inside*inside stays inside, outside*outside stays
         outside;
      5  the constant alpha is a member of everything on its branch;
      6  sum bound: the r-disc of f meets the s-disc of g inside the
         (r+s)-disc of f+g.

    ``negate=(6,)`` replaces the item-6 target radius by (r+s)/2, a
    false claim whose counterexample the sampler is expected to find.
    """
    r, s = as_fraction(r), as_fraction(s)
    if r <= 0 or s <= 0:
        raise ConfigError("radii must be positive")
    negate = frozenset(negate)
    if not negate <= {6}:
        raise ConfigError("only item 6 has a negated test mode")
    selected = frozenset(items) if items is not None else frozenset(range(1, 7))
    if not selected <= set(range(1, 7)):
        raise ConfigError("items must be within 1..6")
    results: list[ItemResult] = []

    one = Fraction(1)
    f_le_1 = region_atom(f, "<=", one)
    f_ge_1 = region_atom(f, ">=", one)

    if 1 in selected:
        sched_hi = meet_all(region_atom(f, "<=", rr) for rr in SCHEDULE_ABOVE)
        results.append(ItemResult(
            "1-le", includes(f_le_1, sched_hi, cfg, band),
            note="finite schedule; the limit equality is falsification-only"))
        sched_lo = meet_all(region_atom(f, ">=", rr) for rr in SCHEDULE_BELOW)
        results.append(ItemResult(
            "1-ge", includes(f_ge_1, sched_lo, cfg, band),
            note="finite schedule; the limit equality is falsification-only"))

    if 2 in selected:
        results.append(ItemResult(
            "2", includes(FULL, join(f_le_1, f_ge_1), cfg, band)))

    if 3 in selected:
        if r < 1:
            r3, note = r, ""
        elif items is not None:
            raise ConfigError("item 3 requires r < 1")
        else:
            r3, note = Fraction(1, 2), "r >= 1; used branch radius 1/2"
        inter = meet(region_atom(f, "<=", r3), f_ge_1)
        results.append(ItemResult("3", includes(inter, EMPTY, cfg, band),
                                  note=note))

    if 4 in selected:
        fg = f * g
        results.append(ItemResult(
            "4-mul-le",
            includes(meet(f_le_1, region_atom(g, "<=", one)),
                     region_atom(fg, "<=", one), cfg, band)))
        results.append(ItemResult(
            "4-mul-ge",
            includes(meet(f_ge_1, region_atom(g, ">=", one)),
                     region_atom(fg, ">=", one), cfg, band)))

    if 5 in selected:
        a2 = alpha.abs2()
        ran_branch = False
        if a2 <= 1:
            results.append(ItemResult(
                "5-le",
                includes(FULL, region_atom(constant(alpha), "<=", one),
                         cfg, band)))
            ran_branch = True
        if a2 >= 1:
            results.append(ItemResult(
                "5-ge",
                includes(FULL, region_atom(constant(alpha), ">=", one),
                         cfg, band)))
            ran_branch = True
        assert ran_branch

    if 6 in selected:
        target_c = (r + s) / 2 if 6 in negate else r + s
        lhs = meet(region_atom(f, "<=", r), region_atom(g, "<=", s))
        results.append(ItemResult(
            "6", includes(lhs, region_atom(f + g, "<=", target_c), cfg, band),
            expect_counterexample=6 in negate,
            note="negated target (r+s)/2" if 6 in negate else ""))

    return results


# -- random generation (seeded, for certificates and tests) --------------

def random_poly(rng: random.Random, max_degree: int = 5,
                coeff_bound: int = 10, gaussian: bool = True) -> Poly:
    """A random nonzero polynomial with small integer coefficients."""
    while True:
        deg = rng.randint(0, max_degree)
        coeffs = []
        for _ in range(deg + 1):
            re = rng.randint(-coeff_bound, coeff_bound)
            im = rng.randint(-coeff_bound, coeff_bound) if gaussian else 0
            coeffs.append(ExactComplex.of(re, im))
        p = Poly(tuple(coeffs))
        # retrim in case of a zero leading coefficient
        p = p + Poly(())
        if not p.is_zero():
            return p


def random_constraint(rng: random.Random, max_degree: int = 3,
                      coeff_bound: int = 5) -> Constraint:
    f = random_poly(rng, max_degree, coeff_bound)
    rel = rng.choice(RELATIONS)
    c = Fraction(rng.randint(1, 40), rng.randint(1, 8))
    return Constraint(f, rel, c)


def random_region(rng: random.Random, max_terms: int = 2,
                  max_conj: int = 2, max_degree: int = 3,
                  coeff_bound: int = 5) -> RegionExpr:
    terms = []
    for _ in range(rng.randint(1, max_terms)):
        terms.append(tuple(random_constraint(rng, max_degree, coeff_bound)
                           for _ in range(rng.randint(1, max_conj))))
    return normalize(RegionExpr(tuple(terms)))


# -- region literal grammar ----------------------------------------------

def parse_region(text: str) -> RegionExpr:
    """Parse ``|f| <= c`` atoms combined with ``&``, ``|`` and parens.

    The polynomial between the modulus bars uses the shared
    ``deg:coeff`` format.  ``full`` and ``empty`` are accepted as
    atoms.  The two roles of the bar character do not collide: a bar in
    operand position opens a modulus, a bar after a complete operand is
    the join operator.
    """
    p = _RegionParser(text)
    region = p.parse_union()
    p.skip_ws()
    if p.pos != len(p.text):
        raise ParseError("trailing input in region literal", position=p.pos)
    return normalize(region)


class _RegionParser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse_union(self) -> RegionExpr:
        out = self.parse_intersection()
        while self.peek() == "|":
            self.pos += 1
            out = join(out, self.parse_intersection())
        return out

    def parse_intersection(self) -> RegionExpr:
        out = self.parse_factor()
        while self.peek() == "&":
            self.pos += 1
            out = meet(out, self.parse_factor())
        return out

    def parse_factor(self) -> RegionExpr:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            out = self.parse_union()
            if self.peek() != ")":
                raise ParseError("expected ')'", position=self.pos)
            self.pos += 1
            return out
        if ch == "|":
            return self.parse_atom()
        for word, value in (("full", FULL), ("empty", EMPTY)):
            if self.text[self.pos:self.pos + len(word)].lower() == word:
                self.pos += len(word)
                return value
        raise ParseError("expected a constraint, 'full', 'empty' or '('",
                         position=self.pos)

    def parse_atom(self) -> RegionExpr:
        assert self.peek() == "|"
        self.pos += 1
        close = self.text.find("|", self.pos)
        if close < 0:
            raise ParseError("unterminated modulus bars", position=self.pos)
        poly_text = self.text[self.pos:close]
        try:
            f = parse_poly(poly_text)
        except ParseError as exc:
            raise ParseError(f"bad polynomial in constraint: {exc}",
                             position=self.pos) from None
        self.pos = close + 1
        self.skip_ws()
        rel = None
        for cand in ("<=", ">=", "<", ">"):
            if self.text.startswith(cand, self.pos):
                rel = cand
                self.pos += len(cand)
                break
        if rel is None:
            raise ParseError("expected one of <=, <, >=, >", position=self.pos)
        self.skip_ws()
        start = self.pos
        while (self.pos < len(self.text)
               and self.text[self.pos] not in "&|() \t\n"):
            self.pos += 1
        try:
            c = Fraction(self.text[start:self.pos])
        except (ValueError, ZeroDivisionError):
            raise ParseError("bad constraint constant", position=start) from None
        return region_atom(f, rel, c)
