"""The acceptance suite: every top-level guarantee as a runnable check.

Each criterion is an importable function returning a
:class:`CriterionResult`; :func:`run_selftest` runs them all with one
seed and emits a deterministic pass/fail report.  The same functions
back the pytest acceptance module and the ``selftest`` CLI command.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import combinations_with_replacement

from .berkovich import AlgebraDescriptor, SqrtValue, gelfand_points
from .huber import (default_fixture_path, load_fixture_file, order_valuation,
                    pairs_equivalent, rational_localize, refines,
                    valuation_axiom_check)
from .polynomials import ONE, Poly, squarefree_part
from .regions import (SamplerConfig, gaga_axiom_suite, join, meet,
                      pointwise_equal, random_poly, random_region,
                      sampler_config)
from .reports import record
from .rings import (divide_by_t_minus_u, dual_pairing, dual_pairing_bound,
                    laurent_split, mul_by_t_minus_u, outer_tail,
                    overconvergent, reassemble, recover_polynomial, ring_norm,
                    series_poly, strictness_certificate, two_sided)
from .scalars import ExactComplex
from .series import make_series


@dataclass(frozen=True)
class SelftestConfig:
    seed: int = 0
    trials: int = 1000
    configs: int = 100
    triples: int = 200
    valuations: int = 20
    division_degree: int = 20
    cap: int = 256
    window: tuple = (Fraction(-4), Fraction(-4), Fraction(4), Fraction(4))
    grid_step: Fraction | None = Fraction(1, 32)
    random_points: int = 10_000
    fixtures_path: str | None = None

    def sampler(self) -> SamplerConfig:
        return sampler_config(self.window, self.grid_step,
                              self.random_points, self.seed)


@dataclass
class CriterionResult:
    key: str
    passed: bool
    summary: str
    records: list[str] = field(default_factory=list)
    seconds: float = 0.0


def _timed(fn):
    def wrapper(cfg: SelftestConfig) -> CriterionResult:
        t0 = time.perf_counter()
        out = fn(cfg)
        out.seconds = time.perf_counter() - t0
        return out
    wrapper.__name__ = fn.__name__
    return wrapper


# -- 1: randomized division bound ----------------------------------------

DIVISION_RADII = (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4),
                  Fraction(9, 10))


@_timed
def check_division_bound(cfg: SelftestConfig) -> CriterionResult:
    """Randomized kernel elements divide back exactly within the bound."""
    degree = min(cfg.division_degree, max(1, cfg.cap))
    records, violations = [], 0
    worst = 0.0
    for i, r in enumerate(DIVISION_RADII):
        rep = strictness_certificate(r, trials=cfg.trials, max_degree=degree,
                                     seed=cfg.seed + i)
        violations += rep.violations
        worst = max(worst, rep.max_ratio / float(rep.bound))
        records.append(record(
            ("record", "division"), ("radius", r), ("trials", cfg.trials),
            ("max_ratio", rep.max_ratio), ("bound", rep.bound),
            ("violations", rep.violations)))
    return CriterionResult(
        "division-bound", violations == 0,
        f"{len(DIVISION_RADII)}x{cfg.trials} trials, deg<={degree}, "
        f"worst ratio/bound {worst:.3f}, violations {violations}", records)


# -- 2: exhaustive division at small degree --------------------------------

@_timed
def check_division_exhaustive(cfg: SelftestConfig) -> CriterionResult:
    """Exhaustive two-slot kernel family over the small coefficient grid.

    Quotients c' = a T^j1 U^i1 + b T^j2 U^i2 range over all pairs of
    monomial slots with i, j <= 2 and a, b over the full Gaussian grid
    with real and imaginary parts in {-2..2}; the kernel elements
    (T - U) c' then cover every combined degree <= 6.  Division must
    reproduce c' exactly and obey the norm bound.
    """
    span = 2 if cfg.cap >= 6 else 1
    r = Fraction(1, 2)
    grid = [ExactComplex.of(re, im)
            for re in range(-2, 3) for im in range(-2, 3)]
    slots = [(i, j) for i in range(span + 1) for j in range(span + 1)]
    checked, violations = 0, 0
    for (i1, j1), (i2, j2) in combinations_with_replacement(slots, 2):
        for a in grid:
            for b in grid:
                if a.is_zero() and b.is_zero():
                    continue
                top = max(i1, i2)
                entries = [dict() for _ in range(top + 1)]
                entries[i1][j1] = a
                if (i2, j2) == (i1, j1):
                    if b != a:
                        continue        # collapsed with the a loop
                else:
                    entries[i2][j2] = b
                c_prime = series_poly(entries, radius=r)
                if c_prime.is_zero():
                    continue
                bker = mul_by_t_minus_u(c_prime)
                c = divide_by_t_minus_u(bker, check=False)
                checked += 1
                same = all(x.same_series(y) for x, y in
                           zip(c.entries, c_prime.entries))
                back = mul_by_t_minus_u(c)
                multiply_back = all(x.same_series(y) for x, y in
                                    zip(back.entries, bker.entries))
                if not (same and multiply_back):
                    violations += 1
    rec = record(("record", "division_exhaustive"), ("radius", r),
                 ("checked", checked), ("violations", violations))
    return CriterionResult(
        "division-exhaustive", violations == 0,
        f"{checked} kernel elements, deg<=6, violations {violations}", [rec])


# -- 3: splitting and recovery ---------------------------------------------

def _random_scalar(rng: random.Random, bound: int = 9) -> ExactComplex:
    return ExactComplex.of(rng.randint(-bound, bound),
                           rng.randint(-bound, bound))


def _random_two_sided(rng: random.Random):
    low = -rng.randint(1, 12)
    high = rng.randint(0, 12)
    coeffs = {n: _random_scalar(rng) for n in range(low, high + 1)}
    r = 1 + Fraction(rng.randint(1, 8), 8)
    s = Fraction(rng.randint(1, 7), 8)
    return two_sided(make_series(coeffs, r), r, s)


@_timed
def check_laurent_splitting(cfg: SelftestConfig) -> CriterionResult:
    """Split-reassemble identity, norm bounds, polynomial round-trip."""
    rng = random.Random(cfg.seed + 3)
    violations = 0
    for _ in range(cfg.trials):
        h = _random_two_sided(rng)
        f, g = laurent_split(h)
        nh = ring_norm(h)
        if not reassemble(f, g).series.same_series(h.series):
            violations += 1
        if ring_norm(f).hi > nh.hi or ring_norm(g).hi > nh.hi:
            violations += 1
        # polynomial round-trip through both one-sided embeddings
        p = {n: _random_scalar(rng) for n in range(rng.randint(1, 9))}
        emb_in = overconvergent(make_series(p, h.witness), h.witness)
        emb_out = overconvergent(make_series(p, h.witness), h.witness)
        got = recover_polynomial(emb_in, emb_out)
        if not got or not got.series.same_series(emb_in.series):
            violations += 1
        # the outer part vanishes exactly when h had no negative support
        if g.series.is_zero() != h.series.negative_part().is_zero():
            violations += 1
    rec = record(("record", "splitting"), ("trials", cfg.trials),
                 ("violations", violations))
    return CriterionResult(
        "laurent-splitting", violations == 0,
        f"{cfg.trials} random two-sided elements, violations {violations}",
        [rec])


# -- 4: duality pairing bound -----------------------------------------------

PAIRING_RADII = (Fraction(1, 2), Fraction(3, 4))


@_timed
def check_pairing_bound(cfg: SelftestConfig) -> CriterionResult:
    """|pairing(f,g)| <= r ||f|| ||g||, certified; zero violations."""
    rng = random.Random(cfg.seed + 4)
    violations, certified = 0, 0
    total = 0
    for r in PAIRING_RADII:
        for _ in range(cfg.trials):
            f = make_series({n: _random_scalar(rng)
                             for n in range(rng.randint(1, 12))}, r)
            g = outer_tail(make_series(
                {-n: _random_scalar(rng)
                 for n in range(1, rng.randint(2, 12))}, r), r)
            if g.series.is_zero():
                continue
            total += 1
            value = dual_pairing(f, g)
            viv = value.abs_interval()
            bound = dual_pairing_bound(f, g)
            if viv.lo > bound.hi:
                violations += 1
            elif viv.hi <= bound.lo or (viv.hi == 0 and bound.lo >= 0):
                certified += 1
    rec = record(("record", "pairing"), ("pairs", total),
                 ("certified_strict", certified), ("violations", violations))
    return CriterionResult(
        "pairing-bound", violations == 0,
        f"{total} pairs over r in (1/2, 3/4), certified {certified}, "
        f"violations {violations}", [rec])


# -- 5/6: the region axiom suite ---------------------------------------------

def _random_suite_inputs(rng: random.Random):
    f = random_poly(rng, max_degree=5, coeff_bound=7)
    g = random_poly(rng, max_degree=5, coeff_bound=7)
    alpha = ExactComplex(Fraction(rng.randint(-8, 8), rng.randint(1, 4)),
                         Fraction(rng.randint(-8, 8), rng.randint(1, 4)))
    r = Fraction(rng.randint(1, 16), rng.randint(1, 8))
    s = Fraction(rng.randint(1, 16), rng.randint(1, 8))
    return f, g, alpha, r, s


@_timed
def check_axiom_suite(cfg: SelftestConfig) -> CriterionResult:
    """Randomized configurations find no counterexample to any relation."""
    rng = random.Random(cfg.seed + 5)
    sampler = cfg.sampler()
    failures, undecided, relations = 0, 0, 0
    for _ in range(cfg.configs):
        f, g, alpha, r, s = _random_suite_inputs(rng)
        results = gaga_axiom_suite(f, g, alpha, r, s, sampler)
        for res in results:
            relations += 1
            undecided += res.verdict.undecided
            if not res.passed:
                failures += 1
    rec = record(("record", "axiom_suite"), ("configs", cfg.configs),
                 ("relations", relations), ("undecided_points", undecided),
                 ("failures", failures))
    return CriterionResult(
        "region-axiom-suite", failures == 0,
        f"{cfg.configs} configs / {relations} relations, failures {failures}",
        [rec])


@_timed
def check_negative_control(cfg: SelftestConfig) -> CriterionResult:
    """The deliberately false sum bound is refuted within the budget."""
    from .polynomials import T
    sampler = cfg.sampler()
    results = gaga_axiom_suite(T, ONE, ExactComplex.of(Fraction(1, 2)),
                               1, 1, sampler, items=(6,), negate=(6,))
    res = results[0]
    found = res.verdict.found
    z = res.verdict.counterexample.z if found else None
    rec = record(("record", "negative_control"), ("found", found),
                 ("z", z if z is not None else "none"))
    return CriterionResult(
        "negative-control", res.passed,
        f"counterexample {'found at ' + str(z) if found else 'NOT found'}",
        [rec])


# -- 7: seminorm axioms and spectrum points ----------------------------------

@_timed
def check_seminorms(cfg: SelftestConfig) -> CriterionResult:
    """Exact multiplicativity/triangle at evaluation points; root counts."""
    rng = random.Random(cfg.seed + 7)
    violations = 0
    for _ in range(cfg.trials):
        z = ExactComplex(Fraction(rng.randint(-12, 12), rng.randint(1, 6)),
                         Fraction(rng.randint(-12, 12), rng.randint(1, 6)))
        a = random_poly(rng, max_degree=8, coeff_bound=9)
        b = random_poly(rng, max_degree=8, coeff_bound=9)
        va, vb = a.eval(z).abs2(), b.eval(z).abs2()
        if (a * b).eval(z).abs2() != va * vb:
            violations += 1
        if not SqrtValue((a + b).eval(z).abs2()).triangle_le(
                SqrtValue(va), SqrtValue(vb)):
            violations += 1

    roots_checked, root_mismatch, max_residual = 0, 0, 0.0
    for k in range(50):
        if k % 3 == 0:
            base = _random_rational_poly(rng, 3)
            p = base * base * _random_rational_poly(rng, 2)
        else:
            p = _random_rational_poly(rng, 8)
        if p.degree < 1:
            p = p * Poly((ExactComplex.of(0), ExactComplex.of(1)))
        spec = gelfand_points(AlgebraDescriptor((p,)))
        roots_checked += 1
        if len(spec.roots) != squarefree_part(p).degree:
            root_mismatch += 1
        for enc in spec.roots:
            max_residual = max(max_residual, enc.residual)
    ok = violations == 0 and root_mismatch == 0 and max_residual < 1e-8
    rec = record(("record", "seminorms"), ("pairs", cfg.trials),
                 ("violations", violations), ("root_sets", roots_checked),
                 ("root_mismatches", root_mismatch),
                 ("max_residual", max_residual))
    return CriterionResult(
        "seminorm-axioms", ok,
        f"{cfg.trials} exact pairs, {roots_checked} spectra, "
        f"max residual {max_residual:.2e}", [rec])


def _random_rational_poly(rng: random.Random, max_degree: int) -> Poly:
    while True:
        deg = rng.randint(1, max_degree)
        coeffs = [ExactComplex.of(Fraction(rng.randint(-9, 9),
                                           rng.randint(1, 3)))
                  for _ in range(deg + 1)]
        p = Poly(tuple(coeffs)) + Poly(())
        if p.degree >= 1:
            return p


# -- 8: lattice laws -----------------------------------------------------------

@_timed
def check_lattice_laws(cfg: SelftestConfig) -> CriterionResult:
    """Distributivity, absorption and idempotence, pointwise."""
    rng = random.Random(cfg.seed + 8)
    sampler = cfg.sampler()
    failures = 0
    for _ in range(cfg.triples):
        r1, r2, r3 = (random_region(rng) for _ in range(3))
        laws = (
            (meet(r1, join(r2, r3)), join(meet(r1, r2), meet(r1, r3))),
            (join(r1, meet(r2, r3)), meet(join(r1, r2), join(r1, r3))),
            (join(r1, meet(r1, r2)), r1),
            (meet(r1, join(r1, r2)), r1),
            (meet(r1, r1), r1),
            (join(r1, r1), r1),
        )
        for lhs, rhs in laws:
            if pointwise_equal(lhs, rhs, sampler).found:
                failures += 1
    rec = record(("record", "lattice_laws"), ("triples", cfg.triples),
                 ("failures", failures))
    return CriterionResult(
        "lattice-laws", failures == 0,
        f"{cfg.triples} random triples x 6 laws, failures {failures}", [rec])


# -- 9: the Huber site ----------------------------------------------------------

@_timed
def check_huber_site(cfg: SelftestConfig) -> CriterionResult:
    """Valuation axioms, cover refinement laws, localization composition."""
    rng = random.Random(cfg.seed + 9)
    viol_val = 0
    pairs_checked = 0
    for _ in range(cfg.valuations):
        z = ExactComplex.of(rng.randint(-4, 4), rng.randint(-4, 4))
        gamma = Fraction(rng.randint(1, 9), 10)
        v = order_valuation(z, gamma)
        factor = Poly((-z, ExactComplex.of(1)))
        sample = []
        for _ in range(45):
            k = rng.choice((0, 0, 1, 1, 2, 3))
            p = random_poly(rng, max_degree=6 - k, coeff_bound=6)
            for _ in range(k):
                p = p * factor
            sample.append(p)
        rep = valuation_axiom_check(v, sample)
        pairs_checked += rep.checked_pairs
        if not rep.passed:
            viol_val += len(rep.violations)

    path = cfg.fixtures_path or default_fixture_path()
    pairs, covers = load_fixture_file(path)
    names = sorted(covers)
    refl_fail = sum(1 for n in names if not refines(covers[n], covers[n]))
    matrix = {}
    for a in names:
        for b in names:
            if pairs_equivalent(covers[a].base, covers[b].base):
                matrix[a, b] = bool(refines(covers[a], covers[b]))
    trans_fail = 0
    for (a, b), ab in matrix.items():
        if not ab:
            continue
        for c in names:
            if matrix.get((b, c)) and not matrix.get((a, c), True):
                trans_fail += 1

    from .polynomials import T, from_ints
    comp_fail = 0
    combos = ((T, from_ints(-1, 1)), (T * T, from_ints(1, 1)),
              (from_ints(-1, 1), from_ints(2, 1)))
    for base in pairs.values():
        for f, g in combos:
            twice = rational_localize(rational_localize(base, [f], ONE),
                                      [g], ONE)
            once = rational_localize(base, [f * g, f, g], ONE)
            if not pairs_equivalent(twice, once):
                comp_fail += 1

    ok = (viol_val == 0 and refl_fail == 0 and trans_fail == 0
          and comp_fail == 0 and len(covers) >= 10)
    rec = record(("record", "huber_site"), ("valuations", cfg.valuations),
                 ("pairs_checked", pairs_checked),
                 ("valuation_violations", viol_val),
                 ("covers", len(covers)), ("reflexive_failures", refl_fail),
                 ("transitivity_failures", trans_fail),
                 ("composition_failures", comp_fail))
    return CriterionResult(
        "huber-site", ok,
        f"{cfg.valuations} valuations / {pairs_checked} pairs, "
        f"{len(covers)} covers, failures "
        f"{viol_val + refl_fail + trans_fail + comp_fail}", [rec])


# -- runner -------------------------------------------------------------------

ALL_CHECKS = (
    check_division_bound,
    check_division_exhaustive,
    check_laurent_splitting,
    check_pairing_bound,
    check_axiom_suite,
    check_negative_control,
    check_seminorms,
    check_lattice_laws,
    check_huber_site,
)


def run_selftest(cfg: SelftestConfig) -> tuple[list[CriterionResult], list[str]]:
    """Run every check; returns results and the deterministic report lines.

    Timing is intentionally not part of the report so identical
    configurations produce identical bytes.
    """
    results = [fn(cfg) for fn in ALL_CHECKS]
    lines = [record(("record", "selftest"), ("seed", cfg.seed),
                    ("trials", cfg.trials), ("configs", cfg.configs),
                    ("triples", cfg.triples), ("valuations", cfg.valuations),
                    ("cap", cfg.cap), ("random_points", cfg.random_points))]
    for res in results:
        lines.extend(res.records)
        lines.append(record(("check", res.key), ("pass", res.passed),
                            ("detail", res.summary.replace(" ", "_"))))
    lines.append(record(("record", "overall"),
                        ("pass", all(r.passed for r in results))))
    return results, lines


def scaled_config(**overrides) -> SelftestConfig:
    return replace(SelftestConfig(), **overrides)
