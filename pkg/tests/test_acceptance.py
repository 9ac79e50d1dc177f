"""Acceptance gate: every top-level criterion at its stated scale.

Each test runs one criterion through the shared selftest engine and
prints a single pass/fail line.  The same checks back ``analine
selftest``; criterion 10 (byte determinism) is exercised through two
real CLI runs with identical configuration.
"""

import subprocess
import sys
import time

from analine.selftest import (SelftestConfig, check_axiom_suite,
                              check_division_bound, check_division_exhaustive,
                              check_huber_site, check_lattice_laws,
                              check_laurent_splitting, check_negative_control,
                              check_pairing_bound, check_seminorms)

FULL = SelftestConfig()      # seed 0, spec-scale trial counts


def _report(n, res, budget=None):
    line = f"criterion {n}: {'PASS' if res.passed else 'FAIL'} " \
           f"[{res.key}] {res.summary} ({res.seconds:.1f}s)"
    print(line)
    assert res.passed, line
    if budget is not None:
        assert res.seconds < budget, f"criterion {n} over budget: {line}"


def test_criterion_1_division_bound():
    # 10^3 kernel elements per radius in {1/4, 1/2, 3/4, 9/10}, degree
    # <= 20, exact multiply-back and certified norm comparison, < 60 s
    _report(1, check_division_bound(FULL), budget=60.0)


def test_criterion_2_division_exhaustive():
    # exhaustive small-degree kernel family over the {-2..2}^2 grid
    _report(2, check_division_exhaustive(FULL))


def test_criterion_3_laurent_splitting():
    # 10^3 random two-sided elements, exact reassembly, norm bounds,
    # polynomial round-trips, < 10 s
    _report(3, check_laurent_splitting(FULL), budget=10.0)


def test_criterion_4_pairing_bound():
    # 10^3 random pairs per radius in {1/2, 3/4}, certified bound
    _report(4, check_pairing_bound(FULL))


def test_criterion_5_region_axiom_suite():
    # 100 random configurations, window [-4,4]^2, grid 1/32, 10^4
    # random points, seed 0, < 120 s on the float sampling path
    _report(5, check_axiom_suite(FULL), budget=120.0)


def test_criterion_6_negative_control():
    # the false sum-bound variant must be refuted within the budget
    _report(6, check_negative_control(FULL))


def test_criterion_7_seminorm_axioms_and_roots():
    # 10^3 exact multiplicativity/triangle pairs of degree <= 8; 50
    # random rational polynomials: root count = squarefree degree,
    # residual < 1e-8
    _report(7, check_seminorms(FULL))


def test_criterion_8_lattice_laws():
    # 200 random region triples over the default sampler
    _report(8, check_lattice_laws(FULL))


def test_criterion_9_huber_site():
    # valuation axioms on 10^3 pairs for each of 20 valuations; the
    # shipped cover corpus is reflexive/transitive; localization
    # composition holds on all fixtures
    _report(9, check_huber_site(FULL))


QUICK = ["--trials", "25", "--configs", "3", "--triples", "5",
         "--valuations", "3", "--random-points", "500",
         "--grid-step", "1/8", "--window", "-2,-2,2,2", "--seed", "0"]


def test_criterion_10_determinism():
    # two selftest runs with identical config: byte-identical reports
    argv = [sys.executable, "-m", "analine.cli", "selftest", *QUICK]
    t0 = time.perf_counter()
    first = subprocess.run(argv, capture_output=True)
    second = subprocess.run(argv, capture_output=True)
    dt = time.perf_counter() - t0
    ok = (first.returncode == 0 and second.returncode == 0
          and first.stdout == second.stdout and first.stdout)
    print(f"criterion 10: {'PASS' if ok else 'FAIL'} [determinism] "
          f"two identical selftest runs, byte-identical={first.stdout == second.stdout} "
          f"({dt:.1f}s)")
    assert first.returncode == 0, first.stdout.decode()[-2000:]
    assert second.returncode == 0
    assert first.stdout == second.stdout
    assert b"record=overall pass=true" in first.stdout
