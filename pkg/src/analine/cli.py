"""Command line entry point.

Subcommands: ``series`` (calculator over the analytic rings),
``certify`` (randomized division-bound certificates), ``axioms`` (the
region relation suite), ``plot`` (static region plots), ``site`` (the
Huber-pair explorer) and ``selftest`` (the full acceptance suite).

Reports are line-delimited ``key=value`` records with a stable field
order; identical configurations produce byte-identical output.  Exit
codes: 0 success, 1 a counterexample or check failure was found, 2
usage or configuration errors, 3 I/O errors.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import __version__
from .berkovich import RationalSubsetSpec
from .errors import AnalineError, ConfigError, NotInAdicSpectrumError, ParseError
from .huber import (default_fixture_path, load_fixture_file, order_valuation,
                    rational_localize, refines, spa_membership,
                    trivial_valuation, two_piece_cover, zariski_cover)
from .polynomials import parse_poly
from .regions import gaga_axiom_suite, parse_region, sampler_config
from .reports import (axioms_records, certificate_records, record,
                      write_report)
from .rings import (SeriesPoly, divide_by_t_minus_u, division_bound,
                    dual_pairing, dual_pairing_bound, laurent_split,
                    outer_tail, ring_norm, strictness_certificate, two_sided)
from .scalars import EXACT, FLOAT
from .selftest import SelftestConfig, run_selftest
from .series import (eval_series, format_series, mul, parse_complex_literal,
                     parse_series_tagged, weighted_norm)

EXIT_OK = 0
EXIT_FINDING = 1
EXIT_USAGE = 2
EXIT_IO = 3

DEFAULTS = {
    "backend": EXACT,
    "seed": 0,
    "window": "-4,-4,4,4",
    "grid_step": "1/32",
    "random_points": 10_000,
    "cap": 256,
    "chunk_size": 16_384,
    "radius": "1",
    "trials": 1000,
    "max_degree": 20,
}


def load_config_file(path: str) -> dict[str, str]:
    out = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key = value")
            key, _, val = line.partition("=")
            out[key.strip().replace("-", "_")] = val.strip()
    return out


class _Options:
    """Flag values resolved against the config file and hard defaults."""

    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.file_cfg = {}
        if getattr(args, "config", None):
            self.file_cfg = load_config_file(args.config)

    def get(self, key: str, cast=str, default=None):
        val = getattr(self.args, key, None)
        if val is None:
            val = self.file_cfg.get(key)
        if val is None:
            val = default if default is not None else DEFAULTS.get(key)
        if val is None:
            return None
        return cast(val) if isinstance(val, str) else val

    def sampler(self):
        window = self.get("window")
        if isinstance(window, str):
            parts = [Fraction(p) for p in window.split(",")]
            if len(parts) != 4:
                raise ConfigError("window needs x0,y0,x1,y1")
            window = tuple(parts)
        step_text = self.get("grid_step")
        step = None if str(step_text) in ("0", "none") else Fraction(str(step_text))
        return sampler_config(window, step, self.get("random_points", int),
                              self.get("seed", int),
                              self.get("chunk_size", int))

    def backend(self) -> str:
        b = self.get("backend")
        if b not in (EXACT, FLOAT):
            raise ConfigError(f"unknown backend {b!r}")
        return b


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="analine",
        description="computations on the analytic line over the complex numbers")
    parser.add_argument("--version", action="version", version=__version__)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value config file; flags win")
    common.add_argument("--backend", choices=(EXACT, FLOAT))
    common.add_argument("--seed", type=int)
    common.add_argument("--window", help="x0,y0,x1,y1 (rationals)")
    common.add_argument("--grid-step", dest="grid_step")
    common.add_argument("--random-points", dest="random_points", type=int)
    common.add_argument("--cap", type=int)
    common.add_argument("--chunk-size", dest="chunk_size", type=int)
    common.add_argument("--out", help="report or image output path")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("series", parents=[common],
                       help="norms, products, evaluation, splitting, "
                            "division, pairing")
    p.add_argument("action", choices=("norm", "mul", "eval", "split",
                                      "divide", "pair"))
    p.add_argument("exprs", nargs="*", help="series literals (deg:coeff ...)")
    p.add_argument("--radius", help="weight radius when not in the literal")
    p.add_argument("--at", help="evaluation point (a+bi literal)")
    p.add_argument("--witness", help="outer witness radius > 1 for split")
    p.add_argument("--inner-witness", dest="inner_witness",
                   help="inner witness radius < 1 for split")
    p.add_argument("--entries", help="semicolon-separated module entries "
                                     "for divide")

    p = sub.add_parser("certify", parents=[common],
                       help="randomized division-bound certificate")
    p.add_argument("--radius", help="disc radius in (0,1)")
    p.add_argument("--trials", type=int)
    p.add_argument("--max-degree", dest="max_degree", type=int)
    p.add_argument("--fig", help="also render a matplotlib summary figure")

    p = sub.add_parser("axioms", parents=[common],
                       help="the six-region relation suite")
    p.add_argument("--f", default="1:1", help="polynomial literal")
    p.add_argument("--g", default="0:1 1:1", help="polynomial literal")
    p.add_argument("--alpha", default="1/2", help="constant (a+bi literal)")
    p.add_argument("--r", default="1")
    p.add_argument("--s", default="1")
    p.add_argument("--items", help="comma-separated subset of 1..6")
    p.add_argument("--negate", type=int, action="append", default=None,
                   help="run the documented false variant of an item")
    p.add_argument("--fig", help="also render a matplotlib summary figure")

    p = sub.add_parser("plot", parents=[common],
                       help="rasterize a region literal to .ppm or .svg")
    p.add_argument("region", help="e.g. '|1:1| <= 1 & |0:1 1:1| > 1/2'")
    p.add_argument("--format", choices=("ppm", "svg"),
                   help="default: by --out extension")

    p = sub.add_parser("spectrum", parents=[common],
                       help="evaluation points of C[T]/(relations)")
    p.add_argument("relations", nargs="*",
                   help="relation polynomials (deg:coeff literals)")
    p.add_argument("--tol", type=float, default=1e-10,
                   help="certified enclosure radius target")

    p = sub.add_parser("site", parents=[common],
                       help="Huber pairs: localize, covers, refine, spa")
    p.add_argument("action", choices=("localize", "covers", "refine", "spa"))
    p.add_argument("--fixtures", help="fixture file (default: shipped corpus)")
    p.add_argument("--pair", default="base", help="pair name in the fixtures")
    p.add_argument("--nums", help="semicolon-separated numerator polynomials")
    p.add_argument("--den", help="denominator polynomial")
    p.add_argument("--f", help="element for two-piece covers")
    p.add_argument("--zariski", help="semicolon-separated unit-ideal family")
    p.add_argument("--c1", help="cover name")
    p.add_argument("--c2", help="cover name")
    p.add_argument("--kind", choices=("order", "trivial"), default="order")
    p.add_argument("--at", help="valuation point (a+bi literal or 'generic')")
    p.add_argument("--gamma", help="value-group generator in (0,1)")

    p = sub.add_parser("selftest", parents=[common],
                       help="run the full acceptance suite")
    p.add_argument("--trials", type=int)
    p.add_argument("--configs", type=int)
    p.add_argument("--triples", type=int)
    p.add_argument("--valuations", type=int)
    p.add_argument("--division-degree", dest="division_degree", type=int)
    p.add_argument("--fixtures", help="fixture file override")
    p.add_argument("--fig", help="also render the pass/fail matrix figure")

    return parser


def _parse_series_arg(text: str, opts: _Options, radius=None):
    series, tags = parse_series_tagged(
        text, backend=opts.backend(),
        radius=radius if radius is not None else
        Fraction(str(opts.get("radius"))))
    return series, tags


def _norm_fields(nv):
    fields = [("norm", nv.value)]
    if nv.backend == EXACT:
        fields += [("lo", nv.lo), ("hi", nv.hi)]
    if not nv.finite:
        fields.append(("overflow", True))
    return fields


def cmd_series(opts: _Options) -> int:
    args = opts.args
    action = args.action
    lines: list[str] = []
    if action == "norm":
        if len(args.exprs) != 1:
            raise ConfigError("norm takes exactly one series literal")
        s, _ = _parse_series_arg(args.exprs[0], opts)
        nv = weighted_norm(s)
        lines.append(record(("action", "norm"),
                            ("series", format_series(s)),
                            *_norm_fields(nv)))
    elif action == "mul":
        if len(args.exprs) != 2:
            raise ConfigError("mul takes two series literals")
        a, _ = _parse_series_arg(args.exprs[0], opts)
        b, _ = _parse_series_arg(args.exprs[1], opts)
        prod = mul(a, b, cap=opts.get("cap", int), track_tail=True)
        na, nb, np_ = weighted_norm(a), weighted_norm(b), weighted_norm(prod)
        lines.append(record(("action", "mul"),
                            ("product", format_series(prod)),
                            *_norm_fields(np_),
                            ("submultiplicative_bound", (na * nb).value)))
    elif action == "eval":
        if len(args.exprs) != 1 or not args.at:
            raise ConfigError("eval takes one series literal and --at")
        s, _ = _parse_series_arg(args.exprs[0], opts)
        z = parse_complex_literal(args.at)
        val = eval_series(s, z)
        lines.append(record(("action", "eval"), ("at", args.at),
                            ("value", val),
                            ("norm_bound", weighted_norm(s).value)))
    elif action == "split":
        if len(args.exprs) != 1:
            raise ConfigError("split takes one series literal")
        witness = Fraction(args.witness) if args.witness else Fraction(2)
        inner = (Fraction(args.inner_witness) if args.inner_witness
                 else Fraction(1, 2))
        s, tags = parse_series_tagged(args.exprs[0], backend=opts.backend(),
                                      radius=witness)
        h = two_sided(s.with_radius(witness), witness, inner)
        f, g = laurent_split(h)
        nh, nf, ng = ring_norm(h), ring_norm(f), ring_norm(g)
        lines.append(record(
            ("action", "split"),
            ("inner", format_series(f.series, with_radius=False)),
            ("outer", format_series(g.series, with_radius=False)),
            ("norm_h", nh.value), ("norm_inner", nf.value),
            ("norm_outer", ng.value),
            ("bounded_by_h", nf.hi <= nh.hi and ng.hi <= nh.hi)))
    elif action == "divide":
        if not args.entries:
            raise ConfigError("divide needs --entries 'e0;e1;...'")
        radius = Fraction(str(opts.get("radius")))
        if not 0 < radius < 1:
            raise ConfigError("divide needs a radius in (0,1)")
        entries = [parse_series_tagged(part, backend=EXACT, radius=radius)[0]
                   for part in args.entries.split(";")]
        b = SeriesPoly(tuple(e.with_radius(radius) for e in entries))
        c = divide_by_t_minus_u(b)
        nb, nc = b.norm(), c.norm()
        bound = division_bound(radius)
        ratio = nc.value / nb.value if nb.value else 0.0
        lines.append(record(
            ("action", "divide"),
            ("quotient", ";".join(format_series(e, with_radius=False)
                                  for e in c.entries)),
            ("normB", nb.value), ("normC", nc.value), ("ratio", ratio),
            ("bound", float(bound)),
            ("certified", nc.hi <= bound * nb.lo)))
    elif action == "pair":
        if len(args.exprs) != 2:
            raise ConfigError("pair takes two series literals")
        radius = Fraction(str(opts.get("radius")))
        if not 0 < radius < 1:
            raise ConfigError("pair needs a radius in (0,1)")
        f, _ = parse_series_tagged(args.exprs[0], backend=EXACT, radius=radius)
        gser, _ = parse_series_tagged(args.exprs[1], backend=EXACT,
                                      radius=radius)
        g = outer_tail(gser.with_radius(radius), radius)
        value = dual_pairing(f.with_radius(radius), g)
        bound = dual_pairing_bound(f.with_radius(radius), g)
        lines.append(record(("action", "pair"), ("value", value),
                            ("abs_bound", bound.value),
                            ("certified",
                             value.abs_interval().lo <= bound.hi)))
    print(write_report(lines, getattr(opts.args, "out", None)), end="")
    return EXIT_OK


def cmd_certify(opts: _Options) -> int:
    radius = Fraction(str(opts.get("radius", default="1/2")))
    if not 0 < radius < 1:
        raise ConfigError("certify needs a radius in (0,1)")
    report = strictness_certificate(
        radius, trials=opts.get("trials", int),
        max_degree=opts.get("max_degree", int), seed=opts.get("seed", int))
    lines = certificate_records(report)
    print(write_report(lines, opts.args.out), end="")
    if opts.args.fig:
        from .figures import certificate_figure
        certificate_figure(report, opts.args.fig)
    return EXIT_OK if report.passed else EXIT_FINDING


def cmd_axioms(opts: _Options) -> int:
    args = opts.args
    f = parse_poly(args.f)
    g = parse_poly(args.g)
    alpha = parse_complex_literal(args.alpha)
    items = None
    if args.items:
        items = tuple(int(p) for p in args.items.split(","))
    negate = tuple(args.negate or ())
    sampler = opts.sampler()
    results = gaga_axiom_suite(f, g, alpha, Fraction(args.r),
                               Fraction(args.s), sampler,
                               items=items, negate=negate)
    lines = axioms_records(results, sampler)
    print(write_report(lines, args.out), end="")
    if args.fig:
        from .figures import axioms_figure
        axioms_figure(results, sampler, args.fig)
    clean = all(not r.verdict.found for r in results)
    return EXIT_OK if clean else EXIT_FINDING


def cmd_plot(opts: _Options) -> int:
    args = opts.args
    if not args.out:
        raise ConfigError("plot needs --out")
    region = parse_region(args.region)
    sampler = opts.sampler()
    step = sampler.grid_step if sampler.grid_step is not None else Fraction(1, 64)
    from .raster import rasterize, write_ppm, write_svg
    grid = rasterize(region, sampler.window, step)
    fmt = args.format
    if fmt is None:
        fmt = "svg" if args.out.lower().endswith(".svg") else "ppm"
    if fmt == "ppm":
        write_ppm(grid, args.out)
    else:
        write_svg(grid, args.out)
    import numpy as np
    member = int(np.count_nonzero(grid.codes == 1))
    boundary = int(np.count_nonzero(grid.codes == 2))
    print(record(("action", "plot"), ("out", args.out), ("format", fmt),
                 ("cells", grid.codes.size), ("member_cells", member),
                 ("boundary_cells", boundary)))
    return EXIT_OK


def cmd_spectrum(opts: _Options) -> int:
    from .berkovich import AlgebraDescriptor, gelfand_points, spectrum_records
    relations = tuple(parse_poly(r) for r in opts.args.relations)
    spectrum = gelfand_points(AlgebraDescriptor(relations),
                              tol=opts.args.tol)
    lines = spectrum_records(spectrum)
    print(write_report(lines, opts.args.out), end="")
    return EXIT_OK


def _load_site(opts: _Options):
    path = opts.args.fixtures or default_fixture_path()
    return load_fixture_file(path)


def _parse_poly_list(text: str):
    return [parse_poly(p) for p in text.split(";") if p.strip()]


def cmd_site(opts: _Options) -> int:
    args = opts.args
    pairs, covers = _load_site(opts)
    if args.pair not in pairs:
        raise ConfigError(f"unknown pair {args.pair!r}; have {sorted(pairs)}")
    pair = pairs[args.pair]
    lines = []
    if args.action == "localize":
        if not args.nums or not args.den:
            raise ConfigError("localize needs --nums and --den")
        out = rational_localize(pair, _parse_poly_list(args.nums),
                                parse_poly(args.den))
        lines.append(record(("action", "localize"), ("pair", args.pair),
                            ("result", out.describe())))
    elif args.action == "covers":
        if not args.f and not args.zariski:
            raise ConfigError("covers needs --f or --zariski")
        if args.f:
            cov = two_piece_cover(pair, parse_poly(args.f))
            for i, m in enumerate(cov.members):
                lines.append(record(("action", "covers"), ("kind", cov.kind),
                                    ("member", i), ("pair", m.describe())))
        if args.zariski:
            cov = zariski_cover(pair, _parse_poly_list(args.zariski))
            for i, m in enumerate(cov.members):
                lines.append(record(("action", "covers"), ("kind", cov.kind),
                                    ("member", i), ("pair", m.describe())))
            from .polynomials import format_poly
            lines.append(record(("action", "covers"), ("kind", cov.kind),
                                ("certificate", ";".join(
                                    format_poly(c, compact=True)
                                    for c in cov.certificate))))
    elif args.action == "refine":
        if not args.c1 or not args.c2:
            raise ConfigError("refine needs --c1 and --c2 cover names")
        for name in (args.c1, args.c2):
            if name not in covers:
                raise ConfigError(f"unknown cover {name!r}; "
                                  f"have {sorted(covers)}")
        res = refines(covers[args.c1], covers[args.c2])
        fields = [("action", "refine"), ("c1", args.c1), ("c2", args.c2),
                  ("refines", res.refines),
                  ("assignment", ",".join(str(i) for i in res.assignment)
                   or "-")]
        if res.failing_member is not None:
            fields.append(("witness_member", res.failing_member))
        lines.append(record(*fields))
    elif args.action == "spa":
        if not args.nums or not args.den:
            raise ConfigError("spa needs --nums and --den")
        if args.kind == "order":
            if not args.gamma:
                raise ConfigError("order valuations need --gamma")
            v = order_valuation(parse_complex_literal(args.at or "0"),
                                Fraction(args.gamma))
        else:
            at = (args.at or "generic").strip()
            v = (trivial_valuation() if at == "generic"
                 else trivial_valuation(parse_complex_literal(at)))
        nums = _parse_poly_list(args.nums)
        den = parse_poly(args.den)
        RationalSubsetSpec(tuple(nums), den)     # unit-ideal validation
        try:
            ok = spa_membership(v, pair, nums, den)
            lines.append(record(("action", "spa"),
                                ("valuation", v.describe().replace(" ", "_")),
                                ("in_spectrum", True), ("member", ok)))
        except NotInAdicSpectrumError as exc:
            lines.append(record(("action", "spa"),
                                ("valuation", v.describe().replace(" ", "_")),
                                ("in_spectrum", False),
                                ("witness", exc.witness)))
    print(write_report(lines, args.out), end="")
    return EXIT_OK


def cmd_selftest(opts: _Options) -> int:
    args = opts.args
    sampler = opts.sampler()
    cfg = SelftestConfig(
        seed=opts.get("seed", int),
        trials=opts.get("trials", int, default=1000),
        configs=opts.get("configs", int, default=100),
        triples=opts.get("triples", int, default=200),
        valuations=opts.get("valuations", int, default=20),
        division_degree=opts.get("division_degree", int, default=20),
        cap=opts.get("cap", int),
        window=sampler.window,
        grid_step=sampler.grid_step,
        random_points=sampler.random_points,
        fixtures_path=args.fixtures,
    )
    results, lines = run_selftest(cfg)
    print(write_report(lines, args.out), end="")
    if args.fig:
        from .figures import selftest_figure
        selftest_figure(results, args.fig)
    failing = [r.key for r in results if not r.passed]
    if failing:
        print(record(("first_failing", failing[0])))
        return EXIT_FINDING
    return EXIT_OK


COMMANDS = {
    "series": cmd_series,
    "certify": cmd_certify,
    "axioms": cmd_axioms,
    "plot": cmd_plot,
    "spectrum": cmd_spectrum,
    "site": cmd_site,
    "selftest": cmd_selftest,
}


_ZERO_ARG_FLAGS = {"-h", "--help", "--version"}


def _normalize_argv(argv: list[str]) -> list[str]:
    """Space-prefix numeric-looking dash tokens and group positionals.

    Literals like ``-1:1`` (a negative degree) or ``-2,-2,2,2`` (a
    window) would otherwise be taken for flags; every downstream parser
    tolerates leading whitespace.  Within a subcommand, positionals are
    moved ahead of the flags so either calling order works.
    """
    import re
    toks = []
    for tok in argv:
        if re.fullmatch(r"-[0-9][0-9:,/.i+\- ]*", tok):
            toks.append(" " + tok)
        else:
            toks.append(tok)
    if not toks or toks[0] not in COMMANDS:
        return toks
    head, rest = toks[0], toks[1:]
    flags, positionals = [], []
    i = 0
    while i < len(rest):
        t = rest[i]
        if t.startswith("-"):
            flags.append(t)
            if "=" not in t and t not in _ZERO_ARG_FLAGS and i + 1 < len(rest):
                flags.append(rest[i + 1])
                i += 1
        else:
            positionals.append(t)
        i += 1
    return [head] + positionals + flags


def main(argv: list[str] | None = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    parser = build_parser()
    args = parser.parse_args(_normalize_argv(list(argv)))
    try:
        opts = _Options(args)
        return COMMANDS[args.command](opts)
    except (ConfigError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NotInAdicSpectrumError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FINDING
    except (AnalineError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
