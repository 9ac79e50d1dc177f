"""Line-delimited structured reports with a stable field order.

One record per line, space-separated ``key=value`` fields in the order
given by the caller, no timestamps, rationals exact, floats via repr.
Identical inputs produce identical bytes, so diffs are meaningful.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import ExactComplex, format_rational, format_scalar


def fmt_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, Fraction):
        return format_rational(v)
    if isinstance(v, (ExactComplex, complex)):
        return format_scalar(v)
    if isinstance(v, float):
        return repr(v)
    return str(v)


def record(*fields: tuple[str, object]) -> str:
    return " ".join(f"{k}={fmt_value(v)}" for k, v in fields)


def certificate_records(report) -> list[str]:
    """Per-trial records for a division certificate run."""
    lines = [record(("record", "config"),
                    ("radius", report.radius),
                    ("bound", report.bound),
                    ("trials", len(report.trials)))]
    for t in report.trials:
        lines.append(record(
            ("trial", t.trial), ("degree", t.degree),
            ("normB", t.norm_b), ("normC", t.norm_c),
            ("ratio", t.ratio), ("bound", t.bound), ("pass", t.passed)))
    lines.append(record(("record", "summary"),
                        ("max_ratio", report.max_ratio),
                        ("violations", report.violations),
                        ("vacuous", report.vacuous),
                        ("pass", report.passed)))
    return lines


def verdict_fields(v) -> list[tuple[str, object]]:
    fields = [("verdict", v.outcome), ("samples", v.samples),
              ("undecided", v.undecided)]
    if v.vacuous:
        fields.append(("vacuous", True))
    if v.counterexample is not None:
        fields += [("z", v.counterexample.z),
                   ("index", v.counterexample.index)]
    return fields


def axioms_records(results, cfg) -> list[str]:
    lines = [record(("record", "config"),
                    ("window", ",".join(format_rational(w) for w in cfg.window)),
                    ("grid_step", cfg.grid_step if cfg.grid_step is not None
                     else "none"),
                    ("random_points", cfg.random_points),
                    ("seed", cfg.seed))]
    for res in results:
        fields = [("item", res.item)] + verdict_fields(res.verdict)
        fields.append(("expected_counterexample", res.expect_counterexample))
        fields.append(("pass", res.passed))
        if res.note:
            fields.append(("note", res.note.replace(" ", "_")))
        lines.append(record(*fields))
    ok = all(r.passed for r in results)
    lines.append(record(("record", "summary"), ("pass", ok)))
    return lines


def write_report(lines: list[str], out_path: str | None) -> str:
    text = "\n".join(lines) + "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    return text
