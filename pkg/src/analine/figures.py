"""Matplotlib companions to the delimited reports.

Each report-producing command can render a summary figure next to its
text output.  Figures are presentation artifacts; the byte-exact
deliverables are the delimited reports and the P6/vector plots.
"""

from __future__ import annotations


def _plt():
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    return plt


def certificate_figure(report, path: str) -> str:
    """Trial ratios against the certified bound."""
    plt = _plt()
    fig, ax = plt.subplots(figsize=(7, 4))
    xs = [t.trial for t in report.trials]
    ys = [t.ratio for t in report.trials]
    ax.scatter(xs, ys, s=8, color="#1f77b4", label="observed ratio")
    ax.axhline(float(report.bound), color="#d62728", lw=1.5,
               label=f"bound 1/(1-r) = {float(report.bound):g}")
    ax.set_xlabel("trial")
    ax.set_ylabel("quotient norm / kernel norm")
    ax.set_title(f"division certificate at r = {report.radius}")
    ax.legend(loc="upper right", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def axioms_figure(results, cfg, path: str) -> str:
    """Verdict bar per relation, counterexamples marked in the window."""
    plt = _plt()
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
    labels = [r.item for r in results]
    values = [1 if r.passed else 0 for r in results]
    colors = ["#2ca02c" if v else "#d62728" for v in values]
    ax1.barh(range(len(labels)), [1] * len(labels), color=colors)
    ax1.set_yticks(range(len(labels)), labels)
    ax1.set_xticks([])
    ax1.invert_yaxis()
    ax1.set_title("relation verdicts (green = pass)")

    x0, y0, x1, y1 = (float(w) for w in cfg.window)
    ax2.set_xlim(x0, x1)
    ax2.set_ylim(y0, y1)
    ax2.set_aspect("equal")
    ax2.set_title("counterexamples")
    drew = False
    for r in results:
        ce = r.verdict.counterexample
        if ce is not None:
            ax2.plot(ce.z.real, ce.z.imag, "x", ms=10, mew=2,
                     color="#d62728")
            ax2.annotate(r.item, (ce.z.real, ce.z.imag), fontsize=8,
                         xytext=(4, 4), textcoords="offset points")
            drew = True
    if not drew:
        ax2.text(0.5, 0.5, "none found", transform=ax2.transAxes,
                 ha="center", va="center", color="#2ca02c")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def selftest_figure(results, path: str) -> str:
    """Pass/fail matrix for the acceptance checks."""
    plt = _plt()
    fig, ax = plt.subplots(figsize=(7, 0.45 * len(results) + 1))
    for i, res in enumerate(results):
        color = "#2ca02c" if res.passed else "#d62728"
        ax.barh(i, 1, color=color)
        ax.text(0.02, i, res.key, va="center", fontsize=9, color="white")
        ax.text(0.98, i, "pass" if res.passed else "FAIL", va="center",
                ha="right", fontsize=9, color="white")
    ax.set_xlim(0, 1)
    ax.set_xticks([])
    ax.set_yticks([])
    ax.invert_yaxis()
    ax.set_title("acceptance checks")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
