"""Optional convergence figures rendered next to the delimited reports."""

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def render_density_figure(report, outdir):
    """Plot per-radius visible fractions against the limit values.

    Returns the written path, or None when the report has no density rows.
    """
    rows = [r for r in report.rows
            if r.get("n") is not None and r.get("fraction") is not None]
    if not rows:
        return None
    os.makedirs(outdir, exist_ok=True)
    fig, ax = plt.subplots(figsize=(7, 4.5))
    even = [(r["n"], r["fraction"]) for r in rows if r["n"] % 2 == 0]
    odd = [(r["n"], r["fraction"]) for r in rows if r["n"] % 2 == 1]
    if even:
        ax.plot(*zip(*even), "o-", ms=3, label="visible fraction (even n)")
    if odd:
        ax.plot(*zip(*odd), "s-", ms=3, label="visible fraction (odd n)")
    annular = [(r["n"], r["annular_estimate"]) for r in rows
               if r.get("annular_estimate") is not None]
    if annular:
        ax.plot(*zip(*annular), "-", lw=1, label="annular estimate")
    first = rows[0]
    for key, style, label in (
            ("theoretical_even", ":", "even limit"),
            ("theoretical_odd", "--", "odd limit"),
            ("theoretical_annular", "-.", "annular limit")):
        if first.get(key) is not None:
            ax.axhline(first[key], ls=style, c="gray", lw=1, label=label)
    ax.set_xlabel("radius n")
    ax.set_ylabel("fraction")
    ax.set_title(report.command)
    ax.legend(fontsize=8)
    fig.tight_layout()
    path = os.path.join(outdir, f"{report.command.replace(' ', '_')}.png")
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
