"""Figure rendering for the two CSV shapes.

Convergence files become one log-log curve each on shared axes with
dashed slope guides; a Voronovskaja file becomes scaled residuals
against n with a horizontal line at the limit value.  Rendering is
headless and deterministic: fixed geometry, no timestamps, styling from
matplotlib defaults only.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .reading import SchemaError, read_convergence, read_voronovskaja

_GUIDE_STYLE = {"color": "0.6", "linestyle": "--", "linewidth": 1.0,
                "zorder": 1}


def plot_convergence(csv_paths, out_path, title=None):
    """Render sup-error decay curves; returns the figure after saving.

    Slope guides are anchored at the first point of the first series,
    so data with error proportional to 1/n lies exactly on the -1
    guide.
    """
    series = [read_convergence(p) for p in csv_paths]
    if not series:
        raise SchemaError("need at least one input CSV")
    fig, ax = plt.subplots(figsize=(6.4, 4.8))
    for s in series:
        ax.loglog(s.ns, s.errors, marker="o",
                  label=f"{s.label()} (slope {s.slope:+.2f})")
    n_ref, e_ref = series[0].ns[0], series[0].errors[0]
    n_lo = min(min(s.ns) for s in series)
    n_hi = max(max(s.ns) for s in series)
    for power in (1, 2):
        ys = [e_ref * (n_ref / n) ** power for n in (n_lo, n_hi)]
        ax.loglog([n_lo, n_hi], ys, label=f"slope -{power}", **_GUIDE_STYLE)
    ax.set_xlabel("n")
    ax.set_ylabel("sup error")
    ax.set_title(title or "sup-error decay")
    ax.legend()
    fig.tight_layout()
    fig.savefig(out_path)
    plt.close(fig)
    return fig


def plot_voronovskaja(csv_path, out_path, title=None):
    """Render scaled residuals vs n with their limit as a horizontal line."""
    s = read_voronovskaja(csv_path)
    fig, ax = plt.subplots(figsize=(6.4, 4.8))
    ax.plot(s.ns, s.residuals, marker="o", label="scaled residual")
    ax.set_xscale("log")
    ax.axhline(s.limit, label=f"limit {s.limit:+.6g}", **_GUIDE_STYLE)
    lo = min(min(s.residuals), s.limit)
    hi = max(max(s.residuals), s.limit)
    if hi - lo < 1e-12:
        # constant data (a zero-residual study) must still frame cleanly
        ax.set_ylim(lo - 1.0, hi + 1.0)
    ax.set_xlabel("n")
    ax.set_ylabel("scaled residual")
    ax.set_title(title or s.label())
    ax.legend()
    fig.tight_layout()
    fig.savefig(out_path)
    plt.close(fig)
    return fig


@dataclass(frozen=True)
class PlotJob:
    """One rendering request: figure kind, input CSVs, output image.

    The image format follows the output extension (whatever the
    matplotlib build supports; png and svg are always available).
    """

    kind: str
    csv_paths: tuple
    out_path: str
    title: str | None = None

    def __post_init__(self):
        if self.kind not in ("convergence", "voronovskaja"):
            raise SchemaError(f"unknown plot kind {self.kind!r}")
        if not self.csv_paths:
            raise SchemaError("need at least one input CSV")
        if self.kind == "voronovskaja" and len(self.csv_paths) != 1:
            raise SchemaError("voronovskaja takes exactly one CSV")
        for p in self.csv_paths:
            if not Path(p).is_file():
                raise SchemaError(f"no such input: {p}")

    def run(self):
        if self.kind == "convergence":
            return plot_convergence(self.csv_paths, self.out_path,
                                    title=self.title)
        return plot_voronovskaja(self.csv_paths[0], self.out_path,
                                 title=self.title)
