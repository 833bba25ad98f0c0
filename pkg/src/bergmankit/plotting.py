"""Figure rendering for the report-producing commands.

Each report path can write a matplotlib figure next to its delimited
output.  Figures are diagnostic companions to the CSV/JSON reports, never
the primary record; everything drawn here is recomputable from the report
data alone.
"""

from __future__ import annotations

from typing import Optional, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .commutators import DivergenceScan
from .filtration import FiltrationReport


def plot_ratio_scan(scan: DivergenceScan, path: str) -> None:
    """Log-log plot of the exact ratio points with the fitted growth line."""
    ms = [p.m for p in scan.points]
    ratios = [float(p.ratio_sq) for p in scan.points]
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.loglog(ms, ratios, ".", markersize=4, label="exact ratio$^2$")
    if scan.slope is not None and ratios[-1] > 0:
        m_lo = (len(ms) + 1) // 2
        anchor = ratios[-1]
        fit = [anchor * (m / ms[-1]) ** scan.slope for m in ms[m_lo - 1 :]]
        ax.loglog(ms[m_lo - 1 :], fit, "-", linewidth=1,
                  label=f"fit slope {scan.slope:.3f}")
    ax.set_xlabel("m")
    ax.set_ylabel(r"$\|[X,P]f_m\|^2 / \|f_m\|^2$")
    ax.set_title(f"commutator ratio scan ({scan.kind}, n={scan.dimension})")
    ax.legend()
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_filtration_report(report: FiltrationReport, path: str) -> None:
    """Semi-norm estimates against truncation degree, one line per level k."""
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for level in report.levels:
        ds = [d for d, _ in level.estimates]
        vals = [est.value for _, est in level.estimates]
        ax.plot(ds, vals, "o-", label=f"k={level.k} ({level.verdict})")
    ax.set_xlabel("truncation degree d")
    ax.set_ylabel("semi-norm estimate")
    ax.set_title("iterated-commutator semi-norms")
    ax.legend()
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_series_convergence(
    degrees: Sequence[int], errors: Sequence[float], path: str, title: Optional[str] = None
) -> None:
    """Semilog plot of |partial sum - closed form| against truncation degree."""
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    floor = 1e-18
    ax.semilogy(list(degrees), [max(e, floor) for e in errors], "o-")
    ax.set_xlabel("truncation degree K")
    ax.set_ylabel("|partial sum - closed form|")
    ax.set_title(title or "kernel series convergence")
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
