"""Plot-ready data from sweep CSVs: per-theta ``log2_X,log2_abs_S`` files, optional PNG figures."""

from __future__ import annotations

import csv
import math
from collections import defaultdict
from pathlib import Path

from .sweep import read_csv

PLOT_COLUMNS = ("log2_X", "log2_abs_S")


def _theta(X: int, H: int) -> float:
    return round(math.log(H) / math.log(X), 2)


def plot_data(inputs, output_dir) -> list[Path]:
    """Group records by theta = log H / log X and write one file per theta; |S| = 0 rows are skipped."""
    if isinstance(inputs, (str, Path)):
        inputs = [inputs]
    groups = defaultdict(list)
    for path in inputs:
        for r in read_csv(path):
            if r.abs_S > 0:
                groups[_theta(r.X, r.H)].append((math.log2(r.X), math.log2(r.abs_S)))
    out = Path(output_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for theta in sorted(groups):
        path = out / f"log_abs_S_theta{theta:g}.csv"
        with path.open("w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh)
            w.writerow(PLOT_COLUMNS)
            for row in sorted(groups[theta]):
                w.writerow([repr(row[0]), repr(row[1])])
        written.append(path)
    return written


def render_figures(data_files, output_dir) -> list[Path]:
    """PNG of log2|S| against log2 X per data file, with the trivial slope 1 for reference (needs matplotlib)."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    out = Path(output_dir)
    written = []
    for path in data_files:
        with Path(path).open(newline="", encoding="utf-8") as fh:
            rows = [(float(r["log2_X"]), float(r["log2_abs_S"])) for r in csv.DictReader(fh)]
        if not rows:
            continue
        xs, ys = zip(*rows)
        fig, ax = plt.subplots(figsize=(5, 3.5))
        ax.plot(xs, ys, "o-", label="log2 |S|")
        ax.plot(xs, [ys[0] + (x - xs[0]) for x in xs], "--", color="gray", label="slope 1 (trivial)")
        ax.set_xlabel("log2 X")
        ax.set_ylabel("log2 |S(H, X)|")
        ax.legend(frameon=False)
        fig.tight_layout()
        png = out / (Path(path).stem + ".png")
        fig.savefig(png, dpi=120)
        plt.close(fig)
        written.append(png)
    return written
