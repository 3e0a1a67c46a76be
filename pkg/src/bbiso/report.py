"""Density report rendering: delimited rows plus a matplotlib figure."""

import csv
import io
import os

from .orders import density_scan

_FIELDS = ("set", "limit", "count", "density")


def density_rows(limits, threads: int = 1) -> list[dict]:
    """One row per (order class, limit), in the order the limits were given."""
    rows = []
    for limit in limits:
        for selector in ("d", "dhat"):
            value = density_scan(selector, limit, threads=threads)
            rows.append(
                {
                    "set": selector,
                    "limit": limit,
                    "count": round(value * limit),
                    "density": value,
                }
            )
    return rows


def csv_text(rows) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=_FIELDS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        printable = dict(row)
        printable["density"] = f"{row['density']:.6f}"
        writer.writerow(printable)
    return buffer.getvalue()


def render_density_png(rows, path: str) -> str:
    import matplotlib

    matplotlib.use("Agg")
    from matplotlib import pyplot

    figure, axes = pyplot.subplots(figsize=(6.4, 4.2))
    for selector, label, marker in (("d", "pseudo-square-free", "o"), ("dhat", "separable refinement", "s")):
        points = [(r["limit"], r["density"]) for r in rows if r["set"] == selector]
        if not points:
            continue
        points.sort()
        axes.semilogx(
            [p[0] for p in points],
            [p[1] for p in points],
            marker=marker,
            label=label,
        )
    axes.set_xlabel("limit")
    axes.set_ylabel("density")
    axes.set_title("Order class densities")
    axes.grid(True, which="both", alpha=0.3)
    axes.legend()
    figure.tight_layout()
    figure.savefig(path, dpi=120)
    pyplot.close(figure)
    return path


def write_outputs(rows, out_dir: str) -> tuple[str, str]:
    """Write density.csv and density.png under out_dir; returns their paths."""
    os.makedirs(out_dir, exist_ok=True)
    csv_path = os.path.join(out_dir, "density.csv")
    with open(csv_path, "w", encoding="utf-8", newline="") as fh:
        fh.write(csv_text(rows))
    png_path = os.path.join(out_dir, "density.png")
    render_density_png(rows, png_path)
    return csv_path, png_path
