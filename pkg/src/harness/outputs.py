# src/harness/outputs.py
"""
Files written from an ``ExperimentReport``:

- ``<name>.json``            the full report (config echo, seeds, every p-value)
- ``<name>_power.csv``       rows = (model family, method, φ), columns = ε, at the table level
- ``<name>_pvalues.csv``     five-number summary of each cell's p-values
- ``<name>_dims.csv``        power vs dimension, when a family is swept over several d
- ``<name>_<family>_rejection.svg`` / ``_pvalues.svg``  rejection-vs-α curves and p-value boxplots

Contents carry no timestamps and use fixed float formatting, so emitting the same report
twice gives byte-identical files.
"""

from __future__ import annotations

import csv
import io
import logging
import re
from collections.abc import Iterable
from pathlib import Path
from typing import Literal

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from src.core.errors import InvalidInput  # noqa: E402
from src.schemas.models import CellResult, ExperimentReport  # noqa: E402

logger = logging.getLogger(__name__)

OutputFormat = Literal["csv", "json", "svg"]
ALL_FORMATS: tuple[OutputFormat, ...] = ("csv", "json", "svg")

_SVG_SALT = "ranktest"
_DEFAULT_TABLE_ALPHA = 0.05


def _fmt(v: float) -> str:
    return f"{v:.4f}"


def _slug(text: str) -> str:
    return re.sub(r"[^A-Za-z0-9._-]+", "_", text).strip("_")


def cell_label(cell: CellResult) -> str:
    return f"{cell.method}[{cell.phi}]" if cell.phi else cell.method


def family(cell: CellResult) -> str:
    return f"{cell.variant}_d{cell.d}"


def table_alpha_index(report: ExperimentReport, alphas: list[float]) -> int | None:
    """Index of the grid level closest to the configured table level (None for an empty grid)."""
    if not alphas:
        return None
    target = float(report.config.get("table_alpha", _DEFAULT_TABLE_ALPHA))
    return int(np.argmin(np.abs(np.asarray(alphas) - target)))


def _cell_text(cell: CellResult, k: int | None) -> str:
    if k is None or not cell.rejection:
        return "NA"
    return f"{_fmt(cell.rejection[k])} ± {_fmt(cell.half_width[k])} (sd {_fmt(cell.sd[k])})"


def _write_rows(path: Path, header: list[str], rows: Iterable[list[str]]) -> Path:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    path.write_text(buf.getvalue(), encoding="utf-8")
    return path


def _report_alphas(report: ExperimentReport) -> list[float]:
    return [float(a) for a in report.config.get("alphas", [])]


def power_table(report: ExperimentReport, path: Path) -> Path:
    """Frequency ± 2·√(f(1−f)/B), with √(f(1−f)) alongside, at the table level."""
    alphas = _report_alphas(report)
    k = table_alpha_index(report, alphas)
    eps = sorted({c.epsilon for c in report.cells})
    level = f"alpha={alphas[k]:g}" if k is not None else "alpha=NA"
    header = ["family", "method", "phi", "level"] + [f"eps={e:g}" for e in eps]
    rows: list[list[str]] = []
    if k is not None:
        grouped: dict[tuple[str, str, str], dict[float, CellResult]] = {}
        for c in report.cells:
            grouped.setdefault((family(c), c.method, c.phi or ""), {})[c.epsilon] = c
        for (fam, method, phi), by_eps in grouped.items():
            rows.append([fam, method, phi, level] + [_cell_text(by_eps[e], k) if e in by_eps else "" for e in eps])
    return _write_rows(path, header, rows)


def five_numbers(values: list[float]) -> list[float]:
    if not values:
        return []
    return [float(v) for v in np.quantile(np.asarray(values), [0.0, 0.25, 0.5, 0.75, 1.0])]


def pvalue_summary(report: ExperimentReport, path: Path) -> Path:
    header = ["model", "method", "phi", "replications", "min", "q1", "median", "q3", "max", "failures"]
    rows = []
    for c in report.cells:
        stats = five_numbers(c.p_values)
        rows.append([c.model, c.method, c.phi or "", str(c.replications)] + ([_fmt(s) for s in stats] or ["NA"] * 5) + [str(len(c.errors))])
    return _write_rows(path, header, rows)


def dimension_sweep(report: ExperimentReport, path: Path) -> Path | None:
    """Power at the table level vs d for each family swept over more than one dimension."""
    alphas = _report_alphas(report)
    k = table_alpha_index(report, alphas)
    dims_by_variant: dict[str, set[int]] = {}
    for c in report.cells:
        dims_by_variant.setdefault(c.variant, set()).add(c.d)
    swept = {v: sorted(ds) for v, ds in dims_by_variant.items() if len(ds) > 1}
    if not swept or k is None:
        return None
    dims = sorted({d for ds in swept.values() for d in ds})
    header = ["variant", "epsilon", "method", "phi"] + [f"d={d}" for d in dims]
    grouped: dict[tuple[str, float, str, str], dict[int, CellResult]] = {}
    for c in report.cells:
        if c.variant in swept:
            grouped.setdefault((c.variant, c.epsilon, c.method, c.phi or ""), {})[c.d] = c
    rows = [
        [variant, f"{eps:g}", method, phi] + [_cell_text(by_d[d], k) if d in by_d else "" for d in dims]
        for (variant, eps, method, phi), by_d in grouped.items()
    ]
    return _write_rows(path, header, rows)


def _save_svg(fig: plt.Figure, path: Path) -> Path:
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
    return path


def rejection_plot(cells: list[CellResult], alphas: list[float], title: str, path: Path) -> Path:
    fig, ax = plt.subplots(figsize=(6.0, 4.5))
    ax.plot([0, 1], [0, 1], color="0.6", linestyle="--", linewidth=0.8, label="level")
    for c in cells:
        if c.rejection:
            ax.plot(alphas, c.rejection, linewidth=1.2, label=f"{cell_label(c)} eps={c.epsilon:g}")
    ax.set_xlim(0, 1)
    ax.set_ylim(0, 1.02)
    ax.set_xlabel("alpha")
    ax.set_ylabel("rejection frequency")
    ax.set_title(title)
    ax.legend(fontsize=6, loc="lower right")
    return _save_svg(fig, path)


def pvalue_plot(cells: list[CellResult], title: str, path: Path) -> Path:
    with_values = [c for c in cells if c.p_values]
    fig, ax = plt.subplots(figsize=(max(4.0, 0.6 * len(with_values) + 2.0), 4.5))
    if with_values:
        ax.boxplot([c.p_values for c in with_values])
        ax.set_xticks(range(1, len(with_values) + 1))
        ax.set_xticklabels([f"{cell_label(c)}\neps={c.epsilon:g}" for c in with_values], rotation=60, fontsize=6)
    ax.set_ylim(0, 1)
    ax.set_ylabel("p-value")
    ax.set_title(title)
    fig.tight_layout()
    return _save_svg(fig, path)


def emit_outputs(report: ExperimentReport, out_dir: Path, formats: Iterable[OutputFormat] = ALL_FORMATS) -> list[Path]:
    """Write the requested formats under ``out_dir``; returns the written paths in a stable order."""
    wanted = set(formats)
    unknown = wanted - set(ALL_FORMATS)
    if unknown:
        raise InvalidInput(f"unknown output formats {sorted(unknown)}")
    out_dir.mkdir(parents=True, exist_ok=True)
    stem = _slug(report.name) or "experiment"
    written: list[Path] = []

    if "json" in wanted:
        path = out_dir / f"{stem}.json"
        path.write_text(report.to_json() + "\n", encoding="utf-8")
        written.append(path)

    if "csv" in wanted:
        written.append(power_table(report, out_dir / f"{stem}_power.csv"))
        written.append(pvalue_summary(report, out_dir / f"{stem}_pvalues.csv"))
        sweep = dimension_sweep(report, out_dir / f"{stem}_dims.csv")
        if sweep is not None:
            written.append(sweep)

    alphas = _report_alphas(report)
    if "svg" in wanted and alphas:
        families: dict[str, list[CellResult]] = {}
        for c in report.cells:
            families.setdefault(family(c), []).append(c)
        with plt.rc_context({"svg.hashsalt": _SVG_SALT, "svg.fonttype": "none"}):
            for fam, cells in families.items():
                written.append(rejection_plot(cells, alphas, fam, out_dir / f"{stem}_{_slug(fam)}_rejection.svg"))
                written.append(pvalue_plot(cells, fam, out_dir / f"{stem}_{_slug(fam)}_pvalues.svg"))

    for path in written:
        logger.debug("wrote %s", path)
    return written


__all__ = [
    "OutputFormat",
    "ALL_FORMATS",
    "cell_label",
    "family",
    "table_alpha_index",
    "power_table",
    "five_numbers",
    "pvalue_summary",
    "dimension_sweep",
    "rejection_plot",
    "pvalue_plot",
    "emit_outputs",
]
