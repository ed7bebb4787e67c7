"""
Вывод отчета: CSV, JSON или SVG-диаграмма точности по семействам.
"""
import csv
import dataclasses
import json
import logging
from pathlib import Path
from typing import Union

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

from ..errors import ArgumentError
from .metrics import FamilyMetrics, MetricsReport

logger = logging.getLogger(__name__)

FORMATS = ("csv", "json", "svg")
CSV_HEADER = ["family", "acc", "ap", "count"]


def _cell(value) -> str:
    return "" if value is None else repr(value) if isinstance(value, float) else str(value)


def _write_csv(report: MetricsReport, path: Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(CSV_HEADER)
        for family, m in report.per_family.items():
            writer.writerow([family, _cell(m.acc), _cell(m.ap), m.count])
        writer.writerow(["all", _cell(report.acc), _cell(report.ap), report.n_samples])
        n_fake = sum(m.count for f, m in report.per_family.items() if m.ap is not None)
        writer.writerow(["mean", _cell(report.m_acc), _cell(report.m_ap), n_fake])


def report_to_dict(report: MetricsReport) -> dict:
    return dataclasses.asdict(report)


def report_from_dict(data: dict) -> MetricsReport:
    fields = dict(data)
    fields["per_family"] = {k: FamilyMetrics(**v) for k, v in data.get("per_family", {}).items()}
    return MetricsReport(**fields)


def _write_json(report: MetricsReport, path: Path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(report_to_dict(report), f, indent=2, sort_keys=True)


def _write_svg(report: MetricsReport, path: Path) -> None:
    families = list(report.per_family)
    values = [report.per_family[f].acc for f in families]
    fig, ax = plt.subplots(figsize=(max(4.0, 1.2 * len(families) + 2.0), 3.5))
    bars = ax.bar(families, values, color="steelblue")
    for bar, value in zip(bars, values):
        ax.text(bar.get_x() + bar.get_width() / 2, value, f"{value:.3f}", ha="center", va="bottom", fontsize=8)
    ax.set_ylim(0.0, 1.05)
    ax.set_ylabel("accuracy")
    ax.set_title(f"per-family accuracy (n={report.n_samples}, seed={report.seed})")
    ax.grid(True, axis="y", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)


def emit_report(report: MetricsReport, path: Union[str, Path], fmt: str = "json") -> Path:
    """Записывает отчет в выбранном формате"""
    if fmt not in FORMATS:
        raise ArgumentError(f"report format must be one of {FORMATS}, got {fmt!r}")
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    {"csv": _write_csv, "json": _write_json, "svg": _write_svg}[fmt](report, path)
    logger.info("wrote %s report to %s", fmt, path)
    return path
