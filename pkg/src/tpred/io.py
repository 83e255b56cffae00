"""Bit-exact file formats: layout interchange files and results tables.

Layout files are JSON with a fixed field order and reals printed with 17
significant digits, so write -> read -> write is byte-identical.  Results
tables are plain CSV with fixed, documented headers.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Sequence

from .errors import InvalidArgument, TpredError
from .evaluation import EvalRecord
from .geometry import Layout, validate_layout

SCHEMA_VERSION = 1

RESULTS_HEADER = [
    "layout_id",
    "planner_t",
    "k_observed",
    "beta",
    "mode",
    "l",
    "theoretical_k_pred",
    "n_samples",
    "exact_match_rate",
    "mean_lev_similarity",
    "seed",
]

SWEEP_HEADER = [
    "layout_id",
    "t",
    "beta",
    "l",
    "order",
    "path_cost",
    "exact_pt",
    "approx_pt",
    "ratio",
]


def _real(x: float) -> str:
    return format(float(x), ".17g")


def layout_file_text(layouts: Sequence[Layout]) -> str:
    """Canonical serialization of a layout collection."""
    items = []
    for layout in layouts:
        targets = ",".join(f"[{_real(p.x)},{_real(p.y)}]" for p in layout.targets)
        items.append(
            f'{{"id":{json.dumps(layout.id)},'
            f'"start":[{_real(layout.start.x)},{_real(layout.start.y)}],'
            f'"targets":[{targets}]}}'
        )
    return f'{{"schema_version":{SCHEMA_VERSION},"layouts":[{",".join(items)}]}}\n'


def write_layout_file(path: str | Path, layouts: Sequence[Layout]) -> None:
    Path(path).write_text(layout_file_text(layouts), encoding="utf-8")


def read_layout_file(path: str | Path) -> list[Layout]:
    """Parse and validate a layout file written by :func:`write_layout_file`."""
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise InvalidArgument(f"{path}: not valid JSON ({exc})") from exc
    if not isinstance(data, dict) or data.get("schema_version") != SCHEMA_VERSION:
        raise InvalidArgument(
            f"{path}: expected schema_version {SCHEMA_VERSION}, got "
            f"{data.get('schema_version') if isinstance(data, dict) else type(data).__name__}"
        )
    layouts = []
    try:
        for entry in data["layouts"]:
            layout = Layout.from_coords(
                entry["id"], tuple(entry["start"]), [tuple(t) for t in entry["targets"]]
            )
            layouts.append(validate_layout(layout))
    except TpredError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidArgument(f"{path}: malformed layout entry ({exc!r})") from exc
    return layouts


def write_results_table(
    path: str | Path,
    records: Sequence[EvalRecord],
    *,
    beta: float,
    mode: str,
    l: int | None,
    seed: int,
) -> None:
    """One CSV row per evaluation cell, plus the run parameters on every row.

    ``l`` is blank in exact mode, where no truncation applies.
    """
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(RESULTS_HEADER)
        for r in records:
            writer.writerow(
                [
                    r.layout_id,
                    r.planner_t,
                    r.k_observed,
                    repr(float(beta)),
                    mode,
                    "" if l is None else l,
                    repr(r.theoretical_k_pred),
                    r.n_samples,
                    repr(r.exact_match_rate),
                    repr(r.mean_lev_similarity),
                    seed,
                ]
            )


def write_sweep_table(path: str | Path, rows: Sequence[dict]) -> None:
    """Per-(layout, grid point) planner choice with exact and truncated scores."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(SWEEP_HEADER)
        for row in rows:
            writer.writerow(
                [
                    row["layout_id"],
                    row["t"],
                    repr(float(row["beta"])),
                    row["l"],
                    "-".join(str(i) for i in row["order"]),
                    repr(float(row["path_cost"])),
                    repr(float(row["exact_pt"])),
                    repr(float(row["approx_pt"])),
                    repr(float(row["ratio"])),
                ]
            )
