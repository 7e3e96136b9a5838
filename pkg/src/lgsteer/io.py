"""Result serialization: CSV tables and the JSON mirror.

The CSV layout is fixed: axis coordinate columns first, then
``stable,EN_mm,EN_m1c,EN_m2c,zeta_m1_m2,zeta_m2_m1,zeta_M,
steering_class,R_min,stability_margin_ratio``.  Numbers are written as
shortest round-trip decimals, lines end with LF, and files are UTF-8.
Unstable rows print ``false`` with empty measure cells; rows whose
evaluation raised an error print ``error`` in the stable column (the
message itself survives only in the JSON mirror, which carries the same
field names plus a metadata block).  The margin ratio is reported for
unstable rows too — it locates the stability boundary.
"""

from __future__ import annotations

import json

from .config import system_to_display
from .errors import BadUnit
from .measures import CorrelationReport, SteeringClass
from .sweep import SweepResult

MEASURE_COLUMNS = (
    "stable",
    "EN_mm",
    "EN_m1c",
    "EN_m2c",
    "zeta_m1_m2",
    "zeta_m2_m1",
    "zeta_M",
    "steering_class",
    "R_min",
    "stability_margin_ratio",
)


def _fmt(value: float | None) -> str:
    if value is None:
        return ""
    return repr(float(value))


def _report_cells(report: CorrelationReport | None, omega_phi1: float) -> list[str]:
    if report is None:
        return ["error"] + [""] * (len(MEASURE_COLUMNS) - 1)
    margin_ratio = report.stability_margin / omega_phi1
    if not report.stable:
        cells = ["false"] + [""] * (len(MEASURE_COLUMNS) - 2)
        cells.append(_fmt(margin_ratio))
        return cells
    return [
        "true",
        _fmt(report.en_mm),
        _fmt(report.en_m1c),
        _fmt(report.en_m2c),
        _fmt(report.zeta_m1_m2),
        _fmt(report.zeta_m2_m1),
        _fmt(report.zeta_asym),
        report.steering_class.value,
        _fmt(report.r_min),
        _fmt(margin_ratio),
    ]


def serialize_csv(result: SweepResult) -> str:
    """Fixed-column CSV text for a sweep result (LF endings)."""
    axis_names = [result.spec.axis1.name]
    if result.spec.axis2 is not None:
        axis_names.append(result.spec.axis2.name)
    lines = [",".join(axis_names + list(MEASURE_COLUMNS))]
    w1 = result.spec.base.omega_phi1
    for row in result.rows:
        coord_cells = [_fmt(v) for _, v in row.coords]
        lines.append(",".join(coord_cells + _report_cells(row.report, w1)))
    return "\n".join(lines) + "\n"


def _row_dict(row, omega_phi1: float) -> dict:
    doc: dict = {name: value for name, value in row.coords}
    report = row.report
    if report is None:
        doc["stable"] = "error"
        doc["error"] = row.error
        return doc
    doc["stable"] = report.stable
    doc["EN_mm"] = report.en_mm
    doc["EN_m1c"] = report.en_m1c
    doc["EN_m2c"] = report.en_m2c
    doc["zeta_m1_m2"] = report.zeta_m1_m2
    doc["zeta_m2_m1"] = report.zeta_m2_m1
    doc["zeta_M"] = report.zeta_asym
    doc["steering_class"] = (
        None if report.steering_class is None else report.steering_class.value
    )
    doc["R_min"] = report.r_min
    doc["stability_margin_ratio"] = report.stability_margin / omega_phi1
    return doc


def serialize_json(result: SweepResult) -> str:
    """JSON mirror: same field names as the CSV plus spec and metadata.

    The run timestamp is deliberately not serialized so identical runs
    produce identical bytes.
    """
    spec = result.spec
    doc = {
        "metadata": {
            "version": result.metadata.get("version"),
            "constants": result.metadata.get("constants"),
        },
        "spec": {
            "system": system_to_display(spec.base),
            "axis1": {"name": spec.axis1.name, "values": list(spec.axis1.values)},
            "axis2": (
                None
                if spec.axis2 is None
                else {"name": spec.axis2.name, "values": list(spec.axis2.values)}
            ),
        },
        "rows": [_row_dict(row, spec.base.omega_phi1) for row in result.rows],
    }
    return json.dumps(doc, indent=2) + "\n"


def parse_result_csv(text: str):
    """Parse a result CSV back into (axis_names, row dicts).

    Numeric cells round-trip exactly (they were written as shortest
    round-trip decimals).  Empty measure cells become ``None``; the
    stable column becomes a bool, or the string ``"error"`` for rows
    that failed to evaluate.
    """
    lines = text.splitlines()
    if not lines:
        raise BadUnit("result CSV is empty")
    header = lines[0].split(",")
    n_axes = len(header) - len(MEASURE_COLUMNS)
    if n_axes < 1 or tuple(header[n_axes:]) != MEASURE_COLUMNS:
        raise BadUnit("result CSV header does not match the fixed layout")
    axis_names = header[:n_axes]
    rows = []
    for lineno, line in enumerate(lines[1:], start=2):
        cells = line.split(",")
        if len(cells) != len(header):
            raise BadUnit(f"line {lineno}: expected {len(header)} cells")
        doc: dict = {}
        for name, cell in zip(axis_names, cells[:n_axes]):
            doc[name] = float(cell)
        body = cells[n_axes:]
        stable_cell = body[0]
        if stable_cell == "error":
            doc["stable"] = "error"
            for name in MEASURE_COLUMNS[1:]:
                doc[name] = None
            rows.append(doc)
            continue
        if stable_cell not in ("true", "false"):
            raise BadUnit(f"line {lineno}: bad stable cell {stable_cell!r}")
        doc["stable"] = stable_cell == "true"
        for name, cell in zip(MEASURE_COLUMNS[1:], body[1:]):
            if cell == "":
                doc[name] = None
            elif name == "steering_class":
                doc[name] = SteeringClass(cell).value
            else:
                doc[name] = float(cell)
        rows.append(doc)
    return axis_names, rows


def write_result(result: SweepResult, path: str, fmt: str) -> None:
    """Write a sweep result to ``path`` as ``csv`` or ``json``."""
    if fmt == "csv":
        payload = serialize_csv(result)
    elif fmt == "json":
        payload = serialize_json(result)
    else:
        raise BadUnit(f"format must be 'csv' or 'json', got {fmt!r}")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(payload)


def format_report_table(report: CorrelationReport, omega_phi1: float) -> str:
    """Aligned key/value table for a single-point report."""
    rows = [("stable", "true" if report.stable else "false")]
    rows.append(
        ("stability_margin_ratio", _fmt(report.stability_margin / omega_phi1))
    )
    if report.stable:
        rows.extend(
            [
                ("EN_mm", _fmt(report.en_mm)),
                ("EN_m1c", _fmt(report.en_m1c)),
                ("EN_m2c", _fmt(report.en_m2c)),
                ("zeta_m1_m2", _fmt(report.zeta_m1_m2)),
                ("zeta_m2_m1", _fmt(report.zeta_m2_m1)),
                ("zeta_M", _fmt(report.zeta_asym)),
                ("steering_class", report.steering_class.value),
                ("R_min", _fmt(report.r_min)),
            ]
        )
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k:<{width}}  {v}" for k, v in rows)


def report_to_json(report: CorrelationReport, omega_phi1: float) -> str:
    """JSON document for a single-point report (same field names)."""
    doc: dict = {
        "stable": report.stable,
        "stability_margin_ratio": report.stability_margin / omega_phi1,
        "EN_mm": report.en_mm,
        "EN_m1c": report.en_m1c,
        "EN_m2c": report.en_m2c,
        "zeta_m1_m2": report.zeta_m1_m2,
        "zeta_m2_m1": report.zeta_m2_m1,
        "zeta_M": report.zeta_asym,
        "steering_class": (
            None if report.steering_class is None else report.steering_class.value
        ),
        "R_min": report.r_min,
    }
    return json.dumps(doc, indent=2) + "\n"
