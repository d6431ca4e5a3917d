"""CSV and SVG artifacts for sweep tables."""

import csv
import io
import math
import xml.etree.ElementTree as ET
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from ...core.errors import OutputError
from ...core.logging import get_logger
from .schemas import SweepTable

logger = get_logger(__name__)

SIG_DIGITS = 12


def format_value(v: float) -> str:
    return f"{v:.{SIG_DIGITS}g}"


# ===== CSV =====


def render_csv(table: SweepTable, timestamp: bool = True) -> str:
    lines = [f"# {k}: {v}" for k, v in table.metadata.items()]
    if timestamp:
        lines.append(f"# generated: {datetime.now(timezone.utc).isoformat(timespec='seconds')}")

    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(table.columns)
    for row in table.rows:
        writer.writerow([format_value(v) for v in row])
    return "\n".join(lines) + ("\n" if lines else "") + out.getvalue()


def emit_csv(table: SweepTable, path: str | Path, timestamp: bool = True) -> None:
    text = render_csv(table, timestamp=timestamp)
    try:
        with open(path, "w", encoding="utf-8", newline="") as f:
            f.write(text)
    except OSError as e:
        raise OutputError(f"cannot write CSV to {path}: {e}") from e
    logger.info(f"wrote {len(table.rows)} rows to {path}")


def parse_csv(path: str | Path) -> SweepTable:
    """Read a file written by emit_csv back into a table (timestamp dropped)."""
    metadata: dict[str, str] = {}
    body: list[str] = []
    with open(path, encoding="utf-8", newline="") as f:
        for line in f:
            if line.startswith("#"):
                key, _, value = line[1:].strip().partition(": ")
                if key != "generated":
                    metadata[key] = value
            else:
                body.append(line)

    reader = csv.reader(body)
    columns = next(reader)
    rows = [[float(x) for x in r] for r in reader if r]
    return SweepTable(columns=columns, rows=rows, metadata=metadata)


# ===== SVG =====

WIDTH, HEIGHT = 960, 600
MARGIN_LEFT, MARGIN_RIGHT, MARGIN_TOP, MARGIN_BOTTOM = 80, 220, 30, 60
PAD_FRACTION = 0.05
N_TICKS = 6

COLORS = (
    "#d6278c",  # magenta
    "#2ca02c",  # green
    "#1f77b4",  # blue
    "#d62728",  # red
    "#17becf",
    "#ff7f0e",
    "#9467bd",
    "#8c564b",
)


def padded_bounds(values: np.ndarray) -> tuple[float, float]:
    """Data bounds widened by 5% of the range on each side."""
    finite = values[np.isfinite(values)]
    if finite.size == 0:
        return 0.0, 1.0
    lo, hi = float(np.min(finite)), float(np.max(finite))
    span = hi - lo
    if span == 0.0:
        span = abs(lo) or 1.0
    return lo - PAD_FRACTION * span, hi + PAD_FRACTION * span


def _sub(parent, tag, text=None, **attrs):
    el = ET.SubElement(parent, tag, {k.rstrip("_").replace("_", "-"): str(v) for k, v in attrs.items()})
    if text is not None:
        el.text = text
    return el


def render_svg(table: SweepTable, title: str | None = None) -> str:
    x = table.column(table.columns[0])
    series = {c: table.column(c) for c in table.columns[1:]}
    x_lo, x_hi = padded_bounds(x)
    y_all = np.concatenate(list(series.values())) if series else np.zeros(1)
    y_lo, y_hi = padded_bounds(y_all)

    plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
    plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM

    def sx(v: float) -> float:
        return MARGIN_LEFT + (v - x_lo) / (x_hi - x_lo) * plot_w

    def sy(v: float) -> float:
        return MARGIN_TOP + (y_hi - v) / (y_hi - y_lo) * plot_h

    svg = ET.Element(
        "svg",
        {
            "xmlns": "http://www.w3.org/2000/svg",
            "viewBox": f"0 0 {WIDTH} {HEIGHT}",
            "width": str(WIDTH),
            "height": str(HEIGHT),
        },
    )
    _sub(svg, "rect", x=0, y=0, width=WIDTH, height=HEIGHT, fill="white")
    if title:
        _sub(svg, "text", title, x=MARGIN_LEFT, y=MARGIN_TOP - 10, font_size=14)

    # axes
    axes = _sub(svg, "g", stroke="black", stroke_width=1, fill="none")
    _sub(axes, "rect", x=MARGIN_LEFT, y=MARGIN_TOP, width=plot_w, height=plot_h)

    ticks = _sub(svg, "g", font_size=11, font_family="sans-serif")
    for v in np.linspace(x_lo, x_hi, N_TICKS):
        px = sx(v)
        _sub(axes, "line", x1=f"{px:.2f}", y1=MARGIN_TOP + plot_h, x2=f"{px:.2f}", y2=MARGIN_TOP + plot_h + 5)
        _sub(ticks, "text", f"{v:.3g}", x=f"{px:.2f}", y=MARGIN_TOP + plot_h + 18, text_anchor="middle")
    for v in np.linspace(y_lo, y_hi, N_TICKS):
        py = sy(v)
        _sub(axes, "line", x1=MARGIN_LEFT - 5, y1=f"{py:.2f}", x2=MARGIN_LEFT, y2=f"{py:.2f}")
        _sub(ticks, "text", f"{v:.3g}", x=MARGIN_LEFT - 8, y=f"{py + 4:.2f}", text_anchor="end")
    _sub(
        ticks,
        "text",
        table.columns[0],
        x=f"{MARGIN_LEFT + plot_w / 2:.2f}",
        y=HEIGHT - 15,
        text_anchor="middle",
        font_size=13,
    )

    # one polyline per column, non-finite points dropped
    legend = _sub(svg, "g", font_size=12, font_family="sans-serif")
    for i, (name, y) in enumerate(series.items()):
        color = COLORS[i % len(COLORS)]
        pts = " ".join(
            f"{sx(a):.2f},{sy(b):.2f}" for a, b in zip(x, y) if math.isfinite(a) and math.isfinite(b)
        )
        _sub(svg, "polyline", points=pts, fill="none", stroke=color, stroke_width=1.5)

        ly = MARGIN_TOP + 10 + 18 * i
        lx = WIDTH - MARGIN_RIGHT + 15
        _sub(legend, "line", x1=lx, y1=ly, x2=lx + 20, y2=ly, stroke=color, stroke_width=2)
        _sub(legend, "text", name, x=lx + 26, y=ly + 4)

    return ET.tostring(svg, encoding="unicode")


def emit_svg(table: SweepTable, path: str | Path, title: str | None = None) -> None:
    text = render_svg(table, title=title)
    try:
        Path(path).write_text('<?xml version="1.0" encoding="UTF-8"?>\n' + text + "\n", encoding="utf-8")
    except OSError as e:
        raise OutputError(f"cannot write SVG to {path}: {e}") from e
    logger.info(f"wrote plot to {path}")
