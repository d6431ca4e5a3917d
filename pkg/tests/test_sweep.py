import math
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from ptcorr.core.errors import BrokenPhase, ConfigError, InvalidRange, OutputError
from ptcorr.modules.ptdyn.service import period, time_grid
from ptcorr.modules.sweep.recipes import RECIPES, get_recipe
from ptcorr.modules.sweep.schemas import (
    PAPER_SCALE_COLUMN,
    SweepConfig,
    SweepTable,
    parse_measures,
)
from ptcorr.modules.sweep.service import evaluate_point, measured_period, run_family, run_sweep
from ptcorr.modules.sweep.writers import (
    emit_csv,
    emit_svg,
    format_value,
    padded_bounds,
    parse_csv,
    render_csv,
    render_svg,
)

SVG_NS = "{http://www.w3.org/2000/svg}"


def _cfg(**kw) -> SweepConfig:
    fields = dict(var="T", vmin=0.5, vmax=2.0, steps=4, workers=1)
    fields.update(kw)
    return SweepConfig(**fields)


# ===== config =====


def test_parse_measures():
    assert parse_measures(None) == ("concurrence", "bell_max", "min_hs", "min_trace")
    assert parse_measures(" fidelity , concurrence ") == ("fidelity", "concurrence")
    assert parse_measures("") == ()


@pytest.mark.parametrize(
    "kw, error",
    [
        (dict(var="omega"), ConfigError),
        (dict(var="T", pinned=("T",)), ConfigError),
        (dict(measures=()), ConfigError),
        (dict(measures=("entropy",)), ConfigError),
        (dict(measures=("concurrence", "concurrence")), ConfigError),
        (dict(vmin=2.0, vmax=2.0), InvalidRange),
        (dict(vmin=3.0, vmax=2.0), InvalidRange),
        (dict(vmax=math.inf), InvalidRange),
        (dict(steps=1), InvalidRange),
    ],
)
def test_config_errors(kw, error):
    with pytest.raises(error):
        _cfg(**kw)


def test_columns_include_paper_scale():
    cfg = _cfg(measures=("min_hs", "fidelity"))
    assert cfg.columns() == ["T", "min_hs", PAPER_SCALE_COLUMN, "fidelity"]


def test_pt_flags():
    assert not _cfg().applies_pt
    assert _cfg(evolve=True).applies_pt
    assert _cfg(var="t", vmin=0.0, vmax=1.0).applies_pt
    assert "phi" in _cfg(var="t", vmin=0.0, vmax=1.0).fixed_parameters()
    assert "phi" not in _cfg().fixed_parameters()
    assert "T" not in _cfg().fixed_parameters()


def test_table_validation():
    with pytest.raises(ValueError):
        SweepTable(columns=["T", "a"], rows=[[1.0, 2.0], [2.0]])
    with pytest.raises(ValueError):
        SweepTable(columns=["T", "a"], rows=[[1.0, 2.0], [1.0, 3.0]])


# ===== sweeps =====


def test_two_steps_hit_endpoints():
    table = run_sweep(_cfg(steps=2))
    assert table.column("T").tolist() == [0.5, 2.0]
    assert len(table.rows) == 2


def test_min_hs_paper_scale():
    table = run_sweep(_cfg(measures=("min_hs",)))
    assert np.allclose(table.column(PAPER_SCALE_COLUMN), 4 * table.column("min_hs"))
    assert table.metadata["min_hs_scale"] == "definition"


def test_sweep_metadata():
    table = run_sweep(_cfg(measures=("fidelity",)))
    md = table.metadata
    assert md["var"] == "T"
    assert md["steps"] == "4"
    assert md["pt_operation"] == "off"
    assert md["J"] == "4.5"
    assert md["input_state"] == "phi+"
    assert md["tool"].startswith("ptcorr ")
    assert "T" not in md


def test_serial_and_parallel_agree():
    cfg = _cfg(steps=6, evolve=True, t=0.8)
    serial = run_sweep(cfg)
    parallel = run_sweep(cfg.model_copy(update={"workers": 2}))
    assert serial.rows == parallel.rows


def test_evaluate_point_pt_sweep_uses_oracle():
    cfg = _cfg(var="t", vmin=0.0, vmax=1.0, phi=0.0, measures=("min_trace",), oracle_grid=200)
    row = evaluate_point(cfg, 0.6)
    assert row[0] == 0.6
    assert row[1] == pytest.approx(evaluate_point(cfg, 0.0)[1], abs=1e-10)


def test_phi_sweep_rejects_broken_phase():
    cfg = _cfg(var="phi", vmin=0.0, vmax=2.0, steps=3, t=1.0)
    with pytest.raises(BrokenPhase):
        run_sweep(cfg)


def test_family_columns():
    base = _cfg(measures=("concurrence",))
    table = run_family(base, "gamma", (0.05, 1.0), ("0.05", "1"))
    assert table.columns == ["T", "concurrence[gamma=0.05]", "concurrence[gamma=1]"]
    assert "gamma" not in table.metadata
    assert table.metadata["family"] == "gamma in [0.05, 1]"
    single = run_sweep(base.model_copy(update={"gamma": 1.0}))
    assert table.column("concurrence[gamma=1]").tolist() == single.column("concurrence").tolist()

    with pytest.raises(ValueError):
        run_family(base, "gamma", (0.05, 1.0), ("only-one",))


def test_measured_period():
    tau = period(1.0, math.pi / 4)
    ts = time_grid(1.0, math.pi / 4, points_per_period=200)
    values = np.sin(2 * math.pi * ts / tau) ** 2 + np.cos(2 * math.pi * ts / tau)
    assert measured_period(ts, values) == pytest.approx(tau, rel=1e-12)

    assert math.isnan(measured_period(ts, ts))


# ===== recipes =====


def test_recipe_registry():
    assert sorted(RECIPES) == [
        "fig1a",
        "fig1b",
        "fig2a",
        "fig2b",
        "fig3",
        "fig4a",
        "fig4b",
        "fig5a",
        "fig5b",
        "fig6a",
        "fig6b",
    ]
    assert RECIPES["fig1b"].notes["j_range"] == "inferred"
    assert RECIPES["fig2b"].family[0] == "B"
    assert len(RECIPES["fig2b"].family[1]) == 11
    assert RECIPES["fig2b"].family[1][-1] == 5.0
    assert RECIPES["fig4a"].base.T == 4.0
    assert RECIPES["fig4b"].base.phi == pytest.approx(math.pi / 3)
    for name in ("fig3", "fig5a", "fig6a", "fig6b"):
        assert RECIPES[name].base.applies_pt
    with pytest.raises(ConfigError):
        get_recipe("fig7")


def test_recipe_time_axis_covers_two_slow_periods():
    base = RECIPES["fig3"].base
    assert base.vmin == 0.0
    assert base.vmax == pytest.approx(2 * period(1.0, math.pi / 3))


# ===== writers =====


def _table() -> SweepTable:
    return SweepTable(
        columns=["T", "concurrence", "bell_max"],
        rows=[[0.5, 0.9, 2.6], [1.0, 0.75, 2.2], [1.5, 0.5, 1.9]],
        metadata={"var": "T", "J": "4.5"},
    )


def test_format_value():
    assert format_value(0.1 + 0.2) == "0.3"
    assert format_value(1 / 3) == "0.333333333333"
    assert format_value(2.0) == "2"


def test_render_csv():
    text = render_csv(_table(), timestamp=False)
    lines = text.split("\n")
    assert lines[:3] == ["# var: T", "# J: 4.5", "T,concurrence,bell_max"]
    assert lines[3] == "0.5,0.9,2.6"
    assert text.endswith("\n")
    assert render_csv(_table(), timestamp=False) == text

    stamped = render_csv(_table())
    assert "# generated: " in stamped


def test_csv_file_round_trip(tmp_path):
    path = tmp_path / "out.csv"
    emit_csv(_table(), path)
    back = parse_csv(path)
    assert back.columns == _table().columns
    assert back.rows == _table().rows
    assert back.metadata == _table().metadata


def test_csv_write_error(tmp_path):
    with pytest.raises(OutputError):
        emit_csv(_table(), tmp_path / "missing" / "out.csv")
    with pytest.raises(OutputError):
        emit_svg(_table(), tmp_path / "missing" / "out.svg")


def test_padded_bounds():
    assert padded_bounds(np.array([0.0, 10.0])) == pytest.approx((-0.5, 10.5))
    assert padded_bounds(np.array([2.0, 2.0])) == pytest.approx((1.9, 2.1))
    assert padded_bounds(np.array([math.nan])) == (0.0, 1.0)


def test_svg_well_formed(tmp_path):
    root = ET.fromstring(render_svg(_table(), title="test"))
    assert root.tag == f"{SVG_NS}svg"
    assert root.get("viewBox") == "0 0 960 600"
    lines = root.findall(f"{SVG_NS}polyline")
    assert len(lines) == 2
    assert all(len(pl.get("points").split()) == 3 for pl in lines)

    path = tmp_path / "plot.svg"
    emit_svg(_table(), path)
    assert ET.parse(path).getroot().tag == f"{SVG_NS}svg"


def test_svg_drops_non_finite_points():
    table = SweepTable(columns=["t", "m"], rows=[[0.0, 1.0], [1.0, math.nan], [2.0, 0.5]])
    root = ET.fromstring(render_svg(table))
    (line,) = root.findall(f"{SVG_NS}polyline")
    assert len(line.get("points").split()) == 2
