import sys
from typing import Any

import click
from tabulate import tabulate

from ...core.config import Settings, load_settings, read_config_file
from ...core.errors import ConfigError
from ...core.logging import get_logger, set_level
from ...modules.correlations.measures import correlation_report
from ...modules.ptdyn.schemas import PTParams
from ...modules.ptdyn.service import evolve_state, period
from ...modules.qmat.linalg import bloch_decompose
from ...modules.sweep.recipes import RECIPES, run_recipe
from ...modules.sweep.schemas import PT_VARS, SWEEP_VARS, SweepConfig, SweepTable, parse_measures
from ...modules.sweep.service import run_sweep
from ...modules.sweep.writers import emit_csv, emit_svg, render_csv
from ...modules.teleport.schemas import BELL_BASIS
from ...modules.teleport.service import channel_weights, parse_input_state, teleport_fidelity
from ...modules.validation.runner import exit_code, validate_suite
from ...modules.xymodel.schemas import XYParams
from ...modules.xymodel.service import thermal_elements, thermal_state
from .main import cli, handle_errors

logger = get_logger(__name__)


# ===== Shared options =====


def _apply(fn, options):
    for opt in reversed(options):
        fn = opt(fn)
    return fn


def model_options(fn):
    return _apply(
        fn,
        [
            click.option("--config", "config", type=click.Path(), default=None, help="key = value file"),
            click.option("--J", "J", type=float, default=None, help="exchange coupling"),
            click.option("--gamma", "gamma", type=float, default=None, help="anisotropy"),
            click.option("--B", "B", type=float, default=None, help="field along z"),
            click.option("--T", "T", type=float, default=None, help="temperature (k_B = 1)"),
            click.option("--f", "f", type=float, default=None, help="PT energy scale"),
            click.option("--phi", "phi", default=None, help="non-Hermiticity angle, e.g. pi/6"),
            click.option("--t", "t", default=None, help="evolution time"),
        ],
    )


def output_options(fn):
    return _apply(
        fn,
        [
            click.option("--out-csv", "out_csv", default=None, help="CSV path (stdout if omitted)"),
            click.option("--out-svg", "out_svg", default=None, help="SVG line chart path"),
            click.option("--no-timestamp", "no_timestamp", is_flag=True, default=None),
            click.option("--workers", "workers", type=int, default=None, help="0 = all cores"),
        ],
    )


def sweep_options(fn):
    return _apply(
        fn,
        [
            click.option("--var", "var", default=None, help=f"one of {', '.join(SWEEP_VARS)}"),
            click.option("--min", "vmin", type=float, default=None),
            click.option("--max", "vmax", type=float, default=None),
            click.option("--steps", "steps", type=int, default=None),
            click.option("--measures", "measures", default=None, help="comma list"),
            click.option("--input-state", "input_state", default=None, help="a,b,phase"),
        ],
    )


def _load(config: str | None, **flags: Any) -> tuple[Settings, tuple[str, ...]]:
    """Settings plus the model parameters the user fixed (flags or config file)."""
    settings = load_settings(config, **flags)
    if not click.get_current_context().find_root().obj.get("log_level_fixed"):
        set_level(settings.log_level.upper())

    given = {k for k, v in flags.items() if v is not None}
    if config:
        given |= set(read_config_file(config))
    pinned = tuple(sorted(given & set(SWEEP_VARS)))
    return settings, pinned


def _sweep_config(s: Settings, pinned, **overrides) -> SweepConfig:
    fields = dict(
        J=s.J,
        gamma=s.gamma,
        B=s.B,
        T=s.T,
        f=s.f,
        phi=s.phi,
        t=s.t,
        var=s.var,
        vmin=s.vmin,
        vmax=s.vmax,
        steps=s.steps,
        measures=parse_measures(s.measures),
        input_state=s.input_state,
        pinned=pinned,
        workers=s.workers,
        oracle_grid=s.oracle_grid,
    )
    fields.update(overrides)
    missing = [k for k in ("var", "vmin", "vmax", "steps") if fields[k] is None]
    if missing:
        flags = {"vmin": "--min", "vmax": "--max"}
        raise ConfigError(f"missing {', '.join(flags.get(k, '--' + k) for k in missing)}")
    return SweepConfig(**fields)


def _emit(table: SweepTable, s: Settings, title: str) -> None:
    timestamp = not s.no_timestamp
    if s.out_csv:
        emit_csv(table, s.out_csv, timestamp=timestamp)
    else:
        click.echo(render_csv(table, timestamp=timestamp), nl=False)
    if s.out_svg:
        emit_svg(table, s.out_svg, title=title)


def _fmt_complex(z: complex) -> str:
    return f"{z.real:+.6f}{z.imag:+.6f}j" if abs(z.imag) > 5e-13 else f"{z.real:+.6f}"


# ===== sweep / pt-sweep =====


@cli.command("sweep")
@model_options
@sweep_options
@output_options
@handle_errors
def sweep(config, **flags):
    """Sweep T, J, B or gamma over the thermal state."""
    s, pinned = _load(config, **flags)
    if s.var in PT_VARS:
        raise ConfigError(f"'{s.var}' needs the PT operation; use pt-sweep")
    cfg = _sweep_config(s, pinned)
    _emit(run_sweep(cfg), s, title=f"correlations vs {cfg.var}")


@cli.command("pt-sweep")
@model_options
@sweep_options
@click.option("--t-min", "t_min", default=None, help="start time (var t)")
@click.option("--t-max", "t_max", default=None, help="end time (var t), default two periods")
@output_options
@handle_errors
def pt_sweep(config, **flags):
    """Sweep over the PT-evolved thermal state; t by default."""
    s, pinned = _load(config, **flags)
    var = s.var or "t"
    overrides: dict[str, Any] = {"var": var, "evolve": True}

    if var == "t":
        tau = period(s.f, s.phi)
        t_min = s.t_min if s.t_min is not None else (s.vmin if s.vmin is not None else 0.0)
        t_max = s.t_max if s.t_max is not None else (s.vmax if s.vmax is not None else t_min + 2 * tau)
        steps = s.steps or int(round((t_max - t_min) / tau * s.pt_points_per_period)) + 1
        overrides.update(vmin=t_min, vmax=t_max, steps=steps)

    cfg = _sweep_config(s, pinned, **overrides)
    _emit(run_sweep(cfg), s, title=f"PT-evolved correlations vs {cfg.var}")


# ===== fig =====


@cli.command("fig")
@click.argument("name", type=click.Choice(sorted(RECIPES)))
@click.option("--config", "config", type=click.Path(), default=None)
@output_options
@handle_errors
def fig(name, config, **flags):
    """Run a named recipe (fig1a ... fig6b)."""
    s, _ = _load(config, **flags)
    table = run_recipe(name, workers=s.workers)
    _emit(table, s, title=RECIPES[name].caption)


# ===== state / teleport =====


def _channel(s: Settings):
    """Thermal state at the configured parameters, PT-evolved when t > 0."""
    p = XYParams(J=s.J, gamma=s.gamma, B=s.B)
    rho = thermal_state(p, s.T)
    if s.t > 0:
        rho = evolve_state(rho, PTParams(f=s.f, phi=s.phi, t=s.t)).state
    return p, rho


@cli.command("state")
@model_options
@handle_errors
def state(config, **flags):
    """Print the (evolved) thermal state, its Bloch form and the four measures."""
    s, _ = _load(config, **flags)
    p, rho = _channel(s)
    m = rho.matrix

    header = f"J={s.J:g} gamma={s.gamma:g} B={s.B:g} T={s.T:g}"
    if s.t > 0:
        header += f" f={s.f:g} phi={s.phi:.6g} t={s.t:.6g}"
    click.echo(header)
    if s.t == 0:
        e = thermal_elements(p, s.T, scaled=True)
        click.echo(
            tabulate(
                [[e.mu_minus / e.Z, e.mu_plus / e.Z, e.kappa / e.Z, e.omega / e.Z, e.nu / e.Z]],
                headers=["mu-/Z", "mu+/Z", "kappa/Z", "omega/Z", "nu/Z"],
                floatfmt=".10g",
            )
        )
        click.echo()

    labels = ["|00>", "|01>", "|10>", "|11>"]
    click.echo(tabulate([[labels[i]] + [_fmt_complex(z) for z in m[i]] for i in range(4)], headers=[""] + labels))
    click.echo()

    bloch = bloch_decompose(rho)
    rows = [["x"] + list(bloch.x), ["y"] + list(bloch.y)] + [[f"R[{i + 1}]"] + list(bloch.R[i]) for i in range(3)]
    click.echo(tabulate(rows, headers=["", "1", "2", "3"], floatfmt=".10g"))
    click.echo()

    report = correlation_report(rho, grid=s.oracle_grid)
    click.echo(
        tabulate(
            [
                ["concurrence", report.concurrence],
                ["bell_max", report.bell_max],
                ["min_hs", report.min_hs],
                ["min_hs_paper_scale", 4 * report.min_hs],
                ["min_trace", report.min_trace],
            ],
            headers=["measure", "value"],
            floatfmt=".12g",
        )
    )


@cli.command("teleport")
@model_options
@click.option("--input-state", "input_state", default=None, help="a,b,phase")
@handle_errors
def teleport(config, **flags):
    """Bell weights of the thermal channel and the teleportation fidelity."""
    s, _ = _load(config, **flags)
    _, rho = _channel(s)
    w = channel_weights(rho)
    rho_in = parse_input_state(s.input_state) if s.input_state else None

    click.echo(tabulate(zip(BELL_BASIS.labels, w.q), headers=["Bell state", "weight"], floatfmt=".12g"))
    click.echo()
    click.echo(f"fidelity = {teleport_fidelity(rho, rho_in):.12g}")


# ===== validate =====


@cli.command("validate")
@handle_errors
def validate():
    """Run every dual-route and oracle check; JSON lines on stdout."""
    results = validate_suite()
    for r in results:
        # non-finite deviations serialize as null
        click.echo(r.model_dump_json())
    sys.exit(exit_code(results))
