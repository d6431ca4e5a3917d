import os
from collections.abc import Sequence
from multiprocessing import Pool

import numpy as np

from ... import __version__
from ...core.config import TOL
from ...core.logging import get_logger
from ..correlations.measures import bell_max, concurrence, min_hs, min_trace
from ..correlations.oracle import min_oracle
from ..correlations.schemas import Metric
from ..qmat.linalg import bloch_decompose
from ..ptdyn.schemas import PTParams
from ..ptdyn.service import evolve_state
from ..teleport.service import parse_input_state, teleport_fidelity
from ..xymodel.schemas import XYParams
from ..xymodel.service import thermal_state
from .schemas import MIN_HS_SCALE, SweepConfig, SweepTable

logger = get_logger(__name__)


def state_at(cfg: SweepConfig, value: float):
    """Thermal state, PT-evolved when the config asks for it, at var = value."""
    params = cfg.model_dump(include={"J", "gamma", "B", "T", "f", "phi", "t"})
    params[cfg.var] = float(value)

    rho = thermal_state(XYParams(J=params["J"], gamma=params["gamma"], B=params["B"]), params["T"])
    if not cfg.applies_pt:
        return rho
    p = PTParams(f=params["f"], phi=params["phi"], t=params["t"])
    return evolve_state(rho, p).state


def evaluate_point(cfg: SweepConfig, value: float) -> list[float]:
    """One table row: [value, measures...] in cfg.columns() order."""
    rho = state_at(cfg, value)
    row = [float(value)]
    for m in cfg.measures:
        if m == "concurrence":
            row.append(concurrence(rho))
        elif m == "bell_max":
            row.append(bell_max(rho))
        elif m == "min_hs":
            v = min_hs(rho)
            row += [v, 4 * v]
        elif m == "min_trace":
            if bloch_decompose(rho).is_x_structure(TOL.closed_form):
                row.append(min_trace(rho))
            else:
                row.append(min_oracle(rho, Metric.TRACE, grid=cfg.oracle_grid))
        elif m == "fidelity":
            rho_in = parse_input_state(cfg.input_state) if cfg.input_state else None
            row.append(teleport_fidelity(rho, rho_in))
    return row


def _evaluate_job(job: tuple[SweepConfig, float]) -> list[float]:
    cfg, value = job
    return evaluate_point(cfg, value)


def _resolve_workers(workers: int, jobs: int) -> int:
    n = workers or os.cpu_count() or 1
    return max(1, min(n, jobs))


def run_sweep(cfg: SweepConfig) -> SweepTable:
    """Evaluate every grid point independently; row order follows the grid."""
    grid = cfg.grid()
    jobs = [(cfg, float(v)) for v in grid]
    workers = _resolve_workers(cfg.workers, len(jobs))

    logger.info(
        f"sweep {cfg.var} in [{cfg.vmin:g}, {cfg.vmax:g}], {cfg.steps} steps, "
        f"measures={','.join(cfg.measures)}, workers={workers}"
    )

    if workers > 1:
        with Pool(workers) as pool:
            rows = pool.map(_evaluate_job, jobs)
    else:
        rows = [_evaluate_job(job) for job in jobs]

    metadata = {
        "tool": f"ptcorr {__version__}",
        "var": cfg.var,
        "range": f"[{cfg.vmin!r}, {cfg.vmax!r}]",
        "steps": str(cfg.steps),
        "pt_operation": "on" if cfg.applies_pt else "off",
        "min_hs_scale": MIN_HS_SCALE,
    }
    metadata.update({k: repr(v) for k, v in cfg.fixed_parameters().items()})
    if "fidelity" in cfg.measures:
        metadata["input_state"] = cfg.input_state or "phi+"

    logger.info(f"sweep {cfg.var} done: {len(rows)} rows")
    return SweepTable(columns=cfg.columns(), rows=rows, metadata=metadata)


def run_family(
    base: SweepConfig,
    member: str,
    values: Sequence[float],
    labels: Sequence[str] | None = None,
) -> SweepTable:
    """Repeat one sweep for several values of a fixed parameter.

    Measure columns are suffixed `[member=label]`; all members share the grid.
    """
    labels = list(labels) if labels is not None else [f"{v:g}" for v in values]
    if len(labels) != len(values):
        raise ValueError("one label per family value")

    tables = []
    for value in values:
        cfg = base.model_copy(update={member: float(value)})
        # model_copy skips validation; re-run it so a bad member value surfaces here
        tables.append(run_sweep(SweepConfig.model_validate(cfg.model_dump())))

    columns = [base.var]
    for label, table in zip(labels, tables):
        columns += [f"{c}[{member}={label}]" for c in table.columns[1:]]

    rows = []
    for i, x in enumerate(tables[0].column(base.var)):
        row = [float(x)]
        for table in tables:
            row += table.rows[i][1:]
        rows.append(row)

    metadata = dict(tables[0].metadata)
    metadata.pop(member, None)
    metadata["family"] = f"{member} in [{', '.join(labels)}]"
    return SweepTable(columns=columns, rows=rows, metadata=metadata)


def measured_period(ts: np.ndarray, values: np.ndarray, tol: float = 1e-9) -> float:
    """Smallest lag (in t units) at which a uniformly sampled series repeats within tol.

    Returns nan if no lag below half the series length matches.
    """
    ts = np.asarray(ts, dtype=float)
    values = np.asarray(values, dtype=float)
    n = len(values)
    scale = max(1.0, float(np.max(np.abs(values))))
    dt = ts[1] - ts[0]
    for lag in range(1, n // 2 + 1):
        if np.max(np.abs(values[lag:] - values[:-lag])) <= tol * scale:
            return lag * dt
    return float("nan")
