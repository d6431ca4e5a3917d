"""Named sweeps, one per plotted parameter set."""

import math

from pydantic import BaseModel, ConfigDict

from ...core.errors import ConfigError
from ..ptdyn.service import period
from .schemas import CORRELATION_MEASURES, SweepConfig, SweepTable
from .service import run_family, run_sweep

PI = math.pi
PHI_FAMILY = ((PI / 3, PI / 4, PI / 6), ("pi/3", "pi/4", "pi/6"))
GAMMA_FAMILY = ((-0.01, -0.5, 0.05, 1.0), ("-0.01", "-0.5", "0.05", "1"))
B_FAMILY = (tuple(0.5 * i for i in range(11)), tuple(f"{0.5 * i:g}" for i in range(11)))

POINTS_PER_PERIOD = 500

# J = 4.5, gamma = 0.05, B = 1.5, f = 1 unless a recipe says otherwise
_MODEL = dict(J=4.5, gamma=0.05, B=1.5, f=1.0)


class Recipe(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    caption: str
    base: SweepConfig
    family: tuple[str, tuple[float, ...], tuple[str, ...]] | None = None
    notes: dict[str, str] = {}


def _time_axis(phis: tuple[float, ...]) -> dict:
    """t over two periods of the slowest phi, sampled at 500 points per period of the fastest."""
    t_max = 2 * max(period(1.0, p) for p in phis)
    dt = min(period(1.0, p) for p in phis) / POINTS_PER_PERIOD
    return dict(var="t", vmin=0.0, vmax=t_max, steps=int(round(t_max / dt)) + 1)


def _thermal(name, caption, var, vmin, vmax, steps, measures=CORRELATION_MEASURES, **kw) -> Recipe:
    family = kw.pop("family", None)
    notes = kw.pop("notes", {})
    params = {**_MODEL, **kw}
    base = SweepConfig(var=var, vmin=vmin, vmax=vmax, steps=steps, measures=measures, **params)
    return Recipe(name=name, caption=caption, base=base, family=family, notes=notes)


def _pt(name, caption, phis, measures=CORRELATION_MEASURES, **kw) -> Recipe:
    family = kw.pop("family", None)
    notes = kw.pop("notes", {})
    params = {**_MODEL, **kw}
    base = SweepConfig(evolve=True, measures=measures, **_time_axis(phis), **params)
    return Recipe(name=name, caption=caption, base=base, family=family, notes=notes)


RECIPES: dict[str, Recipe] = {
    r.name: r
    for r in (
        _thermal("fig1a", "correlations vs T", "T", 0.05, 5.0, 200),
        _thermal(
            "fig1b",
            "correlations vs J at T = 1",
            "J",
            -5.0,
            8.0,
            200,
            T=1.0,
            notes={
                "j_range": "inferred",
                "concurrence_parity": "even in J",
            },
        ),
        _thermal(
            "fig2a",
            "teleportation fidelity vs T for several gamma",
            "T",
            0.05,
            10.0,
            200,
            measures=("fidelity",),
            family=("gamma", *GAMMA_FAMILY),
        ),
        _thermal(
            "fig2b",
            "teleportation fidelity over (T, B)",
            "T",
            0.05,
            5.0,
            100,
            measures=("fidelity",),
            family=("B", *B_FAMILY),
            notes={"b_values": "inferred", "b_range": "0 to 5, step 0.5"},
        ),
        _pt("fig3", "correlations vs t, T = 1", PHI_FAMILY[0], T=1.0, family=("phi", *PHI_FAMILY)),
        _pt("fig4a", "correlations vs t, T = 4, phi = pi/3", (PI / 3,), T=4.0, phi=PI / 3),
        _pt("fig4b", "correlations vs t, T = 6, phi = pi/3", (PI / 3,), T=6.0, phi=PI / 3),
        _pt(
            "fig5a",
            "fidelity vs t, T = 1",
            PHI_FAMILY[0],
            measures=("fidelity",),
            T=1.0,
            family=("phi", *PHI_FAMILY),
        ),
        _pt(
            "fig5b",
            "fidelity vs t for several gamma, T = 1, phi = pi/6",
            (PI / 6,),
            measures=("fidelity",),
            T=1.0,
            phi=PI / 6,
            family=("gamma", *GAMMA_FAMILY),
        ),
        _pt(
            "fig6a",
            "fidelity vs t, T = 4",
            PHI_FAMILY[0],
            measures=("fidelity",),
            T=4.0,
            family=("phi", *PHI_FAMILY),
        ),
        _pt(
            "fig6b",
            "fidelity vs t, T = 6",
            PHI_FAMILY[0],
            measures=("fidelity",),
            T=6.0,
            family=("phi", *PHI_FAMILY),
        ),
    )
}


def get_recipe(name: str) -> Recipe:
    try:
        return RECIPES[name]
    except KeyError:
        raise ConfigError(f"unknown recipe '{name}', expected one of {sorted(RECIPES)}") from None


def run_recipe(name: str, workers: int = 0) -> SweepTable:
    recipe = get_recipe(name)
    base = recipe.base.model_copy(update={"workers": workers})
    if recipe.family is None:
        table = run_sweep(base)
    else:
        member, values, labels = recipe.family
        table = run_family(base, member, values, labels)

    metadata = {"recipe": recipe.name, "caption": recipe.caption, **table.metadata}
    metadata.update({f"note.{k}": v for k, v in recipe.notes.items()})
    return table.model_copy(update={"metadata": metadata})
