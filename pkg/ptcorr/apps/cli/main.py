import functools
import sys
import uuid

import click
from pydantic import ValidationError

from ... import __version__
from ...core.errors import (
    BrokenPhase,
    ConfigError,
    InvalidRange,
    NonpositiveTemperature,
    OutputError,
    PtcorrError,
)
from ...core.config import LOG_LEVELS
from ...core.logging import get_logger, set_level, set_run_id

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_USAGE = 2
EXIT_IO = 3

# errors caused by what the user asked for
_USAGE_ERRORS = (ConfigError, InvalidRange, BrokenPhase, NonpositiveTemperature, ValidationError, ValueError)


def handle_errors(fn):
    """Map library errors to the CLI exit codes."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        set_run_id(uuid.uuid4().hex[:8])
        try:
            return fn(*args, **kwargs)
        except OutputError as e:
            click.echo(f"error: {e}", err=True)
            sys.exit(EXIT_IO)
        except _USAGE_ERRORS as e:
            click.echo(f"error: {e}", err=True)
            sys.exit(EXIT_USAGE)
        except PtcorrError as e:
            logger.error(f"{type(e).__name__}: {e}")
            click.echo(f"error: {e}", err=True)
            sys.exit(EXIT_VALIDATION)
        finally:
            set_run_id(None)

    return wrapper


@click.group()
@click.option("-v", "--verbose", is_flag=True, help="debug logging on stderr")
@click.option(
    "--log-level",
    type=click.Choice(LOG_LEVELS, case_sensitive=False),
    default=None,
    help="log level of the ptcorr loggers",
)
@click.version_option(version=__version__, prog_name="ptcorr")
@click.pass_context
def cli(ctx: click.Context, verbose: bool, log_level: str | None):
    """Thermal XY-model correlations, teleportation and PT-symmetric dynamics."""
    # a level given here wins over the one in Settings
    ctx.ensure_object(dict)["log_level_fixed"] = verbose or bool(log_level)
    if verbose:
        set_level("DEBUG")
    elif log_level:
        set_level(log_level.upper())


# subcommands attach themselves to `cli`
from . import commands  # noqa: E402,F401
