import logging as _logging
import sys
from contextvars import ContextVar

# Context variable for the run id (one per CLI invocation / sweep)
_run_id_ctx: ContextVar[str | None] = ContextVar("run_id", default=None)


def set_run_id(run_id: str | None):
    """Set current run id (used for per-run logging)."""
    _run_id_ctx.set(run_id)


def get_run_id() -> str | None:
    return _run_id_ctx.get()


class RunIDLogFilter(_logging.Filter):
    def filter(self, record):
        record.run_id = get_run_id() or "-"
        return True


def _setup_root_logger():
    """Initialize root logger (called once on import)."""
    root = _logging.getLogger()
    if root.handlers:
        # already configured (e.g. by pytest)
        return

    # stdout is reserved for reports and tables
    handler = _logging.StreamHandler(sys.stderr)
    fmt = "[%(asctime)s] %(levelname)-7s [%(name)s] [%(run_id)s] %(message)s"
    datefmt = "%Y-%m-%d %H:%M:%S"
    formatter = _logging.Formatter(fmt=fmt, datefmt=datefmt)
    handler.setFormatter(formatter)
    handler.addFilter(RunIDLogFilter())

    root.addHandler(handler)
    root.setLevel(_logging.WARNING)


def set_level(level: str | int):
    """Set the level of the package logger tree ("ptcorr.*")."""
    _logging.getLogger("ptcorr").setLevel(level)


def get_logger(name: str | None = None) -> _logging.Logger:
    """Get a logger with unified format and run ID support."""
    _setup_root_logger()
    return _logging.getLogger(name or "ptcorr")


# Auto-init
_setup_root_logger()
