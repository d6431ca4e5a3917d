import math

from ...core.config import TOL, Tolerances
from ...core.logging import get_logger
from .checks import REGISTRY, Outcome
from .schemas import CheckResult, CheckStatus

logger = get_logger(__name__)


def run_check(name: str, tolerances: Tolerances = TOL) -> CheckResult:
    entry = next((c for c in REGISTRY if c.name == name), None)
    if entry is None:
        raise KeyError(f"unknown check '{name}'")
    try:
        outcome = Outcome(*entry.fn(tolerances))
    except Exception as e:
        # a crashing check is a failed check, not a crashed suite
        logger.error(f"check {name} raised {type(e).__name__}: {e}")
        return CheckResult(check=name, status=CheckStatus.FAIL, deviation=math.inf, tolerance=math.nan)

    if entry.informational or outcome.informational:
        status = CheckStatus.INFO
    elif outcome.deviation <= outcome.tolerance:
        status = CheckStatus.PASS
    else:
        status = CheckStatus.FAIL

    logger.debug(f"check {name}: {status.value} (deviation {outcome.deviation:.3e})")
    return CheckResult(
        check=name,
        status=status,
        deviation=float(outcome.deviation),
        tolerance=float(outcome.tolerance),
    )


def validate_suite(tolerances: Tolerances = TOL) -> list[CheckResult]:
    """Run every registered check, in registration order."""
    results = [run_check(c.name, tolerances) for c in REGISTRY]
    failed = [r.check for r in results if r.failed]
    if failed:
        logger.warning(f"validation failed: {', '.join(failed)}")
    else:
        logger.info(f"validation passed: {len(results)} checks")
    return results


def exit_code(results: list[CheckResult]) -> int:
    return 1 if any(r.failed for r in results) else 0
