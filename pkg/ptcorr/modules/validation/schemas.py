from enum import Enum

from pydantic import BaseModel, ConfigDict


class CheckStatus(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    INFO = "info"  # reported, never fails the suite


class CheckResult(BaseModel):
    """One line of the validation report."""

    model_config = ConfigDict(frozen=True)

    check: str
    status: CheckStatus
    deviation: float
    tolerance: float

    @property
    def failed(self) -> bool:
        return self.status is CheckStatus.FAIL
