from __future__ import annotations

import time
from typing import Callable, TypeVar

from ergm_calibration.core.logging import logger
from ergm_calibration.domain.models.results import StageTimings
from ergm_calibration.exceptions.base import ErgmCalibrationError
from ergm_calibration.exceptions.pipeline import StageFailedError

T = TypeVar("T")


class PipelineCore:
    """
    Core orchestrator for pipeline stages.

    Responsibilities:
    - Runs one named stage at a time and records its CPU time
    - Wraps library errors in StageFailedError carrying the stage name
    - Contains NO statistics, sampling or file logic

    This class is INTERNAL and should not be used directly
    by consuming applications.
    """

    def __init__(self, timings: StageTimings | None = None) -> None:
        self.timings = timings or StageTimings()

    def run(self, stage: str, fn: Callable[..., T], /, *args, **kwargs) -> T:
        """
        Run ``fn(*args, **kwargs)`` as stage ``stage``.
        """
        logger.debug(f"Stage '{stage}' => started")
        started = time.process_time()
        try:
            result = fn(*args, **kwargs)
        except StageFailedError:
            raise
        except ErgmCalibrationError as exc:
            logger.error(f"Stage '{stage}' => failed: {exc}")
            raise StageFailedError(stage, exc) from exc
        finally:
            self.timings.record(stage, time.process_time() - started)
        logger.debug(f"Stage '{stage}' => done in {self.timings.stages[stage]:.2f}s CPU")
        return result
