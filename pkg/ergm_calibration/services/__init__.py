from .calibrator import ErgmCalibrator, build_prior
from .pipeline import RunReport, run_pipeline

__all__ = ["ErgmCalibrator", "build_prior", "RunReport", "run_pipeline"]
