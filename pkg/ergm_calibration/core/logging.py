import logging

logging.basicConfig(
    level=logging.INFO,
    format="%(asctime)s | %(levelname)s | %(name)s | %(message)s",
)

logger = logging.getLogger("ergm_calibration")
logger.setLevel(logging.DEBUG)


def set_verbosity(level: int) -> None:
    """Adjust the package logger and the root handlers together."""
    logger.setLevel(level)
    for handler in logging.getLogger().handlers:
        handler.setLevel(level)
