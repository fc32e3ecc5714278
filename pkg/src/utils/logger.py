import logging
import sys

from ..config.config import SCHUR_REGIONS_LOG_LEVEL

def get_logger(name: str) -> logging.Logger:
    logger = logging.getLogger(name)

    if not logger.handlers:
        level = getattr(logging, SCHUR_REGIONS_LOG_LEVEL, logging.INFO)
        logger.setLevel(level)

        # 標準出力は JSON / SVG の出力先になるため stderr に出す
        handler = logging.StreamHandler(sys.stderr)
        handler.setLevel(level)

        formatter = logging.Formatter(
            '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
        )
        handler.setFormatter(formatter)

        logger.addHandler(handler)
        logger.propagate = False

    return logger
