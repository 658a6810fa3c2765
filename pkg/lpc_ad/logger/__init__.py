import logging
from logging import Logger
from typing import Any


def get_lpc_logger(cls: Any) -> Logger:
    logger = logging.getLogger(f"lpc_ad.{cls.__name__}")
    logger.disabled = logging.root.disabled
    logger.level = logging.root.level
    return logger


def get_lpc_run_logger(run_name: str, cls: object = None) -> Logger:
    if cls and hasattr(cls, "__name__"):
        logger = logging.getLogger(f"{run_name}:{cls.__name__}")
    else:
        logger = logging.getLogger(run_name)
    logger.disabled = logging.root.disabled
    logger.level = logging.root.level
    return logger
