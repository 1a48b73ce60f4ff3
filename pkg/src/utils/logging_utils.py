"""Logging utilities for the knit-products toolkit."""

import logging
import os
from datetime import datetime

from src.config.config import LOG_DIR, LOG_TO_FILE


def setup_logger(name: str, log_dir: str = LOG_DIR, to_file: bool = LOG_TO_FILE) -> logging.Logger:
    """Set up a logger with console and optional file handlers.

    Args:
        name (str): Logger name
        log_dir (str): Directory for log files
        to_file (bool): Whether to attach the timestamped file handler

    Returns:
        logging.Logger: Configured logger
    """
    logger = logging.getLogger(name)
    logger.setLevel(logging.DEBUG)

    # Re-imports must not stack handlers
    if logger.handlers:
        return logger

    console_formatter = logging.Formatter('%(levelname)s - %(message)s')
    console_handler = logging.StreamHandler()
    console_handler.setLevel(logging.INFO)
    console_handler.setFormatter(console_formatter)
    logger.addHandler(console_handler)

    if to_file:
        if not os.path.exists(log_dir):
            os.makedirs(log_dir)
        file_formatter = logging.Formatter(
            '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
        )
        log_file = os.path.join(
            log_dir,
            f"{name}_{datetime.now().strftime('%Y%m%d_%H%M%S')}.log"
        )
        file_handler = logging.FileHandler(log_file)
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(file_formatter)
        logger.addHandler(file_handler)

    logger.propagate = False
    return logger


def set_console_level(level: int) -> None:
    """Adjust the console verbosity of every component logger."""
    for logger in ALL_LOGGERS:
        for handler in logger.handlers:
            if isinstance(handler, logging.StreamHandler) and not isinstance(handler, logging.FileHandler):
                handler.setLevel(level)


# Create loggers for different components
magma_logger = setup_logger("magma")
actions_logger = setup_logger("actions")
product_logger = setup_logger("product")
rewriting_logger = setup_logger("rewriting")
presentation_logger = setup_logger("presentation")
category_logger = setup_logger("category")
cli_logger = setup_logger("cli")

ALL_LOGGERS = (
    magma_logger,
    actions_logger,
    product_logger,
    rewriting_logger,
    presentation_logger,
    category_logger,
    cli_logger,
)
