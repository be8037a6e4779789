"""Logging configuration for the AKLT tree toolkit.

Provides structured logging with:
- Plain English descriptions
- Technical details
- Fix suggestions for errors
"""
import logging
import os
import sys
from datetime import datetime

from src.aklt_trees.config import LOGS_DIR, LOG_FORMAT, LOG_LEVEL, LOG_LEVEL_ENV


def setup_logging(name: str = "aklt_trees", debug: bool = False) -> logging.Logger:
    """Set up and return a configured logger.

    Args:
        name: Logger name (usually module name)
        debug: Lower the console handler to DEBUG

    Returns:
        Configured logger instance
    """
    # Ensure logs directory exists
    LOGS_DIR.mkdir(parents=True, exist_ok=True)

    level_name = os.getenv(LOG_LEVEL_ENV, LOG_LEVEL).upper()
    logger = logging.getLogger(name)
    logger.setLevel(logging.DEBUG if debug else getattr(logging, level_name, logging.INFO))

    # Prevent duplicate handlers on repeated calls
    if logger.handlers:
        return logger

    # stderr keeps stdout free for command output
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(logging.DEBUG if debug else logging.INFO)
    console_handler.setFormatter(logging.Formatter(LOG_FORMAT))

    # File handler (daily file)
    today = datetime.now().strftime("%Y-%m-%d")
    file_path = LOGS_DIR / f"aklt_trees_{today}.log"
    file_handler = logging.FileHandler(file_path, encoding="utf-8")
    file_handler.setLevel(logging.DEBUG)
    file_handler.setFormatter(logging.Formatter(LOG_FORMAT))

    logger.addHandler(console_handler)
    logger.addHandler(file_handler)

    return logger


def log_error_with_context(
    logger: logging.Logger,
    what_happened: str,
    technical_error: str,
    suggestion: str,
    action_taken: str = "None",
) -> None:
    """Log an error with full context for debugging.

    Args:
        logger: Logger instance
        what_happened: Plain English description
        technical_error: Technical error message
        suggestion: How to fix it
        action_taken: What the system did in response
    """
    message = (
        "ERROR DETAILS:\n"
        f"  What happened: {what_happened}\n"
        f"  Technical:  {technical_error}\n"
        f"  Suggestion:  {suggestion}\n"
        f"  Action taken: {action_taken}"
    )
    logger.error(message)


def log_reference_diff(
    logger: logging.Logger,
    quantity: str,
    reference: str,
    computed: str,
    verdict: str,
) -> None:
    """Log a disagreement between a printed reference value and a computed one.

    Args:
        logger: Logger instance
        quantity: What was compared (e.g. "square cell q(t)")
        reference: The printed value, as text
        computed: The value this package computed, as text
        verdict: Which one downstream code trusts
    """
    logger.warning(
        "REFERENCE DIFF:\n"
        f"  Quantity: {quantity}\n"
        f"  Reference:  {reference}\n"
        f"  Computed:  {computed}\n"
        f"  Verdict: {verdict}"
    )
