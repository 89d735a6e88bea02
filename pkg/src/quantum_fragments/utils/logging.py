import logging
import os
import sys
from datetime import datetime
from pathlib import Path
from typing import List

from quantum_fragments.constants import DEFAULT_LOG_LEVEL, LOG_DIR_ENV, LOG_LEVEL_ENV


def setup_logging() -> None:
    """Setup logging configuration.

    Diagnostics go to stderr and, when QFRAG_LOG_DIR is set, to a timestamped file.
    stdout is left to reports.
    """
    log_level = os.getenv(LOG_LEVEL_ENV, DEFAULT_LOG_LEVEL).upper()

    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    log_file = None
    log_dir = os.getenv(LOG_DIR_ENV)
    if log_dir:
        Path(log_dir).mkdir(parents=True, exist_ok=True)
        timestamp = datetime.now().strftime("%Y-%m-%d_%H-%M-%S")
        log_file = Path(log_dir) / f"qfrag_{timestamp}.log"
        handlers.append(logging.FileHandler(log_file))

    logging.basicConfig(
        level=log_level,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        handlers=handlers,
        force=True,
    )

    if log_file:
        logging.info(f"Logging to: {log_file}")
