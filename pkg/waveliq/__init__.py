"""
waveliq - training-free full-reference image quality assessment.

A distorted image is scored against its reference by comparing the sets of
multiscale wavelet features of both images with the Hausdorff distance and
attenuating the resulting similarity by a colour-histogram distance. The
``bench`` sub-package evaluates the metric against subjective scores.
"""

import contextlib
import contextvars
import logging
import os
from logging.handlers import RotatingFileHandler

from dotenv import load_dotenv

# Load environment variables
load_dotenv()

__version__ = "1.0.0"

LOG_FORMAT = "[%(asctime)s] %(levelname)s [%(record_id)s] %(name)s: %(message)s"

_current_record = contextvars.ContextVar('waveliq_record_id', default='-')


class RecordFormatter(logging.Formatter):
    """Custom formatter that adds the record being scored to log records."""

    def format(self, record):
        record.record_id = _current_record.get()
        return super().format(record)


@contextlib.contextmanager
def record_context(record_id):
    """Tag every log line emitted inside the block with ``record_id``."""
    token = _current_record.set(str(record_id))
    try:
        yield
    finally:
        _current_record.reset(token)


def setup_logging(config):
    """Configure package logging from a config class (see ``waveliq.config``)."""
    log_level = getattr(logging, config.LOG_LEVEL, logging.WARNING)

    root = logging.getLogger()
    # Remove default handlers to avoid duplicates
    for handler in root.handlers[:]:
        root.removeHandler(handler)

    # Console handler (stderr; stdout is reserved for command output)
    console_handler = logging.StreamHandler()
    console_handler.setLevel(log_level)
    console_handler.setFormatter(RecordFormatter(LOG_FORMAT))
    handlers = [console_handler]

    log_dir = config.LOG_DIR
    if log_dir:
        os.makedirs(log_dir, exist_ok=True)
        file_handler = RotatingFileHandler(
            os.path.join(log_dir, 'waveliq.log'),
            maxBytes=10 * 1024 * 1024, backupCount=10, encoding="utf-8"
        )
        file_handler.setLevel(log_level)
        file_handler.setFormatter(RecordFormatter(LOG_FORMAT))
        handlers.append(file_handler)

    logging.basicConfig(level=log_level, handlers=handlers, force=True)
    logging.getLogger(__name__).debug(
        f"Logging initialized at {logging.getLevelName(log_level)} level"
    )


__all__ = ['__version__', 'RecordFormatter', 'record_context', 'setup_logging']
