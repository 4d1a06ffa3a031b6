"""
Logging configuration
"""
import logging
import sys

import structlog


def configure_logging(debug: bool = False, verbose: bool = False):
    """Render stdlib log records as timestamped key/value lines on stderr"""
    level = logging.INFO if debug or verbose else logging.WARNING

    formatter = structlog.stdlib.ProcessorFormatter(
        processor=structlog.dev.ConsoleRenderer(colors=False),
        foreign_pre_chain=[
            structlog.stdlib.add_log_level,
            structlog.stdlib.add_logger_name,
            structlog.processors.TimeStamper(fmt="iso", utc=True),
        ],
    )
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(formatter)

    root = logging.getLogger()
    for existing in list(root.handlers):
        root.removeHandler(existing)
    root.addHandler(handler)
    root.setLevel(level)
    return root
