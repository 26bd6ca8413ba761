import logging
import sys
import time
from contextlib import contextmanager
from typing import Iterator

import orjson
import structlog

# region General logging


def _orjson_dumps(event: dict, **kwargs) -> str:
    return orjson.dumps(event, default=str).decode()


def configure_logging(level: int = logging.WARNING, json_output: bool = False) -> None:
    """Configure structlog once for the process. Everything goes to stderr; stdout carries results."""
    if json_output:
        renderer = structlog.processors.JSONRenderer(serializer=_orjson_dumps)
    else:
        renderer = structlog.dev.ConsoleRenderer()
    structlog.configure(
        processors=[
            structlog.processors.add_log_level,
            structlog.processors.TimeStamper(fmt="iso"),
            renderer,
        ],
        wrapper_class=structlog.make_filtering_bound_logger(level),
        logger_factory=structlog.PrintLoggerFactory(file=sys.stderr),
        cache_logger_on_first_use=False,
    )


def verbosity_level(verbose: int) -> int:
    return {0: logging.WARNING, 1: logging.INFO}.get(verbose, logging.DEBUG)


# endregion


# region Phase timing


@contextmanager
def log_phase(logger, event: str, level: str = "info", **kw) -> Iterator[dict]:
    """Log ``event`` with ``elapsed_ms`` when the block exits.

    The yielded dict is merged into the final log line, so the block can attach its results.
    """
    extra: dict = {}
    start = time.monotonic()
    try:
        yield extra
    except Exception as e:
        elapsed = (time.monotonic() - start) * 1000
        logger.error(f"{event}.error", elapsed_ms=round(elapsed, 3), error=str(e), **kw)
        raise
    elapsed = (time.monotonic() - start) * 1000
    getattr(logger, level)(event, elapsed_ms=round(elapsed, 3), **kw, **extra)


# endregion
