import logging
import sys
from typing import Set

from colorama import Fore
from tqdm.auto import tqdm

_LEVEL_COLOR = {
    logging.DEBUG: Fore.YELLOW,
    logging.WARNING: Fore.RED,
    logging.ERROR: Fore.RED,
    logging.CRITICAL: Fore.RED,
}


class TqdmLoggingHandler(logging.Handler):
    """Write records through tqdm so sweeps' progress bars stay intact."""

    def __init__(self, level=logging.INFO):
        super().__init__(level)

    def emit(self, record):
        try:
            tqdm.write(self.format(record), file=sys.stdout)
        except (KeyboardInterrupt, SystemExit):
            raise
        except Exception:
            self.handleError(record)


class ColorFormatter(logging.Formatter):
    def format(self, record):
        color = _LEVEL_COLOR.get(record.levelno)
        if color is None:
            return super().format(record)
        format_orig = self._style._fmt
        self._style._fmt = color + format_orig + Fore.RESET
        try:
            return super().format(record)
        finally:
            self._style._fmt = format_orig


def get_logger_func(name):
    log = logging.getLogger(name)

    def _warn(*args, stacklevel: int = 2, **kwargs):
        kwargs["stacklevel"] = stacklevel
        log.warning(*args, **kwargs)

    def _info(*args, stacklevel: int = 2, **kwargs):
        kwargs["stacklevel"] = stacklevel
        log.info(*args, **kwargs)

    def _debug(*args, stacklevel: int = 2, **kwargs):
        kwargs["stacklevel"] = stacklevel
        log.debug(*args, **kwargs)

    return _warn, _info, _debug


def get_warn_once(name):
    """A warning function that reports each distinct key once per process.

    Sweeps hit the same breakdown regime on many grid points; one record per regime is enough."""
    log = logging.getLogger(name)
    seen: Set = set()

    def _warn_once(key, msg, stacklevel: int = 2):
        if key in seen:
            return
        seen.add(key)
        log.warning(msg, stacklevel=stacklevel)

    return _warn_once
