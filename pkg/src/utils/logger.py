"""
S-graph Workbench - Logging System
Process-wide logger. Nothing is written unless a caller attaches stderr
(``sgx --verbose``) or registers a callback (progress printers, tests).
"""

import logging
import sys
import threading
from datetime import datetime
from typing import Callable, List, Optional

from src.core.i18n import _

LogCallback = Callable[[str, str, str], None]

STDERR_FORMAT = "[%(asctime)s] [%(levelname)s] %(message)s"


class CallbackHandler(logging.Handler):
    """Forwards each record as (HH:MM:SS, LEVEL, message) to registered callbacks."""

    def __init__(self):
        super().__init__(logging.DEBUG)
        self.callbacks: List[LogCallback] = []

    def emit(self, record: logging.LogRecord) -> None:
        stamp = datetime.fromtimestamp(record.created).strftime("%H:%M:%S")
        message = record.getMessage()
        for callback in list(self.callbacks):
            try:
                callback(stamp, record.levelname, message)
            except Exception:
                # a broken listener must not abort a sweep
                pass


class WorkbenchLogger:
    """Singleton wrapper around the ``SGraphWorkbench`` logger."""

    _instance: Optional["WorkbenchLogger"] = None
    _lock = threading.Lock()

    def __new__(cls):
        if cls._instance is None:
            with cls._lock:
                if cls._instance is None:
                    instance = super().__new__(cls)
                    instance._setup()
                    cls._instance = instance
        return cls._instance

    def _setup(self) -> None:
        self._logger = logging.getLogger("SGraphWorkbench")
        self._logger.setLevel(logging.DEBUG)
        self._logger.propagate = False
        self._callbacks = CallbackHandler()
        self._logger.addHandler(self._callbacks)
        self._stream_handler: Optional[logging.Handler] = None

    # -- sinks --

    def enable_stderr(self, level: int = logging.INFO) -> None:
        """Attach one stderr handler; repeated calls only change its level."""
        if self._stream_handler is None:
            handler = logging.StreamHandler(sys.stderr)
            handler.setFormatter(logging.Formatter(STDERR_FORMAT, "%H:%M:%S"))
            self._logger.addHandler(handler)
            self._stream_handler = handler
        self._stream_handler.setLevel(level)

    def disable_stderr(self) -> None:
        if self._stream_handler is not None:
            self._logger.removeHandler(self._stream_handler)
            self._stream_handler = None

    def add_callback(self, callback: LogCallback) -> None:
        self._callbacks.callbacks.append(callback)

    def remove_callback(self, callback: LogCallback) -> None:
        if callback in self._callbacks.callbacks:
            self._callbacks.callbacks.remove(callback)

    # -- levels --

    def debug(self, message: str) -> None:
        self._logger.debug(message)

    def info(self, message: str) -> None:
        self._logger.info(message)

    def warning(self, message: str) -> None:
        self._logger.warning(message)

    def error(self, message: str) -> None:
        self._logger.error(message)

    # -- structured records --

    def operation(self, operation: str, target: str, details: str = "", status: str = "") -> None:
        """``Status: [Operation] target - details``"""
        message = f"[{operation}] {target}"
        if details:
            message += f" - {details}"
        if status:
            message = f"{status}: {message}"
        self.info(message)

    def operation_start(self, operation: str, target: str, details: str = "") -> None:
        self.operation(operation, target, details, status=_("status_start"))

    def operation_end(self, operation: str, target: str, details: str = "", success: bool = True) -> None:
        status = _("status_finish") if success else _("status_failed")
        self.operation(operation, target, details, status=status)

    def counterexample(self, check: str, detail: str) -> None:
        self.warning(_("counterexample_found", check=check, detail=detail))


def get_logger() -> WorkbenchLogger:
    """Get the global logger instance."""
    return WorkbenchLogger()
