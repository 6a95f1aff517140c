import json
import logging
from datetime import datetime, timezone
from fractions import Fraction
from typing import Any, Dict

import numpy as np

from nonlocality.core.config import CONFIG


def _encode(value: Any) -> Any:
    """Exact values stay readable as "p/q"; numpy scalars become plain JSON numbers."""
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.ndarray):
        return value.tolist()
    return str(value)


class JsonFormatter(logging.Formatter):
    def format(self, record: logging.LogRecord) -> str:
        payload: Dict[str, Any] = {
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
            "function": record.funcName,
        }

        # Fields passed via logger.info(..., extra={...}): bound, strategy, witness, pivots...
        reserved = {
            "name", "msg", "args", "levelname", "levelno", "pathname", "filename",
            "module", "exc_info", "exc_text", "stack_info", "lineno", "funcName",
            "created", "msecs", "relativeCreated", "thread", "threadName",
            "processName", "process", "taskName",
        }
        for k, v in record.__dict__.items():
            if k not in reserved and not k.startswith("_"):
                payload[k] = v

        if record.exc_info:
            payload["exception"] = self.formatException(record.exc_info)

        return json.dumps(payload, ensure_ascii=False, default=_encode)


def _configured_level() -> int:
    level = str((CONFIG.get("logging", {}) or {}).get("level", "WARNING")).upper()
    return logging.getLevelName(level) if isinstance(logging.getLevelName(level), int) else logging.WARNING


def get_logger(name: str) -> logging.Logger:
    logger = logging.getLogger(name)
    logger.setLevel(_configured_level())
    logger.propagate = False

    handler = logging.StreamHandler()
    handler.setFormatter(JsonFormatter())

    logger.handlers = [handler]
    return logger
