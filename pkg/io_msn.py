import logging
import os

from dotenv import load_dotenv

from errors import ConfigurationError

THREADS_ENV = "MLSN_THREADS"
LOG_LEVEL_ENV = "MLSN_LOG_LEVEL"


def get_env(env_name, default=None):
    load_dotenv()
    return os.environ.get(env_name, default)


def get_thread_count():
    """Worker cap from MLSN_THREADS; unset or 0 means every available CPU."""
    raw = get_env(THREADS_ENV, "").strip()
    if not raw:
        return os.cpu_count() or 1
    try:
        threads = int(raw)
    except ValueError:
        raise ConfigurationError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None
    if threads < 0:
        raise ConfigurationError(f"{THREADS_ENV} must not be negative, got {threads}")
    return threads or os.cpu_count() or 1


def get_log_level(default="WARNING"):
    name = get_env(LOG_LEVEL_ENV, default).strip().upper()
    level = logging.getLevelName(name)
    if not isinstance(level, int):
        raise ConfigurationError(f"{LOG_LEVEL_ENV} is not a logging level: {name!r}")
    return level
