"""
Runtime configuration classes.
Supports development, production, and testing environments.
"""

import logging
import os

import psutil


def _available_cores():
    """Number of cores this process may run on."""
    try:
        return max(1, len(psutil.Process().cpu_affinity()))
    except (AttributeError, NotImplementedError, psutil.Error):
        # cpu_affinity is missing on macOS
        return max(1, psutil.cpu_count(logical=True) or 1)


def _int_env(name, default):
    value = os.getenv(name)
    if value is None or value == '':
        return default
    try:
        return int(value)
    except ValueError:
        return value


def _float_env(name, default):
    value = os.getenv(name)
    if value is None or value == '':
        return default
    try:
        return float(value)
    except ValueError:
        return value


class Config:
    """Base configuration with common settings."""

    ENV = os.getenv('WAVELIQ_ENV', 'production')

    # Logging
    LOG_LEVEL = os.getenv('WAVELIQ_LOG', 'WARNING').upper()
    LOG_DIR = os.getenv('WAVELIQ_LOG_DIR') or None

    # Workers
    JOBS = _int_env('WAVELIQ_JOBS', None)

    # Reference-feature cache capacity (0 disables)
    CACHE_ENTRIES = _int_env('WAVELIQ_CACHE_ENTRIES', 16)

    # Scoring defaults
    MODE = os.getenv('WAVELIQ_MODE', 'dwt+ch')
    LEVELS = _int_env('WAVELIQ_LEVELS', 2)
    BINS = _int_env('WAVELIQ_BINS', 64)
    METRIC = os.getenv('WAVELIQ_METRIC', 'l2')
    BETA = _float_env('WAVELIQ_BETA', 1.0)

    VALID_MODES = ('dwt', 'ch', 'dwt+ch')
    VALID_METRICS = ('l1', 'l2')

    @classmethod
    def validate(cls):
        """Validate scoring and runtime settings."""
        problems = []
        if not isinstance(cls.LEVELS, int) or not 1 <= cls.LEVELS <= 4:
            problems.append(f"WAVELIQ_LEVELS={cls.LEVELS!r} (expected 1..4)")
        if not isinstance(cls.BINS, int) or cls.BINS < 2:
            problems.append(f"WAVELIQ_BINS={cls.BINS!r} (expected >= 2)")
        if not isinstance(cls.BETA, float) or not 0.0 <= cls.BETA <= 1.0:
            problems.append(f"WAVELIQ_BETA={cls.BETA!r} (expected 0..1)")
        if cls.MODE not in cls.VALID_MODES:
            problems.append(f"WAVELIQ_MODE={cls.MODE!r}")
        if cls.METRIC not in cls.VALID_METRICS:
            problems.append(f"WAVELIQ_METRIC={cls.METRIC!r}")
        if cls.JOBS is not None and (not isinstance(cls.JOBS, int) or cls.JOBS < 1):
            problems.append(f"WAVELIQ_JOBS={cls.JOBS!r} (expected a positive integer)")
        if not isinstance(cls.CACHE_ENTRIES, int) or cls.CACHE_ENTRIES < 0:
            problems.append(f"WAVELIQ_CACHE_ENTRIES={cls.CACHE_ENTRIES!r}")
        if not isinstance(logging.getLevelName(cls.LOG_LEVEL), int):
            problems.append(f"WAVELIQ_LOG={cls.LOG_LEVEL!r}")
        if problems:
            raise ValueError(f"Invalid configuration: {', '.join(problems)}")

    @classmethod
    def default_jobs(cls):
        """Worker count used when no --jobs flag is given."""
        return cls.JOBS or _available_cores()


class DevelopmentConfig(Config):
    """Development environment configuration."""

    LOG_LEVEL = os.getenv('WAVELIQ_LOG', 'DEBUG').upper()


class ProductionConfig(Config):
    """Production environment configuration."""

    LOG_LEVEL = os.getenv('WAVELIQ_LOG', 'WARNING').upper()


class TestConfig(Config):
    """Testing environment configuration."""

    LOG_LEVEL = 'WARNING'
    LOG_DIR = None

    # Keep tests single-process and deterministic by default
    JOBS = 1
    CACHE_ENTRIES = 8


# Configuration mapping
config = {
    'development': DevelopmentConfig,
    'production': ProductionConfig,
    'testing': TestConfig,
    'default': ProductionConfig
}


def get_config(env=None):
    """Get configuration class for environment."""
    if env is None:
        env = os.getenv('WAVELIQ_ENV', 'production')

    config_class = config.get(env, config['default'])
    config_class.validate()
    return config_class
