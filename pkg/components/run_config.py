#!/usr/bin/env python3
"""
Run Configuration Component
Environment-driven limits and the command-line run configuration.

Values are read from the process environment after loading an optional
.env file, so limits can be raised without touching the code.
"""

import os
import sys
import logging
from dataclasses import dataclass, asdict
from fractions import Fraction
from typing import Dict, Optional

from dotenv import load_dotenv

from components.errors import InvalidInputError

load_dotenv()

logger = logging.getLogger(__name__)

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def _env_int(name: str, default: int) -> int:
    """Read a positive integer from the environment, falling back to default."""
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
        if value < 1:
            raise ValueError(raw)
        return value
    except ValueError:
        logger.warning(f"Ignoring invalid {name}={raw!r}, using {default}")
        return default


BRUTE_FORCE_MAX_N = _env_int("CPK_BRUTE_MAX_N", 11)
CLUSTER_BRUTE_FORCE_MAX_N = _env_int("CPK_CLUSTER_BRUTE_MAX_N", 10)
LINEXT_MAX_ELEMENTS = _env_int("CPK_LINEXT_MAX_ELEMENTS", 26)
CACHE_DIR = os.getenv("CPK_CACHE_DIR") or None


def default_threads() -> int:
    return _env_int("CPK_THREADS", 1)


def parse_tolerance(text: str) -> Fraction:
    """Parse '1e-6', '0.001' or '1/1000' into an exact positive rational."""
    try:
        value = Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as e:
        raise InvalidInputError(f"Invalid tolerance {text!r}: {e}")
    if value <= 0:
        raise InvalidInputError(f"Tolerance must be positive, got {text!r}")
    return value


@dataclass
class RunConfig:
    """Configuration for one command-line invocation."""
    max_n: int = 12
    cluster_depth: int = 6
    tolerance: str = "1e-6"
    threads: int = 1
    format: str = "json"
    brute_guard: int = 10

    def __post_init__(self):
        if self.format not in ("json", "csv"):
            raise InvalidInputError(f"Unknown output format {self.format!r}")
        if self.threads < 1:
            raise InvalidInputError("threads must be at least 1")
        if self.max_n < 0:
            raise InvalidInputError("max_n must be non-negative")
        if self.cluster_depth < 1:
            raise InvalidInputError("cluster_depth must be at least 1")
        parse_tolerance(self.tolerance)

    @property
    def tolerance_value(self) -> Fraction:
        return parse_tolerance(self.tolerance)

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        """Build from an argparse namespace, filling gaps from the environment."""
        def given(name, default):
            value = getattr(args, name, None)
            return default if value is None else value

        return cls(
            max_n=given('max_n', cls.max_n),
            cluster_depth=given('k', cls.cluster_depth),
            tolerance=given('tol', cls.tolerance),
            threads=given('threads', default_threads()),
            format=given('format', cls.format),
            brute_guard=given('brute_guard', cls.brute_guard),
        )

    def to_dict(self) -> Dict:
        return asdict(self)


def setup_logging(level: Optional[str] = None, log_file: Optional[str] = None):
    """Configure root logging: stderr always, plus a file when configured."""
    level_name = (level or os.getenv("CPK_LOG_LEVEL") or "WARNING").upper()
    log_file = log_file or os.getenv("CPK_LOG_FILE")

    handlers = [logging.StreamHandler(sys.stderr)]
    if log_file:
        handlers.append(logging.FileHandler(log_file, encoding='utf-8'))

    logging.basicConfig(
        level=getattr(logging, level_name, logging.WARNING),
        format=LOG_FORMAT,
        handlers=handlers,
        force=True,
    )
