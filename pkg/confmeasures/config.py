"""
Settings and logging setup for confmeasures.

Precedence: command-line flags, then environment (a `.env` file is read
through python-dotenv), then the YAML settings file, then the defaults below.
"""
from dataclasses import asdict, dataclass, fields
from typing import Dict, Optional
import logging
import os

from dotenv import find_dotenv, load_dotenv
import yaml

from .core.errors import ParameterError
from .core.params import coerce_numeric_fields

ENV_LOG_LEVEL = "CONFMEASURES_LOG_LEVEL"
ENV_CONFIG = "CONFMEASURES_CONFIG"

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


@dataclass
class Settings:
    log_level: str = "INFO"
    default_seed: int = 42
    tie_tolerance: float = 1e-12
    oracle_tolerance: float = 1e-10
    pair_budget: int = 10 ** 8
    bootstrap_resamples: int = 10_000
    significant_digits: int = 7
    jobs: int = 1

    def __post_init__(self):
        self.log_level = str(self.log_level).upper()
        if self.log_level not in _LEVELS:
            raise ParameterError(f"unknown log level {self.log_level!r}")
        coerce_numeric_fields(self)
        if self.default_seed < 0:
            raise ParameterError(f"default_seed must be nonnegative, got {self.default_seed}")
        if self.tie_tolerance < 0 or self.oracle_tolerance < 0:
            raise ParameterError("tolerances must be >= 0")
        if self.pair_budget < 1:
            raise ParameterError(f"pair_budget must be >= 1, got {self.pair_budget}")
        if self.significant_digits < 1:
            raise ParameterError(f"significant_digits must be >= 1, got {self.significant_digits}")
        if self.jobs < 1:
            raise ParameterError(f"jobs must be >= 1, got {self.jobs}")

    def to_dict(self) -> Dict:
        return asdict(self)


def load_settings(config_path: Optional[str] = None) -> Settings:
    """
    Settings from `config_path`, else from $CONFMEASURES_CONFIG, else defaults.
    $CONFMEASURES_LOG_LEVEL overrides the file's log level.
    """
    load_dotenv(find_dotenv(usecwd=True))
    config_path = config_path or os.environ.get(ENV_CONFIG)
    data: Dict = {}
    if config_path:
        with open(config_path, 'r') as f:
            data = yaml.safe_load(f) or {}
        if not isinstance(data, dict):
            raise ParameterError(f"settings file {config_path} must hold a mapping")
        known = {f.name for f in fields(Settings)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ParameterError(f"unknown settings in {config_path}: {', '.join(unknown)}")

    env_level = os.environ.get(ENV_LOG_LEVEL)
    if env_level:
        data["log_level"] = env_level
    return Settings(**data)


def setup_logging(level: str = "INFO") -> logging.Logger:
    """Configure the root handler once; records go to stderr."""
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.INFO),
        format=LOG_FORMAT,
        force=True,
    )
    return logging.getLogger("confmeasures")
