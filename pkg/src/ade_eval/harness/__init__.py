from .config import ConfigError, JobConfig
from .cli import main

__all__ = ["ConfigError", "JobConfig", "main"]
