"""Job configuration: line-oriented config files, env overrides, CLI flags.

Config files hold one ``key = value`` per line, ``#`` starts a comment.
Lists are comma-separated.  Nested keys use dots (``rf.n_trees = 100``).
Environment variables override file values and flags override both; the
prefix is ``ADE_EVAL_`` with dots spelled as double underscores
(``ADE_EVAL_RF__N_TREES=100``).
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field, fields
from pathlib import Path

from ..analysis.forest import ForestParams

ENV_PREFIX = "ADE_EVAL_"

PREDICTION_KINDS = ("spans", "generative")
CORPUS_FORMATS = ("jsonl", "standoff")
OUTPUT_FORMATS = ("json", "csv", "both")


class ConfigError(ValueError):
    pass


def parse_config_text(text: str, source: str = "<config>") -> dict[str, str]:
    values: dict[str, str] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{line_no}: expected 'key = value', got {raw!r}")
        key, value = line.split("=", 1)
        key = key.strip().lower()
        if not key:
            raise ConfigError(f"{source}:{line_no}: empty key")
        if key in values:
            raise ConfigError(f"{source}:{line_no}: duplicate key {key!r}")
        values[key] = value.strip()
    return values


def _env_overrides(environ=None) -> dict[str, str]:
    environ = os.environ if environ is None else environ
    values = {}
    for name, value in environ.items():
        if name.startswith(ENV_PREFIX):
            key = name[len(ENV_PREFIX):].lower().replace("__", ".")
            values[key] = value
    return values


def _parse_bool(value: str, key: str) -> bool:
    lowered = value.strip().lower()
    if lowered in ("true", "yes", "1", "on"):
        return True
    if lowered in ("false", "no", "0", "off"):
        return False
    raise ConfigError(f"{key}: expected a boolean, got {value!r}")


def _parse_optional_int(value: str, key: str) -> int | None:
    lowered = value.strip().lower()
    if lowered in ("none", "auto", ""):
        return None
    try:
        return int(lowered)
    except ValueError as exc:
        raise ConfigError(f"{key}: expected an integer or 'none', got {value!r}") from exc


@dataclass
class JobConfig:
    corpus: Path | None = None
    corpus_format: str = "standoff"
    predictions: Path | None = None
    predictions_kind: str = "spans"
    runs: Path | None = None
    base_runs: Path | None = None
    augmented_runs: Path | None = None
    out: Path = Path("out")
    seeds: tuple[int, ...] | None = None
    master_seed: int = 0
    split_ratios: tuple[float, float, float] = (0.7, 0.1, 0.2)
    output_format: str = "both"
    permutation_check: bool = True
    rf: ForestParams = field(default_factory=ForestParams)

    @classmethod
    def from_sources(
        cls,
        config_path: Path | None = None,
        flag_values: dict[str, str] | None = None,
        environ=None,
    ) -> "JobConfig":
        values: dict[str, str] = {}
        if config_path is not None:
            try:
                text = Path(config_path).read_text(encoding="utf-8")
            except OSError as exc:
                raise ConfigError(f"cannot read config {config_path}: {exc}") from exc
            values.update(parse_config_text(text, source=str(config_path)))
        values.update(_env_overrides(environ))
        values.update({k: v for k, v in (flag_values or {}).items() if v is not None})
        return cls._from_values(values)

    @classmethod
    def _from_values(cls, values: dict[str, str]) -> "JobConfig":
        cfg = cls()
        rf_kwargs = {}
        known_rf = {f.name for f in fields(ForestParams)}
        for key, value in values.items():
            if key.startswith("rf."):
                rf_key = key[3:]
                if rf_key not in known_rf:
                    raise ConfigError(f"unknown config key {key!r}")
                if rf_key == "bootstrap":
                    rf_kwargs[rf_key] = _parse_bool(value, key)
                elif rf_key in ("max_depth", "features_per_split"):
                    rf_kwargs[rf_key] = _parse_optional_int(value, key)
                else:
                    rf_kwargs[rf_key] = int(value)
            elif key in ("corpus", "predictions", "runs", "base_runs", "augmented_runs", "out"):
                setattr(cfg, key, Path(value))
            elif key == "corpus_format":
                if value not in CORPUS_FORMATS:
                    raise ConfigError(f"corpus_format must be one of {CORPUS_FORMATS}")
                cfg.corpus_format = value
            elif key == "predictions_kind":
                if value not in PREDICTION_KINDS:
                    raise ConfigError(f"predictions_kind must be one of {PREDICTION_KINDS}")
                cfg.predictions_kind = value
            elif key == "seeds":
                try:
                    cfg.seeds = tuple(int(x) for x in value.split(",") if x.strip())
                except ValueError as exc:
                    raise ConfigError(f"seeds: expected comma-separated ints") from exc
            elif key == "master_seed":
                cfg.master_seed = int(value)
            elif key == "split_ratios":
                parts = [float(x) for x in value.split(",") if x.strip()]
                if len(parts) != 3:
                    raise ConfigError("split_ratios needs exactly three values")
                cfg.split_ratios = (parts[0], parts[1], parts[2])
            elif key == "format":
                if value not in OUTPUT_FORMATS:
                    raise ConfigError(f"format must be one of {OUTPUT_FORMATS}")
                cfg.output_format = value
            elif key == "permutation_check":
                cfg.permutation_check = _parse_bool(value, key)
            else:
                raise ConfigError(f"unknown config key {key!r}")
        if rf_kwargs:
            cfg.rf = ForestParams(**{**_params_as_dict(cfg.rf), **rf_kwargs})
        return cfg

    def require(self, *names: str) -> None:
        """Check the named inputs are configured and point at existing paths."""
        for name in names:
            value = getattr(self, name)
            if value is None:
                raise ConfigError(f"missing required config: {name}")
            if isinstance(value, Path) and not value.exists():
                raise ConfigError(f"{name} path does not exist: {value}")
        if self.seeds is not None and len(set(self.seeds)) != len(self.seeds):
            raise ConfigError("seeds must be unique")


def _params_as_dict(params: ForestParams) -> dict:
    return {f.name: getattr(params, f.name) for f in fields(ForestParams)}
