"""Configuration loading utilities."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Any, Callable, Dict, Optional

from .errors import ConfigError
from .models import OutputFormat

CONFIG_DIR = Path(os.environ.get("SHUFFLESQ_CONFIG_DIR", Path.home() / ".config" / "shufflesq"))
CONFIG_FILE = CONFIG_DIR / "config.json"


@dataclass(slots=True)
class SearchBudgets:
    """Limits for every exact procedure."""

    node_budget: int = 2_000_000
    memo_limit: int = 500_000
    oracle_max_length: int = 40
    oracle_twins_max_length: int = 20
    reverse_max_length: int = 26
    census_max_length: int = 20
    max_cuts: int = 4
    subset_sum_max_terms: int = 40


@dataclass(slots=True)
class AppConfig:
    """Top-level application configuration."""

    budgets: SearchBudgets = field(default_factory=SearchBudgets)
    jobs: int = 1
    seed: int = 20240601
    output_format: str = OutputFormat.DENSE.value
    log_level: str = "WARNING"

    def __post_init__(self) -> None:
        for item in fields(self.budgets):
            value = getattr(self.budgets, item.name)
            if not isinstance(value, int) or value < 1:
                raise ConfigError(f"budget {item.name} must be a positive integer, got {value!r}")
        if self.jobs < 1:
            raise ConfigError(f"jobs must be positive, got {self.jobs}")
        try:
            OutputFormat(self.output_format)
        except ValueError:
            choices = ", ".join(member.value for member in OutputFormat)
            raise ConfigError(f"unknown output format {self.output_format!r}; expected one of {choices}") from None

    @classmethod
    def load(cls, override: Optional[Dict[str, Any]] = None) -> "AppConfig":
        """Load config from disk/.env/environment, applying overrides last."""

        _inject_dotenv()

        data: Dict[str, Any] = {}
        if CONFIG_FILE.exists():
            with CONFIG_FILE.open("r", encoding="utf-8") as handle:
                data = json.load(handle)
        data.update(_settings_from_environment())
        budget_data = {**data.pop("budgets", {}), **_budgets_from_environment()}
        if override:
            override = dict(override)
            budget_data.update(override.pop("budgets", {}))
            data.update(override)

        defaults = _asdict(cls())
        known_budgets = {item.name for item in fields(SearchBudgets)}
        unknown = set(budget_data) - known_budgets
        if unknown:
            raise ConfigError(f"unknown budget setting(s): {', '.join(sorted(unknown))}")
        return cls(
            budgets=SearchBudgets(**budget_data),
            jobs=data.get("jobs", defaults["jobs"]),
            seed=data.get("seed", defaults["seed"]),
            output_format=data.get("output_format", defaults["output_format"]),
            log_level=data.get("log_level", defaults["log_level"]),
        )

    def save(self) -> None:
        """Persist configuration to disk."""

        CONFIG_DIR.mkdir(parents=True, exist_ok=True)
        payload = {
            "budgets": _asdict(self.budgets),
            "jobs": self.jobs,
            "seed": self.seed,
            "output_format": self.output_format,
            "log_level": self.log_level,
        }
        with CONFIG_FILE.open("w", encoding="utf-8") as handle:
            json.dump(payload, handle, indent=2)


def _dotenv_path() -> Path:
    return Path(os.environ.get("SHUFFLESQ_ENV_FILE", Path.cwd() / ".env"))


def _asdict(instance: Any) -> Dict[str, Any]:
    return {item.name: getattr(instance, item.name) for item in fields(instance)}


def _read_env(name: str, convert: Callable[[str], Any]) -> Optional[Any]:
    raw = os.environ.get(name)
    if raw is None or not raw.strip():
        return None
    try:
        return convert(raw.strip())
    except ValueError:
        raise ConfigError(f"environment variable {name} has invalid value {raw!r}") from None


def _settings_from_environment() -> Dict[str, Any]:
    settings = {
        "jobs": _read_env("SHUFFLESQ_JOBS", int),
        "seed": _read_env("SHUFFLESQ_SEED", int),
        "output_format": _read_env("SHUFFLESQ_FORMAT", str),
        "log_level": _read_env("SHUFFLESQ_LOG_LEVEL", str.upper),
    }
    return {key: value for key, value in settings.items() if value is not None}


def _budgets_from_environment() -> Dict[str, int]:
    node_budget = _read_env("SHUFFLESQ_NODE_BUDGET", int)
    return {"node_budget": node_budget} if node_budget is not None else {}


def _inject_dotenv() -> None:
    dotenv_file = _dotenv_path()
    if not dotenv_file.exists():
        return
    with dotenv_file.open("r", encoding="utf-8") as handle:
        for line in handle:
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            if "=" not in stripped:
                continue
            key, _, raw_value = stripped.partition("=")
            key = key.strip()
            value = raw_value.strip()
            if (value.startswith("\"") and value.endswith("\"")) or (value.startswith("'") and value.endswith("'")):
                value = value[1:-1]
            os.environ.setdefault(key, value.strip())
