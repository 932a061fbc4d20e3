"""
S-graph Workbench - Configuration Management
Handles the per-user configuration file and workbench defaults.
"""

import json
import os
from pathlib import Path
from typing import Optional, Any


class Config:
    """Global configuration manager for the workbench."""

    # Application paths
    APP_NAME = "SGraphWorkbench"
    HOME_ENV = "SGX_HOME"

    LANGUAGES = ("en", "zh")
    PROFILES = ("generic", "ties", "zeros")

    def __init__(self):
        self._config_data: dict = {}
        self._config_dir = self._get_config_dir()
        self._config_file = self._config_dir / "config.json"
        self._ensure_directories()
        self._load_config()

    def _get_config_dir(self) -> Path:
        """Get the application configuration directory."""
        home = os.environ.get(self.HOME_ENV)
        if home:
            return Path(home)
        appdata = os.environ.get("APPDATA")
        if appdata:
            return Path(appdata) / self.APP_NAME
        # Fallback for non-Windows systems
        return Path.home() / f".{self.APP_NAME.lower()}"

    def _ensure_directories(self) -> None:
        """Ensure all necessary directories exist."""
        self._config_dir.mkdir(parents=True, exist_ok=True)

    def _load_config(self) -> None:
        """Load configuration from file."""
        if self._config_file.exists():
            try:
                with open(self._config_file, "r", encoding="utf-8") as f:
                    self._config_data = json.load(f)
            except (json.JSONDecodeError, IOError):
                self._config_data = {}
        else:
            self._config_data = {}

    def _save_config(self) -> None:
        """Save configuration to file."""
        with open(self._config_file, "w", encoding="utf-8") as f:
            json.dump(self._config_data, f, indent=2, ensure_ascii=False)

    def _positive_int(self, key: str, default: int) -> int:
        value = self._config_data.get(key, default)
        if isinstance(value, bool) or not isinstance(value, int) or value < 1:
            return default
        return value

    @property
    def config_dir(self) -> Path:
        """Get the configuration directory path."""
        return self._config_dir

    @property
    def crash_dump_path(self) -> Path:
        """Where the global exception hook writes its dump."""
        return self._config_dir / "crash_dump.txt"

    @property
    def language(self) -> str:
        """Get the current language ('en' or 'zh')."""
        return self._config_data.get("language", "en")

    @language.setter
    def language(self, value: str) -> None:
        """Set the current language."""
        if value in self.LANGUAGES:
            self._config_data["language"] = value
            self._save_config()

    # Sampling defaults
    @property
    def default_seed(self) -> int:
        value = self._config_data.get("default_seed", 42)
        return value if isinstance(value, int) and not isinstance(value, bool) else 42

    @default_seed.setter
    def default_seed(self, value: int) -> None:
        self._config_data["default_seed"] = int(value)
        self._save_config()

    @property
    def default_trials(self) -> int:
        return self._positive_int("default_trials", 3)

    @default_trials.setter
    def default_trials(self, value: int) -> None:
        self._config_data["default_trials"] = int(value)
        self._save_config()

    @property
    def default_profile(self) -> str:
        value = self._config_data.get("default_profile", "generic")
        return value if value in self.PROFILES else "generic"

    @default_profile.setter
    def default_profile(self, value: str) -> None:
        if value in self.PROFILES:
            self._config_data["default_profile"] = value
            self._save_config()

    # Reconstruction bounds
    @property
    def step_bound_factor(self) -> int:
        """Deconstruction step bound is factor * n^2 * (n+1)."""
        return self._positive_int("step_bound_factor", 4)

    @step_bound_factor.setter
    def step_bound_factor(self, value: int) -> None:
        self._config_data["step_bound_factor"] = int(value)
        self._save_config()

    def rebuild_depth(self, n: int) -> int:
        """Augmentation depth bound for rebuild; defaults to n + 1."""
        value = self._config_data.get("rebuild_depth")
        if isinstance(value, int) and not isinstance(value, bool) and value >= 0:
            return value
        return n + 1

    @property
    def rebuild_budget(self) -> int:
        return self._positive_int("rebuild_budget", 20000)

    @rebuild_budget.setter
    def rebuild_budget(self, value: int) -> None:
        self._config_data["rebuild_budget"] = int(value)
        self._save_config()

    # Sweep execution
    @property
    def workers(self) -> int:
        return self._positive_int("workers", 1)

    @workers.setter
    def workers(self, value: int) -> None:
        self._config_data["workers"] = int(value)
        self._save_config()

    @property
    def max_n(self) -> int:
        """Resource guard for whole-order enumerations."""
        return self._positive_int("max_n", 6)

    @max_n.setter
    def max_n(self, value: int) -> None:
        self._config_data["max_n"] = int(value)
        self._save_config()

    def get(self, key: str, default: Any = None) -> Any:
        """Get a configuration value."""
        return self._config_data.get(key, default)

    def set(self, key: str, value: Any) -> None:
        """Set a configuration value."""
        self._config_data[key] = value
        self._save_config()


# Global config instance
_config: Optional[Config] = None


def get_config() -> Config:
    """Get the global configuration instance."""
    global _config
    if _config is None:
        _config = Config()
    return _config


def reset_config() -> None:
    """Drop the cached instance so the next get_config() re-reads the environment."""
    global _config
    _config = None
