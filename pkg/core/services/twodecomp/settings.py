import json
from pathlib import Path
from typing import Any, Callable, Dict, Tuple, Union, cast

import appdirs
from loguru import logger
from pydantic import BaseSettings, conint

from generators.enumeration import DEFAULT_MAX_VERTICES
from generators.parameters import DEFAULT_MAX_ATTEMPTS
from graph_core.cycles import DEFAULT_CYCLE_CAP
from oracle.brute_force import DEFAULT_MAX_EDGES, DEFAULT_NODE_BUDGET


class Settings:
    """Read-only view of ``settings.json`` in the user configuration directory."""

    app_name = "twodecomp"
    settings_path = Path(appdirs.user_config_dir(app_name))
    settings_file = Path.joinpath(settings_path, "settings.json")
    supported_version = 0

    def __init__(self) -> None:
        self.root: Dict[str, Union[int, Dict[str, Any]]] = {"version": self.supported_version, "content": {}}

    @property
    def content(self) -> Dict[str, Any]:
        return cast(Dict[str, Any], self.root["content"])

    def settings_exist(self) -> bool:
        return Path.is_file(self.settings_file)

    def load(self) -> bool:
        """Load settings from file

        Returns:
            bool: False if the file is missing, unreadable or of another version
        """
        if not self.settings_exist():
            logger.debug(f"No user settings on {self.settings_file}.")
            return False

        data = None
        try:
            with open(self.settings_file, encoding="utf-8") as file:
                data = json.load(file)
                if data["version"] != self.supported_version:
                    logger.error(f"Settings version {data['version']} is not supported, ignoring {self.settings_file}.")
                    return False

                self.root = data
        except Exception as error:
            logger.error(f"Failed to fetch data from file ({self.settings_file}): {error}")
            logger.debug(data)
            return False

        return True


def _settings_file_budgets(_: BaseSettings) -> Dict[str, Any]:
    settings = Settings()
    if not settings.load():
        return {}
    return cast(Dict[str, Any], settings.content.get("budgets", {}))


SettingsSource = Callable[[BaseSettings], Dict[str, Any]]


class Budgets(BaseSettings):
    """Limits handed to the library calls.

    Keyword arguments win over ``TWODECOMP_*`` environment variables, which
    win over the "budgets" object of the settings file.
    """

    cycle_cap: conint(ge=1) = DEFAULT_CYCLE_CAP  # type: ignore
    oracle_max_edges: conint(ge=0) = DEFAULT_MAX_EDGES  # type: ignore
    oracle_node_budget: conint(ge=1) = DEFAULT_NODE_BUDGET  # type: ignore
    enumeration_max_vertices: conint(ge=1) = DEFAULT_MAX_VERTICES  # type: ignore
    generator_max_attempts: conint(ge=1) = DEFAULT_MAX_ATTEMPTS  # type: ignore
    assert_subproblems: bool = True

    class Config:
        env_prefix = "TWODECOMP_"

        @classmethod
        def customise_sources(
            cls, init_settings: SettingsSource, env_settings: SettingsSource, file_secret_settings: SettingsSource
        ) -> Tuple[SettingsSource, ...]:
            return init_settings, env_settings, _settings_file_budgets
