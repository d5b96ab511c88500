"""
Runtime settings for ptchain, read through envhanced.

Sources, strongest first: the process environment, a .env file in the working
directory, ~/.config/ptchain/ptchain.conf, and the uppercase names in
ptchain.core.constants.
"""

import os
from typing import Any, Callable, Optional, TypeVar

from envhanced import Config

from ptchain.core import constants
from ptchain.core.errors import ValidationError

HOME_CONFIG_PATH = constants.PTCHAIN_CONFIG_FILE
LOCAL_ENV_PATH = ".env"

T = TypeVar("T")


class PtConfig(Config):
    """envhanced Config over the ptchain files, backed by the constants module."""

    def __init__(self, **kwargs):
        super().__init__(
            defaults=HOME_CONFIG_PATH,  # user-wide defaults
            environ=LOCAL_ENV_PATH,  # per-directory overrides
            **kwargs,
        )

        for name, value in vars(constants).items():
            if name.isupper() and getattr(self, name, None) is None:
                setattr(self, name, value)


config = PtConfig()


def get_setting(
    name: str, default: Optional[T] = None, cast: Optional[Callable[[Any], T]] = None
) -> Any:
    """
    Look up a runtime setting.

    The process environment wins over the config files, which win over the
    default given here.

    Args:
        name: Setting name, e.g. "PTCHAIN_WORKERS"
        default: Value used when the setting is defined nowhere
        cast: Optional converter applied to the raw value

    Returns:
        The (converted) setting value

    Raises:
        ValidationError: If the raw value cannot be converted
    """
    raw = os.environ.get(name)
    if raw is None:
        raw = getattr(config, name, None)
    if raw is None or raw == "":
        return default
    if cast is None:
        return raw
    try:
        return cast(raw)
    except (TypeError, ValueError) as e:
        raise ValidationError(f"Invalid value for {name}: {raw!r} ({e})") from e


__all__ = ["config", "get_setting", "PtConfig", "HOME_CONFIG_PATH"]
