"""tangletwist 配置包"""

from .env_config import TangleTwistSettings, get_env_config
from .run_config import CommandName, EmitFormat, RunConfig, parse_range

__all__ = [
    "CommandName",
    "EmitFormat",
    "RunConfig",
    "TangleTwistSettings",
    "get_env_config",
    "parse_range",
]
