"""
环境配置管理模块

用于管理状态求和上限、目录路径和日志级别等环境配置。
所有变量都使用 TANGLETWIST_ 前缀，例如 TANGLETWIST_MAX_N。
"""

from pathlib import Path
from typing import Optional

from dotenv import load_dotenv
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

DEFAULT_MAX_N = 24


class TangleTwistSettings(BaseSettings):
    """环境配置类"""

    model_config = SettingsConfigDict(env_prefix="TANGLETWIST_", extra="ignore")

    max_n: int = Field(default=DEFAULT_MAX_N, ge=0)  # 状态求和允许的最大交叉数
    catalog_dir: Optional[Path] = None  # 为空时使用仓库自带的 test_data/catalog
    log_level: str = "INFO"


def get_env_config() -> TangleTwistSettings:
    """
    获取环境配置

    每次调用都会重新读取环境变量，测试中可以直接修改环境。

    Returns:
        TangleTwistSettings实例
    """
    _load_env_file()
    return TangleTwistSettings()


def _load_env_file():
    """加载.env文件"""
    # 查找.env文件，从当前模块向上搜索
    current_path = Path(__file__).parent
    for _ in range(5):  # 最多向上搜索5层目录
        env_file = current_path / '.env'
        if env_file.exists():
            load_dotenv(env_file, override=False)
            break
        current_path = current_path.parent
