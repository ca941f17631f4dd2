"""
单次命令行运行的配置

命令行参数先解析成 RunConfig，校验通过后才交给命令执行。
"""

from enum import Enum
from typing import List, Optional, Tuple

from pydantic import BaseModel, Field, field_validator, model_validator

SEED_MIN = -(1 << 63)
SEED_MAX = (1 << 64) - 1


class CommandName(str, Enum):
    CHECK = "check"
    INVARIANTS = "invariants"
    TWIST = "twist"
    FAMILY = "family"
    VERIFY = "verify"
    CATALOG = "catalog"


class EmitFormat(str, Enum):
    TEXT = "text"
    JSON = "json"


class RunConfig(BaseModel):
    """
    命令行运行配置

    支持：
    - check / invariants：一个或多个输入（PD 文件或 catalog:<名称>）
    - twist：一个输入、--crossing 与 --block
    - family：一个输入、--crossing、--pattern 与 --range
    - verify：目标 det-lemma | bracket-prop | preservation
    - catalog：无参数
    """

    command: CommandName
    inputs: List[str] = Field(default_factory=list)
    target: Optional[str] = None
    crossing: Optional[int] = None
    block: Optional[str] = None
    pattern: Optional[str] = None
    range: Optional[str] = None
    seed: int = Field(default=0, ge=SEED_MIN, le=SEED_MAX)
    trials: int = Field(default=100, ge=1)
    max_crossings: int = Field(default=6, ge=1)
    emit: EmitFormat = EmitFormat.TEXT
    oriented: bool = False

    @field_validator("range")
    @classmethod
    def check_range(cls, value: Optional[str]) -> Optional[str]:
        if value is not None:
            parse_range(value)
        return value

    @model_validator(mode="after")
    def check_required(self) -> "RunConfig":
        command = self.command
        if command in (CommandName.CHECK, CommandName.INVARIANTS) and not self.inputs:
            raise ValueError(f"{command.value} needs at least one input")
        if command in (CommandName.TWIST, CommandName.FAMILY):
            if len(self.inputs) != 1:
                raise ValueError(f"{command.value} needs exactly one input")
            if self.crossing is None:
                raise ValueError(f"{command.value} needs --crossing")
        if command is CommandName.TWIST and not self.block:
            raise ValueError("twist needs --block")
        if command is CommandName.FAMILY and not (self.pattern and self.range):
            raise ValueError("family needs --pattern and --range")
        if command is CommandName.VERIFY and not self.target:
            raise ValueError("verify needs a target")
        return self

    def values(self) -> range:
        """--range a..b 展开成 a, a+1, ..., b"""
        low, high = parse_range(self.range or "")
        return range(low, high + 1)


def parse_range(text: str) -> Tuple[int, int]:
    """
    解析 `a..b`（闭区间，a ≤ b）

    Raises:
        ValueError: 格式不对或 a > b
    """
    low, sep, high = text.partition("..")
    try:
        if not sep:
            raise ValueError
        a, b = int(low), int(high)
    except ValueError:
        raise ValueError(f"range must look like a..b, got {text!r}")
    if a > b:
        raise ValueError(f"range {text!r} is empty")
    return a, b
