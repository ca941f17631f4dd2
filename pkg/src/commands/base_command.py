"""
tangletwist 命令基础框架

定义所有命令的基础接口和通用功能，支持：
- 统一的命令接口
- 输入解析（PD 文件或 catalog:<名称>）
- 错误处理、退出码和日志记录
- 文本表格与 JSON 行两种输出
"""

import abc
import json
import logging
import sys
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

from ..config import get_env_config
from ..core.catalog import DiagramCatalog, resolve_input
from ..core.diagram import Diagram
from ..core.errors import TangleTwistError

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_VERIFICATION_FAILED = 2
EXIT_RESOURCE_LIMIT = 3


@dataclass
class CommandResult:
    """命令执行结果"""
    success: bool
    message: str
    data: Any = None
    error: Optional[str] = None
    exit_code: int = EXIT_OK
    records: List[Dict[str, Any]] = field(default_factory=list)  # JSON 行输出

    def render(self, emit: str) -> str:
        """按输出格式生成标准输出内容"""
        if emit == "json":
            return "".join(json_line(record) for record in self.records)
        if not self.message:
            return ""
        return self.message if self.message.endswith("\n") else self.message + "\n"


def json_line(record: Dict[str, Any]) -> str:
    """稳定的 JSON 行：键排序、紧凑分隔符"""
    return json.dumps(record, sort_keys=True, separators=(",", ":"), ensure_ascii=False) + "\n"


class BaseCommand(abc.ABC):
    """基础命令抽象类"""

    def __init__(self, catalog: Optional[DiagramCatalog] = None):
        """
        初始化基础命令

        Args:
            catalog: 链环图目录，默认使用 TANGLETWIST_CATALOG_DIR 或仓库自带目录
        """
        self.catalog = catalog or DiagramCatalog()
        self.logger = logging.getLogger(self.__class__.__name__)

        # 日志只写标准错误，标准输出留给报告
        if not self.logger.handlers:
            handler = logging.StreamHandler(sys.stderr)
            formatter = logging.Formatter(
                '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
            )
            handler.setFormatter(formatter)
            self.logger.addHandler(handler)
            self.logger.setLevel(get_env_config().log_level.upper())
            self.logger.propagate = False

    @abc.abstractmethod
    def execute(self, config) -> CommandResult:
        """
        执行命令的抽象方法

        Args:
            config: RunConfig

        Returns:
            CommandResult: 命令执行结果
        """
        pass

    @property
    @abc.abstractmethod
    def name(self) -> str:
        """命令名称"""
        pass

    @property
    @abc.abstractmethod
    def description(self) -> str:
        """命令描述"""
        pass

    def load_input(self, reference: str) -> Diagram:
        """
        读取输入图

        Args:
            reference: PD 文件路径或 catalog:<名称>

        Returns:
            Diagram: 解析后的图
        """
        return resolve_input(reference, self.catalog)

    def handle_error(self, error: Exception, context: str = "") -> CommandResult:
        """
        统一错误处理

        tangletwist 异常按其 exit_status 退出，其余异常视为输入错误。

        Args:
            error: 异常对象
            context: 错误上下文

        Returns:
            CommandResult: 错误结果
        """
        error_message = f"{context}: {str(error)}" if context else str(error)
        if isinstance(error, TangleTwistError):
            self.logger.error(error_message)
            code, status = error.code, error.exit_status
        else:
            self.logger.error(error_message, exc_info=True)
            code, status = type(error).__name__, EXIT_INPUT_ERROR

        return CommandResult(
            success=False,
            message="",
            error=f"{code}: {error_message}",
            exit_code=status,
        )

    def format_table(self, rows: Sequence[Sequence[Any]], header: Optional[Sequence[str]] = None) -> str:
        """
        左对齐的纯文本表格

        Args:
            rows: 行，每个单元格按 str() 输出（布尔值输出为 true/false）
            header: 可选表头

        Returns:
            str: 表格文本
        """
        cells = [[format_cell(v) for v in row] for row in rows]
        if header:
            cells.insert(0, list(header))
        if not cells:
            return ""
        widths = [max(len(row[i]) for row in cells if i < len(row)) for i in range(max(map(len, cells)))]
        lines = []
        for row in cells:
            padded = [value.ljust(widths[i]) for i, value in enumerate(row)]
            lines.append("  ".join(padded).rstrip())
        return "\n".join(lines)

    def get_help_text(self) -> str:
        """
        获取命令帮助文本

        Returns:
            str: 帮助文本
        """
        return f"{self.name}: {self.description}"


def format_cell(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "-"
    return str(value)
