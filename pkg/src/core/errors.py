"""
tangletwist 异常定义

每个异常带有一个字符串错误码（写入 CommandResult.error）和命令行退出码：
- 1: 输入错误（PD 代码、块语法、参数）
- 2: 验证失败
- 3: 资源上限
"""

from typing import Sequence


class TangleTwistError(Exception):
    """所有 tangletwist 异常的基类"""
    code = "TANGLETWIST_ERROR"
    exit_status = 1


class DiagramError(TangleTwistError):
    """PD 代码不合法，或者对图的操作前提不成立"""
    code = "DIAGRAM_INVALID"

    def __init__(self, message: str, violations: Sequence = ()):
        super().__init__(message)
        self.violations = list(violations)


class DisconnectedGraphError(TangleTwistError):
    code = "GRAPH_DISCONNECTED"


class NotAdequateError(TangleTwistError):
    code = "DIAGRAM_NOT_ADEQUATE"


class TangleError(TangleTwistError):
    """连分数或有理缠结块不合法"""
    code = "TANGLE_INVALID"


class GrammarError(TangleError):
    code = "BLOCK_GRAMMAR"


class SingularContinuedFractionError(TangleError):
    code = "SINGULAR_CONTINUED_FRACTION"


class ShapeError(TangleError):
    code = "SHAPE_NOT_COVERED"


class ExtensionError(TangleTwistError):
    """块不能延拓目标交叉（包括有向情形下没有可用定向）"""
    code = "BLOCK_DOES_NOT_EXTEND"


class CatalogError(TangleTwistError):
    code = "CATALOG_INVALID"


class ResourceLimitError(TangleTwistError):
    code = "RESOURCE_LIMIT"
    exit_status = 3


class ToleranceError(TangleTwistError):
    """单位根求值的舍入误差超限，说明实现有缺陷"""
    code = "ROUNDING_TOLERANCE"
    exit_status = 2
