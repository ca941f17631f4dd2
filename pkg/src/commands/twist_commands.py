"""
扭转命令

支持：
- twist：用一个块替换一个交叉，输出扭转后的 PD 代码
- family：按带空位的模板和取值区间生成一族图，逐个输出成员
"""

from typing import Any, Dict

from .base_command import BaseCommand, CommandResult
from ..config import RunConfig, get_env_config
from ..core.bracket import bracket, extreme_powers
from ..core.determinant import determinant
from ..core.diagram import Diagram, serialize
from ..core.tangle import BlockPattern, TangleBlock, block_crossing_count, parse_block
from ..core.twist import TwistSpec, generate_family, replace_crossing
from .diagram_commands import class_report


class TwistCommand(BaseCommand):
    """单个交叉的扭转命令"""

    @property
    def name(self) -> str:
        return "twist"

    @property
    def description(self) -> str:
        return "用有理缠结块替换指定交叉，输出新的 PD 代码"

    def execute(self, config: RunConfig) -> CommandResult:
        try:
            d = self.load_input(config.inputs[0])
            block = parse_block(config.block or "")
            spec = TwistSpec(config.crossing, block, oriented=config.oriented)
            twisted = replace_crossing(d, spec)
        except Exception as e:
            return self.handle_error(e, "twist")

        self.logger.info("twisted %s at crossing %d: %d -> %d crossings",
                         d.name or d.digest(), spec.crossing, d.n, twisted.n)
        record = {
            "record": "twist",
            "source": d.name or d.digest(),
            **spec.to_dict(),
            "crossings": twisted.n,
            "pd": serialize(twisted),
        }
        return CommandResult(success=True, message=serialize(twisted), data=record, records=[record])


class FamilyCommand(BaseCommand):
    """无穷族生成命令"""

    @property
    def name(self) -> str:
        return "family"

    @property
    def description(self) -> str:
        return "按模板 --pattern 和区间 --range 逐个生成扭转后的图"

    def member(self, source: Diagram, k: int, block: TangleBlock, d: Diagram) -> Dict[str, Any]:
        """一个族成员的记录；交叉数超过状态求和上限时不给出极值指数"""
        report = class_report(d)
        report.update({
            "record": "member",
            "k": k,
            "block": block.to_text(),
            "pd": serialize(d),
            "crossing_law": d.n == source.n - 1 + block_crossing_count(block),
        })
        report["determinant"] = determinant(d)
        if d.n <= get_env_config().max_n:
            report["max_power"], report["min_power"] = extreme_powers(bracket(d))
        else:
            report["max_power"] = report["min_power"] = None
        return report

    def execute(self, config: RunConfig) -> CommandResult:
        records = []
        try:
            source = self.load_input(config.inputs[0])
            pattern = BlockPattern(config.pattern or "")
            members = generate_family(source, config.crossing, pattern, config.values(), config.oriented)
            for k, block, d in members:
                records.append(self.member(source, k, block, d))
                self.logger.debug("family member k=%d: %d crossings", k, d.n)
        except Exception as e:
            return self.handle_error(e, "family")

        rows = [[r["k"], r["block"], r["crossings"], r["adequate"], r["homogeneous"],
                 r["alternative"], r["positive"], r["determinant"], r["max_power"], r["min_power"]]
                for r in records]
        header = ["k", "block", "crossings", "adequate", "homogeneous", "alternative",
                  "positive", "determinant", "max", "min"]
        return CommandResult(
            success=True,
            message=self.format_table(rows, header),
            data=records,
            records=records,
        )


__all__ = ["FamilyCommand", "TwistCommand"]
