"""
图的检查命令

支持：
- check：充分性、齐性、交错型、正性
- invariants：行列式（生成树与单位根两种算法）、括号多项式及其极值指数
- catalog：列出随仓库发布的链环图
"""

from typing import Any, Dict, List

from .base_command import EXIT_VERIFICATION_FAILED, BaseCommand, CommandResult
from ..config import RunConfig
from ..core.bracket import bracket, det_via_bracket, extreme_powers
from ..core.catalog import CLASS_CHECKS
from ..core.checkerboard import is_alternative
from ..core.determinant import determinant
from ..core.diagram import Diagram, is_A_adequate, is_B_adequate, is_adequate
from ..core.seifert import is_homogeneous, is_positive


def class_report(d: Diagram) -> Dict[str, Any]:
    """check 命令的一条记录"""
    return {
        "record": "check",
        "diagram": d.name or d.digest(),
        "crossings": d.n,
        "adequate": is_adequate(d),
        "A_adequate": is_A_adequate(d),
        "B_adequate": is_B_adequate(d),
        "homogeneous": is_homogeneous(d),
        "alternative": is_alternative(d),
        "positive": is_positive(d),
    }


class CheckCommand(BaseCommand):
    """链环类别检查命令"""

    @property
    def name(self) -> str:
        return "check"

    @property
    def description(self) -> str:
        return "判断输入图是否充分、齐性、交错型、正的"

    def execute(self, config: RunConfig) -> CommandResult:
        try:
            records = [class_report(self.load_input(ref)) for ref in config.inputs]
        except Exception as e:
            return self.handle_error(e, "check")

        header = ["diagram", "crossings", *CLASS_CHECKS]
        rows = [[r["diagram"], r["crossings"], *(r[key] for key in CLASS_CHECKS)] for r in records]
        return CommandResult(
            success=True,
            message=self.format_table(rows, header),
            data=records,
            records=records,
        )


class InvariantsCommand(BaseCommand):
    """不变量计算命令"""

    @property
    def name(self) -> str:
        return "invariants"

    @property
    def description(self) -> str:
        return "计算行列式、Kauffman 括号多项式和它的极值指数"

    def invariants(self, d: Diagram) -> Dict[str, Any]:
        poly = bracket(d)
        highest, lowest = extreme_powers(poly)
        return {
            "record": "invariants",
            "diagram": d.name or d.digest(),
            "crossings": d.n,
            "writhe": d.writhe,
            "determinant": determinant(d),
            "det_via_bracket": det_via_bracket(d),
            "bracket": poly.to_json(),
            "max_power": highest,
            "min_power": lowest,
        }

    def execute(self, config: RunConfig) -> CommandResult:
        try:
            records = [self.invariants(self.load_input(ref)) for ref in config.inputs]
        except Exception as e:
            return self.handle_error(e, "invariants")

        lines: List[str] = []
        mismatched = []
        for r in records:
            lines.append(self.format_table([
                ["diagram", r["diagram"]],
                ["crossings", r["crossings"]],
                ["writhe", r["writhe"]],
                ["determinant", r["determinant"]],
                ["det_via_bracket", r["det_via_bracket"]],
                ["bracket", " + ".join(f"{c}*A^{e}" for e, c in r["bracket"]) or "0"],
                ["extremes", f"{r['max_power']} {r['min_power']}"],
            ]))
            if r["determinant"] != r["det_via_bracket"]:
                mismatched.append(r["diagram"])

        if mismatched:
            self.logger.error("determinant methods disagree on %s", ", ".join(mismatched))
            return CommandResult(
                success=False,
                message="\n\n".join(lines),
                data=records,
                records=records,
                error=f"determinant methods disagree on {', '.join(mismatched)}",
                exit_code=EXIT_VERIFICATION_FAILED,
            )
        return CommandResult(success=True, message="\n\n".join(lines), data=records, records=records)


class CatalogCommand(BaseCommand):
    """列出目录中的链环图"""

    @property
    def name(self) -> str:
        return "catalog"

    @property
    def description(self) -> str:
        return "列出随仓库发布的链环图及其来源"

    def execute(self, config: RunConfig) -> CommandResult:
        try:
            records = []
            for entry in self.catalog.entries():
                d = self.catalog.build(entry)
                records.append({
                    "record": "catalog",
                    "name": entry.name,
                    "kind": entry.kind,
                    "crossings": d.n,
                    "source": entry.source,
                })
        except Exception as e:
            return self.handle_error(e, "catalog")

        rows = [[r["name"], r["kind"], r["crossings"], r["source"]] for r in records]
        return CommandResult(
            success=True,
            message=self.format_table(rows, ["name", "kind", "crossings", "source"]),
            data=records,
            records=records,
        )
