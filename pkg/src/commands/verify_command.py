"""
随机化验证命令

verify <目标> --trials N --seed S [--max-crossings M]

JSON 输出依次为一条 header、每次试验一条 trial、最后一条 summary。
有失败试验时退出码为 2。
"""

from .base_command import EXIT_VERIFICATION_FAILED, BaseCommand, CommandResult
from ..config import RunConfig
from ..core.verification import TrialStatus, VerificationHarness


class VerifyCommand(BaseCommand):
    """行列式引理、极值指数命题与保持性定理的随机验证"""

    @property
    def name(self) -> str:
        return "verify"

    @property
    def description(self) -> str:
        return "在目录中的充分图上做随机扭转试验，比较预测值与实际值"

    def execute(self, config: RunConfig) -> CommandResult:
        harness = VerificationHarness(self.catalog, max_crossings=config.max_crossings)
        try:
            if config.target not in harness.targets:
                raise ValueError(
                    f"unknown verification target '{config.target}', expected one of {', '.join(harness.targets)}")
            report = harness.run(config.target, config.trials, config.seed)
        except Exception as e:
            return self.handle_error(e, "verify")

        records = [report.header(), *(r.to_dict() for r in report.records), report.summary()]
        summary = report.summary()

        lines = [
            f"{report.target}: {summary['passed']}/{summary['trials']} passed, "
            f"{summary['failed']} failed, {summary['xy_zero']} with x·y = 0",
            f"seed derivation: {report.header()['seed_derivation']}",
        ]
        failures = [r for r in report.records if r.status is TrialStatus.FAIL]
        if failures:
            rows = [[r.trial, r.seed, r.diagram, r.crossing, r.block, r.detail] for r in failures]
            lines.append(self.format_table(rows, ["trial", "seed", "diagram", "crossing", "block", "detail"]))

        if not report.ok:
            return CommandResult(
                success=False,
                message="\n".join(lines),
                data=summary,
                records=records,
                error=f"{report.failed} of {len(report.records)} trials failed",
                exit_code=EXIT_VERIFICATION_FAILED,
            )
        return CommandResult(success=True, message="\n".join(lines), data=summary, records=records)
