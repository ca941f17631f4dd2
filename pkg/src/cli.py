"""
tangletwist 命令行入口

用法：
    tangletwist.py check <输入>... [--emit text|json]
    tangletwist.py invariants <输入>...
    tangletwist.py twist <输入> --crossing ID --block "[2,1]" [--oriented]
    tangletwist.py family <输入> --crossing ID --pattern "[?]" --range 1..10
    tangletwist.py verify det-lemma|bracket-prop|preservation --trials N --seed S [--max-crossings M]
    tangletwist.py catalog

输入是 PD 文件路径或 catalog:<名称>。退出码：0 成功，1 输入错误，2 验证失败，3 资源上限。
"""

import argparse
import logging
import sys
from typing import Dict, List, Optional, Sequence, TextIO, Type

from pydantic import ValidationError

from .commands.base_command import EXIT_INPUT_ERROR, BaseCommand
from .commands.diagram_commands import CatalogCommand, CheckCommand, InvariantsCommand
from .commands.twist_commands import FamilyCommand, TwistCommand
from .commands.verify_command import VerifyCommand
from .config import CommandName, RunConfig, get_env_config
from .core.catalog import DiagramCatalog

COMMANDS: Dict[CommandName, Type[BaseCommand]] = {
    CommandName.CHECK: CheckCommand,
    CommandName.INVARIANTS: InvariantsCommand,
    CommandName.TWIST: TwistCommand,
    CommandName.FAMILY: FamilyCommand,
    CommandName.VERIFY: VerifyCommand,
    CommandName.CATALOG: CatalogCommand,
}


class _ArgumentParser(argparse.ArgumentParser):
    """用法错误以退出码 1 退出"""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT_ERROR, f"error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="tangletwist",
        description="Twist crossings of link diagrams by rational tangle blocks and check link classes.",
        epilog="commands:\n" + "\n".join("  " + cls().get_help_text() for cls in COMMANDS.values()),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("command", choices=[c.value for c in CommandName])
    parser.add_argument("args", nargs="*", help="inputs (PD file or catalog:<name>), or the verify target")
    parser.add_argument("--crossing", type=int, help="crossing id to replace")
    parser.add_argument("--block", help='block, e.g. "S([2],P([1],[1]))"')
    parser.add_argument("--pattern", help='block with one "?" hole, e.g. "[?]"')
    parser.add_argument("--range", dest="range", help="hole values a..b (inclusive)")
    parser.add_argument("--trials", type=int, default=100)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--max-crossings", dest="max_crossings", type=int, default=6,
                        help="crossing budget of random blocks")
    parser.add_argument("--emit", choices=["text", "json"], default="text")
    parser.add_argument("--oriented", action="store_true", help="require an oriented extension")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    """
    argparse 结果 -> RunConfig

    Raises:
        ValidationError: 缺少命令所需的参数，或取值越界
    """
    positional: List[str] = list(args.args)
    target: Optional[str] = None
    if args.command == CommandName.VERIFY.value and positional:
        target, positional = positional[0], positional[1:]
    return RunConfig(
        command=args.command,
        inputs=positional,
        target=target,
        crossing=args.crossing,
        block=args.block,
        pattern=args.pattern,
        range=args.range,
        seed=args.seed,
        trials=args.trials,
        max_crossings=args.max_crossings,
        emit=args.emit,
        oriented=args.oriented,
    )


def run(cfg: RunConfig, out: Optional[TextIO] = None, catalog: Optional[DiagramCatalog] = None) -> int:
    """执行一次命令，报告写入 out（默认为调用时的 sys.stdout），返回退出码"""
    out = out or sys.stdout
    command = COMMANDS[cfg.command](catalog)
    result = command.execute(cfg)
    out.write(result.render(cfg.emit.value))
    if result.error:
        print(f"error: {result.error}", file=sys.stderr)
    return result.exit_code


def main(argv: Optional[Sequence[str]] = None) -> int:
    settings = get_env_config()
    logging.basicConfig(
        level=settings.log_level.upper(),
        stream=sys.stderr,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    )

    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
    except ValidationError as e:
        for problem in e.errors():
            print(f"error: {problem['msg']}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
