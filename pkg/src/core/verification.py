"""
随机化验证

支持三类目标：
- det-lemma：单个有理缠结扭转后的行列式预测
- bracket-prop：两层块扭转后括号多项式的极值指数与状态圆周增量
- preservation：充分性、齐性、交错型与正性在扭转下的保持

每次试验的种子由主种子经 splitmix64 混合得到，单独一个种子即可重放该次试验。
"""

import logging
import random
from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, List, Optional

from .bracket import (
    adequate_extremes,
    bracket,
    extreme_powers,
    predict_state_circle_deltas,
    predict_twisted_extremes,
)
from .catalog import DiagramCatalog
from .checkerboard import is_alternative
from .determinant import determinant, predict_twisted_det, sign_of, xy_values
from .diagram import Diagram, all_A, all_B, is_adequate, mirror, resolve, serialize
from .errors import ExtensionError
from .seifert import is_homogeneous, is_positive
from .tangle import TangleBlock, block_shape, negate_block, slope
from .twist import TwistSpec, random_extending_block, random_rational_tangle, replace_crossing

logger = logging.getLogger(__name__)

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
SEED_DERIVATION = "splitmix64(master + (trial + 1) * 0x9E3779B97F4A7C15)"

MAX_TOTAL_CROSSINGS = 20
ORIENTED_RETRIES = 64


def splitmix64(x: int) -> int:
    z = x & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def trial_seed(master: int, trial: int) -> int:
    return splitmix64((master + (trial + 1) * GOLDEN_GAMMA) & MASK64)


class TrialStatus(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    XY_ZERO = "xy-zero"  # x·y = 0，sign 取 +1，不计入通过数


@dataclass
class TrialRecord:
    target: str
    trial: int
    seed: int
    diagram: str
    pd: str
    crossing: int
    sign: int
    block: str
    status: TrialStatus = TrialStatus.PASS
    predicted: Any = None
    measured: Any = None
    sign_xy: Optional[int] = None
    detail: str = ""

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["status"] = self.status.value
        data["record"] = "trial"
        return data


@dataclass
class VerificationReport:
    target: str
    master_seed: int
    trials: int
    records: List[TrialRecord] = field(default_factory=list)

    def count(self, status: TrialStatus) -> int:
        return sum(1 for r in self.records if r.status is status)

    @property
    def failed(self) -> int:
        return self.count(TrialStatus.FAIL)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def header(self) -> Dict[str, Any]:
        return {
            "record": "header",
            "target": self.target,
            "master_seed": self.master_seed,
            "trials": self.trials,
            "seed_derivation": SEED_DERIVATION,
        }

    def summary(self) -> Dict[str, Any]:
        return {
            "record": "summary",
            "target": self.target,
            "trials": len(self.records),
            "passed": self.count(TrialStatus.PASS),
            "failed": self.failed,
            "xy_zero": self.count(TrialStatus.XY_ZERO),
        }


class VerificationHarness:
    """在目录中的充分图上做随机扭转试验"""

    def __init__(self, catalog: DiagramCatalog, max_crossings: int = 6):
        self.catalog = catalog
        self.max_crossings = max_crossings
        self._seeds: Optional[List[Diagram]] = None
        self._targets: Dict[str, Callable[[int, int], TrialRecord]] = {
            "det-lemma": self.det_formula_trial,
            "bracket-prop": self.bracket_prop_trial,
            "preservation": self.preservation_trial,
        }

    @property
    def targets(self) -> List[str]:
        return list(self._targets)

    def seeds(self) -> List[Diagram]:
        """目录中至少有一个交叉的充分图，按目录顺序"""
        if self._seeds is None:
            self._seeds = [d for d in self.catalog.load_all() if d.n > 0 and is_adequate(d)]
        return self._seeds

    def run(self, target: str, trials: int, master_seed: int) -> VerificationReport:
        if target not in self._targets:
            raise ValueError(f"unknown verification target '{target}', expected one of {self.targets}")
        report = VerificationReport(target=target, master_seed=master_seed, trials=trials)
        for trial in range(trials):
            record = self.replay(target, trial, trial_seed(master_seed, trial))
            if record.status is TrialStatus.FAIL:
                logger.warning("%s trial %d failed: %s", target, trial, record.detail)
            report.records.append(record)
        logger.info("%s: %s", target, report.summary())
        return report

    def replay(self, target: str, trial: int, seed: int) -> TrialRecord:
        return self._targets[target](trial, seed)

    def _setup(self, target: str, trial: int, seed: int, limit: int):
        rng = random.Random(seed)
        d = rng.choice(self.seeds())
        c = d.crossings[rng.randrange(d.n)]
        budget = max(1, min(limit, MAX_TOTAL_CROSSINGS - d.n + 1))
        record = TrialRecord(target=target, trial=trial, seed=seed, diagram=d.name or d.digest(),
                             pd=serialize(d), crossing=c.id, sign=c.sign, block="")
        return rng, d, c, budget, record

    # -- det-lemma ---------------------------------------------------------

    def det_formula_trial(self, trial: int, seed: int) -> TrialRecord:
        rng, d, c, budget, record = self._setup("det-lemma", trial, seed, self.max_crossings)
        block = random_rational_tangle(rng.getrandbits(64), c.sign, budget)
        record.block = block.to_text()

        positive = next(block.leaves()) if c.sign > 0 else next(negate_block(block).leaves())
        s = slope(positive)
        x, y = xy_values(d, c.id)
        sign_xy = sign_of(x * y)
        record.sign_xy = sign_xy
        record.predicted = predict_twisted_det(s.denominator, s.numerator, abs(x), abs(y), sign_xy, c.sign)
        record.measured = determinant(replace_crossing(d, TwistSpec(c.id, block)))
        if x * y == 0:
            record.status = TrialStatus.XY_ZERO
        elif record.predicted != record.measured:
            record.status = TrialStatus.FAIL
            record.detail = f"x={x} y={y} slope={s}"
        return record

    # -- bracket-prop ------------------------------------------------------

    def bracket_prop_trial(self, trial: int, seed: int) -> TrialRecord:
        rng, d, c, budget, record = self._setup("bracket-prop", trial, seed, self.max_crossings)
        block = random_extending_block(rng.getrandbits(64), c.sign, budget)
        record.block = block.to_text()

        # 负交叉在镜像图上以取反的块处理
        base = d if c.sign > 0 else mirror(d)
        twisted_block = block if c.sign > 0 else negate_block(block)
        shape = block_shape(twisted_block)

        M, m = adequate_extremes(base)
        twisted = replace_crossing(base, TwistSpec(c.id, twisted_block))
        delta_a = resolve(twisted, all_A(twisted)).circle_count - resolve(base, all_A(base)).circle_count
        delta_b = resolve(twisted, all_B(twisted)).circle_count - resolve(base, all_B(base)).circle_count

        record.predicted = {
            "extremes": list(predict_twisted_extremes(M, m, shape)),
            "deltas": list(predict_state_circle_deltas(shape)),
        }
        record.measured = {
            "extremes": list(extreme_powers(bracket(twisted))),
            "deltas": [delta_a, delta_b],
        }
        if record.predicted != record.measured:
            record.status = TrialStatus.FAIL
            record.detail = f"shape {shape.mode.value} l={shape.l} k={list(shape.k)}"
        return record

    # -- preservation ---------------------------------------------------------

    def _oriented_block(self, rng: random.Random, d: Diagram, crossing: int, sign: int,
                        budget: int) -> Optional[tuple]:
        for _ in range(ORIENTED_RETRIES):
            block = random_extending_block(rng.getrandbits(64), sign, budget)
            try:
                return block, replace_crossing(d, TwistSpec(crossing, block, oriented=True))
            except ExtensionError:
                continue
        return None

    def preservation_trial(self, trial: int, seed: int) -> TrialRecord:
        rng, d, c, budget, record = self._setup("preservation", trial, seed, self.max_crossings)
        block: TangleBlock = random_extending_block(rng.getrandbits(64), c.sign, budget)
        twisted = replace_crossing(d, TwistSpec(c.id, block))
        checks = {"adequate": is_adequate(twisted)}
        problems = [] if checks["adequate"] else ["adequacy lost"]

        oriented = self._oriented_block(rng, d, c.id, c.sign, budget)
        if oriented is None:
            record.block = block.to_text()
            record.detail = "no oriented extending block found"
        else:
            oriented_block, oriented_twist = oriented
            record.block = f"{block.to_text()} | oriented {oriented_block.to_text()}"
            # 有向延拓下三类性质扭转前后同真同假
            pairs = {
                "homogeneous": (is_homogeneous(d), is_homogeneous(oriented_twist)),
                "alternative": (is_alternative(d), is_alternative(oriented_twist)),
                "positive": (is_positive(d), is_positive(oriented_twist)),
            }
            for name, (before, after) in pairs.items():
                checks[name] = after
                if before != after:
                    problems.append(f"{name} {'lost' if before else 'gained'}")

        record.measured = checks
        if problems:
            record.status = TrialStatus.FAIL
            record.detail = "; ".join(problems)
        return record
