"""
交叉约定表

符号、A/B 光滑化、Seifert 类型、Tait 边符号以及增强棋盘有向图的边方向
都集中在 conventions.yaml 中，其他模块只通过本模块读取。
"""

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from pathlib import Path
from typing import Dict, Tuple

import yaml

CONVENTIONS_FILE = Path(__file__).with_name("conventions.yaml")

Corner = Tuple[int, int]


class Smoothing(Enum):
    """光滑化类型，取值即状态中的 ±1"""
    A = 1
    B = -1


class SeifertType(Enum):
    I = "I"
    II = "II"


@dataclass(frozen=True)
class DigraphRow:
    crossing_sign: int
    tail_corner: Corner
    head_corner: Corner
    edge_sign: int


@dataclass(frozen=True)
class ConventionTable:
    positive_over_entry: int
    smoothings: Dict[Smoothing, Tuple[Corner, Corner]]
    seifert_types: Dict[int, SeifertType]
    seifert_edge_signs: Dict[SeifertType, int]
    positive_black_corners: Tuple[Corner, Corner]
    digraph_rows: Dict[int, DigraphRow]


def _pair(raw) -> Corner:
    a, b = raw
    return int(a), int(b)


@lru_cache(maxsize=1)
def load_conventions() -> ConventionTable:
    """读取约定表（只读取一次）"""
    with open(CONVENTIONS_FILE, "r", encoding="utf-8") as f:
        raw = yaml.safe_load(f)

    rows = {}
    for row in raw["enhanced_digraph"]:
        parsed = DigraphRow(
            crossing_sign=int(row["crossing_sign"]),
            tail_corner=_pair(row["tail_corner"]),
            head_corner=_pair(row["head_corner"]),
            edge_sign=int(row["edge_sign"]),
        )
        rows[parsed.crossing_sign] = parsed

    return ConventionTable(
        positive_over_entry=int(raw["sign"]["positive_over_entry"]),
        smoothings={
            Smoothing[name]: tuple(_pair(p) for p in pairs)
            for name, pairs in raw["smoothing"].items()
        },
        seifert_types={int(k): SeifertType(v) for k, v in raw["seifert"]["types"].items()},
        seifert_edge_signs={SeifertType(k): int(v) for k, v in raw["seifert"]["edge_sign"].items()},
        positive_black_corners=tuple(_pair(p) for p in raw["tait"]["positive_black_corners"]),
        digraph_rows=rows,
    )


def smoothing_pairs(choice: Smoothing) -> Tuple[Corner, Corner]:
    """光滑化后相连的两对位置"""
    return load_conventions().smoothings[choice]


def seifert_smoothing(sign: int) -> Smoothing:
    """保持定向的光滑化：正交叉取 A，负交叉取 B"""
    return Smoothing.A if sign > 0 else Smoothing.B


def seifert_type(sign: int) -> SeifertType:
    return load_conventions().seifert_types[sign]


def seifert_edge_sign(kind: SeifertType) -> int:
    return load_conventions().seifert_edge_signs[kind]


def corner_dart(corner: Corner) -> int:
    """角 (p, p+1) 所在的面等于位置 p+1 处半边所在的面"""
    return corner[1]


def positive_black_corners() -> Tuple[Corner, Corner]:
    return load_conventions().positive_black_corners


def digraph_row(sign: int) -> DigraphRow:
    return load_conventions().digraph_rows[sign]

