"""
链环图目录

目录由 catalog.yaml 索引：每一项给出名称、来源（PD 文件、椒盐卷饼参数或 Montesinos 分数）
以及期望的分类结果。加载时逐项复核期望值，不一致的条目不会被使用。
"""

import logging
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

import yaml
from pydantic import BaseModel, Field, ValidationError, model_validator

from ..config import get_env_config
from .checkerboard import is_alternative
from .determinant import determinant
from .diagram import Diagram, is_adequate, parse_pd
from .errors import CatalogError, DiagramError, TangleError
from .seifert import is_homogeneous, is_positive
from .twist import montesinos, pretzel

logger = logging.getLogger(__name__)

INDEX_FILE = "catalog.yaml"
DEFAULT_CATALOG_DIR = Path(__file__).resolve().parents[2] / "test_data" / "catalog"

CLASS_CHECKS = ("adequate", "homogeneous", "alternative", "positive")


class Expectation(BaseModel):
    crossings: Optional[int] = None
    adequate: Optional[bool] = None
    homogeneous: Optional[bool] = None
    alternative: Optional[bool] = None
    positive: Optional[bool] = None
    determinant: Optional[int] = None


class CatalogEntry(BaseModel):
    """catalog.yaml 中的一项"""
    name: str
    kind: str = "pd"  # pd | pretzel | montesinos
    file: Optional[str] = None
    strands: List[int] = Field(default_factory=list)
    positive: List[Tuple[int, int]] = Field(default_factory=list)
    negative: List[Tuple[int, int]] = Field(default_factory=list)
    source: str = ""
    expect: Expectation = Field(default_factory=Expectation)

    @model_validator(mode="after")
    def check_kind(self) -> "CatalogEntry":
        if self.kind == "pd" and not self.file:
            raise ValueError(f"{self.name}: pd entries need a file")
        if self.kind == "pretzel" and len(self.strands) < 2:
            raise ValueError(f"{self.name}: pretzel entries need at least two strands")
        if self.kind == "montesinos" and not (self.positive and self.negative):
            raise ValueError(f"{self.name}: montesinos entries need positive and negative fractions")
        if self.kind not in ("pd", "pretzel", "montesinos"):
            raise ValueError(f"{self.name}: unknown kind {self.kind!r}")
        return self


def classify(d: Diagram) -> Dict[str, Union[bool, int]]:
    """分类检查与行列式"""
    return {
        "crossings": d.n,
        "adequate": is_adequate(d),
        "homogeneous": is_homogeneous(d),
        "alternative": is_alternative(d),
        "positive": is_positive(d),
        "determinant": determinant(d),
    }


class DiagramCatalog:
    """随仓库发布的链环图目录"""

    def __init__(self, root: Union[str, Path, None] = None):
        """
        Args:
            root: 目录路径；为空时依次使用 TANGLETWIST_CATALOG_DIR 和仓库自带目录
        """
        if root is None:
            root = get_env_config().catalog_dir or DEFAULT_CATALOG_DIR
        self.root = Path(root)
        self._entries: Optional[List[CatalogEntry]] = None
        self._cache: Dict[str, Diagram] = {}

    def entries(self) -> List[CatalogEntry]:
        """
        读取索引

        Raises:
            CatalogError: 索引缺失或格式错误
        """
        if self._entries is None:
            index = self.root / INDEX_FILE
            if not index.exists():
                raise CatalogError(f"catalog index not found: {index}")
            with open(index, "r", encoding="utf-8") as f:
                raw = yaml.safe_load(f) or {}
            try:
                self._entries = [CatalogEntry(**item) for item in raw.get("diagrams", [])]
            except ValidationError as e:
                raise CatalogError(f"malformed catalog index {index}: {e}")
            names = [entry.name for entry in self._entries]
            if len(set(names)) != len(names):
                raise CatalogError("catalog index lists a name twice")
        return self._entries

    def names(self) -> List[str]:
        return [entry.name for entry in self.entries()]

    def entry(self, name: str) -> CatalogEntry:
        for entry in self.entries():
            if entry.name == name:
                return entry
        raise CatalogError(f"unknown catalog diagram '{name}', available: {', '.join(self.names())}")

    def build(self, entry: CatalogEntry) -> Diagram:
        try:
            if entry.kind == "pd":
                text = (self.root / entry.file).read_text(encoding="utf-8")
                d = parse_pd(text)
            elif entry.kind == "pretzel":
                d = pretzel(entry.strands)
            else:
                d = montesinos(entry.positive, entry.negative)
        except (OSError, DiagramError, TangleError) as e:
            raise CatalogError(f"catalog diagram '{entry.name}' cannot be built: {e}")
        return Diagram(crossings=d.crossings, free_loops=d.free_loops, name=entry.name)

    def mismatches(self, entry: CatalogEntry, d: Diagram) -> List[str]:
        """期望值与实际计算结果不一致的字段"""
        expected = entry.expect.model_dump(exclude_none=True)
        if not expected:
            return []
        actual = classify(d)
        return [f"{key}: expected {value}, computed {actual[key]}"
                for key, value in expected.items() if actual[key] != value]

    def load(self, name: str, validate: bool = True) -> Diagram:
        """
        按名称加载

        Raises:
            CatalogError: 名称未知、来源无法构造，或期望值复核失败
        """
        if name in self._cache:
            return self._cache[name]
        entry = self.entry(name)
        d = self.build(entry)
        if validate:
            problems = self.mismatches(entry, d)
            if problems:
                raise CatalogError(f"catalog diagram '{name}' failed its checks: {'; '.join(problems)}")
        logger.debug("catalog diagram %s loaded: %d crossings", name, d.n)
        self._cache[name] = d
        return d

    def load_all(self, validate: bool = True) -> List[Diagram]:
        return [self.load(name, validate) for name in self.names()]


def resolve_input(reference: str, catalog: Optional[DiagramCatalog] = None) -> Diagram:
    """
    命令行输入：`catalog:<名称>` 或 PD 文件路径

    Raises:
        CatalogError: 目录中没有该名称
        DiagramError: 文件无法读取或内容不合法
    """
    if reference.startswith("catalog:"):
        return (catalog or DiagramCatalog()).load(reference[len("catalog:"):])
    path = Path(reference)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise DiagramError(f"cannot read {path}: {e.strerror or e}")
    d = parse_pd(text)
    if d.name is None:
        d = Diagram(crossings=d.crossings, free_loops=d.free_loops, name=path.stem)
    return d
