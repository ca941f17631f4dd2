"""
有向链环图（PD 代码）

支持：
- PD 文本的解析、校验与序列化（标签规范化、往返一致）
- 镜像、状态光滑化与圆周计数
- A/B 充分性判定
- 由旋转系统追踪平面区域
- 在重新编号意义下比较两个图
"""

import hashlib
import json
import re
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Dict, FrozenSet, Iterator, List, NamedTuple, Optional, Sequence, Set, Tuple

import networkx as nx
from networkx.utils import UnionFind

from . import conventions
from .conventions import SeifertType, Smoothing
from .errors import DiagramError

Dart = Tuple[int, int]  # (交叉在列表中的下标, 位置)
Hint = Tuple[Dart, bool]  # (半边, 是否为入口)


@dataclass(frozen=True)
class Crossing:
    """交叉：四个弧标签按逆时针排列，从进入的下穿线开始"""
    id: int
    arcs: Tuple[int, int, int, int]
    sign: int

    @property
    def seifert_type(self) -> SeifertType:
        return conventions.seifert_type(self.sign)

    @property
    def outgoing_positions(self) -> Tuple[int, int]:
        # 位置 2 总是下穿线的出口
        return (2, 1) if self.sign > 0 else (2, 3)

    @property
    def incoming_positions(self) -> Tuple[int, int]:
        return (0, 3) if self.sign > 0 else (0, 1)

    def smoothing_arcs(self, choice: Smoothing) -> Tuple[Tuple[int, int], Tuple[int, int]]:
        (p, q), (r, s) = conventions.smoothing_pairs(choice)
        return (self.arcs[p], self.arcs[q]), (self.arcs[r], self.arcs[s])


@dataclass(frozen=True)
class Diagram:
    """
    有向链环图

    crossings 的 id 为 1..n，按文件顺序排列。没有交叉的平凡圈记在 free_loops 中，
    它们的标签排在所有交叉弧之后。
    """
    crossings: Tuple[Crossing, ...]
    free_loops: int = 0
    name: Optional[str] = field(default=None, compare=False)

    @property
    def n(self) -> int:
        return len(self.crossings)

    @property
    def arc_count(self) -> int:
        return 2 * self.n + self.free_loops

    @property
    def writhe(self) -> int:
        return sum(c.sign for c in self.crossings)

    def crossing(self, crossing_id: int) -> Crossing:
        for c in self.crossings:
            if c.id == crossing_id:
                return c
        raise DiagramError(f"unknown crossing {crossing_id}")

    def index_of(self, crossing_id: int) -> int:
        for i, c in enumerate(self.crossings):
            if c.id == crossing_id:
                return i
        raise DiagramError(f"unknown crossing {crossing_id}")

    @cached_property
    def successor(self) -> Dict[int, int]:
        """沿定向的下一条弧"""
        nxt = {}
        for c in self.crossings:
            a, b, cc, d = c.arcs
            nxt[a] = cc
            if c.sign > 0:
                nxt[d] = b
            else:
                nxt[b] = d
        return nxt

    @cached_property
    def components(self) -> Tuple[Tuple[int, ...], ...]:
        """各分支上的弧，按定向顺序，从最小标签开始"""
        nxt = self.successor
        seen: Set[int] = set()
        result = []
        for start in sorted(nxt):
            if start in seen:
                continue
            cycle = []
            label = start
            while label not in seen:
                seen.add(label)
                cycle.append(label)
                label = nxt[label]
            result.append(tuple(cycle))
        first_loop = 2 * self.n + 1
        result.extend((label,) for label in range(first_loop, first_loop + self.free_loops))
        return tuple(result)

    def digest(self) -> str:
        """序列化文本的短哈希，用于报告"""
        return hashlib.sha256(serialize(self).encode("utf-8")).hexdigest()[:16]

    def to_dict(self) -> Dict:
        return {
            "name": self.name,
            "crossings": [list(c.arcs) for c in self.crossings],
            "signs": [c.sign for c in self.crossings],
            "free_loops": self.free_loops,
        }


@dataclass(frozen=True)
class State:
    """状态：交叉 id -> +1（A 光滑化）或 -1（B 光滑化）"""
    assignment: Dict[int, int]

    @property
    def sigma(self) -> int:
        return sum(self.assignment.values())

    def flipped(self, crossing_id: int) -> "State":
        changed = dict(self.assignment)
        changed[crossing_id] = -changed[crossing_id]
        return State(changed)


@dataclass(frozen=True)
class SmoothingResult:
    circle_count: int
    touch: Dict[int, Tuple[int, int]]
    circles: Tuple[FrozenSet[int], ...]


@dataclass(frozen=True)
class Violation:
    kind: str
    detail: str
    label: Optional[int] = None

    def __str__(self) -> str:
        return f"{self.kind}: {self.detail}"


class ArcSide(NamedTuple):
    """弧的一侧：side = +1 为沿定向的左侧，-1 为右侧"""
    arc: int
    side: int


@dataclass(frozen=True)
class FaceMap:
    faces: Tuple[Tuple[ArcSide, ...], ...]
    dart_face: Dict[Tuple[int, int], int]  # (交叉 id, 位置) -> 区域编号
    side_face: Dict[ArcSide, int]


# ---------------------------------------------------------------------------
# 定向与标签规范化
# ---------------------------------------------------------------------------

@dataclass
class _Orientation:
    heads: Set[Dart]
    strands: List[List[Dart]]  # 每条分支上的入口半边，按定向顺序
    conflicts: int
    hintless: int


def _trace_strands(tuples: Sequence[Sequence[int]]) -> List[List[Dart]]:
    occurrences: Dict[int, List[Dart]] = defaultdict(list)
    for i, t in enumerate(tuples):
        for p, label in enumerate(t):
            occurrences[label].append((i, p))

    seen: Set[Dart] = set()
    strands = []
    for i in range(len(tuples)):
        for p in range(4):
            if (i, p) in seen:
                continue
            entries = []
            dart = (i, p)
            while dart not in seen:
                entries.append(dart)
                j, q = dart
                leave = (j, (q + 2) % 4)
                seen.add(dart)
                seen.add(leave)
                first, second = occurrences[tuples[j][leave[1]]]
                dart = second if first == leave else first
            strands.append(entries)
    return strands


def _entry_labels(tuples: Sequence[Sequence[int]], entries: Sequence[Dart]) -> List[int]:
    return [tuples[j][q] for j, q in entries]


def _reverse(entries: Sequence[Dart]) -> List[Dart]:
    leaves = [(j, (q + 2) % 4) for j, q in entries]
    return leaves[::-1]


def _orient(
    tuples: Sequence[Sequence[int]],
    hints: Sequence[Hint],
    strict: bool,
    choices: Sequence[bool] = (),
) -> _Orientation:
    """
    为每条分支选择方向

    hints 按优先级排列，第一条落在某分支上的提示决定该分支方向；strict 模式下
    同一分支上的矛盾提示会报错。没有提示的分支让最小标签的后继取较小的邻居，
    choices 可以逐条翻转这些分支。
    """
    heads: Set[Dart] = set()
    oriented = []
    conflicts = 0
    hintless = 0
    for entries in _trace_strands(tuples):
        members = set(entries)
        decision = None
        for dart, is_head in hints:
            if dart not in members and (dart[0], (dart[1] + 2) % 4) not in members:
                continue
            forward = (dart in members) == is_head
            if decision is None:
                decision = forward
            elif decision != forward:
                conflicts += 1
                if strict:
                    label = tuples[dart[0]][dart[1]]
                    raise DiagramError(
                        f"orientation: strand through arc {label} is oriented inconsistently",
                        [Violation("orientation", "inconsistent under-strand directions", label)],
                    )
        if decision is None:
            labels = _entry_labels(tuples, entries)
            k = labels.index(min(labels))
            decision = labels[(k + 1) % len(labels)] <= labels[k - 1]
            if hintless < len(choices) and choices[hintless]:
                decision = not decision
            hintless += 1
        chosen = list(entries) if decision else _reverse(entries)
        heads.update(chosen)
        oriented.append(chosen)
    return _Orientation(heads=heads, strands=oriented, conflicts=conflicts, hintless=hintless)


def _assemble(
    tuples: Sequence[Sequence[int]],
    orientation: _Orientation,
    free_loops: int,
    name: Optional[str],
    ids: Optional[Sequence[int]] = None,
) -> Diagram:
    """按定向旋转交叉元组、计算符号并规范化弧标签"""
    over_entry = conventions.load_conventions().positive_over_entry
    rotated = []
    signs = []
    for i, t in enumerate(tuples):
        r = 0 if (i, 0) in orientation.heads else 2
        rotated.append(tuple(t[(p + r) % 4] for p in range(4)))
        signs.append(1 if (i, (over_entry + r) % 4) in orientation.heads else -1)

    sequences = [_entry_labels(tuples, entries) for entries in orientation.strands]
    sequences.sort(key=min)
    relabel: Dict[int, int] = {}
    for seq in sequences:
        k = seq.index(min(seq))
        for label in seq[k:] + seq[:k]:
            relabel[label] = len(relabel) + 1

    crossings = tuple(
        Crossing(
            id=(ids[i] if ids is not None else i + 1),
            arcs=tuple(relabel[a] for a in t),
            sign=signs[i],
        )
        for i, t in enumerate(rotated)
    )
    return Diagram(crossings=crossings, free_loops=free_loops, name=name)


def build_diagram(
    tuples: Sequence[Sequence[int]],
    hints: Sequence[Hint] = (),
    free_loops: int = 0,
    name: Optional[str] = None,
    strict: bool = False,
    choices: Sequence[bool] = (),
) -> Diagram:
    """由下穿线位于位置 0/2 的无向交叉元组构造规范化的有向图"""
    orientation = _orient(tuples, hints, strict=strict, choices=choices)
    return _assemble(tuples, orientation, free_loops, name)


@dataclass(frozen=True)
class Assembly:
    diagram: Diagram
    conflicts: int  # 与优先提示矛盾的提示数
    hintless: int  # 没有任何提示的分支数


def assemble_with_hints(
    tuples: Sequence[Sequence[int]],
    hints: Sequence[Hint],
    free_loops: int = 0,
    name: Optional[str] = None,
    choices: Sequence[bool] = (),
) -> Assembly:
    """与 build_diagram 相同，但同时报告提示冲突和无提示分支的个数"""
    orientation = _orient(tuples, hints, strict=False, choices=choices)
    return Assembly(
        diagram=_assemble(tuples, orientation, free_loops, name),
        conflicts=orientation.conflicts,
        hintless=orientation.hintless,
    )


# ---------------------------------------------------------------------------
# PD 文本
# ---------------------------------------------------------------------------

_CROSSING_LINE = re.compile(r"^X\s+(-?\d+)\s+(-?\d+)\s+(-?\d+)\s+(-?\d+)$")


def parse_pd(text: str) -> Diagram:
    """
    解析 PD 文本

    每行一个交叉 `X a b c d`；`#` 之后为注释；可选的 `name <名称>` 和
    `loops <k>` 头部行。行内可以用 `/` 分隔多个交叉。

    Raises:
        DiagramError: 行格式错误、弧重数错误或图不满足校验
    """
    name = None
    loops = None
    tuples: List[Tuple[int, int, int, int]] = []
    for lineno, raw_line in enumerate(text.splitlines(), 1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("name"):
            name = line[4:].strip() or None
            continue
        if line.startswith("loops"):
            try:
                loops = int(line[5:].strip())
            except ValueError:
                raise DiagramError(f"line {lineno}: malformed loops header '{raw_line.strip()}'")
            if loops < 0:
                raise DiagramError(f"line {lineno}: negative loop count")
            continue
        for chunk in line.split("/"):
            chunk = chunk.strip()
            if not chunk:
                continue
            match = _CROSSING_LINE.match(chunk)
            if not match:
                raise DiagramError(f"line {lineno}: malformed crossing '{chunk}'")
            tuples.append(tuple(int(g) for g in match.groups()))

    counts = Counter(label for t in tuples for label in t)
    bad = [Violation("arc multiplicity", f"arc {label} appears {k} times", label)
           for label, k in sorted(counts.items()) if k != 2]
    if bad:
        raise DiagramError(f"arc multiplicity: {bad[0].detail}", bad)

    if loops is None:
        loops = 0 if tuples else 1
    hints = [((i, 0), True) for i in range(len(tuples))]
    diagram = build_diagram(tuples, hints, free_loops=loops, name=name, strict=True)

    violations = validate(diagram)
    if violations:
        raise DiagramError(f"{violations[0].kind}: {violations[0].detail}", violations)
    return diagram


def serialize(d: Diagram) -> str:
    """序列化为 PD 文本；parse_pd(serialize(d)) == d"""
    lines = []
    if d.name:
        lines.append(f"name {d.name}")
    if d.free_loops != (0 if d.n else 1):
        lines.append(f"loops {d.free_loops}")
    lines.extend("X " + " ".join(str(a) for a in c.arcs) for c in d.crossings)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# 校验
# ---------------------------------------------------------------------------

def _trace_dart_faces(crossings: Sequence[Crossing]) -> List[List[Dart]]:
    """sigma∘alpha 的轨道即区域"""
    occurrences: Dict[int, List[Dart]] = defaultdict(list)
    for i, c in enumerate(crossings):
        for p, label in enumerate(c.arcs):
            occurrences[label].append((i, p))

    def alpha(dart: Dart) -> Dart:
        first, second = occurrences[crossings[dart[0]].arcs[dart[1]]]
        return second if first == dart else first

    seen: Set[Dart] = set()
    orbits = []
    for i in range(len(crossings)):
        for p in range(4):
            if (i, p) in seen:
                continue
            orbit = []
            dart = (i, p)
            while dart not in seen:
                seen.add(dart)
                orbit.append(dart)
                j, q = alpha(dart)
                dart = (j, (q + 1) % 4)
            orbits.append(orbit)
    return orbits


def _crossing_graph(d: Diagram) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(c.id for c in d.crossings)
    owner: Dict[int, int] = {}
    for c in d.crossings:
        for label in c.arcs:
            if label in owner and owner[label] != c.id:
                g.add_edge(owner[label], c.id)
            owner[label] = c.id
    return g


def is_split(d: Diagram) -> bool:
    if d.n == 0:
        return d.free_loops != 1
    return d.free_loops > 0 or not nx.is_connected(_crossing_graph(d))


def validate(d: Diagram) -> List[Violation]:
    """列出图违反的每条不变量，空列表表示合法"""
    violations: List[Violation] = []
    counts = Counter(label for c in d.crossings for label in c.arcs)
    for label, k in sorted(counts.items()):
        if k != 2:
            violations.append(Violation("arc multiplicity", f"arc {label} appears {k} times", label))
    if violations:
        return violations

    expected = set(range(1, 2 * d.n + 1))
    if set(counts) != expected:
        stray = sorted(set(counts) - expected)
        violations.append(Violation("labels", f"labels are not 1..{2 * d.n}", stray[0] if stray else None))
        return violations

    if any(c.sign not in (1, -1) for c in d.crossings):
        violations.append(Violation("orientation", "crossing sign must be +1 or -1"))
        return violations

    heads = Counter()
    for c in d.crossings:
        for p in c.incoming_positions:
            heads[c.arcs[p]] += 1
    for label in sorted(expected):
        if heads[label] != 1:
            violations.append(Violation(
                "orientation", f"arc {label} enters {heads[label]} crossings", label))
    if violations:
        return violations

    for component in d.components:
        start = component[0]
        if list(component) != list(range(start, start + len(component))):
            violations.append(Violation(
                "labels", f"component through arc {start} is not numbered consecutively", start))

    if is_split(d):
        violations.append(Violation("split", "diagram is not connected"))
        return violations

    if d.n:
        face_count = len(_trace_dart_faces(d.crossings))
        if face_count != d.n + 2:
            violations.append(Violation(
                "planarity", f"{face_count} faces traced, expected {d.n + 2} (Euler defect)"))
            return violations

        seifert = resolve(d, State({c.id: conventions.seifert_smoothing(c.sign).value
                                    for c in d.crossings}))
        for cid, (u, v) in sorted(seifert.touch.items()):
            if u == v:
                violations.append(Violation(
                    "seifert loop", f"crossing {cid} joins a Seifert circle to itself"))
    return violations


# ---------------------------------------------------------------------------
# 镜像、状态与充分性
# ---------------------------------------------------------------------------

def mirror(d: Diagram) -> Diagram:
    """交换每个交叉的上下线；弧与定向不变"""
    flipped = []
    for c in d.crossings:
        a, b, cc, dd = c.arcs
        arcs = (dd, a, b, cc) if c.sign > 0 else (b, cc, dd, a)
        flipped.append(Crossing(id=c.id, arcs=arcs, sign=-c.sign))
    return Diagram(crossings=tuple(flipped), free_loops=d.free_loops, name=d.name)


def all_A(d: Diagram) -> State:
    return State({c.id: Smoothing.A.value for c in d.crossings})


def all_B(d: Diagram) -> State:
    return State({c.id: Smoothing.B.value for c in d.crossings})


def resolve(d: Diagram, s: State) -> SmoothingResult:
    """
    光滑化所有交叉并计数圆周

    Raises:
        DiagramError: 状态没有覆盖所有交叉
    """
    missing = [c.id for c in d.crossings if c.id not in s.assignment]
    if missing:
        raise DiagramError(f"partial state: crossing {missing[0]} has no smoothing")

    uf = UnionFind(range(1, d.arc_count + 1))
    pairs = {}
    for c in d.crossings:
        first, second = c.smoothing_arcs(Smoothing(s.assignment[c.id]))
        uf.union(*first)
        uf.union(*second)
        pairs[c.id] = (first[0], second[0])

    circles = sorted((frozenset(group) for group in uf.to_sets()), key=min)
    circle_of = {label: k for k, group in enumerate(circles) for label in group}
    touch = {cid: (circle_of[u], circle_of[v]) for cid, (u, v) in pairs.items()}
    return SmoothingResult(circle_count=len(circles), touch=touch, circles=tuple(circles))


def state_circle_count(d: Diagram, s: State) -> int:
    return resolve(d, s).circle_count


def _touch_is_separated(result: SmoothingResult) -> bool:
    return all(u != v for u, v in result.touch.values())


def is_A_adequate(d: Diagram) -> bool:
    return _touch_is_separated(resolve(d, all_A(d)))


def is_B_adequate(d: Diagram) -> bool:
    return _touch_is_separated(resolve(d, all_B(d)))


def is_adequate(d: Diagram) -> bool:
    return is_A_adequate(d) and is_B_adequate(d)


# ---------------------------------------------------------------------------
# 区域
# ---------------------------------------------------------------------------

@lru_cache(maxsize=512)
def face_map(d: Diagram) -> FaceMap:
    """
    追踪平面区域

    从交叉出发的半边，其区域在行进方向右侧；角 (p, p+1) 的区域是位置 p+1 处半边的区域。

    Raises:
        DiagramError: 图不连通
    """
    if is_split(d):
        raise DiagramError("faces are only defined for connected diagrams")
    if d.n == 0:
        faces = ((ArcSide(1, -1),), (ArcSide(1, 1),))
        return FaceMap(faces=faces, dart_face={}, side_face={faces[0][0]: 0, faces[1][0]: 1})

    def side_of(i: int, p: int) -> ArcSide:
        c = d.crossings[i]
        return ArcSide(c.arcs[p], -1 if p in c.outgoing_positions else 1)

    raw = []
    for orbit in _trace_dart_faces(d.crossings):
        sides = [side_of(i, p) for i, p in orbit]
        k = sides.index(min(sides))
        raw.append((sides[k:] + sides[:k], orbit))
    raw.sort(key=lambda item: item[0][0])

    dart_face = {}
    side_face = {}
    for index, (sides, orbit) in enumerate(raw):
        for i, p in orbit:
            dart_face[(d.crossings[i].id, p)] = index
        for side in sides:
            side_face[side] = index
    return FaceMap(faces=tuple(tuple(s) for s, _ in raw), dart_face=dart_face, side_face=side_face)


def faces(d: Diagram) -> List[Tuple[ArcSide, ...]]:
    return list(face_map(d).faces)


# ---------------------------------------------------------------------------
# 重新编号意义下的比较
# ---------------------------------------------------------------------------

def _labelling_from(d: Diagram, start: int) -> Dict[int, int]:
    nxt = d.successor
    entering: Dict[int, Crossing] = {}
    for c in d.crossings:
        for p in c.incoming_positions:
            entering[c.arcs[p]] = c

    labels: Dict[int, int] = {}
    order: List[int] = []

    def walk(first: int):
        label = first
        while label not in labels:
            labels[label] = len(labels) + 1
            order.append(label)
            label = nxt[label]

    walk(start)
    k = 0
    while k < len(order):
        label = order[k]
        c = entering[label]
        if label == c.arcs[0]:
            other = c.arcs[3] if c.sign > 0 else c.arcs[1]
        else:
            other = c.arcs[0]
        if other not in labels:
            walk(other)
        k += 1
    for component in d.components:
        if component[0] not in labels and component[0] in nxt:
            walk(component[0])
    return labels


def canonical_key(d: Diagram) -> Tuple:
    """与弧标签、交叉顺序无关的规范形式"""
    if d.n == 0:
        return ((), d.free_loops)
    best = None
    for start in sorted(d.successor):
        labels = _labelling_from(d, start)
        key = tuple(sorted(tuple(labels[a] for a in c.arcs) + (c.sign,) for c in d.crossings))
        if best is None or key < best:
            best = key
    return (best, d.free_loops)


def same_up_to_relabeling(first: Diagram, second: Diagram) -> bool:
    return first.n == second.n and canonical_key(first) == canonical_key(second)


def iter_states(d: Diagram) -> Iterator[State]:
    """按交叉 id 的字典序枚举全部状态（A 在前）"""
    ids = [c.id for c in sorted(d.crossings, key=lambda c: c.id)]
    for mask in range(2 ** len(ids)):
        yield State({cid: (-1 if mask >> (len(ids) - 1 - k) & 1 else 1) for k, cid in enumerate(ids)})


def to_json(d: Diagram) -> str:
    return json.dumps(d.to_dict(), sort_keys=True)
