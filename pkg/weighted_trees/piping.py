"""
파이프 모델 모듈
- 삼가 노드 변환 T / 역변환 S
- 트리 수준 T_T (가중치 → 평면 현 다중그래프), S_T (다중그래프 → 가중치)
- 현 다중도 N_ij 조회, JSON / DOT 출력
"""

import itertools
import json
import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Tuple, Union

import numpy as np
from typing_extensions import TypeAlias

from .trees import Tree
from .utils import InputFormatError, PipingError, require_int
from .weightings import Weighting, delta2, is_member, pipe_counts

# 로깅 설정
logger = logging.getLogger(__name__)

Chord: TypeAlias = Tuple[int, int]

# =============================================================================
# 삼가 노드 변환
# =============================================================================

@dataclass(frozen=True)
class TrinodeCoords:
    """삼가 노드에서 세 변 사이의 파이프 개수"""
    x12: int
    x13: int
    x23: int

    def __post_init__(self):
        for name in ('x12', 'x13', 'x23'):
            if getattr(self, name) < 0:
                raise PipingError(f"파이프 좌표 {name}가 음수입니다: {getattr(self, name)}")


def trinode_T(w1: int, w2: int, w3: int) -> TrinodeCoords:
    """x_ij = (w_i + w_j - w_k) / 2"""
    if not delta2(w1, w2, w3):
        raise PipingError(f"Δ₂ 조건을 만족하지 않는 삼가 노드 가중치: {(w1, w2, w3)}")
    return TrinodeCoords((w1 + w2 - w3) // 2, (w1 + w3 - w2) // 2, (w2 + w3 - w1) // 2)


def trinode_S(x: TrinodeCoords) -> Tuple[int, int, int]:
    """w_i = x_ij + x_ik"""
    if min(x.x12, x.x13, x.x23) < 0:
        raise PipingError(f"파이프 좌표가 음수입니다: {x}")
    return x.x12 + x.x13, x.x12 + x.x23, x.x13 + x.x23

# =============================================================================
# 파이프 그래프
# =============================================================================

def _normalize_chords(n: int, multiplicity: Mapping[Chord, int]) -> Tuple[Tuple[Chord, int], ...]:
    merged: Dict[Chord, int] = {}
    for raw, m in multiplicity.items():
        i, j = (int(v) for v in raw)
        if i == j:
            raise PipingError(f"현의 두 끝이 같은 잎입니다: {[i, j]}")
        if not (1 <= i <= n and 1 <= j <= n):
            raise PipingError(f"잎 번호 범위 초과: {[i, j]} (1..{n})")
        if isinstance(m, bool) or not isinstance(m, (int, np.integer)) or m < 0:
            raise PipingError(f"현 {[i, j]}의 다중도는 음이 아닌 정수여야 합니다: {m!r}")
        key = (min(i, j), max(i, j))
        merged[key] = merged.get(key, 0) + int(m)
    return tuple(sorted((k, m) for k, m in merged.items() if m))


@dataclass(frozen=True)
class PipingGraph:
    """
    잎 쌍 현의 다중집합

    multiplicity는 (i < j, 다중도 > 0) 항목만 정렬해 보관한다.
    planar_certified는 tree_T가 만든 그래프에만 True로 설정된다.
    """
    n_leaves: int
    multiplicity: Tuple[Tuple[Chord, int], ...] = ()
    planar_certified: bool = field(default=False, compare=False)

    def __post_init__(self):
        if isinstance(self.n_leaves, bool) or not isinstance(self.n_leaves, int) or self.n_leaves < 3:
            raise PipingError(f"잎 개수는 3 이상의 정수여야 합니다: {self.n_leaves!r}")
        raw = self.multiplicity
        if not isinstance(raw, Mapping):
            raw = dict(raw)
        object.__setattr__(self, 'multiplicity', _normalize_chords(self.n_leaves, raw))

    @property
    def chords(self) -> Dict[Chord, int]:
        return dict(self.multiplicity)

    def n_ij(self, i: int, j: int) -> int:
        for leaf in (i, j):
            if not 1 <= leaf <= self.n_leaves:
                raise PipingError(f"잎 번호 범위 초과: {leaf} (1..{self.n_leaves})")
        if i == j:
            return 0
        return self.chords.get((min(i, j), max(i, j)), 0)

    def degree(self, i: int) -> int:
        """잎 i에 닿는 현의 총 다중도"""
        return sum(m for (a, b), m in self.multiplicity if i in (a, b))

    def total(self) -> int:
        return sum(m for _, m in self.multiplicity)

    def to_matrix(self) -> np.ndarray:
        """대칭 n×n 정수 행렬 (대각 0, 인덱스는 잎 번호 - 1)"""
        matrix = np.zeros((self.n_leaves, self.n_leaves), dtype=np.int64)
        for (i, j), m in self.multiplicity:
            matrix[i - 1, j - 1] = m
            matrix[j - 1, i - 1] = m
        return matrix

    def minus(self, other: 'PipingGraph') -> 'PipingGraph':
        """현별 다중도 차 (음수가 되면 에러)"""
        if other.n_leaves != self.n_leaves:
            raise PipingError(f"잎 개수 불일치: {self.n_leaves} vs {other.n_leaves}")
        mine = self.chords
        for chord, m in other.multiplicity:
            left = mine.get(chord, 0) - m
            if left < 0:
                raise PipingError(f"현 {list(chord)}의 다중도가 음수가 됩니다: {left}")
            mine[chord] = left
        return PipingGraph(self.n_leaves, mine)

    def to_json(self) -> Dict[str, Any]:
        return {
            "n": self.n_leaves,
            "chords": [{"ends": [i, j], "mult": m} for (i, j), m in self.multiplicity],
        }

    def to_dot(self, name: str = "piping") -> str:
        """잎을 원 위에 배치한 DOT 그래프 (neato 좌표 고정)"""
        n = self.n_leaves
        lines = [f"graph {name} {{", "  node [shape=circle];"]
        for i in range(1, n + 1):
            angle = math.pi / 2 - 2 * math.pi * (i - 1) / n
            lines.append(f'  {i} [pos="{math.cos(angle):.3f},{math.sin(angle):.3f}!"];')
        for (i, j), m in self.multiplicity:
            attrs = "" if m == 1 else f' [label="{m}", penwidth={min(m, 8)}]'
            lines.append(f"  {i} -- {j}{attrs};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def piping_from_json(data: Union[str, Dict[str, Any]]) -> PipingGraph:
    """{"n": 6, "chords": [{"ends": [1,4], "mult": 2}, ...]}"""
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as e:
            raise InputFormatError(f"파이프 그래프 JSON 파싱 실패: {e}")
    if not isinstance(data, dict):
        raise InputFormatError("파이프 그래프 JSON은 객체여야 합니다")
    if "n" not in data:
        raise InputFormatError("파이프 그래프 JSON에 필드 'n'이 없습니다")
    chords = data.get("chords", [])
    if not isinstance(chords, list):
        raise InputFormatError("필드 'chords'는 목록이어야 합니다")

    multiplicity: Dict[Chord, int] = {}
    for idx, chord in enumerate(chords):
        if not isinstance(chord, dict) or "ends" not in chord:
            raise InputFormatError(f"필드 'chords[{idx}].ends'가 없습니다")
        ends = chord["ends"]
        if not isinstance(ends, list) or len(ends) != 2:
            raise InputFormatError(f"필드 'chords[{idx}].ends'는 잎 두 개의 목록이어야 합니다")
        i, j = (require_int(v, f"chords[{idx}].ends") for v in ends)
        key = (min(i, j), max(i, j))
        m = require_int(chord.get("mult", 1), f"chords[{idx}].mult")
        if key in multiplicity:
            multiplicity[key] += m
        else:
            multiplicity[key] = m
    return PipingGraph(require_int(data["n"], "n"), multiplicity)


def n_cycle(n: int) -> PipingGraph:
    """평면 n-순환: 이웃한 잎 쌍마다 다중도 1"""
    chords = {(i, i + 1): 1 for i in range(1, n)}
    chords[(1, n)] = 1
    return PipingGraph(n, chords, planar_certified=True)


def empty_graph(n: int) -> PipingGraph:
    return PipingGraph(n, {}, planar_certified=True)


def graph_from_matrix(matrix, planar_certified: bool = False) -> PipingGraph:
    """대칭 음이 아닌 정수 행렬 (대각 0)에서 그래프 생성"""
    array = np.asarray(matrix)
    if array.ndim != 2 or array.shape[0] != array.shape[1]:
        raise PipingError(f"정사각 행렬이 필요합니다: shape={array.shape}")
    if not np.array_equal(array, array.T):
        raise PipingError("N_ij 행렬이 대칭이 아닙니다")
    if np.any(np.diag(array) != 0):
        raise PipingError("N_ij 행렬의 대각 성분은 0이어야 합니다")
    n = array.shape[0]
    chords = {
        (i + 1, j + 1): int(array[i, j])
        for i in range(n) for j in range(i + 1, n) if array[i, j]
    }
    return PipingGraph(n, chords, planar_certified=planar_certified)


def n_ij(graph: PipingGraph, i: int, j: int) -> int:
    return graph.n_ij(i, j)


def is_noncrossing(graph: PipingGraph) -> bool:
    """
    원 위의 잎 1..n에 현을 그렸을 때 서로 교차하는 쌍이 없는지 판정

    끝점을 공유하는 현은 교차하지 않는 것으로 본다.
    """
    chords = [chord for chord, _ in graph.multiplicity]
    for (a, b), (c, d) in itertools.combinations(chords, 2):
        if a < c < b < d or c < a < d < b:
            return False
    return True

# =============================================================================
# 트리 수준 변환
# =============================================================================

# pipe_counts 결과 (x01, x12, x20)의 인덱스
_PAIR_SLOT = {frozenset((0, 1)): 0, frozenset((1, 2)): 1, frozenset((0, 2)): 2}


def _pair_count(counts: Tuple[int, int, int], p: int, q: int) -> int:
    return counts[_PAIR_SLOT[frozenset((p, q))]]


def _turn(weights: Tuple[int, int, int], counts: Tuple[int, int, int],
          pos: int, slot: int) -> Tuple[int, int]:
    """
    삼가 노드 안에서 파이프 끝 하나를 따라가기

    슬롯은 각 변에서 반시계 방향으로 번호를 매긴다. 앞 변과 이어진 파이프가
    먼저 오고, 모퉁이를 사이에 둔 슬롯끼리 역순으로 짝지어진다.
    """
    prev, nxt = (pos + 2) % 3, (pos + 1) % 3
    if slot < _pair_count(counts, prev, pos):
        return prev, weights[prev] - 1 - slot
    return nxt, weights[pos] - 1 - slot


def tree_T(tree: Tree, omega: Weighting) -> PipingGraph:
    """
    가중치를 평면 현 다중그래프로 변환

    각 삼가 노드에 파이프를 배치하고, 변을 건널 때 슬롯 순서를 뒤집어
    교차 없이 잇는다. 잎에서 출발한 파이프를 반대편 잎까지 추적해 N_ij를 센다.
    """
    if not is_member(tree, omega):
        raise PipingError(f"반군 원소가 아닌 가중치는 파이프 그래프로 바꿀 수 없습니다: {list(omega.values)}")

    values = omega.values
    weights = [omega.at_trinode(t) for t in range(len(tree.trinodes))]
    counts = [pipe_counts(*w) for w in weights]

    n = tree.n_leaves
    matrix = np.zeros((n, n), dtype=np.int64)
    for leaf in tree.leaf_edges:
        (start_t, start_pos), = tree.edge_trinodes[leaf]
        for s in range(values[leaf]):
            t, pos, slot = start_t, start_pos, s
            while True:
                out_pos, out_slot = _turn(weights[t], counts[t], pos, slot)
                edge = tree.trinodes[t][out_pos]
                if tree.is_leaf_edge(edge):
                    end = edge
                    break
                t, pos = next(x for x in tree.edge_trinodes[edge] if x[0] != t)
                slot = values[edge] - 1 - out_slot
            if end == leaf:
                raise PipingError(f"잎 {leaf + 1}에서 출발한 파이프가 같은 잎으로 돌아왔습니다")
            if leaf < end:
                matrix[leaf, end] += 1
                matrix[end, leaf] += 1

    graph = graph_from_matrix(matrix, planar_certified=True)
    logger.debug(f"T_T 변환 완료: 잎 {n}개, 현 {graph.total()}개")
    return graph


def graph_S(tree: Tree, graph: PipingGraph) -> Weighting:
    """
    현 다중그래프를 가중치로 변환 (평면이 아니어도 허용)

    현 (i, j)의 다중도 m만큼 두 잎 사이 트리 경로의 모든 변에 더한다.
    """
    if graph.n_leaves != tree.n_leaves:
        raise PipingError(f"잎 개수 불일치: 그래프 {graph.n_leaves}, 트리 {tree.n_leaves}")

    values: List[int] = [0] * tree.n_edges
    for (i, j), m in graph.multiplicity:
        values[i - 1] += m
        values[j - 1] += m
        for e in tree.internal_edges:
            a, b = tree.edge_labels[e]
            if (a <= i < b) != (a <= j < b):
                values[e] += m
    return Weighting(tree, tuple(values))
