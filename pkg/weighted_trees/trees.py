"""
평면 삼가(trivalent) 트리 모듈
- 볼록 n각형의 삼각분할로 트리 표현 (삼각형 = 내부 꼭짓점, 대각선 = 내부 변)
- 잎 i ↔ 다각형 변 (i, i+1 mod n)
- 삼각분할 검증, 전체 열거, 내부 변의 잎 분할 계산
"""

import itertools
import json
import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Dict, FrozenSet, List, Sequence, Tuple, Union

import networkx as nx
from typing_extensions import TypeAlias

from .config import Config
from .utils import InputFormatError, TreeValidationError, require_int

# 로깅 설정
logger = logging.getLogger(__name__)

Pair: TypeAlias = Tuple[int, int]
EdgeRef: TypeAlias = Union[int, Sequence[int]]


@dataclass(frozen=True)
class SearchStep:
    """
    섬유 탐색 단계 하나

    edge 값은 anchor 삼가 노드의 나머지 두 변으로 구간이 정해지고,
    checks의 각 쌍은 이 단계에서 완성되는 다른 삼가 노드의 나머지 두 변이다.
    """
    edge: int
    anchor: Tuple[int, int]
    checks: Tuple[Tuple[int, int], ...]


@dataclass(frozen=True)
class Tree:
    """
    n개의 순서 잎을 가진 평면 삼가 트리

    변 인덱스: 0..n-1은 잎 변 (잎 i는 인덱스 i-1), n 이후는 대각선을 사전순으로 정렬한 내부 변.
    생성은 build_tree()를 통해서만 한다.
    """
    n_leaves: int
    diagonals: Tuple[Pair, ...]
    edge_labels: Tuple[Pair, ...] = field(init=False, repr=False, compare=False)
    edge_index: Dict[Pair, int] = field(init=False, repr=False, compare=False)
    trinodes: Tuple[Tuple[int, int, int], ...] = field(init=False, repr=False, compare=False)
    edge_trinodes: Tuple[Tuple[Tuple[int, int], ...], ...] = field(init=False, repr=False, compare=False)
    search_order: Tuple[SearchStep, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = self.n_leaves
        sides = [(i, i + 1) for i in range(1, n)] + [(1, n)]
        labels = tuple(sides) + tuple(self.diagonals)
        index = {pair: i for i, pair in enumerate(labels)}

        # 삼각형 (a < b < c)의 반시계 방향 변 순서: (a,b) → (b,c) → (c,a)
        trinodes = tuple(
            (index[(a, b)], index[(b, c)], index[(a, c)])
            for a, b, c in itertools.combinations(range(1, n + 1), 3)
            if (a, b) in index and (b, c) in index and (a, c) in index
        )

        incidence: List[List[Tuple[int, int]]] = [[] for _ in labels]
        for t, edges in enumerate(trinodes):
            for pos, e in enumerate(edges):
                incidence[e].append((t, pos))

        object.__setattr__(self, 'edge_labels', labels)
        object.__setattr__(self, 'edge_index', index)
        object.__setattr__(self, 'trinodes', trinodes)
        object.__setattr__(self, 'edge_trinodes', tuple(tuple(x) for x in incidence))
        object.__setattr__(self, 'search_order', self._peel_order())

    # =============================================================================
    # 변 조회
    # =============================================================================
    @property
    def n_edges(self) -> int:
        return len(self.edge_labels)

    @property
    def leaf_edges(self) -> range:
        return range(self.n_leaves)

    @property
    def internal_edges(self) -> range:
        return range(self.n_leaves, self.n_edges)

    def is_leaf_edge(self, edge: int) -> bool:
        return 0 <= edge < self.n_leaves

    def resolve_edge(self, edge: EdgeRef) -> int:
        """
        변 참조를 인덱스로 변환

        Args:
            edge: 변 인덱스(int) 또는 꼭짓점 쌍 (a, b)

        Returns:
            변 인덱스
        """
        if isinstance(edge, int):
            if not 0 <= edge < self.n_edges:
                raise TreeValidationError(f"변 인덱스 범위 초과: {edge}")
            return edge
        pair = tuple(sorted(int(v) for v in edge))
        if pair not in self.edge_index:
            raise TreeValidationError(f"트리에 없는 변: {list(edge)}")
        return self.edge_index[pair]

    # =============================================================================
    # 파생 구조
    # =============================================================================
    def _peel_order(self) -> Tuple[SearchStep, ...]:
        """
        잎을 벗겨 가며 내부 변 순서 결정

        각 단계의 변은 이미 두 변이 정해진 삼가 노드에 붙어 있다.
        """
        determined = set(self.leaf_edges)
        steps = []
        while len(determined) < self.n_edges:
            for t, edges in enumerate(self.trinodes):
                open_edges = [e for e in edges if e not in determined]
                if len(open_edges) == 1:
                    break
            else:
                raise TreeValidationError("내부 변 순서를 정할 수 없습니다 (트리 구조 오류)")

            edge = open_edges[0]
            anchor = tuple(e for e in self.trinodes[t] if e != edge)
            determined.add(edge)

            checks = []
            for other, _pos in self.edge_trinodes[edge]:
                if other == t:
                    continue
                rest = tuple(e for e in self.trinodes[other] if e != edge)
                if all(e in determined for e in rest):
                    checks.append(rest)
            steps.append(SearchStep(edge, anchor, tuple(checks)))
        return tuple(steps)

    def to_networkx(self) -> nx.Graph:
        """
        쌍대 트리 그래프 생성

        노드: ("leaf", i), ("trinode", t) / 변 속성: edge(인덱스), label(꼭짓점 쌍)
        """
        graph = nx.Graph()
        graph.add_nodes_from(("leaf", i) for i in range(1, self.n_leaves + 1))
        graph.add_nodes_from(("trinode", t) for t in range(len(self.trinodes)))
        for e, incident in enumerate(self.edge_trinodes):
            ends = [("trinode", t) for t, _ in incident]
            if self.is_leaf_edge(e):
                ends.append(("leaf", e + 1))
            graph.add_edge(ends[0], ends[1], edge=e, label=self.edge_labels[e])
        return graph

# =============================================================================
# 생성 및 검증
# =============================================================================

def _normalize_pair(raw: Any, n: int) -> Pair:
    """대각선 한 개 검증 및 (작은 값, 큰 값) 정규화"""
    if isinstance(raw, (str, bytes)) or not hasattr(raw, '__len__') or len(raw) != 2:
        raise TreeValidationError(f"대각선은 꼭짓점 두 개의 쌍이어야 합니다: {raw!r}")
    try:
        a, b = (require_int(v, "diagonals") for v in raw)
    except InputFormatError:
        raise TreeValidationError(f"대각선 꼭짓점은 정수여야 합니다: {list(raw)!r}")
    if not (1 <= a <= n and 1 <= b <= n):
        raise TreeValidationError(f"대각선 {[a, b]}의 꼭짓점이 1..{n} 범위를 벗어났습니다")
    a, b = min(a, b), max(a, b)
    if b - a <= 1 or (a == 1 and b == n):
        raise TreeValidationError(f"대각선 {[a, b]}는 다각형의 변 또는 한 점입니다 (퇴화)")
    return (a, b)


def _crosses(p: Pair, q: Pair) -> bool:
    (a, b), (c, d) = p, q
    return a < c < b < d or c < a < d < b


def build_tree(n: int, diagonals: Sequence[Sequence[int]]) -> Tree:
    """
    삼각분할로부터 트리 생성

    Args:
        n: 잎 개수 (n ≥ 3)
        diagonals: 꼭짓점 쌍 목록, 정확히 n-3개

    Returns:
        검증된 Tree

    Raises:
        TreeValidationError: 교차, 개수 오류, 중복, 퇴화 대각선
    """
    if isinstance(n, bool) or not isinstance(n, int) or n < 3:
        raise TreeValidationError(f"잎 개수는 3 이상의 정수여야 합니다: {n!r}")

    pairs = [_normalize_pair(raw, n) for raw in diagonals]

    seen = set()
    for pair in pairs:
        if pair in seen:
            raise TreeValidationError(f"중복된 대각선: {list(pair)}")
        seen.add(pair)

    if len(pairs) != n - 3:
        raise TreeValidationError(
            f"대각선 개수 오류: n={n}이면 {n - 3}개가 필요하지만 {len(pairs)}개가 주어졌습니다"
        )

    for p, q in itertools.combinations(pairs, 2):
        if _crosses(p, q):
            raise TreeValidationError(f"교차하는 대각선: {list(p)}, {list(q)}")

    tree = Tree(n, tuple(sorted(pairs)))

    graph = tree.to_networkx()
    if len(tree.trinodes) != n - 2 or not nx.is_tree(graph):
        raise TreeValidationError(f"삼각분할이 트리를 만들지 않습니다: {sorted(pairs)}")

    return tree


def fan_tree(n: int) -> Tree:
    """부채꼴 삼각분할 {1,k} (k=3..n-1) = 애벌레(caterpillar) 트리"""
    return build_tree(n, [(1, k) for k in range(3, n)])


def catalan(m: int) -> int:
    return math.comb(2 * m, m) // (m + 1)

# =============================================================================
# 열거
# =============================================================================

@lru_cache(maxsize=None)
def _triangulations(lo: int, hi: int) -> Tuple[FrozenSet[Pair], ...]:
    """연속 꼭짓점 lo..hi 다각형(밑변 (lo, hi))의 모든 삼각분할"""
    if hi - lo < 2:
        return (frozenset(),)
    result = []
    for apex in range(lo + 1, hi):
        extra = set()
        if apex - lo > 1:
            extra.add((lo, apex))
        if hi - apex > 1:
            extra.add((apex, hi))
        for left in _triangulations(lo, apex):
            for right in _triangulations(apex, hi):
                result.append(left | right | frozenset(extra))
    return tuple(result)


def enumerate_trees(n: int) -> List[Tree]:
    """
    n각형의 모든 삼각분할 열거

    Args:
        n: 잎 개수 (3 ≤ n ≤ Config.MAX_LEAVES)

    Returns:
        대각선 목록 사전순으로 정렬된 Tree 목록 (Catalan(n-2)개)
    """
    if isinstance(n, bool) or not isinstance(n, int) or n < 3:
        raise TreeValidationError(f"잎 개수는 3 이상이어야 합니다: {n!r}")
    if n > Config.MAX_LEAVES:
        raise TreeValidationError(f"열거 상한 초과: n={n} > {Config.MAX_LEAVES} (WT_MAX_LEAVES)")

    keys = sorted({tuple(sorted(d)) for d in _triangulations(1, n)})
    trees = [build_tree(n, key) for key in keys]
    logger.info(f"n={n} 삼각분할 열거 완료: {len(trees)}개")
    return trees


def leaf_sides(tree: Tree, edge: EdgeRef) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """
    내부 변이 나누는 두 잎 구간

    Args:
        tree: 트리
        edge: 내부 변 (대각선 쌍 또는 변 인덱스)

    Returns:
        (a..b-1 잎들, 나머지 잎들): 각각 순환 순서의 연속 구간
    """
    e = tree.resolve_edge(edge)
    if tree.is_leaf_edge(e):
        raise TreeValidationError(f"잎 변은 내부 변이 아닙니다: {list(tree.edge_labels[e])}")
    a, b = tree.edge_labels[e]
    n = tree.n_leaves
    return tuple(range(a, b)), tuple(range(b, n + 1)) + tuple(range(1, a))

# =============================================================================
# JSON 입출력
# =============================================================================

def tree_to_json(tree: Tree) -> Dict[str, Any]:
    return {"n": tree.n_leaves, "diagonals": [list(d) for d in tree.diagonals]}


def tree_from_json(data: Union[str, Dict[str, Any]]) -> Tree:
    """
    JSON 문자열 또는 딕셔너리에서 트리 생성

    예: {"n": 6, "diagonals": [[1,3],[1,4],[1,5]]}
    """
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as e:
            raise InputFormatError(f"트리 JSON 파싱 실패: {e}")
    if not isinstance(data, dict):
        raise InputFormatError("트리 JSON은 객체여야 합니다")
    if "n" not in data:
        raise InputFormatError("트리 JSON에 필드 'n'이 없습니다")
    if "diagonals" not in data:
        raise InputFormatError("트리 JSON에 필드 'diagonals'가 없습니다")
    if not isinstance(data["diagonals"], list):
        raise InputFormatError("필드 'diagonals'는 목록이어야 합니다")
    return build_tree(require_int(data["n"], "n"), data["diagonals"])
