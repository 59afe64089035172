"""
반군 S_T(r) 모듈
- Δ₂ 조건 (삼각부등식 + 짝수 조건)
- 소속 판정, 차수 계산, 덧셈/뺄셈, 나눔 판정
- 내부점/경계점 판정
"""

import json
import logging
from dataclasses import dataclass
from typing import Any, Dict, Mapping, Optional, Sequence, Tuple, Union

from .trees import Tree
from .utils import InputFormatError, WeightingError, parse_int_list, require_int

# 로깅 설정
logger = logging.getLogger(__name__)

# =============================================================================
# 가중치 벡터 r
# =============================================================================

@dataclass(frozen=True)
class WeightVector:
    """잎 가중치 벡터 r (양의 정수, 합은 짝수)"""
    entries: Tuple[int, ...]

    def __post_init__(self):
        entries = tuple(self.entries)
        object.__setattr__(self, 'entries', entries)
        if len(entries) < 3:
            raise WeightingError(f"r은 최소 3개의 성분이 필요합니다: {list(entries)}")
        for i, value in enumerate(entries, start=1):
            if isinstance(value, bool) or not isinstance(value, int) or value < 1:
                raise WeightingError(f"r의 {i}번째 성분은 양의 정수여야 합니다: {value!r}")
        if sum(entries) % 2:
            raise WeightingError(f"r의 합이 홀수입니다: {list(entries)} (합 {sum(entries)})")

    @classmethod
    def parse(cls, text: str) -> 'WeightVector':
        """쉼표 구분 문자열 파싱 ("1,1,1,1")"""
        return cls(parse_int_list(text, "r"))

    @property
    def n(self) -> int:
        return len(self.entries)

    def scaled(self, k: int) -> Tuple[int, ...]:
        return tuple(k * x for x in self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i: int) -> int:
        return self.entries[i]

# =============================================================================
# 가중치 ω
# =============================================================================

@dataclass(frozen=True)
class Weighting:
    """트리의 각 변에 정수를 배정한 가중치 (변 인덱스 순서)"""
    tree: Tree
    values: Tuple[int, ...]

    def __post_init__(self):
        values = tuple(self.values)
        object.__setattr__(self, 'values', values)
        if len(values) != self.tree.n_edges:
            raise WeightingError(
                f"가중치 길이 오류: 변 {self.tree.n_edges}개에 값 {len(values)}개"
            )

    @classmethod
    def from_parts(cls, tree: Tree, leaf: Sequence[int],
                   internal: Optional[Mapping[Tuple[int, int], int]] = None) -> 'Weighting':
        """
        잎 가중치와 대각선별 내부 가중치로 생성

        Args:
            tree: 트리
            leaf: 잎 1..n의 가중치
            internal: 대각선 쌍 → 가중치 (빠진 대각선은 0)
        """
        if len(leaf) != tree.n_leaves:
            raise WeightingError(f"잎 가중치 개수 오류: {len(leaf)} (잎 {tree.n_leaves}개)")
        values = list(leaf) + [0] * (tree.n_edges - tree.n_leaves)
        for pair, value in (internal or {}).items():
            e = tree.resolve_edge(pair)
            if tree.is_leaf_edge(e):
                raise WeightingError(f"내부 가중치에 잎 변이 지정되었습니다: {list(pair)}")
            values[e] = value
        return cls(tree, tuple(values))

    @property
    def leaf_weights(self) -> Tuple[int, ...]:
        return self.values[:self.tree.n_leaves]

    @property
    def internal_weights(self) -> Tuple[int, ...]:
        return self.values[self.tree.n_leaves:]

    def value(self, edge) -> int:
        return self.values[self.tree.resolve_edge(edge)]

    def at_trinode(self, t: int) -> Tuple[int, int, int]:
        """삼가 노드 t의 세 변 값 (반시계 방향)"""
        e0, e1, e2 = self.tree.trinodes[t]
        return self.values[e0], self.values[e1], self.values[e2]

# =============================================================================
# Δ₂ 조건 및 파이프 좌표
# =============================================================================

def delta2(a: int, b: int, c: int) -> bool:
    """Δ₂(a, b, c): 음이 아니고, |a-b| ≤ c ≤ a+b, a+b+c 짝수"""
    return a >= 0 and b >= 0 and c >= 0 and abs(a - b) <= c <= a + b and (a + b + c) % 2 == 0


def pipe_counts(a: int, b: int, c: int) -> Tuple[int, int, int]:
    """
    삼가 노드 한 개의 파이프 개수 (x_ab, x_bc, x_ca)

    Δ₂가 성립할 때만 모두 음이 아닌 정수가 된다.
    """
    return (a + b - c) // 2, (b + c - a) // 2, (c + a - b) // 2


def _check_same_tree(tree: Tree, *weightings: Weighting) -> None:
    for w in weightings:
        if w.tree != tree:
            raise WeightingError("트리 불일치: 가중치가 다른 트리에 정의되어 있습니다")

# =============================================================================
# 반군 연산
# =============================================================================

def is_member(tree: Tree, omega: Weighting) -> bool:
    """모든 내부 꼭짓점에서 Δ₂가 성립하는지 판정"""
    _check_same_tree(tree, omega)
    values = omega.values
    return all(delta2(values[a], values[b], values[c]) for a, b, c in tree.trinodes)


def degree_of(tree: Tree, omega: Weighting, r: WeightVector) -> Optional[int]:
    """
    잎 가중치가 k·r이 되는 k 계산

    Returns:
        k (≥ 0) 또는 비례하지 않으면 None
    """
    _check_same_tree(tree, omega)
    if len(r) != tree.n_leaves:
        raise WeightingError(f"r 길이 {len(r)}가 잎 개수 {tree.n_leaves}와 다릅니다")
    leaves = omega.leaf_weights
    if leaves[0] % r[0]:
        return None
    k = leaves[0] // r[0]
    if k < 0 or any(w != k * x for w, x in zip(leaves, r)):
        return None
    return k


def add(omega: Weighting, other: Weighting) -> Weighting:
    _check_same_tree(omega.tree, other)
    return Weighting(omega.tree, tuple(x + y for x, y in zip(omega.values, other.values)))


def subtract(omega: Weighting, other: Weighting) -> Weighting:
    """변별 차 (음수 가능, 소속 여부는 호출자가 확인)"""
    _check_same_tree(omega.tree, other)
    return Weighting(omega.tree, tuple(x - y for x, y in zip(omega.values, other.values)))


def scale(omega: Weighting, k: int) -> Weighting:
    if k < 0:
        raise WeightingError(f"배율은 음이 아니어야 합니다: {k}")
    return Weighting(omega.tree, tuple(k * x for x in omega.values))


def two_tree(tree: Tree) -> Weighting:
    """모든 변에 2를 배정한 가중치 2_T"""
    return Weighting(tree, (2,) * tree.n_edges)


def zero_weighting(tree: Tree) -> Weighting:
    """반군의 항등원 (차수 0)"""
    return Weighting(tree, (0,) * tree.n_edges)


def _require_member(tree: Tree, omega: Weighting, role: str = "가중치") -> None:
    if not is_member(tree, omega):
        raise WeightingError(f"{role}가 반군 원소가 아닙니다 (Δ₂ 위반): {list(omega.values)}")


def divides(omega: Weighting, other: Weighting) -> bool:
    """
    ω가 ω'를 나누는지 판정 (ω' - ω가 반군 원소)

    각 삼가 노드의 파이프 좌표를 성분별로 비교한다.
    """
    tree = omega.tree
    _check_same_tree(tree, other)
    _require_member(tree, omega, "나누는 가중치")
    _require_member(tree, other, "나뉘는 가중치")

    for t in range(len(tree.trinodes)):
        small = pipe_counts(*omega.at_trinode(t))
        large = pipe_counts(*other.at_trinode(t))
        if any(x > y for x, y in zip(small, large)):
            return False
    return True


def is_interior(tree: Tree, omega: Weighting) -> bool:
    """모든 삼가 노드에서 삼각부등식이 엄격한지 (파이프 좌표가 모두 1 이상) 판정"""
    _require_member(tree, omega)
    return all(min(pipe_counts(*omega.at_trinode(t))) >= 1 for t in range(len(tree.trinodes)))


def is_boundary(tree: Tree, omega: Weighting, r: WeightVector) -> bool:
    """차수 1 섬유 P_T(r)의 경계점 판정 (= 원뿔 P_T의 경계)"""
    _require_member(tree, omega)
    if degree_of(tree, omega, r) != 1:
        raise WeightingError(f"경계 판정은 차수 1 원소에만 적용됩니다: {list(omega.leaf_weights)}")
    return not is_interior(tree, omega)

# =============================================================================
# JSON 입출력
# =============================================================================

def weighting_to_json(omega: Weighting) -> Dict[str, Any]:
    """{"leaf": {"1": w1, ...}, "internal": {"1-3": w, ...}}"""
    tree = omega.tree
    return {
        "leaf": {str(i + 1): omega.values[i] for i in tree.leaf_edges},
        "internal": {
            f"{a}-{b}": omega.values[tree.edge_index[(a, b)]] for a, b in tree.diagonals
        },
    }


def weighting_from_json(tree: Tree, data: Union[str, Dict[str, Any]]) -> Weighting:
    """JSON 문자열 또는 딕셔너리에서 가중치 생성 (필드명을 담은 에러 메시지)"""
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as e:
            raise InputFormatError(f"가중치 JSON 파싱 실패: {e}")
    if not isinstance(data, dict):
        raise InputFormatError("가중치 JSON은 객체여야 합니다")
    for key in ("leaf", "internal"):
        if key not in data:
            raise InputFormatError(f"가중치 JSON에 필드 '{key}'가 없습니다")
        if not isinstance(data[key], dict):
            raise InputFormatError(f"필드 '{key}'는 객체여야 합니다")

    leaf = []
    for i in range(1, tree.n_leaves + 1):
        if str(i) not in data["leaf"]:
            raise InputFormatError(f"필드 'leaf.{i}'가 없습니다")
        leaf.append(require_int(data["leaf"][str(i)], f"leaf.{i}"))

    internal = {}
    for key, value in data["internal"].items():
        try:
            a, b = (int(part) for part in str(key).split("-"))
        except ValueError:
            raise InputFormatError(f"필드 'internal.{key}'의 키는 'a-b' 형식이어야 합니다")
        if tuple(sorted((a, b))) not in tree.edge_index:
            raise InputFormatError(f"필드 'internal.{key}': 트리에 없는 대각선입니다")
        internal[(a, b)] = require_int(value, f"internal.{key}")

    missing = [f"{a}-{b}" for a, b in tree.diagonals if (a, b) not in
               {tuple(sorted(p)) for p in internal}]
    if missing:
        raise InputFormatError(f"필드 'internal.{missing[0]}'가 없습니다")
    return Weighting.from_parts(tree, leaf, internal)
