"""
섬유 다면체 P_T(r) 모듈
- 차수 k 섬유의 격자점 열거 및 개수 (힐베르트 함수)
- 내부점 열거 (엄격성 필터 / 2_T 평행이동, 두 경로 교차 검증)
- R⃗ 분류 (Case1 / Case2 / NotSinglePoint) 및 유일 내부점
- 섬유 차원, 전수 상자 탐색, 배율 포함 검사
"""

import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterator, List, Optional, Sequence, Tuple

import pandas as pd

from .trees import SearchStep, Tree
from .utils import InvariantViolation, WeightingError
from .weightings import (
    WeightVector, Weighting, add, delta2, degree_of, is_interior, is_member, two_tree,
)

# 로깅 설정
logger = logging.getLogger(__name__)

# =============================================================================
# 데이터 타입
# =============================================================================

@dataclass(frozen=True)
class FiberSpec:
    """트리 T, 가중치 벡터 r, 차수 k로 정해지는 섬유 k·P_T(r)"""
    tree: Tree
    r: WeightVector
    k: int

    def __post_init__(self):
        if self.k < 0:
            raise WeightingError(f"차수는 음이 아니어야 합니다: {self.k}")
        if len(self.r) != self.tree.n_leaves:
            raise WeightingError(f"r 길이 {len(self.r)}가 잎 개수 {self.tree.n_leaves}와 다릅니다")

    @property
    def leaf_weights(self) -> Tuple[int, ...]:
        return self.r.scaled(self.k)


class RCase(Enum):
    CASE1 = "Case1"
    CASE2 = "Case2"
    NOT_SINGLE_POINT = "NotSinglePoint"


@dataclass(frozen=True)
class RClass:
    """R⃗의 분류 결과 (indices는 1부터 시작하는 잎 번호)"""
    case: RCase
    indices: Tuple[int, ...] = ()

    @property
    def is_single_point(self) -> bool:
        return self.case is not RCase.NOT_SINGLE_POINT

    def __str__(self) -> str:
        if self.indices:
            return f"{self.case.value}({','.join(map(str, self.indices))})"
        return self.case.value

# =============================================================================
# 섬유 탐색
# =============================================================================

class FiberSearch:
    """
    잎 가중치가 고정된 섬유의 깊이 우선 탐색

    내부 변은 Tree.search_order 순서로 정한다. 각 변의 후보 구간은 anchor
    삼가 노드의 Δ₂ 구간에서 시작해, 같은 단계에 완성되는 삼가 노드의
    구간과 교집합을 취한다. 홀짝이 맞지 않으면 그 가지는 비어 있다.
    """

    def __init__(self, tree: Tree, leaf_weights: Sequence[int]):
        if len(leaf_weights) != tree.n_leaves:
            raise WeightingError(
                f"잎 가중치 개수 {len(leaf_weights)}가 잎 개수 {tree.n_leaves}와 다릅니다"
            )
        self.tree = tree
        self.leaf_weights = tuple(int(w) for w in leaf_weights)
        self.steps = tree.search_order
        self._values = list(self.leaf_weights) + [0] * (tree.n_edges - tree.n_leaves)

    def _feasible_start(self) -> bool:
        if min(self.leaf_weights) < 0:
            return False
        # 잎 변만으로 이루어진 삼가 노드 (n = 3)
        leaf_only = [t for t in self.tree.trinodes if all(self.tree.is_leaf_edge(e) for e in t)]
        return all(delta2(*(self._values[e] for e in t)) for t in leaf_only)

    def _candidate_range(self, step: SearchStep) -> Optional[Tuple[int, int]]:
        values = self._values
        a, b = values[step.anchor[0]], values[step.anchor[1]]
        lo, hi = abs(a - b), a + b
        for c_edge, d_edge in step.checks:
            c, d = values[c_edge], values[d_edge]
            if (c + d - lo) % 2:
                return None
            lo, hi = max(lo, abs(c - d)), min(hi, c + d)
        return (lo, hi) if lo <= hi else None

    def _walk(self, depth: int) -> Iterator[Tuple[int, ...]]:
        if depth == len(self.steps):
            yield tuple(self._values)
            return
        step = self.steps[depth]
        bounds = self._candidate_range(step)
        if bounds is None:
            return
        for x in range(bounds[0], bounds[1] + 1, 2):
            self._values[step.edge] = x
            yield from self._walk(depth + 1)

    def _count(self, depth: int) -> int:
        if depth == len(self.steps):
            return 1
        step = self.steps[depth]
        bounds = self._candidate_range(step)
        if bounds is None:
            return 0
        lo, hi = bounds
        if depth == len(self.steps) - 1:
            return (hi - lo) // 2 + 1
        total = 0
        for x in range(lo, hi + 1, 2):
            self._values[step.edge] = x
            total += self._count(depth + 1)
        return total

    def __iter__(self) -> Iterator[Weighting]:
        if not self._feasible_start():
            return
        for values in self._walk(0):
            yield Weighting(self.tree, values)

    def count(self) -> int:
        if not self._feasible_start():
            return 0
        return self._count(0)


def iter_fiber(tree: Tree, leaf_weights: Sequence[int]) -> Iterator[Weighting]:
    """잎 가중치가 leaf_weights인 반군 원소를 순서대로 생성 (음수 잎 가중치 → 빈 섬유)"""
    return iter(FiberSearch(tree, leaf_weights))


def enumerate_fiber(tree: Tree, leaf_weights: Sequence[int]) -> List[Weighting]:
    return list(iter_fiber(tree, leaf_weights))


def count_fiber(tree: Tree, leaf_weights: Sequence[int]) -> int:
    return FiberSearch(tree, leaf_weights).count()


def _leaf_target(tree: Tree, r: WeightVector, k: int) -> Tuple[int, ...]:
    return FiberSpec(tree, r, k).leaf_weights


def enumerate_points(tree: Tree, r: WeightVector, k: int) -> List[Weighting]:
    """
    차수 k 조각의 모든 원소 (잎 가중치 = k·r)

    Args:
        tree: 트리
        r: 가중치 벡터
        k: 차수 (≥ 0)

    Returns:
        탐색 순서로 정렬된 가중치 목록 (비어 있을 수 있음)
    """
    return enumerate_fiber(tree, _leaf_target(tree, r, k))


def iter_interior(tree: Tree, r: WeightVector, k: int) -> Iterator[Weighting]:
    """2_T + (잎 가중치 k·r - 2⃗ 섬유의 점)으로 내부점 생성"""
    target = _leaf_target(tree, r, k)
    base = two_tree(tree)
    for eta in iter_fiber(tree, tuple(w - 2 for w in target)):
        yield add(base, eta)


def enumerate_interior(tree: Tree, r: WeightVector, k: int) -> List[Weighting]:
    """
    차수 k 조각의 내부점

    엄격성 필터와 2_T 평행이동 두 방식으로 계산하고 집합이 다르면 에러를 낸다.
    """
    filtered = [w for w in enumerate_points(tree, r, k) if is_interior(tree, w)]
    translated = list(iter_interior(tree, r, k))
    if {w.values for w in filtered} != {w.values for w in translated}:
        raise InvariantViolation(
            f"내부점 계산 불일치 (k={k}, r={list(r)}): 필터 {len(filtered)}개, 평행이동 {len(translated)}개"
        )
    return filtered


def hilbert_function(tree: Tree, r: WeightVector, k: int) -> int:
    """차수 k 조각의 원소 개수 (목록을 만들지 않고 센다)"""
    return count_fiber(tree, _leaf_target(tree, r, k))


def hilbert_table(tree: Tree, r: WeightVector, max_k: int) -> pd.DataFrame:
    """
    k = 0..max_k 힐베르트 함수 표

    Returns:
        컬럼 ['k', 'count']의 DataFrame
    """
    if max_k < 0:
        raise WeightingError(f"최대 차수는 음이 아니어야 합니다: {max_k}")
    rows = [{'k': k, 'count': hilbert_function(tree, r, k)} for k in range(max_k + 1)]
    logger.info(f"힐베르트 함수 계산 완료: r={list(r)}, k≤{max_k}")
    return pd.DataFrame(rows, columns=['k', 'count'])

# =============================================================================
# R⃗ 분류 및 유일 내부점
# =============================================================================

def classify_R(R: Sequence[int]) -> RClass:
    """
    섬유가 한 점이 되는 R⃗ 모양 판정

    Case1(i): R_i = Σ_{j≠i} R_j (가장 작은 i)
    Case2(i,j,k): Δ₂(R_i, R_j, R_k)이고 나머지 성분이 모두 0 (사전순 최소)
    Case1을 먼저 검사한다.
    """
    R = tuple(R)
    if any(x < 0 for x in R):
        raise WeightingError(f"R⃗의 성분은 음이 아니어야 합니다: {list(R)}")

    total = sum(R)
    for i, x in enumerate(R):
        if 2 * x == total:
            return RClass(RCase.CASE1, (i + 1,))

    for i, j, k in itertools.combinations(range(len(R)), 3):
        rest = total - R[i] - R[j] - R[k]
        if rest == 0 and delta2(R[i], R[j], R[k]):
            return RClass(RCase.CASE2, (i + 1, j + 1, k + 1))

    return RClass(RCase.NOT_SINGLE_POINT)


def is_single_point(tree: Tree, R: Sequence[int]) -> bool:
    """P_T(R)의 격자점이 정확히 하나인지 열거로 판정"""
    return count_fiber(tree, R) == 1


def unique_interior_point(tree: Tree, r: WeightVector) -> Optional[Weighting]:
    """
    P_T(r)의 유일 내부점 ω_r(T)

    Returns:
        r - 2⃗ ≥ 0이고 classify_R(r - 2⃗)가 한 점 모양이면 2_T + (유일한 점), 아니면 None
    """
    R = tuple(x - 2 for x in r)
    if min(R) < 0 or not classify_R(R).is_single_point:
        return None

    points = enumerate_fiber(tree, R)
    if len(points) != 1:
        raise InvariantViolation(
            f"R⃗={list(R)} ({classify_R(R)})의 섬유 점 개수가 1이 아닙니다: {len(points)}"
        )
    return add(two_tree(tree), points[0])


def fiber_dimension(tree: Tree, r: WeightVector) -> int:
    """일반 위치이면 n-3, 어떤 r_i ≥ Σ_{j≠i} r_j이면 0 (n = 3은 항상 0)"""
    if tree.n_leaves == 3:
        return 0
    total = sum(r)
    if all(2 * x < total for x in r):
        return tree.n_leaves - 3
    return 0

# =============================================================================
# 검증용 참조 구현
# =============================================================================

def enumerate_box(tree: Tree, leaf_weights: Sequence[int], bound: Optional[int] = None) -> List[Weighting]:
    """
    내부 변마다 0..bound 전체를 시도하는 단순 열거

    Args:
        bound: 내부 변 값 상한 (기본값: 잎 가중치 합)
    """
    leaf_weights = tuple(leaf_weights)
    if bound is None:
        bound = max(sum(leaf_weights), 0)
    found = []
    for internal in itertools.product(range(bound + 1), repeat=tree.n_edges - tree.n_leaves):
        omega = Weighting(tree, leaf_weights + internal)
        if is_member(tree, omega):
            found.append(omega)
    return found


def in_scaled_fiber(omega: Weighting, r: WeightVector, k: int) -> bool:
    """ω / k가 실수 다면체 P_T(r)의 점인지 정확한 유리수로 판정"""
    if k < 1:
        raise WeightingError(f"배율 검사는 k ≥ 1에서만 정의됩니다: {k}")
    tree = omega.tree
    if degree_of(tree, omega, r) != k:
        return False
    for t in range(len(tree.trinodes)):
        a, b, c = (Fraction(w, k) for w in omega.at_trinode(t))
        if min(a, b, c) < 0 or not (abs(a - b) <= c <= a + b):
            return False
    return True
