"""
고렌스타인 판정 모듈
- 닫힌 형태 분류기 (생성원 차수 탐색 + N_ij ≥ n-4 조건)
- 전수 오라클 (내부점 나눔 검사, 깊이 D까지)
- 기대 N_ij 표, 결손 부등식, a-불변량
"""

import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from typing_extensions import Literal

from .piping import PipingGraph, graph_from_matrix
from .polytope import RCase, RClass, classify_R, iter_interior, unique_interior_point
from .trees import Tree
from .utils import InvariantViolation, WeightingError, divisors
from .weightings import WeightVector, Weighting, delta2, divides, weighting_to_json

# 로깅 설정
logger = logging.getLogger(__name__)

# =============================================================================
# 판정 결과 타입
# =============================================================================

class FailureKind(Enum):
    NO_ADMISSIBLE_DEGREE = "NoAdmissibleDegree"
    DEFICIT = "DeficitAt"
    NO_INTERIOR_POINT = "NoInteriorPoint"
    AMBIGUOUS_MINIMUM = "AmbiguousMinimum"
    NOT_DIVISIBLE = "NotDivisible"


@dataclass(frozen=True)
class Failure:
    """
    음성 판정의 근거

    DeficitAt: pair, value(N_ij), degree(후보 차수)
    AmbiguousMinimum: degree, value(찾은 내부점 수의 하한)
    NotDivisible: degree, witness, candidate
    """
    kind: FailureKind
    pair: Optional[Tuple[int, int]] = None
    value: Optional[int] = None
    degree: Optional[int] = None
    witness: Optional[Weighting] = None
    candidate: Optional[Weighting] = None

    def to_json(self) -> Dict[str, Any]:
        result: Dict[str, Any] = {"kind": self.kind.value}
        if self.pair is not None:
            result["pair"] = list(self.pair)
        if self.value is not None:
            result["value"] = self.value
        if self.degree is not None:
            result["degree"] = self.degree
        if self.witness is not None:
            result["witness"] = weighting_to_json(self.witness)
        if self.candidate is not None:
            result["candidate"] = weighting_to_json(self.candidate)
        return result

    def __str__(self) -> str:
        if self.kind is FailureKind.DEFICIT:
            return f"DeficitAt({self.pair[0]},{self.pair[1]},N={self.value})"
        if self.degree is not None:
            return f"{self.kind.value}(k={self.degree})"
        return self.kind.value


@dataclass(frozen=True)
class GorensteinVerdict:
    """
    고렌스타인 판정 결과

    양성이면 generator_degree a와 generator ω_{a·r}(T)가 있고, 음성이면 failure가 있다.
    method는 'classifier' 또는 'oracle'이며, 오라클은 depth까지만 검증한다.
    """
    is_gorenstein: bool
    generator_degree: Optional[int] = None
    generator: Optional[Weighting] = None
    failure: Optional[Failure] = None
    method: Literal["classifier", "oracle"] = "classifier"
    depth: Optional[int] = None

    @property
    def a_invariant(self) -> Optional[int]:
        return -self.generator_degree if self.is_gorenstein else None

    def to_json(self) -> Dict[str, Any]:
        return {
            "is_gorenstein": self.is_gorenstein,
            "a": self.generator_degree,
            "a_invariant": self.a_invariant,
            "generator": weighting_to_json(self.generator) if self.generator else None,
            "failure": self.failure.to_json() if self.failure else None,
            "method": self.method,
            "depth": self.depth,
        }

    def summary(self) -> str:
        if self.is_gorenstein:
            return f"Gorenstein(a={self.generator_degree})"
        return f"NotGorenstein({self.failure})"


@dataclass(frozen=True)
class GeneratorDegree:
    """생성원 차수 탐색 결과: a, R⃗ = a·r - 2⃗, R⃗의 분류"""
    a: int
    R: Tuple[int, ...]
    r_class: RClass


@dataclass(frozen=True, eq=False)
class ExpectedNij:
    """ω_r(T) - 2_T의 N_ij 대칭 행렬 (인덱스는 잎 번호 - 1)"""
    matrix: np.ndarray

    def n_ij(self, i: int, j: int) -> int:
        return int(self.matrix[i - 1, j - 1])

    def nonzero_pairs(self) -> List[Tuple[Tuple[int, int], int]]:
        n = self.matrix.shape[0]
        return [
            ((i + 1, j + 1), int(self.matrix[i, j]))
            for i, j in itertools.combinations(range(n), 2) if self.matrix[i, j]
        ]

    def to_graph(self) -> PipingGraph:
        return graph_from_matrix(self.matrix)

# =============================================================================
# 분류기
# =============================================================================

def admissible_degrees(n: int) -> List[int]:
    """생성원 차수 후보: 2(n-2)의 약수 (오름차순)"""
    return divisors(2 * (n - 2))


def _check_lengths(tree: Tree, r: WeightVector) -> None:
    if len(r) != tree.n_leaves:
        raise WeightingError(f"r 길이 {len(r)}가 잎 개수 {tree.n_leaves}와 다릅니다")


def find_generator_degree(tree: Tree, r: WeightVector) -> Optional[GeneratorDegree]:
    """
    a·r - 2⃗가 음이 아니고 한 점 모양인 가장 작은 a (2(n-2)의 약수 중)

    Returns:
        GeneratorDegree 또는 None
    """
    _check_lengths(tree, r)
    for a in admissible_degrees(tree.n_leaves):
        R = tuple(a * x - 2 for x in r)
        if min(R) < 0:
            continue
        r_class = classify_R(R)
        if r_class.is_single_point:
            logger.debug(f"생성원 차수 발견: r={list(r)}, a={a}, R={list(R)}, {r_class}")
            return GeneratorDegree(a, R, r_class)
    return None


def expected_nij(R: Sequence[int], r_class: RClass) -> ExpectedNij:
    """
    분류 결과에 따른 N_ij(ω_r(T) - 2_T)

    Case1(i): N_ij = R_j (j ≠ i), i가 없는 쌍은 0
    Case2(i,j,k): 세 잎 사이 N = (두 값의 합 - 나머지) / 2, 그 밖은 0
    """
    R = tuple(R)
    n = len(R)
    matrix = np.zeros((n, n), dtype=np.int64)

    if r_class.case is RCase.CASE1:
        (i,) = r_class.indices
        for j in range(1, n + 1):
            if j != i:
                matrix[i - 1, j - 1] = matrix[j - 1, i - 1] = R[j - 1]
    elif r_class.case is RCase.CASE2:
        triple = r_class.indices
        for p, q in itertools.combinations(triple, 2):
            (third,) = [t for t in triple if t not in (p, q)]
            value = (R[p - 1] + R[q - 1] - R[third - 1]) // 2
            matrix[p - 1, q - 1] = matrix[q - 1, p - 1] = value
    else:
        raise WeightingError(f"한 점 모양이 아닌 R⃗에는 기대 N_ij가 없습니다: {list(R)}")

    return ExpectedNij(matrix)


def classify_gorenstein(tree: Tree, r: WeightVector) -> GorensteinVerdict:
    """
    닫힌 형태 고렌스타인 판정

    n = 3: Δ₂(r)이면 a = 1 (다항식환), 아니면 반군이 {0}뿐이라 음성.
    n ≥ 4: 생성원 차수 a가 있고, 0이 아닌 모든 기대 N_ij가 n-4 이상이면 양성.
    """
    _check_lengths(tree, r)
    n = tree.n_leaves

    if n == 3:
        if delta2(*r):
            return GorensteinVerdict(True, 1, Weighting(tree, tuple(r)))
        return GorensteinVerdict(False, failure=Failure(FailureKind.NO_ADMISSIBLE_DEGREE))

    found = find_generator_degree(tree, r)
    if found is None:
        logger.info(f"r={list(r)}: 허용 차수 없음")
        return GorensteinVerdict(False, failure=Failure(FailureKind.NO_ADMISSIBLE_DEGREE))

    for pair, value in expected_nij(found.R, found.r_class).nonzero_pairs():
        if value < n - 4:
            logger.info(f"r={list(r)}: N{pair} = {value} < {n - 4}")
            return GorensteinVerdict(False, failure=Failure(
                FailureKind.DEFICIT, pair=pair, value=value, degree=found.a,
            ))

    generator = unique_interior_point(tree, WeightVector(r.scaled(found.a)))
    if generator is None:
        raise InvariantViolation(f"차수 {found.a}에서 유일 내부점을 찾지 못했습니다: r={list(r)}")
    return GorensteinVerdict(True, found.a, generator)


def a_invariant(tree: Tree, r: WeightVector) -> Optional[int]:
    return classify_gorenstein(tree, r).a_invariant

# =============================================================================
# 오라클
# =============================================================================

def gorenstein_oracle(tree: Tree, r: WeightVector, depth: int) -> GorensteinVerdict:
    """
    내부점 전수 검사로 고렌스타인 여부 판정 (차수 1..depth)

    가장 낮은 차수의 내부점이 유일하고 이후 모든 내부점을 나누면 양성.
    결정적인 사실이 나오면 즉시 멈춘다.

    Args:
        tree: 트리
        r: 가중치 벡터
        depth: 검사할 최대 차수 D (≥ 1)
    """
    _check_lengths(tree, r)
    if isinstance(depth, bool) or not isinstance(depth, int) or depth < 1:
        raise WeightingError(f"오라클 깊이는 1 이상의 정수여야 합니다: {depth!r}")

    candidate: Optional[Weighting] = None
    minimal_degree: Optional[int] = None

    for k in range(1, depth + 1):
        interior = iter_interior(tree, r, k)
        if candidate is None:
            found = list(itertools.islice(interior, 2))
            if not found:
                continue
            if len(found) > 1:
                logger.info(f"r={list(r)}: 최소 차수 {k}에 내부점이 둘 이상")
                return GorensteinVerdict(False, failure=Failure(
                    FailureKind.AMBIGUOUS_MINIMUM, degree=k, value=len(found),
                ), method="oracle", depth=depth)
            candidate, minimal_degree = found[0], k
            continue

        for eta in interior:
            if not divides(candidate, eta):
                logger.info(f"r={list(r)}: 차수 {k} 내부점이 후보 생성원으로 나눠지지 않음")
                return GorensteinVerdict(False, failure=Failure(
                    FailureKind.NOT_DIVISIBLE, degree=k, witness=eta, candidate=candidate,
                ), method="oracle", depth=depth)

    if candidate is None:
        return GorensteinVerdict(False, failure=Failure(FailureKind.NO_INTERIOR_POINT),
                                 method="oracle", depth=depth)
    return GorensteinVerdict(True, minimal_degree, candidate, method="oracle", depth=depth)


def verdicts_agree(first: GorensteinVerdict, second: GorensteinVerdict) -> bool:
    """양성/음성이 같고, 양성이면 차수와 생성원도 같은지 확인"""
    if first.is_gorenstein != second.is_gorenstein:
        return False
    if not first.is_gorenstein:
        return True
    return (first.generator_degree == second.generator_degree
            and first.generator is not None and second.generator is not None
            and first.generator.values == second.generator.values)

# =============================================================================
# 결손 부등식
# =============================================================================

def deficit_inequality(n: int, R: Sequence[int], a: int, k: int, i: int, j: int, N: int) -> bool:
    """
    잎 i, j 사이 파이프 재배치 가능 조건 (정확한 유리수 계산)

    c = k/a일 때
    Σ_{ℓ≠i,j} [c(R_ℓ+2) - 2] - [c(R_i+2) - 2] - [c(R_j+2) - 2] + 2N > 0
    """
    if a == 0:
        raise WeightingError("생성원 차수 a는 0이 될 수 없습니다")
    R = tuple(R)
    if len(R) != n:
        raise WeightingError(f"R⃗ 길이 {len(R)}가 n={n}과 다릅니다")
    if i == j or not (1 <= i <= n and 1 <= j <= n):
        raise WeightingError(f"잎 쌍이 올바르지 않습니다: ({i}, {j})")

    c = Fraction(k, a)

    def share(value: int) -> Fraction:
        return c * (value + 2) - 2

    others = sum(share(R[m - 1]) for m in range(1, n + 1) if m not in (i, j))
    return others - share(R[i - 1]) - share(R[j - 1]) + 2 * N > 0
