"""
분류기-오라클 교차 검증 서베이 모듈
- 모든 트리 × 모든 가중치 벡터에 대해 두 판정을 비교
- 트리 독립성 (판정, 힐베르트 함수) 검사
- 결과는 (r, 트리 번호) 순으로 정렬된 DataFrame
"""

import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Dict, List, Optional, Sequence, Tuple

import pandas as pd

from .config import Config
from .gorenstein import classify_gorenstein, gorenstein_oracle, verdicts_agree
from .polytope import hilbert_function
from .trees import Tree, build_tree, enumerate_trees
from .utils import TreeValidationError
from .weightings import WeightVector

# 로깅 설정
logger = logging.getLogger(__name__)

SURVEY_COLUMNS = ['r', 'tree_index', 'diagonals', 'verdict', 'a', 'oracle', 'depth', 'agree']

# 잎 3개에서는 분류기(ℂ[x] 단축)와 오라클(엄격 내부점)의 판정 기준이 다름
MIN_SURVEY_LEAVES = 4


def survey_weight_vectors(n: int, max_entry: int) -> List[WeightVector]:
    """성분이 1..max_entry이고 합이 짝수인 모든 r (사전순)"""
    if max_entry < 1:
        return []
    return [
        WeightVector(entries)
        for entries in itertools.product(range(1, max_entry + 1), repeat=n)
        if sum(entries) % 2 == 0
    ]


def format_r(r: Sequence[int]) -> str:
    return ",".join(str(x) for x in r)


def survey_row(tree: Tree, tree_index: int, r: WeightVector,
               depth: Optional[int] = None) -> Dict[str, Any]:
    """
    트리 하나, r 하나에 대한 분류기 판정과 오라클 판정 비교

    Args:
        depth: 오라클 깊이 (None이면 Config.oracle_depth 규칙)

    Returns:
        서베이 표의 한 행
    """
    verdict = classify_gorenstein(tree, r)
    oracle_depth = depth or Config.oracle_depth(tree.n_leaves, verdict.generator_degree)
    oracle = gorenstein_oracle(tree, r, oracle_depth)
    agree = verdicts_agree(verdict, oracle)
    if not agree:
        logger.warning(
            f"판정 불일치: r={format_r(r)}, 트리 {tree_index} {list(tree.diagonals)} "
            f"분류기={verdict.summary()} 오라클={oracle.summary()}"
        )
    return {
        'r': format_r(r),
        'tree_index': tree_index,
        'diagonals': ";".join(f"{a}-{b}" for a, b in tree.diagonals),
        'verdict': verdict.summary(),
        'a': verdict.generator_degree if verdict.is_gorenstein else None,
        'oracle': oracle.summary(),
        'depth': oracle_depth,
        'agree': agree,
    }


def _survey_task(task: Tuple[int, Tuple[Tuple[int, int], ...], int, Tuple[int, ...], Optional[int]]) -> Dict[str, Any]:
    """작업자 프로세스용 진입점 (트리는 대각선 목록으로 전달)"""
    n, diagonals, tree_index, entries, depth = task
    return survey_row(build_tree(n, diagonals), tree_index, WeightVector(entries), depth)


def run_survey(n: int, max_entry: int, depth: Optional[int] = None,
               workers: Optional[int] = None) -> pd.DataFrame:
    """
    n개 잎의 모든 트리와 모든 r에 대한 교차 검증

    Args:
        n: 잎 개수
        max_entry: r 성분 상한
        depth: 오라클 깊이 고정값 (None이면 판정별 규칙)
        workers: 프로세스 수 (기본값: Config.SURVEY_WORKERS, 1이면 순차 실행)

    Returns:
        SURVEY_COLUMNS 컬럼의 DataFrame, (r, tree_index) 순 정렬
    """
    if n < MIN_SURVEY_LEAVES:
        raise TreeValidationError(f"서베이는 잎 {MIN_SURVEY_LEAVES}개 이상에서만 실행합니다: n={n}")
    workers = workers or Config.SURVEY_WORKERS
    trees = enumerate_trees(n)
    vectors = survey_weight_vectors(n, max_entry)
    logger.info(f"서베이 시작: n={n}, 트리 {len(trees)}개, r {len(vectors)}개, 작업자 {workers}")

    tasks = [
        (n, tree.diagonals, index, r.entries, depth)
        for r in vectors for index, tree in enumerate(trees)
    ]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_survey_task, tasks, chunksize=max(1, len(tasks) // (4 * workers))))
    else:
        rows = [survey_row(trees[index], index, WeightVector(entries), d)
                for _, _, index, entries, d in tasks]

    rows.sort(key=lambda row: (tuple(int(x) for x in row['r'].split(",")), row['tree_index']))
    frame = pd.DataFrame(rows, columns=SURVEY_COLUMNS)
    frame['a'] = frame['a'].astype('Int64')

    disagreements = count_disagreements(frame)
    logger.info(f"서베이 완료: {len(frame)}행, 불일치 {disagreements}건")
    return frame


def count_disagreements(frame: pd.DataFrame) -> int:
    if frame.empty:
        return 0
    return int((~frame['agree'].astype(bool)).sum())


def tree_independence(n: int, r: WeightVector, max_k: int) -> Tuple[bool, pd.DataFrame]:
    """
    고정된 r에 대해 모든 트리의 판정과 힐베르트 함수 h(0..max_k)가 같은지 확인

    Returns:
        (모두 같은지 여부, 트리별 표)
    """
    rows = []
    for index, tree in enumerate(enumerate_trees(n)):
        row: Dict[str, Any] = {'tree_index': index, 'verdict': classify_gorenstein(tree, r).summary()}
        for k in range(max_k + 1):
            row[f'h{k}'] = hilbert_function(tree, r, k)
        rows.append(row)

    frame = pd.DataFrame(rows)
    value_columns = [c for c in frame.columns if c != 'tree_index']
    independent = bool((frame[value_columns].nunique() <= 1).all())
    if not independent:
        logger.warning(f"트리 의존성 발견: r={format_r(r)}")
    return independent, frame
