"""
서베이 캐시 생성 스크립트
- 잎 개수별 분류기-오라클 교차 검증 표 생성
- 트리 독립성 요약 표 생성
- 결과를 TSV 파일로 저장 (Config.OUTPUT_DIR)
"""

import argparse
import logging
import os
import sys
from typing import Dict, List

import pandas as pd

# 프로젝트 루트 경로 추가
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from weighted_trees.config import Config
from weighted_trees.survey import count_disagreements, run_survey, survey_weight_vectors, tree_independence
from weighted_trees.utils import setup_logging

# 로깅 설정
logger = logging.getLogger(__name__)


class SurveyCacheGenerator:
    """서베이 캐시 데이터 생성기"""

    def __init__(self, max_entry: int = 3, workers: int = None, max_k: int = 4):
        """
        초기화

        Args:
            max_entry: r 성분 상한
            workers: 작업 프로세스 수 (기본값: Config.SURVEY_WORKERS)
            max_k: 트리 독립성 검사에 쓸 최대 차수
        """
        self.max_entry = max_entry
        self.workers = workers or Config.SURVEY_WORKERS
        self.max_k = max_k

    def generate_survey(self, n: int) -> pd.DataFrame:
        """
        n개 잎 서베이 표 생성

        Returns:
            서베이 DataFrame
        """
        try:
            logger.info(f"서베이 생성 시작: n={n}, 성분 상한 {self.max_entry}")
            frame = run_survey(n, self.max_entry, workers=self.workers)
            logger.info(f"서베이 생성 완료: {len(frame)}행, 불일치 {count_disagreements(frame)}건")
            return frame
        except Exception as e:
            logger.error(f"서베이 생성 중 오류 (n={n}): {e}")
            raise

    def generate_independence(self, n: int) -> pd.DataFrame:
        """r마다 트리 독립성 여부를 한 행으로 요약"""
        rows: List[Dict] = []
        for r in survey_weight_vectors(n, self.max_entry):
            independent, frame = tree_independence(n, r, self.max_k)
            rows.append({
                'r': ",".join(map(str, r)),
                'verdict': frame['verdict'].iloc[0],
                **{f'h{k}': int(frame[f'h{k}'].iloc[0]) for k in range(self.max_k + 1)},
                'independent': independent,
            })
        return pd.DataFrame(rows)

    def save(self, frame: pd.DataFrame, name: str) -> str:
        """TSV 저장 후 경로 반환"""
        path = Config.get_output_path(name)
        os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
        frame.to_csv(path, sep='\t', index=False)
        logger.info(f"저장 완료: {path}")
        return path


def parse_args(argv=None):
    """
    명령행 인수 파싱

    Returns:
        argparse.Namespace: 파싱된 인수들
    """
    parser = argparse.ArgumentParser(description='가중 트리 서베이 캐시 생성')
    parser.add_argument('--leaves', type=int, nargs='+', default=[4, 5],
                        help='잎 개수 목록 (기본값: 4 5)')
    parser.add_argument('--max-entry', type=int, default=3, help='r 성분 상한 (기본값: 3)')
    parser.add_argument('--max-k', type=int, default=4, help='힐베르트 함수 최대 차수 (기본값: 4)')
    parser.add_argument('--workers', type=int, default=None, help='작업 프로세스 수')
    return parser.parse_args(argv)


def main(argv=None) -> int:
    """
    메인 함수

    Returns:
        종료 코드 (불일치가 있으면 Config.EXIT_CODES['disagreement'])
    """
    args = parse_args(argv)
    setup_logging("INFO")

    generator = SurveyCacheGenerator(args.max_entry, args.workers, args.max_k)
    disagreements = 0
    for n in args.leaves:
        survey = generator.generate_survey(n)
        disagreements += count_disagreements(survey)
        generator.save(survey, f"survey_n{n}_m{args.max_entry}.tsv")
        generator.save(generator.generate_independence(n), f"independence_n{n}_m{args.max_entry}.tsv")

    if disagreements:
        logger.error(f"분류기-오라클 불일치 {disagreements}건")
        return Config.exit_code('disagreement')
    return Config.exit_code('ok')


if __name__ == "__main__":
    sys.exit(main())
