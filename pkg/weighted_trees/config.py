"""
가중 트리 고렌스타인 분석 설정 파일
- 열거 및 오라클 탐색 상한값
- 서베이 병렬 처리 설정
- 출력 경로 및 종료 코드 중앙 관리
"""

import os
from typing import Dict, Optional
from dotenv import load_dotenv

# 환경변수 로드
load_dotenv()


class Config:
    """가중 트리 분석 설정 클래스"""

    # =============================================================================
    # 환경변수 기반 설정
    # =============================================================================
    LOG_LEVEL = os.getenv("WT_LOG_LEVEL", "WARNING")

    # 트리 열거 상한 (Catalan(n-2)개의 삼각분할)
    MAX_LEAVES = int(os.getenv("WT_MAX_LEAVES", "12"))

    # 오라클 깊이: 양성 판정은 min(factor * a, max_depth), 음성은 2(n-2)
    ORACLE_MAX_DEPTH = int(os.getenv("WT_ORACLE_MAX_DEPTH", "12"))
    ORACLE_DEPTH_FACTOR = int(os.getenv("WT_ORACLE_DEPTH_FACTOR", "3"))

    # 서베이 작업자 수 (1이면 순차 실행)
    SURVEY_WORKERS = int(os.getenv("WT_SURVEY_WORKERS", "1"))

    OUTPUT_DIR = os.getenv("WT_OUTPUT_DIR", "data")

    # =============================================================================
    # 고정 상수
    # =============================================================================
    # JSON 소비자가 정확히 다룰 수 있는 정수 한계
    JSON_SAFE_INT = 2 ** 53

    EXIT_CODES: Dict[str, int] = {
        'ok': 0,
        'usage': 1,
        'validation': 2,
        'disagreement': 3,
    }

    # =============================================================================
    # 헬퍼 메서드
    # =============================================================================
    @classmethod
    def get_output_path(cls, name: str) -> str:
        """출력 파일 경로 생성"""
        return os.path.join(cls.OUTPUT_DIR, name)

    @classmethod
    def oracle_depth(cls, n_leaves: int, degree: Optional[int]) -> int:
        """
        오라클 검증 깊이 계산

        Args:
            n_leaves: 잎 개수 n
            degree: 분류기가 찾은 생성원 차수 a (없으면 None)

        Returns:
            양성이면 min(factor * a, max_depth), 음성이면 2(n-2)
        """
        if degree:
            return min(cls.ORACLE_DEPTH_FACTOR * degree, cls.ORACLE_MAX_DEPTH)
        return max(1, 2 * (n_leaves - 2))

    @classmethod
    def exit_code(cls, name: str) -> int:
        return cls.EXIT_CODES[name]
