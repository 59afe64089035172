"""
가중 트리 분석 공통 유틸리티 모듈
- 로깅 설정 (colorlog)
- 예외 계층 및 에러 결과 생성
- JSON 직렬화 및 정수 목록 파싱
- 정수론 헬퍼 함수
"""

import logging
import sys
from typing import Any, Dict, List, Optional, Tuple

import colorlog

from .config import Config

# 로깅 설정
logger = logging.getLogger(__name__)

# =============================================================================
# 로깅 유틸리티
# =============================================================================

def setup_logging(level: Optional[str] = None) -> logging.Logger:
    """
    패키지 루트 로거에 컬러 핸들러 설치 (stderr)

    Args:
        level: 로그 레벨 이름 (기본값: Config.LOG_LEVEL)

    Returns:
        설정된 패키지 루트 로거
    """
    root = logging.getLogger("weighted_trees")
    root.setLevel((level or Config.LOG_LEVEL).upper())

    installed = [h for h in root.handlers if getattr(h, "_weighted_trees", False)]
    if installed:
        # sys.stderr가 교체된 경우 (테스트 캡처 등) 새 스트림으로 연결, 이전 스트림은 flush하지 않음
        handler = installed[0]
        handler.acquire()
        try:
            handler.stream = sys.stderr
        finally:
            handler.release()
    else:
        handler = colorlog.StreamHandler(sys.stderr)
        handler.setFormatter(colorlog.ColoredFormatter(
            "%(log_color)s%(levelname)-8s%(reset)s %(name)s: %(message)s",
            log_colors={
                'DEBUG': 'cyan',
                'INFO': 'green',
                'WARNING': 'yellow',
                'ERROR': 'red',
                'CRITICAL': 'red,bg_white',
            },
        ))
        handler._weighted_trees = True
        root.addHandler(handler)
        root.propagate = False

    return root

# =============================================================================
# 에러 처리 유틸리티
# =============================================================================

class WeightedTreeError(ValueError):
    """패키지 공통 예외"""


class TreeValidationError(WeightedTreeError):
    """삼각분할(트리) 검증 실패"""


class WeightingError(WeightedTreeError):
    """가중치 벡터 또는 가중치 검증 실패"""


class PipingError(WeightedTreeError):
    """파이프 모델 변환 실패"""


class InputFormatError(WeightedTreeError):
    """JSON 또는 명령행 입력 형식 오류"""


class InvariantViolation(WeightedTreeError):
    """두 독립 계산 경로의 결과 불일치"""


def create_error_result(error_message: str, context: str = "") -> Dict[str, Any]:
    """
    에러 결과 생성

    Args:
        error_message: 에러 메시지
        context: 에러 컨텍스트 (예외 클래스명 등)

    Returns:
        에러 결과 딕셔너리
    """
    error_result = {
        'error': True,
        'message': error_message,
    }

    if context:
        error_result['context'] = context

    logger.error(f"에러 발생: {error_message} (컨텍스트: {context})")
    return error_result

# =============================================================================
# 직렬화 유틸리티
# =============================================================================

def json_safe(value: Any) -> Any:
    """
    JSON 출력용 값 변환 (2^53 초과 정수는 10진 문자열)

    Args:
        value: 변환할 값 (dict, list, tuple, int 등 중첩 가능)

    Returns:
        JSON 직렬화 가능한 값
    """
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int):
        return str(value) if abs(value) > Config.JSON_SAFE_INT else value
    if isinstance(value, dict):
        return {str(k): json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [json_safe(v) for v in value]
    return value


def parse_int_list(text: str, field: str = "r") -> Tuple[int, ...]:
    """
    쉼표로 구분된 정수 목록 파싱 ("1,1,2" → (1, 1, 2))

    Args:
        text: 입력 문자열
        field: 에러 메시지에 표시할 필드명

    Returns:
        정수 튜플
    """
    if text is None or not str(text).strip():
        raise InputFormatError(f"'{field}' 값이 비어 있습니다")
    try:
        return tuple(int(part.strip()) for part in str(text).split(","))
    except ValueError:
        raise InputFormatError(f"'{field}' 값을 정수 목록으로 읽을 수 없습니다: {text!r}")


def require_int(value: Any, field: str) -> int:
    """JSON 필드 값을 정수로 검증"""
    if isinstance(value, bool):
        raise InputFormatError(f"필드 '{field}'는 정수여야 합니다: {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        try:
            return int(value.strip())
        except ValueError:
            pass
    raise InputFormatError(f"필드 '{field}'는 정수여야 합니다: {value!r}")

# =============================================================================
# 정수론 헬퍼
# =============================================================================

def divisors(m: int) -> List[int]:
    """양의 정수 m의 약수 (오름차순)"""
    if m < 1:
        return []
    small, large = [], []
    d = 1
    while d * d <= m:
        if m % d == 0:
            small.append(d)
            if d * d != m:
                large.append(m // d)
        d += 1
    return small + large[::-1]
