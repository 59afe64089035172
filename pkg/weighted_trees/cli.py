"""
가중 트리 분석 명령행 인터페이스
- trees: 삼각분할 목록
- enumerate / hilbert: 섬유 열거 및 힐베르트 함수 표
- piping: 가중치의 파이프 그래프 (JSON / DOT)
- classify / oracle: 고렌스타인 판정
- survey: 분류기-오라클 교차 검증 (불일치 시 종료 코드 3)
"""

import argparse
import json
import logging
import os
import sys
from typing import Any, Callable, Dict, List, Optional

import pandas as pd

from .config import Config
from .gorenstein import classify_gorenstein, gorenstein_oracle
from .piping import tree_T
from .polytope import enumerate_interior, hilbert_table, iter_fiber
from .survey import count_disagreements, run_survey
from .trees import Tree, enumerate_trees, tree_from_json, tree_to_json
from .utils import (
    InputFormatError, WeightedTreeError, create_error_result, json_safe, setup_logging,
)
from .weightings import WeightVector, Weighting, weighting_from_json, weighting_to_json

# 로깅 설정
logger = logging.getLogger(__name__)

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class CommandParser(argparse.ArgumentParser):
    """사용법 오류를 종료 코드 1로 보고하는 파서"""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(Config.exit_code('usage'), f"{self.prog}: error: {message}\n")

# =============================================================================
# 입력 / 출력 헬퍼
# =============================================================================

def _read_json_source(source: str, label: str) -> Any:
    """인라인 JSON 또는 파일 경로에서 JSON 읽기"""
    text = source.strip()
    if not text.startswith("{"):
        if not os.path.exists(source):
            raise InputFormatError(f"{label} 파일을 찾을 수 없습니다: {source}")
        with open(source, 'r', encoding='utf-8') as f:
            text = f.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputFormatError(f"{label} JSON 파싱 실패: {e}")


def load_tree(source: str) -> Tree:
    return tree_from_json(_read_json_source(source, "트리"))


def load_weighting(tree: Tree, source: str) -> Weighting:
    return weighting_from_json(tree, _read_json_source(source, "가중치"))


def _parse_r(text: str) -> WeightVector:
    return WeightVector.parse(text)


def _emit_json(payload: Any) -> None:
    print(json.dumps(json_safe(payload), sort_keys=True, ensure_ascii=False))


def _emit_table(frame) -> None:
    sys.stdout.write(frame.to_csv(sep='\t', index=False))

# =============================================================================
# 서브커맨드 처리
# =============================================================================

def cmd_trees(args: argparse.Namespace) -> int:
    trees = enumerate_trees(args.leaves)
    if args.format == 'tsv':
        frame = pd.DataFrame([
            {'index': i, 'diagonals': ";".join(f"{a}-{b}" for a, b in tree.diagonals)}
            for i, tree in enumerate(trees)
        ], columns=['index', 'diagonals'])
        _emit_table(frame)
    else:
        for i, tree in enumerate(trees):
            _emit_json({"index": i, **tree_to_json(tree)})
    return Config.exit_code('ok')


def cmd_enumerate(args: argparse.Namespace) -> int:
    tree = load_tree(args.tree)
    r = _parse_r(args.r)
    if args.degree < 0:
        raise InputFormatError(f"'degree'는 음이 아니어야 합니다: {args.degree}")
    if args.interior:
        points = enumerate_interior(tree, r, args.degree)
    else:
        points = iter_fiber(tree, r.scaled(args.degree))
    count = 0
    for omega in points:
        _emit_json(weighting_to_json(omega))
        count += 1
    logger.info(f"열거 완료: {count}개 (k={args.degree})")
    return Config.exit_code('ok')


def cmd_hilbert(args: argparse.Namespace) -> int:
    tree = load_tree(args.tree)
    r = _parse_r(args.r)
    if args.max_degree < 0:
        raise InputFormatError(f"'max-degree'는 음이 아니어야 합니다: {args.max_degree}")
    frame = hilbert_table(tree, r, args.max_degree)
    if args.format == 'json':
        for row in frame.to_dict('records'):
            _emit_json({"k": int(row['k']), "count": int(row['count'])})
    else:
        _emit_table(frame)
    return Config.exit_code('ok')


def cmd_piping(args: argparse.Namespace) -> int:
    tree = load_tree(args.tree)
    omega = load_weighting(tree, args.weighting)
    graph = tree_T(tree, omega)
    if args.dot or args.format == 'dot':
        sys.stdout.write(graph.to_dot())
    else:
        _emit_json(graph.to_json())
    return Config.exit_code('ok')


def cmd_classify(args: argparse.Namespace) -> int:
    tree = load_tree(args.tree)
    verdict = classify_gorenstein(tree, _parse_r(args.r))
    logger.info(f"분류 결과: {verdict.summary()}")
    _emit_json(verdict.to_json())
    return Config.exit_code('ok')


def cmd_oracle(args: argparse.Namespace) -> int:
    tree = load_tree(args.tree)
    r = _parse_r(args.r)
    depth = args.depth
    if depth is None:
        depth = Config.oracle_depth(tree.n_leaves, classify_gorenstein(tree, r).generator_degree)
    verdict = gorenstein_oracle(tree, r, depth)
    logger.info(f"오라클 결과 (D={depth}): {verdict.summary()}")
    _emit_json(verdict.to_json())
    return Config.exit_code('ok')


def cmd_survey(args: argparse.Namespace) -> int:
    if args.max_entry < 1:
        raise InputFormatError(f"'max-entry'는 1 이상이어야 합니다: {args.max_entry}")
    if args.depth is not None and args.depth < 1:
        raise InputFormatError(f"'depth'는 1 이상이어야 합니다: {args.depth}")
    frame = run_survey(args.leaves, args.max_entry, depth=args.depth, workers=args.workers)
    if args.output:
        os.makedirs(os.path.dirname(os.path.abspath(args.output)), exist_ok=True)
        frame.to_csv(args.output, sep='\t', index=False)
        logger.info(f"서베이 표 저장: {args.output}")
    else:
        _emit_table(frame)

    if count_disagreements(frame):
        return Config.exit_code('disagreement')
    return Config.exit_code('ok')


COMMANDS: Dict[str, Callable[[argparse.Namespace], int]] = {
    'trees': cmd_trees,
    'enumerate': cmd_enumerate,
    'hilbert': cmd_hilbert,
    'piping': cmd_piping,
    'classify': cmd_classify,
    'oracle': cmd_oracle,
    'survey': cmd_survey,
}

# =============================================================================
# 파서
# =============================================================================

def build_parser() -> argparse.ArgumentParser:
    """
    명령행 인수 파서 생성

    Returns:
        서브커맨드가 등록된 파서
    """
    parser = CommandParser(
        prog='weighted-trees',
        description='삼가 트리 가중치 반군의 고렌스타인 판정 및 교차 검증',
    )
    parser.add_argument('--log-level', default=None, type=str.upper, choices=LOG_LEVELS,
                        help='로그 레벨 (기본값: WT_LOG_LEVEL 또는 WARNING)')
    sub = parser.add_subparsers(dest='command', metavar='COMMAND')
    sub.required = True

    def add_tree(p):
        p.add_argument('--tree', required=True,
                       help='트리 JSON (인라인 또는 파일 경로), 예: {"n":4,"diagonals":[[1,3]]}')

    def add_r(p):
        p.add_argument('--r', required=True, help='쉼표로 구분한 가중치 벡터, 예: 1,1,1,1')

    p = sub.add_parser('trees', help='n각형의 모든 삼각분할 출력')
    p.add_argument('--leaves', type=int, required=True, help='잎 개수 n (3 이상)')
    p.add_argument('--format', choices=['json', 'tsv'], default='json', help='출력 형식')

    p = sub.add_parser('enumerate', help='차수 k 섬유의 원소를 JSON 줄로 출력')
    add_tree(p)
    add_r(p)
    p.add_argument('--degree', type=int, required=True, help='차수 k (0 이상)')
    p.add_argument('--interior', action='store_true', help='내부점만 출력')

    p = sub.add_parser('hilbert', help='힐베르트 함수 표 k → 개수')
    add_tree(p)
    add_r(p)
    p.add_argument('--max-degree', type=int, required=True, help='최대 차수 K')
    p.add_argument('--format', choices=['tsv', 'json'], default='tsv', help='출력 형식')

    p = sub.add_parser('piping', help='가중치의 평면 파이프 그래프 출력')
    add_tree(p)
    p.add_argument('--weighting', required=True,
                   help='가중치 JSON (인라인 또는 파일 경로), 예: {"leaf":{"1":2,...},"internal":{"1-3":2}}')
    p.add_argument('--dot', action='store_true', help='DOT 형식으로 출력 (--format dot과 같음)')
    p.add_argument('--format', choices=['json', 'dot'], default='json', help='출력 형식')

    p = sub.add_parser('classify', help='닫힌 형태 분류기로 고렌스타인 판정')
    add_tree(p)
    add_r(p)

    p = sub.add_parser('oracle', help='내부점 전수 검사로 고렌스타인 판정')
    add_tree(p)
    add_r(p)
    p.add_argument('--depth', type=int, default=None,
                   help='검사 최대 차수 D (기본값: 분류기 결과에 따른 규칙)')

    p = sub.add_parser('survey', help='모든 트리 × 모든 r에 대한 분류기-오라클 비교 (TSV)')
    p.add_argument('--leaves', type=int, required=True, help='잎 개수 n')
    p.add_argument('--max-entry', type=int, required=True, help='r 성분 상한')
    p.add_argument('--depth', type=int, default=None, help='오라클 깊이 고정값')
    p.add_argument('--workers', type=int, default=None,
                   help='작업 프로세스 수 (기본값: WT_SURVEY_WORKERS)')
    p.add_argument('--output', default=None, help='TSV 저장 경로 (생략 시 표준 출력)')

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """
    메인 함수

    Returns:
        종료 코드 (0 정상, 1 사용법 오류, 2 검증 오류, 3 서베이 불일치)
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else Config.exit_code('ok')

    setup_logging(args.log_level)

    try:
        return COMMANDS[args.command](args)
    except WeightedTreeError as e:
        error = create_error_result(str(e), type(e).__name__)
        print(json.dumps(error, sort_keys=True, ensure_ascii=False), file=sys.stderr)
        return Config.exit_code('validation')
    except OSError as e:
        error = create_error_result(f"파일 입출력 오류: {e}", type(e).__name__)
        print(json.dumps(error, sort_keys=True, ensure_ascii=False), file=sys.stderr)
        return Config.exit_code('validation')


if __name__ == "__main__":
    sys.exit(main())
