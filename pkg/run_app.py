
"""
가중 트리 고렌스타인 분석 시스템 실행 스크립트
"""

import sys
import argparse


def check_dependencies(verbose: bool = False):
    """의존성 확인"""
    required_packages = [
        ('pandas', 'pandas'),
        ('numpy', 'numpy'),
        ('networkx', 'networkx'),
        ('python-dotenv', 'dotenv'),
        ('colorlog', 'colorlog'),
    ]

    missing_packages = []

    for package_name, import_name in required_packages:
        try:
            __import__(import_name)
            if verbose:
                print(f"{package_name}")
        except ImportError:
            print(f"{package_name} (누락)", file=sys.stderr)
            missing_packages.append(package_name)

    if missing_packages:
        print(f"\n누락된 패키지: {', '.join(missing_packages)}", file=sys.stderr)
        print("다음 명령어로 설치하세요:", file=sys.stderr)
        print("pip install -r requirements.txt", file=sys.stderr)
        return False

    if verbose:
        print("\n모든 의존성 확인 완료")
    return True


def main():
    parser = argparse.ArgumentParser(
        description="가중 트리 고렌스타인 분석 시스템",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        add_help=False,
        epilog="""
사용 예시:
  python run_app.py --check-only                                   # 의존성만 확인
  python run_app.py trees --leaves 6                               # 삼각분할 목록
  python run_app.py classify --tree '{"n":4,"diagonals":[[1,3]]}' --r 1,1,1,1
  python run_app.py survey --leaves 5 --max-entry 3                # 교차 검증 서베이
        """
    )
    parser.add_argument(
        "--check-only",
        action="store_true",
        help="의존성만 확인하고 실행하지 않음"
    )

    args, rest = parser.parse_known_args()

    if not check_dependencies(verbose=args.check_only):
        return 1

    if args.check_only:
        return 0

    from weighted_trees.cli import main as cli_main
    return cli_main(rest)


if __name__ == "__main__":
    sys.exit(main())
