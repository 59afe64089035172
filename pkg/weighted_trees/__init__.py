"""
가중 트리 반군 고렌스타인 분석 패키지
"""

__version__ = "1.0.0"
