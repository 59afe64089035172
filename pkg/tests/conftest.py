"""공통 테스트 픽스처"""

import pytest

from weighted_trees.trees import build_tree, fan_tree


@pytest.fixture
def tree3():
    return build_tree(3, [])


@pytest.fixture
def cat4():
    # 삼각형 (1,2,3), (1,3,4) / 변 인덱스 0..3 = 잎 1..4, 4 = 대각선 (1,3)
    return build_tree(4, [(1, 3)])


@pytest.fixture
def fan5():
    return fan_tree(5)


@pytest.fixture
def fan6():
    return fan_tree(6)
