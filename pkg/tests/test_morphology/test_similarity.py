"""
测试身体相似度与描述子
"""

from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest

from src.core.errors import DegeneratePopulation
from src.morphology.body import BodyGrid, VoxelType, parse_body
from src.morphology.descriptors import descriptors
from src.morphology.operators import random_body
from src.morphology.similarity import (
    center_of_mass, hamming_distance_aligned, population_diversity,
)


def single(r, c, t=VoxelType.RIGID):
    cells = np.zeros((5, 5), dtype=np.int8)
    cells[r, c] = t
    return BodyGrid(cells)


def _round_half_away(x: Fraction) -> int:
    sign = -1 if x < 0 else 1
    whole = int(abs(x))
    return sign * (whole + (1 if abs(x) - whole >= Fraction(1, 2) else 0))


def hamming_oracle(a: BodyGrid, b: BodyGrid) -> int:
    """用字典表示占用格子，精确有理数质心"""
    occ_a = {(r, c): int(a.cells[r, c]) for r, c in a.occupied}
    occ_b = {(r, c): int(b.cells[r, c]) for r, c in b.occupied}
    shift = []
    for axis in range(2):
        ca = Fraction(sum(p[axis] for p in occ_a), len(occ_a))
        cb = Fraction(sum(p[axis] for p in occ_b), len(occ_b))
        shift.append(_round_half_away(ca - cb))
    moved = {(r + shift[0], c + shift[1]): t for (r, c), t in occ_b.items()}
    keys = set(occ_a) | set(moved)
    return sum(1 for k in keys if occ_a.get(k, 0) != moved.get(k, 0))


class TestCenterOfMass:
    """测试质心"""

    def test_single(self):
        """测试单个体素"""
        assert center_of_mass(single(2, 2)) == (2.0, 2.0)

    def test_square(self):
        """测试 2x2 方块"""
        body = parse_body("RR...-RR...-.....-.....-.....")
        assert center_of_mass(body) == (0.5, 0.5)

    def test_l_shape(self):
        """测试 L 形"""
        body = parse_body("R....-RR...-.....-.....-.....")
        row, col = center_of_mass(body)
        assert row == pytest.approx(2 / 3)
        assert col == pytest.approx(1 / 3)


class TestHammingDistance:
    """测试质心对齐后的 Hamming 距离"""

    def test_translation_invariant(self):
        """测试平移后距离为 0"""
        assert hamming_distance_aligned(single(0, 0), single(4, 4)) == 0

    def test_symbol_mismatch(self):
        """测试同位置不同符号"""
        assert hamming_distance_aligned(single(2, 2), single(2, 2, VoxelType.SOFT)) == 1

    def test_self_distance_zero(self):
        """测试自身距离为 0"""
        rng = np.random.default_rng(3)
        for _ in range(50):
            body = random_body(rng)
            assert hamming_distance_aligned(body, body) == 0

    def test_matches_oracle(self):
        """测试与独立实现一致，且对称"""
        rng = np.random.default_rng(4)
        for _ in range(1000):
            a, b = random_body(rng), random_body(rng)
            d = hamming_distance_aligned(a, b)
            assert d == hamming_oracle(a, b)
            assert d == hamming_distance_aligned(b, a)

    def test_common_translation(self):
        """测试两个身体同时平移距离不变"""
        a = parse_body("RS...-H....-.....-.....-.....")
        b = parse_body("R....-SV...-.....-.....-.....")
        a2 = parse_body(".....-.RS..-.H...-.....-.....")
        b2 = parse_body(".....-.R...-.SV..-.....-.....")
        assert hamming_distance_aligned(a, b) == hamming_distance_aligned(a2, b2)


class TestDiversity:
    """测试种群多样性"""

    def test_identical(self):
        """测试相同身体多样性为 0"""
        body = parse_body("RR...-RR...-.....-.....-.....")
        assert population_diversity([body] * 4) == 0.0

    def test_two_singles(self):
        """测试一对不同符号的单体素"""
        assert population_diversity([single(0, 0), single(3, 3, VoxelType.SOFT)]) == 1.0

    def test_matches_pairwise_mean(self):
        """测试等于所有无序对距离的均值"""
        rng = np.random.default_rng(5)
        population = [random_body(rng) for _ in range(12)]
        expected = np.mean([hamming_oracle(a, b) for a, b in combinations(population, 2)])
        assert population_diversity(population) == pytest.approx(expected)

    def test_degenerate(self):
        """测试种群过小"""
        with pytest.raises(DegeneratePopulation):
            population_diversity([single(0, 0)])


class TestDescriptors:
    """测试身体描述子"""

    def test_full_actuated(self):
        """测试满网格水平驱动"""
        body = BodyGrid(np.full((5, 5), VoxelType.ACT_HORIZONTAL, dtype=np.int8))
        d = descriptors(body)
        assert d.active_rate == 1.0
        assert d.compactness == pytest.approx(1.0)
        assert d.voxel_count == 25

    def test_square_half_active(self):
        """测试 2x2 方块中两个主动体素"""
        d = descriptors(parse_body("HV...-RS...-.....-.....-....."))
        assert d.active_rate == 0.5
        assert d.compactness == pytest.approx(1.0)

    def test_l_shape(self):
        """测试 L 形紧凑度 3 / 3.5"""
        d = descriptors(parse_body("R....-RR...-.....-.....-....."))
        assert d.compactness == pytest.approx(3 / 3.5)

    def test_single_voxel(self):
        """测试单个体素紧凑度为 1"""
        assert descriptors(single(2, 2)).compactness == pytest.approx(1.0)

    @pytest.mark.parametrize("rows,cols", [(1, 1), (1, 5), (2, 3), (3, 3), (5, 4)])
    def test_rectangles(self, rows, cols):
        """测试矩形紧凑度恰为 1"""
        cells = np.zeros((5, 5), dtype=np.int8)
        cells[:rows, :cols] = VoxelType.SOFT
        assert descriptors(BodyGrid(cells)).compactness == pytest.approx(1.0)

    def test_ranges(self):
        """测试随机身体描述子范围"""
        rng = np.random.default_rng(6)
        for _ in range(100):
            d = descriptors(random_body(rng))
            assert 0.0 <= d.active_rate <= 1.0
            assert 0.0 < d.compactness <= 1.0
