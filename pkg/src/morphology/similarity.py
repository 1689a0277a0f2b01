"""
身体相似度 - 质心对齐后的 Hamming 距离与种群多样性
"""

from itertools import combinations
from typing import Sequence, Tuple

import numpy as np

from ..core.constants import GRID
from ..core.errors import DegeneratePopulation
from .body import BodyGrid


def center_of_mass(body: BodyGrid) -> Tuple[float, float]:
    """非空格子坐标的（不加权）均值 (row, col)"""
    occupied = np.argwhere(body.cells != 0)
    row, col = occupied.mean(axis=0)
    return float(row), float(col)


def _round_half_away(numerator: int, denominator: int) -> int:
    """整数有理数 numerator/denominator 的四舍五入（.5 远离零）"""
    sign = -1 if numerator < 0 else 1
    return sign * ((2 * abs(numerator) + denominator) // (2 * denominator))


def alignment_shift(a: BodyGrid, b: BodyGrid) -> Tuple[int, int]:
    """
    把 b 的质心平移到 a 的质心所需的整数位移 (drow, dcol)

    质心差用整数有理数计算，避免 0.5 附近的浮点误差影响取整。
    """
    occ_a = np.argwhere(a.cells != 0)
    occ_b = np.argwhere(b.cells != 0)
    na, nb = len(occ_a), len(occ_b)
    sum_a = occ_a.sum(axis=0)
    sum_b = occ_b.sum(axis=0)
    shift = []
    for axis in range(2):
        numerator = int(sum_a[axis]) * nb - int(sum_b[axis]) * na
        shift.append(_round_half_away(numerator, na * nb))
    return shift[0], shift[1]


def hamming_distance_aligned(a: BodyGrid, b: BodyGrid) -> int:
    """
    质心对齐后的 Hamming 距离

    b 按 alignment_shift 平移后与 a 放到同一块画布上，
    逐格比较符号，画布外视为空。
    """
    drow, dcol = alignment_shift(a, b)
    size = GRID.CANVAS
    offset = GRID.ROWS - 1

    canvas_a = np.zeros((size, size), dtype=np.int8)
    canvas_b = np.zeros((size, size), dtype=np.int8)
    canvas_a[offset:offset + GRID.ROWS, offset:offset + GRID.COLS] = a.cells
    canvas_b[offset + drow:offset + drow + GRID.ROWS,
             offset + dcol:offset + dcol + GRID.COLS] = b.cells
    return int(np.count_nonzero(canvas_a != canvas_b))


def population_diversity(population: Sequence[BodyGrid]) -> float:
    """
    种群多样性：所有无序身体对的对齐 Hamming 距离均值

    Raises:
        DegeneratePopulation: 种群少于 2 个身体
    """
    if len(population) < 2:
        raise DegeneratePopulation(f"多样性至少需要 2 个身体，得到 {len(population)}")
    distances = [hamming_distance_aligned(a, b) for a, b in combinations(population, 2)]
    return float(np.mean(distances))
