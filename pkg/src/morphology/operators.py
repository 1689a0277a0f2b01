"""
身体遗传算子 - 随机初始化与变异
"""

import numpy as np

from ..core.constants import GRID
from ..core.errors import RetryExhausted
from ..core.logger import get_module_logger
from .body import BodyGrid, VoxelType, FILLED_TYPES, neighbors4, is_valid_polyomino


logger = get_module_logger(__name__)


def random_body(rng: np.random.Generator) -> BodyGrid:
    """
    随机生成初始身体

    从随机位置放下一个随机类型的体素，然后不断在与已有体素相邻的
    新位置添加体素，直到达到 [10, 20] 中均匀抽取的目标数量。

    Args:
        rng: 随机数生成器

    Returns:
        合法的多联骨牌身体
    """
    cells = np.zeros((GRID.ROWS, GRID.COLS), dtype=np.int8)
    target = int(rng.integers(GRID.INIT_MIN_VOXELS, GRID.INIT_MAX_VOXELS + 1))

    r, c = int(rng.integers(GRID.ROWS)), int(rng.integers(GRID.COLS))
    cells[r, c] = FILLED_TYPES[int(rng.integers(len(FILLED_TYPES)))]
    count = 1

    while count < target:
        # 候选位置按行优先排列，保证相同种子得到相同结果
        frontier = sorted({
            neighbor
            for (rr, cc) in zip(*np.nonzero(cells))
            for neighbor in neighbors4(int(rr), int(cc), GRID.ROWS, GRID.COLS)
            if cells[neighbor] == VoxelType.EMPTY
        })
        position = frontier[int(rng.integers(len(frontier)))]
        cells[position] = FILLED_TYPES[int(rng.integers(len(FILLED_TYPES)))]
        count += 1

    return BodyGrid(cells)


def _acceptable(cells: np.ndarray) -> bool:
    count = int(np.count_nonzero(cells))
    return GRID.MIN_VOXELS <= count <= GRID.MAX_VOXELS and is_valid_polyomino(cells)


def mutate_body(body: BodyGrid, rng: np.random.Generator,
                max_retries: int = GRID.MUTATION_RETRIES) -> BodyGrid:
    """
    变异身体

    随机选 1~3 个格子，各自改成另一个符号（允许变为空）。
    结果不是单个多联骨牌或体素数不在 [5, 25] 内时撤销并重抽。

    Args:
        body: 父代身体
        rng: 随机数生成器
        max_retries: 最大重抽次数

    Returns:
        合法的子代身体

    Raises:
        RetryExhausted: 重抽次数耗尽
    """
    flat_parent = body.cells.reshape(-1)
    n_symbols = len(VoxelType)

    for attempt in range(max_retries):
        n_changes = int(rng.integers(1, GRID.MUTATION_MAX_CELLS + 1))
        positions = rng.choice(GRID.CELLS, size=n_changes, replace=False)
        flat = flat_parent.copy()
        for pos in positions:
            # 偏移 1..4 保证换成不同的符号
            flat[pos] = (int(flat[pos]) + int(rng.integers(1, n_symbols))) % n_symbols
        cells = flat.reshape(GRID.ROWS, GRID.COLS)
        if _acceptable(cells):
            return BodyGrid(cells)

    logger.warning(f"变异重试 {max_retries} 次仍未得到合法身体")
    raise RetryExhausted(f"变异重试 {max_retries} 次失败")
