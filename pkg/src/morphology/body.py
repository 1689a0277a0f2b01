"""
身体表示 - 体素类型与 5x5 身体网格
"""

from collections import deque
from enum import IntEnum
from typing import Iterator, List, Tuple

import numpy as np

from ..core.constants import GRID
from ..core.errors import ParseError


class VoxelType(IntEnum):
    """体素类型枚举（五个符号，EMPTY 表示该位置没有体素）"""
    EMPTY = 0
    RIGID = 1
    SOFT = 2
    ACT_HORIZONTAL = 3
    ACT_VERTICAL = 4

    @property
    def symbol(self) -> str:
        return _SYMBOLS[self]

    @property
    def is_actuated(self) -> bool:
        return self in (VoxelType.ACT_HORIZONTAL, VoxelType.ACT_VERTICAL)

    @classmethod
    def from_symbol(cls, symbol: str) -> 'VoxelType':
        try:
            return _FROM_SYMBOL[symbol]
        except KeyError:
            raise ParseError(f"未知的体素符号: {symbol!r}") from None


_SYMBOLS = {
    VoxelType.EMPTY: '.',
    VoxelType.RIGID: 'R',
    VoxelType.SOFT: 'S',
    VoxelType.ACT_HORIZONTAL: 'H',
    VoxelType.ACT_VERTICAL: 'V',
}
_FROM_SYMBOL = {s: v for v, s in _SYMBOLS.items()}

# 非空体素类型，随机生长时均匀抽取
FILLED_TYPES: Tuple[VoxelType, ...] = (
    VoxelType.RIGID, VoxelType.SOFT, VoxelType.ACT_HORIZONTAL, VoxelType.ACT_VERTICAL,
)


def neighbors4(r: int, c: int, rows: int, cols: int) -> Iterator[Tuple[int, int]]:
    """四邻域（共边）邻居"""
    for dr, dc in ((-1, 0), (1, 0), (0, -1), (0, 1)):
        nr, nc = r + dr, c + dc
        if 0 <= nr < rows and 0 <= nc < cols:
            yield nr, nc


def is_valid_polyomino(cells: np.ndarray) -> bool:
    """
    检查非空格子是否构成恰好一个四连通多联骨牌

    Args:
        cells: 体素类型矩阵

    Returns:
        非空且四连通时为 True
    """
    occupied = np.argwhere(cells != VoxelType.EMPTY)
    if len(occupied) == 0:
        return False

    rows, cols = cells.shape
    start = tuple(occupied[0])
    seen = {start}
    queue = deque([start])
    while queue:
        r, c = queue.popleft()
        for neighbor in neighbors4(r, c, rows, cols):
            if neighbor not in seen and cells[neighbor] != VoxelType.EMPTY:
                seen.add(neighbor)
                queue.append(neighbor)
    return len(seen) == len(occupied)


class BodyGrid:
    """
    5x5 身体网格（遗传算法中身体部分的基因型）

    不可变：内部数组只读，可作为字典键使用。
    第 0 行是机器人的顶部。
    """

    __slots__ = ('_cells',)

    def __init__(self, cells):
        array = np.array(cells, dtype=np.int8)
        if array.shape != (GRID.ROWS, GRID.COLS):
            raise ParseError(f"身体网格必须是 {GRID.ROWS}x{GRID.COLS}，得到 {array.shape}")
        if array.min() < 0 or array.max() > max(VoxelType):
            raise ParseError("身体网格包含未知的体素类型")
        array.setflags(write=False)
        self._cells = array

    @property
    def cells(self) -> np.ndarray:
        return self._cells

    @property
    def voxel_count(self) -> int:
        return int(np.count_nonzero(self._cells))

    @property
    def occupied(self) -> List[Tuple[int, int]]:
        """行优先顺序的非空格子坐标"""
        return [(int(r), int(c)) for r, c in np.argwhere(self._cells != VoxelType.EMPTY)]

    def is_valid(self) -> bool:
        return is_valid_polyomino(self._cells)

    def __getitem__(self, index) -> VoxelType:
        return VoxelType(int(self._cells[index]))

    def __eq__(self, other) -> bool:
        if not isinstance(other, BodyGrid):
            return NotImplemented
        return bool(np.array_equal(self._cells, other._cells))

    def __hash__(self) -> int:
        return hash(self._cells.tobytes())

    def __reduce__(self):
        # 跨进程传递时重新冻结数组
        return (BodyGrid, (self._cells.tolist(),))

    def __repr__(self) -> str:
        return f"BodyGrid({format_body(self)!r})"


def format_body(body: BodyGrid) -> str:
    """身体文本格式：5 行 5 字符，用 '-' 连接"""
    return '-'.join(
        ''.join(VoxelType(int(v)).symbol for v in row) for row in body.cells
    )


def parse_body(text: str) -> BodyGrid:
    """
    解析身体文本格式

    Raises:
        ParseError: 行数、列数或符号非法
    """
    rows = text.strip().split('-')
    if len(rows) != GRID.ROWS or any(len(row) != GRID.COLS for row in rows):
        raise ParseError(f"身体文本应为 {GRID.ROWS} 行 x {GRID.COLS} 列: {text!r}")
    return BodyGrid([[VoxelType.from_symbol(ch) for ch in row] for row in rows])


def mirror_body(body: BodyGrid) -> BodyGrid:
    """左右镜像"""
    return BodyGrid(body.cells[:, ::-1])
