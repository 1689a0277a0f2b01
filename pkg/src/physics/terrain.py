"""
地形 - 分段线性高度场
"""

from typing import Sequence, Tuple

import numpy as np


# 地形覆盖的水平范围，超出范围时高度按端点延伸
TERRAIN_X_MIN = -100.0
TERRAIN_X_MAX = 300.0


class Terrain:
    """
    分段线性高度场

    Attributes:
        xs: 断点横坐标（严格递增）
        ys: 断点高度
    """

    def __init__(self, breakpoints: Sequence[Tuple[float, float]]):
        points = np.asarray(breakpoints, dtype=float)
        if points.ndim != 2 or points.shape[1] != 2 or len(points) < 2:
            raise ValueError("地形至少需要两个 (x, y) 断点")
        if np.any(np.diff(points[:, 0]) <= 0):
            raise ValueError("地形断点的 x 必须严格递增")
        if not np.all(np.isfinite(points)):
            raise ValueError("地形断点必须是有限值")
        self.xs = points[:, 0].copy()
        self.ys = points[:, 1].copy()

    @property
    def breakpoints(self) -> list:
        return list(zip(self.xs.tolist(), self.ys.tolist()))

    @property
    def extent(self) -> Tuple[float, float]:
        return float(self.xs[0]), float(self.xs[-1])

    def height_slope(self, x) -> Tuple[np.ndarray, np.ndarray]:
        """
        查询高度与坡度（向量化）

        Args:
            x: 横坐标（标量或数组）

        Returns:
            (高度, 坡度)；范围外坡度为 0
        """
        x = np.asarray(x, dtype=float)
        idx = np.clip(np.searchsorted(self.xs, x, side='right') - 1, 0, len(self.xs) - 2)
        x0, x1 = self.xs[idx], self.xs[idx + 1]
        y0, y1 = self.ys[idx], self.ys[idx + 1]
        slope = (y1 - y0) / (x1 - x0)
        height = y0 + (np.clip(x, x0, x1) - x0) * slope
        outside = (x < self.xs[0]) | (x > self.xs[-1])
        slope = np.where(outside, 0.0, slope)
        return height, slope

    def height(self, x) -> np.ndarray:
        return self.height_slope(x)[0]

    def max_height(self, x_lo: float, x_hi: float) -> float:
        """区间 [x_lo, x_hi] 上的最高点（分段线性函数的最值在断点或端点处）"""
        inside = self.xs[(self.xs > x_lo) & (self.xs < x_hi)]
        candidates = np.concatenate([[x_lo, x_hi], inside])
        return float(np.max(self.height(candidates)))

    def mirrored(self) -> 'Terrain':
        """关于 x = 0 的镜像地形"""
        return Terrain(list(zip((-self.xs[::-1]).tolist(), self.ys[::-1].tolist())))


def flat_terrain(height: float = 0.0) -> Terrain:
    """平地"""
    return Terrain([(TERRAIN_X_MIN, height), (TERRAIN_X_MAX, height)])


def staircase_terrain(rise: float, run: float, ramp: float, start: float) -> Terrain:
    """
    上升台阶

    Args:
        rise: 每级台阶高度
        run: 每级台阶水平长度（含斜坡段）
        ramp: 台阶立面的水平宽度（断点 x 必须严格递增，立面不能完全竖直）
        start: 第一级台阶的起点
    """
    if not (0 < ramp < run):
        raise ValueError("需要 0 < ramp < run")
    points = [(TERRAIN_X_MIN, 0.0), (start, 0.0)]
    x, y = start, 0.0
    while x + run < TERRAIN_X_MAX:
        y += rise
        points.append((x + ramp, y))
        x += run
        points.append((x, y))
    points.append((TERRAIN_X_MAX, y))
    return Terrain(points)
