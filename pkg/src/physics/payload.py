"""
载荷箱子 - 只平动不转动的刚性矩形
"""

from dataclasses import dataclass, field

import numpy as np


@dataclass
class AABB:
    """轴对齐包围盒"""
    x: float
    y: float
    width: float
    height: float

    @property
    def left(self) -> float:
        return self.x

    @property
    def right(self) -> float:
        return self.x + self.width

    @property
    def top(self) -> float:
        return self.y + self.height

    @property
    def bottom(self) -> float:
        return self.y

    def contains_points(self, xs: np.ndarray, ys: np.ndarray, tolerance: float = 0.0) -> np.ndarray:
        """点是否落在（按容差外扩的）盒子内"""
        return ((xs > self.left - tolerance) & (xs < self.right + tolerance) &
                (ys > self.bottom - tolerance) & (ys < self.top + tolerance))

    def closest_points(self, xs: np.ndarray, ys: np.ndarray):
        """盒子上离各点最近的点"""
        return np.clip(xs, self.left, self.right), np.clip(ys, self.bottom, self.top)


@dataclass
class PayloadBox:
    """
    载荷箱子

    Attributes:
        width: 宽（体素边长单位）
        height: 高
        position: 底边中点 (x, y)
        velocity: 速度
        mass: 质量
    """
    width: float
    height: float
    position: np.ndarray = field(default_factory=lambda: np.zeros(2))
    velocity: np.ndarray = field(default_factory=lambda: np.zeros(2))
    mass: float = 2.0

    def __post_init__(self):
        if self.width <= 0 or self.height <= 0:
            raise ValueError("箱子宽高必须为正")
        if self.mass <= 0:
            raise ValueError("箱子质量必须为正")
        self.position = np.array(self.position, dtype=float)
        self.velocity = np.array(self.velocity, dtype=float)

    @property
    def aabb(self) -> AABB:
        return AABB(self.position[0] - self.width / 2, self.position[1], self.width, self.height)

    @property
    def center(self) -> np.ndarray:
        return np.array([self.position[0], self.position[1] + self.height / 2])

    def copy(self) -> 'PayloadBox':
        return PayloadBox(self.width, self.height, self.position.copy(),
                          self.velocity.copy(), self.mass)

    def mirrored(self) -> 'PayloadBox':
        """关于 x = 0 的镜像"""
        return PayloadBox(self.width, self.height,
                          np.array([-self.position[0], self.position[1]]),
                          np.array([-self.velocity[0], self.velocity[1]]),
                          self.mass)
