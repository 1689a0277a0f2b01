"""
体素传感器

每个体素 30 个输入：Moore 邻域 9 个槽位 × (水平速度, 垂直速度, 面积)，
到箱子最近点的水平、垂直距离，以及周期时间信号。
"""

from typing import Optional

import numpy as np

from ..core.constants import SENSOR
from ..morphology.body import BodyGrid
from .payload import PayloadBox
from .soft_body import SoftBodyState


def voxel_areas(state: SoftBodyState) -> np.ndarray:
    """鞋带公式计算每个体素四边形面积（角点逆时针：左下、右下、右上、左上）"""
    quad = state.positions[state.voxel_nodes]
    x, y = quad[..., 0], quad[..., 1]
    return 0.5 * np.sum(x * np.roll(y, -1, axis=1) - np.roll(x, -1, axis=1) * y, axis=1)


def voxel_centers(state: SoftBodyState) -> np.ndarray:
    return state.positions[state.voxel_nodes].mean(axis=1)


def observe(state: SoftBodyState, body: Optional[BodyGrid] = None,
            payload: Optional[PayloadBox] = None, mask_distance: bool = False) -> np.ndarray:
    """
    计算传感器帧

    Args:
        state: 软体状态
        body: 身体网格（仅用于校验体素数）
        payload: 可选箱子；没有箱子时距离输入为 0
        mask_distance: 为 True 时两个距离输入恒为 0

    Returns:
        (V, 30) 数组
    """
    n_voxels = state.n_voxels
    if body is not None and body.voxel_count != n_voxels:
        raise ValueError(f"身体体素数 {body.voxel_count} 与状态 {n_voxels} 不一致")

    own = np.empty((n_voxels, SENSOR.VALUES_PER_SLOT))
    own[:, :2] = state.velocities[state.voxel_nodes].mean(axis=1)
    own[:, 2] = voxel_areas(state)

    neighbors = state.voxel_neighbors
    present = neighbors >= 0
    slots = own[np.where(present, neighbors, 0)]
    slots[~present] = 0.0

    frame = np.zeros((n_voxels, SENSOR.INPUT_SIZE))
    frame[:, :SENSOR.DISTANCE_OFFSET] = slots.reshape(n_voxels, -1)

    if payload is not None and not mask_distance:
        centers = voxel_centers(state)
        qx, qy = payload.aabb.closest_points(centers[:, 0], centers[:, 1])
        frame[:, SENSOR.DISTANCE_OFFSET] = qx - centers[:, 0]
        frame[:, SENSOR.DISTANCE_OFFSET + 1] = qy - centers[:, 1]

    frame[:, SENSOR.TIME_OFFSET] = (state.k % SENSOR.TIME_PERIOD) / SENSOR.TIME_PERIOD
    return frame
