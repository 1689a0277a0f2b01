"""
身体描述子 - 主动体素比例与紧凑度
"""

from dataclasses import dataclass

import numpy as np
from scipy.spatial import ConvexHull

from .body import BodyGrid, VoxelType


@dataclass(frozen=True)
class BodyDescriptor:
    """
    身体描述子

    Attributes:
        active_rate: 主动（水平/垂直驱动）体素占比，[0, 1]
        compactness: 身体面积 / 凸包面积，(0, 1]
        voxel_count: 体素数
    """
    active_rate: float
    compactness: float
    voxel_count: int


def descriptors(body: BodyGrid) -> BodyDescriptor:
    """
    计算身体描述子

    凸包取所有非空单元格的 4 个角点，单个体素的紧凑度为 1。
    """
    cells = body.cells
    count = body.voxel_count
    actuated = int(np.count_nonzero(
        (cells == VoxelType.ACT_HORIZONTAL) | (cells == VoxelType.ACT_VERTICAL)
    ))

    corners = np.array([
        (r + dr, c + dc)
        for r, c in body.occupied
        for dr in (0, 1) for dc in (0, 1)
    ], dtype=float)
    # 二维凸包的 volume 就是面积
    hull_area = ConvexHull(corners).volume
    compactness = min(1.0, count / hull_area)

    return BodyDescriptor(
        active_rate=actuated / count,
        compactness=float(compactness),
        voxel_count=count,
    )
