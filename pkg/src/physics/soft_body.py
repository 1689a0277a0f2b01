"""
软体状态与组装

体素的四个角是质点，相邻体素共享角点。每个体素有 4 条边弹簧和
2 条对角弹簧（共享边上的弹簧各自属于各自的体素，不去重）。
"""

from dataclasses import dataclass
from typing import Dict, List, Tuple

import numpy as np

from ..core.constants import ACTUATION
from ..core.errors import SpawnCollision
from ..morphology.body import BodyGrid, VoxelType
from .config import SimConfig
from .terrain import Terrain


# 弹簧种类
SPRING_HORIZONTAL = 0
SPRING_VERTICAL = 1
SPRING_DIAGONAL = 2

# 体素角点在 voxel_nodes 中的列顺序（逆时针）
CORNER_BL, CORNER_BR, CORNER_TR, CORNER_TL = 0, 1, 2, 3

# Moore 邻域槽位，按网格行优先排列（dr=-1 为上方一行）
MOORE_OFFSETS: Tuple[Tuple[int, int], ...] = tuple(
    (dr, dc) for dr in (-1, 0, 1) for dc in (-1, 0, 1)
)


@dataclass
class SoftBodyState:
    """
    软体仿真状态（由一个回合独占）

    Attributes:
        positions: (N, 2) 质点位置
        velocities: (N, 2) 质点速度
        masses: (N,) 质点质量
        voxel_cells: 每个体素的网格坐标 (row, col)，行优先
        voxel_types: (V,) 体素类型
        voxel_nodes: (V, 4) 体素角点下标 [左下, 右下, 右上, 左上]
        voxel_neighbors: (V, 9) Moore 邻居体素下标，缺失为 -1
        spring_a, spring_b: (S,) 弹簧两端质点
        spring_voxel: (S,) 弹簧所属体素
        spring_kind: (S,) 水平 / 垂直 / 对角
        spring_k, spring_c: (S,) 刚度与阻尼系数
        rest_scale: (V, 2) 水平、垂直方向静止长度倍率
        k: 控制步计数
    """
    positions: np.ndarray
    velocities: np.ndarray
    masses: np.ndarray
    voxel_cells: List[Tuple[int, int]]
    voxel_types: np.ndarray
    voxel_nodes: np.ndarray
    voxel_neighbors: np.ndarray
    spring_a: np.ndarray
    spring_b: np.ndarray
    spring_voxel: np.ndarray
    spring_kind: np.ndarray
    spring_k: np.ndarray
    spring_c: np.ndarray
    rest_scale: np.ndarray
    voxel_side: float
    k: int = 0

    @property
    def n_nodes(self) -> int:
        return self.positions.shape[0]

    @property
    def n_voxels(self) -> int:
        return self.voxel_nodes.shape[0]

    @property
    def n_springs(self) -> int:
        return self.spring_a.shape[0]

    @property
    def actuated_mask(self) -> np.ndarray:
        return (self.voxel_types == VoxelType.ACT_HORIZONTAL) | (self.voxel_types == VoxelType.ACT_VERTICAL)

    def center_of_mass(self) -> np.ndarray:
        """质量加权质心"""
        return (self.masses[:, None] * self.positions).sum(axis=0) / self.masses.sum()

    def rest_lengths(self) -> np.ndarray:
        """按当前静止长度倍率计算每根弹簧的静止长度"""
        scale = self.rest_scale[self.spring_voxel]
        horizontal = scale[:, 0] * self.voxel_side
        vertical = scale[:, 1] * self.voxel_side
        diagonal = np.hypot(horizontal, vertical)
        return np.choose(self.spring_kind, [horizontal, vertical, diagonal])

    def set_actuation(self, targets: np.ndarray) -> None:
        """
        设置主动体素驱动轴上的静止长度倍率

        Args:
            targets: (V,) 每个体素的目标；非主动体素忽略，结果夹到 [0.6, 1.6]
        """
        targets = np.clip(np.asarray(targets, dtype=float), ACTUATION.MIN_SCALE, ACTUATION.MAX_SCALE)
        horizontal = self.voxel_types == VoxelType.ACT_HORIZONTAL
        vertical = self.voxel_types == VoxelType.ACT_VERTICAL
        self.rest_scale[horizontal, 0] = targets[horizontal]
        self.rest_scale[vertical, 1] = targets[vertical]

    def copy(self) -> 'SoftBodyState':
        return SoftBodyState(
            positions=self.positions.copy(),
            velocities=self.velocities.copy(),
            masses=self.masses,
            voxel_cells=self.voxel_cells,
            voxel_types=self.voxel_types,
            voxel_nodes=self.voxel_nodes,
            voxel_neighbors=self.voxel_neighbors,
            spring_a=self.spring_a,
            spring_b=self.spring_b,
            spring_voxel=self.spring_voxel,
            spring_kind=self.spring_kind,
            spring_k=self.spring_k,
            spring_c=self.spring_c,
            rest_scale=self.rest_scale.copy(),
            voxel_side=self.voxel_side,
            k=self.k,
        )


def assemble(body: BodyGrid, cfg: SimConfig, terrain: Terrain, spawn_x: float = 0.0) -> SoftBodyState:
    """
    组装软体

    身体足迹的水平中心放在 spawn_x，底部恰好落在足迹范围内的最高地面上。
    所有静止长度倍率为 1，k = 0。

    Raises:
        SpawnCollision: 足迹超出地形范围
    """
    side = cfg.voxel_side
    cells = body.occupied
    rows = [r for r, _ in cells]
    cols = [c for _, c in cells]
    col_center = (min(cols) + max(cols) + 1) / 2.0
    bottom_row = max(rows) + 1

    x_lo = spawn_x + (min(cols) - col_center) * side
    x_hi = spawn_x + (max(cols) + 1 - col_center) * side
    terrain_lo, terrain_hi = terrain.extent
    if x_lo < terrain_lo or x_hi > terrain_hi:
        raise SpawnCollision(f"足迹 [{x_lo}, {x_hi}] 超出地形范围 [{terrain_lo}, {terrain_hi}]")
    base_y = terrain.max_height(x_lo, x_hi)
    if not np.isfinite(base_y):
        raise SpawnCollision("出生点地形高度非有限值")

    node_index: Dict[Tuple[int, int], int] = {}
    positions: List[Tuple[float, float]] = []

    def node(i: int, j: int) -> int:
        if (i, j) not in node_index:
            node_index[(i, j)] = len(positions)
            positions.append((spawn_x + (j - col_center) * side, base_y + (bottom_row - i) * side))
        return node_index[(i, j)]

    voxel_index = {cell: v for v, cell in enumerate(cells)}
    voxel_nodes = []
    voxel_types = []
    springs_a, springs_b, springs_voxel, springs_kind, springs_k = [], [], [], [], []

    for v, (r, c) in enumerate(cells):
        tl, tr = node(r, c), node(r, c + 1)
        bl, br = node(r + 1, c), node(r + 1, c + 1)
        voxel_nodes.append((bl, br, tr, tl))
        vtype = body[r, c]
        voxel_types.append(int(vtype))

        relative = cfg.rigid_stiffness if vtype == VoxelType.RIGID else cfg.soft_stiffness
        stiffness = relative * cfg.stiffness_scale
        for a, b, kind in ((bl, br, SPRING_HORIZONTAL), (tl, tr, SPRING_HORIZONTAL),
                           (bl, tl, SPRING_VERTICAL), (br, tr, SPRING_VERTICAL),
                           (bl, tr, SPRING_DIAGONAL), (br, tl, SPRING_DIAGONAL)):
            springs_a.append(a)
            springs_b.append(b)
            springs_voxel.append(v)
            springs_kind.append(kind)
            springs_k.append(stiffness)

    neighbors = np.full((len(cells), len(MOORE_OFFSETS)), -1, dtype=np.int64)
    for v, (r, c) in enumerate(cells):
        for slot, (dr, dc) in enumerate(MOORE_OFFSETS):
            neighbors[v, slot] = voxel_index.get((r + dr, c + dc), -1)

    spring_k = np.asarray(springs_k, dtype=float)
    n_nodes = len(positions)
    return SoftBodyState(
        positions=np.asarray(positions, dtype=float),
        velocities=np.zeros((n_nodes, 2)),
        masses=np.full(n_nodes, cfg.corner_mass),
        voxel_cells=list(cells),
        voxel_types=np.asarray(voxel_types, dtype=np.int8),
        voxel_nodes=np.asarray(voxel_nodes, dtype=np.int64),
        voxel_neighbors=neighbors,
        spring_a=np.asarray(springs_a, dtype=np.int64),
        spring_b=np.asarray(springs_b, dtype=np.int64),
        spring_voxel=np.asarray(springs_voxel, dtype=np.int64),
        spring_kind=np.asarray(springs_kind, dtype=np.int64),
        spring_k=spring_k,
        spring_c=np.array([cfg.spring_damping(k) for k in spring_k]),
        rest_scale=np.ones((len(cells), 2)),
        voxel_side=side,
        k=0,
    )
