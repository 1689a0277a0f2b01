"""
物理模块

二维质点-弹簧体素仿真：地形、箱子、力系统、积分器与传感器
"""

from .config import SimConfig
from .terrain import Terrain, flat_terrain, staircase_terrain, TERRAIN_X_MIN, TERRAIN_X_MAX
from .payload import AABB, PayloadBox
from .soft_body import SoftBodyState, assemble, MOORE_OFFSETS
from .forces import (
    ForceBuffer, ForceSystem, ForceSystemManager, SpringForceSystem, GravityForceSystem,
    TerrainContactSystem, PayloadContactSystem, PayloadTerrainSystem, default_force_systems,
)
from .integrator import step, mechanical_energy
from .sensors import observe, voxel_areas, voxel_centers
from .trajectory import TrajectoryRecorder

__all__ = [
    'SimConfig',
    'Terrain', 'flat_terrain', 'staircase_terrain', 'TERRAIN_X_MIN', 'TERRAIN_X_MAX',
    'AABB', 'PayloadBox',
    'SoftBodyState', 'assemble', 'MOORE_OFFSETS',
    'ForceBuffer', 'ForceSystem', 'ForceSystemManager', 'SpringForceSystem', 'GravityForceSystem',
    'TerrainContactSystem', 'PayloadContactSystem', 'PayloadTerrainSystem', 'default_force_systems',
    'step', 'mechanical_energy',
    'observe', 'voxel_areas', 'voxel_centers',
    'TrajectoryRecorder',
]
