"""
力系统 - 按优先级依次累加到质点与箱子上的力

每个力系统只负责一类相互作用，由 ForceSystemManager 按优先级顺序执行
（数字越小越先执行）。弹簧力用 np.bincount 按质点累加。
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from .config import SimConfig
from .payload import PayloadBox
from .soft_body import SoftBodyState
from .terrain import Terrain


@dataclass
class ForceBuffer:
    """一个积分子步内的力累加器"""
    nodes: np.ndarray
    payload: np.ndarray

    @classmethod
    def zeros(cls, n_nodes: int) -> 'ForceBuffer':
        return cls(np.zeros((n_nodes, 2)), np.zeros(2))

    def add_pairwise(self, a: np.ndarray, b: np.ndarray, force: np.ndarray) -> None:
        """质点 a 受 +force，质点 b 受 -force"""
        n = self.nodes.shape[0]
        for axis in (0, 1):
            self.nodes[:, axis] += np.bincount(a, weights=force[:, axis], minlength=n)
            self.nodes[:, axis] -= np.bincount(b, weights=force[:, axis], minlength=n)


def _contact_force(depth: np.ndarray, normal: np.ndarray, rel_vel: np.ndarray,
                   cfg: SimConfig, mass, applied: Optional[np.ndarray] = None) -> np.ndarray:
    """
    罚函数接触力 + 限速库仑摩擦

    摩擦力取“本子步内让切向相对速度归零所需的力”，再截断到 [-μ·fn, μ·fn]：
    静摩擦时切向速度在一个子步内停住，滑动时大小为 μ·fn。

    Args:
        depth: (M,) 穿透深度（>0）
        normal: (M, 2) 指向被推出方向的单位法向
        rel_vel: (M, 2) 相对速度
        cfg: 仿真配置
        mass: 标量或 (M,) 有效质量
        applied: (M, 2) 本子步已经累加在这些点上的其他力，None 表示不计
    """
    vn = np.einsum('ij,ij->i', rel_vel, normal)
    fn = np.maximum(cfg.contact_stiffness * depth - cfg.contact_damping * vn, 0.0)
    tangent = np.stack([normal[:, 1], -normal[:, 0]], axis=1)
    vt = np.einsum('ij,ij->i', rel_vel, tangent)
    stick = mass * vt / cfg.dt
    if applied is not None:
        stick = stick + np.einsum('ij,ij->i', applied, tangent)
    limit = cfg.friction * fn
    ft = -np.clip(stick, -limit, limit)
    return fn[:, None] * normal + ft[:, None] * tangent


def _terrain_penetration(terrain: Terrain, points: np.ndarray):
    """地面以下的点：返回掩码、深度与法向"""
    height, slope = terrain.height_slope(points[:, 0])
    below = points[:, 1] < height
    norm = np.sqrt(1.0 + slope[below] ** 2)
    depth = (height[below] - points[below, 1]) / norm
    normal = np.stack([-slope[below] / norm, 1.0 / norm], axis=1)
    return below, depth, normal


class ForceSystem(ABC):
    """
    力系统基类

    子类实现 apply，把力累加进 ForceBuffer
    """

    def __init__(self, priority: int = 0):
        self.priority = priority
        self.enabled = True

    @abstractmethod
    def apply(self, state: SoftBodyState, payload: Optional[PayloadBox],
              forces: ForceBuffer) -> None:
        pass


class SpringForceSystem(ForceSystem):
    """弹簧弹力与沿弹簧方向的阻尼"""

    def apply(self, state, payload, forces):
        a, b = state.spring_a, state.spring_b
        delta = state.positions[b] - state.positions[a]
        length = np.hypot(delta[:, 0], delta[:, 1])
        safe = np.where(length > 0.0, length, 1.0)
        direction = delta / safe[:, None]
        stretch_rate = np.einsum('ij,ij->i', state.velocities[b] - state.velocities[a], direction)
        magnitude = state.spring_k * (length - state.rest_lengths()) + state.spring_c * stretch_rate
        forces.add_pairwise(a, b, magnitude[:, None] * direction)


class GravityForceSystem(ForceSystem):
    def __init__(self, gravity: float, priority: int = 0):
        super().__init__(priority)
        self.gravity = gravity

    def apply(self, state, payload, forces):
        forces.nodes[:, 1] -= state.masses * self.gravity
        if payload is not None:
            forces.payload[1] -= payload.mass * self.gravity


class TerrainContactSystem(ForceSystem):
    """质点与地面"""

    def __init__(self, terrain: Terrain, cfg: SimConfig, priority: int = 0):
        super().__init__(priority)
        self.terrain = terrain
        self.cfg = cfg

    def apply(self, state, payload, forces):
        below, depth, normal = _terrain_penetration(self.terrain, state.positions)
        if not below.any():
            return
        forces.nodes[below] += _contact_force(depth, normal, state.velocities[below], self.cfg,
                                              state.masses[below], forces.nodes[below])


class PayloadContactSystem(ForceSystem):
    """质点与箱子：穿入箱子的质点沿最浅的一侧被推出，箱子受反作用力"""

    def __init__(self, cfg: SimConfig, priority: int = 0):
        super().__init__(priority)
        self.cfg = cfg

    def apply(self, state, payload, forces):
        if payload is None:
            return
        box = payload.aabb
        xs, ys = state.positions[:, 0], state.positions[:, 1]
        inside = box.contains_points(xs, ys)
        if not inside.any():
            return
        px, py = xs[inside], ys[inside]
        # 列顺序：左、右、下、上
        depths = np.stack([px - box.left, box.right - px, py - box.bottom, box.top - py], axis=1)
        side = np.argmin(depths, axis=1)
        outward = np.array([[-1.0, 0.0], [1.0, 0.0], [0.0, -1.0], [0.0, 1.0]])
        normal = outward[side]
        depth = depths[np.arange(len(side)), side]
        rel_vel = state.velocities[inside] - payload.velocity
        masses = state.masses[inside]
        reduced = masses * payload.mass / (masses + payload.mass)
        force = _contact_force(depth, normal, rel_vel, self.cfg, reduced)
        forces.nodes[inside] += force
        forces.payload -= force.sum(axis=0)


class PayloadTerrainSystem(ForceSystem):
    """箱子底部两角与地面"""

    def __init__(self, terrain: Terrain, cfg: SimConfig, priority: int = 0):
        super().__init__(priority)
        self.terrain = terrain
        self.cfg = cfg

    def apply(self, state, payload, forces):
        if payload is None:
            return
        box = payload.aabb
        corners = np.array([[box.left, box.bottom], [box.right, box.bottom]])
        below, depth, normal = _terrain_penetration(self.terrain, corners)
        if not below.any():
            return
        n_below = int(below.sum())
        rel_vel = np.repeat(payload.velocity[None, :], n_below, axis=0)
        applied = np.repeat(forces.payload[None, :] / n_below, n_below, axis=0)
        forces.payload += _contact_force(depth, normal, rel_vel, self.cfg,
                                         payload.mass / n_below, applied).sum(axis=0)


class ForceSystemManager:
    """
    力系统管理器

    负责注册力系统并按优先级执行
    """

    def __init__(self):
        self._systems: List[ForceSystem] = []

    def add_system(self, system: ForceSystem) -> None:
        self._systems.append(system)
        # 按优先级排序（稳定排序，同优先级保持注册顺序）
        self._systems.sort(key=lambda s: s.priority)

    def accumulate(self, state: SoftBodyState, payload: Optional[PayloadBox]) -> ForceBuffer:
        """计算当前状态下的合力"""
        forces = ForceBuffer.zeros(state.n_nodes)
        for system in self._systems:
            if system.enabled:
                system.apply(state, payload, forces)
        return forces


def default_force_systems(cfg: SimConfig, terrain: Terrain) -> ForceSystemManager:
    """弹簧、重力、地面接触、箱子接触、箱子与地面"""
    manager = ForceSystemManager()
    manager.add_system(SpringForceSystem(priority=0))
    manager.add_system(GravityForceSystem(cfg.gravity, priority=10))
    manager.add_system(TerrainContactSystem(terrain, cfg, priority=20))
    manager.add_system(PayloadContactSystem(cfg, priority=30))
    manager.add_system(PayloadTerrainSystem(terrain, cfg, priority=40))
    return manager
