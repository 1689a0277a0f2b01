"""
积分器 - 半隐式欧拉，一个控制步包含 substeps 个子步
"""

from typing import Optional

import numpy as np

from ..core.errors import NumericalBlowup
from .config import SimConfig
from .forces import ForceSystemManager, default_force_systems
from .payload import PayloadBox
from .soft_body import SoftBodyState
from .terrain import Terrain


def step(state: SoftBodyState, actuation: Optional[np.ndarray], cfg: SimConfig, terrain: Terrain,
         payload: Optional[PayloadBox] = None,
         systems: Optional[ForceSystemManager] = None) -> SoftBodyState:
    """
    推进一个控制步（原地修改 state 与 payload）

    Args:
        state: 软体状态
        actuation: (V,) 每个体素的目标倍率，非主动体素的值被忽略；None 表示保持不变
        cfg: 仿真配置
        terrain: 地形
        payload: 可选箱子
        systems: 预先构建的力系统，省略时按 cfg 构建

    Returns:
        同一个 state（k 已加 1）

    Raises:
        NumericalBlowup: 坐标或速度出现非有限值
    """
    if actuation is not None:
        actuation = np.asarray(actuation, dtype=float)
        if actuation.shape != (state.n_voxels,):
            raise ValueError(f"驱动目标形状应为 ({state.n_voxels},)，实际 {actuation.shape}")
        state.set_actuation(actuation)

    systems = systems or default_force_systems(cfg, terrain)
    inv_mass = 1.0 / state.masses[:, None]
    dt = cfg.dt
    for _ in range(cfg.substeps):
        forces = systems.accumulate(state, payload)
        state.velocities += forces.nodes * inv_mass * dt
        state.positions += state.velocities * dt
        if payload is not None:
            payload.velocity += forces.payload / payload.mass * dt
            payload.position += payload.velocity * dt

    finite = np.all(np.isfinite(state.positions)) and np.all(np.isfinite(state.velocities))
    if payload is not None:
        finite = finite and np.all(np.isfinite(payload.position)) and np.all(np.isfinite(payload.velocity))
    if not finite:
        raise NumericalBlowup(f"第 {state.k} 步出现非有限坐标，仿真配置不稳定")

    state.k += 1
    return state


def mechanical_energy(state: SoftBodyState, cfg: SimConfig,
                      payload: Optional[PayloadBox] = None) -> float:
    """动能 + 重力势能 + 弹性势能（诊断用）"""
    kinetic = 0.5 * float(np.sum(state.masses[:, None] * state.velocities ** 2))
    potential = cfg.gravity * float(np.sum(state.masses * state.positions[:, 1]))
    delta = state.positions[state.spring_b] - state.positions[state.spring_a]
    stretch = np.hypot(delta[:, 0], delta[:, 1]) - state.rest_lengths()
    elastic = 0.5 * float(np.sum(state.spring_k * stretch ** 2))
    if payload is not None:
        kinetic += 0.5 * payload.mass * float(np.sum(payload.velocity ** 2))
        potential += cfg.gravity * payload.mass * float(payload.position[1])
    return kinetic + potential + elastic
