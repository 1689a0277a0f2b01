"""
回合仿真与质量函数 q(b, θ)
"""

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from ..core.errors import NumericalBlowup, UnstableSimulation
from ..controller.mlp import forward_batch
from ..morphology.body import BodyGrid
from ..physics.config import SimConfig
from ..physics.forces import default_force_systems
from ..physics.integrator import step
from ..physics.payload import PayloadBox
from ..physics.sensors import observe
from ..physics.soft_body import SoftBodyState, assemble
from ..physics.trajectory import TrajectoryRecorder
from .environment import build_terrain, spawn_payload
from .task import TaskId, TaskParams


@dataclass(frozen=True)
class EpisodeResult:
    """
    回合结果

    Attributes:
        q: 质量（x 方向位移，体素边长单位）
        carried: Carry / Catch 结束时箱子是否仍在机器人上；其他任务为 False
        start_com, end_com: 机器人质心起止位置
        payload_end: 箱子最终位置（底边中点），无箱子时为 None
    """
    q: float
    carried: bool
    start_com: Tuple[float, float]
    end_com: Tuple[float, float]
    payload_end: Optional[Tuple[float, float]] = None


def episode_seed_for(*key: int) -> int:
    """
    由整数键（全局种子、代、个体、评估序号 ...）派生回合种子

    相同键总是得到相同种子，不同键的种子相互独立。
    """
    if any(int(k) < 0 for k in key):
        raise ValueError(f"种子键必须非负: {key}")
    return int(np.random.SeedSequence([int(k) for k in key]).generate_state(1, dtype=np.uint32)[0])


def is_carried(state: SoftBodyState, payload: PayloadBox, tolerance: float) -> bool:
    """箱子与机器人接触（容差内有质点落在箱子里）且箱子质心高于机器人质心"""
    touching = payload.aabb.contains_points(state.positions[:, 0], state.positions[:, 1], tolerance)
    return bool(touching.any()) and bool(payload.center[1] > state.center_of_mass()[1])


def carry_quality(state: SoftBodyState, payload: PayloadBox, payload_start_x: float,
                  tolerance: float) -> Tuple[float, bool]:
    """
    Carry / Catch 的质量

    仍托着箱子时为箱子 x 位移（下限 0），否则为机器人与箱子 x 距离的相反数
    """
    carried = is_carried(state, payload, tolerance)
    if carried:
        return max(float(payload.position[0] - payload_start_x), 0.0), True
    return -abs(float(state.center_of_mass()[0] - payload.position[0])), False


def run_episode(body: BodyGrid, theta: np.ndarray, task: TaskId,
                episode_seed: Optional[int] = 0,
                params: Optional[TaskParams] = None,
                sim_cfg: Optional[SimConfig] = None,
                recorder: Optional[TrajectoryRecorder] = None) -> EpisodeResult:
    """
    仿真一个回合

    Args:
        body: 身体
        theta: 大脑参数
        task: 任务
        episode_seed: 回合种子（只有 Catch 使用）
        params: 任务参数，默认取代码默认值
        sim_cfg: 仿真配置，默认取代码默认值
        recorder: 可选轨迹记录器

    Returns:
        EpisodeResult

    Raises:
        UnstableSimulation: 仿真出现非有限值
    """
    params = params or TaskParams()
    sim_cfg = sim_cfg or SimConfig()
    rng = np.random.default_rng(0 if episode_seed is None else episode_seed)

    terrain = build_terrain(task, params)
    state = assemble(body, sim_cfg, terrain, params.spawn_x)
    payload = spawn_payload(task, state, rng, params)
    systems = default_force_systems(sim_cfg, terrain)

    start_com = state.center_of_mass()
    payload_start_x = float(payload.position[0]) if payload is not None else 0.0
    if recorder is not None:
        recorder.record(state, None, payload)

    try:
        for _ in range(params.episode_steps):
            frame = observe(state, body, payload, task.masks_distance)
            actuation = forward_batch(theta, frame)
            step(state, actuation, sim_cfg, terrain, payload, systems)
            if recorder is not None:
                recorder.record(state, actuation, payload)
    except NumericalBlowup as e:
        raise UnstableSimulation(f"{task.value} 回合仿真失败: {e}") from e

    end_com = state.center_of_mass()
    if payload is None:
        q, carried = float(end_com[0] - start_com[0]), False
        payload_end = None
    else:
        q, carried = carry_quality(state, payload, payload_start_x, params.carry_tolerance)
        payload_end = (float(payload.position[0]), float(payload.position[1]))

    return EpisodeResult(
        q=q,
        carried=carried,
        start_com=(float(start_com[0]), float(start_com[1])),
        end_com=(float(end_com[0]), float(end_com[1])),
        payload_end=payload_end,
    )
