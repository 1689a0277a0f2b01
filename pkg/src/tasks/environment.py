"""
任务环境：地形与箱子
"""

from typing import Optional

import numpy as np

from ..physics.payload import PayloadBox
from ..physics.soft_body import SoftBodyState
from ..physics.terrain import Terrain, flat_terrain, staircase_terrain
from .task import TaskId, TaskParams


def build_terrain(task: TaskId, params: Optional[TaskParams] = None) -> Terrain:
    """Simple / Carry / Catch 为 y=0 的平地，Steps 为出生点前方开始的上升台阶"""
    params = params or TaskParams()
    if task is TaskId.STEPS:
        return staircase_terrain(params.step_rise, params.step_run, params.step_ramp,
                                 params.spawn_x + params.step_start)
    return flat_terrain(0.0)


def catch_gap(rng: np.random.Generator, params: Optional[TaskParams] = None) -> float:
    """Catch 初始水平间隔，均匀取自 [-gap_max, gap_max]"""
    params = params or TaskParams()
    return float(rng.uniform(-params.gap_max, params.gap_max))


def spawn_payload(task: TaskId, state: SoftBodyState, rng: np.random.Generator,
                  params: Optional[TaskParams] = None) -> Optional[PayloadBox]:
    """
    放置箱子

    Carry: 箱子居中放在身体顶面上，底边与顶面接触。
    Catch: 箱子底部在机器人最高点上方 drop_height，水平间隔随机。
    其余任务没有箱子。
    """
    params = params or TaskParams()
    if not task.has_payload:
        return None

    xs, ys = state.positions[:, 0], state.positions[:, 1]
    center_x = 0.5 * (xs.min() + xs.max())
    if task is TaskId.CARRY:
        half = params.box_w / 2.0
        under = (xs >= center_x - half) & (xs <= center_x + half)
        bottom = ys[under].max() if under.any() else ys.max()
        position = (center_x, bottom)
    else:
        position = (center_x + catch_gap(rng, params), ys.max() + params.drop_height)

    return PayloadBox(params.box_w, params.box_h, np.array(position, dtype=float),
                      np.zeros(2), params.box_mass)
