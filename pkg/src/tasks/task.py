"""
任务定义与任务参数
"""

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from ..core.config_manager import ConfigManager, dataclass_from_dict


class TaskId(Enum):
    """四个任务，值即命令行名"""
    SIMPLE = "simple"
    STEPS = "steps"
    CARRY = "carry"
    CATCH = "catch"

    @property
    def masks_distance(self) -> bool:
        """Simple / Steps 关闭距离输入"""
        return self in (TaskId.SIMPLE, TaskId.STEPS)

    @property
    def has_payload(self) -> bool:
        return self in (TaskId.CARRY, TaskId.CATCH)

    @classmethod
    def from_name(cls, name: str) -> 'TaskId':
        try:
            return cls(name.strip().lower())
        except ValueError:
            names = ', '.join(t.value for t in cls)
            raise ValueError(f"未知任务 {name!r}，可选: {names}") from None


@dataclass(frozen=True)
class TaskParams:
    """
    任务环境参数（长度单位为体素边长）

    Attributes:
        episode_steps: 每回合控制步数
        spawn_x: 机器人出生点
        step_rise, step_run, step_ramp, step_start: Steps 台阶几何
        box_w, box_h, box_mass: 箱子尺寸与质量
        drop_height: Catch 中箱子底部离机器人顶部的高度
        gap_max: Catch 水平间隔的范围 [-gap_max, gap_max]
        carry_tolerance: 判断箱子仍被托着时的接触容差
    """
    episode_steps: int = 500
    spawn_x: float = 0.0
    step_rise: float = 0.3
    step_run: float = 3.0
    step_ramp: float = 0.1
    step_start: float = 2.0
    box_w: float = 2.0
    box_h: float = 1.0
    box_mass: float = 2.0
    drop_height: float = 3.0
    gap_max: float = 2.0
    carry_tolerance: float = 0.05

    def __post_init__(self):
        if self.episode_steps < 1:
            raise ValueError(f"episode_steps 至少为 1: {self.episode_steps}")
        if self.box_w <= 0 or self.box_h <= 0:
            raise ValueError("箱子宽高必须为正")
        if self.gap_max < 0 or self.drop_height < 0 or self.carry_tolerance < 0:
            raise ValueError("gap_max / drop_height / carry_tolerance 不能为负")

    @classmethod
    def from_dict(cls, data: dict) -> 'TaskParams':
        return dataclass_from_dict(cls, data)

    @classmethod
    def load_default(cls, manager: Optional[ConfigManager] = None) -> 'TaskParams':
        """从 config/tasks.toml 读取默认值"""
        manager = manager or ConfigManager.get_instance()
        return cls.from_dict(manager.get_tasks_config())
