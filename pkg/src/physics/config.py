"""
仿真配置
"""

import math
from dataclasses import dataclass
from typing import Optional

from ..core.config_manager import ConfigManager, dataclass_from_dict


@dataclass(frozen=True)
class SimConfig:
    """
    质点-弹簧仿真配置

    Attributes:
        dt: 积分步长（秒）
        substeps: 每个控制步的积分子步数
        gravity: 重力加速度
        voxel_side: 体素边长
        corner_mass: 每个角点质量
        stiffness_scale: 刚度基准（N/m），与下面的相对刚度相乘
        soft_stiffness: 软体素（含主动体素）相对刚度
        rigid_stiffness: 刚性体素相对刚度
        damping: 弹簧阻尼比（相对临界阻尼）
        contact_stiffness: 接触罚函数刚度
        contact_damping: 接触法向阻尼
        friction: 库仑摩擦系数（静摩擦与滑动摩擦相同）
    """
    dt: float = 1.0 / 600.0
    substeps: int = 12
    gravity: float = 9.81
    voxel_side: float = 1.0
    corner_mass: float = 1.0
    stiffness_scale: float = 1000.0
    soft_stiffness: float = 1.0
    rigid_stiffness: float = 50.0
    damping: float = 0.05
    contact_stiffness: float = 20000.0
    contact_damping: float = 40.0
    friction: float = 0.7

    def __post_init__(self):
        if not self.dt > 0:
            raise ValueError(f"dt 必须为正: {self.dt}")
        if self.substeps < 1:
            raise ValueError(f"substeps 至少为 1: {self.substeps}")
        if not self.rigid_stiffness > self.soft_stiffness > 0:
            raise ValueError("需要 rigid_stiffness > soft_stiffness > 0")
        if self.friction < 0:
            raise ValueError(f"摩擦系数不能为负: {self.friction}")
        if self.voxel_side <= 0 or self.corner_mass <= 0:
            raise ValueError("体素边长与角点质量必须为正")

    @property
    def control_dt(self) -> float:
        """一个控制步对应的仿真时间"""
        return self.dt * self.substeps

    @property
    def steps_per_second(self) -> int:
        """控制频率"""
        return int(round(1.0 / self.control_dt))

    def spring_damping(self, stiffness: float) -> float:
        """按阻尼比换算的弹簧阻尼系数"""
        return self.damping * 2.0 * math.sqrt(stiffness * self.corner_mass)

    @classmethod
    def from_dict(cls, data: dict) -> 'SimConfig':
        return dataclass_from_dict(cls, data)

    @classmethod
    def load_default(cls, manager: Optional[ConfigManager] = None) -> 'SimConfig':
        """从 config/physics.toml 读取默认值"""
        manager = manager or ConfigManager.get_instance()
        return cls.from_dict(manager.get_physics_config())
