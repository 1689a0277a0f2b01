"""
贝叶斯优化配置
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..core.config_manager import ConfigManager, dataclass_from_dict


@dataclass(frozen=True)
class BOConfig:
    """
    贝叶斯优化配置

    Attributes:
        n0: 初始样本数
        n_final: 学习结束时的样本总数
        beta: UCB 探索系数
        length_scale: Matérn 5/2 长度尺度
        signal_variance: 核方差（标准化目标上）
        jitter: 对角抖动初值
        jitter_max: 抖动上限，超过则放弃
        bound_low, bound_high: 每一维的搜索边界
        init_low, init_high: 随机初始化范围
        restarts: 采集函数多起点数
        max_iter: 每个起点的拟牛顿迭代上限
    """
    n0: int = 8
    n_final: int = 50
    beta: float = 3.0
    length_scale: float = 10.0
    signal_variance: float = 1.0
    jitter: float = 1e-6
    jitter_max: float = 1e-2
    bound_low: float = -2.0
    bound_high: float = 2.0
    init_low: float = -1.0
    init_high: float = 1.0
    restarts: int = 8
    max_iter: int = 100

    def __post_init__(self):
        if not 1 <= self.n0 <= self.n_final:
            raise ValueError(f"需要 1 <= n0 <= n_final: n0={self.n0}, n_final={self.n_final}")
        if self.beta < 0:
            raise ValueError(f"beta 不能为负: {self.beta}")
        if not self.bound_low < self.bound_high:
            raise ValueError("搜索边界需要 bound_low < bound_high")
        if not self.bound_low <= self.init_low < self.init_high <= self.bound_high:
            raise ValueError("初始化范围必须位于搜索边界内")
        if self.length_scale <= 0 or self.signal_variance <= 0:
            raise ValueError("length_scale 与 signal_variance 必须为正")
        if not 0 < self.jitter <= self.jitter_max:
            raise ValueError("需要 0 < jitter <= jitter_max")
        if self.restarts < 0 or self.max_iter < 1:
            raise ValueError("restarts 不能为负，max_iter 至少为 1")

    def clamp(self, x) -> np.ndarray:
        """夹到搜索边界内"""
        return np.clip(np.asarray(x, dtype=float), self.bound_low, self.bound_high)

    @classmethod
    def from_dict(cls, data: dict) -> 'BOConfig':
        return dataclass_from_dict(cls, data)

    @classmethod
    def load_default(cls, manager: Optional[ConfigManager] = None) -> 'BOConfig':
        """从 config/evolution.toml 的 [bayesopt] 读取默认值"""
        manager = manager or ConfigManager.get_instance()
        return cls.from_dict(manager.get_bayesopt_config())
