"""
框架常量定义

集中管理身体网格、控制器和实验相关的固定常量，避免魔法数字分散在代码中。
可调的数值（刚度、预算等）放在 config/*.toml 中，不在这里。
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class GridConstants:
    """
    身体网格常量

    5x5 多联骨牌网格及体素数量约束
    """
    ROWS: int = 5
    COLS: int = 5
    MIN_VOXELS: int = 5          # 变异结果允许的最少体素
    MAX_VOXELS: int = 25         # 变异结果允许的最多体素
    INIT_MIN_VOXELS: int = 10    # 随机初始化目标体素数下限
    INIT_MAX_VOXELS: int = 20    # 随机初始化目标体素数上限
    MUTATION_MAX_CELLS: int = 3  # 单次变异最多修改的格子数
    MUTATION_RETRIES: int = 1000

    @property
    def CELLS(self) -> int:
        """格子总数"""
        return self.ROWS * self.COLS

    @property
    def CANVAS(self) -> int:
        """对齐比较用画布边长（两侧各留出 ROWS-1 的平移余量）"""
        return 3 * self.ROWS - 2


@dataclass(frozen=True)
class ActuationConstants:
    """
    驱动常量

    主动体素沿驱动轴的相对形变范围
    """
    MIN_SCALE: float = 0.6
    MAX_SCALE: float = 1.6

    @property
    def SPAN(self) -> float:
        return self.MAX_SCALE - self.MIN_SCALE


@dataclass(frozen=True)
class SensorConstants:
    """
    传感器常量

    每个体素的输入 = 9 个 Moore 邻居 x (vx, vy, 面积) + 2 个距离 + 1 个时间信号
    """
    MOORE_SLOTS: int = 9
    VALUES_PER_SLOT: int = 3
    DISTANCE_INPUTS: int = 2
    TIME_PERIOD: int = 25

    @property
    def INPUT_SIZE(self) -> int:
        return self.MOORE_SLOTS * self.VALUES_PER_SLOT + self.DISTANCE_INPUTS + 1

    @property
    def DISTANCE_OFFSET(self) -> int:
        """水平距离输入的下标（0 起），垂直距离紧随其后"""
        return self.MOORE_SLOTS * self.VALUES_PER_SLOT

    @property
    def TIME_OFFSET(self) -> int:
        return self.DISTANCE_OFFSET + self.DISTANCE_INPUTS


@dataclass(frozen=True)
class ControllerConstants:
    """
    控制器结构常量

    每个体素一个共享权重的 MLP：30 输入、10 隐层(ReLU)、1 输出(sigmoid)
    """
    N_INPUTS: int = 30
    N_HIDDEN: int = 10
    N_OUTPUTS: int = 1
    INIT_LOW: float = -1.0
    INIT_HIGH: float = 1.0


@dataclass(frozen=True)
class StatsConstants:
    """统计检验常量"""
    ALPHA: float = 0.05
    EXACT_MAX_SIZE: int = 12   # 无并列时 n+m 不超过此值使用精确分布


# 导出所有常量实例
GRID = GridConstants()
ACTUATION = ActuationConstants()
SENSOR = SensorConstants()
CONTROLLER = ControllerConstants()
STATS = StatsConstants()
