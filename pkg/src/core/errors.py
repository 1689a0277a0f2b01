"""
异常定义

所有模块抛出的异常都继承自 VsrError，调用方可以统一捕获
"""

from typing import Any, Optional


class VsrError(Exception):
    """框架异常基类"""
    pass


class ConfigError(VsrError):
    """配置文件或配置覆盖项非法"""
    pass


# ---- morphology ----

class ParseError(VsrError):
    """身体文本格式无法解析"""
    pass


class RetryExhausted(VsrError):
    """变异重试次数耗尽（病态身体）"""
    pass


class DegeneratePopulation(VsrError):
    """种群过小，无法计算多样性"""
    pass


# ---- physics / tasks ----

class SpawnCollision(VsrError):
    """地形几何不允许在指定位置放置机器人"""
    pass


class NumericalBlowup(VsrError):
    """仿真坐标出现非有限值"""
    pass


class UnstableSimulation(VsrError):
    """回合仿真失败（由 NumericalBlowup 转换而来）"""
    pass


# ---- controller / bayesopt ----

class ShapeMismatch(VsrError):
    """输入或参数维度不匹配"""
    pass


class SingularKernel(VsrError):
    """提升抖动后核矩阵仍无法分解"""
    pass


class LearningFailed(VsrError):
    """
    学习过程中目标函数出错

    Attributes:
        archive: 出错前已经评估的样本档案
    """

    def __init__(self, message: str, archive: Optional[Any] = None):
        super().__init__(message)
        self.archive = archive


# ---- strategies ----

class InsufficientTeachers(VsrError):
    """上一代没有足够的教师或样本"""
    pass


# ---- stats ----

class DegenerateInput(VsrError):
    """两组样本所有值都相同，按约定 p = 1"""

    p_value: float = 1.0


# ---- experiments ----

class MissingRun(VsrError):
    """运行目录不存在或缺少必要文件"""
    pass
