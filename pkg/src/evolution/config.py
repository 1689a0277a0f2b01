"""
进化配置
"""

import dataclasses
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from ..bayesopt.config import BOConfig
from ..core.config_manager import ConfigManager, dataclass_from_dict
from ..core.errors import ConfigError
from ..physics.config import SimConfig
from ..strategies.strategy import StrategyId
from ..tasks.task import TaskId, TaskParams


@dataclass(frozen=True)
class GAParams:
    """
    遗传算法参数（config/evolution.toml 的 [evolution] 节）

    Attributes:
        n_pop: 种群规模
        n_gen: 代数
        n_tour: 锦标赛规模
        sigma_mut: IL 模式 θ 的高斯变异标准差
        jobs: 一代内并行评估的进程数
    """
    n_pop: int = 200
    n_gen: int = 50
    n_tour: int = 4
    sigma_mut: float = 0.1
    jobs: int = 1

    def __post_init__(self):
        if self.n_pop < 1 or self.n_gen < 1 or self.n_tour < 1 or self.jobs < 1:
            raise ValueError(f"n_pop / n_gen / n_tour / jobs 至少为 1: {self}")
        if self.n_tour > self.n_pop:
            raise ValueError(f"n_tour ({self.n_tour}) 不能超过 n_pop ({self.n_pop})")
        if self.sigma_mut < 0:
            raise ValueError(f"sigma_mut 不能为负: {self.sigma_mut}")

    @classmethod
    def from_dict(cls, data: dict) -> 'GAParams':
        return dataclass_from_dict(cls, data)

    @classmethod
    def load_default(cls, manager: Optional[ConfigManager] = None) -> 'GAParams':
        manager = manager or ConfigManager.get_instance()
        return cls.from_dict(manager.get_evolution_config())


@dataclass(frozen=True)
class EvoConfig:
    """一次进化运行的完整配置"""
    strategy: StrategyId = StrategyId.IL
    task: TaskId = TaskId.SIMPLE
    seed: int = 0
    ga: GAParams = field(default_factory=GAParams)
    bo: BOConfig = field(default_factory=BOConfig)
    sim: SimConfig = field(default_factory=SimConfig)
    task_params: TaskParams = field(default_factory=TaskParams)

    def __post_init__(self):
        if self.seed < 0:
            raise ValueError(f"种子必须非负: {self.seed}")

    @property
    def n_pop(self) -> int:
        return self.ga.n_pop

    @property
    def n_gen(self) -> int:
        return self.ga.n_gen

    @property
    def expected_episodes(self) -> int:
        """n_gen · n_pop · n_final"""
        return self.ga.n_gen * self.ga.n_pop * self.bo.n_final


# 扁平键到各配置节的路由（各节键名互不重复）
_SECTIONS = (('ga', GAParams), ('bo', BOConfig), ('sim', SimConfig), ('task_params', TaskParams))
_TOP_LEVEL = ('strategy', 'task', 'seed')


def section_keys() -> dict:
    """{键名: 所属节}"""
    keys = {name: None for name in _TOP_LEVEL}
    for section, cls in _SECTIONS:
        for f in dataclasses.fields(cls):
            keys[f.name] = section
    return keys


def evo_config_from_items(items: Dict[str, Any],
                          manager: Optional[ConfigManager] = None) -> EvoConfig:
    """
    由扁平键值（文件 + 覆盖项）构造 EvoConfig，未给出的键取 config/ 下的默认值

    Raises:
        ConfigError: 未知键或非法值
    """
    manager = manager or ConfigManager.get_instance()
    known = section_keys()
    unknown = sorted(set(items) - set(known))
    if unknown:
        raise ConfigError(f"不认识的配置项: {unknown}")

    defaults = {
        'ga': manager.get_evolution_config(),
        'bo': manager.get_bayesopt_config(),
        'sim': manager.get_physics_config(),
        'task_params': manager.get_tasks_config(),
    }
    for key, value in items.items():
        section = known[key]
        if section is not None:
            defaults[section][key] = value

    try:
        strategy = StrategyId.from_name(str(items.get('strategy', StrategyId.IL.value)))
        task = TaskId.from_name(str(items.get('task', TaskId.SIMPLE.value)))
        seed = int(items.get('seed', 0))
        return EvoConfig(
            strategy=strategy,
            task=task,
            seed=seed,
            **{section: dataclass_from_dict(cls, defaults[section]) for section, cls in _SECTIONS},
        )
    except ValueError as e:
        raise ConfigError(str(e)) from e


def evo_config_items(cfg: EvoConfig) -> List[Tuple[str, Any]]:
    """EvoConfig 展开成有序的扁平键值，可写入 config.toml 并原样读回"""
    items: List[Tuple[str, Any]] = [
        ('strategy', cfg.strategy.value), ('task', cfg.task.value), ('seed', cfg.seed),
    ]
    for section, _ in _SECTIONS:
        part = getattr(cfg, section)
        items.extend((f.name, getattr(part, f.name)) for f in dataclasses.fields(part))
    return items
