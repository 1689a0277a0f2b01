"""
实验设置

配置来源按优先级从低到高：config/ 下的默认值 < 命名配置（--profile）
< 扁平配置文件（--config）< 命令行覆盖项（--set key=value）。
"""

import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

from ..core.config_manager import ConfigManager, load_flat_config, parse_override
from ..core.errors import ConfigError
from ..evolution.config import EvoConfig, evo_config_from_items, section_keys
from ..strategies.strategy import StrategyId
from ..tasks.task import TaskId


OUTPUT_ROOT_ENV = 'VSR_OUTPUT_ROOT'
DEFAULT_OUTPUT_ROOT = 'runs'

# 只属于批量实验的键
CAMPAIGN_KEYS = ('strategies', 'tasks', 'repetitions', 'seed_base')


def resolve_output_root(out: Optional[str] = None) -> Path:
    """--out，其次环境变量 VSR_OUTPUT_ROOT，最后 ./runs"""
    if out:
        return Path(out)
    return Path(os.environ.get(OUTPUT_ROOT_ENV) or DEFAULT_OUTPUT_ROOT)


def collect_items(config_path: Optional[str] = None, overrides: Sequence[str] = (),
                  profile: Optional[str] = None,
                  manager: Optional[ConfigManager] = None) -> Dict[str, Any]:
    """合并命名配置、配置文件与覆盖项"""
    manager = manager or ConfigManager.get_instance()
    items: Dict[str, Any] = {}
    if profile:
        values = manager.get_profile(profile)
        if values is None:
            raise ConfigError(f"未知配置档 {profile!r}，可选: {manager.get_profile_names()}")
        items.update(values)
    if config_path:
        items.update(load_flat_config(Path(config_path)))
    for text in overrides:
        key, value = parse_override(text)
        items[key] = value
    return items


def _name_list(value: Any) -> List[str]:
    if isinstance(value, str):
        return [v.strip() for v in value.split(',') if v.strip()]
    return [str(v) for v in value]


@dataclass(frozen=True)
class RunSpec:
    """批量实验中的一次运行"""
    strategy: StrategyId
    task: TaskId
    repetition: int
    seed: int
    config: EvoConfig
    run_dir: Path


@dataclass(frozen=True)
class CampaignConfig:
    """
    批量实验配置

    Attributes:
        strategies: 参与比较的策略
        tasks: 任务
        repetitions: 每个 (策略, 任务) 的重复次数
        seed_base: 第 r 次重复的种子为 seed_base + r
        output_root: 输出根目录
        evo_items: 传给每次运行的扁平配置
    """
    strategies: Tuple[StrategyId, ...]
    tasks: Tuple[TaskId, ...]
    repetitions: int = 20
    seed_base: int = 0
    output_root: Path = Path(DEFAULT_OUTPUT_ROOT)
    evo_items: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if not self.strategies or not self.tasks:
            raise ConfigError("至少需要一个策略和一个任务")
        if self.repetitions < 1:
            raise ConfigError(f"repetitions 至少为 1: {self.repetitions}")
        if self.seed_base < 0:
            raise ConfigError(f"seed_base 不能为负: {self.seed_base}")

    @classmethod
    def from_items(cls, items: Dict[str, Any], output_root: Path) -> 'CampaignConfig':
        """
        拆分批量实验键与单次运行键

        Raises:
            ConfigError: 未知键或非法值
        """
        items = dict(items)
        try:
            strategies = tuple(StrategyId.from_name(s)
                               for s in _name_list(items.pop('strategies', [items.get('strategy', 'il')])))
            tasks = tuple(TaskId.from_name(t)
                          for t in _name_list(items.pop('tasks', [items.get('task', 'simple')])))
        except ValueError as e:
            raise ConfigError(str(e)) from e
        repetitions = int(items.pop('repetitions', 20))
        seed_base = int(items.pop('seed_base', 0))
        for key in ('strategy', 'task', 'seed'):
            items.pop(key, None)

        unknown = sorted(set(items) - set(section_keys()))
        if unknown:
            raise ConfigError(f"不认识的配置项: {unknown}")
        campaign = cls(strategies, tasks, repetitions, seed_base, Path(output_root), items)
        # 提前校验一次，避免跑到一半才发现配置非法
        evo_config_from_items(items)
        return campaign

    def run_dir(self, strategy: StrategyId, task: TaskId, repetition: int) -> Path:
        return self.output_root / strategy.value / task.value / f"rep_{repetition:02d}"

    def runs(self) -> Iterator[RunSpec]:
        """按 (策略, 任务, 重复) 的顺序列出所有运行"""
        for strategy in self.strategies:
            for task in self.tasks:
                for repetition in range(self.repetitions):
                    seed = self.seed_base + repetition
                    items = dict(self.evo_items, strategy=strategy.value, task=task.value, seed=seed)
                    yield RunSpec(strategy, task, repetition, seed, evo_config_from_items(items),
                                  self.run_dir(strategy, task, repetition))

    @property
    def run_count(self) -> int:
        return len(self.strategies) * len(self.tasks) * self.repetitions


def evo_config(items: Dict[str, Any]) -> EvoConfig:
    """单次运行配置（忽略批量实验键）"""
    return evo_config_from_items({k: v for k, v in items.items() if k not in CAMPAIGN_KEYS})
