"""
个体与个体评估
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from ..bayesopt.learner import bo_learn, random_learn
from ..bayesopt.samples import Evaluation, SampleArchive
from ..controller.mlp import param_count
from ..core.errors import LearningFailed, VsrError
from ..core.logger import get_module_logger
from ..morphology.body import BodyGrid, format_body, parse_body
from ..strategies.selection import TeacherRecord
from ..strategies.strategy import StrategyId
from ..tasks.episode import episode_seed_for, run_episode
from .config import EvoConfig


logger = get_module_logger(__name__)

# 个体随机流编号
STREAM_VARIATION = 1
STREAM_LEARNER = 2
STREAM_EPISODE = 3


def individual_rng(seed: int, gen: int, index: int, stream: int) -> np.random.Generator:
    """(全局种子, 代, 个体, 流) 决定的独立随机数发生器"""
    return np.random.default_rng(np.random.SeedSequence([seed, gen, index, stream]))


@dataclass
class Individual:
    """
    个体

    Attributes:
        index: 在本代中的下标
        body: 身体
        learned: 学习得到的样本档案
        q: 档案中最好的 y；失败个体为 -inf
        genotype_theta: IL 模式的基因型 θ
        parent: 父代下标（第 0 代为 None）
        episodes: 实际仿真的回合数
        failed: 学习是否失败
    """
    index: int
    body: BodyGrid
    learned: SampleArchive = field(default_factory=SampleArchive)
    q: float = float('-inf')
    genotype_theta: Optional[np.ndarray] = None
    parent: Optional[int] = None
    episodes: int = 0
    failed: bool = False

    @property
    def best_theta(self) -> Optional[np.ndarray]:
        return self.learned.best().x if len(self.learned) else None

    @property
    def best_episode_seed(self) -> Optional[int]:
        return self.learned.best().episode_seed if len(self.learned) else None

    def as_teacher(self) -> TeacherRecord:
        return TeacherRecord(self.index, self.body, self.q, self.learned, self.parent)

    def to_dict(self) -> Dict[str, Any]:
        """检查点记录"""
        return {
            'index': self.index,
            'parent': self.parent,
            'body': format_body(self.body),
            'q': self.q if np.isfinite(self.q) else None,
            'failed': self.failed,
            'episodes': self.episodes,
            'genotype_theta': None if self.genotype_theta is None else self.genotype_theta.tolist(),
            'samples': [{'y': s.y, 'theta': s.x.tolist(), 'episode_seed': s.episode_seed}
                        for s in self.learned],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'Individual':
        archive = SampleArchive()
        for s in data['samples']:
            archive.add(np.array(s['theta'], dtype=float), s['y'], s.get('episode_seed'))
        theta = data.get('genotype_theta')
        q = data.get('q')
        return cls(
            index=data['index'],
            body=parse_body(data['body']),
            learned=archive,
            q=float('-inf') if q is None else float(q),
            genotype_theta=None if theta is None else np.array(theta, dtype=float),
            parent=data.get('parent'),
            episodes=data.get('episodes', len(archive)),
            failed=data.get('failed', False),
        )


class EpisodeObjective:
    """θ -> q：在固定身体与任务上仿真一个回合，每次调用使用新的回合种子"""

    def __init__(self, body: BodyGrid, cfg: EvoConfig, seed_key: Sequence[int]):
        self.body = body
        self.cfg = cfg
        self.seed_key = tuple(seed_key)
        self.calls = 0

    def __call__(self, theta: np.ndarray) -> Evaluation:
        episode_seed = episode_seed_for(*self.seed_key, self.calls)
        self.calls += 1
        result = run_episode(self.body, theta, self.cfg.task, episode_seed,
                             self.cfg.task_params, self.cfg.sim)
        return Evaluation(result.q, episode_seed)


def evaluate(body: BodyGrid, candidates: Sequence[np.ndarray], cfg: EvoConfig,
             gen: int = 0, index: int = 0, parent: Optional[int] = None,
             genotype_theta: Optional[np.ndarray] = None) -> Individual:
    """
    学习一个身体的大脑

    NoBO 用随机搜索，其余模式用贝叶斯优化；学习失败时个体标记为失败，q = -inf。
    同样的 (身体, 候选, 配置, 代, 下标) 总是得到同样的个体。
    """
    rng = individual_rng(cfg.seed, gen, index, STREAM_LEARNER)
    objective = EpisodeObjective(body, cfg, (cfg.seed, gen, index, STREAM_EPISODE))
    individual = Individual(index=index, body=body, genotype_theta=genotype_theta, parent=parent)
    try:
        if cfg.strategy is StrategyId.NOBO:
            archive = random_learn(objective, cfg.bo, rng, dim=param_count(),
                                   init=list(candidates)[:cfg.bo.n_final])
        else:
            archive = bo_learn(objective, list(candidates), cfg.bo, rng)
        individual.learned = archive
        individual.q = archive.best().y
    except LearningFailed as e:
        logger.error(f"第 {gen} 代个体 {index} 学习失败: {e}")
        individual.learned = e.archive if e.archive is not None else SampleArchive()
        individual.failed = True
    except VsrError as e:
        logger.error(f"第 {gen} 代个体 {index} 评估失败: {e}")
        individual.failed = True
    individual.episodes = objective.calls
    return individual


def evaluate_job(job: Dict[str, Any]) -> Individual:
    """进程池入口"""
    return evaluate(job['body'], job['candidates'], job['cfg'], job['gen'], job['index'],
                    job['parent'], job['genotype_theta'])
